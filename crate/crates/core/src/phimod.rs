//! φ-modules over `F_{q^r}`: a vector space `D` with a σ-semilinear map
//! `φ(x) = G·σ(x)`.

use rayon::prelude::*;

use crate::commalg::CommPoly;
use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldTower};
use crate::linalg::{InvariantFactors, Matrix};
use crate::skewpoly::SkewPoly;

/// Default cap on the number of candidates tried by divisor enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiModule {
    tower: FieldTower,
    g: Matrix,
}

/// A φ-stable subspace with the matrices induced on it and on the quotient.
#[derive(Clone, Debug)]
pub struct Submodule {
    /// Row-reduced basis vectors.
    pub basis: Vec<Vec<FieldElem>>,
    pub induced: Matrix,
    pub quotient: Matrix,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn sigma_matrix(tower: &FieldTower, m: &Matrix, t: usize) -> Matrix {
    if t.is_multiple_of(tower.r()) {
        return m.clone();
    }
    m.map(tower.top(), |x| tower.frobenius_power(x, t))
}

/// `E(G, n) = G·σ(G)⋯σ^{n−1}(G)` by halving `n`.
pub fn twisted_product(tower: &FieldTower, g: &Matrix, n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    if !g.is_square() {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            found: g.cols(),
        });
    }
    Ok(twisted_rec(tower, g, n))
}

fn twisted_rec(tower: &FieldTower, g: &Matrix, n: usize) -> Matrix {
    if n == 1 {
        return g.clone();
    }
    let h = n / 2;
    let e = twisted_rec(tower, g, h);
    let doubled = e.mul(&sigma_matrix(tower, &e, h));
    if n.is_multiple_of(2) {
        doubled
    } else {
        g.mul(&sigma_matrix(tower, &doubled, 1))
    }
}

/// Reference loop for [`twisted_product`].
pub fn twisted_product_naive(tower: &FieldTower, g: &Matrix, n: usize) -> Matrix {
    let mut acc = Matrix::identity(tower.top(), g.rows());
    for i in 0..n {
        acc = acc.mul(&sigma_matrix(tower, g, i));
    }
    acc
}

impl PhiModule {
    pub fn new(tower: &FieldTower, g: Matrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::DimensionMismatch {
                expected: g.rows(),
                found: g.cols(),
            });
        }
        if g.field() != tower.top() {
            return Err(Error::FieldMismatch);
        }
        Ok(PhiModule {
            tower: tower.clone(),
            g,
        })
    }

    /// `D_P`: `φ(e_i) = e_{i+1}` and `φ(e_{d−1}) = Σ a_i e_i` for
    /// `P = X^d − Σ a_i X^i`.
    pub fn companion(p: &SkewPoly) -> Result<Self> {
        let d = p.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        let tower = p.tower();
        let top = tower.top();
        let mut g = Matrix::zeros(top, d, d);
        for i in 1..d {
            g.set(i, i - 1, top.one());
        }
        for i in 0..d {
            g.set(i, d - 1, top.neg(&p.coeff(i)));
        }
        Ok(PhiModule {
            tower: tower.clone(),
            g,
        })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn is_etale(&self) -> bool {
        self.g.det().is_ok_and(|d| !d.is_zero())
    }

    fn check_vec(&self, x: &[FieldElem]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        for c in x {
            self.tower.top().check(c)?;
        }
        Ok(())
    }

    fn phi(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        let sx: Vec<_> = x.iter().map(|c| self.tower.sigma(c)).collect();
        self.g.mul_vec(&sx)
    }

    /// `φ^k(x)`.
    pub fn phi_apply(&self, x: &[FieldElem], k: usize) -> Result<Vec<FieldElem>> {
        self.check_vec(x)?;
        let mut v = x.to_vec();
        for _ in 0..k {
            v = self.phi(&v);
        }
        Ok(v)
    }

    /// `x, φ(x), …` up to the first iterate in the span of the previous ones;
    /// returns the independent iterates and that dependent one.
    fn iterates(&self, x: &[FieldElem]) -> (Vec<Vec<FieldElem>>, Vec<FieldElem>) {
        let top = self.tower.top();
        let mut its: Vec<Vec<FieldElem>> = Vec::new();
        let mut cur = x.to_vec();
        loop {
            let mut rows = its.clone();
            rows.push(cur.clone());
            let m = Matrix::from_rows(top, rows).unwrap();
            if m.rank() <= its.len() {
                return (its, cur);
            }
            its.push(cur.clone());
            cur = self.phi(&cur);
        }
    }

    /// The monic degree-`d` skew polynomial `χ` with `χ·x = 0`. When `x`
    /// generates a submodule of dimension `s < d`, this is `X^{d−s}·χ_x` with
    /// `χ_x` the annihilator of `x` inside that submodule.
    pub fn semi_char(&self, x: &[FieldElem]) -> Result<SkewPoly> {
        self.check_vec(x)?;
        let top = self.tower.top();
        let d = self.dim();
        let (its, next) = self.iterates(x);
        let s = its.len();
        let mut coeffs = vec![top.zero(); s + 1];
        coeffs[s] = top.one();
        if s > 0 {
            let cols = Matrix::from_rows(top, its).unwrap().transpose();
            let c = cols.solve(&next).expect("dependent iterate lies in the span");
            for (i, ci) in c.iter().enumerate() {
                coeffs[i] = top.neg(ci);
            }
        }
        let chi = SkewPoly::new(&self.tower, coeffs);
        Ok(SkewPoly::monomial(&self.tower, top.one(), d - s).mul(&chi))
    }

    /// Smallest φ-stable subspace containing `x`.
    pub fn submodule_generated(&self, x: &[FieldElem]) -> Result<Submodule> {
        self.check_vec(x)?;
        let top = self.tower.top();
        let d = self.dim();
        let (its, _) = self.iterates(x);
        let s = its.len();
        let (basis, pivots) = if s == 0 {
            (Vec::new(), Vec::new())
        } else {
            let (r, piv) = Matrix::from_rows(top, its).unwrap().rref();
            let rows: Vec<Vec<FieldElem>> = (0..s).map(|i| r.row(i).to_vec()).collect();
            (rows, piv)
        };
        // completed basis: W's basis followed by unit vectors off the pivots
        let mut full = basis.clone();
        for k in (0..d).filter(|k| !pivots.contains(k)) {
            let mut e = vec![top.zero(); d];
            e[k] = top.one();
            full.push(e);
        }
        let t = Matrix::from_rows(top, full.clone())?.transpose();
        let t_inv = t.inverse()?;
        let mut coords = Matrix::zeros(top, d, d);
        for (j, b) in full.iter().enumerate() {
            let c = t_inv.mul_vec(&self.phi(b));
            for (i, v) in c.into_iter().enumerate() {
                coords.set(i, j, v);
            }
        }
        for j in 0..s {
            for i in s..d {
                if !coords.get(i, j).is_zero() {
                    return Err(Error::InvalidParameter("span is not phi-stable".into()));
                }
            }
        }
        let mut induced = Matrix::zeros(top, s, s);
        let mut quotient = Matrix::zeros(top, d - s, d - s);
        for i in 0..d {
            for j in 0..d {
                if i < s && j < s {
                    induced.set(i, j, coords.get(i, j).clone());
                } else if i >= s && j >= s {
                    quotient.set(i - s, j - s, coords.get(i, j).clone());
                }
            }
        }
        Ok(Submodule {
            basis,
            induced,
            quotient,
        })
    }

    /// Matrix of the linear map `φ^r`.
    pub fn gamma0(&self) -> Matrix {
        twisted_rec(&self.tower, &self.g, self.tower.r())
    }
}

fn require_monic(p: &SkewPoly) -> Result<()> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(_) if !p.is_monic() => Err(Error::NotMonic),
        Some(_) => Ok(()),
    }
}

fn require_etale(p: &SkewPoly) -> Result<()> {
    require_monic(p)?;
    if p.degree() == Some(0) {
        return Err(Error::ConstantPolynomial);
    }
    if !p.has_nonzero_constant() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(())
}

/// Coefficients of a polynomial over `F_{q^r}` that is known to lie in `F_q[Y]`.
fn restrict_poly(tower: &FieldTower, q: &CommPoly) -> CommPoly {
    q.try_map_coeffs(tower.base(), |c| tower.restrict_fq(c))
        .expect("coefficients lie in F_q")
}

/// `Γ_0 = E(Γ, r)` for the companion module of `P`.
pub fn gamma0(p: &SkewPoly) -> Result<Matrix> {
    Ok(PhiModule::companion(p)?.gamma0())
}

/// `Ψ(P)`: the characteristic polynomial of `φ^r` on `D_P`, over `F_q`.
pub fn psi(p: &SkewPoly) -> Result<CommPoly> {
    require_monic(p)?;
    let tower = p.tower();
    if p.degree() == Some(0) {
        return Ok(CommPoly::one(tower.base()));
    }
    Ok(restrict_poly(tower, &gamma0(p)?.char_poly()))
}

/// `Ψ(P)(X^r)`, a central left multiple of `P`.
pub fn psi_bound(p: &SkewPoly) -> Result<SkewPoly> {
    SkewPoly::central_lift(p.tower(), &psi(p)?)
}

/// Minimal polynomial of `Γ_0`, over `F_q`.
pub fn gamma0_min_poly(p: &SkewPoly) -> Result<CommPoly> {
    require_etale(p)?;
    Ok(restrict_poly(p.tower(), &gamma0(p)?.min_poly()))
}

/// The central left multiple of smallest degree, `π(X^r)` with `π` the
/// minimal polynomial of `Γ_0`.
pub fn optimal_bound(p: &SkewPoly) -> Result<SkewPoly> {
    SkewPoly::central_lift(p.tower(), &gamma0_min_poly(p)?)
}

/// Invariant factors of `Γ_0`, over `F_q`.
pub fn gamma0_invariants(p: &SkewPoly) -> Result<InvariantFactors> {
    require_etale(p)?;
    let tower = p.tower();
    let inv = gamma0(p)?.invariant_factors();
    Ok(InvariantFactors {
        factors: inv.factors.iter().map(|f| restrict_poly(tower, f)).collect(),
    })
}

/// Similarity test via conjugacy of the two `Γ_0` matrices.
pub fn is_similar(p: &SkewPoly, q: &SkewPoly) -> Result<bool> {
    if !p.tower().same(q.tower()) {
        return Err(Error::FieldMismatch);
    }
    require_etale(p)?;
    require_etale(q)?;
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree().unwrap(),
            found: q.degree().unwrap(),
        });
    }
    Ok(gamma0_invariants(p)? == gamma0_invariants(q)?)
}

/// Brings a polynomial given over `F_q` or `F_{q^r}` to `F_q`.
pub(crate) fn class_over_fq(tower: &FieldTower, q: &CommPoly) -> Result<CommPoly> {
    if q.field() == tower.base() {
        Ok(q.clone())
    } else if q.field() == tower.top() {
        q.try_map_coeffs(tower.base(), |c| tower.restrict_fq(c))
            .ok_or(Error::NotInSubfield)
    } else {
        Err(Error::FieldMismatch)
    }
}

/// All monic irreducible right divisors of `P` whose `Ψ` is the irreducible
/// factor `q_i`, sorted canonically.
pub fn irreducible_right_divisors(p: &SkewPoly, q_i: &CommPoly, budget: u64) -> Result<Vec<SkewPoly>> {
    require_etale(p)?;
    let tower = p.tower();
    let q_i = class_over_fq(tower, q_i)?.monic();
    if !q_i.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    if !q_i.divides(&psi(p)?) {
        return Err(Error::NotADivisor(q_i.to_string()));
    }
    let delta = q_i.degree().unwrap();
    let r = p.rgcd(&SkewPoly::central_lift(tower, &q_i)?)?;
    if r.degree() == Some(delta) {
        return Ok(vec![r]);
    }
    let k = tower
        .top()
        .size_u64()
        .ok_or_else(|| Error::budget("more than 2^64", budget))?;
    let count = k
        .checked_pow(delta as u32)
        .ok_or_else(|| Error::budget(tower.top().size().pow(delta as u32), budget))?;
    if count > budget {
        return Err(Error::budget(count, budget));
    }
    let mut out: Vec<SkewPoly> = (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let d = SkewPoly::monic_from_index(tower, delta, i);
            d.right_divides(&r).then_some(d)
        })
        .collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ex_f49, ex_f7_5};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn companion_of_cubic_example() {
        let (t, p) = ex_f7_5();
        let top = t.top();
        let w = t.omega();
        let m = PhiModule::companion(&p).unwrap();
        let z = top.zero();
        let one = top.one();
        let expect = Matrix::from_rows(
            top,
            vec![
                vec![z.clone(), z.clone(), top.mul(&w, &w)],
                vec![one.clone(), z.clone(), z.clone()],
                vec![z.clone(), one.clone(), top.neg(&w)],
            ],
        )
        .unwrap();
        assert_eq!(m.matrix(), &expect);
        let base = t.base();
        assert_eq!(psi(&p).unwrap(), CommPoly::from_ints(base, &[5, 1, 1, 1]));
        let ob = optimal_bound(&p).unwrap();
        assert_eq!(ob.to_string(), "X^15 + X^10 + X^5 + 5");
        assert!(p.right_divides(&ob));
    }

    #[test]
    fn trivial_companions() {
        let t = FieldTower::new(5, 1, 2, None, None).unwrap();
        let top = t.top();
        let x = SkewPoly::x(&t);
        assert_eq!(PhiModule::companion(&x).unwrap().matrix().entries(), &[top.zero()]);
        let xm1 = x.sub(&SkewPoly::one(&t));
        assert_eq!(PhiModule::companion(&xm1).unwrap().matrix().entries(), &[top.one()]);
        assert_eq!(psi(&x).unwrap(), CommPoly::y(t.base()));
        let two_x = x.left_scale(&top.from_u64(2));
        assert_eq!(PhiModule::companion(&two_x), Err(Error::NotMonic));
    }

    #[test]
    fn semi_char_recovers_p_and_handles_zero() {
        let t = FieldTower::new(3, 1, 2, None, None).unwrap();
        let top = t.top();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 1..=4 {
            let p = SkewPoly::random_monic(&t, d, &mut rng);
            let m = PhiModule::companion(&p).unwrap();
            let mut e0 = vec![top.zero(); d];
            e0[0] = top.one();
            assert_eq!(m.semi_char(&e0).unwrap(), p);
            let zero = vec![top.zero(); d];
            assert_eq!(m.semi_char(&zero).unwrap(), SkewPoly::monomial(&t, top.one(), d));
            let e1 = m.phi_apply(&e0, 1).unwrap();
            if d > 1 {
                assert!(top.is_one(&e1[1]));
            }
        }
    }

    #[test]
    fn semi_char_of_non_generator_annihilates() {
        let t = FieldTower::new(5, 1, 3, None, None).unwrap();
        let top = t.top();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let (a, b, dd) = (top.random(&mut rng), top.random(&mut rng), top.random(&mut rng));
            let g = Matrix::from_rows(top, vec![vec![a.clone(), b], vec![top.zero(), dd]]).unwrap();
            let m = PhiModule::new(&t, g).unwrap();
            let x = vec![top.one(), top.zero()];
            let chi = m.semi_char(&x).unwrap();
            let expect = SkewPoly::new(&t, vec![top.zero(), top.neg(&t.sigma(&a)), top.one()]);
            assert_eq!(chi, expect);
            let mut acc = vec![top.zero(); 2];
            for (i, c) in chi.coeffs().iter().enumerate() {
                let v = m.phi_apply(&x, i).unwrap();
                for (s, vi) in acc.iter_mut().zip(v) {
                    *s = top.add(s, &top.mul(c, &vi));
                }
            }
            assert!(acc.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn twisted_product_matches_loop() {
        let t = FieldTower::new(2, 1, 5, None, None).unwrap();
        let top = t.top();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=16 {
            let g = Matrix::new(top, 3, 3, (0..9).map(|_| top.random(&mut rng)).collect()).unwrap();
            assert_eq!(twisted_product(&t, &g, n).unwrap(), twisted_product_naive(&t, &g, n));
        }
        let id = Matrix::identity(top, 2);
        assert_eq!(twisted_product(&t, &id, 7).unwrap(), id);
        assert!(twisted_product(&t, &id, 0).is_err());
    }

    #[test]
    fn psi_is_multiplicative() {
        let t = FieldTower::new(2, 1, 3, None, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let p = SkewPoly::random_monic(&t, rng.gen_range(1..=3), &mut rng);
            let q = SkewPoly::random_monic(&t, rng.gen_range(1..=3), &mut rng);
            assert_eq!(psi(&p.mul(&q)).unwrap(), psi(&p).unwrap().mul(&psi(&q).unwrap()));
        }
    }

    #[test]
    fn submodules() {
        let t = FieldTower::new(3, 1, 2, None, None).unwrap();
        let top = t.top();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = SkewPoly::random_etale(&t, 3, &mut rng);
        let m = PhiModule::companion(&p).unwrap();
        let e0 = vec![top.one(), top.zero(), top.zero()];
        assert_eq!(m.submodule_generated(&e0).unwrap().dim(), 3);
        let z = vec![top.zero(); 3];
        let sub = m.submodule_generated(&z).unwrap();
        assert_eq!((sub.dim(), sub.quotient.rows()), (0, 3));

        let a = Matrix::from_rows(top, vec![vec![top.from_u64(2)]]).unwrap();
        let b = Matrix::companion(&CommPoly::new(top, vec![t.omega(), top.zero(), top.one()]));
        let split = PhiModule::new(&t, Matrix::block_diag(top, &[b, a])).unwrap();
        let x = vec![top.one(), top.zero(), top.zero()];
        let sub = split.submodule_generated(&x).unwrap();
        assert_eq!((sub.dim(), sub.quotient.rows()), (2, 1));
    }

    #[test]
    fn divisors_of_example_class() {
        let (t, p) = ex_f49();
        let q = psi(&p).unwrap().factor(&mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(q.factors.len(), 1);
        let divs = irreducible_right_divisors(&p, &q.factors[0].0, DEFAULT_BUDGET).unwrap();
        assert_eq!(divs.len(), 50);
        for d in &divs {
            assert_eq!(psi(d).unwrap(), q.factors[0].0);
        }
        assert!(t.r() == 2);
    }
}
