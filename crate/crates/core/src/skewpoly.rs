//! The twisted polynomial ring `F_{q^r}[X, σ]` with `X·a = σ(a)·X`.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::commalg::CommPoly;
use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldTower, TowerExtension};

/// Which side the divisor sits on in a Euclidean division.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `P = U·D + R`.
    Right,
    /// `P = D·U + R`.
    Left,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    tower: FieldTower,
    coeffs: Vec<FieldElem>,
}

/// Result of the extended right Euclidean algorithm.
#[derive(Clone, Debug)]
pub struct Bezout {
    pub gcd: SkewPoly,
    pub a: SkewPoly,
    pub b: SkewPoly,
}

impl SkewPoly {
    pub fn new(tower: &FieldTower, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly {
            tower: tower.clone(),
            coeffs,
        }
    }

    pub fn zero(tower: &FieldTower) -> Self {
        Self::new(tower, Vec::new())
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::constant(tower, tower.top().one())
    }

    pub fn constant(tower: &FieldTower, c: FieldElem) -> Self {
        Self::new(tower, vec![c])
    }

    /// `c·X^k`.
    pub fn monomial(tower: &FieldTower, c: FieldElem, k: usize) -> Self {
        let mut coeffs = vec![tower.top().zero(); k];
        coeffs.push(c);
        Self::new(tower, coeffs)
    }

    pub fn x(tower: &FieldTower) -> Self {
        Self::monomial(tower, tower.top().one(), 1)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.tower.top().zero())
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.tower.top().is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.tower.top().is_one(c))
    }

    /// Left-multiplies by the inverse of the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(c) => self.left_scale(&self.tower.top().inv(c).unwrap()),
        }
    }

    pub fn has_nonzero_constant(&self) -> bool {
        self.coeffs.first().is_some_and(|c| !c.is_zero())
    }

    fn check_tower(&self, other: &Self) -> Result<()> {
        if self.tower.same(&other.tower) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let top = self.tower.top();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| top.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::new(&self.tower, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let top = self.tower.top();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| top.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::new(&self.tower, coeffs)
    }

    pub fn neg(&self) -> Self {
        let top = self.tower.top();
        Self::new(&self.tower, self.coeffs.iter().map(|c| top.neg(c)).collect())
    }

    /// `c·P`.
    pub fn left_scale(&self, c: &FieldElem) -> Self {
        let top = self.tower.top();
        Self::new(&self.tower, self.coeffs.iter().map(|x| top.mul(c, x)).collect())
    }

    /// `P·c = Σ a_k σ^k(c) X^k`.
    pub fn right_scale(&self, c: &FieldElem) -> Self {
        let top = self.tower.top();
        let orbit = self.sigma_orbit(c);
        let r = self.tower.r();
        Self::new(
            &self.tower,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| top.mul(a, &orbit[k % r]))
                .collect(),
        )
    }

    /// `[c, σ(c), …, σ^{r−1}(c)]`.
    fn sigma_orbit(&self, c: &FieldElem) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.tower.r());
        let mut cur = c.clone();
        for _ in 0..self.tower.r() {
            let next = self.tower.sigma(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Twisted product: `(u X^k)(v X^j) = u σ^k(v) X^{k+j}`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.tower);
        }
        let top = self.tower.top();
        let r = self.tower.r();
        let orbits: Vec<Vec<FieldElem>> = other.coeffs.iter().map(|v| self.sigma_orbit(v)).collect();
        let mut out = vec![top.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (k, u) in self.coeffs.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, orbit) in orbits.iter().enumerate() {
                let v = &orbit[k % r];
                if !v.is_zero() {
                    out[k + j] = top.add(&out[k + j], &top.mul(u, v));
                }
            }
        }
        Self::new(&self.tower, out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        Ok(self.mul(other))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.tower);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division with the divisor on the given side.
    pub fn divmod(&self, d: &Self, side: Side) -> Result<(Self, Self)> {
        self.check_tower(d)?;
        let l = d.lead().ok_or(Error::DivisionByZero)?.clone();
        let top = self.tower.top();
        let r = self.tower.r();
        let m = d.coeffs.len() - 1;
        if self.coeffs.len() <= m {
            return Ok((Self::zero(&self.tower), self.clone()));
        }
        let l_inv = top.inv(&l)?;
        let l_orbit_inv: Vec<FieldElem> = self
            .sigma_orbit(&l)
            .iter()
            .map(|x| top.inv(x).unwrap())
            .collect();
        let d_orbits: Vec<Vec<FieldElem>> = match side {
            Side::Right => d.coeffs.iter().map(|v| self.sigma_orbit(v)).collect(),
            Side::Left => Vec::new(),
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![top.zero(); rem.len() - m];
        for n in (m..rem.len()).rev() {
            if rem[n].is_zero() {
                continue;
            }
            let k = n - m;
            match side {
                Side::Right => {
                    // (u X^k)·D has leading coefficient u σ^k(l)
                    let u = top.mul(&rem[n], &l_orbit_inv[k % r]);
                    for (j, orbit) in d_orbits.iter().enumerate() {
                        let t = top.mul(&u, &orbit[k % r]);
                        rem[k + j] = top.sub(&rem[k + j], &t);
                    }
                    quot[k] = u;
                }
                Side::Left => {
                    // D·(u X^k) has leading coefficient l σ^m(u)
                    let c = top.mul(&rem[n], &l_inv);
                    let u = self.tower.frobenius_power(&c, (r - m % r) % r);
                    let u_orbit = self.sigma_orbit(&u);
                    for (j, dc) in d.coeffs.iter().enumerate() {
                        let t = top.mul(dc, &u_orbit[j % r]);
                        rem[k + j] = top.sub(&rem[k + j], &t);
                    }
                    debug_assert!(rem[n].is_zero());
                    quot[k] = u;
                }
            }
        }
        rem.truncate(m);
        Ok((Self::new(&self.tower, quot), Self::new(&self.tower, rem)))
    }

    /// True iff `self` right-divides `p`, i.e. `p = U·self`.
    pub fn right_divides(&self, p: &Self) -> bool {
        !self.is_zero() && p.divmod(self, Side::Right).is_ok_and(|(_, r)| r.is_zero())
    }

    /// Quotient `U` with `self = U·d`; errors if the division is not exact.
    pub fn right_quotient(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divmod(d, Side::Right)?;
        if !r.is_zero() {
            return Err(Error::NotADivisor(d.to_string()));
        }
        Ok(q)
    }

    /// Extended right Euclid: monic `g` with `a·P + b·Q = g`.
    pub fn rgcd_bezout(&self, other: &Self) -> Result<Bezout> {
        self.check_tower(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let t = &self.tower;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut a0, mut a1) = (Self::one(t), Self::zero(t));
        let (mut b0, mut b1) = (Self::zero(t), Self::one(t));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1, Side::Right)?;
            let a2 = a0.sub(&q.mul(&a1));
            let b2 = b0.sub(&q.mul(&b1));
            r0 = std::mem::replace(&mut r1, r);
            a0 = std::mem::replace(&mut a1, a2);
            b0 = std::mem::replace(&mut b1, b2);
        }
        let c = t.top().inv(r0.lead().unwrap())?;
        Ok(Bezout {
            gcd: r0.left_scale(&c),
            a: a0.left_scale(&c),
            b: b0.left_scale(&c),
        })
    }

    pub fn rgcd(&self, other: &Self) -> Result<Self> {
        Ok(self.rgcd_bezout(other)?.gcd)
    }

    /// Monic left lowest common multiple.
    pub fn llcm(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let t = &self.tower;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut a0, mut a1) = (Self::one(t), Self::zero(t));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1, Side::Right)?;
            let a2 = a0.sub(&q.mul(&a1));
            r0 = std::mem::replace(&mut r1, r);
            a0 = std::mem::replace(&mut a1, a2);
        }
        // a1·P + b1·Q = 0 with a1 of minimal degree
        Ok(a1.mul(self).monic())
    }

    /// True iff every coefficient lies in `F_q` and sits at a multiple of `r`.
    pub fn is_central(&self) -> bool {
        let r = self.tower.r();
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || (i % r == 0 && self.tower.is_in_fq(c)))
    }

    /// The polynomial `Q` over `F_q` with `self = Q(X^r)`, if central.
    pub fn to_central(&self) -> Option<CommPoly> {
        if !self.is_central() {
            return None;
        }
        let r = self.tower.r();
        let coeffs = self
            .coeffs
            .iter()
            .step_by(r)
            .map(|c| self.tower.restrict_fq(c))
            .collect::<Option<Vec<_>>>()?;
        Some(CommPoly::new(self.tower.base(), coeffs))
    }

    /// `Q(X^r)`. `Q` may have coefficients in `F_q` or in `F_{q^r}`; the
    /// latter must all lie in `F_q`.
    pub fn central_lift(tower: &FieldTower, q: &CommPoly) -> Result<Self> {
        let top = tower.top();
        let coeffs: Vec<FieldElem> = if q.field() == tower.base() {
            q.coeffs().iter().map(|c| tower.embed_fq(c)).collect()
        } else if q.field() == top {
            if q.coeffs().iter().any(|c| !tower.is_in_fq(c)) {
                return Err(Error::NotInSubfield);
            }
            q.coeffs().to_vec()
        } else {
            return Err(Error::FieldMismatch);
        };
        let r = tower.r();
        let mut out = vec![top.zero(); coeffs.len().saturating_sub(1) * r + 1];
        for (i, c) in coeffs.into_iter().enumerate() {
            out[i * r] = c;
        }
        Ok(Self::new(tower, out))
    }

    /// Degree first, then coefficients from the constant term upwards.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    pub fn to_linearized(&self) -> LinearizedPoly {
        LinearizedPoly {
            tower: self.tower.clone(),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn random<R: Rng + ?Sized>(tower: &FieldTower, degree: usize, rng: &mut R) -> Self {
        let top = tower.top();
        let mut coeffs: Vec<_> = (0..degree).map(|_| top.random(rng)).collect();
        coeffs.push(top.random_nonzero(rng));
        Self::new(tower, coeffs)
    }

    pub fn random_monic<R: Rng + ?Sized>(tower: &FieldTower, degree: usize, rng: &mut R) -> Self {
        let top = tower.top();
        let mut coeffs: Vec<_> = (0..degree).map(|_| top.random(rng)).collect();
        coeffs.push(top.one());
        Self::new(tower, coeffs)
    }

    /// Monic, degree `degree`, with a nonzero constant term.
    pub fn random_etale<R: Rng + ?Sized>(tower: &FieldTower, degree: usize, rng: &mut R) -> Self {
        let top = tower.top();
        let mut p = Self::random_monic(tower, degree, rng);
        if degree > 0 {
            p.coeffs[0] = top.random_nonzero(rng);
        }
        p
    }

    /// The monic polynomial of the given degree whose lower coefficients are
    /// the base-`|K|` digits of `idx`.
    pub fn monic_from_index(tower: &FieldTower, degree: usize, mut idx: u64) -> Self {
        let top = tower.top();
        let k = top.size_u64().expect("coefficient field too large");
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(top.element_from_index(idx % k));
            idx /= k;
        }
        coeffs.push(top.one());
        Self::new(tower, coeffs)
    }

    /// All monic polynomials of the given degree, in index order.
    pub fn all_monic(tower: &FieldTower, degree: usize) -> impl Iterator<Item = SkewPoly> + '_ {
        let k = tower.top().size_u64().expect("coefficient field too large");
        let count = k.checked_pow(degree as u32).expect("too many polynomials");
        (0..count).map(move |i| Self::monic_from_index(tower, degree, i))
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let top = self.tower.top();
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let s = top.format(c);
            if i == 0 {
                terms.push(s);
            } else if top.is_one(c) {
                terms.push(mono);
            } else if s.contains(' ') {
                terms.push(format!("({s})*{mono}"));
            } else {
                terms.push(format!("{s}*{mono}"));
            }
        }
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

/// `Σ a_i Z^{q^i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    tower: FieldTower,
    coeffs: Vec<FieldElem>,
}

impl LinearizedPoly {
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn to_skew(&self) -> SkewPoly {
        SkewPoly::new(&self.tower, self.coeffs.clone())
    }

    /// Evaluates at `z` in an extension `L ⊇ F_{q^r}`.
    pub fn eval(&self, ext: &TowerExtension, z: &FieldElem) -> Result<FieldElem> {
        if !ext.tower().same(&self.tower) {
            return Err(Error::NotAnExtension);
        }
        let l = ext.field();
        l.check(z)?;
        let mut acc = l.zero();
        let mut zp = z.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                zp = ext.q_power(&zp);
            }
            if !a.is_zero() {
                acc = l.add(&acc, &l.mul(&ext.embed(a), &zp));
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.tower.top();
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => "Z".to_string(),
                1 => "Z^q".to_string(),
                _ => format!("Z^(q^{i})"),
            };
            let s = top.format(c);
            if top.is_one(c) {
                terms.push(mono);
            } else if s.contains(' ') {
                terms.push(format!("({s})*{mono}"));
            } else {
                terms.push(format!("{s}*{mono}"));
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FieldTower {
        FieldTower::new(2, 1, 2, None, None).unwrap()
    }

    #[test]
    fn x_times_scalar_twists() {
        let t = f4();
        let w = t.omega();
        let x = SkewPoly::x(&t);
        let prod = x.mul(&SkewPoly::constant(&t, w.clone()));
        assert_eq!(prod, SkewPoly::monomial(&t, t.sigma(&w), 1));
        assert_eq!(prod.to_string(), "(w + 1)*X");
        let one = SkewPoly::constant(&t, t.top().one());
        assert_eq!(x.mul(&one), one.mul(&x));
    }

    #[test]
    fn divisions_both_sides() {
        let t = FieldTower::new(3, 1, 3, None, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = SkewPoly::random(&t, 5, &mut rng);
            let d = SkewPoly::random(&t, 2, &mut rng);
            let (u, r) = p.divmod(&d, Side::Right).unwrap();
            assert_eq!(u.mul(&d).add(&r), p);
            assert!(r.degree().is_none_or(|x| x < 2));
            let (u, r) = p.divmod(&d, Side::Left).unwrap();
            assert_eq!(d.mul(&u).add(&r), p);
            assert!(r.degree().is_none_or(|x| x < 2));
        }
        let x = SkewPoly::x(&t);
        let (q, r) = x.mul(&x).divmod(&x, Side::Right).unwrap();
        assert_eq!((q, r.is_zero()), (x.clone(), true));
        assert_eq!(x.divmod(&SkewPoly::zero(&t), Side::Right), Err(Error::DivisionByZero));
    }

    #[test]
    fn rgcd_llcm_degree_identity() {
        let t = f4();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = SkewPoly::random(&t, rng.gen_range(0..=4), &mut rng);
            let q = SkewPoly::random(&t, rng.gen_range(0..=4), &mut rng);
            let bz = p.rgcd_bezout(&q).unwrap();
            assert_eq!(bz.a.mul(&p).add(&bz.b.mul(&q)), bz.gcd);
            assert!(bz.gcd.right_divides(&p) && bz.gcd.right_divides(&q));
            let l = p.llcm(&q).unwrap();
            assert!(p.right_divides(&l) && q.right_divides(&l));
            assert_eq!(
                l.degree().unwrap() + bz.gcd.degree().unwrap(),
                p.degree().unwrap() + q.degree().unwrap()
            );
        }
        let p = SkewPoly::random(&t, 3, &mut rng);
        assert_eq!(p.rgcd(&p).unwrap(), p.monic());
        assert!(p.rgcd(&SkewPoly::one(&t)).unwrap().is_one());
        assert_eq!(p.llcm(&SkewPoly::one(&t)).unwrap(), p.monic());
    }

    #[test]
    fn central_lift_commutes() {
        let t = FieldTower::new(2, 2, 3, None, None).unwrap();
        let base = t.base();
        let q = CommPoly::new(base, vec![base.generator(), base.one(), base.one()]);
        let c = SkewPoly::central_lift(&t, &q).unwrap();
        assert_eq!(c.degree(), Some(6));
        assert_eq!(c.to_central().unwrap(), q);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let w = SkewPoly::random(&t, 3, &mut rng);
            assert_eq!(c.mul(&w), w.mul(&c));
        }
        let bad = CommPoly::new(t.top(), vec![t.omega(), t.top().one()]);
        assert_eq!(SkewPoly::central_lift(&t, &bad), Err(Error::NotInSubfield));
    }

    #[test]
    fn linearized_composition() {
        let t = FieldTower::new(2, 1, 3, None, None).unwrap();
        let ext = TowerExtension::with_degree(&t, 2, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let p = SkewPoly::random(&t, 2, &mut rng);
            let q = SkewPoly::random(&t, 2, &mut rng);
            let z = ext.field().random(&mut rng);
            let lhs = p.mul(&q).to_linearized().eval(&ext, &z).unwrap();
            let inner = q.to_linearized().eval(&ext, &z).unwrap();
            let rhs = p.to_linearized().eval(&ext, &inner).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn x_minus_one_vanishes_on_fq() {
        let t = FieldTower::new(3, 1, 1, None, None).unwrap();
        let ext = TowerExtension::with_degree(&t, 2, 0).unwrap();
        let top = t.top();
        let p = SkewPoly::new(&t, vec![top.neg(&top.one()), top.one()]).to_linearized();
        let l = ext.field();
        let zeros: Vec<_> = l
            .elements()
            .filter(|z| p.eval(&ext, z).unwrap().is_zero())
            .collect();
        assert_eq!(zeros.len(), 3);
        for z in zeros {
            assert!(l.restrict(&z).is_some());
        }
    }
}
