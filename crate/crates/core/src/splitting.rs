//! Splitting fields of linearized polynomials and the Galois action on their
//! roots.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElem, TowerExtension};
use crate::linalg::Matrix;
use crate::phimod::{gamma0_invariants, gamma0_min_poly};
use crate::skewpoly::SkewPoly;

/// Default cap on `a·r·m`, the degree over `F_p` of a materialized splitting field.
pub const DEFAULT_ROOTS_BUDGET: u64 = 64;

/// Frobenius normal form of `Γ_0`, with entries in `F_q`.
pub fn galois_matrix(p: &SkewPoly) -> Result<Matrix> {
    Ok(gamma0_invariants(p)?.normal_form(p.tower().base()))
}

/// Degree `m` of the splitting field of `L_P` over `F_{q^r}`: the
/// multiplicative order of `Γ_0`.
pub fn splitting_degree(p: &SkewPoly) -> Result<BigUint> {
    let min = gamma0_min_poly(p)?;
    let char_p = BigUint::from(p.tower().p());
    let mut rng = ChaCha8Rng::seed_from_u64(0x73706c);
    let mut m = BigUint::one();
    for (q, t) in min.factor(&mut rng)?.factors {
        let mut pk = BigUint::one();
        while pk < BigUint::from(t) {
            pk *= &char_p;
        }
        m = m.lcm(&(q.poly_order()? * pk));
    }
    Ok(m)
}

/// Smallest `e ≥ 1` with `M^e = I`, searched up to `limit`.
pub fn matrix_order(m: &Matrix, limit: u64) -> Option<u64> {
    let id = Matrix::identity(m.field(), m.rows());
    let mut acc = m.clone();
    for e in 1..=limit {
        if acc == id {
            return Some(e);
        }
        acc = acc.mul(m);
    }
    None
}

/// An `F_q`-basis of the roots of `L_P` in an explicit splitting field, with
/// the matrix of `z ↦ z^{q^r}` in that basis.
#[derive(Clone, Debug)]
pub struct RootSpace {
    pub extension: TowerExtension,
    pub basis: Vec<FieldElem>,
    pub action: Matrix,
}

pub fn roots_basis(p: &SkewPoly, budget: u64) -> Result<RootSpace> {
    roots_basis_seeded(p, budget, 0)
}

/// As [`roots_basis`], with the seed used while embedding `F_{q^r}`.
pub fn roots_basis_seeded(p: &SkewPoly, budget: u64, seed: u64) -> Result<RootSpace> {
    let tower = p.tower();
    let m = splitting_degree(p)?;
    let needed = BigUint::from(tower.a() * tower.r()) * &m;
    if needed > BigUint::from(budget) {
        return Err(Error::budget(needed, budget));
    }
    let m = m.to_usize().unwrap();
    let ext = TowerExtension::with_degree(tower, m, seed)?;
    roots_in(p, ext)
}

/// Root space of `L_P` inside a given extension, which must split `L_P`.
pub fn roots_in(p: &SkewPoly, ext: TowerExtension) -> Result<RootSpace> {
    let tower = p.tower();
    let base = tower.base();
    let l: &Field = ext.field();
    let n = l.relative_degree();
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let lin = p.to_linearized();
    let z = l.generator();
    // columns: F_q-coordinates of L_P(Z^j)
    let mut cols = Vec::with_capacity(n);
    let mut zj = l.one();
    for _ in 0..n {
        cols.push(l.coords_over_base(&lin.eval(&ext, &zj)?));
        zj = l.mul(&zj, &z);
    }
    let map = Matrix::from_rows(base, cols)?.transpose();
    let kernel = map.kernel();
    if kernel.len() != d {
        return Err(Error::NotAnExtension);
    }
    let basis: Vec<FieldElem> = kernel.iter().map(|v| l.from_base_coords(v)).collect();
    let coords = Matrix::from_rows(base, kernel.clone())?.transpose();
    let mut action = Matrix::zeros(base, d, d);
    for (j, b) in basis.iter().enumerate() {
        let mut img = b.clone();
        for _ in 0..tower.r() {
            img = ext.q_power(&img);
        }
        let c = coords
            .solve(&l.coords_over_base(&img))
            .ok_or(Error::NotAnExtension)?;
        for (i, v) in c.into_iter().enumerate() {
            action.set(i, j, v);
        }
    }
    Ok(RootSpace {
        extension: ext,
        basis,
        action,
    })
}

#[derive(Serialize, Debug)]
pub struct SplittingReport {
    pub m: String,
    pub galois_matrix: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<String>>,
}

pub fn splitting_report(p: &SkewPoly, with_roots: Option<u64>) -> Result<SplittingReport> {
    let m = splitting_degree(p)?;
    let g0 = galois_matrix(p)?;
    let roots = match with_roots {
        None => None,
        Some(budget) => {
            let rs = roots_basis(p, budget)?;
            let l = rs.extension.field();
            Some(rs.basis.iter().map(|b| l.format(b)).collect())
        }
    };
    Ok(SplittingReport {
        m: m.to_string(),
        galois_matrix: g0.to_strings(),
        roots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTower;
    use crate::testutil::ex_f7_5;
    use rand::SeedableRng;

    #[test]
    fn cubic_example() {
        let (t, p) = ex_f7_5();
        assert_eq!(splitting_degree(&p).unwrap(), BigUint::from(171u32));
        let g0 = galois_matrix(&p).unwrap();
        assert_eq!(g0, Matrix::from_ints(t.base(), &[&[0, 0, -5], &[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(matrix_order(&g0, 1000), Some(171));
        assert!(matches!(roots_basis(&p, 64), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn x_minus_one() {
        let t = FieldTower::new(5, 1, 1, None, None).unwrap();
        let p = SkewPoly::x(&t).sub(&SkewPoly::one(&t));
        assert_eq!(splitting_degree(&p).unwrap(), BigUint::one());
        assert_eq!(galois_matrix(&p).unwrap(), Matrix::from_ints(t.base(), &[&[1]]));
        let rs = roots_basis(&p, 64).unwrap();
        assert_eq!(rs.basis.len(), 1);
        assert!(rs.action.is_identity());
    }

    #[test]
    fn unipotent_order_two() {
        // X^2 + 1 over F_2 with r = 1 has Γ_0 = companion((Y+1)^2)
        let t = FieldTower::new(2, 1, 1, None, None).unwrap();
        let top = t.top();
        let p = SkewPoly::new(&t, vec![top.one(), top.zero(), top.one()]);
        assert_eq!(splitting_degree(&p).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn linear_norm() {
        let t = FieldTower::new(3, 1, 3, None, None).unwrap();
        let top = t.top();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = top.random_nonzero(&mut rng);
        let p = SkewPoly::new(&t, vec![top.neg(&c), top.one()]);
        let norm = top.mul(&c, &top.mul(&t.sigma(&c), &t.frobenius_power(&c, 2)));
        let g0 = galois_matrix(&p).unwrap();
        assert_eq!(g0.entries(), &[t.restrict_fq(&norm).unwrap()]);
    }

    #[test]
    fn root_action_matches_gamma0() {
        let t = FieldTower::new(2, 1, 2, None, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 5 {
            let p = SkewPoly::random_etale(&t, 2, &mut rng);
            let Ok(rs) = roots_basis(&p, 64) else { continue };
            assert_eq!(rs.basis.len(), 2);
            let inv = crate::phimod::gamma0_invariants(&p).unwrap();
            assert_eq!(rs.action.invariant_factors(), inv);
            done += 1;
        }
    }
}
