//! Irreducibility and complete factorization of skew polynomials.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commalg::CommPoly;
use crate::counting::count_factorizations;
use crate::error::{Error, Result};
use crate::fields::FieldElem;
use crate::phimod::{irreducible_right_divisors, psi};
use crate::skewpoly::SkewPoly;

/// `P` is irreducible iff `Ψ(P)` is.
pub fn is_irreducible_skew(p: &SkewPoly) -> Result<bool> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    psi(&p.monic())?.is_irreducible()
}

fn psi_classes(p: &SkewPoly) -> Result<Vec<(CommPoly, u32)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x707369);
    Ok(psi(p)?.factor(&mut rng)?.factors)
}

/// The factorization of a `P` with squarefree `Ψ(P)` whose factor classes,
/// read left to right, follow the canonical order of the irreducible factors
/// of `Ψ(P)`.
pub fn factor_squarefree_psi(p: &SkewPoly) -> Result<Vec<SkewPoly>> {
    if !p.has_nonzero_constant() {
        return Err(Error::ZeroConstantTerm);
    }
    let classes = psi_classes(p)?;
    if classes.iter().any(|(_, m)| *m > 1) {
        return Err(Error::NotSquarefree);
    }
    let tower = p.tower();
    let mut cur = p.clone();
    let mut out = Vec::with_capacity(classes.len());
    for (q, _) in classes.iter().rev() {
        let f = cur.rgcd(&SkewPoly::central_lift(tower, q)?)?;
        cur = cur.right_quotient(&f)?;
        out.push(f);
    }
    out.reverse();
    Ok(out)
}

/// Every factorization of a polynomial into monic irreducibles, leftmost
/// factor first.
#[derive(Clone, Debug)]
pub struct FactorizationSet {
    pub poly: SkewPoly,
    pub factorizations: Vec<Vec<SkewPoly>>,
}

impl FactorizationSet {
    pub fn len(&self) -> usize {
        self.factorizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factorizations.is_empty()
    }

    /// Products re-expand to the input, sequences are distinct and every
    /// factor is irreducible.
    pub fn verify(&self) -> Result<bool> {
        let t = self.poly.tower();
        let mut seen = std::collections::HashSet::new();
        for f in &self.factorizations {
            let prod = f.iter().fold(SkewPoly::one(t), |acc, x| acc.mul(x));
            if prod != self.poly || !seen.insert(key_of_seq(f)) {
                return Ok(false);
            }
            for x in f {
                if !is_irreducible_skew(x)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

type Key = Vec<FieldElem>;

fn key_of_seq(f: &[SkewPoly]) -> Vec<Key> {
    f.iter().map(|x| x.coeffs().to_vec()).collect()
}

struct Enumerator {
    budget: u64,
    memo: HashMap<Key, Arc<Vec<Vec<SkewPoly>>>>,
}

impl Enumerator {
    fn run(&mut self, p: &SkewPoly) -> Result<Arc<Vec<Vec<SkewPoly>>>> {
        if p.degree() == Some(0) {
            return Ok(Arc::new(vec![Vec::new()]));
        }
        let key = p.coeffs().to_vec();
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        for (q, _) in psi_classes(p)? {
            for d in irreducible_right_divisors(p, &q, self.budget)? {
                let u = p.right_quotient(&d)?;
                for left in self.run(&u)?.iter() {
                    let mut f = left.clone();
                    f.push(d.clone());
                    out.push(f);
                }
            }
        }
        let out = Arc::new(out);
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// All factorizations, by peeling irreducible right divisors class by class
/// and recursing on the quotient.
pub fn all_factorizations(p: &SkewPoly, budget: u64) -> Result<FactorizationSet> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if !p.has_nonzero_constant() {
        return Err(Error::ZeroConstantTerm);
    }
    if p.degree() == Some(0) {
        return Err(Error::ConstantPolynomial);
    }
    let count = count_factorizations(p)?;
    if count > BigUint::from(budget) {
        return Err(Error::budget(count, budget));
    }
    let mut e = Enumerator {
        budget,
        memo: HashMap::new(),
    };
    let mut facs = (*e.run(p)?).clone();
    facs.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.canonical_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(a.len().cmp(&b.len()))
    });
    Ok(FactorizationSet {
        poly: p.clone(),
        factorizations: facs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTower;
    use crate::phimod::DEFAULT_BUDGET;
    use crate::testutil::{ex_f49, ex_f7_5};
    use num_traits::ToPrimitive;

    #[test]
    fn irreducibility() {
        let (t, p) = ex_f7_5();
        assert!(is_irreducible_skew(&p).unwrap());
        let x = SkewPoly::x(&t);
        assert!(is_irreducible_skew(&x).unwrap());
        assert!(!is_irreducible_skew(&x.mul(&x)).unwrap());
        let set = all_factorizations(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(set.factorizations, vec![vec![p.clone()]]);
    }

    #[test]
    fn ninety_nine() {
        let (_, p) = ex_f49();
        let set = all_factorizations(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(set.len(), 99);
        assert!(set.verify().unwrap());
    }

    #[test]
    fn squarefree_psi_round_trip() {
        let t = FieldTower::new(3, 1, 2, None, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut tried = 0;
        while tried < 10 {
            let a = SkewPoly::random_etale(&t, 2, &mut rng);
            let b = SkewPoly::random_etale(&t, 1, &mut rng);
            if !is_irreducible_skew(&a).unwrap() {
                continue;
            }
            let p = a.mul(&b);
            let f = factor_squarefree_psi(&p).unwrap();
            assert_eq!(f.len(), 2);
            assert_eq!(f[0].mul(&f[1]), p);
            let all = all_factorizations(&p, DEFAULT_BUDGET).unwrap();
            assert_eq!(all.len(), 2);
            assert_eq!(
                count_factorizations(&p).unwrap().to_usize().unwrap(),
                all.len()
            );
            tried += 1;
        }
    }

    #[test]
    fn rejects_non_squarefree() {
        let (_, p) = ex_f49();
        assert_eq!(factor_squarefree_psi(&p), Err(Error::NotSquarefree));
        let t = p.tower();
        let x = SkewPoly::x(t);
        assert_eq!(all_factorizations(&x, 10).unwrap_err(), Error::ZeroConstantTerm);
    }
}
