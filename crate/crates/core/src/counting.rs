//! Exact counts of factorizations, irreducible polynomials and `Ψ`-fibers.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{divisors, mobius, multinomial};
use crate::commalg::CommPoly;
use crate::error::{Error, Result};
use crate::skewpoly::SkewPoly;
use crate::splitting::galois_matrix;

/// Jordan block lengths of `φ^r` attached to one irreducible class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTable {
    pub class: CommPoly,
    /// Descending.
    pub lengths: Vec<usize>,
}

impl TypeTable {
    pub fn delta(&self) -> usize {
        self.class.degree().unwrap_or(0)
    }

    /// Number of blocks.
    pub fn m(&self) -> usize {
        self.lengths.len()
    }

    pub fn tau(&self) -> usize {
        self.lengths.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GType {
    pub tables: Vec<TypeTable>,
}

impl GType {
    pub fn taus(&self) -> Vec<usize> {
        self.tables.iter().map(TypeTable::tau).collect()
    }

    /// `Σ δ_l τ_l`, which equals `deg P`.
    pub fn degree(&self) -> usize {
        self.tables.iter().map(|t| t.delta() * t.tau()).sum()
    }
}

/// JSON-friendly view of a [`GType`].
#[derive(Serialize)]
pub struct GTypeJson {
    pub class: String,
    pub delta: usize,
    pub lengths: Vec<usize>,
}

impl From<&GType> for Vec<GTypeJson> {
    fn from(t: &GType) -> Self {
        t.tables
            .iter()
            .map(|tab| GTypeJson {
                class: tab.class.to_string(),
                delta: tab.delta(),
                lengths: tab.lengths.clone(),
            })
            .collect()
    }
}

/// Type of `φ^r` on `D_P`, one table per irreducible factor of `Ψ(P)`.
pub fn g_type(p: &SkewPoly) -> Result<GType> {
    let g0 = galois_matrix(p)?;
    let tables = g0
        .primary_type()
        .into_iter()
        .map(|(class, lengths)| TypeTable { class, lengths })
        .collect();
    Ok(GType { tables })
}

fn qpow(q: &BigUint, e: usize) -> BigUint {
    q.pow(e as u32)
}

/// Lowerings of one table and the number of irreducible invariant
/// subspaces realising each. Index `i` (1-based) is lowerable when `i = m` or
/// `t_i > t_{i+1}`; its weight is `Σ_{j=i_0}^{i} q^{δ(j−1)}` where `i_0` is
/// the first index of its run.
pub fn admissible_paths(lengths: &[usize], q: &BigUint, delta: usize) -> Result<Vec<(Vec<usize>, BigUint)>> {
    if lengths.is_empty() {
        return Err(Error::InvalidParameter("empty type table".into()));
    }
    let mut t = lengths.to_vec();
    t.sort_unstable_by(|a, b| b.cmp(a));
    let m = t.len();
    let mut out = Vec::new();
    let mut i0 = 0;
    for i in 0..m {
        if i > 0 && t[i] != t[i - 1] {
            i0 = i;
        }
        if i + 1 < m && t[i] == t[i + 1] {
            continue;
        }
        let weight = (i0..=i).fold(BigUint::zero(), |acc, j| acc + qpow(q, delta * j));
        let mut lowered = t.clone();
        lowered[i] -= 1;
        lowered.retain(|&x| x > 0);
        out.push((lowered, weight));
    }
    Ok(out)
}

/// Number of Jordan–Hölder sequences for one type table.
pub fn count_jh(lengths: &[usize], q: &BigUint, delta: usize) -> BigUint {
    let mut memo = HashMap::new();
    let mut t = lengths.to_vec();
    t.retain(|&x| x > 0);
    t.sort_unstable_by(|a, b| b.cmp(a));
    jh_rec(&t, q, delta, &mut memo)
}

fn jh_rec(t: &[usize], q: &BigUint, delta: usize, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    if t.is_empty() {
        return BigUint::one();
    }
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for (next, w) in admissible_paths(t, q, delta).unwrap() {
        total += w * jh_rec(&next, q, delta, memo);
    }
    memo.insert(t.to_vec(), total.clone());
    total
}

/// `∏_{j=1}^{m} (Q^j − 1)/(Q − 1)` with `Q = q^δ`.
pub fn q_factorial(m: usize, q: &BigUint, delta: usize) -> BigUint {
    let big_q = qpow(q, delta);
    (1..=m).fold(BigUint::one(), |acc, j| {
        acc * ((big_q.pow(j as u32) - 1u32) / (&big_q - 1u32))
    })
}

/// Number of factorizations of `P` into monic irreducibles.
pub fn count_factorizations_for_type(t: &GType, q: &BigUint) -> BigUint {
    let mut total = multinomial(&t.taus());
    for tab in &t.tables {
        total *= count_jh(&tab.lengths, q, tab.delta());
    }
    total
}

pub fn count_factorizations(p: &SkewPoly) -> Result<BigUint> {
    let t = g_type(p)?;
    Ok(count_factorizations_for_type(&t, p.tower().q()))
}

/// Number of monic irreducible skew polynomials of degree `d` over `F_{q^r}`.
pub fn count_irreducible(q: &BigUint, r: usize, d: usize) -> Result<BigUint> {
    if d == 0 || r == 0 {
        return Err(Error::InvalidParameter("r and d must be >= 1".into()));
    }
    if d == 1 {
        return Ok(qpow(q, r));
    }
    let mut necklace = BigInt::zero();
    for i in divisors(d as u64) {
        let mu = mobius(d as u64 / i);
        necklace += BigInt::from(mu) * BigInt::from(qpow(q, i as usize));
    }
    let necklace = necklace.to_biguint().expect("necklace count is positive");
    let num = (qpow(q, d * r) - 1u32) * necklace;
    let den = BigUint::from(d) * (qpow(q, d) - 1u32);
    Ok(num / den)
}

/// `|Ψ^{-1}(Q)|` for an irreducible `Q ≠ Y` of degree `d`.
pub fn fiber_size(q: &BigUint, r: usize, d: usize) -> Result<BigUint> {
    if d == 0 || r == 0 {
        return Err(Error::InvalidParameter("r and d must be >= 1".into()));
    }
    Ok((qpow(q, d * r) - 1u32) / (qpow(q, d) - 1u32))
}

/// A φ-module of this type admits a cyclic vector iff no class has more
/// than `r` blocks.
pub fn has_generator(t: &GType, r: usize) -> bool {
    t.tables.iter().all(|tab| tab.m() <= r)
}
