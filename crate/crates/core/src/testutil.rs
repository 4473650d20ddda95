//! Shared fixtures for unit tests.

use crate::fields::{FieldElem, FieldTower};
use crate::skewpoly::SkewPoly;

pub(crate) fn tower(p: u64, r: usize, h: &[u64]) -> FieldTower {
    let h = h.iter().map(|&c| FieldElem::from_raw(vec![c % p])).collect();
    FieldTower::new(p, 1, r, None, Some(h)).unwrap()
}

/// `Σ c_i X^i` with `c_i = ω^{e_i}` (`None` for a zero coefficient).
pub(crate) fn poly_in_powers(t: &FieldTower, exps: &[Option<u64>]) -> SkewPoly {
    let top = t.top();
    let w = t.omega();
    let coeffs = exps
        .iter()
        .map(|e| e.map_or_else(|| top.zero(), |e| top.pow_u64(&w, e)))
        .collect();
    SkewPoly::new(t, coeffs)
}

/// `F_{7^5}` with `h = Y^5 + Y + 4` and `P = X^3 + ωX^2 − ω^2`.
pub(crate) fn ex_f7_5() -> (FieldTower, SkewPoly) {
    let t = tower(7, 5, &[4, 1, 0, 0, 0, 1]);
    let top = t.top();
    let w = t.omega();
    let p = SkewPoly::new(
        &t,
        vec![top.neg(&top.mul(&w, &w)), top.zero(), w, top.one()],
    );
    (t, p)
}

/// `F_49` with `h = Y^2 − Y + 3` and the sextic of type (2,1).
pub(crate) fn ex_f49() -> (FieldTower, SkewPoly) {
    let t = tower(7, 2, &[3, 6, 1]);
    let p = poly_in_powers(
        &t,
        &[Some(36), Some(35), Some(27), Some(3), Some(17), Some(3), Some(0)],
    );
    (t, p)
}
