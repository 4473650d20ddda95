//! Finite fields and the tower `F_p ⊂ F_q ⊂ F_{q^r}`.
//!
//! Every field is either a prime field or a simple extension `B[Z]/(h)` of
//! another field `B`. Elements are stored as flat coordinate vectors over
//! `F_p` in the tower basis: an element of `B[Z]/(h)` is `n` consecutive
//! chunks, chunk `i` being the `B`-coefficient of `Z^i`. Addition is therefore
//! coordinatewise mod `p` at every level, and a subfield element embeds as the
//! first chunk.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime_u64;
use crate::commalg::{self, CommPoly};
use crate::error::{Error, Result};

/// An element of a finite field as its `F_p` coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElem(Vec<u64>);

impl FieldElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    /// Wraps raw coordinates. The caller is responsible for the length and
    /// for reducing entries mod `p`; see [`Field::elem_from_coords`].
    pub fn from_raw(coords: Vec<u64>) -> Self {
        FieldElem(coords)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

struct FieldInner {
    p: u64,
    degree: usize,
    size: BigUint,
    symbol: char,
    ext: Option<Extension>,
}

struct Extension {
    base: Field,
    n: usize,
    modulus: Vec<FieldElem>,
    /// Modulus coefficients when the base is the prime field.
    flat_modulus: Option<Vec<u64>>,
    /// `(Z^i)^{|base|}` for `i < n`.
    frob: Vec<FieldElem>,
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldInner {
            p,
            degree: 1,
            size: BigUint::from(p),
            symbol: '1',
            ext: None,
        })))
    }

    /// `base[Z]/(modulus)`; the modulus must be monic and irreducible.
    pub fn extension(base: &Field, modulus: Vec<FieldElem>, symbol: char) -> Result<Field> {
        if modulus.len() < 2 {
            return Err(Error::InvalidParameter(
                "extension modulus must have degree >= 1".into(),
            ));
        }
        for c in &modulus {
            base.check(c)?;
        }
        if !base.is_one(modulus.last().unwrap()) {
            return Err(Error::NotMonic);
        }
        let poly = CommPoly::new(base, modulus.clone());
        if !poly.is_irreducible()? {
            return Err(Error::ReducibleModulus(poly.to_string()));
        }
        Ok(Self::extension_unchecked(base, modulus, symbol))
    }

    fn extension_unchecked(base: &Field, modulus: Vec<FieldElem>, symbol: char) -> Field {
        let n = modulus.len() - 1;
        let flat_modulus = if base.is_prime_field() {
            Some(modulus.iter().map(|c| c.0[0]).collect())
        } else {
            None
        };
        let p = base.characteristic();
        let degree = base.degree() * n;
        let size = base.size().pow(n as u32);
        let draft = Field(Arc::new(FieldInner {
            p,
            degree,
            size: size.clone(),
            symbol,
            ext: Some(Extension {
                base: base.clone(),
                n,
                modulus: modulus.clone(),
                flat_modulus: flat_modulus.clone(),
                frob: Vec::new(),
            }),
        }));
        let g = draft.generator();
        let g_frob = draft.pow(&g, base.size());
        let mut frob = Vec::with_capacity(n);
        let mut acc = draft.one();
        for _ in 0..n {
            frob.push(acc.clone());
            acc = draft.mul(&acc, &g_frob);
        }
        Field(Arc::new(FieldInner {
            p,
            degree,
            size,
            symbol,
            ext: Some(Extension {
                base: base.clone(),
                n,
                modulus,
                flat_modulus,
                frob,
            }),
        }))
    }

    /// Extension of degree `n` by the smallest monic irreducible polynomial.
    pub fn extension_default(base: &Field, n: usize, symbol: char) -> Result<Field> {
        let modulus = smallest_irreducible(base, n)?;
        Ok(Self::extension_unchecked(base, modulus.into_coeffs(), symbol))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn size(&self) -> &BigUint {
        &self.0.size
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.ext.is_none()
    }

    pub fn base(&self) -> Option<&Field> {
        self.0.ext.as_ref().map(|e| &e.base)
    }

    /// Degree over the immediate base field (1 for a prime field).
    pub fn relative_degree(&self) -> usize {
        self.0.ext.as_ref().map_or(1, |e| e.n)
    }

    pub fn modulus(&self) -> Option<&[FieldElem]> {
        self.0.ext.as_ref().map(|e| e.modulus.as_slice())
    }

    pub fn symbol(&self) -> char {
        self.0.symbol
    }

    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }

    pub(crate) fn check(&self, x: &FieldElem) -> Result<()> {
        if x.0.len() != self.0.degree || x.0.iter().any(|&c| c >= self.0.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![0; self.0.degree])
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FieldElem {
        let mut c = vec![0; self.0.degree];
        c[0] = v % self.0.p;
        FieldElem(c)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        let p = self.0.p as i128;
        self.from_u64((v as i128).rem_euclid(p) as u64)
    }

    /// Builds an element from `F_p` coordinates, reducing them mod `p`.
    pub fn elem_from_coords(&self, coords: &[u64]) -> Result<FieldElem> {
        if coords.len() != self.0.degree {
            return Err(Error::DimensionMismatch {
                expected: self.0.degree,
                found: coords.len(),
            });
        }
        Ok(FieldElem(coords.iter().map(|&c| c % self.0.p).collect()))
    }

    /// The class of `Z` in `base[Z]/(h)`.
    pub fn generator(&self) -> FieldElem {
        match &self.0.ext {
            None => self.one(),
            Some(ext) if ext.n == 1 => self.embed(&ext.base.neg(&ext.modulus[0])),
            Some(ext) => {
                let k = ext.base.degree();
                let mut c = vec![0; self.0.degree];
                c[k] = 1;
                FieldElem(c)
            }
        }
    }

    pub fn is_zero(&self, x: &FieldElem) -> bool {
        x.is_zero()
    }

    pub fn is_one(&self, x: &FieldElem) -> bool {
        x.0[0] == 1 && x.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let p = self.0.p;
        FieldElem(x.0.iter().zip(&y.0).map(|(&a, &b)| add_mod(a, b, p)).collect())
    }

    pub fn sub(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let p = self.0.p;
        FieldElem(x.0.iter().zip(&y.0).map(|(&a, &b)| sub_mod(a, b, p)).collect())
    }

    pub fn neg(&self, x: &FieldElem) -> FieldElem {
        let p = self.0.p;
        FieldElem(x.0.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect())
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldElem(self.mul_raw(&x.0, &y.0))
    }

    pub fn square(&self, x: &FieldElem) -> FieldElem {
        self.mul(x, x)
    }

    fn mul_raw(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        let ext = match &self.0.ext {
            None => return vec![mul_mod(x[0], y[0], p)],
            Some(ext) => ext,
        };
        let n = ext.n;
        if let Some(m) = &ext.flat_modulus {
            let mut acc = vec![0u64; 2 * n - 1];
            for (i, &a) in x.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in y.iter().enumerate() {
                    if b != 0 {
                        acc[i + j] = add_mod(acc[i + j], mul_mod(a, b, p), p);
                    }
                }
            }
            for t in (n..2 * n - 1).rev() {
                let c = acc[t];
                if c == 0 {
                    continue;
                }
                for s in 0..n {
                    acc[t - n + s] = sub_mod(acc[t - n + s], mul_mod(c, m[s], p), p);
                }
            }
            acc.truncate(n);
            return acc;
        }
        let base = &ext.base;
        let k = base.degree();
        let zero = vec![0u64; k];
        let mut acc: Vec<Vec<u64>> = vec![zero.clone(); 2 * n - 1];
        for i in 0..n {
            let a = &x[i * k..(i + 1) * k];
            if a.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..n {
                let b = &y[j * k..(j + 1) * k];
                if b.iter().all(|&c| c == 0) {
                    continue;
                }
                let prod = base.mul_raw(a, b);
                for (slot, v) in acc[i + j].iter_mut().zip(prod) {
                    *slot = add_mod(*slot, v, p);
                }
            }
        }
        for t in (n..2 * n - 1).rev() {
            if acc[t].iter().all(|&c| c == 0) {
                continue;
            }
            let c = acc[t].clone();
            for s in 0..n {
                let prod = base.mul_raw(&c, &ext.modulus[s].0);
                for (slot, v) in acc[t - n + s].iter_mut().zip(prod) {
                    *slot = sub_mod(*slot, v, p);
                }
            }
        }
        acc.truncate(n);
        acc.into_iter().flatten().collect()
    }

    pub fn inv(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ext = match &self.0.ext {
            None => return Ok(FieldElem(vec![inv_mod(x.0[0], self.0.p).unwrap()])),
            Some(ext) => ext,
        };
        // Extended Euclid in base[Z] on (modulus, x).
        let base = &ext.base;
        let mut r0 = CommPoly::new(base, ext.modulus.clone());
        let mut r1 = CommPoly::new(base, self.coords_over_base(x));
        let mut s0 = CommPoly::zero(base);
        let mut s1 = CommPoly::one(base);
        while !r1.is_zero() {
            let (q, rem) = r0.div_rem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = base.inv(&r0.coeff(0))?;
        let s = s0.scale(&c);
        let mut coords = s.into_coeffs();
        coords.resize(ext.n, base.zero());
        Ok(self.from_base_coords(&coords))
    }

    pub fn div(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElem, e: &BigUint) -> FieldElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    pub fn pow_u64(&self, x: &FieldElem, e: u64) -> FieldElem {
        self.pow(x, &BigUint::from(e))
    }

    /// `x ↦ x^{|base|}`, the generator of `Gal(self / base)`. Identity on a
    /// prime field.
    pub fn frobenius(&self, x: &FieldElem) -> FieldElem {
        let ext = match &self.0.ext {
            None => return x.clone(),
            Some(ext) => ext,
        };
        let base = &ext.base;
        let k = base.degree();
        let p = self.0.p;
        let mut out = vec![0u64; self.0.degree];
        for i in 0..ext.n {
            let c = &x.0[i * k..(i + 1) * k];
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            let img = &ext.frob[i].0;
            for j in 0..ext.n {
                let prod = base.mul_raw(c, &img[j * k..(j + 1) * k]);
                for (slot, v) in out[j * k..(j + 1) * k].iter_mut().zip(prod) {
                    *slot = add_mod(*slot, v, p);
                }
            }
        }
        FieldElem(out)
    }

    /// Image of a base-field element.
    pub fn embed(&self, x: &FieldElem) -> FieldElem {
        let mut c = x.0.clone();
        c.resize(self.0.degree, 0);
        FieldElem(c)
    }

    /// The base-field element equal to `x`, if `x` lies in the base.
    pub fn restrict(&self, x: &FieldElem) -> Option<FieldElem> {
        let k = self.base()?.degree();
        if x.0[k..].iter().all(|&c| c == 0) {
            Some(FieldElem(x.0[..k].to_vec()))
        } else {
            None
        }
    }

    /// Coordinates over the immediate base, `n` elements.
    pub fn coords_over_base(&self, x: &FieldElem) -> Vec<FieldElem> {
        match &self.0.ext {
            None => vec![x.clone()],
            Some(ext) => {
                let k = ext.base.degree();
                x.0.chunks(k).map(|c| FieldElem(c.to_vec())).collect()
            }
        }
    }

    pub fn from_base_coords(&self, coords: &[FieldElem]) -> FieldElem {
        FieldElem(coords.iter().flat_map(|c| c.0.iter().copied()).collect())
    }

    /// Multiplies an element of `self` by an element of its base.
    pub fn scale_by_base(&self, c: &FieldElem, x: &FieldElem) -> FieldElem {
        match &self.0.ext {
            None => self.mul(c, x),
            Some(ext) => {
                let k = ext.base.degree();
                FieldElem(
                    x.0.chunks(k)
                        .flat_map(|chunk| ext.base.mul_raw(&c.0, chunk))
                        .collect(),
                )
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let p = self.0.p;
        FieldElem((0..self.0.degree).map(|_| rng.gen_range(0..p)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Number of elements when it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        self.0.size.to_u64()
    }

    /// Element with index `idx` in base-`p` digit order, coordinate 0 least
    /// significant.
    pub fn element_from_index(&self, mut idx: u64) -> FieldElem {
        let p = self.0.p;
        let mut c = vec![0; self.0.degree];
        for slot in c.iter_mut() {
            *slot = idx % p;
            idx /= p;
        }
        FieldElem(c)
    }

    pub fn index_of(&self, x: &FieldElem) -> Option<u64> {
        let p = self.0.p;
        x.0.iter().rev().try_fold(0u64, |acc, &c| acc.checked_mul(p)?.checked_add(c))
    }

    /// All elements, in index order. Panics if the field has more than
    /// `u64::MAX` elements.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let n = self.size_u64().expect("field too large to enumerate");
        (0..n).map(move |i| self.element_from_index(i))
    }

    pub fn format(&self, x: &FieldElem) -> String {
        let ext = match &self.0.ext {
            None => return x.0[0].to_string(),
            Some(ext) => ext,
        };
        let coords = self.coords_over_base(x);
        let mut terms = Vec::new();
        for (i, c) in coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = ext.base.format(c);
            if i == 0 {
                terms.push(s);
                continue;
            }
            let mono = if i == 1 {
                self.0.symbol.to_string()
            } else {
                format!("{}^{}", self.0.symbol, i)
            };
            if ext.base.is_one(c) {
                terms.push(mono);
            } else if s.contains(' ') {
                terms.push(format!("({s})*{mono}"));
            } else {
                terms.push(format!("{s}*{mono}"));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.p != other.0.p || self.0.degree != other.0.degree {
            return false;
        }
        match (&self.0.ext, &other.0.ext) {
            (None, None) => true,
            (Some(a), Some(b)) => a.n == b.n && a.modulus == b.modulus && a.base == b.base,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.degree)
    }
}

/// Smallest monic irreducible polynomial of degree `n` over `base`, ordering
/// candidates by the index of their coefficient sequence with the constant
/// term least significant.
pub fn smallest_irreducible(base: &Field, n: usize) -> Result<CommPoly> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be >= 1".into()));
    }
    let size = base
        .size_u64()
        .ok_or_else(|| Error::InvalidParameter("base field too large".into()))?;
    let mut digits = vec![0u64; n];
    loop {
        let mut coeffs: Vec<FieldElem> = digits.iter().map(|&d| base.element_from_index(d)).collect();
        coeffs.push(base.one());
        let poly = CommPoly::new(base, coeffs);
        if poly.is_irreducible()? {
            return Ok(poly);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Err(Error::InvalidParameter(format!(
                    "no irreducible polynomial of degree {n}"
                )));
            }
            digits[i] += 1;
            if digits[i] < size {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// JSON form of a tower: `{p, a, r, f, h}` with ascending coefficients; each
/// entry of `h` is the coordinate list of an `F_q` element.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    pub p: u64,
    pub a: usize,
    pub r: usize,
    pub f: Vec<u64>,
    pub h: Vec<Vec<u64>>,
}

/// The chain `F_p ⊂ F_q = F_p[Y]/(f) ⊂ F_{q^r} = F_q[Z]/(h)` with the
/// `q`-power Frobenius `σ` on the top field.
#[derive(Clone)]
pub struct FieldTower(Arc<TowerInner>);

struct TowerInner {
    a: usize,
    r: usize,
    f: Vec<u64>,
    prime: Field,
    base: Field,
    top: Field,
}

impl FieldTower {
    /// Builds the tower, choosing the smallest irreducible modulus whenever
    /// `f` or `h` is omitted. When `a = 1` the field `F_q` is the prime field
    /// itself and `f` is only validated.
    pub fn new(
        p: u64,
        a: usize,
        r: usize,
        f: Option<Vec<u64>>,
        h: Option<Vec<FieldElem>>,
    ) -> Result<FieldTower> {
        if a == 0 || r == 0 {
            return Err(Error::InvalidParameter("a and r must be >= 1".into()));
        }
        let prime = Field::prime(p)?;
        let (base, f) = match f {
            Some(f) => {
                if f.len() != a + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: a,
                        found: f.len().saturating_sub(1),
                    });
                }
                let f: Vec<u64> = f.iter().map(|c| c % p).collect();
                if f[a] != 1 {
                    return Err(Error::NotMonic);
                }
                let base = if a == 1 {
                    prime.clone()
                } else {
                    let coeffs = f.iter().map(|&c| prime.from_u64(c)).collect();
                    Field::extension(&prime, coeffs, 'u')?
                };
                (base, f)
            }
            None if a == 1 => (prime.clone(), vec![0, 1]),
            None => {
                let base = Field::extension_default(&prime, a, 'u')?;
                let f = base.modulus().unwrap().iter().map(|c| c.0[0]).collect();
                (base, f)
            }
        };
        let top = match h {
            Some(h) => {
                if h.len() != r + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: r,
                        found: h.len().saturating_sub(1),
                    });
                }
                let h = h
                    .iter()
                    .map(|c| base.elem_from_coords(c.coords()))
                    .collect::<Result<Vec<_>>>()?;
                Field::extension(&base, h, 'w')?
            }
            None => Field::extension_default(&base, r, 'w')?,
        };
        Ok(FieldTower(Arc::new(TowerInner {
            a,
            r,
            f,
            prime,
            base,
            top,
        })))
    }

    pub fn from_spec(spec: &TowerSpec) -> Result<FieldTower> {
        let h = spec
            .h
            .iter()
            .map(|c| FieldElem(c.clone()))
            .collect::<Vec<_>>();
        FieldTower::new(spec.p, spec.a, spec.r, Some(spec.f.clone()), Some(h))
    }

    pub fn spec(&self) -> TowerSpec {
        TowerSpec {
            p: self.p(),
            a: self.a(),
            r: self.r(),
            f: self.0.f.clone(),
            h: self.h().iter().map(|c| c.0.clone()).collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.0.prime.characteristic()
    }

    pub fn a(&self) -> usize {
        self.0.a
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn q(&self) -> &BigUint {
        self.0.base.size()
    }

    pub fn f(&self) -> &[u64] {
        &self.0.f
    }

    pub fn h(&self) -> &[FieldElem] {
        self.0.top.modulus().unwrap()
    }

    pub fn prime_field(&self) -> &Field {
        &self.0.prime
    }

    /// `F_q`.
    pub fn base(&self) -> &Field {
        &self.0.base
    }

    /// `F_{q^r}`.
    pub fn top(&self) -> &Field {
        &self.0.top
    }

    /// The class `ω` of the generator of `F_{q^r}` over `F_q`.
    pub fn omega(&self) -> FieldElem {
        self.0.top.generator()
    }

    pub fn same(&self, other: &FieldTower) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.spec() == other.spec()
    }

    pub fn sigma(&self, x: &FieldElem) -> FieldElem {
        self.0.top.frobenius(x)
    }

    /// `σ^t(x) = x^{q^{t mod r}}`.
    pub fn frobenius_power(&self, x: &FieldElem, t: usize) -> FieldElem {
        let mut y = x.clone();
        for _ in 0..t % self.r() {
            y = self.sigma(&y);
        }
        y
    }

    /// `σ^{-1} = σ^{r-1}`.
    pub fn sigma_inv(&self, x: &FieldElem) -> FieldElem {
        self.frobenius_power(x, self.r() - 1)
    }

    pub fn is_in_fq(&self, x: &FieldElem) -> bool {
        self.sigma(x) == *x
    }

    pub fn embed_fq(&self, c: &FieldElem) -> FieldElem {
        self.0.top.embed(c)
    }

    pub fn restrict_fq(&self, x: &FieldElem) -> Option<FieldElem> {
        self.0.top.restrict(x)
    }

    pub fn random_element(&self, seed: u64) -> FieldElem {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.0.top.random(&mut rng)
    }

    pub fn format(&self, x: &FieldElem) -> String {
        self.0.top.format(x)
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldTower {}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower({:?})", self.spec())
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.q();
        write!(f, "F_{{{}^{}}} over F_{}", q, self.r(), q)
    }
}

/// A field `L ⊇ F_{q^r}` built over `F_q`, with the image `θ` of `ω`.
#[derive(Clone, Debug)]
pub struct TowerExtension {
    tower: FieldTower,
    field: Field,
    theta_powers: Vec<FieldElem>,
}

impl TowerExtension {
    /// `L = F_{q^r}` itself.
    pub fn trivial(tower: &FieldTower) -> Self {
        let top = tower.top();
        let w = tower.omega();
        let mut theta_powers = vec![top.one()];
        for i in 1..tower.r() {
            theta_powers.push(top.mul(&theta_powers[i - 1], &w));
        }
        TowerExtension {
            tower: tower.clone(),
            field: top.clone(),
            theta_powers,
        }
    }

    /// `L = F_q[Z]/(H)` with `deg H = r·m` chosen by [`smallest_irreducible`];
    /// `ω` is sent to the smallest root of `h` in `L`.
    pub fn with_degree(tower: &FieldTower, m: usize, seed: u64) -> Result<Self> {
        let field = Field::extension_default(tower.base(), tower.r() * m, 'z')?;
        Self::from_field(tower, field, seed)
    }

    pub fn from_field(tower: &FieldTower, field: Field, seed: u64) -> Result<Self> {
        if field.base() != Some(tower.base()) || !field.relative_degree().is_multiple_of(tower.r()) {
            return Err(Error::NotAnExtension);
        }
        let h = CommPoly::new(
            &field,
            tower.h().iter().map(|c| field.embed(c)).collect(),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut roots = commalg::roots(&h, &mut rng)?;
        roots.sort();
        let theta = roots.into_iter().next().ok_or(Error::NotAnExtension)?;
        let mut theta_powers = vec![field.one()];
        for i in 1..tower.r() {
            theta_powers.push(field.mul(&theta_powers[i - 1], &theta));
        }
        Ok(TowerExtension {
            tower: tower.clone(),
            field,
            theta_powers,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// Image of an element of `F_{q^r}`.
    pub fn embed(&self, x: &FieldElem) -> FieldElem {
        let coords = self.tower.top().coords_over_base(x);
        let mut acc = self.field.zero();
        for (c, t) in coords.iter().zip(&self.theta_powers) {
            if !c.is_zero() {
                acc = self.field.add(&acc, &self.field.scale_by_base(c, t));
            }
        }
        acc
    }

    /// `z ↦ z^q` on `L`.
    pub fn q_power(&self, z: &FieldElem) -> FieldElem {
        self.field.frobenius(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldTower {
        FieldTower::new(2, 1, 2, None, None).unwrap()
    }

    #[test]
    fn default_modulus_for_f4() {
        let t = f4();
        let spec = t.spec();
        assert_eq!(spec.h, vec![vec![1], vec![1], vec![1]]);
        assert_eq!(spec.f, vec![0, 1]);
    }

    #[test]
    fn omega_squared_in_f4() {
        let t = f4();
        let top = t.top();
        let w = t.omega();
        let w1 = top.add(&w, &top.one());
        assert_eq!(top.mul(&w, &w), w1);
        assert_eq!(t.sigma(&w), w1);
        assert_eq!(top.format(&w1), "w + 1");
    }

    #[test]
    fn identities_and_inverses() {
        let t = FieldTower::new(3, 2, 3, None, None).unwrap();
        let top = t.top();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x = top.random(&mut rng);
            assert_eq!(top.mul(&x, &top.one()), x);
            assert!(top.add(&x, &top.neg(&x)).is_zero());
            if !x.is_zero() {
                let xi = top.inv(&x).unwrap();
                assert!(top.is_one(&top.mul(&x, &xi)));
            }
        }
        assert_eq!(top.inv(&top.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn sigma_has_order_r_and_fixes_fq() {
        let t = FieldTower::new(2, 2, 3, None, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = t.top().random(&mut rng);
            assert_eq!(t.frobenius_power(&x, 3), x);
            let c = t.base().random(&mut rng);
            let ce = t.embed_fq(&c);
            assert_eq!(t.sigma(&ce), ce);
            assert!(t.is_in_fq(&ce));
        }
    }

    #[test]
    fn supplied_moduli_are_accepted() {
        let t = FieldTower::new(7, 1, 5, None, Some(vec![
            FieldElem(vec![4]),
            FieldElem(vec![1]),
            FieldElem(vec![0]),
            FieldElem(vec![0]),
            FieldElem(vec![0]),
            FieldElem(vec![1]),
        ]))
        .unwrap();
        assert_eq!(t.top().size(), &BigUint::from(16807u32));
        let w = t.omega();
        assert!(!t.is_in_fq(&w));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldTower::new(6, 1, 2, None, None).unwrap_err(), Error::NotPrime(6));
        let reducible = vec![FieldElem(vec![0]), FieldElem(vec![0]), FieldElem(vec![1])];
        assert!(matches!(
            FieldTower::new(2, 1, 2, None, Some(reducible)),
            Err(Error::ReducibleModulus(_))
        ));
        let short = vec![FieldElem(vec![1]), FieldElem(vec![1])];
        assert!(matches!(
            FieldTower::new(2, 1, 2, None, Some(short)),
            Err(Error::DegreeMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn trivial_tower_is_f2() {
        let t = FieldTower::new(2, 1, 1, None, None).unwrap();
        assert_eq!(t.top().size(), &BigUint::from(2u32));
        let elems: Vec<_> = t.top().elements().collect();
        assert_eq!(elems.len(), 2);
        for x in &elems {
            assert!(t.is_in_fq(x));
        }
    }

    #[test]
    fn random_elements_are_seeded() {
        let t = f4();
        assert_eq!(t.random_element(9), t.random_element(9));
        let f2 = FieldTower::new(2, 1, 1, None, None).unwrap();
        for s in 0..20 {
            let x = f2.random_element(s);
            assert!(x.coords()[0] < 2);
        }
    }

    #[test]
    fn tower_extension_embeds_homomorphically() {
        let t = FieldTower::new(3, 1, 2, None, None).unwrap();
        let ext = TowerExtension::with_degree(&t, 3, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = ext.field();
        for _ in 0..20 {
            let x = t.top().random(&mut rng);
            let y = t.top().random(&mut rng);
            let lhs = ext.embed(&t.top().mul(&x, &y));
            let rhs = l.mul(&ext.embed(&x), &ext.embed(&y));
            assert_eq!(lhs, rhs);
            assert_eq!(ext.embed(&t.sigma(&x)), ext.q_power(&ext.embed(&x)));
        }
    }
}
