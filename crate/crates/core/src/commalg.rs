//! Univariate polynomials over a finite field: arithmetic, irreducibility,
//! factorization and multiplicative orders.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::Rng;

use crate::arith::factor_integer;
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElem};

/// A polynomial in `Y` with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct CommPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

/// `lead · ∏ factor^mult` with monic irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lead: FieldElem,
    pub factors: Vec<(CommPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> CommPoly {
        let mut acc = CommPoly::constant(field, self.lead.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

impl CommPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CommPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Polynomial with coefficients given as integers mod `p`.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: FieldElem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c·Y^k`.
    pub fn monomial(field: &Field, c: FieldElem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn y(field: &Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::new(&self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|x| self.field.mul(x, c)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                }
            }
        }
        Self::new(f, out)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lead().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let inv = f.inv(dl)?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = f.mul(&rem[k], &inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, dc));
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::NotADivisor(d.to_string()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Monic lcm of two nonzero polynomials.
    pub fn lcm(&self, other: &Self) -> Self {
        let g = self.gcd(other);
        self.mul(other).exact_div(&g).unwrap().monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        Self::new(f, coeffs)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m).unwrap()
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(&self.field).rem(m).unwrap();
        let base = self.rem(m).unwrap();
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies `g` to each coefficient, producing a polynomial over `target`.
    pub fn map_coeffs(&self, target: &Field, g: impl Fn(&FieldElem) -> FieldElem) -> Self {
        Self::new(target, self.coeffs.iter().map(g).collect())
    }

    /// Like [`map_coeffs`](Self::map_coeffs) but fails on the first `None`.
    pub fn try_map_coeffs(
        &self,
        target: &Field,
        g: impl Fn(&FieldElem) -> Option<FieldElem>,
    ) -> Option<Self> {
        let coeffs = self.coeffs.iter().map(g).collect::<Option<Vec<_>>>()?;
        Some(Self::new(target, coeffs))
    }

    /// Canonical order: degree first, then coefficients from the constant
    /// term upwards.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    fn check_nonconstant(&self) -> Result<usize> {
        match self.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::ConstantPolynomial),
            Some(n) => Ok(n),
        }
    }

    /// Rabin's test: `Y^{Q^n} ≡ Y` and `gcd(Y^{Q^{n/ℓ}} − Y, f) = 1` for every
    /// prime `ℓ | n`, where `Q` is the size of the coefficient field.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.check_nonconstant()?;
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let qsize = self.field.size().clone();
        let y = Self::y(&self.field);
        let mut primes = Vec::new();
        let mut m = n;
        let mut l = 2;
        while m > 1 {
            if m % l == 0 {
                primes.push(l);
                while m % l == 0 {
                    m /= l;
                }
            }
            l += 1;
        }
        // powers[k] = Y^{Q^k} mod f
        let mut powers = vec![y.rem(&f)?];
        for k in 1..=n {
            let next = powers[k - 1].pow_mod(&qsize, &f);
            powers.push(next);
        }
        if powers[n] != y.rem(&f)? {
            return Ok(false);
        }
        for l in primes {
            let g = powers[n / l].sub(&y).gcd(&f);
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.field.characteristic() as usize;
        let e = self.field.size() / BigUint::from(p as u64);
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| self.field.pow(c, &e))
            .collect();
        Self::new(&self.field, coeffs)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
    /// `g` squarefree, pairwise coprime, and `∏ g^m = self`.
    pub fn squarefree_decomposition(&self) -> Vec<(CommPoly, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.field.characteristic() as u32;
        let mut c = f.gcd(&f.derivative());
        let mut w = f.exact_div(&c).unwrap();
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.exact_div(&y).unwrap();
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.exact_div(&w).unwrap();
        }
        if !c.is_one() {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// `(g_d, d)` with `g_d` the product of its irreducible factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(CommPoly, usize)> {
        let mut f = self.monic();
        let qsize = self.field.size().clone();
        let y = Self::y(&self.field);
        let mut out = Vec::new();
        let mut h = y.clone();
        let mut d = 0;
        while let Some(n) = f.degree() {
            if n < 2 * (d + 1) {
                if n > 0 {
                    out.push((f.clone(), n));
                }
                break;
            }
            d += 1;
            h = h.pow_mod(&qsize, &f);
            let g = h.sub(&y).gcd(&f);
            if !g.is_one() {
                f = f.exact_div(&g).unwrap();
                h = h.rem(&f).unwrap();
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree<R: Rng + ?Sized>(&self, d: usize, rng: &mut R) -> Vec<CommPoly> {
        let f = self.monic();
        let n = f.degree().unwrap_or(0);
        if n == d {
            return vec![f];
        }
        if n == 0 {
            return Vec::new();
        }
        let field = &self.field;
        let qsize = field.size().clone();
        let p = field.characteristic();
        loop {
            let a = Self::new(field, (0..n).map(|_| field.random(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace from GF(Q^d) to GF(2)
                let k = field.degree() * d;
                let mut t = a.rem(&f).unwrap();
                let mut acc = t.clone();
                for _ in 1..k {
                    t = t.mul_mod(&t, &f);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (qsize.pow(d as u32) - 1u32) >> 1;
                a.pow_mod(&e, &f).sub(&Self::one(field))
            };
            let g = b.gcd(&f);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = f.exact_div(&g).unwrap();
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles.
    pub fn factor<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Factorization> {
        let lead = self.lead().cloned().ok_or(Error::ZeroPolynomial)?;
        let mut factors = Vec::new();
        for (g, m) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree(d, rng) {
                    factors.push((irr, m));
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
        let out = Factorization { lead, factors };
        debug_assert_eq!(&out.expand(&self.field), self);
        Ok(out)
    }

    /// Multiplicative order of `Y` modulo an irreducible `Q` with `Q(0) ≠ 0`.
    pub fn poly_order(&self) -> Result<BigUint> {
        let n = self.check_nonconstant()?;
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if !self.is_irreducible()? {
            return Err(Error::NotIrreducible);
        }
        let f = self.monic();
        let y = Self::y(&self.field);
        let group = self.field.size().pow(n as u32) - 1u32;
        let mut e = group.clone();
        for (l, _) in factor_integer(&group) {
            while e.is_multiple_of(&l) {
                let cand = &e / &l;
                if y.pow_mod(&cand, &f).is_one() {
                    e = cand;
                } else {
                    break;
                }
            }
        }
        Ok(e)
    }

    /// Formats with a chosen variable name.
    pub fn format_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let s = f.format(c);
            if i == 0 {
                terms.push(s);
            } else if f.is_one(c) {
                terms.push(mono);
            } else if s.contains(' ') {
                terms.push(format!("({s})*{mono}"));
            } else {
                terms.push(format!("{s}*{mono}"));
            }
        }
        terms.join(" + ")
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_var("Y"))
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly({self})")
    }
}

/// Distinct roots of a nonzero polynomial, sorted.
pub fn roots<R: Rng + ?Sized>(poly: &CommPoly, rng: &mut R) -> Result<Vec<FieldElem>> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = poly.field();
    let f = poly.monic();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let y = CommPoly::y(field);
    let yq = y.pow_mod(field.size(), &f);
    let g = yq.sub(&y.rem(&f)?).gcd(&f);
    let mut out: Vec<FieldElem> = g
        .equal_degree(1, rng)
        .into_iter()
        .map(|l| field.neg(&l.coeffs[0]))
        .collect();
    out.sort();
    Ok(out)
}
