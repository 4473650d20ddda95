//! Dense matrices over a finite field.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commalg::CommPoly;
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElem, FieldTower};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Monic invariant factors `f_1 | f_2 | … | f_k`, constant factors dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub factors: Vec<CommPoly>,
}

impl InvariantFactors {
    /// Block-diagonal companion matrices, smallest block first.
    pub fn normal_form(&self, field: &Field) -> Matrix {
        let blocks: Vec<Matrix> = self.factors.iter().map(Matrix::companion).collect();
        Matrix::block_diag(field, &blocks)
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        for x in &data {
            field.check(x)?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Rows of small integers reduced mod `p`.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.from_i64(v)))
            .collect();
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols: rows.first().map_or(0, |r| r.len()),
            data,
        }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// the negated coefficients in the last column.
    pub fn companion(poly: &CommPoly) -> Self {
        let f = poly.field();
        let n = poly.degree().unwrap_or(0);
        let mut m = Self::zeros(f, n, n);
        for i in 1..n {
            m.set(i, i - 1, f.one());
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(&poly.coeff(i)));
        }
        m
    }

    pub fn block_diag(field: &Field, blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(field, n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.field, self.rows)
    }

    /// Entrywise image, possibly into another field.
    pub fn map(&self, target: &Field, g: impl Fn(&FieldElem) -> FieldElem) -> Self {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(g).collect(),
        }
    }

    pub fn try_map(
        &self,
        target: &Field,
        g: impl Fn(&FieldElem) -> Option<FieldElem>,
    ) -> Option<Self> {
        Some(Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(g).collect::<Option<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        self.map(&self.field, |x| self.field.mul(x, c))
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not match");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `Q(M)` by Horner's rule.
    pub fn eval_poly(&self, q: &CommPoly) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(&self.field, n, n);
        for c in q.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = self.field.add(&acc.data[idx], c);
            }
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..self.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FieldElem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> Result<FieldElem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(f.zero());
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv)?;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// `det(Y·I − M)` via reduction to upper Hessenberg form.
    pub fn char_poly(&self) -> CommPoly {
        assert!(self.is_square(), "char_poly needs a square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = f.inv(h.get(m, m - 1)).unwrap();
            for j in m + 1..n {
                if h.get(j, m - 1).is_zero() {
                    continue;
                }
                let u = f.mul(h.get(j, m - 1), &inv);
                for c in 0..n {
                    let v = f.sub(h.get(j, c), &f.mul(&u, h.get(m, c)));
                    h.set(j, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, m), &f.mul(&u, h.get(r, j)));
                    h.set(r, m, v);
                }
            }
        }
        let y = CommPoly::y(f);
        let mut p = vec![CommPoly::one(f)];
        for m in 1..=n {
            let lin = y.sub(&CommPoly::constant(f, h.get(m - 1, m - 1).clone()));
            let mut pm = lin.mul(&p[m - 1]);
            let mut t = f.one();
            for i in (1..m).rev() {
                t = f.mul(&t, h.get(i, i - 1));
                let c = f.mul(h.get(i - 1, m - 1), &t);
                pm = pm.sub(&p[i - 1].scale(&c));
            }
            p.push(pm);
        }
        p.pop().unwrap()
    }

    /// Monic generator of the annihilator of `v` under `M`.
    pub fn local_min_poly(&self, v: &[FieldElem]) -> CommPoly {
        let f = &self.field;
        let n = self.rows;
        // echelon rows: (reduced vector, pivot, polynomial expressing it)
        let mut basis: Vec<(Vec<FieldElem>, usize, Vec<FieldElem>)> = Vec::new();
        let mut w = v.to_vec();
        for k in 0..=n {
            let mut expr = vec![f.zero(); k + 1];
            expr[k] = f.one();
            let mut red = w.clone();
            for (row, piv, rexpr) in &basis {
                if red[*piv].is_zero() {
                    continue;
                }
                let c = red[*piv].clone();
                for (x, y) in red.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
                for (i, e) in rexpr.iter().enumerate() {
                    expr[i] = f.sub(&expr[i], &f.mul(&c, e));
                }
            }
            match red.iter().position(|x| !x.is_zero()) {
                None => return CommPoly::new(f, expr),
                Some(piv) => {
                    let inv = f.inv(&red[piv]).unwrap();
                    let row = red.iter().map(|x| f.mul(x, &inv)).collect();
                    let e = expr.iter().map(|x| f.mul(x, &inv)).collect();
                    basis.push((row, piv, e));
                }
            }
            w = self.mul_vec(&w);
        }
        unreachable!("Krylov sequence must become dependent within n+1 steps")
    }

    /// Minimal polynomial: lcm of local minimal polynomials of seeded random
    /// vectors, verified by evaluation, falling back to the standard basis.
    pub fn min_poly(&self) -> CommPoly {
        assert!(self.is_square(), "min_poly needs a square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d696e);
        let mut acc = CommPoly::one(f);
        for _ in 0..2 {
            let v: Vec<_> = (0..n).map(|_| f.random(&mut rng)).collect();
            acc = acc.lcm(&self.local_min_poly(&v));
        }
        if self.eval_poly(&acc).is_zero() {
            return acc;
        }
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            acc = acc.lcm(&self.local_min_poly(&e));
        }
        acc
    }

    /// Invariant factors from the Smith normal form of `Y·I − M` over `F[Y]`.
    pub fn invariant_factors(&self) -> InvariantFactors {
        assert!(self.is_square(), "invariant_factors needs a square matrix");
        let f = &self.field;
        let n = self.rows;
        let y = CommPoly::y(f);
        let mut a: Vec<Vec<CommPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = CommPoly::constant(f, f.neg(self.get(i, j)));
                        if i == j {
                            c.add(&y)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        let mut diag = Vec::with_capacity(n);
        for k in 0..n {
            loop {
                // smallest-degree nonzero entry in the trailing block
                let mut best: Option<(usize, usize, usize)> = None;
                for (i, row) in a.iter().enumerate().skip(k) {
                    for (j, e) in row.iter().enumerate().skip(k) {
                        if let Some(d) = e.degree() {
                            if best.is_none_or(|b| d < b.2) {
                                best = Some((i, j, d));
                            }
                        }
                    }
                }
                let Some((bi, bj, _)) = best else {
                    break;
                };
                a.swap(k, bi);
                for row in a.iter_mut() {
                    row.swap(k, bj);
                }
                let piv = a[k][k].clone();
                let mut clean = true;
                for i in k + 1..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    let (q, r) = a[i][k].div_rem(&piv).unwrap();
                    for j in k..n {
                        let v = a[i][j].sub(&q.mul(&a[k][j]));
                        a[i][j] = v;
                    }
                    clean &= r.is_zero();
                }
                for j in k + 1..n {
                    if a[k][j].is_zero() {
                        continue;
                    }
                    let (q, r) = a[k][j].div_rem(&piv).unwrap();
                    for i in k..n {
                        let v = a[i][j].sub(&a[i][k].mul(&q));
                        a[i][j] = v;
                    }
                    clean &= r.is_zero();
                }
                if !clean {
                    continue;
                }
                // the pivot must divide every remaining entry
                let bad = (k + 1..n).find_map(|i| {
                    (k + 1..n).find(|&j| !piv.divides(&a[i][j])).map(|_| i)
                });
                match bad {
                    Some(i) => {
                        for j in k..n {
                            let v = a[k][j].add(&a[i][j]);
                            a[k][j] = v;
                        }
                    }
                    None => break,
                }
            }
            diag.push(a[k][k].monic());
        }
        let factors = diag
            .into_iter()
            .filter(|d| d.degree().unwrap_or(0) > 0)
            .collect();
        InvariantFactors { factors }
    }

    pub fn frobenius_form(&self) -> Matrix {
        self.invariant_factors().normal_form(&self.field)
    }

    /// For each irreducible factor `Q` of the minimal polynomial, the
    /// descending Jordan block lengths read off the ranks of `Q(M)^k`.
    pub fn primary_type(&self) -> Vec<(CommPoly, Vec<usize>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x74797065);
        let min = self.min_poly();
        let fac = min.factor(&mut rng).expect("minimal polynomial is nonzero");
        fac.factors
            .into_iter()
            .map(|(q, _)| {
                let lengths = self.block_lengths(&q);
                (q, lengths)
            })
            .collect()
    }

    /// Jordan block lengths for one irreducible `q`, in descending order.
    pub fn block_lengths(&self, q: &CommPoly) -> Vec<usize> {
        let delta = q.degree().unwrap_or(1);
        let n = self.rows;
        let qm = self.eval_poly(q);
        let mut ranks = vec![n];
        let mut pw = Matrix::identity(&self.field, n);
        loop {
            pw = pw.mul(&qm);
            let rk = pw.rank();
            if rk == *ranks.last().unwrap() {
                break;
            }
            ranks.push(rk);
        }
        // at_least[k] = number of blocks of length ≥ k+1
        let at_least: Vec<usize> = ranks.windows(2).map(|w| (w[0] - w[1]) / delta).collect();
        let mut lengths = Vec::new();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..at_least[k] - next {
                lengths.push(k + 1);
            }
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Entries as strings, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.format(x)).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}

/// Determinant of the matrix with rows `(b_i, b_i^q, …, b_i^{q^{d−1}})`.
pub fn moore_det(tower: &FieldTower, b: &[FieldElem]) -> Result<FieldElem> {
    let d = b.len();
    let top = tower.top();
    let mut rows = Vec::with_capacity(d);
    for x in b {
        let mut row = Vec::with_capacity(d);
        let mut cur = x.clone();
        for _ in 0..d {
            row.push(cur.clone());
            cur = tower.sigma(&cur);
        }
        rows.push(row);
    }
    if d == 0 {
        return Ok(top.one());
    }
    Matrix::from_rows(top, rows)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let k = f2();
        let z = Matrix::zeros(&k, 3, 3);
        assert_eq!(z.kernel().len(), 3);
        assert!(Matrix::identity(&k, 3).kernel().is_empty());
        let m = Matrix::from_ints(&k, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel(), vec![vec![k.one(), k.one()]]);
    }

    #[test]
    fn companion_char_and_min_poly() {
        let k = Field::prime(7).unwrap();
        let q = CommPoly::from_ints(&k, &[5, 1, 1, 1]);
        let c = Matrix::companion(&q);
        assert_eq!(c.char_poly(), q);
        assert_eq!(c.min_poly(), q);
        assert_eq!(c.invariant_factors().factors, vec![q.clone()]);
        assert_eq!(c, Matrix::from_ints(&k, &[&[0, 0, -5], &[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(c.primary_type(), vec![(q.clone(), vec![1])]);

        let dd = Matrix::block_diag(&k, &[c.clone(), c.clone()]);
        assert_eq!(dd.min_poly(), q);
        assert_eq!(dd.primary_type(), vec![(q, vec![1, 1])]);
    }

    #[test]
    fn identity_invariants() {
        let k = Field::prime(3).unwrap();
        let id = Matrix::identity(&k, 2);
        let lin = CommPoly::from_ints(&k, &[-1, 1]);
        assert_eq!(id.char_poly(), lin.mul(&lin));
        assert_eq!(id.min_poly(), lin);
        assert_eq!(id.invariant_factors().factors, vec![lin.clone(), lin]);
    }

    #[test]
    fn jordan_block_lengths() {
        let k = Field::prime(3).unwrap();
        // J_2(1) ⊕ J_1(1) ⊕ J_1(2)
        let m = Matrix::from_ints(
            &k,
            &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]],
        );
        let t = m.primary_type();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].1, vec![1]);
        assert_eq!(t[1].1, vec![2, 1]);
        let inv = m.invariant_factors();
        assert_eq!(inv.factors.len(), 2);
        assert_eq!(inv.normal_form(&k).char_poly(), m.char_poly());
    }

    #[test]
    fn conjugation_invariance() {
        let k = Field::extension_default(&Field::prime(2).unwrap(), 2, 'u').unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            let m = Matrix::new(&k, n, n, (0..n * n).map(|_| k.random(&mut rng)).collect()).unwrap();
            let p = Matrix::new(&k, n, n, (0..n * n).map(|_| k.random(&mut rng)).collect()).unwrap();
            let Ok(pi) = p.inverse() else { continue };
            let conj = pi.mul(&m).mul(&p);
            assert_eq!(conj.char_poly(), m.char_poly());
            assert_eq!(conj.invariant_factors(), m.invariant_factors());
            assert!(m.min_poly().divides(&m.char_poly()));
            assert!(m.eval_poly(&m.min_poly()).is_zero());
        }
    }

    #[test]
    fn moore_determinant_small_cases() {
        let t = FieldTower::new(2, 1, 2, None, None).unwrap();
        let top = t.top();
        let w = t.omega();
        assert_eq!(moore_det(&t, std::slice::from_ref(&w)).unwrap(), w);
        let expect = top.sub(&w, &top.mul(&w, &w));
        assert_eq!(moore_det(&t, &[w.clone(), top.one()]).unwrap(), expect);
        let w1 = top.add(&w, &top.one());
        assert!(moore_det(&t, &[w.clone(), top.one(), w1]).unwrap().is_zero());
    }
}
