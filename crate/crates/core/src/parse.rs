//! Text syntax for field elements and polynomials.
//!
//! ```text
//! expr  := ('+'|'-')? term (('+'|'-') term)*
//! term  := unary ('*'? unary)*
//! unary := '-' unary | atom ('^' int)?
//! atom  := int | symbol | '(' expr ')'
//! ```
//!
//! Symbols are `X` (the skew variable), `Y` (a commutative variable), `w` or
//! `ω` (the generator of `F_{q^r}` over `F_q`) and `u` (the generator of `F_q`
//! over `F_p`, when `q` is not prime). Integers are reduced mod `p`.

use crate::commalg::CommPoly;
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElem, FieldTower};
use crate::linalg::Matrix;
use crate::skewpoly::SkewPoly;

/// Largest exponent accepted on a polynomial variable.
const MAX_DEGREE: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Sym(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut v: u64 = 0;
            while let Some(&(_, d)) = it.peek() {
                let Some(dv) = d.to_digit(10) else { break };
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(dv as u64))
                    .ok_or_else(|| Error::parse(pos, "integer too large"))?;
                it.next();
            }
            out.push((pos, Tok::Num(v)));
        } else if "+-*^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            it.next();
        } else if c.is_alphabetic() {
            out.push((pos, Tok::Sym(if c == 'ω' { 'w' } else { c })));
            it.next();
        } else {
            return Err(Error::parse(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(u64),
    Sym(usize, char),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(usize, Box<Ast>, u64),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if self.eat('-') {
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Sym(_) | Tok::Op('('))) {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        let pos = self.pos();
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.i += 1;
                    Ok(Ast::Pow(pos, Box::new(base), e))
                }
                _ => Err(Error::parse(self.pos(), "expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.i += 1;
                Ok(Ast::Num(v))
            }
            Some(Tok::Sym(c)) => {
                self.i += 1;
                Ok(Ast::Sym(pos, c))
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(Error::parse(pos, format!("unexpected '{c}'"))),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast> {
    let mut p = Parser {
        toks: tokenize(s)?,
        i: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return Err(Error::parse(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// A ring the AST can be evaluated in.
trait Algebra {
    type V: Clone;
    fn int(&self, v: u64) -> Self::V;
    fn sym(&self, pos: usize, c: char) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn pow(&self, pos: usize, a: &Self::V, e: u64) -> Result<Self::V>;
}

fn eval<A: Algebra>(alg: &A, ast: &Ast) -> Result<A::V> {
    Ok(match ast {
        Ast::Num(v) => alg.int(*v),
        Ast::Sym(pos, c) => alg.sym(*pos, *c)?,
        Ast::Add(a, b) => alg.add(&eval(alg, a)?, &eval(alg, b)?),
        Ast::Sub(a, b) => alg.sub(&eval(alg, a)?, &eval(alg, b)?),
        Ast::Neg(a) => alg.neg(&eval(alg, a)?),
        Ast::Mul(a, b) => alg.mul(&eval(alg, a)?, &eval(alg, b)?),
        Ast::Pow(pos, a, e) => alg.pow(*pos, &eval(alg, a)?, *e)?,
    })
}

fn unknown(pos: usize, c: char) -> Error {
    Error::parse(pos, format!("unknown symbol '{c}'"))
}

/// Element of a field; `w` and `u` name the generators of the last two
/// extension levels.
struct ElemAlg<'a> {
    field: &'a Field,
    w: Option<FieldElem>,
    u: Option<FieldElem>,
}

impl ElemAlg<'_> {
    fn for_tower(tower: &FieldTower) -> ElemAlg<'_> {
        let u = (tower.a() > 1).then(|| tower.embed_fq(&tower.base().generator()));
        ElemAlg {
            field: tower.top(),
            w: Some(tower.omega()),
            u,
        }
    }

    fn for_base(tower: &FieldTower) -> ElemAlg<'_> {
        ElemAlg {
            field: tower.base(),
            w: None,
            u: (tower.a() > 1).then(|| tower.base().generator()),
        }
    }
}

impl Algebra for ElemAlg<'_> {
    type V = FieldElem;
    fn int(&self, v: u64) -> FieldElem {
        self.field.from_u64(v)
    }
    fn sym(&self, pos: usize, c: char) -> Result<FieldElem> {
        match c {
            'w' => self.w.clone().ok_or_else(|| unknown(pos, c)),
            'u' => self.u.clone().ok_or_else(|| unknown(pos, c)),
            _ => Err(unknown(pos, c)),
        }
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.field.add(a, b)
    }
    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.field.sub(a, b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        self.field.neg(a)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.field.mul(a, b)
    }
    fn pow(&self, _: usize, a: &FieldElem, e: u64) -> Result<FieldElem> {
        Ok(self.field.pow_u64(a, e))
    }
}

fn check_degree(pos: usize, deg: Option<usize>, e: u64) -> Result<()> {
    let d = deg.unwrap_or(0) as u64;
    if d.checked_mul(e).is_none_or(|t| t > MAX_DEGREE) {
        return Err(Error::parse(pos, "exponent too large"));
    }
    Ok(())
}

struct SkewAlg<'a> {
    tower: &'a FieldTower,
    elems: ElemAlg<'a>,
}

impl Algebra for SkewAlg<'_> {
    type V = SkewPoly;
    fn int(&self, v: u64) -> SkewPoly {
        SkewPoly::constant(self.tower, self.elems.int(v))
    }
    fn sym(&self, pos: usize, c: char) -> Result<SkewPoly> {
        if c == 'X' {
            return Ok(SkewPoly::x(self.tower));
        }
        Ok(SkewPoly::constant(self.tower, self.elems.sym(pos, c)?))
    }
    fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a.add(b)
    }
    fn sub(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a.sub(b)
    }
    fn neg(&self, a: &SkewPoly) -> SkewPoly {
        a.neg()
    }
    fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a.mul(b)
    }
    fn pow(&self, pos: usize, a: &SkewPoly, e: u64) -> Result<SkewPoly> {
        if a.degree() == Some(0) {
            return Ok(SkewPoly::constant(self.tower, self.elems.field.pow_u64(&a.coeff(0), e)));
        }
        check_degree(pos, a.degree(), e)?;
        Ok(a.pow(e as u32))
    }
}

struct CommAlg<'a> {
    elems: ElemAlg<'a>,
}

impl Algebra for CommAlg<'_> {
    type V = CommPoly;
    fn int(&self, v: u64) -> CommPoly {
        CommPoly::constant(self.elems.field, self.elems.int(v))
    }
    fn sym(&self, pos: usize, c: char) -> Result<CommPoly> {
        if c == 'Y' {
            return Ok(CommPoly::y(self.elems.field));
        }
        Ok(CommPoly::constant(self.elems.field, self.elems.sym(pos, c)?))
    }
    fn add(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a.add(b)
    }
    fn sub(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a.sub(b)
    }
    fn neg(&self, a: &CommPoly) -> CommPoly {
        a.neg()
    }
    fn mul(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a.mul(b)
    }
    fn pow(&self, pos: usize, a: &CommPoly, e: u64) -> Result<CommPoly> {
        if a.degree() == Some(0) {
            let c = self.elems.field.pow_u64(&a.coeff(0), e);
            return Ok(CommPoly::constant(self.elems.field, c));
        }
        check_degree(pos, a.degree(), e)?;
        Ok(a.pow(e as u32))
    }
}

/// A skew polynomial in `X` over `F_{q^r}`.
pub fn parse_skew(text: &str, tower: &FieldTower) -> Result<SkewPoly> {
    let alg = SkewAlg {
        tower,
        elems: ElemAlg::for_tower(tower),
    };
    eval(&alg, &parse_ast(text)?)
}

/// An element of `F_{q^r}`.
pub fn parse_elem(text: &str, tower: &FieldTower) -> Result<FieldElem> {
    eval(&ElemAlg::for_tower(tower), &parse_ast(text)?)
}

/// A polynomial in `Y` over `F_q`.
pub fn parse_fq_poly(text: &str, tower: &FieldTower) -> Result<CommPoly> {
    let alg = CommAlg {
        elems: ElemAlg::for_base(tower),
    };
    eval(&alg, &parse_ast(text)?)
}

/// A polynomial in `Y` over an arbitrary field whose generator is `u`.
pub fn parse_poly_over(text: &str, field: &Field) -> Result<CommPoly> {
    let alg = CommAlg {
        elems: ElemAlg {
            field,
            w: None,
            u: (!field.is_prime_field()).then(|| field.generator()),
        },
    };
    eval(&alg, &parse_ast(text)?)
}

/// Comma-separated elements of `F_{q^r}`.
pub fn parse_vector(text: &str, tower: &FieldTower) -> Result<Vec<FieldElem>> {
    let mut out = Vec::new();
    let mut off = 0;
    for part in text.split(',') {
        out.push(parse_elem(part, tower).map_err(|e| shift(e, off))?);
        off += part.len() + 1;
    }
    Ok(out)
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(text: &str, tower: &FieldTower) -> Result<Matrix> {
    let mut rows = Vec::new();
    let mut off = 0;
    for part in text.split(';') {
        rows.push(parse_vector(part, tower).map_err(|e| shift(e, off))?);
        off += part.len() + 1;
    }
    Matrix::from_rows(tower.top(), rows).map_err(|_| Error::parse(0, "rows have different lengths"))
}

fn shift(e: Error, off: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + off, msg },
        other => other,
    }
}

/// Builds a tower from moduli written as text: `f` over `F_p` in `Y`, `h`
/// over `F_q` in `Y` (with `u` for the generator of `F_q`).
pub fn tower_from_text(p: u64, a: usize, r: usize, f: Option<&str>, h: Option<&str>) -> Result<FieldTower> {
    let f = match f {
        None => None,
        Some(text) => {
            let fp = Field::prime(p)?;
            let poly = parse_poly_over(text, &fp)?;
            Some(poly.coeffs().iter().map(|c| c.coords()[0]).collect::<Vec<u64>>())
        }
    };
    let h = match h {
        None => None,
        Some(text) => {
            let base = FieldTower::new(p, a, 1, f.clone(), None)?.base().clone();
            Some(parse_poly_over(text, &base)?.into_coeffs())
        }
    };
    FieldTower::new(p, a, r, f, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ex_f49, ex_f7_5};

    #[test]
    fn parses_examples() {
        let (t, p) = ex_f7_5();
        assert_eq!(parse_skew("X^3 + w*X^2 - w^2", &t).unwrap(), p);
        let (t, p) = ex_f49();
        let text = "X^6 + w^3*X^5 + w^17*X^4 + w^3*X^3 + w^27*X^2 + w^35*X + w^36";
        assert_eq!(parse_skew(text, &t).unwrap(), p);
        assert_eq!(parse_skew("X", &t).unwrap(), SkewPoly::x(&t));
    }

    #[test]
    fn tower_from_moduli_text() {
        let t = tower_from_text(7, 1, 5, None, Some("Y^5+Y+4")).unwrap();
        let (t2, _) = ex_f7_5();
        assert_eq!(t, t2);
        let t = tower_from_text(7, 1, 2, None, Some("Y^2 - Y + 3")).unwrap();
        assert_eq!(t, ex_f49().0);
        let t = tower_from_text(2, 2, 2, Some("Y^2+Y+1"), Some("Y^2 + Y + u")).unwrap();
        assert_eq!(t.top().size(), &num_bigint::BigUint::from(16u32));
    }

    #[test]
    fn display_round_trips() {
        let t = FieldTower::new(3, 2, 2, None, None).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        for _ in 0..50 {
            let p = SkewPoly::random(&t, 4, &mut rng);
            assert_eq!(parse_skew(&p.to_string(), &t).unwrap(), p);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let (t, _) = ex_f7_5();
        assert_eq!(parse_skew("X^3 + q", &t), Err(Error::parse(6, "unknown symbol 'q'")));
        assert_eq!(parse_skew("X^", &t), Err(Error::parse(2, "expected an integer exponent")));
        assert_eq!(parse_skew("(X", &t), Err(Error::parse(2, "expected ')'")));
        assert!(matches!(parse_skew("X^99999999999", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse_skew("u*X", &t), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_skew("X ! 1", &t), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn implicit_products_and_vectors() {
        let (t, _) = ex_f7_5();
        let top = t.top();
        let w = t.omega();
        assert_eq!(parse_elem("2w", &t).unwrap(), top.mul(&top.from_u64(2), &w));
        assert_eq!(parse_elem("-1", &t).unwrap(), top.from_u64(6));
        assert_eq!(parse_vector("1, w", &t).unwrap(), vec![top.one(), w]);
        assert!(matches!(parse_vector("1, $", &t), Err(Error::Parse { pos: 3, .. })));
        let m = parse_matrix("1,0;0,1", &t).unwrap();
        assert!(m.is_identity());
    }
}
