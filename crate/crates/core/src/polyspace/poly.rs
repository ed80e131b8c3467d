use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::exactla::PrimeField;

/// A polynomial in `k[x_1..x_e]` with named variables.
///
/// Terms are kept in a map keyed by monomial; zero coefficients are never
/// stored. Two polynomials can only be combined when they share the same
/// variable list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<[String]>,
    field: PrimeField,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(field: PrimeField, vars: Arc<[String]>) -> Self {
        Poly {
            vars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, vars: Arc<[String]>, c: u32) -> Self {
        let n = vars.len();
        Poly::monomial(field, vars, Monomial::one(n), c)
    }

    pub fn var(field: PrimeField, vars: Arc<[String]>, i: usize) -> Self {
        let n = vars.len();
        Poly::monomial(field, vars, Monomial::var(n, i), 1)
    }

    pub fn monomial(field: PrimeField, vars: Arc<[String]>, m: Monomial, c: u32) -> Self {
        let mut p = Poly::zero(field, vars);
        let c = c % field.p();
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(field: PrimeField, vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let mut p = Poly::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Highest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a term (the order); `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.order(), self.degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// Degree when the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> Poly {
        Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Drops every term of degree above `n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= n)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        let c = c % self.field.p();
        if c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Poly) {
        assert!(
            self.field == other.field && self.vars == other.vars,
            "polynomials over different rings"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let c = c % self.field.p();
        if c == 0 {
            return Poly::zero(self.field, self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), self.field.mul(v, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut out = Poly::zero(self.field, self.vars.clone());
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(t, &c)| (t.mul(m), c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.field, self.vars.clone(), 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Re-expresses the polynomial over another variable list, matching
    /// variables by name.
    pub fn rename_to(&self, vars: &Arc<[String]>) -> Result<Poly> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match vars.iter().position(|v| v == name) {
                Some(j) => map.push(Some(j)),
                None => {
                    let used = self.terms.keys().any(|m| m.exponents()[i] > 0);
                    if used {
                        return Err(Error::VariableMismatch(format!(
                            "`{name}` does not occur in [{}]",
                            vars.join(", ")
                        )));
                    }
                    map.push(None);
                }
            }
        }
        let n = vars.len();
        let terms = self.terms.iter().map(|(m, &c)| {
            let mut exps = vec![0u16; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] += e;
                }
            }
            (Monomial::from_exponents(exps), c)
        });
        Ok(Poly::from_terms(self.field, vars.clone(), terms))
    }

    /// Substitutes `images[i]` for the i-th variable.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars(), "one image per variable required");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut out = Poly::zero(self.field, target.clone());
        for (m, &c) in &self.terms {
            let mut t = Poly::constant(self.field, target.clone(), c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Canonical text: terms in descending graded-lex order, coefficients as
    /// the symmetric representative, unit coefficients omitted.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let s = self.field.signed(c);
            let neg = s < 0;
            let a = s.unsigned_abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&a.to_string());
            } else {
                if a != 1 {
                    out.push_str(&format!("{a}*"));
                }
                out.push_str(&m.format(&self.vars));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_text())
    }
}

pub fn var_list<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    field: PrimeField,
    vars: &'a Arc<[String]>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(s)) => {
                    let e: u32 = match s.parse() {
                        Ok(e) if e <= u16::MAX as u32 => e,
                        _ => return self.err(format!("exponent `{s}` is too large")),
                    };
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected an integer exponent after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let p = self.field.p() as u64;
                let c = s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Poly::constant(self.field, self.vars.clone(), c as u32))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Poly::var(self.field, self.vars.clone(), i)),
                    None => Err(Error::UnknownVariable { name, pos: at }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(t) => self.err(format!("unexpected token {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(s) | Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

/// Parses a polynomial over the given variables.
///
/// The grammar has `+ - * ^`, parentheses, integer literals and identifiers;
/// products must be written with `*` (`xy` is a single identifier).
pub fn parse_poly(text: &str, vars: &Arc<[String]>, field: PrimeField) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        field,
        vars,
    };
    if parser.peek().is_none() {
        return parser.err("empty expression");
    }
    let p = parser.expr()?;
    if parser.peek().is_some() {
        let t = parser.peek().cloned().unwrap();
        return parser.err(format!("unexpected token {}", describe(&t)));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Arc<[String]> {
        var_list(&["x", "y", "z"])
    }

    #[test]
    fn parses_quadric() {
        let f = PrimeField::new(101).unwrap();
        let p = parse_poly("x*y - 2*z^2", &xyz(), f).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!(p.to_text(), "x*y - 2*z^2");
    }

    #[test]
    fn negative_coefficient_reduces() {
        let f = PrimeField::new(101).unwrap();
        let p = parse_poly("x^3 - y^3", &xyz(), f).unwrap();
        assert_eq!(p.coeff(&Monomial::from_exponents(vec![0, 3, 0])), 100);
        assert!(p.is_homogeneous());
    }

    #[test]
    fn inhomogeneous_flag() {
        let f = PrimeField::new(101).unwrap();
        let p = parse_poly("x*y + y^3", &xyz(), f).unwrap();
        assert!(!p.is_homogeneous());
        assert_eq!(p.homogeneous_degree(), None);
    }

    #[test]
    fn errors_carry_positions() {
        let f = PrimeField::default();
        assert_eq!(
            parse_poly("x + w", &xyz(), f),
            Err(Error::UnknownVariable {
                name: "w".into(),
                pos: 4
            })
        );
        assert!(matches!(
            parse_poly("x + * y", &xyz(), f),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("xy", &xyz(), f),
            Err(Error::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly("(x + y", &xyz(), f),
            Err(Error::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_poly("x $ y", &xyz(), f),
            Err(Error::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn parentheses_and_powers() {
        let f = PrimeField::new(7).unwrap();
        let p = parse_poly("(x + y)^2", &xyz(), f).unwrap();
        assert_eq!(p.to_text(), "x^2 + 2*x*y + y^2");
        let q = parse_poly("-(x - 1)", &xyz(), f).unwrap();
        assert_eq!(q.to_text(), "-x + 1");
    }

    #[test]
    fn zero_and_constants() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(parse_poly("x - x", &xyz(), f).unwrap().to_text(), "0");
        assert_eq!(parse_poly("12", &xyz(), f).unwrap().to_text(), "2");
        assert_eq!(parse_poly("3", &xyz(), f).unwrap().to_text(), "-2");
    }

    #[test]
    fn substitution() {
        let f = PrimeField::new(101).unwrap();
        let v = xyz();
        let p = parse_poly("x*y", &v, f).unwrap();
        let imgs = vec![
            parse_poly("y + z", &v, f).unwrap(),
            parse_poly("y - z", &v, f).unwrap(),
            parse_poly("z", &v, f).unwrap(),
        ];
        assert_eq!(p.substitute(&imgs).to_text(), "y^2 - z^2");
    }

    #[test]
    fn rename_matches_by_name() {
        let f = PrimeField::default();
        let p = parse_poly("y^2", &var_list(&["y"]), f).unwrap();
        let q = p.rename_to(&xyz()).unwrap();
        assert_eq!(q.to_text(), "y^2");
        let r = parse_poly("x", &xyz(), f).unwrap();
        assert!(r.rename_to(&var_list(&["y", "z"])).is_err());
    }
}
