//! Sparse multivariate polynomials over GF(p).
//!
//! A [`Poly`] is a plain term list kept strictly decreasing under the order of
//! the [`PolyRing`] that built it. All arithmetic goes through the ring so the
//! modulus and the order never have to be stored per polynomial.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::monomial::{Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub(crate) fn from_sorted(terms: Vec<(Monomial, Scalar)>) -> Self {
        Poly { terms }
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, order: MonomialOrder) -> Self {
        PolyRing { field, order }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing {
            field: self.field,
            order,
        }
    }

    pub fn constant(&self, c: i64) -> Poly {
        let c = self.field.from_i64(c);
        if c == 0 {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars());
        Poly {
            terms: vec![(Monomial::var(i), 1)],
        }
    }

    pub fn term(&self, m: Monomial, c: Scalar) -> Poly {
        let c = c % self.field.modulus();
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(&self, terms: I) -> Poly {
        let mut v: Vec<(Monomial, Scalar)> = terms.into_iter().collect();
        v.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(*lc, c),
                _ => out.push((m, c % self.field.modulus())),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Poly { terms: out }
    }

    /// Re-sorts a polynomial that was built under another order.
    pub fn adopt(&self, f: &Poly) -> Poly {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Poly { terms }
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.combine(f, g, false)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.combine(f, g, true)
    }

    fn combine(&self, f: &Poly, g: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let fl = &self.field;
        while i < f.terms.len() && j < g.terms.len() {
            let (fm, fc) = f.terms[i];
            let (gm, gc) = g.terms[j];
            let gc = if negate { fl.neg(gc) } else { gc };
            match self.order.cmp(&fm, &gm) {
                Ordering::Greater => {
                    out.push((fm, fc));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm, gc));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = fl.add(fc, gc);
                    if c != 0 {
                        out.push((fm, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        for &(m, c) in &g.terms[j..] {
            out.push((m, if negate { fl.neg(c) } else { c }));
        }
        Poly { terms: out }
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        Poly {
            terms: f.terms.iter().map(|&(m, c)| (m, self.field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, f: &Poly, c: Scalar) -> Poly {
        if c.is_multiple_of(self.field.modulus()) {
            return Poly::zero();
        }
        Poly {
            terms: f.terms.iter().map(|&(m, a)| (m, self.field.mul(a, c))).collect(),
        }
    }

    /// `c * m * f`; order is preserved because monomial orders are
    /// multiplicative.
    pub fn mul_term(&self, f: &Poly, m: &Monomial, c: Scalar) -> Poly {
        if c.is_multiple_of(self.field.modulus()) {
            return Poly::zero();
        }
        Poly {
            terms: f
                .terms
                .iter()
                .map(|&(fm, fc)| (fm.mul(m), self.field.mul(fc, c)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        if g.terms.len() == 1 {
            let (m, c) = g.terms[0];
            return self.mul_term(f, &m, c);
        }
        if f.terms.len() == 1 {
            let (m, c) = f.terms[0];
            return self.mul_term(g, &m, c);
        }
        let mut prods = Vec::with_capacity(f.len() * g.len());
        for &(fm, fc) in &f.terms {
            for &(gm, gc) in &g.terms {
                prods.push((fm.mul(&gm), self.field.mul(fc, gc)));
            }
        }
        self.from_terms(prods)
    }

    pub fn pow(&self, f: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn make_monic(&self, f: &Poly) -> Poly {
        match f.leading() {
            None => Poly::zero(),
            Some(&(_, 1)) => f.clone(),
            Some(&(_, c)) => self.scale(f, self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `f / g`, failing when `g` does not divide `f`.
    pub fn div_exact(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let &(gm, gc) = g.leading().ok_or(Error::DivisionByZero)?;
        let ginv = self.field.inv(gc)?;
        let mut rem = f.clone();
        let mut quot = Vec::new();
        while let Some(&(rm, rc)) = rem.leading() {
            let q = gm
                .quotient_of(&rm)
                .ok_or_else(|| Error::PreconditionFailed("inexact polynomial division".into()))?;
            let qc = self.field.mul(rc, ginv);
            quot.push((q, qc));
            rem = self.sub(&rem, &self.mul_term(g, &q, qc));
        }
        Ok(self.from_terms(quot))
    }

    pub fn eval(&self, f: &Poly, point: &[Scalar]) -> Scalar {
        let fl = &self.field;
        let mut acc = 0;
        for (m, c) in &f.terms {
            let mut v = *c;
            for (i, &x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    v = fl.mul(v, fl.pow(x, e as u32));
                }
            }
            acc = fl.add(acc, v);
        }
        acc
    }

    /// Prints with terms in decreasing lexicographic order, coefficients in
    /// the symmetric range, and `1` coefficients omitted.
    pub fn format(&self, f: &Poly, names: &[String]) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut terms = f.terms.clone();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.iter().enumerate() {
            let c = self.field.to_symmetric(*c);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            if neg {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, name) in names.iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if abs != 1 || factors.is_empty() {
                factors.insert(0, abs.to_string());
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses `x0*y1+10*x0*y2-x1*y0`-style strings. Variables may also be
    /// written with an underscore before their index (`x_0`).
    pub fn parse(&self, s: &str, names: &[String]) -> Result<Poly> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            let mut sign = 1i64;
            while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let mut coeff: i64 = 1;
            let mut mono = Monomial::one();
            loop {
                if pos >= chars.len() {
                    return Err(Error::Parse(format!("unexpected end of `{s}`")));
                }
                if chars[pos].is_ascii_digit() {
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let digits: String = chars[start..pos].iter().collect();
                    let v: i64 = digits
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{digits}`")))?
                        % self.field.modulus() as i64;
                    coeff = coeff * v % self.field.modulus() as i64;
                } else if chars[pos].is_ascii_alphabetic() || chars[pos] == '_' {
                    let start = pos;
                    while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_') {
                        pos += 1;
                    }
                    let ident: String = chars[start..pos].iter().collect();
                    let var =
                        lookup_var(&ident, names).ok_or_else(|| Error::Parse(format!("unknown variable `{ident}`")))?;
                    let mut e: u16 = 1;
                    if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        let start = pos;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let digits: String = chars[start..pos].iter().collect();
                        e = digits
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent after `{ident}`")))?;
                    }
                    let mut m = Monomial::one();
                    m.set_exp(var, e);
                    mono = mono.mul(&m);
                } else {
                    return Err(Error::Parse(format!(
                        "unexpected `{}` at offset {pos} in `{s}`",
                        chars[pos]
                    )));
                }
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                    continue;
                }
                break;
            }
            if pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
                return Err(Error::Parse(format!(
                    "unexpected `{}` at offset {pos} in `{s}`",
                    chars[pos]
                )));
            }
            terms.push((mono, self.field.from_i64(sign * coeff)));
        }
        Ok(self.from_terms(terms))
    }
}

fn lookup_var(ident: &str, names: &[String]) -> Option<usize> {
    if let Some(i) = names.iter().position(|n| n == ident) {
        return Some(i);
    }
    let compact: String = ident.replace('_', "");
    names.iter().position(|n| n.replace('_', "") == compact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring5() -> (PolyRing, Vec<String>) {
        let names: Vec<String> = ["x0", "x1", "y0", "y1", "y2"].iter().map(|s| s.to_string()).collect();
        (
            PolyRing::new(PrimeField::default(), MonomialOrder::grevlex(&[1; 5])),
            names,
        )
    }

    #[test]
    fn multiplication_examples() {
        let (r, n) = ring5();
        let p = |s: &str| r.parse(s, &n).unwrap();
        assert!(r.mul(&p("x0"), &Poly::zero()).is_zero());
        assert_eq!(r.mul(&p("x0+x1"), &p("x0-x1")), p("x0^2-x1^2"));
        assert_eq!(r.mul(&p("x0*y1-x1*y0"), &p("x0*y1+x1*y0")), p("x0^2*y1^2-x1^2*y0^2"));
    }

    #[test]
    fn format_round_trip_is_byte_identical() {
        let (r, n) = ring5();
        let s = "x0*y1+10*x0*y2-x1*y0";
        let f = r.parse(s, &n).unwrap();
        assert_eq!(r.format(&f, &n), s);
        assert_eq!(r.format(&Poly::zero(), &n), "0");
        assert_eq!(r.format(&r.constant(-3), &n), "-3");
    }

    #[test]
    fn parse_accepts_underscored_names_and_spaces() {
        let (r, n) = ring5();
        let a = r.parse("x_0 * y_1 - 2*x_1^2", &n).unwrap();
        let b = r.parse("x0*y1-2*x1^2", &n).unwrap();
        assert_eq!(a, b);
        assert!(r.parse("x0+", &n).is_err());
        assert!(r.parse("z7", &n).is_err());
        assert!(r.parse("x0 x1", &n).is_err());
    }

    #[test]
    fn exact_division() {
        let (r, n) = ring5();
        let p = |s: &str| r.parse(s, &n).unwrap();
        assert_eq!(r.div_exact(&p("x0^2-x1^2"), &p("x0+x1")).unwrap(), p("x0-x1"));
        assert!(r.div_exact(&p("x0^2+x1"), &p("x0")).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let (r, _) = ring5();
        proptest::collection::vec((proptest::collection::vec(0u16..3, 5), 0u32..101), 0..5)
            .prop_map(move |ts| r.from_terms(ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c))))
    }

    proptest! {
        #[test]
        fn ring_laws(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let (r, _) = ring5();
            prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
            prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
            prop_assert_eq!(r.mul(&f, &r.add(&g, &h)), r.add(&r.mul(&f, &g), &r.mul(&f, &h)));
            prop_assert!(r.sub(&f, &f).is_zero());
        }

        #[test]
        fn round_trip(f in arb_poly()) {
            let (r, n) = ring5();
            let s = r.format(&f, &n);
            let g = r.parse(&s, &n).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(r.format(&g, &n), s);
        }
    }
}
