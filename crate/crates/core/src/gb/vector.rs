use std::cmp::Ordering;

use crate::field::{PrimeField, Scalar};
use crate::monomial::{Monomial, MonomialOrder};

/// A module monomial `mono * e_pos`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub mono: Monomial,
    pub pos: u32,
}

/// Sparse element of a free module, terms strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<(Term, Scalar)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Term, Scalar)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Term, Scalar)> {
        self.terms.first()
    }

    pub(crate) fn from_sorted(terms: Vec<(Term, Scalar)>) -> Self {
        Vector { terms }
    }

    pub(crate) fn split_lead(&self) -> (Vector, Vector) {
        match self.terms.split_first() {
            None => (Vector::zero(), Vector::zero()),
            Some((h, t)) => (Vector { terms: vec![*h] }, Vector { terms: t.to_vec() }),
        }
    }

    /// Coefficient polynomial at position `pos`, as raw terms.
    pub fn component(&self, pos: u32) -> Vec<(Monomial, Scalar)> {
        self.terms
            .iter()
            .filter(|(t, _)| t.pos == pos)
            .map(|(t, c)| (t.mono, *c))
            .collect()
    }

    pub fn max_pos(&self) -> Option<u32> {
        self.terms.iter().map(|(t, _)| t.pos).max()
    }
}

/// Order on module monomials.
///
/// Positions below `top` dominate all others (elimination of the top block).
/// When `shifts` is present the comparison is degree-compatible with
/// per-position degree shifts (twists), then breaks ties by the monomial
/// order and finally by position, smaller index first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    mono: MonomialOrder,
    shifts: Option<Vec<i64>>,
    top: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRing {
    field: PrimeField,
    order: ModuleOrder,
    rank: usize,
}

impl ModuleRing {
    /// Rank-one ring: polynomials as vectors in position 0.
    pub fn ideal(field: PrimeField, mono: MonomialOrder) -> Self {
        ModuleRing {
            field,
            order: ModuleOrder {
                mono,
                shifts: None,
                top: 0,
            },
            rank: 1,
        }
    }

    pub fn module(field: PrimeField, mono: MonomialOrder, shifts: Vec<i64>, top: u32) -> Self {
        let rank = shifts.len();
        ModuleRing {
            field,
            order: ModuleOrder {
                mono,
                shifts: Some(shifts),
                top,
            },
            rank,
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn top(&self) -> u32 {
        self.order.top
    }

    pub fn mono_order(&self) -> &MonomialOrder {
        &self.order.mono
    }

    /// Degree used to schedule pairs.
    pub fn sugar(&self, t: &Term) -> i64 {
        let d = self.order.mono.degree(&t.mono) as i64;
        match &self.order.shifts {
            Some(s) => d + s[t.pos as usize],
            None => d,
        }
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        let o = &self.order;
        if o.top > 0 {
            let (ta, tb) = (a.pos < o.top, b.pos < o.top);
            if ta != tb {
                return ta.cmp(&tb);
            }
        }
        if let Some(s) = &o.shifts {
            let da = o.mono.degree(&a.mono) as i64 + s[a.pos as usize];
            let db = o.mono.degree(&b.mono) as i64 + s[b.pos as usize];
            if da != db {
                return da.cmp(&db);
            }
        }
        o.mono.cmp(&a.mono, &b.mono).then_with(|| b.pos.cmp(&a.pos))
    }

    pub fn from_terms<I: IntoIterator<Item = (Term, Scalar)>>(&self, terms: I) -> Vector {
        let mut v: Vec<(Term, Scalar)> = terms.into_iter().collect();
        v.sort_by(|a, b| self.cmp_terms(&b.0, &a.0));
        let mut out: Vec<(Term, Scalar)> = Vec::with_capacity(v.len());
        for (t, c) in v {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = self.field.add(*lc, c),
                _ => out.push((t, c % self.field.modulus())),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Vector { terms: out }
    }

    pub fn add(&self, f: &Vector, g: &Vector) -> Vector {
        Vector {
            terms: self.merge(&f.terms, 1, &Monomial::one(), &g.terms),
        }
    }

    pub fn sub(&self, f: &Vector, g: &Vector) -> Vector {
        Vector {
            terms: self.merge(&f.terms, self.field.neg(1), &Monomial::one(), &g.terms),
        }
    }

    pub fn mul_term(&self, f: &Vector, m: &Monomial, c: Scalar) -> Vector {
        if c.is_multiple_of(self.field.modulus()) {
            return Vector::zero();
        }
        Vector {
            terms: f
                .terms
                .iter()
                .map(|&(t, a)| {
                    (
                        Term {
                            mono: t.mono.mul(m),
                            pos: t.pos,
                        },
                        self.field.mul(a, c),
                    )
                })
                .collect(),
        }
    }

    pub fn scale(&self, f: &Vector, c: Scalar) -> Vector {
        self.mul_term(f, &Monomial::one(), c)
    }

    pub fn make_monic(&self, f: &Vector) -> Vector {
        match f.leading() {
            None => Vector::zero(),
            Some(&(_, 1)) => f.clone(),
            Some(&(_, c)) => self.scale(f, self.field.inv(c).expect("nonzero")),
        }
    }

    /// `f - c * m * g`.
    pub fn sub_scaled(&self, f: &Vector, c: Scalar, m: &Monomial, g: &Vector) -> Vector {
        Vector {
            terms: self.merge(&f.terms, self.field.neg(c), m, &g.terms),
        }
    }

    pub(crate) fn sub_scaled_slice(
        &self,
        f: &[(Term, Scalar)],
        c: Scalar,
        m: &Monomial,
        g: &Vector,
    ) -> Vec<(Term, Scalar)> {
        self.merge(f, self.field.neg(c), m, &g.terms)
    }

    /// `f + c * m * g` as one sorted merge.
    fn merge(&self, f: &[(Term, Scalar)], c: Scalar, m: &Monomial, g: &[(Term, Scalar)]) -> Vec<(Term, Scalar)> {
        let fl = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |k: usize| {
            let (t, a) = g[k];
            (
                Term {
                    mono: t.mono.mul(m),
                    pos: t.pos,
                },
                fl.mul(a, c),
            )
        };
        while i < f.len() && j < g.len() {
            let (gt, gc) = shifted(j);
            match self.cmp_terms(&f[i].0, &gt) {
                Ordering::Greater => {
                    out.push(f[i]);
                    i += 1;
                }
                Ordering::Less => {
                    if gc != 0 {
                        out.push((gt, gc));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let s = fl.add(f[i].1, gc);
                    if s != 0 {
                        out.push((gt, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f[i..]);
        while j < g.len() {
            let (gt, gc) = shifted(j);
            if gc != 0 {
                out.push((gt, gc));
            }
            j += 1;
        }
        out
    }
}
