//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

/// Hard upper bound on the number of variables of any ring, auxiliary
/// elimination variables included.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    #[inline]
    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.exps[i] = e;
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = o.checked_add(e).expect("exponent overflow");
        }
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, or `None` when `self` does not divide `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::default();
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i].checked_sub(self.exps[i])?;
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = (*o).max(e);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` is set when variable `i` occurs.
    #[inline]
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Moves every exponent `by` slots to the right, freeing the first slots
    /// for auxiliary variables.
    pub fn shifted(&self, by: usize) -> Monomial {
        let mut out = Monomial::default();
        for i in 0..MAX_VARS - by {
            out.exps[i + by] = self.exps[i];
        }
        debug_assert!(self.exps[MAX_VARS - by..].iter().all(|&e| e == 0));
        out
    }

    pub fn unshifted(&self, by: usize) -> Monomial {
        let mut out = Monomial::default();
        for i in by..MAX_VARS {
            out.exps[i - by] = self.exps[i];
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Weighted degree reverse lexicographic.
    Grevlex,
    /// Block order: the first `k` ranked variables are compared first (by
    /// weighted grevlex on the block), ties broken by grevlex on the rest.
    Eliminate(usize),
}

/// A monomial order on `nvars` variables.
///
/// `rank` lists variable indices from largest to smallest; `weights` is the
/// positive degree each variable carries in the degree comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    nvars: usize,
    rank: [u8; MAX_VARS],
    weights: [u32; MAX_VARS],
}

impl MonomialOrder {
    pub fn grevlex(weights: &[u32]) -> Self {
        Self::with_kind(OrderKind::Grevlex, weights)
    }

    pub fn eliminate(k: usize, weights: &[u32]) -> Self {
        Self::with_kind(OrderKind::Eliminate(k), weights)
    }

    fn with_kind(kind: OrderKind, weights: &[u32]) -> Self {
        let nvars = weights.len();
        assert!(nvars <= MAX_VARS);
        let mut rank = [0u8; MAX_VARS];
        for (i, r) in rank.iter_mut().enumerate() {
            *r = i as u8;
        }
        let mut w = [0u32; MAX_VARS];
        w[..nvars].copy_from_slice(weights);
        MonomialOrder {
            kind,
            nvars,
            rank,
            weights: w,
        }
    }

    /// Same order, but with variable `var` ranked smallest.
    pub fn with_last(mut self, var: usize) -> Self {
        let mut ranked: Vec<u8> = self.rank[..self.nvars]
            .iter()
            .copied()
            .filter(|&v| v as usize != var)
            .collect();
        ranked.push(var as u8);
        self.rank[..self.nvars].copy_from_slice(&ranked);
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights[..self.nvars]
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> u64 {
        (0..self.nvars).map(|i| self.weights[i] as u64 * m.exps[i] as u64).sum()
    }

    #[inline]
    fn block_cmp(&self, a: &Monomial, b: &Monomial, ranked: &[u8]) -> Ordering {
        let da: u64 = ranked
            .iter()
            .map(|&v| self.weights[v as usize] as u64 * a.exps[v as usize] as u64)
            .sum();
        let db: u64 = ranked
            .iter()
            .map(|&v| self.weights[v as usize] as u64 * b.exps[v as usize] as u64)
            .sum();
        if da != db {
            return da.cmp(&db);
        }
        for &v in ranked.iter().rev() {
            let (ea, eb) = (a.exps[v as usize], b.exps[v as usize]);
            if ea != eb {
                // smaller exponent in the last differing variable wins
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ranked = &self.rank[..self.nvars];
        match self.kind {
            OrderKind::Grevlex => self.block_cmp(a, b, ranked),
            OrderKind::Eliminate(k) => self
                .block_cmp(a, b, &ranked[..k])
                .then_with(|| self.block_cmp(a, b, &ranked[k..])),
        }
    }
}
