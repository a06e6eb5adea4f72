//! Homogeneous ideals of a Cox ring and the ideal-theoretic toolbox built on
//! the Buchberger engine: normal forms, colon ideals, saturation,
//! intersection, radical membership, codimension and grade.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::coxring::{CoxRing, IrrelevantIdeal};
use crate::error::{Error, Result};
use crate::gb::{self, ModuleRing, Term, Vector};
use crate::monomial::MonomialOrder;
use crate::poly::{Poly, PolyRing};

/// A non-negative integer or infinity. The unit ideal has infinite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn at_least(self, i: usize) -> bool {
        self >= Depth::Finite(i)
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Depth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(d) => s.serialize_u64(*d as u64),
            Depth::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<CoxRing>,
    gens: Vec<Poly>,
    gb: OnceLock<Arc<Vec<Poly>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Serialized as its reduced Gröbner basis.
impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens = self.to_strings().map_err(serde::ser::Error::custom)?;
        gens.serialize(s)
    }
}

impl Ideal {
    /// Ideal generated by homogeneous polynomials; zero generators are dropped.
    pub fn new(ring: &Arc<CoxRing>, gens: Vec<Poly>) -> Result<Ideal> {
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            ring.multidegree_of(g)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Arc<CoxRing>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Arc<CoxRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    pub fn unit(ring: &Arc<CoxRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vec![ring.polys().one()],
            gb: OnceLock::new(),
        }
    }

    /// Ideal generated by a set of variables.
    pub fn of_variables(ring: &Arc<CoxRing>, vars: &[usize]) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vars.iter().map(|&v| ring.var(v)).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<CoxRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Gröbner basis under the ring's grevlex order, cached.
    pub fn groebner_basis(&self) -> Result<&[Poly]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let polys = self.ring.polys();
        let basis = groebner_in(polys, &self.gens)?;
        let _ = self.gb.set(Arc::new(basis));
        Ok(self.gb.get().expect("just set"))
    }

    /// Reduced Gröbner basis under another order on the same variables,
    /// with leading terms first under that order.
    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Result<Vec<Poly>> {
        groebner_in(&self.ring.polys().with_order(order), &self.gens)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let gb = self.groebner_basis()?;
        let polys = self.ring.polys();
        let mring = ModuleRing::ideal(*polys.field(), polys.order().clone());
        let basis = gb::groebner(&mring, gb.iter().map(|g| to_vector(&mring, g, 0)))?;
        Ok(from_vector(polys, &basis.normal_form(&to_vector(&mring, f, 0)), 0))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        if self.is_unit()? {
            return Ok(true);
        }
        let gb = self.groebner_basis()?;
        let polys = self.ring.polys();
        let mring = ModuleRing::ideal(*polys.field(), polys.order().clone());
        let basis = gb::groebner(&mring, gb.iter().map(|g| to_vector(&mring, g, 0)))?;
        Ok(other.gens.iter().all(|g| basis.contains(&to_vector(&mring, g, 0))))
    }

    /// Equality of reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.first().is_some_and(|g| g.is_unit()))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let polys = self.ring.polys();
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(polys.mul(f, g));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Intersection by eliminating `t` from `t*I + (1-t)*J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let ext = Extended::new(&self.ring, true);
        let t = ext.t();
        let one_minus_t = ext.polys.sub(&ext.polys.one(), &t);
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(ext.polys.mul(&t, &ext.embed(f)));
        }
        for g in &other.gens {
            gens.push(ext.polys.mul(&one_minus_t, &ext.embed(g)));
        }
        let basis = groebner_in(&ext.polys, &gens)?;
        let kept: Vec<Poly> = basis
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exp(0) == 0))
            .map(|g| ext.restrict(self.ring.polys(), g))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// `I : f`, computed as `(I ∩ <f>) / f`.
    pub fn quotient_by(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            log::warn!("colon by the zero ideal; returning the unit ideal");
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let polys = self.ring.polys();
        let gens = meet
            .generators()
            .iter()
            .map(|g| polys.div_exact(g, f))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I : J = ⋂_j (I : f_j)` over the generators of `J`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if other.is_zero() {
            log::warn!("colon by the zero ideal; returning the unit ideal");
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc: Option<Ideal> = None;
        for f in &other.gens {
            let q = self.quotient_by(f)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
            if acc.as_ref().expect("set").equals(self)? {
                // I ⊆ I:J ⊆ I:f, so equality with I is final
                break;
            }
        }
        Ok(acc.expect("nonempty generator list"))
    }

    /// `I : J^∞` as the stable value of iterated quotients.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `I : x_i^∞` for a single variable, by dividing a Gröbner basis taken
    /// in grevlex with `x_i` last by the largest power of `x_i` it carries.
    pub fn saturate_by_variable(&self, var: usize) -> Result<Ideal> {
        let order = self.ring.polys().order().clone().with_last(var);
        let basis = self.groebner_basis_in(order)?;
        let polys = self.ring.polys();
        let gens = basis
            .iter()
            .map(|g| {
                let k = g.terms().iter().map(|(m, _)| m.exp(var)).min().unwrap_or(0);
                let terms = g.terms().iter().map(|&(m, c)| {
                    let mut m = m;
                    m.set_exp(var, m.exp(var) - k);
                    (m, c)
                });
                polys.from_terms(terms)
            })
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `I : Q^∞` for a monomial prime `Q` generated by variables, as the
    /// intersection of the single-variable saturations.
    pub fn saturate_by_variables(&self, vars: &[usize]) -> Result<Ideal> {
        let mut parts = Vec::with_capacity(vars.len());
        for &v in vars {
            let s = self.saturate_by_variable(v)?;
            if s.equals(self)? {
                return Ok(self.clone());
            }
            parts.push(s);
        }
        let mut acc = parts.pop().expect("nonempty component");
        for p in parts.iter().rev() {
            acc = acc.intersect(p)?;
        }
        Ok(acc)
    }

    /// `I : B^∞`, chained over the prime components of `B`.
    pub fn saturate_by_irrelevant(&self, b: &IrrelevantIdeal) -> Result<Ideal> {
        let mut cur = self.clone();
        for comp in &b.components {
            if cur.is_zero() || cur.is_unit()? {
                break;
            }
            cur = cur.saturate_by_variables(comp)?;
        }
        Ok(cur)
    }

    /// Rabinowitsch test: `f ∈ √I` iff `1 ∈ I + <1 - t f>`.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_unit()? {
            return Ok(true);
        }
        let ext = Extended::new(&self.ring, false);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| ext.embed(g)).collect();
        let tf = ext.polys.mul(&ext.t(), &ext.embed(f));
        gens.push(ext.polys.sub(&ext.polys.one(), &tf));
        let basis = groebner_in(&ext.polys, &gens)?;
        Ok(basis.first().is_some_and(|g| g.is_unit()))
    }

    /// Krull dimension of `S/I` from maximal independent sets of the initial
    /// ideal; `None` for the unit ideal.
    pub fn dim(&self) -> Result<Option<usize>> {
        if self.is_unit()? {
            return Ok(None);
        }
        let leads: Vec<u32> = self
            .groebner_basis()?
            .iter()
            .map(|g| g.leading().expect("nonzero").0.support())
            .collect();
        Ok(Some(max_independent_set(self.ring.nvars(), &leads)))
    }

    pub fn codim(&self) -> Result<Depth> {
        Ok(match self.dim()? {
            None => Depth::Infinite,
            Some(d) => Depth::Finite(self.ring.nvars() - d),
        })
    }

    /// Depth of `I` on `S`; equal to the codimension since `S` is a
    /// polynomial ring, hence Cohen–Macaulay.
    pub fn grade(&self) -> Result<Depth> {
        self.codim()
    }

    pub fn to_strings(&self) -> Result<Vec<String>> {
        Ok(self.groebner_basis()?.iter().map(|g| self.ring.format(g)).collect())
    }
}

/// Largest set of variables containing the support of no leading monomial.
pub(crate) fn max_independent_set(nvars: usize, leads: &[u32]) -> usize {
    let mut best = 0;
    for set in 0u32..(1u32 << nvars) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        if leads.iter().all(|&l| l & !set != 0) {
            best = size;
        }
    }
    best
}

/// The ring `S[t]` with `t` in slot 0.
struct Extended {
    polys: PolyRing,
}

impl Extended {
    fn new(ring: &CoxRing, eliminate: bool) -> Self {
        let mut weights = vec![1u32];
        weights.extend_from_slice(ring.weights());
        let order = if eliminate {
            MonomialOrder::eliminate(1, &weights)
        } else {
            MonomialOrder::grevlex(&weights)
        };
        Extended {
            polys: PolyRing::new(*ring.field(), order),
        }
    }

    fn t(&self) -> Poly {
        self.polys.var(0)
    }

    fn embed(&self, f: &Poly) -> Poly {
        self.polys.from_terms(f.terms().iter().map(|(m, c)| (m.shifted(1), *c)))
    }

    fn restrict(&self, base: &PolyRing, f: &Poly) -> Poly {
        base.from_terms(f.terms().iter().map(|(m, c)| (m.unshifted(1), *c)))
    }
}

pub(crate) fn to_vector(ring: &ModuleRing, f: &Poly, pos: u32) -> Vector {
    ring.from_terms(f.terms().iter().map(|&(mono, c)| (Term { mono, pos }, c)))
}

pub(crate) fn from_vector(polys: &PolyRing, v: &Vector, pos: u32) -> Poly {
    polys.from_terms(v.component(pos))
}

/// Reduced Gröbner basis of `gens` in `polys`, returned as polynomials
/// sorted under the order of `polys`.
pub(crate) fn groebner_in(polys: &PolyRing, gens: &[Poly]) -> Result<Vec<Poly>> {
    let mring = ModuleRing::ideal(*polys.field(), polys.order().clone());
    let basis = gb::groebner(&mring, gens.iter().map(|g| to_vector(&mring, g, 0)))?;
    Ok(basis
        .elements()
        .map(|v| Poly::from_sorted(v.terms().iter().map(|(t, c)| (t.mono, *c)).collect()))
        .collect())
}

/// `B` itself, as the intersection of its components.
pub fn irrelevant_ideal(ring: &Arc<CoxRing>) -> Result<Ideal> {
    let b = ring.irrelevant();
    let mut acc = Ideal::unit(ring);
    for comp in &b.components {
        acc = acc.intersect(&Ideal::of_variables(ring, comp))?;
    }
    Ok(acc)
}
