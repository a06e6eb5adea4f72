//! Buchberger's algorithm for submodules of free modules.
//!
//! Ideals are handled as submodules of rank one, so one engine serves ideal
//! Gröbner bases, elimination, syzygies and membership tests. Pairs are
//! pruned with the Gebauer–Möller criteria and processed by the normal
//! strategy with ties broken by index, which makes runs reproducible.

mod vector;

pub use vector::{ModuleOrder, ModuleRing, Term, Vector};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::limits;
use crate::monomial::Monomial;

#[derive(Clone, Debug)]
struct Element {
    vec: Vector,
    lead: Term,
    mask: u32,
}

/// A reduced Gröbner basis together with the ring it was computed in.
#[derive(Clone, Debug)]
pub struct Basis {
    ring: ModuleRing,
    elems: Vec<Element>,
}

impl Basis {
    pub fn ring(&self) -> &ModuleRing {
        &self.ring
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Vector> {
        self.elems.iter().map(|e| &e.vec)
    }

    pub fn into_elements(self) -> Vec<Vector> {
        self.elems.into_iter().map(|e| e.vec).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leading_terms(&self) -> impl Iterator<Item = &Term> {
        self.elems.iter().map(|e| &e.lead)
    }

    pub fn normal_form(&self, v: &Vector) -> Vector {
        reduce(&self.ring, &self.elems, None, v.clone(), true)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Checks Buchberger's criterion directly: every S-vector of the basis
    /// reduces to zero.
    pub fn verify_spairs(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if self.elems[i].lead.pos != self.elems[j].lead.pos {
                    continue;
                }
                let s = spair(&self.ring, &self.elems[i], &self.elems[j]);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The elements whose leading term lies in the positions at or after
    /// `top`, i.e. the part of an elimination basis free of the top block.
    pub fn below(&self, top: u32) -> impl Iterator<Item = &Vector> {
        self.elems.iter().filter(move |e| e.lead.pos >= top).map(|e| &e.vec)
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
}

enum Next {
    Generator,
    Pair((i64, usize, usize)),
}

/// Incremental Buchberger state.
///
/// Generators may be added at any time; [`Builder::complete`] brings the
/// basis back to a Gröbner basis of everything added so far.
#[derive(Clone, Debug)]
pub struct Builder {
    ring: ModuleRing,
    elems: Vec<Element>,
    redundant: Vec<bool>,
    pairs: BTreeMap<(i64, usize, usize), Pair>,
    pending: Vec<(i64, usize, Vector)>,
    pending_counter: usize,
    product_criterion: bool,
}

impl Builder {
    pub fn new(ring: ModuleRing) -> Self {
        let product_criterion = ring.rank() == 1;
        Builder {
            ring,
            elems: Vec::new(),
            redundant: Vec::new(),
            pairs: BTreeMap::new(),
            pending: Vec::new(),
            pending_counter: 0,
            product_criterion,
        }
    }

    pub fn ring(&self) -> &ModuleRing {
        &self.ring
    }

    pub fn add(&mut self, v: Vector) {
        if let Some(&(lead, _)) = v.leading() {
            let key = self.ring.sugar(&lead);
            self.pending.push((key, self.pending_counter, v));
            self.pending_counter += 1;
        }
    }

    fn active(&self) -> Vec<Element> {
        self.elems
            .iter()
            .zip(&self.redundant)
            .filter(|(_, &r)| !r)
            .map(|(e, _)| e.clone())
            .collect()
    }

    pub fn normal_form(&self, v: &Vector) -> Vector {
        reduce(&self.ring, &self.elems, Some(&self.redundant), v.clone(), true)
    }

    pub fn complete(&mut self) -> Result<()> {
        loop {
            let gen_key = self
                .pending
                .iter()
                .enumerate()
                .min_by_key(|(_, (k, c, _))| (*k, *c))
                .map(|(idx, (k, _, _))| (idx, *k));
            let pair_key = self.pairs.keys().next().copied();
            let next = match (gen_key, pair_key) {
                (None, None) => return Ok(()),
                (Some(_), None) => Next::Generator,
                (None, Some(pk)) => Next::Pair(pk),
                (Some((_, gk)), Some(pk)) => {
                    if gk <= pk.0 {
                        Next::Generator
                    } else {
                        Next::Pair(pk)
                    }
                }
            };
            limits::check_deadline()?;
            let candidate = match next {
                Next::Generator => {
                    let (idx, _) = gen_key.expect("present");
                    self.pending.swap_remove(idx).2
                }
                Next::Pair(pk) => {
                    let pair = self.pairs.remove(&pk).expect("present");
                    spair_from(&self.ring, &self.elems[pair.i], &self.elems[pair.j], &pair.lcm)
                }
            };
            let h = reduce(&self.ring, &self.elems, Some(&self.redundant), candidate, false);
            if h.is_zero() {
                continue;
            }
            let h = self.ring.make_monic(&h);
            self.insert(h)?;
        }
    }

    fn insert(&mut self, v: Vector) -> Result<()> {
        let lead = v.leading().expect("nonzero").0;
        let h = self.elems.len();
        let mask = lead.mono.support();

        // Gebauer–Möller: drop old pairs whose lcm is a proper multiple
        // handled by the chains through h.
        let elems = &self.elems;
        self.pairs.retain(|_, p| {
            if p.lcm.pos != lead.pos || !lead.mono.divides(&p.lcm.mono) {
                return true;
            }
            let li = elems[p.i].lead.mono.lcm(&lead.mono);
            let lj = elems[p.j].lead.mono.lcm(&lead.mono);
            li == p.lcm.mono || lj == p.lcm.mono
        });

        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        for i in 0..h {
            if self.redundant[i] || self.elems[i].lead.pos != lead.pos {
                continue;
            }
            let li = self.elems[i].lead.mono;
            let coprime = self.product_criterion && li.is_coprime(&lead.mono);
            fresh.push((
                Pair {
                    i,
                    j: h,
                    lcm: Term {
                        mono: li.lcm(&lead.mono),
                        pos: lead.pos,
                    },
                },
                coprime,
            ));
        }
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for idx in 0..fresh.len() {
            let (p, coprime) = fresh[idx];
            let dominated = fresh[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|(q, _)| q.lcm.mono.divides(&p.lcm.mono));
            if coprime || !dominated {
                kept.push((p, coprime));
            }
        }
        for (p, coprime) in kept {
            if coprime {
                continue;
            }
            let key = (self.ring.sugar(&p.lcm), p.j, p.i);
            self.pairs.insert(key, p);
        }
        if self.pairs.len() > limits::max_pairs() {
            return Err(Error::ResourceLimit(format!(
                "Gröbner pair queue exceeded {} entries",
                limits::max_pairs()
            )));
        }

        for i in 0..h {
            if !self.redundant[i] && self.elems[i].lead.pos == lead.pos && lead.mono.divides(&self.elems[i].lead.mono) {
                self.redundant[i] = true;
            }
        }
        self.elems.push(Element { vec: v, lead, mask });
        self.redundant.push(false);
        Ok(())
    }

    /// Minimal, tail-reduced, monic basis sorted by increasing leading term.
    pub fn reduced(&self) -> Basis {
        let mut active = self.active();
        // the active set is minimal already; guard against equal leads anyway
        let mut minimal: Vec<Element> = Vec::new();
        for e in active.drain(..) {
            if !minimal
                .iter()
                .any(|m| m.lead.pos == e.lead.pos && m.lead.mono.divides(&e.lead.mono))
            {
                minimal.retain(|m| !(m.lead.pos == e.lead.pos && e.lead.mono.divides(&m.lead.mono)));
                minimal.push(e);
            }
        }
        let mut out: Vec<Element> = minimal
            .iter()
            .map(|e| {
                let (head, tail) = e.vec.split_lead();
                let tail = reduce(&self.ring, &minimal, None, tail, true);
                let vec = self.ring.add(&head, &tail);
                Element {
                    vec,
                    lead: e.lead,
                    mask: e.mask,
                }
            })
            .collect();
        out.sort_by(|a, b| self.ring.cmp_terms(&a.lead, &b.lead));
        Basis {
            ring: self.ring.clone(),
            elems: out,
        }
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner(ring: &ModuleRing, gens: impl IntoIterator<Item = Vector>) -> Result<Basis> {
    let mut b = Builder::new(ring.clone());
    for g in gens {
        b.add(g);
    }
    b.complete()?;
    Ok(b.reduced())
}

fn find_divisor(elems: &[Element], skip: Option<&[bool]>, t: &Term) -> Option<(usize, Monomial)> {
    let tmask = t.mono.support();
    for (k, e) in elems.iter().enumerate() {
        if skip.is_some_and(|s| s[k]) {
            continue;
        }
        if e.lead.pos != t.pos || e.mask & !tmask != 0 {
            continue;
        }
        if let Some(q) = e.lead.mono.quotient_of(&t.mono) {
            return Some((k, q));
        }
    }
    None
}

/// Reduces `v` modulo the (monic) elements. With `full` every term is
/// reduced; otherwise only until the leading term is irreducible.
fn reduce(ring: &ModuleRing, elems: &[Element], skip: Option<&[bool]>, v: Vector, full: bool) -> Vector {
    let mut rest: Vec<(Term, u32)> = v.terms().to_vec();
    let mut start = 0;
    let mut done: Vec<(Term, u32)> = Vec::new();
    while start < rest.len() {
        let (t, c) = rest[start];
        match find_divisor(elems, skip, &t) {
            Some((k, q)) => {
                rest = ring.sub_scaled_slice(&rest[start..], c, &q, &elems[k].vec);
                start = 0;
            }
            None => {
                if !full {
                    done.extend_from_slice(&rest[start..]);
                    return Vector::from_sorted(done);
                }
                done.push((t, c));
                start += 1;
            }
        }
    }
    Vector::from_sorted(done)
}

fn spair(ring: &ModuleRing, a: &Element, b: &Element) -> Vector {
    let lcm = Term {
        mono: a.lead.mono.lcm(&b.lead.mono),
        pos: a.lead.pos,
    };
    spair_from(ring, a, b, &lcm)
}

fn spair_from(ring: &ModuleRing, a: &Element, b: &Element, lcm: &Term) -> Vector {
    let qa = a.lead.mono.quotient_of(&lcm.mono).expect("lcm");
    let qb = b.lead.mono.quotient_of(&lcm.mono).expect("lcm");
    let left = ring.mul_term(&a.vec, &qa, 1);
    ring.sub_scaled(&left, 1, &qb, &b.vec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;

    fn ideal_ring(n: usize) -> ModuleRing {
        ModuleRing::ideal(PrimeField::default(), MonomialOrder::grevlex(&vec![1; n]))
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn unit_and_zero() {
        let r = ideal_ring(2);
        let one = r.from_terms(vec![(
            Term {
                mono: Monomial::one(),
                pos: 0,
            },
            5,
        )]);
        let x = r.from_terms(vec![(
            Term {
                mono: mono(&[1, 0]),
                pos: 0,
            },
            1,
        )]);
        let b = groebner(&r, vec![x.clone(), one]).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.elements().next().unwrap().leading().unwrap().0.mono.is_one());
        let b = groebner(&r, Vec::new()).unwrap();
        assert!(b.is_empty());
        assert!(!b.contains(&x));
    }

    #[test]
    fn twisted_cubic_spairs() {
        // ideal of 2x2 minors of [[a,b,c],[b,c,d]]
        let r = ideal_ring(4);
        let t = |e: &[u16], c: i64| (Term { mono: mono(e), pos: 0 }, PrimeField::default().from_i64(c));
        let gens = vec![
            r.from_terms(vec![t(&[1, 0, 1, 0], 1), t(&[0, 2, 0, 0], -1)]),
            r.from_terms(vec![t(&[1, 0, 0, 1], 1), t(&[0, 1, 1, 0], -1)]),
            r.from_terms(vec![t(&[0, 1, 0, 1], 1), t(&[0, 0, 2, 0], -1)]),
        ];
        let b = groebner(&r, gens.clone()).unwrap();
        assert!(b.verify_spairs());
        for g in &gens {
            assert!(b.contains(g));
        }
        assert_eq!(b.len(), 3);
    }
}
