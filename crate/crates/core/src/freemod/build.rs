//! Standard complexes: Koszul and Taylor complexes, direct sums, twists,
//! truncations and complexes with zero differentials.

use std::sync::Arc;

use super::minors::subsets;
use super::{FreeComplex, FreeModule, GradedMatrix};
use crate::coxring::{CoxRing, Multidegree};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;

fn members(mask: u16) -> Vec<usize> {
    (0..16).filter(|&b| mask & (1 << b) != 0).collect()
}

/// Exterior-algebra complex on subsets of `0..k`: the column for `J` has
/// entry `(-1)^p coeff(J, j)` in row `J \ {j}`, where `j` is the `p`-th
/// element of `J`.
fn subset_complex(
    ring: &Arc<CoxRing>,
    k: usize,
    twist: impl Fn(u16) -> Multidegree,
    coeff: impl Fn(u16, usize) -> Poly,
) -> Result<FreeComplex> {
    if k > 8 {
        return Err(Error::ResourceLimit(format!(
            "{k} generators is too many for a subset complex"
        )));
    }
    let levels: Vec<Vec<u16>> = (0..=k).map(|t| subsets(k, t).collect()).collect();
    let module = |t: usize| FreeModule::new(levels[t].iter().map(|&s| twist(s)).collect());
    let polys = ring.polys();
    let mut maps = Vec::new();
    for t in 1..=k {
        let mut entries = vec![vec![Poly::zero(); levels[t].len()]; levels[t - 1].len()];
        for (c, &set) in levels[t].iter().enumerate() {
            for (p, j) in members(set).into_iter().enumerate() {
                let face = set & !(1 << j);
                let r = levels[t - 1].iter().position(|&s| s == face).expect("face");
                let e = coeff(set, j);
                entries[r][c] = if p % 2 == 0 { e } else { polys.neg(&e) };
            }
        }
        maps.push(GradedMatrix::new(ring, module(t), module(t - 1), entries)?);
    }
    FreeComplex::with_base(ring, Some(module(0)), maps)
}

/// Koszul complex of a list of homogeneous polynomials.
pub fn koszul(ring: &Arc<CoxRing>, fs: &[Poly]) -> Result<FreeComplex> {
    let degs = fs.iter().map(|f| ring.multidegree_of(f)).collect::<Result<Vec<_>>>()?;
    let zero = Multidegree::zero(ring.pic_rank());
    subset_complex(
        ring,
        fs.len(),
        |s| members(s).iter().fold(zero.clone(), |acc, &j| acc.add(&degs[j])),
        |_, j| fs[j].clone(),
    )
}

/// Taylor resolution of the ideal generated by monomials.
pub fn taylor(ring: &Arc<CoxRing>, monomials: &[Poly]) -> Result<FreeComplex> {
    let ms: Vec<Monomial> = monomials
        .iter()
        .map(|f| match f.terms() {
            [(m, _)] => Ok(*m),
            _ => Err(Error::PreconditionFailed(format!(
                "`{}` is not a monomial",
                ring.format(f)
            ))),
        })
        .collect::<Result<_>>()?;
    let lcm = |s: u16| members(s).iter().fold(Monomial::one(), |acc, &j| acc.lcm(&ms[j]));
    subset_complex(
        ring,
        ms.len(),
        |s| ring.monomial_degree(&lcm(s)),
        |s, j| {
            let q = lcm(s & !(1 << j)).quotient_of(&lcm(s)).expect("lcm divides");
            ring.polys().term(q, 1)
        },
    )
}

/// Direct sum, padding the shorter complex with zero modules.
pub fn direct_sum(a: &FreeComplex, b: &FreeComplex) -> Result<FreeComplex> {
    if **a.ring() != **b.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring();
    let n = a.length().max(b.length());
    let module = |c: &FreeComplex, i: usize| c.modules().get(i).cloned().unwrap_or_default();
    let sum = |i: usize| {
        let mut t = module(a, i).twists;
        t.extend(module(b, i).twists);
        FreeModule::new(t)
    };
    let mut maps = Vec::new();
    for i in 1..=n {
        let (sa, ta) = (module(a, i), module(a, i - 1));
        let (sb, tb) = (module(b, i), module(b, i - 1));
        let mut entries = vec![vec![Poly::zero(); sa.rank() + sb.rank()]; ta.rank() + tb.rank()];
        if i <= a.length() {
            for (r, row) in a.differential(i).entries().iter().enumerate() {
                entries[r][..sa.rank()].clone_from_slice(row);
            }
        }
        if i <= b.length() {
            for (r, row) in b.differential(i).entries().iter().enumerate() {
                entries[ta.rank() + r][sa.rank()..].clone_from_slice(row);
            }
        }
        maps.push(GradedMatrix::new(ring, sum(i), sum(i - 1), entries)?);
    }
    FreeComplex::with_base(ring, Some(sum(0)), maps)
}

/// The complex tensored with `S(-by)`.
pub fn twist(c: &FreeComplex, by: &Multidegree) -> Result<FreeComplex> {
    let shift = |m: &FreeModule| FreeModule::new(m.twists.iter().map(|t| t.add(by)).collect());
    let maps = c
        .maps()
        .iter()
        .map(|m| GradedMatrix::new(c.ring(), shift(m.source()), shift(m.target()), m.entries().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::with_base(c.ring(), Some(shift(c.module(0))), maps)
}

/// `F_m -> ... -> F_0`, dropping the higher terms.
pub fn truncate_length(c: &FreeComplex, m: usize) -> FreeComplex {
    let m = m.min(c.length());
    FreeComplex::from_parts(c.ring(), c.modules()[..=m].to_vec(), c.maps()[..m].to_vec())
}

/// A complex on the given modules with all differentials zero.
pub fn zero_maps(ring: &Arc<CoxRing>, modules: Vec<FreeModule>) -> Result<FreeComplex> {
    if modules.is_empty() {
        return Err(Error::Shape("a complex needs at least F_0".into()));
    }
    let maps = modules
        .windows(2)
        .map(|w| GradedMatrix::zero(ring, w[1].clone(), w[0].clone()))
        .collect();
    FreeComplex::with_base(ring, Some(modules[0].clone()), maps)
}
