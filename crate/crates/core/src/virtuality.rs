//! Deciding whether a bounded free complex is a virtual resolution.
//!
//! The criterion path compares ranks of consecutive differentials and the
//! depths of the saturated ideals of maximal minors. The oracle path works
//! from the definition: every higher homology module must be supported on
//! the irrelevant locus, which is read off `√Fitt_0` of a presentation.

use rayon::prelude::*;
use serde::Serialize;

use crate::coxring::IrrelevantIdeal;
use crate::error::{Error, Result};
use crate::freemod::{self, FreeComplex, GradedMatrix};
use crate::ideal::{Depth, Ideal};
use crate::monomial::Monomial;

#[derive(Clone, Debug, Serialize)]
pub struct IndexRecord {
    pub index: usize,
    pub rank_phi: usize,
    pub rank_next: usize,
    pub rank_module: usize,
    pub condition_a: bool,
    pub minors_ideal: Ideal,
    pub depth: Depth,
    pub saturation: Ideal,
    pub depth_saturated: Depth,
    pub condition_b: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentWitness {
    pub variables: Vec<String>,
    /// Variables of the component lying in `√Fitt_0`.
    pub in_radical: Vec<String>,
    pub contained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionCertificate {
    pub index: usize,
    pub zero_module: bool,
    pub generators: usize,
    pub fitt0: Ideal,
    pub components: Vec<ComponentWitness>,
    pub torsion: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub is_virtual: bool,
    pub is_exact: bool,
    pub certificates: Vec<TorsionCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VirtualityReport {
    pub length: usize,
    pub ranks: Vec<usize>,
    pub records: Vec<IndexRecord>,
    pub verdict_theorem: bool,
    /// Whether the unsaturated depths already meet the classical exactness
    /// criterion.
    pub exactness_note: bool,
    pub verdict_oracle: Option<bool>,
    pub oracle: Option<OracleReport>,
}

/// Rank and depth conditions for every differential.
pub fn check_virtual(f: &FreeComplex, b: &IrrelevantIdeal) -> Result<VirtualityReport> {
    let n = f.length();
    let per_map: Vec<(usize, Ideal, Depth, Ideal, Depth)> = (1..=n)
        .into_par_iter()
        .map(|i| {
            let (r, minors) = freemod::rank_and_max_minors(f.differential(i))?;
            let depth = minors.grade()?;
            let sat = minors.saturate_by_irrelevant(b)?;
            let depth_sat = sat.grade()?;
            Ok((r, minors, depth, sat, depth_sat))
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::with_capacity(n);
    for (k, (r, minors, depth, sat, depth_sat)) in per_map.iter().enumerate() {
        let i = k + 1;
        let next = per_map.get(i).map_or(0, |p| p.0);
        let rank_module = f.module(i).rank();
        records.push(IndexRecord {
            index: i,
            rank_phi: *r,
            rank_next: next,
            rank_module,
            condition_a: r + next == rank_module,
            minors_ideal: minors.clone(),
            depth: *depth,
            saturation: sat.clone(),
            depth_saturated: *depth_sat,
            condition_b: depth_sat.at_least(i),
        });
    }
    let verdict = records.iter().all(|r| r.condition_a && r.condition_b);
    let exact = records.iter().all(|r| r.condition_a && r.depth.at_least(r.index));
    Ok(VirtualityReport {
        length: n,
        ranks: f.ranks(),
        records,
        verdict_theorem: verdict,
        exactness_note: exact,
        verdict_oracle: None,
        oracle: None,
    })
}

/// [`check_virtual`] followed by the homology oracle.
pub fn check_virtual_with_oracle(f: &FreeComplex, b: &IrrelevantIdeal) -> Result<VirtualityReport> {
    let mut report = check_virtual(f, b)?;
    let oracle = oracle_is_virtual(f, b)?;
    report.verdict_oracle = Some(oracle.is_virtual);
    report.oracle = Some(oracle);
    Ok(report)
}

/// Whether every `H_i`, `i >= 1`, is annihilated by a power of `B`.
pub fn oracle_is_virtual(f: &FreeComplex, b: &IrrelevantIdeal) -> Result<OracleReport> {
    let certificates: Vec<TorsionCertificate> = (1..=f.length())
        .into_par_iter()
        .map(|i| torsion_certificate(f, i, b))
        .collect::<Result<_>>()?;
    Ok(OracleReport {
        is_virtual: certificates.iter().all(|c| c.torsion),
        is_exact: certificates.iter().all(|c| c.zero_module),
        certificates,
    })
}

/// Support of `H_i` against `V(B)`: `H_i` is `B`-torsion iff `B ⊆ √Fitt_0`.
pub fn torsion_certificate(f: &FreeComplex, i: usize, b: &IrrelevantIdeal) -> Result<TorsionCertificate> {
    let ring = f.ring();
    let h = freemod::homology_presentation(f, i)?;
    let gens = h.generators();
    let fitt0 = freemod::minors_ideal(gens as i64, &h.matrix)?;
    let zero_module = fitt0.is_unit()?;
    let mut components = Vec::new();
    for comp in &b.components {
        let mut inside = Vec::new();
        for &v in comp {
            if zero_module || fitt0.radical_contains(&ring.var(v))? {
                inside.push(ring.names()[v].clone());
            }
        }
        components.push(ComponentWitness {
            variables: comp.iter().map(|&v| ring.names()[v].clone()).collect(),
            contained: inside.len() == comp.len(),
            in_radical: inside,
        });
    }
    let torsion = if components.iter().any(|c| c.contained) {
        true
    } else if fitt0.is_zero() {
        false
    } else {
        // B is generated by the lcms of one variable from each component
        let mut all = true;
        for g in irrelevant_generators(b) {
            if !fitt0.radical_contains(&ring.polys().term(g, 1))? {
                all = false;
                break;
            }
        }
        all
    };
    Ok(TorsionCertificate {
        index: i,
        zero_module,
        generators: gens,
        fitt0,
        components,
        torsion,
    })
}

fn irrelevant_generators(b: &IrrelevantIdeal) -> Vec<Monomial> {
    let mut gens = vec![Monomial::one()];
    for comp in &b.components {
        let mut next = Vec::new();
        for g in &gens {
            for &v in comp {
                let m = g.lcm(&Monomial::var(v));
                if !next.contains(&m) {
                    next.push(m);
                }
            }
        }
        gens = next;
    }
    gens
}

/// For `F -φ-> G -ψ-> H` with both saturated ideals of maximal minors equal
/// to the unit ideal: virtual iff `rank φ + rank ψ = rank G`.
pub fn check_two_term(phi: &GradedMatrix, psi: &GradedMatrix, b: &IrrelevantIdeal) -> Result<bool> {
    if phi.target() != psi.source() {
        return Err(Error::Shape(
            "the target of the first map is not the source of the second".into(),
        ));
    }
    let (rp, ip) = freemod::rank_and_max_minors(phi)?;
    let (rq, iq) = freemod::rank_and_max_minors(psi)?;
    for (name, i) in [("first", ip), ("second", iq)] {
        if !i.saturate_by_irrelevant(b)?.is_unit()? {
            return Err(Error::PreconditionFailed(format!(
                "the saturated ideal of maximal minors of the {name} map is proper"
            )));
        }
    }
    Ok(rp + rq == phi.target().rank())
}

/// On a single projective space with length at most `n + 1`: whether
/// "virtual implies exact" holds for this complex.
pub fn check_pn_collapse(f: &FreeComplex) -> Result<bool> {
    let ring = f.ring();
    let n = match ring.product_dims() {
        Some([n]) => *n,
        _ => {
            return Err(Error::Unsupported(
                "the ring is not the Cox ring of a projective space".into(),
            ))
        }
    };
    if f.length() > n + 1 {
        return Err(Error::PreconditionFailed(format!(
            "length {} exceeds n + 1 = {}",
            f.length(),
            n + 1
        )));
    }
    let b = ring.irrelevant();
    if !check_virtual(f, &b)?.verdict_theorem {
        return Ok(true);
    }
    Ok(oracle_is_virtual(f, &b)?.is_exact)
}
