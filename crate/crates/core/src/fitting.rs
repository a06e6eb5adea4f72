//! Fitting ideals of finitely presented modules and their saturations.

use rayon::prelude::*;
use serde::Serialize;

use crate::coxring::IrrelevantIdeal;
use crate::error::{Error, Result};
use crate::freemod::{self, Presentation};
use crate::ideal::Ideal;

#[derive(Clone, Debug, Serialize)]
pub struct FittingStep {
    pub j: usize,
    pub fitting: Ideal,
    pub saturated: Ideal,
}

/// `Fitt_j` and `Fitt_j : B^∞` for `j = 0..=rank G`.
#[derive(Clone, Debug, Serialize)]
pub struct FittingLadder {
    pub generators: usize,
    pub steps: Vec<FittingStep>,
}

impl FittingLadder {
    pub fn new(p: &Presentation, b: &IrrelevantIdeal) -> Result<FittingLadder> {
        let steps = (0..=p.generators())
            .into_par_iter()
            .map(|j| {
                let fitting = fitting_ideal(j, p)?;
                let saturated = fitting.saturate_by_irrelevant(b)?;
                Ok(FittingStep { j, fitting, saturated })
            })
            .collect::<Result<_>>()?;
        Ok(FittingLadder {
            generators: p.generators(),
            steps,
        })
    }

    /// The saturated ideal at `j`, within the ladder.
    pub fn saturated(&self, j: usize) -> Option<&Ideal> {
        self.steps.get(j).map(|s| &s.saturated)
    }
}

/// `Fitt_j(M) = I_{r-j}` for a presentation with `r` generators.
pub fn fitting_ideal(j: usize, p: &Presentation) -> Result<Ideal> {
    freemod::minors_ideal(p.generators() as i64 - j as i64, &p.matrix)
}

pub fn saturated_fitting(j: usize, p: &Presentation, b: &IrrelevantIdeal) -> Result<Ideal> {
    fitting_ideal(j, p)?.saturate_by_irrelevant(b)
}

/// Whether the saturated Fitting ideals of two presentations agree for all
/// `j <= jmax`.
pub fn satinv_compare(p: &Presentation, q: &Presentation, b: &IrrelevantIdeal, jmax: usize) -> Result<bool> {
    if p.ring() != q.ring() {
        return Err(Error::RingMismatch);
    }
    let agree: Vec<bool> = (0..=jmax)
        .into_par_iter()
        .map(|j| saturated_fitting(j, p, b)?.equals(&saturated_fitting(j, q, b)?))
        .collect::<Result<_>>()?;
    Ok(agree.into_iter().all(|a| a))
}

/// The rank `r` for which `Fitt_r : B^∞ = S` and `Fitt_{r-1} : B^∞ = 0`,
/// with `Fitt_{-1} = 0`.
pub fn is_locally_free_rank(p: &Presentation, b: &IrrelevantIdeal) -> Result<Option<usize>> {
    let ladder = FittingLadder::new(p, b)?;
    for step in &ladder.steps {
        if step.saturated.is_unit()? {
            let below_zero = step.j == 0 || ladder.steps[step.j - 1].saturated.is_zero();
            return Ok(below_zero.then_some(step.j));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    /// `Q` lies in `𝕍(Fitt_j : B^∞)`.
    pub obstructed: bool,
    pub q_is_b_saturated: bool,
}

/// Whether the prime `Q` contains the saturated `Fitt_j`, so that no module
/// with the same sheaf is generated by `j` elements near `Q`. A `Q` that is
/// not `B`-saturated is reported as unobstructed.
pub fn generation_obstruction(p: &Presentation, j: usize, q: &Ideal, b: &IrrelevantIdeal) -> Result<Obstruction> {
    if p.ring() != q.ring() {
        return Err(Error::RingMismatch);
    }
    let q_is_b_saturated = q.saturate_by_irrelevant(b)?.equals(q)?;
    let obstructed = q_is_b_saturated && q.contains_ideal(&saturated_fitting(j, p, b)?)?;
    Ok(Obstruction {
        obstructed,
        q_is_b_saturated,
    })
}
