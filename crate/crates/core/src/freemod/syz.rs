use std::sync::Arc;

use super::{poly_column_vector, vector_column, vector_degree, FreeModule, GradedMatrix};
use crate::coxring::{CoxRing, Multidegree};
use crate::error::{Error, Result};
use crate::gb::{self, Basis, Builder, ModuleRing, Term, Vector};
use crate::poly::Poly;

/// Gröbner basis of the vectors `(column_j, e_j)` in `target ⊕ source`,
/// with the target block eliminated first. Elements free of the target
/// block are syzygies; reducing `(c, 0)` expresses `c` in the columns.
pub(crate) struct Augmented {
    ring: Arc<CoxRing>,
    basis: Basis,
    top: u32,
    source: FreeModule,
}

impl Augmented {
    pub(crate) fn new(m: &GradedMatrix) -> Result<Self> {
        let ring = m.ring().clone();
        let top = m.rows() as u32;
        let mut shifts = GradedMatrix::shifts(&ring, m.target());
        shifts.extend(GradedMatrix::shifts(&ring, m.source()));
        let mring = ModuleRing::module(*ring.field(), ring.polys().order().clone(), shifts, top);
        let gens = (0..m.cols()).map(|j| {
            let col = m.column_vector(&mring, j, 0);
            let unit = mring.from_terms([(
                Term {
                    mono: crate::monomial::Monomial::one(),
                    pos: top + j as u32,
                },
                1,
            )]);
            mring.add(&col, &unit)
        });
        let basis = gb::groebner(&mring, gens.collect::<Vec<_>>())?;
        Ok(Augmented {
            ring,
            basis,
            top,
            source: m.source().clone(),
        })
    }

    /// Generators of the kernel, as vectors in source coordinates.
    pub(crate) fn kernel(&self) -> Vec<Vector> {
        let mring = self.source_ring();
        self.basis
            .below(self.top)
            .map(|v| {
                mring.from_terms(v.terms().iter().map(|&(t, c)| {
                    (
                        Term {
                            mono: t.mono,
                            pos: t.pos - self.top,
                        },
                        c,
                    )
                }))
            })
            .collect()
    }

    /// Coefficients `λ` with `Σ λ_j column_j = c`, or `None` when `c` is not
    /// in the column span.
    pub(crate) fn lift(&self, c: &[Poly]) -> Option<Vec<Poly>> {
        let v = poly_column_vector(self.basis.ring(), c, 0);
        let nf = self.basis.normal_form(&v);
        if nf.terms().iter().any(|(t, _)| t.pos < self.top) {
            return None;
        }
        let polys = self.ring.polys();
        Some(
            vector_column(&self.ring, &nf, self.top, self.source.rank())
                .iter()
                .map(|p| polys.neg(p))
                .collect(),
        )
    }

    fn source_ring(&self) -> ModuleRing {
        module_ring(&self.ring, &self.source)
    }
}

pub(crate) fn module_ring(ring: &CoxRing, m: &FreeModule) -> ModuleRing {
    ModuleRing::module(
        *ring.field(),
        ring.polys().order().clone(),
        GradedMatrix::shifts(ring, m),
        0,
    )
}

/// A minimal generating subset, chosen greedily in order of degree.
pub fn minimal_columns(ring: &CoxRing, module: &FreeModule, vectors: Vec<Vector>) -> Result<Vec<Vector>> {
    let mring = module_ring(ring, module);
    let mut vs: Vec<(i64, usize, Vector)> = vectors
        .into_iter()
        .filter(|v| !v.is_zero())
        .enumerate()
        .map(|(k, v)| (mring.sugar(&v.leading().expect("nonzero").0), k, v))
        .collect();
    vs.sort_by_key(|(d, k, _)| (*d, *k));
    let mut builder = Builder::new(mring);
    let mut chosen = Vec::new();
    for (_, _, v) in vs {
        if builder.normal_form(&v).is_zero() {
            continue;
        }
        builder.add(v.clone());
        builder.complete()?;
        chosen.push(v);
    }
    Ok(chosen)
}

/// Matrix with the given vectors as columns.
pub(crate) fn matrix_of(ring: &Arc<CoxRing>, target: &FreeModule, vectors: &[Vector]) -> Result<GradedMatrix> {
    let twists: Vec<Multidegree> = vectors
        .iter()
        .map(|v| vector_degree(ring, v, 0, &target.twists))
        .collect();
    let cols = vectors
        .iter()
        .map(|v| vector_column(ring, v, 0, target.rank()))
        .collect();
    GradedMatrix::from_columns(ring, FreeModule::new(twists), target.clone(), cols)
}

/// Minimal generators of the kernel, as the columns of a map into the source.
pub fn syzygies(m: &GradedMatrix) -> Result<GradedMatrix> {
    let ring = m.ring();
    if m.cols() == 0 {
        return Ok(GradedMatrix::zero(ring, FreeModule::zero(), m.source().clone()));
    }
    let aug = Augmented::new(m)?;
    let gens = minimal_columns(ring, m.source(), aug.kernel())?;
    matrix_of(ring, m.source(), &gens)
}

/// Solves `m * x = c` for a column `c`.
pub fn lift(m: &GradedMatrix, c: &[Poly]) -> Result<Option<Vec<Poly>>> {
    if c.len() != m.rows() {
        return Err(Error::Shape("column length differs from the row count".into()));
    }
    Ok(Augmented::new(m)?.lift(c))
}
