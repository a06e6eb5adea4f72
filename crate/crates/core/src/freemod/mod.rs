//! Graded free modules, homogeneous matrices between them, bounded free
//! complexes and presentations.

mod build;
mod minors;
mod resolve;
mod syz;

pub use build::{direct_sum, koszul, taylor, truncate_length, twist, zero_maps};
pub use minors::{max_minors, minors_ideal, rank, rank_and_max_minors};
pub use resolve::{homology_presentation, minimal_free_resolution, prune, truncate_degree, vres_of_pair};
pub use syz::{lift, minimal_columns, syzygies};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coxring::{CoxRing, Multidegree};
use crate::error::{Error, Result};
use crate::gb::{ModuleRing, Term, Vector};
use crate::limits::MAX_MATRIX_DIM;
use crate::poly::Poly;

/// `⊕ S(-a_j)`, stored as the list of the `a_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct FreeModule {
    pub twists: Vec<Multidegree>,
}

impl FreeModule {
    pub fn new(twists: Vec<Multidegree>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        FreeModule { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Twists sorted, for comparing graded ranks as multisets.
    pub fn sorted_twists(&self) -> Vec<Multidegree> {
        let mut t = self.twists.clone();
        t.sort();
        t
    }
}

/// A homogeneous map `source -> target`; entry `(i, j)` is zero or has
/// degree `source[j] - target[i]`.
#[derive(Clone, Debug)]
pub struct GradedMatrix {
    ring: Arc<CoxRing>,
    source: FreeModule,
    target: FreeModule,
    entries: Vec<Vec<Poly>>,
}

impl PartialEq for GradedMatrix {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring
            && self.source == other.source
            && self.target == other.target
            && self.entries == other.entries
    }
}

impl GradedMatrix {
    pub fn new(ring: &Arc<CoxRing>, source: FreeModule, target: FreeModule, entries: Vec<Vec<Poly>>) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|row| row.len() != source.rank()) {
            return Err(Error::Shape(format!(
                "matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        let m = GradedMatrix {
            ring: ring.clone(),
            source,
            target,
            entries,
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds from columns, which must be homogeneous of the source degrees.
    pub fn from_columns(
        ring: &Arc<CoxRing>,
        source: FreeModule,
        target: FreeModule,
        cols: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        let rows = target.rank();
        let mut entries = vec![Vec::with_capacity(cols.len()); rows];
        for col in cols {
            if col.len() != rows {
                return Err(Error::Shape(format!("column of length {} for {rows} rows", col.len())));
            }
            for (i, e) in col.into_iter().enumerate() {
                entries[i].push(e);
            }
        }
        GradedMatrix::new(ring, source, target, entries)
    }

    pub fn zero(ring: &Arc<CoxRing>, source: FreeModule, target: FreeModule) -> Self {
        let entries = vec![vec![Poly::zero(); source.rank()]; target.rank()];
        GradedMatrix {
            ring: ring.clone(),
            source,
            target,
            entries,
        }
    }

    pub fn identity(ring: &Arc<CoxRing>, module: FreeModule) -> Self {
        let n = module.rank();
        let mut entries = vec![vec![Poly::zero(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = ring.polys().one();
        }
        GradedMatrix {
            ring: ring.clone(),
            source: module.clone(),
            target: module,
            entries,
        }
    }

    fn validate(&self) -> Result<()> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let expected = self.source.twists[j].sub(&self.target.twists[i]);
                let found = match self.ring.multidegree_of(e) {
                    Ok(d) => d.to_string(),
                    Err(_) => "inhomogeneous".to_string(),
                };
                if found != expected.to_string() {
                    return Err(Error::Inhomogeneous {
                        row: i + 1,
                        col: j + 1,
                        found,
                        expected: expected.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<CoxRing> {
        &self.ring
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> GradedMatrix {
        let neg = |m: &FreeModule| FreeModule::new(m.twists.iter().map(Multidegree::neg).collect());
        let entries = (0..self.cols()).map(|j| self.column(j)).collect();
        GradedMatrix {
            ring: self.ring.clone(),
            source: neg(&self.target),
            target: neg(&self.source),
            entries,
        }
    }

    /// `self * other`, i.e. `other` applied first.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.source != other.target {
            return Err(Error::Shape("source and target modules differ".into()));
        }
        let polys = self.ring.polys();
        let mut entries = vec![vec![Poly::zero(); other.cols()]; self.rows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = Poly::zero();
                for k in 0..self.cols() {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = polys.add(&acc, &polys.mul(a, b));
                    }
                }
                *out = acc;
            }
        }
        Ok(GradedMatrix {
            ring: self.ring.clone(),
            source: other.source.clone(),
            target: self.target.clone(),
            entries,
        })
    }

    /// Keeps the listed rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            source: FreeModule::new(cols.iter().map(|&j| self.source.twists[j].clone()).collect()),
            target: FreeModule::new(rows.iter().map(|&i| self.target.twists[i].clone()).collect()),
            entries: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    pub(crate) fn check_size(&self) -> Result<()> {
        if self.rows() > MAX_MATRIX_DIM || self.cols() > MAX_MATRIX_DIM {
            return Err(Error::ResourceLimit(format!(
                "{}x{} matrix exceeds the {MAX_MATRIX_DIM}x{MAX_MATRIX_DIM} cap",
                self.rows(),
                self.cols()
            )));
        }
        Ok(())
    }

    /// Weighted degree shifts of a free module, as module-order shifts.
    pub(crate) fn shifts(ring: &CoxRing, m: &FreeModule) -> Vec<i64> {
        m.twists.iter().map(|t| ring.weight_of(t)).collect()
    }

    /// Column `j` as a vector with positions starting at `offset`.
    pub(crate) fn column_vector(&self, mring: &ModuleRing, j: usize, offset: u32) -> Vector {
        poly_column_vector(mring, &self.column(j), offset)
    }

    pub fn format_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| self.ring.format(e)).collect())
            .collect()
    }
}

pub(crate) fn poly_column_vector(mring: &ModuleRing, col: &[Poly], offset: u32) -> Vector {
    mring.from_terms(col.iter().enumerate().flat_map(|(i, p)| {
        p.terms().iter().map(move |&(mono, c)| {
            (
                Term {
                    mono,
                    pos: offset + i as u32,
                },
                c,
            )
        })
    }))
}

/// Positions `offset..offset+len` of a vector as a column of polynomials.
pub(crate) fn vector_column(ring: &CoxRing, v: &Vector, offset: u32, len: usize) -> Vec<Poly> {
    let mut parts: Vec<Vec<_>> = vec![Vec::new(); len];
    for (t, c) in v.terms() {
        if t.pos >= offset && ((t.pos - offset) as usize) < len {
            parts[(t.pos - offset) as usize].push((t.mono, *c));
        }
    }
    parts.into_iter().map(|p| ring.polys().from_terms(p)).collect()
}

/// Multidegree of a homogeneous vector in a free module with the given twists.
pub(crate) fn vector_degree(ring: &CoxRing, v: &Vector, offset: u32, twists: &[Multidegree]) -> Multidegree {
    let (t, _) = v.leading().expect("nonzero vector");
    ring.monomial_degree(&t.mono).add(&twists[(t.pos - offset) as usize])
}

/// A bounded complex `F_n -> ... -> F_1 -> F_0`; `maps[i]` is the
/// differential `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Arc<CoxRing>,
    modules: Vec<FreeModule>,
    maps: Vec<GradedMatrix>,
}

impl PartialEq for FreeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.modules == other.modules && self.maps == other.maps
    }
}

impl FreeComplex {
    /// Validates shapes and that consecutive differentials compose to zero.
    pub fn new(ring: &Arc<CoxRing>, maps: Vec<GradedMatrix>) -> Result<Self> {
        Self::with_base(ring, None, maps)
    }

    /// Like [`FreeComplex::new`] but with `F_0` given explicitly, which
    /// allows the complex of length zero.
    pub fn with_base(ring: &Arc<CoxRing>, base: Option<FreeModule>, maps: Vec<GradedMatrix>) -> Result<Self> {
        let mut modules = Vec::with_capacity(maps.len() + 1);
        match (base, maps.first()) {
            (Some(b), Some(m)) if b != *m.target() => {
                return Err(Error::Shape("F_0 differs from the target of the first map".into()))
            }
            (Some(b), _) => modules.push(b),
            (None, Some(m)) => modules.push(m.target().clone()),
            (None, None) => modules.push(FreeModule::zero()),
        }
        for (i, m) in maps.iter().enumerate() {
            if *m.ring() != *ring {
                return Err(Error::RingMismatch);
            }
            if *m.target() != modules[i] {
                return Err(Error::Shape(format!(
                    "the differential out of F_{} does not land in F_{i}",
                    i + 1
                )));
            }
            modules.push(m.source().clone());
        }
        let c = FreeComplex {
            ring: ring.clone(),
            modules,
            maps,
        };
        c.check_compositions()?;
        Ok(c)
    }

    pub(crate) fn from_parts(ring: &Arc<CoxRing>, modules: Vec<FreeModule>, maps: Vec<GradedMatrix>) -> Self {
        FreeComplex {
            ring: ring.clone(),
            modules,
            maps,
        }
    }

    fn check_compositions(&self) -> Result<()> {
        for i in 1..self.maps.len() {
            let prod = self.maps[i - 1].compose(&self.maps[i])?;
            for (r, row) in prod.entries.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        return Err(Error::NotAComplex {
                            index: i,
                            row: r + 1,
                            col: c + 1,
                            witness: self.ring.format(e),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<CoxRing> {
        &self.ring
    }

    /// Number of differentials.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn module(&self, i: usize) -> &FreeModule {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    /// The differential `phi_i: F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &GradedMatrix {
        &self.maps[i - 1]
    }

    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }
}

/// `target <- source` presenting the cokernel.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub matrix: GradedMatrix,
}

impl Presentation {
    pub fn new(matrix: GradedMatrix) -> Self {
        Presentation { matrix }
    }

    /// `S / I` presented by the generators of `I`.
    pub fn cyclic(ideal: &crate::Ideal) -> Result<Presentation> {
        let ring = ideal.ring();
        let zero = Multidegree::zero(ring.pic_rank());
        let gens: Vec<Poly> = ideal.generators().to_vec();
        let source = FreeModule::new(
            gens.iter()
                .map(|g| ring.multidegree_of(g))
                .collect::<Result<Vec<_>>>()?,
        );
        let m = GradedMatrix::new(ring, source, FreeModule::new(vec![zero]), vec![gens])?;
        Ok(Presentation { matrix: m })
    }

    /// The free module `G` with no relations.
    pub fn free(ring: &Arc<CoxRing>, module: FreeModule) -> Presentation {
        Presentation {
            matrix: GradedMatrix::zero(ring, FreeModule::zero(), module),
        }
    }

    pub fn ring(&self) -> &Arc<CoxRing> {
        self.matrix.ring()
    }

    /// Number of generators of the presented module.
    pub fn generators(&self) -> usize {
        self.matrix.rows()
    }
}
