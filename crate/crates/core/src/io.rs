//! Text and JSON input formats.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coxring::{CoxRing, Multidegree, RingDescriptor};
use crate::error::{Error, Result};
use crate::freemod::{FreeComplex, FreeModule, GradedMatrix, Presentation};
use crate::ideal::Ideal;
use crate::limits::MAX_MATRIX_DIM;
use crate::poly::Poly;

pub fn ring_from_json(text: &str) -> Result<Arc<CoxRing>> {
    let desc: RingDescriptor = serde_json::from_str(text)?;
    CoxRing::from_descriptor(&desc)
}

pub fn read_ring(path: &Path) -> Result<Arc<CoxRing>> {
    ring_from_json(&std::fs::read_to_string(path)?)
}

/// One polynomial per line; blank lines and `#` comments are skipped.
pub fn ideal_from_text(ring: &Arc<CoxRing>, text: &str) -> Result<Ideal> {
    let gens = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(k, l)| ring.parse(l).map_err(|e| Error::Parse(format!("line {k}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

pub fn read_ideal(ring: &Arc<CoxRing>, path: &Path) -> Result<Ideal> {
    ideal_from_text(ring, &std::fs::read_to_string(path)?)
}

/// On-disk complex: `maps[i]` is the row-major matrix of `φ_{i+1}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDescriptor>,
    pub modules: Vec<FreeModule>,
    #[serde(default)]
    pub maps: Vec<Vec<Vec<String>>>,
}

/// On-disk presentation `source -> target`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDescriptor>,
    pub source: Vec<Multidegree>,
    pub target: Vec<Multidegree>,
    pub matrix: Vec<Vec<String>>,
}

/// The explicit ring if given, else the one embedded in the file.
fn choose_ring(explicit: Option<&Arc<CoxRing>>, embedded: Option<&RingDescriptor>) -> Result<Arc<CoxRing>> {
    match (explicit, embedded) {
        (Some(r), _) => Ok(r.clone()),
        (None, Some(d)) => CoxRing::from_descriptor(d),
        (None, None) => Err(Error::Parse("no ring given and none embedded in the file".into())),
    }
}

fn parse_matrix(
    ring: &Arc<CoxRing>,
    what: &str,
    source: FreeModule,
    target: FreeModule,
    rows: &[Vec<String>],
) -> Result<GradedMatrix> {
    if source.rank() > MAX_MATRIX_DIM || target.rank() > MAX_MATRIX_DIM {
        return Err(Error::ResourceLimit(format!(
            "{what}: {}x{} exceeds the {MAX_MATRIX_DIM}x{MAX_MATRIX_DIM} cap",
            target.rank(),
            source.rank()
        )));
    }
    if rows.len() != target.rank() {
        return Err(Error::Shape(format!(
            "{what}: {} rows, expected {}",
            rows.len(),
            target.rank()
        )));
    }
    let mut entries: Vec<Vec<Poly>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != source.rank() {
            return Err(Error::Shape(format!(
                "{what}: row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                source.rank()
            )));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                ring.parse(s)
                    .map_err(|e| Error::Parse(format!("{what}: entry ({},{}): {e}", i + 1, j + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(parsed);
    }
    GradedMatrix::new(ring, source, target, entries)
}

pub fn complex_from_json(ring: Option<&Arc<CoxRing>>, text: &str) -> Result<FreeComplex> {
    let file: ComplexFile = serde_json::from_str(text)?;
    let ring = choose_ring(ring, file.ring.as_ref())?;
    if file.modules.len() != file.maps.len() + 1 {
        return Err(Error::Shape(format!(
            "{} modules for {} maps",
            file.modules.len(),
            file.maps.len()
        )));
    }
    for m in &file.modules {
        if let Some(d) = m.twists.iter().find(|d| d.rank() != ring.pic_rank()) {
            return Err(Error::Shape(format!("twist {d} has the wrong rank")));
        }
    }
    let maps = file
        .maps
        .iter()
        .enumerate()
        .map(|(i, rows)| {
            parse_matrix(
                &ring,
                &format!("map {}", i + 1),
                file.modules[i + 1].clone(),
                file.modules[i].clone(),
                rows,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::with_base(&ring, Some(file.modules[0].clone()), maps)
}

pub fn read_complex(ring: Option<&Arc<CoxRing>>, path: &Path) -> Result<FreeComplex> {
    complex_from_json(ring, &std::fs::read_to_string(path)?)
}

pub fn complex_to_file(f: &FreeComplex, embed_ring: bool) -> ComplexFile {
    let ring = f.ring();
    ComplexFile {
        ring: embed_ring.then(|| ring.descriptor()),
        modules: f.modules().to_vec(),
        maps: f.maps().iter().map(|m| m.format_rows()).collect(),
    }
}

pub fn presentation_from_json(ring: Option<&Arc<CoxRing>>, text: &str) -> Result<Presentation> {
    let file: PresentationFile = serde_json::from_str(text)?;
    let ring = choose_ring(ring, file.ring.as_ref())?;
    if let Some(d) = file
        .source
        .iter()
        .chain(&file.target)
        .find(|d| d.rank() != ring.pic_rank())
    {
        return Err(Error::Shape(format!("twist {d} has the wrong rank")));
    }
    let m = parse_matrix(
        &ring,
        "matrix",
        FreeModule::new(file.source),
        FreeModule::new(file.target),
        &file.matrix,
    )?;
    Ok(Presentation::new(m))
}

pub fn read_presentation(ring: Option<&Arc<CoxRing>>, path: &Path) -> Result<Presentation> {
    presentation_from_json(ring, &std::fs::read_to_string(path)?)
}

pub fn presentation_to_file(p: &Presentation, embed_ring: bool) -> PresentationFile {
    let m = &p.matrix;
    PresentationFile {
        ring: embed_ring.then(|| p.ring().descriptor()),
        source: m.source().twists.clone(),
        target: m.target().twists.clone(),
        matrix: m.format_rows(),
    }
}
