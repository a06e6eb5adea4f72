use super::syz::{matrix_of, minimal_columns, module_ring, Augmented};
use super::{poly_column_vector, syzygies, FreeComplex, FreeModule, Presentation};
use crate::coxring::Multidegree;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Minimal presentation of the same module: unit entries are eliminated
/// together with their row and column, then redundant relations dropped.
pub fn prune(p: &Presentation) -> Result<Presentation> {
    let m = &p.matrix;
    let ring = m.ring();
    let polys = ring.polys();
    let field = ring.field();
    let mut target = m.target().twists.clone();
    let mut source = m.source().twists.clone();
    let mut cols: Vec<Vec<Poly>> = (0..m.cols()).map(|j| m.column(j)).collect();

    loop {
        let unit = (0..target.len())
            .flat_map(|i| (0..cols.len()).map(move |j| (i, j)))
            .find(|&(i, j)| cols[j][i].is_unit());
        let Some((i, j)) = unit else { break };
        let inv = field.inv(cols[j][i].constant_value().expect("unit"))?;
        let pivot = cols.remove(j);
        source.remove(j);
        for col in cols.iter_mut() {
            if col[i].is_zero() {
                continue;
            }
            let factor = polys.scale(&col[i], inv);
            for (e, q) in col.iter_mut().zip(&pivot) {
                if !q.is_zero() {
                    *e = polys.sub(e, &polys.mul(&factor, q));
                }
            }
            debug_assert!(col[i].is_zero());
        }
        for col in cols.iter_mut() {
            col.remove(i);
        }
        target.remove(i);
    }

    let target = FreeModule::new(target);
    let mring = module_ring(ring, &target);
    let vectors = cols.iter().map(|c| poly_column_vector(&mring, c, 0)).collect();
    let kept = minimal_columns(ring, &target, vectors)?;
    Ok(Presentation::new(matrix_of(ring, &target, &kept)?))
}

/// Minimal graded free resolution of the cokernel, by iterated minimal
/// syzygies. Fails with the computed prefix if longer than `maxlen`.
pub fn minimal_free_resolution(p: &Presentation, maxlen: usize) -> Result<FreeComplex> {
    let ring = p.ring().clone();
    let first = prune(p)?.matrix;
    let mut modules = vec![first.target().clone()];
    let mut maps = Vec::new();
    if first.cols() > 0 {
        modules.push(first.source().clone());
        maps.push(first);
    }
    while let Some(last) = maps.last() {
        let next = syzygies(last)?;
        if next.cols() == 0 {
            break;
        }
        if maps.len() >= maxlen {
            return Err(Error::PartialResolution {
                maxlen,
                prefix: Box::new(FreeComplex::from_parts(&ring, modules, maps)),
            });
        }
        modules.push(next.source().clone());
        maps.push(next);
    }
    Ok(FreeComplex::from_parts(&ring, modules, maps))
}

/// A presentation of `H_i = ker(phi_i) / im(phi_{i+1})`.
pub fn homology_presentation(f: &FreeComplex, i: usize) -> Result<Presentation> {
    let ring = f.ring();
    if i == 0 || i > f.length() {
        return Err(Error::Shape(format!("homology index {i} outside 1..={}", f.length())));
    }
    let phi = f.differential(i);
    let cycles = syzygies(phi)?;
    if cycles.cols() == 0 {
        return Ok(Presentation::free(ring, FreeModule::zero()));
    }
    let aug = Augmented::new(&cycles)?;
    let gens = cycles.source().clone();
    let mring = module_ring(ring, &gens);
    let mut relations = aug.kernel();
    if i < f.length() {
        let next = f.differential(i + 1);
        for j in 0..next.cols() {
            let col = next.column(j);
            let Some(lam) = aug.lift(&col) else {
                let image = phi.compose(&next.submatrix(&(0..next.rows()).collect::<Vec<_>>(), &[j]))?;
                let row = (0..image.rows()).find(|&r| !image.entry(r, 0).is_zero()).unwrap_or(0);
                return Err(Error::NotAComplex {
                    index: i,
                    row: row + 1,
                    col: j + 1,
                    witness: ring.format(image.entry(row, 0)),
                });
            };
            relations.push(poly_column_vector(&mring, &lam, 0));
        }
    }
    let rel = matrix_of(ring, &gens, &minimal_columns(ring, &gens, relations)?)?;
    prune(&Presentation::new(rel))
}

/// The subcomplex on the summands `S(-a)` with `a <= d + (n_1, ..., n_k)`,
/// for a minimal resolution over a product of projective spaces. Trailing
/// zero modules are dropped.
pub fn vres_of_pair(r: &FreeComplex, d: &Multidegree) -> Result<FreeComplex> {
    let ring = r.ring();
    let dims = ring
        .product_dims()
        .ok_or_else(|| Error::Unsupported("virtual resolutions of pairs need a product of projective spaces".into()))?;
    if d.rank() != dims.len() {
        return Err(Error::Shape(format!("degree {d} has the wrong rank")));
    }
    let bound = d.add(&Multidegree(dims.iter().map(|&n| n as i32).collect()));
    truncate_degree(r, &bound)
}

/// The subcomplex on the summands `S(-a)` with `a <= bound`, provided the
/// differential maps kept summands into kept summands. Trailing zero
/// modules are dropped.
pub fn truncate_degree(r: &FreeComplex, bound: &Multidegree) -> Result<FreeComplex> {
    let ring = r.ring();
    let kept: Vec<Vec<usize>> = r
        .modules()
        .iter()
        .map(|m| (0..m.rank()).filter(|&k| m.twists[k].le(bound)).collect())
        .collect();
    let mut maps = Vec::new();
    for (i, phi) in r.maps().iter().enumerate() {
        // kept columns must not reach dropped rows
        for &j in &kept[i + 1] {
            for row in 0..phi.rows() {
                if !kept[i].contains(&row) && !phi.entry(row, j).is_zero() {
                    return Err(Error::PreconditionFailed(format!(
                        "summand {} of F_{} maps onto a dropped summand of F_{i}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        maps.push(phi.submatrix(&kept[i], &kept[i + 1]));
    }
    while maps.last().is_some_and(|m| m.cols() == 0) {
        maps.pop();
    }
    let base = FreeModule::new(kept[0].iter().map(|&k| r.module(0).twists[k].clone()).collect());
    FreeComplex::with_base(ring, Some(base), maps)
}
