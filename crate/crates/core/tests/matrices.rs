mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use virtua::coxring::{CoxRing, Multidegree};
use virtua::freemod::{self, FreeModule, GradedMatrix};
use virtua::poly::Poly;
use virtua::Error;

fn md(v: &[i32]) -> Multidegree {
    Multidegree(v.to_vec())
}

fn module(ts: &[&[i32]]) -> FreeModule {
    FreeModule::new(ts.iter().map(|t| md(t)).collect())
}

fn matrix(r: &Arc<CoxRing>, source: &[&[i32]], target: &[&[i32]], rows: &[&[&str]]) -> GradedMatrix {
    let entries = rows
        .iter()
        .map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect())
        .collect();
    GradedMatrix::new(r, module(source), module(target), entries).unwrap()
}

fn three_point_matrix(r: &Arc<CoxRing>) -> GradedMatrix {
    matrix(
        r,
        &[&[2, 1], &[1, 2]],
        &[&[2, 0], &[1, 1], &[0, 2]],
        &[&["-y0", "0"], &["x1", "-y1"], &["0", "x0"]],
    )
}

#[test]
fn minors_examples() {
    let r = ring("p1p1.json");
    let row = matrix(&r, &[&[1, 0], &[0, 1]], &[&[0, 0]], &[&["x0", "y0"]]);
    assert!(freemod::minors_ideal(1, &row)
        .unwrap()
        .equals(&gens(&r, &["x0", "y0"]))
        .unwrap());
    let id = GradedMatrix::identity(&r, module(&[&[0, 0], &[0, 0]]));
    assert!(freemod::minors_ideal(2, &id).unwrap().is_unit().unwrap());
    assert!(freemod::minors_ideal(0, &row).unwrap().is_unit().unwrap());
    assert!(freemod::minors_ideal(-1, &row).unwrap().is_unit().unwrap());
    assert!(freemod::minors_ideal(2, &row).unwrap().is_zero());

    let m = three_point_matrix(&r);
    let i2 = freemod::minors_ideal(2, &m).unwrap();
    assert!(i2.equals(&ideal(&r, "three_points.txt")).unwrap());
}

#[test]
fn rank_examples() {
    let r = ring("p1p1.json");
    let z = GradedMatrix::zero(&r, module(&[&[0, 0], &[0, 0], &[0, 0]]), module(&[&[0, 0], &[0, 0]]));
    assert_eq!(freemod::rank(&z).unwrap(), 0);
    assert!(freemod::max_minors(&z).unwrap().is_unit().unwrap());
    let id = GradedMatrix::identity(&r, module(&[&[0, 0], &[1, 0]]));
    assert_eq!(freemod::rank(&id).unwrap(), 2);
    assert!(freemod::max_minors(&id).unwrap().is_unit().unwrap());
    assert_eq!(freemod::rank(&three_point_matrix(&r)).unwrap(), 2);
}

#[test]
fn koszul_map_minors() {
    let r = ring("p1.json");
    let col = matrix(&r, &[&[2]], &[&[1], &[1]], &[&["x1"], &["-x0"]]);
    assert_eq!(freemod::rank(&col).unwrap(), 1);
    assert!(freemod::max_minors(&col)
        .unwrap()
        .equals(&gens(&r, &["x0", "x1"]))
        .unwrap());
}

#[test]
fn inhomogeneous_entry_is_reported() {
    let r = ring("p1p2.json");
    let entries = vec![vec![r.parse("x0*y1").unwrap()]];
    let err = GradedMatrix::new(&r, module(&[&[0, 2]]), module(&[&[0, 0]]), entries).unwrap_err();
    assert_eq!(err.to_string(), "entry (1,1): degree (1,1), expected (0,2)");
}

#[test]
fn composition_is_checked() {
    let r = ring("p1.json");
    let a = matrix(&r, &[&[1]], &[&[0]], &[&["x0"]]);
    let b = matrix(&r, &[&[2]], &[&[1]], &[&["x1"]]);
    match virtua::freemod::FreeComplex::new(&r, vec![a, b]) {
        Err(Error::NotAComplex {
            index,
            row,
            col,
            witness,
        }) => {
            assert_eq!((index, row, col), (1, 1, 1));
            assert_eq!(witness, "x0*x1");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn syzygy_examples() {
    let r = ring("p1p1.json");
    let row = matrix(&r, &[&[1, 0], &[1, 0]], &[&[0, 0]], &[&["x0", "x1"]]);
    let s = freemod::syzygies(&row).unwrap();
    assert_eq!(s.cols(), 1);
    let col = s.column(0);
    let polys = r.polys();
    // spans the same line as (-x1, x0)
    let expected = [r.parse("-x1").unwrap(), r.parse("x0").unwrap()];
    let c = col[1].leading().unwrap().1;
    assert_eq!(col[0], polys.scale(&expected[0], c));
    assert_eq!(col[1], polys.scale(&expected[1], c));

    let id = GradedMatrix::identity(&r, module(&[&[0, 0], &[0, 0]]));
    assert_eq!(freemod::syzygies(&id).unwrap().cols(), 0);

    let m = matrix(&r, &[&[1, 1], &[1, 1]], &[&[0, 0]], &[&["x0*y1-x1*y0", "x0*y0"]]);
    let s = freemod::syzygies(&m).unwrap();
    assert!(m.compose(&s).unwrap().is_zero());
    // the obvious syzygy lies in the span of the computed ones
    let v = vec![r.parse("-x0*y0").unwrap(), r.parse("x0*y1-x1*y0").unwrap()];
    assert!(freemod::lift(&s, &v).unwrap().is_some());
    // completeness: kernel dimension by linear algebra in each degree up to (3,3)
    for d in degrees_up_to(&[3, 3]) {
        assert_eq!(kernel_dim(&r, &m, &d), image_dim(&r, &s, &d), "degree {d}");
    }
}

/// Dimension of the degree-`d` part of `ker m`, by linear algebra.
fn kernel_dim(r: &CoxRing, m: &GradedMatrix, d: &Multidegree) -> usize {
    let source_basis: Vec<(usize, virtua::monomial::Monomial)> = m
        .source()
        .twists
        .iter()
        .enumerate()
        .flat_map(|(j, a)| monomials_of_degree(r, &d.sub(a)).into_iter().map(move |mo| (j, mo)))
        .collect();
    let polys = r.polys();
    let images: Vec<Vec<Poly>> = source_basis
        .iter()
        .map(|(j, mo)| m.column(*j).iter().map(|e| polys.mul_term(e, mo, 1)).collect())
        .collect();
    let rows = flatten(r, m.target(), d, &images);
    source_basis.len() - rank(r.field(), &rows)
}

fn image_dim(r: &CoxRing, s: &GradedMatrix, d: &Multidegree) -> usize {
    let polys = r.polys();
    let mut images = Vec::new();
    for (j, a) in s.source().twists.iter().enumerate() {
        for mo in monomials_of_degree(r, &d.sub(a)) {
            images.push(s.column(j).iter().map(|e| polys.mul_term(e, &mo, 1)).collect());
        }
    }
    rank(r.field(), &flatten(r, s.target(), d, &images))
}

fn flatten(r: &CoxRing, target: &FreeModule, d: &Multidegree, vecs: &[Vec<Poly>]) -> Vec<Vec<u32>> {
    let bases: Vec<_> = target
        .twists
        .iter()
        .map(|b| monomials_of_degree(r, &d.sub(b)))
        .collect();
    vecs.iter()
        .map(|v| {
            let mut row = Vec::new();
            for (k, p) in v.iter().enumerate() {
                let mut part = vec![0; bases[k].len()];
                for (mo, c) in p.terms() {
                    part[bases[k].binary_search(mo).unwrap()] = *c;
                }
                row.extend(part);
            }
            row
        })
        .collect()
}

fn arb_matrix() -> impl Strategy<Value = (Vec<Vec<(u8, u8)>>, u64)> {
    // entries: (monomial choice, coefficient) on a 3x3 matrix of linear forms
    (
        proptest::collection::vec(proptest::collection::vec((0u8..5, 0u8..5), 3), 3),
        any::<u64>(),
    )
}

fn linear_matrix(r: &Arc<CoxRing>, shape: &[Vec<(u8, u8)>]) -> GradedMatrix {
    let polys = r.polys();
    let entries: Vec<Vec<Poly>> = shape
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(v, c)| {
                    if v == 4 || c == 0 {
                        Poly::zero()
                    } else {
                        polys.scale(&r.var(v as usize % 2), c as u32)
                    }
                })
                .collect()
        })
        .collect();
    GradedMatrix::new(r, module(&[&[1], &[1], &[1]]), module(&[&[0], &[0], &[0]]), entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_invariant_under_transpose_and_seed((shape, seed) in arb_matrix()) {
        let r = ring("p1.json").with_seed(seed);
        let m = linear_matrix(&r, &shape);
        let k = freemod::rank(&m).unwrap();
        prop_assert_eq!(k, freemod::rank(&m.transpose()).unwrap());
        // exact: largest k with a nonzero k-minor
        prop_assert!(k == 0 || !freemod::minors_ideal(k as i64, &m).unwrap().is_zero());
        prop_assert!(freemod::minors_ideal(k as i64 + 1, &m).unwrap().is_zero());
    }

    #[test]
    fn rank_is_invariant_under_row_operations((shape, seed) in arb_matrix(), c in 1u32..100) {
        let r = ring("p1.json").with_seed(seed);
        let m = linear_matrix(&r, &shape);
        let polys = r.polys();
        let mut rows: Vec<Vec<Poly>> = m.entries().to_vec();
        let added: Vec<Poly> = rows[0].iter().zip(&rows[1]).map(|(a, b)| polys.add(a, &polys.scale(b, c))).collect();
        rows[0] = added;
        let m2 = GradedMatrix::new(&r, m.source().clone(), m.target().clone(), rows).unwrap();
        prop_assert_eq!(freemod::rank(&m).unwrap(), freemod::rank(&m2).unwrap());
    }

    #[test]
    fn minors_descend((shape, _seed) in arb_matrix()) {
        let r = ring("p1.json");
        let m = linear_matrix(&r, &shape);
        for k in 1..3 {
            let lower = freemod::minors_ideal(k, &m).unwrap();
            let upper = freemod::minors_ideal(k + 1, &m).unwrap();
            prop_assert!(lower.contains_ideal(&upper).unwrap());
        }
    }
}
