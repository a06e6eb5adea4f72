#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use virtua::coxring::{CoxRing, Multidegree};
use virtua::field::{PrimeField, Scalar};
use virtua::io;
use virtua::monomial::Monomial;
use virtua::poly::Poly;
use virtua::Ideal;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn ring(name: &str) -> Arc<CoxRing> {
    io::read_ring(&fixture(name)).expect("ring fixture")
}

pub fn ideal(ring: &Arc<CoxRing>, name: &str) -> Ideal {
    io::read_ideal(ring, &fixture(name)).expect("ideal fixture")
}

pub fn gens(ring: &Arc<CoxRing>, src: &[&str]) -> Ideal {
    Ideal::parse(ring, src).expect("ideal")
}

/// All monomials of a given multidegree.
pub fn monomials_of_degree(ring: &CoxRing, d: &Multidegree) -> Vec<Monomial> {
    let target = ring.weight_of(d);
    let mut out = Vec::new();
    if target < 0 {
        return out;
    }
    let n = ring.nvars();
    let mut exps = vec![0u16; n];
    fn walk(ring: &CoxRing, d: &Multidegree, i: usize, left: i64, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == exps.len() {
            if left == 0 {
                let m = Monomial::from_exponents(exps);
                if ring.monomial_degree(&m) == *d {
                    out.push(m);
                }
            }
            return;
        }
        let w = ring.weights()[i] as i64;
        let mut e = 0;
        while e * w <= left {
            exps[i] = e as u16;
            walk(ring, d, i + 1, left - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    walk(ring, d, 0, target, &mut exps, &mut out);
    out.sort();
    out
}

fn coords(basis: &[Monomial], f: &Poly) -> Vec<Scalar> {
    let mut row = vec![0; basis.len()];
    for (m, c) in f.terms() {
        let k = basis.binary_search(m).expect("term of the right degree");
        row[k] = *c;
    }
    row
}

/// Rows spanning the degree-`d` part of the ideal generated by `gens`.
pub fn degree_span(ring: &CoxRing, gens: &[Poly], d: &Multidegree) -> Vec<Vec<Scalar>> {
    let basis = monomials_of_degree(ring, d);
    let polys = ring.polys();
    let mut rows = Vec::new();
    for g in gens {
        let e = ring.multidegree_of(g).expect("homogeneous");
        for m in monomials_of_degree(ring, &d.sub(&e)) {
            rows.push(coords(&basis, &polys.mul_term(g, &m, 1)));
        }
    }
    rows
}

pub fn rank(field: &PrimeField, rows: &[Vec<Scalar>]) -> usize {
    let mut rows: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(rows[r][c]).unwrap();
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(f, *y));
                }
            }
        }
        r += 1;
    }
    r
}

/// Membership of a homogeneous `f` in the ideal, by linear algebra in its degree.
pub fn in_span(ring: &CoxRing, gens: &[Poly], f: &Poly) -> bool {
    if f.is_zero() {
        return true;
    }
    let d = ring.multidegree_of(f).expect("homogeneous");
    let basis = monomials_of_degree(ring, &d);
    let mut rows = degree_span(ring, gens, &d);
    let before = rank(ring.field(), &rows);
    rows.push(coords(&basis, f));
    rank(ring.field(), &rows) == before
}

/// Dimension of the degree-`d` part of the ideal.
pub fn span_dim(ring: &CoxRing, gens: &[Poly], d: &Multidegree) -> usize {
    rank(ring.field(), &degree_span(ring, gens, d))
}

/// Every multidegree with components in `0..=bound[j]`.
pub fn degrees_up_to(bound: &[i32]) -> Vec<Multidegree> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (0..=b).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Multidegree).collect()
}

/// Degree-by-degree equality of two ideals up to a bound.
pub fn same_up_to(ring: &CoxRing, a: &[Poly], b: &[Poly], bound: &[i32]) -> bool {
    degrees_up_to(bound).iter().all(|d| {
        let mut both = degree_span(ring, a, d);
        let ra = rank(ring.field(), &both);
        let rb = span_dim(ring, b, d);
        both.extend(degree_span(ring, b, d));
        ra == rb && rank(ring.field(), &both) == ra
    })
}

/// Alternating sum of the graded pieces of a complex in degree `d`.
pub fn euler_sum(ring: &CoxRing, twists: &[Vec<Multidegree>], d: &Multidegree) -> i64 {
    twists
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let s: i64 = m
                .iter()
                .map(|a| monomials_of_degree(ring, &d.sub(a)).len() as i64)
                .sum();
            if i % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum()
}

/// `dim (S/I)_d` by linear algebra.
pub fn quotient_dim(ring: &CoxRing, gens: &[Poly], d: &Multidegree) -> i64 {
    monomials_of_degree(ring, d).len() as i64 - span_dim(ring, gens, d) as i64
}

pub fn degrees(v: &[&[i32]]) -> virtua::freemod::FreeModule {
    virtua::freemod::FreeModule::new(v.iter().map(|d| Multidegree(d.to_vec())).collect())
}

/// A graded matrix from row-major entry strings.
pub fn matrix(
    ring: &Arc<CoxRing>,
    source: &[&[i32]],
    target: &[&[i32]],
    rows: &[&[&str]],
) -> virtua::freemod::GradedMatrix {
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|s| ring.parse(s).expect("entry")).collect())
        .collect();
    virtua::freemod::GradedMatrix::new(ring, degrees(source), degrees(target), entries).expect("matrix")
}
