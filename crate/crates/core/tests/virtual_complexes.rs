mod common;

use std::sync::Arc;

use common::*;
use virtua::coxring::{CoxRing, Multidegree};
use virtua::freemod::{self, FreeComplex, FreeModule, GradedMatrix, Presentation};
use virtua::virtuality::{
    check_pn_collapse, check_two_term, check_virtual, check_virtual_with_oracle, oracle_is_virtual,
};
use virtua::{Depth, Error};

fn md(v: &[i32]) -> Multidegree {
    Multidegree(v.to_vec())
}

fn paper_vres() -> FreeComplex {
    let r = ring("p1p2.json");
    let i = ideal(&r, "four_points.txt");
    let res = freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 10).unwrap();
    freemod::vres_of_pair(&res, &md(&[1, 1])).unwrap()
}

fn koszul_p1() -> (Arc<CoxRing>, FreeComplex) {
    let r = ring("p1.json");
    let k = freemod::koszul(&r, &[r.var(0), r.var(1)]).unwrap();
    (r, k)
}

fn zero_differential(r: &Arc<CoxRing>) -> FreeComplex {
    let s = FreeModule::new(vec![Multidegree::zero(r.pic_rank())]);
    freemod::zero_maps(r, vec![s.clone(), s]).unwrap()
}

#[test]
fn paper_complex_is_virtual_but_not_exact() {
    let v = paper_vres();
    let b = v.ring().irrelevant();
    let report = check_virtual(&v, &b).unwrap();
    assert!(report.verdict_theorem);
    assert!(!report.exactness_note);
    let depths: Vec<Depth> = report.records.iter().map(|r| r.depth).collect();
    assert_eq!(depths, [Depth::Finite(3), Depth::Finite(2), Depth::Finite(2)]);
    assert_eq!(report.records[2].depth_saturated, Depth::Finite(3));
    for rec in &report.records {
        assert!(rec.depth_saturated >= rec.depth);
    }

    let oracle = oracle_is_virtual(&v, &b).unwrap();
    assert!(oracle.is_virtual);
    assert!(!oracle.is_exact);
    let c1 = &oracle.certificates[0];
    assert!(!c1.zero_module);
    assert_eq!(c1.components[0].in_radical, ["x0", "x1"]);
    assert!(c1.components[0].contained);
    // H_1 = S/<x0,x1>: one generator, Fitt_0 = <x0,x1>
    assert_eq!(c1.generators, 1);
    assert!(c1.fitt0.equals(&gens(v.ring(), &["x0", "x1"])).unwrap());
    assert!(oracle.certificates[1].torsion && oracle.certificates[2].torsion);
}

#[test]
fn koszul_complex_is_exact() {
    let (r, k) = koszul_p1();
    let report = check_virtual(&k, &r.irrelevant()).unwrap();
    assert!(report.verdict_theorem && report.exactness_note);
    let oracle = oracle_is_virtual(&k, &r.irrelevant()).unwrap();
    assert!(oracle.is_virtual && oracle.is_exact);
}

#[test]
fn zero_differential_fails() {
    let r = ring("p1.json");
    let z = zero_differential(&r);
    let report = check_virtual(&z, &r.irrelevant()).unwrap();
    assert!(!report.verdict_theorem);
    assert!(!report.records[0].condition_a);
    let oracle = oracle_is_virtual(&z, &r.irrelevant()).unwrap();
    assert!(!oracle.is_virtual);
    assert!(oracle.certificates[0].fitt0.is_zero());
    assert!(oracle.certificates[0].components[0].in_radical.is_empty());
}

#[test]
fn empty_complex_is_virtual() {
    let r = ring("p1.json");
    let f = FreeComplex::with_base(&r, Some(FreeModule::new(vec![md(&[0])])), vec![]).unwrap();
    assert!(check_virtual(&f, &r.irrelevant()).unwrap().verdict_theorem);
    assert!(oracle_is_virtual(&f, &r.irrelevant()).unwrap().is_virtual);
}

#[test]
fn truncated_resolution_of_the_irrelevant_ideal() {
    // S/B resolved over P1xP1, then cut after the first map
    let r = ring("p1p1.json");
    let entries = vec![["x0*y0", "x0*y1", "x1*y0", "x1*y1"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect()];
    let m = GradedMatrix::new(
        &r,
        FreeModule::new(vec![md(&[1, 1]); 4]),
        FreeModule::new(vec![md(&[0, 0])]),
        entries,
    )
    .unwrap();
    let res = freemod::minimal_free_resolution(&Presentation::new(m), 10).unwrap();
    let cut = freemod::truncate_length(&res, 1);
    let b = r.irrelevant();
    let report = check_virtual(&cut, &b).unwrap();
    let oracle = oracle_is_virtual(&cut, &b).unwrap();
    assert!(!report.verdict_theorem && !oracle.is_virtual);
    assert!(!report.records[0].condition_a);

    let full = check_virtual_with_oracle(&res, &b).unwrap();
    assert!(full.verdict_theorem && full.exactness_note);
    assert_eq!(full.verdict_oracle, Some(true));
}

#[test]
fn two_term_examples() {
    let (r, k) = koszul_p1();
    let b = r.irrelevant();
    let phi = k.differential(2);
    let psi = k.differential(1);
    assert!(check_two_term(phi, psi, &b).unwrap());

    let s = FreeModule::new(vec![md(&[0])]);
    let id = GradedMatrix::identity(&r, s.clone());
    assert!(!check_two_term(&id, &id, &b).unwrap());

    let to_zero = GradedMatrix::zero(&r, s.clone(), FreeModule::zero());
    assert!(check_two_term(psi, &to_zero, &b).unwrap());

    let x0 = GradedMatrix::new(&r, FreeModule::new(vec![md(&[1])]), s.clone(), vec![vec![r.var(0)]]).unwrap();
    let sq = GradedMatrix::new(
        &r,
        FreeModule::new(vec![md(&[2])]),
        FreeModule::new(vec![md(&[1])]),
        vec![vec![r.var(0)]],
    )
    .unwrap();
    assert!(matches!(
        check_two_term(&sq, &x0, &b),
        Err(Error::PreconditionFailed(_))
    ));
}

#[test]
fn projective_space_collapse() {
    let r = ring("p2.json");
    let k = freemod::koszul(&r, &[r.var(0), r.var(1), r.var(2)]).unwrap();
    assert!(check_pn_collapse(&k).unwrap());

    let p1 = ring("p1.json");
    let m = GradedMatrix::new(
        &p1,
        FreeModule::new(vec![md(&[2])]),
        FreeModule::new(vec![md(&[0])]),
        vec![vec![p1.parse("x0^2").unwrap()]],
    )
    .unwrap();
    let f = FreeComplex::new(&p1, vec![m]).unwrap();
    assert!(check_pn_collapse(&f).unwrap());
    assert!(check_pn_collapse(&zero_differential(&p1)).unwrap());

    assert!(matches!(check_pn_collapse(&paper_vres()), Err(Error::Unsupported(_))));
}

mod properties {
    use super::*;
    use proptest::prelude::*;
    use virtua::monomial::Monomial;
    use virtua::poly::Poly;
    use virtua::virtuality::torsion_certificate;

    const RINGS: [&str; 4] = ["p1.json", "p2.json", "p1p1.json", "p1p2.json"];

    fn monomials(r: &CoxRing, exps: &[Vec<u16>]) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for e in exps {
            let m = Monomial::from_exponents(&e[..r.nvars()]);
            let p = r.polys().term(m, 1);
            if !m.is_one() && !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    fn arb_complex() -> impl Strategy<Value = (usize, Vec<Vec<u16>>, bool, usize)> {
        (
            0usize..4,
            prop::collection::vec(prop::collection::vec(0u16..3, 5), 1..5),
            any::<bool>(),
            0usize..5,
        )
    }

    fn build(k: usize, exps: &[Vec<u16>], taylor: bool, cut: usize) -> Option<FreeComplex> {
        let r = ring(RINGS[k]);
        let ms = monomials(&r, exps);
        if ms.is_empty() {
            return None;
        }
        let c = if taylor {
            freemod::taylor(&r, &ms)
        } else {
            freemod::koszul(&r, &ms)
        }
        .unwrap();
        Some(if cut > 0 && cut < c.length() {
            freemod::truncate_length(&c, cut)
        } else {
            c
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn criterion_matches_oracle((k, exps, taylor, cut) in arb_complex()) {
            let Some(c) = build(k, &exps, taylor, cut) else { return Ok(()) };
            let b = c.ring().irrelevant();
            let report = check_virtual(&c, &b).unwrap();
            let oracle = oracle_is_virtual(&c, &b).unwrap();
            prop_assert_eq!(report.verdict_theorem, oracle.is_virtual);
            if oracle.is_exact {
                prop_assert!(report.verdict_theorem && report.exactness_note);
            }
            for rec in &report.records {
                prop_assert!(rec.depth_saturated >= rec.depth);
            }
            if c.ring().pic_rank() == 1 && c.length() <= c.ring().dim_x() + 1 {
                prop_assert_eq!(report.verdict_theorem, report.exactness_note);
            }
        }

        #[test]
        fn two_term_matches_middle_homology((k, exps, taylor, _cut) in arb_complex()) {
            let Some(c) = build(k, &exps, taylor, 0) else { return Ok(()) };
            if c.length() < 2 {
                return Ok(());
            }
            let c = freemod::truncate_length(&c, 2);
            let b = c.ring().irrelevant();
            match check_two_term(c.differential(2), c.differential(1), &b) {
                Ok(v) => prop_assert_eq!(v, torsion_certificate(&c, 1, &b).unwrap().torsion),
                Err(Error::PreconditionFailed(_)) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
