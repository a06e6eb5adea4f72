mod common;

use common::*;
use virtua::coxring::Multidegree;
use virtua::freemod::{self, Presentation};

fn twists(spec: &[((i32, i32), usize)]) -> Vec<Multidegree> {
    let mut v: Vec<Multidegree> = spec
        .iter()
        .flat_map(|&((a, b), k)| std::iter::repeat_n(Multidegree(vec![a, b]), k))
        .collect();
    v.sort();
    v
}

#[test]
fn four_points_betti_table() {
    // three summands of F2 sit in degree (4,1); the Hilbert sums below pin it
    let r = ring("p1p2.json");
    let i = ideal(&r, "four_points.txt");
    let res = freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 10).unwrap();
    assert_eq!(res.ranks(), [1, 6, 11, 8, 2]);
    assert_eq!(
        res.module(1).sorted_twists(),
        twists(&[((1, 1), 2), ((0, 2), 2), ((2, 1), 1), ((4, 0), 1)])
    );
    assert_eq!(
        res.module(2).sorted_twists(),
        twists(&[((1, 2), 2), ((2, 2), 3), ((1, 3), 2), ((0, 4), 1), ((4, 1), 3)])
    );
    assert_eq!(
        res.module(3).sorted_twists(),
        twists(&[((2, 3), 3), ((1, 4), 2), ((4, 2), 3)])
    );
    assert_eq!(res.module(4).sorted_twists(), twists(&[((2, 4), 1), ((4, 3), 1)]));
}

#[test]
fn four_points_hilbert_function() {
    let r = ring("p1p2.json");
    let i = ideal(&r, "four_points.txt");
    let res = freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 10).unwrap();
    let computed: Vec<Vec<Multidegree>> = res.modules().iter().map(|m| m.twists.clone()).collect();
    for d in degrees_up_to(&[4, 4]) {
        assert_eq!(
            euler_sum(&r, &computed, &d),
            quotient_dim(&r, i.generators(), &d),
            "degree {d}"
        );
    }
    // the table as printed in the literature has S(-1,-4)^3 in F2
    let mut printed = computed.clone();
    printed[2] = twists(&[((1, 2), 2), ((2, 2), 3), ((1, 3), 2), ((0, 4), 1), ((1, 4), 3)]);
    let d = Multidegree(vec![6, 6]);
    assert_eq!(euler_sum(&r, &computed, &d), 4);
    assert_ne!(euler_sum(&r, &printed, &d), 4);
}

fn paper_vres() -> virtua::freemod::FreeComplex {
    let r = ring("p1p2.json");
    let i = ideal(&r, "four_points.txt");
    let res = freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 10).unwrap();
    freemod::vres_of_pair(&res, &Multidegree(vec![1, 1])).unwrap()
}

#[test]
fn truncations_of_the_four_points_resolution() {
    let r = ring("p1p2.json");
    let i = ideal(&r, "four_points.txt");
    let res = freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 10).unwrap();

    let v = paper_vres();
    assert_eq!(v.ranks(), [1, 5, 7, 3]);
    assert_eq!(
        v.module(1).sorted_twists(),
        twists(&[((1, 1), 2), ((0, 2), 2), ((2, 1), 1)])
    );
    assert_eq!(
        v.module(2).sorted_twists(),
        twists(&[((1, 2), 2), ((2, 2), 3), ((1, 3), 2)])
    );
    assert_eq!(v.module(3).sorted_twists(), twists(&[((2, 3), 3)]));

    let whole = freemod::vres_of_pair(&res, &Multidegree(vec![9, 9])).unwrap();
    assert_eq!(whole, res);

    let small = freemod::vres_of_pair(&res, &Multidegree(vec![0, 0])).unwrap();
    assert_eq!(small.ranks(), [1, 4, 2]);
    assert_eq!(small.module(1).sorted_twists(), twists(&[((1, 1), 2), ((0, 2), 2)]));
    assert_eq!(small.module(2).sorted_twists(), twists(&[((1, 2), 2)]));
}

#[test]
fn ranks_and_minors_of_the_virtual_complex() {
    let v = paper_vres();
    let ranks: Vec<usize> = (1..=3).map(|i| freemod::rank(v.differential(i)).unwrap()).collect();
    assert_eq!(ranks, [1, 4, 3]);
    // certify rank 4 of phi_2 independently: no nonzero 5x5 minor
    assert!(freemod::minors_ideal(5, v.differential(2)).unwrap().is_zero());
    assert!(!freemod::minors_ideal(4, v.differential(2)).unwrap().is_zero());

    let r = v.ring().clone();
    let b = r.irrelevant();
    let grades: Vec<_> = (1..=3)
        .map(|i| freemod::max_minors(v.differential(i)).unwrap().grade().unwrap())
        .collect();
    use virtua::Depth::Finite;
    assert_eq!(grades, [Finite(3), Finite(2), Finite(2)]);
    let sat = freemod::max_minors(v.differential(3))
        .unwrap()
        .saturate_by_irrelevant(&b)
        .unwrap();
    assert_eq!(sat.grade().unwrap(), Finite(3));
}

#[test]
fn three_points_resolution() {
    let r = ring("p1p1.json");
    let i = ideal(&r, "three_points.txt");
    let res = freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 10).unwrap();
    assert_eq!(res.ranks(), [1, 3, 2]);
    assert_eq!(
        res.module(1).sorted_twists(),
        twists(&[((2, 0), 1), ((1, 1), 1), ((0, 2), 1)])
    );
    assert_eq!(res.module(2).sorted_twists(), twists(&[((2, 1), 1), ((1, 2), 1)]));
}

#[test]
fn principal_resolution() {
    let r = ring("p1.json");
    let i = gens(&r, &["x0"]);
    let res = freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 10).unwrap();
    assert_eq!(res.ranks(), [1, 1]);
    assert_eq!(res.module(1).twists, [Multidegree(vec![1])]);
}

#[test]
fn partial_resolution_carries_prefix() {
    let r = ring("p1p2.json");
    let i = ideal(&r, "four_points.txt");
    match freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 2) {
        Err(virtua::Error::PartialResolution { maxlen, prefix }) => {
            assert_eq!(maxlen, 2);
            assert_eq!(prefix.ranks(), [1, 6, 11]);
        }
        other => panic!("expected a partial resolution, got {other:?}"),
    }
}

#[test]
fn resolutions_have_no_units_and_no_homology() {
    for (ring_name, ideal_name) in [("p1p2.json", "four_points.txt"), ("p1p1.json", "three_points.txt")] {
        let r = ring(ring_name);
        let i = ideal(&r, ideal_name);
        let res = freemod::minimal_free_resolution(&Presentation::cyclic(&i).unwrap(), 10).unwrap();
        for m in res.maps() {
            assert!(m.entries().iter().flatten().all(|e| !e.is_unit()));
        }
        for k in 1..=res.length() {
            let h = freemod::homology_presentation(&res, k).unwrap();
            assert_eq!(h.generators(), 0, "H_{k} of {ideal_name}");
        }
    }
}
