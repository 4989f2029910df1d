mod common;

use common::*;
use proptest::prelude::*;
use tubular::cat0::{
    check_certificate, cos_constraints, decide_cat0, decide_with_pivot, first_independent, per_vertex_check,
    Cat0Verdict,
};
use tubular::linalg::{det2, IntMat2};
use tubular::{IntVec2, VertexId};

/// Pairs `(v, Rv)` for an isometry `R` of `x² + k y²`, pushed through `u`.
fn isometric_edges(r: &mut rand_chacha::ChaCha8Rng, k: i64, n: usize, u: &IntMat2) -> Pairs {
    use rand::Rng;
    (0..n)
        .map(|_| {
            let a = nonzero_vec(r, 4);
            let b = match (k, r.gen_range(0..4)) {
                (1, 0) => IntVec2 { x: -a.y.clone(), y: a.x.clone() },
                (_, 1) => IntVec2 { x: a.x.clone(), y: -a.y.clone() },
                (_, 2) => IntVec2 { x: -a.x.clone(), y: a.y.clone() },
                _ => a.neg(),
            };
            (u.apply(&a), u.apply(&b))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn yes_certificates_verify(edges in arb_edges(5, 4)) {
        if let Cat0Verdict::Yes { certificate, .. } = decide_cat0(&edges).unwrap() {
            prop_assert!(form_certifies(&certificate, &edges));
            prop_assert!(check_certificate(&certificate, &edges));
        }
    }

    #[test]
    fn agrees_with_pivot_oracle(edges in arb_edges(4, 4)) {
        match decide_cat0(&edges).unwrap() {
            Cat0Verdict::Yes { cos, pivot: Some(p), .. } => {
                let (v1, w1) = &edges[p];
                let q = form_from_pivot(v1, w1, &cos).expect("pivot basis is invertible");
                prop_assert!(form_certifies(&q, &edges));
            }
            Cat0Verdict::Yes { pivot: None, .. } => {
                prop_assert!(edges.iter().all(|(a, b)| *a == *b || *a == b.neg()));
            }
            Cat0Verdict::No { .. } => prop_assert!(!cat0_scan(&edges, 10)),
        }
    }

    #[test]
    fn invariant_under_reindexing_reversal_negation(
        edges in arb_edges(5, 4),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::Rng;
        let mut r = rng(seed);
        let mut other = edges.clone();
        other.shuffle(&mut r);
        for e in other.iter_mut() {
            if r.gen_bool(0.5) {
                *e = (e.1.clone(), e.0.clone());
            }
            if r.gen_bool(0.5) {
                e.0 = e.0.neg();
            }
        }
        prop_assert_eq!(decide_cat0(&edges).unwrap().is_yes(), decide_cat0(&other).unwrap().is_yes());
    }

    #[test]
    fn every_pivot_agrees(edges in arb_edges(4, 4)) {
        let base = decide_cat0(&edges).unwrap().is_yes();
        for (i, (a, b)) in edges.iter().enumerate() {
            if !num_traits::Zero::is_zero(&det2(a, b)) {
                prop_assert_eq!(decide_with_pivot(&edges, i).unwrap().is_yes(), base);
            }
        }
    }

    #[test]
    fn basis_change_invariance(edges in arb_edges(4, 4), u in arb_unimodular()) {
        let moved: Pairs = edges.iter().map(|(a, b)| (u.apply(a), u.apply(b))).collect();
        prop_assert_eq!(decide_cat0(&edges).unwrap().is_yes(), decide_cat0(&moved).unwrap().is_yes());
    }
}

#[test]
fn constructed_isometry_instances_are_yes() {
    let mut r = rng(21);
    for i in 0..500 {
        let u = unimodular(&mut r);
        let k = if i % 2 == 0 { 1 } else { 2 };
        let edges = isometric_edges(&mut r, k, 1 + i % 4, &u);
        let verdict = decide_cat0(&edges).unwrap();
        assert!(verdict.is_yes(), "{edges:?}");
    }
}

#[test]
fn constraints_hold_at_certificate_cosine() {
    let mut r = rng(22);
    for _ in 0..1000 {
        let edges = random_edges(&mut r, 5, 4);
        if let Cat0Verdict::Yes { cos, pivot: Some(pivot), .. } = decide_cat0(&edges).unwrap() {
            assert!(cos_constraints(&edges, pivot).unwrap().iter().all(|c| c.holds_at(&cos)));
            assert!(cos > rat(-1, 1) && cos < rat(1, 1));
        }
    }
}

#[test]
fn all_parallel_instances() {
    assert!(decide_cat0(&[(v(1, 0), v(-1, 0)), (v(0, 2), v(0, 2))]).unwrap().is_yes());
    assert!(!decide_cat0(&[(v(1, 0), v(2, 0))]).unwrap().is_yes());
    assert_eq!(first_independent(&[(v(1, 0), v(3, 0))]), None);
    assert!(decide_cat0(&[]).is_err());
    assert!(decide_cat0(&[(v(0, 0), v(1, 0))]).is_err());
}

#[test]
fn per_vertex_matches_single_vertex() {
    let mut r = rng(23);
    for _ in 0..200 {
        let edges = random_edges(&mut r, 4, 4);
        let g = single(&edges);
        let pv = per_vertex_check(&g).unwrap();
        assert_eq!(pv.len(), 1);
        assert_eq!(pv[0].0, VertexId(0));
        assert_eq!(pv[0].1.is_yes(), decide_cat0(&edges).unwrap().is_yes());
    }
}
