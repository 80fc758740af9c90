mod common;

use escape_core::geometry::project_trace_zero;
use escape_core::simplex::{
    coset_classes, covering_certificate, covering_constant_estimate, reduce_standard, residue_membership, same_coset_numeric, standard_deep_hole, PointClass,
};
use escape_core::{Dimension, Perm, SimplexSet64, TraceZeroVec};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn standard_examples() {
    let s = SimplexSet64::standard(Dimension::new(3).unwrap());
    let coords: Vec<Vec<f64>> = s.vectors().iter().map(|v| v.coords().to_vec()).collect();
    assert_eq!(coords, vec![vec![-2.0, 1.0, 1.0], vec![1.0, -2.0, 1.0], vec![1.0, 1.0, -2.0]]);
    assert_eq!(standard_deep_hole::<f64>(&Perm::identity(3)).coords(), &[1.0, 0.0, -1.0]);

    let r = s.reduce(&TraceZeroVec::new(vec![2.0, -1.0, -1.0]).unwrap()).unwrap();
    assert_eq!(r.class, PointClass::Interior);
    assert!(r.reduced.sup_norm() < 1e-12);
    let r = s.reduce(&TraceZeroVec::new(vec![1.0, 0.0, -1.0]).unwrap()).unwrap();
    assert_eq!(r.class, PointClass::DeepHole(Perm::identity(3)));
    assert_eq!(r.iterations, 0);
}

#[test]
fn residues() {
    assert!(residue_membership(&[1, 2, 3]));
    assert!(!residue_membership(&[1, 1, 3]));
    assert!(residue_membership(&[4, 2, 3]));
}

#[test]
fn coset_class_sizes() {
    let c3 = coset_classes(Dimension::new(3).unwrap()).unwrap();
    assert_eq!(c3.classes.len(), 2);
    assert!(c3.classes.iter().all(|c| c.len() == 3));
    let c4 = coset_classes(Dimension::new(4).unwrap()).unwrap();
    assert_eq!(c4.classes.len(), 6);
    assert!(c4.classes.iter().all(|c| c.len() == 4));
    for d in 2..=6 {
        assert!(same_coset_numeric(&Perm::identity(d), &Perm::cycle(d)));
    }
}

#[test]
fn covering_constant_behaviour() {
    let s = SimplexSet64::standard(Dimension::new(3).unwrap());
    let c = covering_constant_estimate(&s, &[0.3, 0.1, 0.03], 2000, 4).unwrap();
    let per: Vec<f64> = c.per_rho.iter().map(|e| e.c).collect();
    let (lo, hi) = per.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(hi <= 2.0 * lo, "{per:?}");
    let degenerate = covering_constant_estimate(&s, &[1.0], 500, 4).unwrap();
    assert!(degenerate.c_est.is_finite());
}

#[test]
fn exact_reduction_on_rationals() {
    for tau in Perm::all(4) {
        let w = standard_deep_hole::<BigRational>(&tau);
        let r = reduce_standard(&w).unwrap();
        assert_eq!(r.class, PointClass::DeepHole(tau));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_lands_in_the_half_simplex(seed in any::<u64>(), d in 3usize..=5, raw in prop::collection::vec(-30.0f64..30.0, 5)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = common::random_simplex_set(d, &mut rng, 0.3);
        let u = project_trace_zero(&raw[..d]);
        let r = set.reduce(&u).unwrap();
        let half = (d - 1) as f64 / 2.0;
        prop_assert!(r.standard.ceil_norm() <= half + 1e-9);
        let back = u.add(&set.combination(&r.shifts));
        prop_assert!(back.sub(&r.reduced).sup_norm() < 1e-9);
    }

    #[test]
    fn random_sets_pass_the_covering_certificate(seed in any::<u64>(), d in 3usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = common::random_simplex_set(d, &mut rng, 0.3);
        let rep = covering_certificate(&set, 300, seed).unwrap();
        prop_assert!(rep.max_residual <= (d - 1) as f64 / 2.0 + 1e-9);
    }
}
