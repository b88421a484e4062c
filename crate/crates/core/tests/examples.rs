mod common;

use fktree_core::oracle::{enumerate_trees, DEFAULT_BAND, DEFAULT_CAP};
use fktree_core::rooted::rooted_view;
use fktree_core::spectral::{boundary_weight_identity_residual, check_monotonicity, DEFAULT_TOL};
use fktree_core::{
    brute_force_minimizer, build_comet, build_slo_star_tree, build_td_minimizer, canonical_form, check_slo,
    enumerate_class, first_eigenpair, is_isomorphic, is_slo_star_tree, majorize_normalize, normalize_to_slo,
    normalize_to_slo_star, parse_tree, td_minimizer_sequence, ClassSpec, DegreeSequence, Error, TreeWithBoundary,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mixed_sequence() -> DegreeSequence {
    "3 3 3 4 4 4 5 6 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1".parse().unwrap()
}

#[test]
fn parse_examples() {
    let p3 = parse_tree("3\n0 1\n1 2").unwrap();
    assert_eq!(p3.interior(), vec![1]);
    assert_eq!(p3.boundary(), vec![0, 2]);
    let p4 = parse_tree("4\n0 1\n1 2\n2 3\n").unwrap();
    assert_eq!(p4.interior(), vec![1, 2]);
    assert_eq!(p4.boundary(), vec![0, 3]);
    assert!(matches!(parse_tree("3\n0 1\n1 2\n2 0"), Err(Error::Cyclic(..))));
    assert!(matches!(parse_tree("2\n0 1"), Err(Error::NoInterior)));
    let commented = parse_tree("# a path\n3 # vertices\n0 1 # first\n\n1 2\n").unwrap();
    assert_eq!(commented, p3);
}

#[test]
fn mixed_sequence_structure() {
    let built = build_slo_star_tree(&mixed_sequence()).unwrap();
    let t = &built.tree;
    assert_eq!(DegreeSequence::of(t), mixed_sequence());
    assert!(check_slo(t, &built.ordering).unwrap().valid_slo_star);
    assert!(is_slo_star_tree(t));
    let view = rooted_view(t, 0);
    let mut heights: Vec<usize> = view.height.clone();
    heights.sort();
    heights.dedup();
    assert_eq!(heights, vec![0, 1, 2, 3]);
    let ball = t.is_ball(0);
    assert!(!ball.is_ball);
    let mut dists: Vec<usize> = t.boundary().iter().map(|&b| view.height[b]).collect();
    dists.sort();
    dists.dedup();
    assert_eq!(dists, vec![2, 3]);
}

#[test]
fn comet_fourteen_six() {
    let comet = build_comet(14, 6).unwrap();
    let pair = first_eigenpair(&comet, DEFAULT_TOL).unwrap();
    assert!(boundary_weight_identity_residual(&comet, &pair) <= 1e-9);
    assert_eq!(DegreeSequence::of(&comet).interior(), &[2, 2, 2, 2, 2, 8]);
}

#[test]
fn canonical_examples() {
    let p4 = TreeWithBoundary::path(4).unwrap();
    let relabeled = p4.relabel(&[2, 0, 3, 1]).unwrap();
    assert_eq!(canonical_form(&p4), canonical_form(&relabeled));
    assert_ne!(canonical_form(&p4), canonical_form(&TreeWithBoundary::star(3).unwrap()));
}

#[test]
fn slo_star_membership_by_enumeration() {
    let pi = DegreeSequence::new([2, 2, 3], 3).unwrap();
    let trees = enumerate_trees(&pi, DEFAULT_CAP).unwrap();
    let members: Vec<_> = trees.iter().filter(|t| is_slo_star_tree(t)).collect();
    assert_eq!(members.len(), 1);
    assert!(is_isomorphic(members[0], &build_slo_star_tree(&pi).unwrap().tree));
}

#[test]
fn tree_sequence_examples() {
    assert!(DegreeSequence::new([2], 2).unwrap().is_tree_sequence());
    assert!(DegreeSequence::new([3], 3).unwrap().is_tree_sequence());
    assert!(!DegreeSequence::new([2, 2], 1).unwrap().is_tree_sequence());
}

#[test]
fn monotonicity_examples() {
    let p3 = TreeWithBoundary::path(3).unwrap();
    let p5 = TreeWithBoundary::path(5).unwrap();
    assert!(check_monotonicity(&p3, &p5, &[1, 2, 3]).unwrap());
    // B(0,1) with 3 leaves inside B(0,2) where every leaf of the first grows two leaves
    let b1 = TreeWithBoundary::star(3).unwrap();
    let b2 = TreeWithBoundary::from_edges(10, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)])
        .unwrap();
    assert!(b2.is_ball(0).is_ball);
    assert!(check_monotonicity(&b1, &b2, &[0, 1, 2, 3]).unwrap());
    assert!(matches!(check_monotonicity(&p5, &p5, &[0, 1, 2, 3, 4]), Err(Error::InvalidEmbedding(_))));
}

#[test]
fn any_tree_with_the_mixed_sequence_normalizes_to_it() {
    let target = build_slo_star_tree(&mixed_sequence()).unwrap().tree;
    // a deliberately stretched realization: interior vertices on a path, leaves filling degrees
    let degrees = [6, 3, 5, 3, 4, 3, 4, 4];
    let mut edges: Vec<(usize, usize)> = (1..8).map(|i| (i - 1, i)).collect();
    let mut next = 8;
    for (i, &d) in degrees.iter().enumerate() {
        let used = if i == 0 || i == 7 { 1 } else { 2 };
        for _ in used..d {
            edges.push((i, next));
            next += 1;
        }
    }
    let t = TreeWithBoundary::from_edges(next, &edges).unwrap();
    assert_eq!(DegreeSequence::of(&t), mixed_sequence());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = common::shuffle_labels(&mut rng, &t);
    let out = normalize_to_slo_star(&t).unwrap();
    assert!(is_isomorphic(&out.tree, &target));
    assert!(out.trace.max_increase() <= 1e-12);
    let before = first_eigenpair(&t, DEFAULT_TOL).unwrap().lambda;
    let after = first_eigenpair(&out.tree, DEFAULT_TOL).unwrap().lambda;
    assert!(after < before);
}

#[test]
fn normalize_identity_cases() {
    let built = build_slo_star_tree(&mixed_sequence()).unwrap();
    let slo = normalize_to_slo(&built.tree).unwrap();
    assert_eq!(slo.trace.effective_moves(), 0);
    assert!(is_isomorphic(&slo.tree, &built.tree));
    let same = majorize_normalize(&built.tree, &mixed_sequence()).unwrap();
    assert_eq!(same.tree, normalize_to_slo_star(&built.tree).unwrap().tree);
}

#[test]
fn majorized_target_gives_degree_floor_minimizer() {
    // a member of T_3(12,4) far from the minimizer
    let t = build_slo_star_tree(&DegreeSequence::new([3, 3, 4, 4], 8).unwrap()).unwrap().tree;
    let target = td_minimizer_sequence(12, 4, 3).unwrap();
    let out = majorize_normalize(&t, &target).unwrap();
    assert!(is_isomorphic(&out.tree, &build_td_minimizer(12, 4, 3).unwrap()));
    let interior = DegreeSequence::of(&out.tree).interior().to_vec();
    assert_eq!(interior.iter().filter(|&&d| d != 3).count(), 1);
}

#[test]
fn class_census_examples() {
    let t63 = enumerate_class(&ClassSpec::Fixed { n: 6, k: 3 }, DEFAULT_CAP).unwrap();
    let pis: Vec<_> = t63.iter().map(DegreeSequence::of).collect();
    assert!(pis.iter().all(|p| p.interior() == [2, 2, 3]));
    let census = brute_force_minimizer(&ClassSpec::Fixed { n: 6, k: 3 }, DEFAULT_BAND, DEFAULT_CAP).unwrap();
    assert_eq!(census.argmin.len(), 1);
    let semi = brute_force_minimizer(&ClassSpec::SemiRegular { d: 3, n: 10 }, DEFAULT_BAND, DEFAULT_CAP).unwrap();
    assert_eq!(semi.argmin.len(), 1);
    assert!(is_slo_star_tree(&semi.trees[semi.argmin[0]]));
}
