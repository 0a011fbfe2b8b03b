//! Property tests for the scene and enumeration primitives.

use proptest::prelude::*;
use sheetfk::engine::enumerate_taut_sets;
use sheetfk::scene::{Point2, RawScene, SceneViolation};

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

proptest! {
    #[test]
    fn cable_lengths_satisfy_triangle_inequality(
        ax in -1.0f64..1.0, ay in -1.0f64..1.0,
        bx in -1.0f64..1.0, by in -1.0f64..1.0,
        cx in -1.0f64..1.0, cy in -1.0f64..1.0,
    ) {
        let a = Point2::new(ax, ay);
        let b = Point2::new(bx, by);
        let c = Point2::new(cx, cy);
        prop_assert!(a.dist(c) <= a.dist(b) + b.dist(c) + 1e-12);
    }

    #[test]
    fn enumeration_counts_and_order(n in 3usize..10) {
        let sets: Vec<_> = enumerate_taut_sets(n).collect();
        let expect: u64 = (3..=n as u64).map(|k| binomial(n as u64, k)).sum();
        prop_assert_eq!(sets.len() as u64, expect);
        for w in sets.windows(2) {
            let a = (w[0].k(), w[0].indices().to_vec());
            let b = (w[1].k(), w[1].indices().to_vec());
            prop_assert!(a < b);
        }
        for s in &sets {
            prop_assert!(s.indices().windows(2).all(|w| w[0] < w[1]));
            prop_assert!(s.k() >= 3);
        }
    }

    #[test]
    fn infeasible_pairs_reported_once_per_unordered_pair(scale in 0.3f64..0.95) {
        // shrink a feasible square's sheet until pairs go infeasible; each
        // offending pair must be reported exactly once with i < j
        let sheet: Vec<_> = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
            .iter()
            .map(|&(x, y)| Point2::new(x * scale, y * scale))
            .collect();
        let robots: Vec<_> = [(0.1, 0.1), (0.9, 0.1), (0.9, 0.9), (0.1, 0.9)]
            .iter()
            .map(|&(x, y)| Point2::new(x, y))
            .collect();
        match RawScene::new(1.0, sheet, robots).validate() {
            Ok(_) => {}
            Err(violations) => {
                let mut seen = std::collections::HashSet::new();
                for v in violations {
                    if let SceneViolation::InfeasiblePair { i, j, .. } = v {
                        prop_assert!(i < j);
                        prop_assert!(seen.insert((i, j)), "pair ({i},{j}) reported twice");
                    }
                }
            }
        }
    }
}
