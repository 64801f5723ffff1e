use proptest::prelude::*;

use reload_cover::coloring::equitable_feasible;
use reload_cover::graph::single_color;
use reload_cover::mcca::solve_with_fallback;
use reload_cover::oracle::{exhaustive_monochromatic_exists, solve_exact};
use reload_cover::{
    classify, cover_cost, generate_equitable, generate_nearly_equitable, mcca, min_reload_cycle_cover, validate_cover,
    Branch, Color, ColoredCompleteGraph, ColoringClass, CoverStatus, Oracle, ReloadCostMatrix,
};

fn coloring(n: usize, bits: &[bool]) -> ColoredCompleteGraph {
    let mut it = bits.iter();
    ColoredCompleteGraph::from_fn(n, 2, |_, _| if *it.next().unwrap() { Color::RED } else { Color::BLUE }).unwrap()
}

#[test]
fn equitable_k8_costs_zero() {
    let g = generate_equitable(8, 11).unwrap();
    let m = ReloadCostMatrix::new(vec![vec![0, 3], vec![9, 0]]).unwrap();
    let (status, trace) = min_reload_cycle_cover(&g, &m, 12).unwrap();
    match status {
        CoverStatus::Solved { cover, cost, color } => {
            assert_eq!(cost, 0);
            assert_eq!(single_color(&g, &cover).unwrap(), Some(color));
            assert_ne!(trace.terminal, Branch::None);
        }
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Any returned cover is valid, single-colored and free under any matrix.
    #[test]
    fn mcca_is_sound(n in 3usize..9, bits in proptest::collection::vec(any::<bool>(), 28), a in 1u64..50, b in 1u64..50) {
        let g = coloring(n, &bits);
        let m = ReloadCostMatrix::new(vec![vec![0, a], vec![b, 0]]).unwrap();
        let out = mcca(&g).unwrap();
        if let Some(cover) = out.cover {
            prop_assert!(validate_cover(n, &cover).is_ok());
            prop_assert_eq!(single_color(&g, &cover).unwrap(), out.trace.cover_color);
            prop_assert_eq!(cover_cost(&g, &m, &cover).unwrap(), 0);
            prop_assert!(cover.len() <= 2);
            prop_assert!(exhaustive_monochromatic_exists(&g).unwrap().is_some());
        } else {
            prop_assert_eq!(out.trace.terminal, Branch::None);
        }
    }

    /// The fallback always returns the true optimum on small instances.
    #[test]
    fn fallback_is_optimal(n in 3usize..8, bits in proptest::collection::vec(any::<bool>(), 21)) {
        let g = coloring(n, &bits);
        let m = ReloadCostMatrix::unit();
        let (cover, cost) = solve_with_fallback(&g, &m, &Oracle::default()).unwrap().unwrap();
        prop_assert_eq!(cost, solve_exact(&g, &m).unwrap().optimal_cost);
        prop_assert_eq!(cover_cost(&g, &m, &cover).unwrap(), cost);
    }

    /// Generators are deterministic and land in their class.
    #[test]
    fn generators(n in 3usize..26, seed in any::<u64>()) {
        if equitable_feasible(n) {
            let g = generate_equitable(n, seed).unwrap();
            prop_assert_eq!(&g, &generate_equitable(n, seed).unwrap());
            prop_assert_eq!(classify(&g).unwrap(), ColoringClass::Equitable);
        }
        if n % 2 == 1 && n >= 5 {
            let g = generate_nearly_equitable(n, true, seed).unwrap();
            prop_assert_eq!(classify(&g).unwrap(), ColoringClass::NearlyEquitableOnly);
        }
    }
}
