//! Equitable and nearly equitable 2-edge-colorings of complete graphs:
//! classification, existence, and seeded generators.
//!
//! A 2-edge-coloring is *equitable* when every vertex sees red and blue
//! degrees differing by at most one, and *nearly equitable* when they differ
//! by at most two.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredCompleteGraph};
use crate::rng::{self, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColoringClass {
    Equitable,
    NearlyEquitableOnly,
    Neither,
}

/// `| |r(v)| - |b(v)| |` for every vertex.
pub fn color_gaps(g: &ColoredCompleteGraph) -> Result<Vec<usize>> {
    g.require_two_colors()?;
    let n = g.order();
    Ok((0..n)
        .map(|v| {
            let red = (0..n)
                .filter(|&w| w != v && g.color(v, w) == Color::RED)
                .count();
            let blue = n - 1 - red;
            red.abs_diff(blue)
        })
        .collect())
}

pub fn max_color_gap(g: &ColoredCompleteGraph) -> Result<usize> {
    Ok(color_gaps(g)?.into_iter().max().unwrap_or(0))
}

pub fn classify(g: &ColoredCompleteGraph) -> Result<ColoringClass> {
    Ok(match max_color_gap(g)? {
        0 | 1 => ColoringClass::Equitable,
        2 => ColoringClass::NearlyEquitableOnly,
        _ => ColoringClass::Neither,
    })
}

/// Whether `K_n` admits an equitable 2-edge-coloring: all orders except `4k+3`.
pub fn equitable_feasible(n: usize) -> bool {
    n % 4 != 3
}

/// A seeded random equitable coloring of `K_n`.
///
/// Even `n` starts from the round-robin 1-factorization with the matchings
/// split between the colors; `n ≡ 1 (mod 4)` starts from Walecki's
/// Hamiltonian decomposition with half the cycles red. The start is then
/// perturbed by a random matching flip (even `n` only), a random relabeling
/// and a degree-preserving alternating 4-cycle walk.
pub fn generate_equitable(n: usize, seed: u64) -> Result<ColoredCompleteGraph> {
    if !equitable_feasible(n) {
        return Err(Error::Infeasible(format!(
            "K_{{4k+3}} admits no equitable 2-edge-coloring (n = {n})"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut g = if n % 2 == 0 {
        let mut g = factor_coloring(n, &mut rng);
        if n >= 4 {
            // Every vertex has majority degree n/2 in `majority`; flipping a
            // matching of such edges moves its endpoints to the other side.
            let majority = majority_color(&g);
            let size = rng.gen_range(0..=n / 2);
            flip_matching(&mut g, size, Some(majority), &mut rng);
        }
        g
    } else {
        let cycles = (n - 1) / 2;
        hamiltonian_split_coloring(n, cycles / 2, &mut rng)
    };
    g = shuffle_labels(&g, &mut rng);
    walk(&mut g, n * n, &mut rng);
    debug_assert_eq!(classify(&g).unwrap(), ColoringClass::Equitable);
    Ok(g)
}

/// A seeded random nearly equitable coloring of `K_n`; with
/// `force_non_equitable` the result has some vertex with gap exactly 2.
///
/// Odd orders start from Walecki's decomposition. For `n ≡ 1 (mod 4)` the
/// cycles are split evenly and a random matching is recolored, each flipped
/// edge giving its endpoints degrees `(2k-1, 2k+1)`. For `n ≡ 3 (mod 4)` the
/// odd number of cycles forces gap 2 everywhere, and recoloring a matching of
/// majority-colored edges balances its endpoints; a matching never covers all
/// vertices of odd order, so a gap-2 vertex always remains.
pub fn generate_nearly_equitable(
    n: usize,
    force_non_equitable: bool,
    seed: u64,
) -> Result<ColoredCompleteGraph> {
    if force_non_equitable && n % 2 == 0 {
        return Err(Error::Infeasible(format!(
            "every nearly equitable 2-edge-coloring of K_{n} (even order) is equitable"
        )));
    }
    if force_non_equitable && n < 5 {
        return Err(Error::Infeasible(format!(
            "no non-equitable nearly equitable construction for n = {n} (need n >= 5)"
        )));
    }
    if n % 2 == 0 {
        return generate_equitable(n, seed);
    }
    let mut rng = rng::seeded(seed);
    let cycles = (n - 1) / 2;
    let mut g = if cycles % 2 == 0 {
        let mut g = hamiltonian_split_coloring(n, cycles / 2, &mut rng);
        let lo = usize::from(force_non_equitable);
        let size = rng.gen_range(lo..=(n / 2).max(lo));
        flip_matching(&mut g, size, None, &mut rng);
        g
    } else {
        let red = if rng.gen_bool(0.5) { cycles / 2 + 1 } else { cycles / 2 };
        let mut g = hamiltonian_split_coloring(n, red, &mut rng);
        if n >= 3 {
            let majority = majority_color(&g);
            let size = rng.gen_range(0..=n / 2);
            flip_matching(&mut g, size, Some(majority), &mut rng);
        }
        g
    };
    g = shuffle_labels(&g, &mut rng);
    walk(&mut g, n * n, &mut rng);

    let class = classify(&g)?;
    let ok = if force_non_equitable {
        class == ColoringClass::NearlyEquitableOnly
    } else {
        class != ColoringClass::Neither
    };
    assert!(ok, "nearly equitable generator produced {class:?} for n = {n}");
    Ok(g)
}

/// Degree-preserving random walk: each step recolors an alternating 4-cycle
/// `u-v-w-x` (`uv`, `wx` red; `vw`, `xu` blue) to its opposite pattern.
///
/// Every vertex keeps its red and blue degrees, so the coloring class never
/// changes. If random sampling finds no move, one admissible move is applied
/// by exhaustive scan, so the result differs from `g` whenever `steps > 0`
/// and such a 4-cycle exists.
pub fn random_equitable_walk(
    g: &ColoredCompleteGraph,
    steps: usize,
    seed: u64,
) -> Result<ColoredCompleteGraph> {
    g.require_two_colors()?;
    let mut work = g.clone();
    let mut rng = rng::seeded(seed);
    walk(&mut work, steps, &mut rng);
    Ok(work)
}

fn walk(g: &mut ColoredCompleteGraph, steps: usize, rng: &mut Rng) {
    const ATTEMPTS: usize = 64;
    let n = g.order();
    if n < 4 || steps == 0 {
        return;
    }
    let mut swaps = 0;
    for _ in 0..steps {
        for _ in 0..ATTEMPTS {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let w = rng.gen_range(0..n);
            let x = rng.gen_range(0..n);
            if is_alternating_square(g, [u, v, w, x]) {
                swap_square(g, [u, v, w, x]);
                swaps += 1;
                break;
            }
        }
    }
    if swaps == 0 {
        if let Some(sq) = first_alternating_square(g) {
            swap_square(g, sq);
        }
    }
}

fn is_alternating_square(g: &ColoredCompleteGraph, [u, v, w, x]: [usize; 4]) -> bool {
    u != v
        && u != w
        && u != x
        && v != w
        && v != x
        && w != x
        && g.color(u, v) == Color::RED
        && g.color(v, w) == Color::BLUE
        && g.color(w, x) == Color::RED
        && g.color(x, u) == Color::BLUE
}

fn swap_square(g: &mut ColoredCompleteGraph, [u, v, w, x]: [usize; 4]) {
    g.set_color(u, v, Color::BLUE);
    g.set_color(w, x, Color::BLUE);
    g.set_color(v, w, Color::RED);
    g.set_color(x, u, Color::RED);
}

fn first_alternating_square(g: &ColoredCompleteGraph) -> Option<[usize; 4]> {
    let n = g.order();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                for x in 0..n {
                    if is_alternating_square(g, [u, v, w, x]) {
                        return Some([u, v, w, x]);
                    }
                }
            }
        }
    }
    None
}

/// Perfect matchings of `K_n`, `n` even, by the round-robin (circle) method.
pub fn round_robin_factors(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n % 2 == 0, "1-factorization needs even order");
    if n == 0 {
        return Vec::new();
    }
    let m = n - 1;
    let hub = n - 1;
    (0..m)
        .map(|r| {
            let mut f = vec![(r, hub)];
            for j in 1..n / 2 {
                f.push(((r + j) % m, (r + m - j) % m));
            }
            f
        })
        .collect()
}

/// Walecki's decomposition of `K_n`, `n` odd, into `(n-1)/2` Hamiltonian cycles.
pub fn walecki_cycles(n: usize) -> Vec<Vec<usize>> {
    assert!(n % 2 == 1, "Hamiltonian decomposition needs odd order");
    let m = (n - 1) / 2;
    let ring = 2 * m;
    let hub = n - 1;
    (0..m)
        .map(|i| {
            let mut cycle = vec![hub, i];
            for j in 1..=m {
                cycle.push((i + j) % ring);
                if j < m {
                    cycle.push((i + ring - j) % ring);
                }
            }
            cycle
        })
        .collect()
}

fn factor_coloring(n: usize, rng: &mut Rng) -> ColoredCompleteGraph {
    let mut g = ColoredCompleteGraph::monochromatic(n, Color::BLUE);
    let mut factors = round_robin_factors(n);
    factors.shuffle(rng);
    let red = if rng.gen_bool(0.5) { n / 2 } else { (n / 2).saturating_sub(1) };
    for f in factors.iter().take(red) {
        for &(u, v) in f {
            g.set_color(u, v, Color::RED);
        }
    }
    g
}

fn hamiltonian_split_coloring(n: usize, red_cycles: usize, rng: &mut Rng) -> ColoredCompleteGraph {
    let mut g = ColoredCompleteGraph::monochromatic(n, Color::BLUE);
    if n < 3 {
        return g;
    }
    let mut cycles = walecki_cycles(n);
    cycles.shuffle(rng);
    for c in cycles.iter().take(red_cycles) {
        for i in 0..c.len() {
            g.set_color(c[i], c[(i + 1) % c.len()], Color::RED);
        }
    }
    g
}

/// The color with the larger degree at vertex 0 (red on ties).
fn majority_color(g: &ColoredCompleteGraph) -> Color {
    let red = g.color_degree(0, Color::RED).unwrap_or(0);
    if 2 * red + 1 >= g.order() {
        Color::RED
    } else {
        Color::BLUE
    }
}

/// Recolors up to `size` pairwise disjoint edges, all of color `only` when given.
fn flip_matching(g: &mut ColoredCompleteGraph, size: usize, only: Option<Color>, rng: &mut Rng) {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut used = vec![false; n];
    let mut flipped = 0;
    for i in 0..n {
        if flipped == size {
            break;
        }
        let u = order[i];
        if used[u] {
            continue;
        }
        let partner = order[i + 1..]
            .iter()
            .copied()
            .find(|&v| !used[v] && only.is_none_or(|c| g.color(u, v) == c));
        if let Some(v) = partner {
            used[u] = true;
            used[v] = true;
            let c = g.color(u, v);
            g.set_color(u, v, c.flip());
            flipped += 1;
        }
    }
}

fn shuffle_labels(g: &ColoredCompleteGraph, rng: &mut Rng) -> ColoredCompleteGraph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.relabel(&perm).expect("valid permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn pentagon() -> ColoredCompleteGraph {
        ColoredCompleteGraph::from_red_graph(&SimpleGraph::cycle(5))
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&pentagon()).unwrap(), ColoringClass::Equitable);
        assert!(color_gaps(&pentagon()).unwrap().iter().all(|&d| d == 0));
        let red5 = ColoredCompleteGraph::monochromatic(5, Color::RED);
        assert_eq!(classify(&red5).unwrap(), ColoringClass::Neither);
        assert_eq!(max_color_gap(&red5).unwrap(), 4);
        let three = ColoredCompleteGraph::from_fn(4, 3, |u, _| Color(u as u32 % 3)).unwrap();
        assert_eq!(classify(&three), Err(Error::NotTwoColored(3)));
    }

    #[test]
    fn k7_is_never_equitable() {
        // All 2^21 colorings of K_7: the red degree sum is even, so not every
        // vertex can have red degree 3.
        let edges: Vec<(usize, usize)> = SimpleGraph::complete(7).edges().collect();
        for mask in 0u32..(1 << 21) {
            let mut red = [0u8; 7];
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    red[u] += 1;
                    red[v] += 1;
                }
            }
            assert!(red.iter().any(|&d| d != 3), "mask {mask:#x}");
        }
    }

    #[test]
    fn feasibility() {
        assert!(!equitable_feasible(7));
        assert!(equitable_feasible(8));
        assert!(!equitable_feasible(3));
        assert!(equitable_feasible(5));
    }

    #[test]
    fn decompositions_partition_edges() {
        for n in (2..=16).step_by(2) {
            let mut count = vec![0; n * n];
            for f in round_robin_factors(n) {
                let mut touched = vec![false; n];
                for (u, v) in f {
                    assert!(!touched[u] && !touched[v]);
                    touched[u] = true;
                    touched[v] = true;
                    count[u.min(v) * n + u.max(v)] += 1;
                }
                assert!(touched.iter().all(|&t| t));
            }
            for u in 0..n {
                for v in u + 1..n {
                    assert_eq!(count[u * n + v], 1, "n={n} edge {u}-{v}");
                }
            }
        }
        for n in (3..=17).step_by(2) {
            let mut count = vec![0; n * n];
            let cycles = walecki_cycles(n);
            assert_eq!(cycles.len(), (n - 1) / 2);
            for c in cycles {
                let mut sorted = c.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..n).collect::<Vec<_>>());
                for i in 0..n {
                    let (u, v) = (c[i], c[(i + 1) % n]);
                    count[u.min(v) * n + u.max(v)] += 1;
                }
            }
            for u in 0..n {
                for v in u + 1..n {
                    assert_eq!(count[u * n + v], 1, "n={n} edge {u}-{v}");
                }
            }
        }
    }

    #[test]
    fn generate_equitable_examples() {
        for seed in 0..20 {
            let g5 = generate_equitable(5, seed).unwrap();
            for v in 0..5 {
                assert_eq!(g5.color_degree(v, Color::RED).unwrap(), 2);
                assert_eq!(g5.color_degree(v, Color::BLUE).unwrap(), 2);
            }
            let g8 = generate_equitable(8, seed).unwrap();
            for v in 0..8 {
                let r = g8.color_degree(v, Color::RED).unwrap();
                assert!(r == 3 || r == 4);
            }
            assert_eq!(classify(&g8).unwrap(), ColoringClass::Equitable);
        }
        assert!(matches!(generate_equitable(7, 0), Err(Error::Infeasible(_))));
        let msg = generate_equitable(11, 0).unwrap_err().to_string();
        assert!(msg.contains("K_{4k+3}"), "{msg}");
    }

    #[test]
    fn generate_equitable_is_deterministic_and_varied() {
        assert_eq!(generate_equitable(12, 42).unwrap(), generate_equitable(12, 42).unwrap());
        assert_ne!(generate_equitable(12, 42).unwrap(), generate_equitable(12, 43).unwrap());
    }

    #[test]
    fn even_order_degree_profiles_vary() {
        // The matching flip should produce non-regular color classes too.
        let irregular = (0..50).any(|s| {
            let g = generate_equitable(10, s).unwrap();
            let red = g.induced_subgraph(Color::RED).unwrap();
            red.min_degree() != red.max_degree()
        });
        assert!(irregular);
    }

    #[test]
    fn generate_nearly_equitable_examples() {
        for n in [4, 6, 10] {
            assert!(matches!(generate_nearly_equitable(n, true, 0), Err(Error::Infeasible(_))));
        }
        assert!(matches!(generate_nearly_equitable(3, true, 0), Err(Error::Infeasible(_))));
        for seed in 0..20 {
            for n in [5, 7, 9, 11, 13] {
                let g = generate_nearly_equitable(n, true, seed).unwrap();
                let gaps = color_gaps(&g).unwrap();
                assert!(gaps.iter().all(|&d| d <= 2));
                assert!(gaps.contains(&2));
                assert_eq!(classify(&g).unwrap(), ColoringClass::NearlyEquitableOnly);
            }
            let g = generate_nearly_equitable(9, false, seed).unwrap();
            assert_ne!(classify(&g).unwrap(), ColoringClass::Neither);
        }
    }

    #[test]
    fn walk_examples() {
        let g = generate_equitable(8, 3).unwrap();
        assert_eq!(random_equitable_walk(&g, 0, 9).unwrap(), g);
        let walked = random_equitable_walk(&g, 100, 1).unwrap();
        assert_eq!(classify(&walked).unwrap(), ColoringClass::Equitable);
        assert_ne!(walked, g);

        let p = pentagon();
        let walked = random_equitable_walk(&p, 50, 5).unwrap();
        for v in 0..5 {
            assert_eq!(walked.color_degree(v, Color::RED).unwrap(), 2);
            assert_eq!(walked.color_degree(v, Color::BLUE).unwrap(), 2);
        }
    }

    #[test]
    fn walk_without_moves_is_identity() {
        let red = ColoredCompleteGraph::monochromatic(6, Color::RED);
        assert_eq!(random_equitable_walk(&red, 10, 0).unwrap(), red);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn classify_invariant_under_swap_and_relabel(n in 3usize..12, seed in any::<u64>()) {
                let mut rng = rng::seeded(seed);
                let g = ColoredCompleteGraph::from_fn(n, 2, |_, _| {
                    if rng.gen_bool(0.5) { Color::RED } else { Color::BLUE }
                }).unwrap();
                let class = classify(&g).unwrap();
                prop_assert_eq!(classify(&g.swap_colors().unwrap()).unwrap(), class);
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                prop_assert_eq!(classify(&g.relabel(&perm).unwrap()).unwrap(), class);
                if n % 2 == 1 {
                    prop_assert!(color_gaps(&g).unwrap().iter().all(|d| d % 2 == 0));
                }
            }

            #[test]
            fn walk_preserves_color_degrees(n in 4usize..14, seed in any::<u64>(), steps in 0usize..80) {
                let mut rng = rng::seeded(seed);
                let g = ColoredCompleteGraph::from_fn(n, 2, |_, _| {
                    if rng.gen_bool(0.5) { Color::RED } else { Color::BLUE }
                }).unwrap();
                let walked = random_equitable_walk(&g, steps, seed ^ 1).unwrap();
                for v in 0..n {
                    prop_assert_eq!(
                        walked.color_degree(v, Color::RED).unwrap(),
                        g.color_degree(v, Color::RED).unwrap()
                    );
                }
            }
        }
    }
}
