//! The monochromatic cycle cover algorithm on 2-edge-colored `K_n`.
//!
//! For each color (red first) the color subgraph `G` is tried against a
//! fixed sequence of constructions; the first one that produces a cover in a
//! single color wins:
//!
//! 1. `δ ≥ n/2`: Dirac Hamiltonian cycle.
//! 2. `cl(G)` complete: closure Hamiltonian cycle.
//! 3. `δ = ⌊n/2⌋`: if `G = K_{⌈n/2⌉,⌊n/2⌋}` its parts are cliques of the
//!    other color and give two cycles; otherwise the extended Dirac cycle.
//! 4. a cut vertex `x` with `⌊n/2⌋ ≥ 4`: two cycles built around the two
//!    components of `G - x`.
//!
//! Covers never mix colors, so their reload cost is zero for every matrix.

use crate::error::Result;
use crate::graph::{Color, ColoredCompleteGraph, CycleCover, SimpleGraph};
use crate::hamiltonicity::{closure, closure_hamiltonian, dirac_hamiltonian, extension_dirac_hamiltonian};
use crate::oracle::{Oracle, OracleResult};
use crate::reload::{cover_cost, ReloadCostMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Dirac,
    Closure,
    BipartiteComplement,
    Extension,
    CutVertexUnequal,
    CutVertexEqual,
    None,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Dirac => "dirac",
            Branch::Closure => "closure",
            Branch::BipartiteComplement => "bipartite-complement",
            Branch::Extension => "extension",
            Branch::CutVertexUnequal => "cut-vertex-unequal",
            Branch::CutVertexEqual => "cut-vertex-equal",
            Branch::None => "none",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    Disconnected,
    OneConnected,
    TwoConnected,
}

impl Connectivity {
    pub fn of(g: &SimpleGraph) -> Self {
        if !g.is_connected() {
            Connectivity::Disconnected
        } else if g.is_two_connected() {
            Connectivity::TwoConnected
        } else {
            Connectivity::OneConnected
        }
    }
}

/// What happened while working on one color subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAttempt {
    pub color: Color,
    pub min_degree: usize,
    pub max_degree: usize,
    pub connectivity: Connectivity,
    /// Branches whose guard held, in the order they were entered.
    pub entered: Vec<Branch>,
    /// The branch that produced the cover, if any.
    pub success: Option<Branch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccaTrace {
    pub attempts: Vec<ColorAttempt>,
    /// The single terminal branch of the run; `Branch::None` when no cover was found.
    pub terminal: Branch,
    /// Color of the returned cover's edges.
    pub cover_color: Option<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccaOutcome {
    pub cover: Option<CycleCover>,
    pub trace: MccaTrace,
}

/// Runs the algorithm. Errors only when `g` is not 2-colored.
pub fn mcca(g: &ColoredCompleteGraph) -> Result<MccaOutcome> {
    g.require_two_colors()?;
    let n = g.order();
    let mut attempts = Vec::with_capacity(2);
    for color in [Color::RED, Color::BLUE] {
        let sub = g.induced_subgraph(color)?;
        let mut attempt = ColorAttempt {
            color,
            min_degree: sub.min_degree(),
            max_degree: sub.max_degree(),
            connectivity: Connectivity::of(&sub),
            entered: Vec::new(),
            success: None,
        };
        let found = if n >= 3 { try_color(&sub, &mut attempt) } else { None };
        attempts.push(attempt);
        if let Some((branch, cover, cover_color)) = found {
            attempts.last_mut().unwrap().success = Some(branch);
            let cover_color = if cover_color { color } else { color.flip() };
            debug_assert!(crate::graph::single_color(g, &cover).ok().flatten() == Some(cover_color));
            return Ok(MccaOutcome {
                cover: Some(cover.canonical()),
                trace: MccaTrace {
                    attempts,
                    terminal: branch,
                    cover_color: Some(cover_color),
                },
            });
        }
    }
    Ok(MccaOutcome {
        cover: None,
        trace: MccaTrace {
            attempts,
            terminal: Branch::None,
            cover_color: None,
        },
    })
}

/// A branch result: the branch, the cover, and whether the cover lies in
/// the subgraph's own color (`false` means the complementary color).
type Found = (Branch, CycleCover, bool);

fn try_color(g: &SimpleGraph, attempt: &mut ColorAttempt) -> Option<Found> {
    let n = g.order();
    let delta = attempt.min_degree;
    let single = |c: Vec<usize>| CycleCover::new(vec![c]);

    if 2 * delta >= n {
        attempt.entered.push(Branch::Dirac);
        if let Some(c) = dirac_hamiltonian(g) {
            return Some((Branch::Dirac, single(c), true));
        }
    }

    if closure(g).is_complete() {
        attempt.entered.push(Branch::Closure);
        if let Some(c) = closure_hamiltonian(g) {
            return Some((Branch::Closure, single(c), true));
        }
    }

    if delta == n / 2 {
        match g.complete_bipartite_parts() {
            Some((larger, smaller)) if larger.len() == n - n / 2 => {
                attempt.entered.push(Branch::BipartiteComplement);
                // Both parts are cliques in the other color.
                if smaller.len() >= 3 {
                    return Some((Branch::BipartiteComplement, CycleCover::new(vec![larger, smaller]), false));
                }
            }
            _ => {
                attempt.entered.push(Branch::Extension);
                if let Ok(Some(c)) = extension_dirac_hamiltonian(g) {
                    return Some((Branch::Extension, single(c), true));
                }
            }
        }
    }

    if n / 2 >= 4 {
        if let Some(&x) = g.articulation_points().first() {
            return cut_vertex_cover(g, x, attempt).map(|(b, c)| (b, c, true));
        }
    }
    None
}

/// Hamiltonian cycle of `g[vertices]`, in original labels.
fn component_cycle(g: &SimpleGraph, vertices: &[usize]) -> Option<Vec<usize>> {
    if vertices.len() < 3 {
        return None;
    }
    let sub = g.induced(vertices);
    let local = dirac_hamiltonian(&sub).or_else(|| closure_hamiltonian(&sub))?;
    Some(local.into_iter().map(|i| vertices[i]).collect())
}

fn cut_vertex_cover(g: &SimpleGraph, x: usize, attempt: &mut ColorAttempt) -> Option<(Branch, CycleCover)> {
    let comps = g.components_without(Some(x));
    if comps.len() != 2 {
        return None;
    }
    // Components come out ordered by lowest vertex; A is the smaller one.
    let (a, b) = if comps[1].len() < comps[0].len() {
        (&comps[1], &comps[0])
    } else {
        (&comps[0], &comps[1])
    };
    if b.len() > a.len() {
        attempt.entered.push(Branch::CutVertexUnequal);
        if b.len() > a.len() + 2 {
            return None;
        }
        let mut with_x = a.clone();
        with_x.push(x);
        with_x.sort_unstable();
        let c1 = if with_x.len() >= 3 && g.is_clique(&with_x) {
            with_x
        } else {
            component_cycle(g, &with_x)?
        };
        let c2 = component_cycle(g, b)?;
        return Some((Branch::CutVertexUnequal, CycleCover::new(vec![c1, c2])));
    }

    attempt.entered.push(Branch::CutVertexEqual);
    let toward = |part: &[usize]| part.iter().filter(|&&v| g.has_edge(x, v)).count();
    // Ties keep A as the component holding the lowest vertex.
    let (a, b) = if toward(&comps[1]) > toward(&comps[0]) {
        (&comps[1], &comps[0])
    } else {
        (&comps[0], &comps[1])
    };
    let c1 = component_cycle(g, a)?;
    let c2 = component_cycle(g, b)?;
    let len = c1.len();
    let j = (0..len).find(|&j| g.has_edge(x, c1[j]) && g.has_edge(x, c1[(j + 1) % len]))?;
    let mut spliced = Vec::with_capacity(len + 1);
    spliced.extend_from_slice(&c1[..=j]);
    spliced.push(x);
    spliced.extend_from_slice(&c1[j + 1..]);
    Some((Branch::CutVertexEqual, CycleCover::new(vec![spliced, c2])))
}

/// Outcome of [`min_reload_cycle_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverStatus {
    /// A single-color cover, optimal with cost 0.
    Solved { cover: CycleCover, cost: u64, color: Color },
    /// The algorithm gave up; the instance is small enough for the exact oracle.
    EscalateToOracle,
    /// The algorithm gave up and the instance is beyond the oracle's cap.
    Incomplete,
}

/// Runs [`mcca`] and prices the result under `m`; on failure reports whether
/// an order-`n` instance is within `oracle_cap`.
pub fn min_reload_cycle_cover(
    g: &ColoredCompleteGraph,
    m: &ReloadCostMatrix,
    oracle_cap: usize,
) -> Result<(CoverStatus, MccaTrace)> {
    let MccaOutcome { cover, trace } = mcca(g)?;
    let status = match cover {
        Some(cover) => {
            let cost = cover_cost(g, m, &cover)?;
            CoverStatus::Solved {
                cover,
                cost,
                color: trace.cover_color.expect("set on success"),
            }
        }
        None if g.order() <= oracle_cap => CoverStatus::EscalateToOracle,
        None => CoverStatus::Incomplete,
    };
    Ok((status, trace))
}

/// [`min_reload_cycle_cover`] followed by the oracle when it escalates.
/// Returns `None` only for [`CoverStatus::Incomplete`].
pub fn solve_with_fallback(
    g: &ColoredCompleteGraph,
    m: &ReloadCostMatrix,
    oracle: &Oracle,
) -> Result<Option<(CycleCover, u64)>> {
    match min_reload_cycle_cover(g, m, oracle.cap())?.0 {
        CoverStatus::Solved { cover, cost, .. } => Ok(Some((cover, cost))),
        CoverStatus::EscalateToOracle => {
            let OracleResult { optimal_cost, witness, .. } = oracle.solve_exact(g, m)?;
            Ok(Some((witness, optimal_cost)))
        }
        CoverStatus::Incomplete => Ok(None),
    }
}
