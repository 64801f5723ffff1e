//! Completing a general reload cost instance to a complete graph.
//!
//! Every non-edge gets its own fresh color whose reload cost against every
//! other color is a large constant `M`. A cover of the completed graph that
//! uses a fresh edge pays at least `M` at each of its endpoints, so when `M`
//! exceeds any cost achievable on the original edges the optimum is unchanged.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredCompleteGraph, SimpleGraph};
use crate::oracle::Oracle;
use crate::reload::ReloadCostMatrix;

/// A reload cost instance on an arbitrary simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralInstance {
    graph: SimpleGraph,
    colors: BTreeMap<(usize, usize), Color>,
    rho: ReloadCostMatrix,
}

impl GeneralInstance {
    /// `edge_colors` must color every edge of `graph` exactly once, with
    /// colors inside `rho`.
    pub fn new(
        graph: SimpleGraph,
        edge_colors: impl IntoIterator<Item = ((usize, usize), Color)>,
        rho: ReloadCostMatrix,
    ) -> Result<Self> {
        let mut colors = BTreeMap::new();
        for ((u, v), c) in edge_colors {
            let key = (u.min(v), u.max(v));
            if !graph.has_edge(key.0, key.1) {
                return Err(Error::MissingEdge { u: key.0, v: key.1 });
            }
            if c.index() >= rho.colors() {
                return Err(Error::ColorOutOfRange {
                    color: c.index(),
                    k: rho.colors(),
                });
            }
            if colors.insert(key, c).is_some() {
                return Err(Error::Precondition(format!("edge {key:?} colored twice")));
            }
        }
        if let Some((u, v)) = graph.edges().find(|e| !colors.contains_key(e)) {
            return Err(Error::Precondition(format!("edge ({u}, {v}) has no color")));
        }
        Ok(GeneralInstance { graph, colors, rho })
    }

    /// Every edge of `graph` in one color, with the given matrix.
    pub fn uniform(graph: SimpleGraph, color: Color, rho: ReloadCostMatrix) -> Result<Self> {
        let edges: Vec<_> = graph.edges().map(|e| (e, color)).collect();
        Self::new(graph, edges, rho)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn rho(&self) -> &ReloadCostMatrix {
        &self.rho
    }

    pub fn edge_color(&self, u: usize, v: usize) -> Option<Color> {
        self.colors.get(&(u.min(v), u.max(v))).copied()
    }

    /// Smallest admissible `M`: `n · max ρ + 1`.
    pub fn min_big_m(&self) -> Result<u64> {
        (self.graph.order() as u64)
            .checked_mul(self.rho.max_cost())
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::CostOverflow)
    }
}

/// The completed instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub graph: ColoredCompleteGraph,
    pub rho: ReloadCostMatrix,
    /// Fresh color of each former non-edge, in lexicographic order of the pair.
    pub fresh: Vec<((usize, usize), Color)>,
}

/// Completes `inst`, assigning fresh colors `k, k+1, …` to non-edges in
/// lexicographic order.
pub fn reduce_to_complete(inst: &GeneralInstance, big_m: u64) -> Result<Reduced> {
    let need = inst.min_big_m()?;
    if big_m < need {
        return Err(Error::Precondition(format!("big_m = {big_m} must be at least n * max(rho) + 1 = {need}")));
    }
    let n = inst.graph.order();
    let k = inst.rho.colors();
    let fresh: Vec<((usize, usize), Color)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !inst.graph.has_edge(u, v))
        .enumerate()
        .map(|(i, e)| (e, Color((k + i) as u32)))
        .collect();
    let total = k + fresh.len();
    let old = inst.rho.rows();
    let rows = (0..total)
        .map(|a| {
            (0..total)
                .map(|b| match (a, b) {
                    _ if a == b => 0,
                    (a, b) if a < k && b < k => old[a][b],
                    _ => big_m,
                })
                .collect()
        })
        .collect();
    let rho = ReloadCostMatrix::permissive(rows)?;
    let lookup: BTreeMap<(usize, usize), Color> = fresh.iter().copied().collect();
    let graph = ColoredCompleteGraph::from_fn(n, total, |u, v| {
        inst.edge_color(u, v).unwrap_or_else(|| lookup[&(u, v)])
    })?;
    Ok(Reduced { graph, rho, fresh })
}

/// Optima of both sides, or `None` for an infeasible original.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptComparison {
    pub original: Option<u64>,
    pub reduced: u64,
    pub big_m: u64,
}

impl OptComparison {
    /// Equal optima, or an infeasible original with reduced optimum `≥ M`.
    pub fn preserved(&self) -> bool {
        match self.original {
            Some(opt) => opt == self.reduced,
            None => self.reduced >= self.big_m,
        }
    }
}

pub fn compare_optima(inst: &GeneralInstance, big_m: u64, oracle: &Oracle) -> Result<OptComparison> {
    let reduced = reduce_to_complete(inst, big_m)?;
    let original = oracle
        .solve_partial(inst.graph.order(), |u, v| inst.edge_color(u, v), &inst.rho)?
        .map(|r| r.optimal_cost);
    let reduced_opt = oracle.solve_exact(&reduced.graph, &reduced.rho)?.optimal_cost;
    Ok(OptComparison {
        original,
        reduced: reduced_opt,
        big_m,
    })
}

/// Whether the reduction preserves the optimum of `inst`, checked with the
/// default oracle.
pub fn opt_preserved(inst: &GeneralInstance, big_m: u64) -> Result<bool> {
    Ok(compare_optima(inst, big_m, &Oracle::default())?.preserved())
}
