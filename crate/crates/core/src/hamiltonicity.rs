//! Constructive Hamiltonian cycles under classical degree conditions.
//!
//! * [`dirac_hamiltonian`]: maximal path, close by a crossing pair, re-open
//!   through an outside vertex; always succeeds when `δ ≥ n/2`.
//! * [`closure_hamiltonian`]: start from any vertex order (a Hamiltonian
//!   cycle of the complete closure) and remove closure edges one at a time,
//!   latest first, repairing the cycle with a crossing exchange each time.
//! * [`extension_dirac_hamiltonian`]: connected graphs with `δ ≥ ⌊n/2⌋`,
//!   which are Hamiltonian except for two exceptional families.
//!
//! Cycles are returned as open vertex sequences; the closing edge is implied.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::rng;

/// Largest order handled by the bitmask dynamic program.
pub const EXACT_SEARCH_MAX_ORDER: usize = 20;

/// True iff `cycle` visits every vertex of `g` exactly once along edges of `g`.
pub fn is_hamiltonian_cycle(g: &SimpleGraph, cycle: &[usize]) -> bool {
    let n = g.order();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Grows `path` at either end with the lowest-numbered unvisited neighbor
/// until neither end can be extended.
fn extend_to_maximal(g: &SimpleGraph, path: &mut Vec<usize>, on_path: &mut [bool]) {
    loop {
        let tail = *path.last().unwrap();
        if let Some(w) = g.neighbors(tail).find(|&w| !on_path[w]) {
            on_path[w] = true;
            path.push(w);
            continue;
        }
        let head = path[0];
        if let Some(w) = g.neighbors(head).find(|&w| !on_path[w]) {
            on_path[w] = true;
            path.insert(0, w);
            continue;
        }
        break;
    }
}

/// Closes `x_0 … x_k` into a cycle through the first index `i` with
/// `x_0 x_{i+1}` and `x_i x_k` both edges.
fn close_path(g: &SimpleGraph, path: &[usize]) -> Option<Vec<usize>> {
    let k = path.len().checked_sub(1)?;
    if k < 2 {
        return None;
    }
    let (x0, xk) = (path[0], path[k]);
    let i = (0..k).find(|&i| g.has_edge(x0, path[i + 1]) && g.has_edge(path[i], xk))?;
    Some(cross(path, i))
}

/// `(x_0, x_{i+1}, …, x_k, x_i, x_{i-1}, …, x_1)`.
fn cross(path: &[usize], i: usize) -> Vec<usize> {
    let mut cycle = Vec::with_capacity(path.len());
    cycle.push(path[0]);
    cycle.extend_from_slice(&path[i + 1..]);
    cycle.extend(path[1..=i].iter().rev());
    cycle
}

/// Hamiltonian cycle by path extension and rotation.
///
/// Guaranteed to succeed when `n ≥ 3` and `δ ≥ n/2`; on other graphs it may
/// still find a cycle, and returns `None` when it gets stuck. Ties are broken
/// toward the lowest-numbered vertex.
pub fn dirac_hamiltonian(g: &SimpleGraph) -> Option<Vec<usize>> {
    let n = g.order();
    if n < 3 {
        return None;
    }
    let mut on_path = vec![false; n];
    let mut path = vec![0];
    on_path[0] = true;
    loop {
        extend_to_maximal(g, &mut path, &mut on_path);
        let cycle = close_path(g, &path)?;
        if cycle.len() == n {
            return Some(cycle);
        }
        // An edge with exactly one endpoint on the cycle: outside vertex `w`
        // and its lowest cycle neighbor `c`.
        let (w, c) = (0..n)
            .filter(|&w| !on_path[w])
            .find_map(|w| g.neighbors(w).find(|&c| on_path[c]).map(|c| (w, c)))?;
        let m = cycle.len();
        let pos = cycle.iter().position(|&v| v == c).unwrap();
        let (before, after) = (cycle[(pos + m - 1) % m], cycle[(pos + 1) % m]);
        // Drop the cycle edge from `c` to its lower-numbered neighbor, which
        // becomes the far end of the new path.
        let step = if after < before { m - 1 } else { 1 };
        path = Vec::with_capacity(m + 1);
        path.push(w);
        for j in 0..m {
            path.push(cycle[(pos + j * step) % m]);
        }
        on_path[w] = true;
    }
}

/// `cl(G)` together with the added edges in insertion order.
pub fn closure_with_order(g: &SimpleGraph) -> (SimpleGraph, Vec<(usize, usize)>) {
    let n = g.order();
    let mut cl = g.clone();
    let mut deg = g.degrees();
    let mut added = Vec::new();
    loop {
        let mut changed = false;
        for u in 0..n {
            for v in u + 1..n {
                if !cl.has_edge(u, v) && deg[u] + deg[v] >= n {
                    cl.add_edge(u, v);
                    deg[u] += 1;
                    deg[v] += 1;
                    added.push((u, v));
                    changed = true;
                }
            }
        }
        if !changed {
            return (cl, added);
        }
    }
}

/// Bondy–Chvátal closure: join non-adjacent pairs with degree sum `≥ n` until none remain.
pub fn closure(g: &SimpleGraph) -> SimpleGraph {
    closure_with_order(g).0
}

/// Hamiltonian cycle of `g` when `cl(g)` is complete, `None` otherwise.
///
/// The closure is built as a chain `g = G_0 ⊂ … ⊂ G_m = K_n` where the edge
/// `uv` added at step `j` has `d(u) + d(v) ≥ n` in `G_j`. The identity order
/// is a Hamiltonian cycle of `G_m`; walking the chain backwards, whenever
/// the cycle uses the edge being removed it is opened into a path
/// `x_0 … x_k` at that edge and re-closed through an index `i` with
/// `x_0 x_{i+1}` and `x_i x_k` in `G_j`, which the degree sum guarantees.
pub fn closure_hamiltonian(g: &SimpleGraph) -> Option<Vec<usize>> {
    let n = g.order();
    if n < 3 {
        return None;
    }
    let (mut stage, added) = closure_with_order(g);
    if !stage.is_complete() {
        return None;
    }
    let mut cycle: Vec<usize> = (0..n).collect();
    let bound = added.len() + n;
    let mut repairs = 0;
    for &(u, v) in added.iter().rev() {
        stage.remove_edge(u, v);
        let pu = cycle.iter().position(|&x| x == u).unwrap();
        let pv = cycle.iter().position(|&x| x == v).unwrap();
        let adjacent = (pu + 1) % n == pv || (pv + 1) % n == pu;
        if !adjacent {
            continue;
        }
        repairs += 1;
        if repairs > bound {
            return None;
        }
        // Path from v around the cycle to u, avoiding the edge uv.
        let step = if (pu + 1) % n == pv { 1 } else { n - 1 };
        let path: Vec<usize> = (0..n).map(|j| cycle[(pv + j * step) % n]).collect();
        let k = n - 1;
        let i = (0..k).find(|&i| stage.has_edge(path[0], path[i + 1]) && stage.has_edge(path[i], path[k]))?;
        cycle = cross(&path, i);
    }
    debug_assert!(is_hamiltonian_cycle(g, &cycle));
    Some(cycle)
}

/// The two non-Hamiltonian families among connected graphs of odd order
/// with `δ ≥ ⌊n/2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exceptional {
    /// Two cliques of order `⌈n/2⌉` sharing one vertex.
    TwoCliquesOneCut,
    /// An independent set of order `⌈n/2⌉` joined to all other `⌊n/2⌋` vertices.
    IndependentJoin,
    NotExceptional,
}

/// Exact structural recognition of the exceptional families; even orders are
/// never exceptional.
pub fn detect_exceptional(g: &SimpleGraph) -> Exceptional {
    let n = g.order();
    if n < 3 || n % 2 == 0 {
        return Exceptional::NotExceptional;
    }
    let half_up = n / 2 + 1;
    for x in g.articulation_points() {
        let comps = g.components_without(Some(x));
        let cliques = comps.len() == 2
            && comps.iter().all(|c| {
                let mut with_cut = c.clone();
                with_cut.push(x);
                c.len() == half_up - 1 && g.is_clique(&with_cut)
            });
        if cliques {
            return Exceptional::TwoCliquesOneCut;
        }
    }
    for v in 0..n {
        if g.degree(v) != n / 2 {
            continue;
        }
        let rest: Vec<usize> = g.neighbors(v).collect();
        let independent: Vec<usize> = (0..n).filter(|&u| !g.has_edge(v, u)).collect();
        let joined = independent.len() == half_up
            && independent
                .iter()
                .all(|&u| g.degree(u) == rest.len() && rest.iter().all(|&s| g.has_edge(u, s)));
        if joined {
            return Exceptional::IndependentJoin;
        }
    }
    Exceptional::NotExceptional
}

/// Hamiltonian cycle of a connected graph with `δ ≥ ⌊n/2⌋`.
///
/// Returns `Ok(None)` exactly on the exceptional families. Otherwise the
/// cycle is sought by, in order: the Dirac construction (when `δ ≥ n/2`),
/// the closure construction, randomized rotation–extension with restarts,
/// and, for `n ≤ 20`, an exact bitmask search. Beyond 20 vertices the
/// rotation–extension stage is a heuristic and may miss.
pub fn extension_dirac_hamiltonian(g: &SimpleGraph) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    if n < 3 {
        return Err(Error::Precondition(format!("need at least 3 vertices, got {n}")));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    let delta = g.min_degree();
    if delta < n / 2 {
        return Err(Error::Precondition(format!(
            "minimum degree {delta} is below floor(n/2) = {}",
            n / 2
        )));
    }
    if detect_exceptional(g) != Exceptional::NotExceptional {
        return Ok(None);
    }
    let found = (2 * delta >= n)
        .then(|| dirac_hamiltonian(g))
        .flatten()
        .or_else(|| closure_hamiltonian(g))
        .or_else(|| rotation_extension(g, n as u64, n * n))
        .or_else(|| (n <= EXACT_SEARCH_MAX_ORDER).then(|| hamiltonian_cycle_exact(g)).flatten());
    Ok(found)
}

/// Randomized Pósa rotation–extension with up to `restarts` restarts.
///
/// Each restart grows a path from a random vertex, extending at the tail
/// when possible and otherwise rotating on a random neighbor of the tail.
pub fn rotation_extension(g: &SimpleGraph, seed: u64, restarts: usize) -> Option<Vec<usize>> {
    let n = g.order();
    if n < 3 {
        return None;
    }
    let budget = 4 * n * n;
    let mut nbrs: Vec<usize> = Vec::with_capacity(n);
    for r in 0..restarts as u64 {
        let mut rng = rng::derived(seed, r);
        let mut pos = vec![usize::MAX; n];
        let start = rng.gen_range(0..n);
        let mut path = vec![start];
        pos[start] = 0;
        for _ in 0..budget {
            let tail = *path.last().unwrap();
            nbrs.clear();
            nbrs.extend(g.neighbors(tail).filter(|&w| pos[w] == usize::MAX));
            if let Some(&w) = nbrs.choose(&mut rng) {
                pos[w] = path.len();
                path.push(w);
                continue;
            }
            if path.len() == n && g.has_edge(tail, path[0]) {
                debug_assert!(is_hamiltonian_cycle(g, &path));
                return Some(path);
            }
            nbrs.clear();
            nbrs.extend(g.neighbors(tail).filter(|&w| pos[w] + 2 < path.len()));
            let Some(&pivot) = nbrs.choose(&mut rng) else {
                break;
            };
            let i = pos[pivot];
            path[i + 1..].reverse();
            for (j, &v) in path.iter().enumerate().skip(i + 1) {
                pos[v] = j;
            }
        }
    }
    None
}

/// Exact Hamiltonian cycle search by dynamic programming over vertex subsets
/// (paths from vertex 0). Panics above [`EXACT_SEARCH_MAX_ORDER`] vertices.
pub fn hamiltonian_cycle_exact(g: &SimpleGraph) -> Option<Vec<usize>> {
    let n = g.order();
    assert!(n <= EXACT_SEARCH_MAX_ORDER, "exact search is limited to {EXACT_SEARCH_MAX_ORDER} vertices");
    if n < 3 {
        return None;
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w))
        .collect();
    let full = (1u32 << n) - 1;
    // ends[S]: vertices v such that some path from 0 through exactly S ends at v.
    let mut ends = vec![0u32; 1 << n];
    ends[1] = 1;
    for s in 1..=full {
        if s & 1 == 0 {
            continue;
        }
        let mut e = ends[s as usize];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut next = nbr[v] & !s;
            while next != 0 {
                let w = next.trailing_zeros();
                next &= next - 1;
                ends[(s | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let closing = ends[full as usize] & nbr[0] & !1;
    if closing == 0 {
        return None;
    }
    let mut cur = closing.trailing_zeros() as usize;
    let mut s = full;
    let mut rev = vec![cur];
    while s != 1 {
        let prev = s & !(1 << cur);
        let cand = ends[prev as usize] & nbr[cur];
        let u = cand.trailing_zeros() as usize;
        rev.push(u);
        s = prev;
        cur = u;
    }
    rev.reverse();
    debug_assert_eq!(rev[0], 0);
    Some(rev)
}

/// Hypotheses of classical sufficient conditions for Hamiltonicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SufficiencyFlags {
    /// `n ≥ 3` and `δ ≥ n/2`.
    pub dirac: bool,
    /// No `m < n/2` with `d_m ≤ m` and `d_{n-m} < n-m` (sorted degrees, 1-based).
    pub chvatal_degree_sequence: bool,
    /// 2-connected and `δ ≥ max{(n+2)/3, α}`.
    pub nash_williams: bool,
    /// Balanced bipartite (detected on connected graphs) with every
    /// non-adjacent cross pair having degree sum at least `m + 1`.
    pub moon_moser: bool,
}

pub fn sufficiency_predicates(g: &SimpleGraph) -> SufficiencyFlags {
    let n = g.order();
    let delta = g.min_degree();
    let moon_moser = n >= 2
        && g.is_connected()
        && g.bipartition().is_some_and(|side| {
            let a: Vec<usize> = (0..n).filter(|&v| !side[v]).collect();
            let b: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
            moon_moser_condition(g, &a, &b)
        });
    SufficiencyFlags {
        dirac: n >= 3 && 2 * delta >= n,
        chvatal_degree_sequence: n >= 3 && chvatal_condition(&g.degrees()),
        nash_williams: g.is_two_connected() && 3 * delta >= n + 2 && delta >= independence_number(g),
        moon_moser,
    }
}

fn chvatal_condition(degrees: &[usize]) -> bool {
    let n = degrees.len();
    let mut d = degrees.to_vec();
    d.sort_unstable();
    // d[m - 1] is d_m in 1-based notation.
    !(1..n).take_while(|&m| 2 * m < n).any(|m| d[m - 1] <= m && d[n - m - 1] < n - m)
}

/// Moon–Moser hypothesis for the supplied bipartition `a`, `b`.
pub fn moon_moser_condition(g: &SimpleGraph, a: &[usize], b: &[usize]) -> bool {
    let n = g.order();
    let m = a.len();
    if m == 0 || b.len() != m || 2 * m != n {
        return false;
    }
    let mut side = vec![None; n];
    for &v in a {
        side[v] = Some(false);
    }
    for &v in b {
        if side[v].is_some() {
            return false;
        }
        side[v] = Some(true);
    }
    if side.iter().any(Option::is_none) {
        return false;
    }
    if g.edges().any(|(u, v)| side[u] == side[v]) {
        return false;
    }
    a.iter().all(|&u| {
        b.iter()
            .all(|&v| g.has_edge(u, v) || g.degree(u) + g.degree(v) > m)
    })
}

/// `α(G)` by branch and bound over 64-bit vertex masks. Panics above 64 vertices.
pub fn independence_number(g: &SimpleGraph) -> usize {
    let n = g.order();
    assert!(n <= 64, "independence number is limited to 64 vertices");
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    grow_independent(all, 0, &nbr, &mut best);
    best
}

fn grow_independent(cand: u64, size: usize, nbr: &[u64], best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    // Branch on the candidate with most candidate neighbors.
    let mut pick = cand.trailing_zeros() as usize;
    let mut most = 0;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (nbr[v] & cand).count_ones();
        if d == 0 {
            // Isolated within the candidates: always take it.
            grow_independent(cand & !(1 << v), size + 1, nbr, best);
            return;
        }
        if d > most {
            most = d;
            pick = v;
        }
    }
    grow_independent(cand & !nbr[pick] & !(1 << pick), size + 1, nbr, best);
    grow_independent(cand & !(1 << pick), size, nbr, best);
}
