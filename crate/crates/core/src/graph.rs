//! Dense graphs on vertices `0..n`: totally 2- (or k-) edge-colored complete
//! graphs, plain simple graphs, and vertex-disjoint cycle covers.

use std::fmt;

use crate::error::{Error, Result};

/// Index into the color set. Colors `0` and `1` are called red and blue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl Color {
    pub const RED: Color = Color(0);
    pub const BLUE: Color = Color(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The other color of a 2-coloring.
    pub fn flip(self) -> Color {
        debug_assert!(self.0 < 2);
        Color(1 - self.0)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("red"),
            1 => f.write_str("blue"),
            c => write!(f, "c{c}"),
        }
    }
}

/// A complete graph `K_n` with a color on every unordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredCompleteGraph {
    n: usize,
    k: usize,
    chi: Vec<Color>,
}

impl ColoredCompleteGraph {
    /// Builds a graph by asking `color_of(u, v)` for every pair `u < v`.
    pub fn from_fn(
        n: usize,
        k: usize,
        mut color_of: impl FnMut(usize, usize) -> Color,
    ) -> Result<Self> {
        let mut g = ColoredCompleteGraph {
            n,
            k,
            chi: vec![Color(0); n * n],
        };
        for u in 0..n {
            for v in u + 1..n {
                let c = color_of(u, v);
                if c.index() >= k {
                    return Err(Error::ColorOutOfRange { color: c.index(), k });
                }
                g.set_color(u, v, c);
            }
        }
        Ok(g)
    }

    pub fn monochromatic(n: usize, color: Color) -> Self {
        let k = (color.index() + 1).max(2);
        Self::from_fn(n, k, |_, _| color).expect("color fits")
    }

    /// Red on the edges of `red`, blue elsewhere.
    pub fn from_red_graph(red: &SimpleGraph) -> Self {
        Self::from_fn(red.order(), 2, |u, v| {
            if red.has_edge(u, v) {
                Color::RED
            } else {
                Color::BLUE
            }
        })
        .expect("two colors")
    }

    /// Builds a graph from explicit edge records; every pair must appear exactly once.
    pub fn from_edges(
        n: usize,
        k: usize,
        edges: impl IntoIterator<Item = (usize, usize, Color)>,
    ) -> Result<Self> {
        let mut seen = vec![false; n * n];
        let mut g = ColoredCompleteGraph {
            n,
            k,
            chi: vec![Color(0); n * n],
        };
        for (u, v, c) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            if c.index() >= k {
                return Err(Error::ColorOutOfRange { color: c.index(), k });
            }
            if seen[u * n + v] {
                return Err(Error::Precondition(format!("edge {u}-{v} given twice")));
            }
            seen[u * n + v] = true;
            seen[v * n + u] = true;
            g.set_color(u, v, c);
        }
        for u in 0..n {
            for v in u + 1..n {
                if !seen[u * n + v] {
                    return Err(Error::MissingEdge { u, v });
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Size of the color set the graph was declared with.
    pub fn colors(&self) -> usize {
        self.k
    }

    /// Color of the edge `uv`. Panics on `u == v` in debug builds.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v, "no loops in K_n");
        self.chi[u * self.n + v]
    }

    pub(crate) fn set_color(&mut self, u: usize, v: usize, c: Color) {
        self.chi[u * self.n + v] = c;
        self.chi[v * self.n + u] = c;
    }

    /// All edges `(u, v, color)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.color(u, v))))
    }

    /// Number of edges of color `c` at `v`, i.e. `|c(v)|`.
    pub fn color_degree(&self, v: usize, c: Color) -> Result<usize> {
        check_vertex(v, self.n)?;
        self.check_color(c)?;
        Ok((0..self.n)
            .filter(|&w| w != v && self.color(v, w) == c)
            .count())
    }

    /// The spanning subgraph formed by the edges of color `c`.
    pub fn induced_subgraph(&self, c: Color) -> Result<SimpleGraph> {
        self.check_color(c)?;
        let mut g = SimpleGraph::empty(self.n);
        for (u, v, col) in self.edges() {
            if col == c {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Same graph with red and blue exchanged. Requires a 2-coloring.
    pub fn swap_colors(&self) -> Result<Self> {
        self.require_two_colors()?;
        Self::from_fn(self.n, 2, |u, v| self.color(u, v).flip())
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let mut inv = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        Self::from_fn(self.n, self.k, |a, b| self.color(inv[a], inv[b]))
    }

    pub(crate) fn require_two_colors(&self) -> Result<()> {
        if self.k != 2 {
            return Err(Error::NotTwoColored(self.k));
        }
        Ok(())
    }

    fn check_color(&self, c: Color) -> Result<()> {
        if c.index() >= self.k {
            return Err(Error::ColorOutOfRange {
                color: c.index(),
                k: self.k,
            });
        }
        Ok(())
    }
}

/// Simple undirected graph stored as a symmetric boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// The cycle `0-1-...-(n-1)-0`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = false;
        self.adj[v * self.n + u] = false;
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.has_edge(v, w))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `δ(G)`; zero for the empty vertex set.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `Δ(G)`; zero for the empty vertex set.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let m = vertices.len();
        let mut g = Self::empty(m);
        for i in 0..m {
            for j in i + 1..m {
                if self.has_edge(vertices[i], vertices[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(None)
    }

    /// Components of `G - removed`.
    pub fn components_without(&self, removed: Option<usize>) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        if let Some(x) = removed {
            seen[x] = true;
        }
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in 0..self.n {
                    if !seen[w] && self.has_edge(u, w) {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Cut vertices in increasing order (Hopcroft–Tarjan lowpoints).
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Iterative DFS; frame = (vertex, parent, next neighbor to scan, child count).
            let mut stack = vec![(root, usize::MAX, 0usize, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (u, parent, next, _) = *top;
                if let Some(w) = (next..n).find(|&w| self.has_edge(u, w)) {
                    top.2 = w + 1;
                    if disc[w] == usize::MAX {
                        top.3 += 1;
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, u, 0, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    let (u, parent, _, children) = stack.pop().unwrap();
                    if parent == usize::MAX {
                        if children > 1 {
                            is_cut[u] = true;
                        }
                    } else {
                        low[parent] = low[parent].min(low[u]);
                        let grand = stack.last().map(|f| f.1).unwrap_or(usize::MAX);
                        if grand != usize::MAX && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Connected, at least three vertices, and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.articulation_points().is_empty()
    }

    /// A proper 2-coloring of the vertices (`false`/`true` sides), if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// If the graph is exactly `K_{a,b}` with `a ≥ b ≥ 1`, its parts `(larger, smaller)`.
    pub fn complete_bipartite_parts(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        if self.n < 2 || !self.is_connected() {
            return None;
        }
        let side = self.bipartition()?;
        let left: Vec<usize> = (0..self.n).filter(|&v| !side[v]).collect();
        let right: Vec<usize> = (0..self.n).filter(|&v| side[v]).collect();
        if self.edge_count() != left.len() * right.len() {
            return None;
        }
        if left.len() >= right.len() {
            Some((left, right))
        } else {
            Some((right, left))
        }
    }
}

/// Why a candidate cycle cover is rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverViolation {
    #[error("cycle {cycle} shorter than 3 ({len} vertices)")]
    ShortCycle { cycle: usize, len: usize },
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("repeated consecutive vertex {vertex}")]
    RepeatedConsecutive { vertex: usize },
    #[error("not vertex-disjoint: vertex {vertex} appears twice")]
    NotVertexDisjoint { vertex: usize },
    #[error("vertex {vertex} is not covered")]
    Uncovered { vertex: usize },
}

/// Vertex-disjoint cycles, each an open vertex sequence with an implicit closing edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CycleCover {
    cycles: Vec<Vec<usize>>,
}

impl CycleCover {
    pub fn new(cycles: Vec<Vec<usize>>) -> Self {
        CycleCover { cycles }
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn into_cycles(self) -> Vec<Vec<usize>> {
        self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Cycle lengths, sorted ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    /// Each cycle rotated to start at its minimum and oriented so the second
    /// vertex is smaller than the last; cycles sorted by first vertex.
    pub fn canonical(&self) -> Self {
        let mut cycles: Vec<Vec<usize>> = self.cycles.iter().map(|c| canonical_cycle(c)).collect();
        cycles.sort();
        CycleCover { cycles }
    }

    pub fn validate(&self, n: usize) -> Result<(), CoverViolation> {
        validate_cover(n, self)
    }
}

/// Rotation/reflection canonical form of a single cycle.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let m = cycle.len();
    if m == 0 {
        return Vec::new();
    }
    let start = (0..m).min_by_key(|&i| cycle[i]).unwrap();
    let mut out: Vec<usize> = (0..m).map(|i| cycle[(start + i) % m]).collect();
    if m > 2 && out[1] > out[m - 1] {
        out[1..].reverse();
    }
    out
}

/// Checks every cover invariant against order `n`; reports the first violation.
pub fn validate_cover(n: usize, cover: &CycleCover) -> Result<(), CoverViolation> {
    for (i, cycle) in cover.cycles.iter().enumerate() {
        if cycle.len() < 3 {
            return Err(CoverViolation::ShortCycle {
                cycle: i,
                len: cycle.len(),
            });
        }
        if let Some(&v) = cycle.iter().find(|&&v| v >= n) {
            return Err(CoverViolation::VertexOutOfRange { vertex: v });
        }
        let m = cycle.len();
        if let Some(j) = (0..m).find(|&j| cycle[j] == cycle[(j + 1) % m]) {
            return Err(CoverViolation::RepeatedConsecutive { vertex: cycle[j] });
        }
    }
    let mut seen = vec![false; n];
    for &v in cover.cycles.iter().flatten() {
        if seen[v] {
            return Err(CoverViolation::NotVertexDisjoint { vertex: v });
        }
        seen[v] = true;
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(CoverViolation::Uncovered { vertex: v });
    }
    Ok(())
}

/// For each cycle, its single color, or `None` if it mixes colors.
pub fn is_monochromatic(g: &ColoredCompleteGraph, cover: &CycleCover) -> Result<Vec<Option<Color>>> {
    validate_cover(g.order(), cover).map_err(Error::InvalidCover)?;
    Ok(cover.cycles().iter().map(|c| cycle_color(g, c)).collect())
}

/// The common color of all edges of `cycle` (closing edge included), if any.
pub fn cycle_color(g: &ColoredCompleteGraph, cycle: &[usize]) -> Option<Color> {
    let m = cycle.len();
    let first = g.color(cycle[0], cycle[1 % m]);
    (0..m)
        .all(|i| g.color(cycle[i], cycle[(i + 1) % m]) == first)
        .then_some(first)
}

/// The one color shared by every cycle of the cover, if there is one.
pub fn single_color(g: &ColoredCompleteGraph, cover: &CycleCover) -> Result<Option<Color>> {
    let colors = is_monochromatic(g, cover)?;
    let first = colors.first().copied().flatten();
    Ok(first.filter(|&c| colors.iter().all(|&x| x == Some(c))))
}

pub(crate) fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(())
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Precondition(format!(
            "permutation has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        check_vertex(p, n)?;
        if seen[p] {
            return Err(Error::Precondition(format!("{p} repeated in permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}
