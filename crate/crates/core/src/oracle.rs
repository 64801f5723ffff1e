//! Exhaustive ground truth for small instances.
//!
//! 2-factors of `K_n` are enumerated in canonical form: each cycle starts at
//! the lowest unused vertex, every later vertex is larger than that anchor,
//! and a cycle may only close when its second vertex is smaller than its
//! last. Each 2-factor therefore appears exactly once.

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredCompleteGraph, CycleCover, SimpleGraph};
use crate::reload::ReloadCostMatrix;

/// Default size cap for enumeration and exact solving.
pub const DEFAULT_CAP: usize = 12;
/// Largest order accepted by the single-color existence search.
pub const MONOCHROMATIC_CAP: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimal_cost: u64,
    pub witness: CycleCover,
    /// Number of 2-factors examined before stopping.
    pub explored: u64,
}

/// Exact solver with a configurable size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::SizeCap { n, cap: self.cap });
        }
        Ok(())
    }

    pub fn enumerate_two_factors(&self, n: usize) -> Result<TwoFactors> {
        self.check(n)?;
        if n < 3 {
            return Err(Error::Precondition(format!("K_{n} has no cycle cover")));
        }
        Ok(TwoFactors::new(n))
    }

    /// Minimum reload cost over all cycle covers of `g`.
    ///
    /// Each cycle is priced in its cheaper direction, which matters only for
    /// asymmetric matrices; the witness lists cycles in that direction.
    pub fn solve_exact(&self, g: &ColoredCompleteGraph, m: &ReloadCostMatrix) -> Result<OracleResult> {
        if g.colors() > m.colors() {
            return Err(Error::InvalidReloadMatrix(format!(
                "matrix covers {} colors, graph uses {}",
                m.colors(),
                g.colors()
            )));
        }
        self.solve_partial(g.order(), |u, v| Some(g.color(u, v)), m)?
            .ok_or_else(|| Error::Infeasible("no cycle cover".into()))
    }

    /// Exact optimum over covers using only pairs with `color_of(u, v) = Some(_)`;
    /// `None` when no such cover exists.
    pub(crate) fn solve_partial(
        &self,
        n: usize,
        color_of: impl Fn(usize, usize) -> Option<Color>,
        m: &ReloadCostMatrix,
    ) -> Result<Option<OracleResult>> {
        let mut best: Option<(u128, Vec<Vec<usize>>)> = None;
        let mut explored = 0u64;
        for cover in self.enumerate_two_factors(n)? {
            explored += 1;
            let mut total = 0u128;
            let mut oriented = Vec::with_capacity(cover.len());
            let mut feasible = true;
            for cycle in cover.cycles() {
                match cheaper_direction(cycle, &color_of, m) {
                    Some((cost, forward)) => {
                        total += cost;
                        oriented.push(forward);
                    }
                    None => {
                        feasible = false;
                        break;
                    }
                }
            }
            if !feasible {
                continue;
            }
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                let cycles = cover
                    .into_cycles()
                    .into_iter()
                    .zip(oriented)
                    .map(|(mut c, forward)| {
                        if !forward {
                            c.reverse();
                        }
                        c
                    })
                    .collect();
                best = Some((total, cycles));
                if total == 0 {
                    break;
                }
            }
        }
        best.map(|(cost, cycles)| {
            Ok(OracleResult {
                optimal_cost: u64::try_from(cost).map_err(|_| Error::CostOverflow)?,
                witness: CycleCover::new(cycles),
                explored,
            })
        })
        .transpose()
    }

    /// Whether one color class alone admits a cycle cover, with a witness.
    ///
    /// Works per color by dynamic programming over vertex subsets, so it
    /// accepts orders up to `max(cap, 15)`.
    pub fn exhaustive_monochromatic_exists(
        &self,
        g: &ColoredCompleteGraph,
    ) -> Result<Option<(Color, CycleCover)>> {
        let n = g.order();
        let cap = self.cap.max(MONOCHROMATIC_CAP);
        if n > cap {
            return Err(Error::SizeCap { n, cap });
        }
        for c in 0..g.colors() as u32 {
            let sub = g.induced_subgraph(Color(c))?;
            if let Some(cover) = subgraph_cycle_cover(&sub) {
                return Ok(Some((Color(c), cover)));
            }
        }
        Ok(None)
    }
}

pub fn enumerate_two_factors(n: usize) -> Result<TwoFactors> {
    Oracle::default().enumerate_two_factors(n)
}

pub fn solve_exact(g: &ColoredCompleteGraph, m: &ReloadCostMatrix) -> Result<OracleResult> {
    Oracle::default().solve_exact(g, m)
}

pub fn exhaustive_monochromatic_exists(g: &ColoredCompleteGraph) -> Result<Option<(Color, CycleCover)>> {
    Oracle::default().exhaustive_monochromatic_exists(g)
}

/// Cost of `cycle` in its cheaper direction and whether that is the listed one.
fn cheaper_direction(
    cycle: &[usize],
    color_of: &impl Fn(usize, usize) -> Option<Color>,
    m: &ReloadCostMatrix,
) -> Option<(u128, bool)> {
    let len = cycle.len();
    let mut colors = Vec::with_capacity(len);
    for i in 0..len {
        colors.push(color_of(cycle[i], cycle[(i + 1) % len])?);
    }
    // colors[i] is the edge leaving cycle[i]; the junction at cycle[i+1]
    // joins colors[i] and colors[i+1].
    let (mut fwd, mut bwd) = (0u128, 0u128);
    for i in 0..len {
        let (a, b) = (colors[i], colors[(i + 1) % len]);
        fwd += u128::from(m.get(a, b));
        bwd += u128::from(m.get(b, a));
    }
    Some(if bwd < fwd { (bwd, false) } else { (fwd, true) })
}

/// A cycle cover of `g` with all cycles of length at least 3, if one exists.
/// Panics above 20 vertices.
pub fn subgraph_cycle_cover(g: &SimpleGraph) -> Option<CycleCover> {
    let n = g.order();
    assert!(n <= 20, "subset search is limited to 20 vertices");
    if n == 0 {
        return Some(CycleCover::new(Vec::new()));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w))
        .collect();
    let size = 1usize << n;
    // ends[S]: last vertices of paths that start at min(S) and visit exactly S.
    let mut ends = vec![0u32; size];
    for a in 0..n {
        ends[1 << a] = 1 << a;
    }
    for s in 1..size as u32 {
        let low = s.trailing_zeros();
        let mut e = ends[s as usize];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            // Stay above the anchor so min(S) is preserved.
            let mut next = nbr[v] & !s & !((2u32 << low) - 1);
            while next != 0 {
                let w = next.trailing_zeros();
                next &= next - 1;
                ends[(s | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let is_cycle = |s: u32| s.count_ones() >= 3 && ends[s as usize] & nbr[s.trailing_zeros() as usize] != 0;

    // cover[R]: R splits into vertex sets of cycles; choice[R] is the part
    // holding min(R).
    let mut choice = vec![0u32; size];
    let mut cover = vec![false; size];
    cover[0] = true;
    for r in 1..size as u32 {
        let low = r & r.wrapping_neg();
        let rest = r ^ low;
        let mut sub = rest;
        loop {
            let s = sub | low;
            if cover[(r ^ s) as usize] && is_cycle(s) {
                cover[r as usize] = true;
                choice[r as usize] = s;
                break;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let full = (size - 1) as u32;
    if !cover[full as usize] {
        return None;
    }
    let mut cycles = Vec::new();
    let mut r = full;
    while r != 0 {
        let s = choice[r as usize];
        cycles.push(trace_cycle(s, &ends, &nbr));
        r ^= s;
    }
    Some(CycleCover::new(cycles))
}

fn trace_cycle(s: u32, ends: &[u32], nbr: &[u32]) -> Vec<usize> {
    let anchor = s.trailing_zeros() as usize;
    let mut cur = (ends[s as usize] & nbr[anchor]).trailing_zeros() as usize;
    let mut set = s;
    let mut rev = vec![cur];
    while set.count_ones() > 1 {
        let prev = set & !(1 << cur);
        let u = (ends[prev as usize] & nbr[cur]).trailing_zeros() as usize;
        rev.push(u);
        set = prev;
        cur = u;
    }
    rev.reverse();
    rev
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    vertex: usize,
    /// Next option at this level: a successor `< n`, or `n` for closing.
    next: usize,
}

/// Iterator over the 2-factors of `K_n` in canonical form.
#[derive(Debug, Clone)]
pub struct TwoFactors {
    n: usize,
    used: Vec<bool>,
    used_count: usize,
    frames: Vec<Frame>,
    /// Frame indices where cycles start.
    starts: Vec<usize>,
}

impl TwoFactors {
    fn new(n: usize) -> Self {
        let mut used = vec![false; n];
        used[0] = true;
        TwoFactors {
            n,
            used,
            used_count: 1,
            frames: vec![Frame { vertex: 0, next: 1 }],
            starts: vec![0],
        }
    }

    fn push(&mut self, vertex: usize, start: bool) {
        self.used[vertex] = true;
        self.used_count += 1;
        if start {
            self.starts.push(self.frames.len());
        }
        self.frames.push(Frame { vertex, next: 0 });
    }

    fn current_cover(&self) -> CycleCover {
        let mut bounds = self.starts.clone();
        bounds.push(self.frames.len());
        CycleCover::new(
            bounds
                .windows(2)
                .map(|w| self.frames[w[0]..w[1]].iter().map(|f| f.vertex).collect())
                .collect(),
        )
    }
}

impl Iterator for TwoFactors {
    type Item = CycleCover;

    fn next(&mut self) -> Option<CycleCover> {
        let n = self.n;
        loop {
            let top = self.frames.len().checked_sub(1)?;
            let start = *self.starts.last().unwrap();
            let anchor = self.frames[start].vertex;
            let mut o = self.frames[top].next.max(anchor + 1);
            while o < n && self.used[o] {
                o += 1;
            }
            if o < n {
                self.frames[top].next = o + 1;
                self.push(o, false);
                continue;
            }
            if o == n {
                self.frames[top].next = n + 1;
                let len = top + 1 - start;
                let remaining = n - self.used_count;
                let closable = len >= 3
                    && self.frames[start + 1].vertex < self.frames[top].vertex
                    && remaining != 1
                    && remaining != 2;
                if closable {
                    if remaining == 0 {
                        return Some(self.current_cover());
                    }
                    let next_anchor = self.used.iter().position(|&u| !u).unwrap();
                    self.push(next_anchor, true);
                    continue;
                }
            }
            let frame = self.frames.pop().unwrap();
            self.used[frame.vertex] = false;
            self.used_count -= 1;
            if self.starts.last() == Some(&self.frames.len()) {
                self.starts.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_cycle, validate_cover};
    use crate::reload::cover_cost;
    use std::collections::HashSet;

    /// Independent count: every permutation cut into consecutive blocks of
    /// length ≥ 3, each block canonicalized, collected as a set.
    fn double_enumeration(n: usize) -> HashSet<Vec<Vec<usize>>> {
        fn blocks(perm: &[usize], out: &mut HashSet<Vec<Vec<usize>>>, acc: &mut Vec<Vec<usize>>) {
            if perm.is_empty() {
                let mut c = acc.clone();
                c.sort();
                out.insert(c);
                return;
            }
            for len in 3..=perm.len() {
                acc.push(canonical_cycle(&perm[..len]));
                blocks(&perm[len..], out, acc);
                acc.pop();
            }
        }
        fn permute(items: &mut Vec<usize>, k: usize, out: &mut HashSet<Vec<Vec<usize>>>) {
            if k == items.len() {
                blocks(items, out, &mut Vec::new());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                permute(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let mut out = HashSet::new();
        permute(&mut (0..n).collect(), 0, &mut out);
        out
    }

    #[test]
    fn counts_match_double_enumeration() {
        for n in 3..=7 {
            let mine: Vec<Vec<Vec<usize>>> = enumerate_two_factors(n)
                .unwrap()
                .map(|c| {
                    let mut cycles = c.into_cycles();
                    cycles.sort();
                    cycles
                })
                .collect();
            let set: HashSet<_> = mine.iter().cloned().collect();
            assert_eq!(set.len(), mine.len(), "duplicates at n={n}");
            assert_eq!(set, double_enumeration(n), "n={n}");
        }
    }

    #[test]
    fn known_counts() {
        // 6!/12 Hamiltonian cycles plus C(6,3)/2 triangle pairs.
        assert_eq!(enumerate_two_factors(6).unwrap().count(), 70);
        let expected = [1u64, 3, 12, 70, 465, 3507, 30016, 286884];
        for (n, &e) in (3..=10).zip(&expected) {
            assert_eq!(enumerate_two_factors(n).unwrap().count() as u64, e, "n={n}");
        }
    }

    #[test]
    fn examples() {
        let covers: Vec<_> = enumerate_two_factors(3).unwrap().collect();
        assert_eq!(covers, vec![CycleCover::new(vec![vec![0, 1, 2]])]);
        let k4: Vec<_> = enumerate_two_factors(4).unwrap().collect();
        assert_eq!(k4.len(), 3);
        assert!(k4.iter().all(|c| c.len() == 1));
        assert!(enumerate_two_factors(2).is_err());
        assert!(matches!(enumerate_two_factors(13), Err(Error::SizeCap { n: 13, cap: 12 })));
        assert!(Oracle::with_cap(13).enumerate_two_factors(13).is_ok());
    }

    #[test]
    fn every_cover_is_canonical_and_valid() {
        for c in enumerate_two_factors(8).unwrap() {
            validate_cover(8, &c).unwrap();
            for cycle in c.cycles() {
                assert_eq!(&canonical_cycle(cycle), cycle);
            }
        }
    }

    #[test]
    fn solve_exact_examples() {
        let red = ColoredCompleteGraph::monochromatic(5, Color::RED);
        let r = solve_exact(&red, &ReloadCostMatrix::uniform(2, 7)).unwrap();
        assert_eq!(r.optimal_cost, 0);

        let p4 = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let g = ColoredCompleteGraph::from_red_graph(&p4);
        let r = solve_exact(&g, &ReloadCostMatrix::unit()).unwrap();
        assert_eq!(r.optimal_cost, 2);
        assert_eq!(r.explored, 3);
        assert_eq!(cover_cost(&g, &ReloadCostMatrix::unit(), &r.witness).unwrap(), 2);

        let g = ColoredCompleteGraph::from_fn(9, 2, |u, v| {
            if (u < 5) == (v < 5) { Color::RED } else { Color::BLUE }
        })
        .unwrap();
        let r = solve_exact(&g, &ReloadCostMatrix::unit()).unwrap();
        assert_eq!(r.optimal_cost, 0);
        assert_eq!(r.witness.sizes(), vec![4, 5]);
    }

    #[test]
    fn solve_exact_matches_minimum_over_enumeration() {
        use rand::Rng as _;
        for seed in 0..20 {
            let mut rng = crate::rng::seeded(seed);
            let n = 4 + (seed as usize % 4);
            let g = ColoredCompleteGraph::from_fn(n, 3, |_, _| Color(rng.gen_range(0..3))).unwrap();
            let rows = (0..3)
                .map(|a| (0..3).map(|b| if a == b { 0 } else { rng.gen_range(1..20) }).collect())
                .collect();
            let m = ReloadCostMatrix::new(rows).unwrap();
            let brute = enumerate_two_factors(n)
                .unwrap()
                .map(|c| {
                    let fwd = cover_cost(&g, &m, &c).unwrap();
                    // Best orientation per cycle.
                    c.cycles()
                        .iter()
                        .map(|cy| {
                            let one = crate::reload::cycle_cost(&g, &m, cy).unwrap();
                            let mut r = cy.clone();
                            r.reverse();
                            one.min(crate::reload::cycle_cost(&g, &m, &r).unwrap())
                        })
                        .sum::<u64>()
                        .min(fwd)
                })
                .min()
                .unwrap();
            let r = solve_exact(&g, &m).unwrap();
            assert_eq!(r.optimal_cost, brute);
            assert_eq!(cover_cost(&g, &m, &r.witness).unwrap(), brute);
        }
    }

    #[test]
    fn monochromatic_examples() {
        let g = ColoredCompleteGraph::from_fn(6, 2, |u, v| {
            if (u < 3) == (v < 3) { Color::RED } else { Color::BLUE }
        })
        .unwrap();
        let (_, w) = exhaustive_monochromatic_exists(&g).unwrap().unwrap();
        validate_cover(6, &w).unwrap();
        assert!(crate::graph::single_color(&g, &w).unwrap().is_some());

        let p4 = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let g = ColoredCompleteGraph::from_red_graph(&p4);
        assert_eq!(exhaustive_monochromatic_exists(&g).unwrap(), None);

        let g = crate::coloring::generate_nearly_equitable(13, true, 3).unwrap();
        let (c, w) = exhaustive_monochromatic_exists(&g).unwrap().unwrap();
        assert_eq!(crate::graph::single_color(&g, &w).unwrap(), Some(c));
        assert!(exhaustive_monochromatic_exists(&ColoredCompleteGraph::monochromatic(16, Color::RED)).is_err());
    }

    #[test]
    fn single_color_implies_zero_cost() {
        use rand::Rng as _;
        for seed in 0..60 {
            let mut rng = crate::rng::seeded(seed);
            let n = 5 + (seed as usize % 4);
            let g = ColoredCompleteGraph::from_fn(n, 2, |_, _| Color(rng.gen_range(0..2))).unwrap();
            let exact = solve_exact(&g, &ReloadCostMatrix::unit()).unwrap();
            if let Some((_, w)) = exhaustive_monochromatic_exists(&g).unwrap() {
                assert_eq!(exact.optimal_cost, 0);
                assert_eq!(cover_cost(&g, &ReloadCostMatrix::unit(), &w).unwrap(), 0);
            }
        }
    }

    #[test]
    fn subgraph_covers_agree_with_enumeration() {
        use rand::Rng as _;
        for seed in 0..80 {
            let mut rng = crate::rng::seeded(seed);
            let n = 3 + (seed as usize % 6);
            let mut g = SimpleGraph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let brute = enumerate_two_factors(n)
                .unwrap()
                .any(|c| c.cycles().iter().all(|cy| (0..cy.len()).all(|i| g.has_edge(cy[i], cy[(i + 1) % cy.len()]))));
            let found = subgraph_cycle_cover(&g);
            assert_eq!(found.is_some(), brute, "seed {seed}");
            if let Some(c) = found {
                validate_cover(n, &c).unwrap();
            }
        }
    }
}
