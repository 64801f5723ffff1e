//! Reload cost functions and the cost of paths, cycles and covers.
//!
//! A reload cost is paid at every internal vertex of a walk where the
//! incoming and outgoing edges have different colors. Costs are `u64` and all
//! accumulation is checked.

use crate::error::{Error, Result};
use crate::graph::{check_vertex, validate_cover, Color, ColoredCompleteGraph, CycleCover};

/// `k × k` reload costs with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReloadCostMatrix {
    k: usize,
    rho: Vec<u64>,
}

impl ReloadCostMatrix {
    /// Strict constructor: zero diagonal and positive off-diagonal entries.
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = Self::permissive(rows)?;
        for a in 0..m.k {
            for b in 0..m.k {
                if a != b && m.get(Color(a as u32), Color(b as u32)) == 0 {
                    return Err(Error::InvalidReloadMatrix(format!(
                        "off-diagonal entry ({a},{b}) must be positive"
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Only requires a square matrix with zero diagonal.
    pub fn permissive(rows: Vec<Vec<u64>>) -> Result<Self> {
        let k = rows.len();
        let mut rho = Vec::with_capacity(k * k);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidReloadMatrix(format!(
                    "row {a} has {} entries, expected {k}",
                    row.len()
                )));
            }
            if row[a] != 0 {
                return Err(Error::InvalidReloadMatrix(format!(
                    "diagonal entry ({a},{a}) must be zero"
                )));
            }
            rho.extend(row);
        }
        Ok(ReloadCostMatrix { k, rho })
    }

    /// Every change of color costs `cost`.
    pub fn uniform(k: usize, cost: u64) -> Self {
        let rows = (0..k)
            .map(|a| (0..k).map(|b| if a == b { 0 } else { cost }).collect())
            .collect();
        Self::permissive(rows).expect("square with zero diagonal")
    }

    /// Symmetric 2-color matrix with `ρ(red, blue) = ρ(blue, red) = 1`.
    pub fn unit() -> Self {
        Self::uniform(2, 1)
    }

    pub fn colors(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, a: Color, b: Color) -> u64 {
        self.rho[a.index() * self.k + b.index()]
    }

    pub fn max_cost(&self) -> u64 {
        self.rho.iter().copied().max().unwrap_or(0)
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.rho.chunks(self.k.max(1)).map(<[u64]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.k).all(|a| (0..a).all(|b| self.rho[a * self.k + b] == self.rho[b * self.k + a]))
    }

    pub fn satisfies_triangle(&self) -> bool {
        let k = self.k;
        (0..k).all(|a| {
            (0..k).all(|b| {
                (0..k).all(|c| {
                    let direct = self.rho[a * k + c] as u128;
                    direct <= self.rho[a * k + b] as u128 + self.rho[b * k + c] as u128
                })
            })
        })
    }

    fn covers(&self, g: &ColoredCompleteGraph) -> Result<()> {
        if g.colors() > self.k {
            return Err(Error::InvalidReloadMatrix(format!(
                "matrix covers {} colors, graph uses {}",
                self.k,
                g.colors()
            )));
        }
        Ok(())
    }
}

/// Cost at a vertex entered by `(a, v)` and left by `(v, b)`.
#[inline]
fn junction(g: &ColoredCompleteGraph, m: &ReloadCostMatrix, a: usize, v: usize, b: usize) -> u64 {
    m.get(g.color(a, v), g.color(v, b))
}

fn check_walk(g: &ColoredCompleteGraph, walk: &[usize]) -> Result<()> {
    for &v in walk {
        check_vertex(v, g.order())?;
    }
    if let Some(w) = walk.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidWalk(format!("repeated consecutive vertex {}", w[0])));
    }
    Ok(())
}

/// Sum of reload costs at the internal vertices of `path`.
pub fn path_cost(g: &ColoredCompleteGraph, m: &ReloadCostMatrix, path: &[usize]) -> Result<u64> {
    m.covers(g)?;
    if path.len() < 2 {
        return Err(Error::InvalidWalk(format!(
            "a path needs at least 2 vertices, got {}",
            path.len()
        )));
    }
    check_walk(g, path)?;
    path.windows(3).try_fold(0u64, |acc, w| {
        acc.checked_add(junction(g, m, w[0], w[1], w[2]))
            .ok_or(Error::CostOverflow)
    })
}

/// Path cost plus the junction where the closing edge meets the first edge.
///
/// Every junction is charged in traversal order, `ρ(incoming, outgoing)`, so
/// the value is invariant under rotation of `cycle`.
pub fn cycle_cost(g: &ColoredCompleteGraph, m: &ReloadCostMatrix, cycle: &[usize]) -> Result<u64> {
    m.covers(g)?;
    let len = cycle.len();
    if len < 3 {
        return Err(Error::InvalidWalk(format!(
            "a cycle needs at least 3 vertices, got {len}"
        )));
    }
    check_walk(g, cycle)?;
    if cycle[0] == cycle[len - 1] {
        return Err(Error::InvalidWalk(format!(
            "repeated consecutive vertex {} across the closing edge",
            cycle[0]
        )));
    }
    (0..len).try_fold(0u64, |acc, i| {
        let prev = cycle[(i + len - 1) % len];
        let next = cycle[(i + 1) % len];
        acc.checked_add(junction(g, m, prev, cycle[i], next))
            .ok_or(Error::CostOverflow)
    })
}

/// Sum of the cycle costs of a validated cover.
pub fn cover_cost(g: &ColoredCompleteGraph, m: &ReloadCostMatrix, cover: &CycleCover) -> Result<u64> {
    validate_cover(g.order(), cover).map_err(Error::InvalidCover)?;
    cover.cycles().iter().try_fold(0u64, |acc, c| {
        acc.checked_add(cycle_cost(g, m, c)?)
            .ok_or(Error::CostOverflow)
    })
}
