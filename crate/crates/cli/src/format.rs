//! Text formats for instances and covers.
//!
//! ```text
//! mrc3 v1
//! n 4 colors 2
//! e 0 1 0
//! ...
//! r 0 1 1
//! ```
//!
//! `e u v c` colors the edge `uv`; `r a b cost` sets the reload cost between
//! colors `a` and `b` in both directions. Listing both `r a b` and `r b a`
//! with different costs describes an asymmetric matrix and is only accepted
//! in asymmetric mode. Blank lines and `#` comments are ignored.
//!
//! A cover file has one cycle per line as space-separated vertex ids.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use reload_cover::graph::canonical_cycle;
use reload_cover::{Color, ColoredCompleteGraph, CycleCover, ReloadCostMatrix};

pub const MAGIC: &str = "mrc3 v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line { line, msg: msg.into() }
}

/// A complete 2-or-more colored instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: ColoredCompleteGraph,
    pub rho: ReloadCostMatrix,
}

/// An instance whose edge list may be partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFile {
    pub n: usize,
    pub colors: usize,
    /// Edges `(u, v, color)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize, Color)>,
    pub rho: ReloadCostMatrix,
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then(|| (i + 1, body.split_whitespace().collect()))
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| at(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_general(text: &str, asymmetric: bool) -> Result<GeneralFile, ParseError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, toks)) if toks.join(" ") == MAGIC => {}
        Some((line, _)) => return Err(at(line, format!("expected header `{MAGIC}`"))),
        None => return Err(ParseError::Invalid("empty instance file".into())),
    }
    let (n, k) = match lines.next() {
        Some((line, toks)) => match toks.as_slice() {
            ["n", n, "colors", k] => (num::<usize>(line, n, "order")?, num::<usize>(line, k, "color count")?),
            _ => return Err(at(line, "expected `n <order> colors <count>`")),
        },
        None => return Err(ParseError::Invalid("missing `n .. colors ..` line".into())),
    };
    if k == 0 {
        return Err(ParseError::Invalid("at least one color is required".into()));
    }
    let mut edges = BTreeMap::new();
    let mut costs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (line, toks) in lines {
        match toks.as_slice() {
            ["e", u, v, c] => {
                let u: usize = num(line, u, "vertex")?;
                let v: usize = num(line, v, "vertex")?;
                let c: usize = num(line, c, "color")?;
                if u >= n || v >= n || u == v {
                    return Err(at(line, format!("bad edge {u}-{v} for order {n}")));
                }
                if c >= k {
                    return Err(at(line, format!("color {c} out of range for {k} colors")));
                }
                if edges.insert((u.min(v), u.max(v)), Color(c as u32)).is_some() {
                    return Err(at(line, format!("edge {u}-{v} listed twice")));
                }
            }
            ["r", a, b, cost] => {
                let a: usize = num(line, a, "color")?;
                let b: usize = num(line, b, "color")?;
                let cost: u64 = num(line, cost, "cost")?;
                if a >= k || b >= k || a == b {
                    return Err(at(line, format!("bad color pair {a} {b} for {k} colors")));
                }
                if costs.insert((a, b), cost).is_some() {
                    return Err(at(line, format!("reload cost {a} {b} listed twice")));
                }
            }
            _ => return Err(at(line, "expected `e u v c` or `r a b cost`")),
        }
    }
    let mut rows = vec![vec![0u64; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let (ab, ba) = (costs.get(&(a, b)), costs.get(&(b, a)));
            let (x, y) = match (ab, ba) {
                (Some(&x), Some(&y)) if x != y && !asymmetric => {
                    return Err(ParseError::Invalid(format!(
                        "reload costs {a}->{b} = {x} and {b}->{a} = {y} differ (use --asymmetric)"
                    )))
                }
                (Some(&x), Some(&y)) => (x, y),
                (Some(&x), None) | (None, Some(&x)) => (x, x),
                (None, None) => return Err(ParseError::Invalid(format!("missing reload cost for colors {a} {b}"))),
            };
            rows[a][b] = x;
            rows[b][a] = y;
        }
    }
    let rho = ReloadCostMatrix::new(rows).map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(GeneralFile {
        n,
        colors: k,
        edges: edges.into_iter().map(|((u, v), c)| (u, v, c)).collect(),
        rho,
    })
}

/// Parses an instance that must list all `n(n-1)/2` edges.
pub fn parse_instance(text: &str, asymmetric: bool) -> Result<Instance, ParseError> {
    let file = parse_general(text, asymmetric)?;
    let graph = ColoredCompleteGraph::from_edges(file.n, file.colors, file.edges.iter().copied())
        .map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(Instance { graph, rho: file.rho })
}

pub fn write_general(file: &GeneralFile) -> String {
    let mut out = format!("{MAGIC}\nn {} colors {}\n", file.n, file.colors);
    for &(u, v, c) in &file.edges {
        writeln!(out, "e {u} {v} {}", c.index()).unwrap();
    }
    let k = file.rho.colors();
    for a in 0..k {
        for b in a + 1..k {
            let (ab, ba) = (file.rho.get(color(a), color(b)), file.rho.get(color(b), color(a)));
            writeln!(out, "r {a} {b} {ab}").unwrap();
            if ab != ba {
                writeln!(out, "r {b} {a} {ba}").unwrap();
            }
        }
    }
    out
}

fn color(i: usize) -> Color {
    Color(i as u32)
}

/// Canonical text of a complete instance.
pub fn write_instance(inst: &Instance) -> String {
    write_general(&GeneralFile {
        n: inst.graph.order(),
        colors: inst.graph.colors(),
        edges: inst.graph.edges().collect(),
        rho: inst.rho.clone(),
    })
}

pub fn parse_cover(text: &str) -> Result<CycleCover, ParseError> {
    let mut cycles = Vec::new();
    for (line, toks) in content_lines(text) {
        let cycle = toks
            .iter()
            .map(|t| num::<usize>(line, t, "vertex"))
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(cycle);
    }
    Ok(CycleCover::new(cycles))
}

/// One cycle per line. Canonical unless `keep_orientation`, which is needed
/// to record the cheaper direction of a cycle under an asymmetric matrix.
pub fn write_cover(cover: &CycleCover, keep_orientation: bool) -> String {
    let mut cycles: Vec<Vec<usize>> = cover
        .cycles()
        .iter()
        .map(|c| if keep_orientation { c.clone() } else { canonical_cycle(c) })
        .collect();
    if !keep_orientation {
        cycles.sort();
    }
    let mut out = String::new();
    for c in cycles {
        let line: Vec<String> = c.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const K4: &str = "mrc3 v1\n# path 0-1-2-3 red\nn 4 colors 2\ne 0 1 0\ne 0 2 1\ne 0 3 1\ne 1 2 0\ne 1 3 1\ne 2 3 0\nr 0 1 1\n";

    #[test]
    fn round_trip_is_byte_identical() {
        let inst = parse_instance(K4, false).unwrap();
        let text = write_instance(&inst);
        assert_eq!(text, K4.replace("# path 0-1-2-3 red\n", ""));
        assert_eq!(write_instance(&parse_instance(&text, false).unwrap()), text);
    }

    #[test]
    fn edges_in_any_order() {
        let shuffled = "mrc3 v1\nn 3 colors 2\ne 2 1 0\ne 0 2 1  # trailing comment\n\ne 0 1 0\nr 1 0 5\n";
        let inst = parse_instance(shuffled, false).unwrap();
        assert_eq!(inst.graph.color(1, 2), Color::RED);
        assert_eq!(inst.rho.get(Color::RED, Color::BLUE), 5);
        assert_eq!(inst.rho.get(Color::BLUE, Color::RED), 5);
    }

    #[test]
    fn asymmetric_needs_opt_in() {
        let text = "mrc3 v1\nn 3 colors 2\ne 0 1 0\ne 0 2 0\ne 1 2 1\nr 0 1 2\nr 1 0 3\n";
        assert!(matches!(parse_instance(text, false), Err(ParseError::Invalid(_))));
        let inst = parse_instance(text, true).unwrap();
        assert_eq!(inst.rho.get(Color::BLUE, Color::RED), 3);
        assert_eq!(write_instance(&inst), text);
    }

    #[test]
    fn errors_name_the_line() {
        let missing_edge = "mrc3 v1\nn 3 colors 2\ne 0 1 0\ne 0 2 0\nr 0 1 1\n";
        assert!(matches!(parse_instance(missing_edge, false), Err(ParseError::Invalid(_))));
        let bad = "mrc3 v1\nn 3 colors 2\ne 0 1 7\n";
        assert_eq!(
            parse_instance(bad, false),
            Err(ParseError::Line { line: 3, msg: "color 7 out of range for 2 colors".into() })
        );
        assert!(matches!(parse_instance("mrc3 v2\n", false), Err(ParseError::Line { line: 1, .. })));
        assert!(parse_instance("", false).is_err());
        let zero = "mrc3 v1\nn 3 colors 2\ne 0 1 0\ne 0 2 0\ne 1 2 1\nr 0 1 0\n";
        assert!(parse_instance(zero, false).is_err());
        let no_rho = "mrc3 v1\nn 3 colors 2\ne 0 1 0\ne 0 2 0\ne 1 2 1\n";
        assert!(parse_instance(no_rho, false).is_err());
    }

    #[test]
    fn covers() {
        let cover = parse_cover("3 4 5\n# c\n2 0 1\n").unwrap();
        assert_eq!(cover.cycles(), [vec![3, 4, 5], vec![2, 0, 1]]);
        assert_eq!(write_cover(&cover, false), "0 1 2\n3 4 5\n");
        assert_eq!(write_cover(&cover, true), "3 4 5\n2 0 1\n");
        assert!(parse_cover("0 x 2\n").is_err());
    }
}
