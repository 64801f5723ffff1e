//! Batch runs of the cover algorithm over generated instances.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use reload_cover::coloring::equitable_feasible;
use reload_cover::mcca::{mcca, ColorAttempt, Connectivity};
use reload_cover::{cover_cost, ReloadCostMatrix};

use crate::Kind;

pub const HEADER: [&str; 10] = [
    "n",
    "kind",
    "seed",
    "branch",
    "cycles",
    "sizes",
    "cost",
    "wall_time_us",
    "success_rate",
    "annotation",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Row {
    pub n: usize,
    pub kind: String,
    pub seed: String,
    pub branch: String,
    pub cycles: String,
    pub sizes: String,
    pub cost: String,
    pub wall_time_us: String,
    pub success_rate: String,
    pub annotation: String,
}

impl Row {
    fn record(&self) -> [String; 10] {
        [
            self.n.to_string(),
            self.kind.clone(),
            self.seed.clone(),
            self.branch.clone(),
            self.cycles.clone(),
            self.sizes.clone(),
            self.cost.clone(),
            self.wall_time_us.clone(),
            self.success_rate.clone(),
            self.annotation.clone(),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct Plan {
    pub n_min: usize,
    pub n_max: usize,
    pub kinds: Vec<Kind>,
    pub seed_start: u64,
    pub seeds: u64,
}

/// Why `kind` cannot be generated at order `n`, if it cannot.
pub fn infeasibility(n: usize, kind: Kind) -> Option<String> {
    match kind {
        _ if n < 3 => Some(format!("K_{n} has no cycle cover")),
        Kind::Equitable if !equitable_feasible(n) => {
            Some("K_{4k+3} admits no equitable 2-edge-coloring".into())
        }
        Kind::NearlyStrict if n % 2 == 0 => {
            Some("even order: nearly equitable colorings are equitable".into())
        }
        Kind::NearlyStrict if n < 5 => Some("no non-equitable construction below n = 5".into()),
        _ => None,
    }
}

fn describe(a: &ColorAttempt) -> String {
    let conn = match a.connectivity {
        Connectivity::Disconnected => "disconnected",
        Connectivity::OneConnected => "1-connected",
        Connectivity::TwoConnected => "2-connected",
    };
    format!("{} delta={} Delta={} {conn}", a.color, a.min_degree, a.max_degree)
}

fn run_one(n: usize, kind: Kind, seed: u64) -> Row {
    let mut row = Row {
        n,
        kind: kind.name().into(),
        seed: seed.to_string(),
        ..Row::default()
    };
    let g = match kind.generate(n, seed) {
        Ok(g) => g,
        Err(e) => {
            row.branch = "error".into();
            row.annotation = e.to_string();
            return row;
        }
    };
    let start = Instant::now();
    let out = mcca(&g);
    row.wall_time_us = start.elapsed().as_micros().to_string();
    let out = match out {
        Ok(out) => out,
        Err(e) => {
            row.branch = "error".into();
            row.annotation = e.to_string();
            return row;
        }
    };
    row.branch = out.trace.terminal.name().into();
    match out.cover {
        Some(cover) => {
            row.cycles = cover.len().to_string();
            row.sizes = cover.sizes().iter().map(usize::to_string).collect::<Vec<_>>().join("+");
            row.cost = match cover_cost(&g, &ReloadCostMatrix::unit(), &cover) {
                Ok(c) => c.to_string(),
                Err(e) => {
                    row.annotation = e.to_string();
                    String::new()
                }
            };
        }
        None => {
            let parts: Vec<String> = out.trace.attempts.iter().map(describe).collect();
            row.annotation = parts.join("; ");
        }
    }
    row
}

/// All rows of a plan in `(n, kind, seed)` order, each `(n, kind)` block
/// followed by its summary row.
pub fn run(plan: &Plan) -> Vec<Row> {
    let mut rows = Vec::new();
    for n in plan.n_min..=plan.n_max {
        for &kind in &plan.kinds {
            if let Some(why) = infeasibility(n, kind) {
                rows.push(Row {
                    n,
                    kind: kind.name().into(),
                    seed: "-".into(),
                    branch: "infeasible".into(),
                    annotation: why,
                    ..Row::default()
                });
                continue;
            }
            let block: Vec<Row> = (plan.seed_start..plan.seed_start + plan.seeds)
                .into_par_iter()
                .map(|seed| run_one(n, kind, seed))
                .collect();
            let successes = block.iter().filter(|r| !r.cycles.is_empty()).count();
            let rate = if block.is_empty() {
                String::new()
            } else {
                format!("{:.4}", successes as f64 / block.len() as f64)
            };
            rows.extend(block);
            rows.push(Row {
                n,
                kind: kind.name().into(),
                seed: "summary".into(),
                success_rate: rate,
                annotation: format!("{successes}/{} covers", plan.seeds),
                ..Row::default()
            });
        }
    }
    rows
}

pub fn write_csv(rows: &[Row], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range_has_header_only() {
        let plan = Plan { n_min: 5, n_max: 4, kinds: vec![Kind::Equitable], seed_start: 0, seeds: 3 };
        let mut buf = Vec::new();
        write_csv(&run(&plan), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", HEADER.join(",")));
    }

    #[test]
    fn rows_are_ordered_and_summarized() {
        let plan = Plan {
            n_min: 6,
            n_max: 7,
            kinds: vec![Kind::Equitable, Kind::NearlyEquitable],
            seed_start: 10,
            seeds: 4,
        };
        let rows = run(&plan);
        // n=6: 4+1 and 4+1; n=7: equitable infeasible, nearly 4+1.
        assert_eq!(rows.len(), 5 + 5 + 1 + 5);
        assert_eq!(rows[0].seed, "10");
        assert_eq!(rows[4].seed, "summary");
        assert_eq!(rows[4].success_rate, "1.0000");
        assert_eq!(rows[10].branch, "infeasible");
        let untimed = |rows: Vec<Row>| {
            rows.into_iter()
                .map(|r| Row { wall_time_us: String::new(), ..r })
                .collect::<Vec<_>>()
        };
        assert_eq!(untimed(run(&plan)), untimed(rows));
    }

    #[test]
    fn none_rows_are_annotated() {
        // K_4 equitable instances include the path/path coloring.
        let plan = Plan { n_min: 4, n_max: 4, kinds: vec![Kind::Equitable], seed_start: 0, seeds: 40 };
        let rows = run(&plan);
        let none: Vec<_> = rows.iter().filter(|r| r.branch == "none").collect();
        assert!(!none.is_empty());
        assert!(none.iter().all(|r| r.annotation.contains("red delta=1 Delta=2")));
    }
}
