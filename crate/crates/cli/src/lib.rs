//! Commands behind the `mrc3` binary.
//!
//! Exit codes are a stable contract: 0 success, 1 other errors, 2 no cover
//! found, 3 infeasible request, 4 parse error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use reload_cover::coloring::{classify, generate_equitable, generate_nearly_equitable, max_color_gap, ColoringClass};
use reload_cover::graph::{is_monochromatic, validate_cover};
use reload_cover::mcca::mcca;
use reload_cover::oracle::{Oracle, DEFAULT_CAP};
use reload_cover::reduction::{reduce_to_complete, GeneralInstance};
use reload_cover::{cover_cost, ColoredCompleteGraph, CycleCover, ReloadCostMatrix, SimpleGraph};

pub mod experiment;
pub mod format;

use format::{parse_cover, parse_general, parse_instance, write_cover, write_general, write_instance, GeneralFile, Instance, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NONE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

/// Environment variable overriding the oracle size cap.
pub const ORACLE_CAP_VAR: &str = "MRC3_ORACLE_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Core(#[from] reload_cover::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Core(reload_cover::Error::Infeasible(_)) => EXIT_INFEASIBLE,
            _ => EXIT_ERROR,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Instance families the generator can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Kind {
    Equitable,
    NearlyEquitable,
    NearlyStrict,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Equitable => "equitable",
            Kind::NearlyEquitable => "nearly-equitable",
            Kind::NearlyStrict => "nearly-strict",
        }
    }

    pub fn generate(self, n: usize, seed: u64) -> reload_cover::Result<ColoredCompleteGraph> {
        match self {
            Kind::Equitable => generate_equitable(n, seed),
            Kind::NearlyEquitable => generate_nearly_equitable(n, false, seed),
            Kind::NearlyStrict => generate_nearly_equitable(n, true, seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    Mcca,
    Oracle,
}

/// Oracle with the cap from [`ORACLE_CAP_VAR`], or the default.
pub fn oracle_from_env() -> CliResult<Oracle> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Oracle::with_cap)
            .map_err(|_| CliError::Usage(format!("{ORACLE_CAP_VAR}={v} is not a non-negative integer"))),
        Err(_) => Ok(Oracle::with_cap(DEFAULT_CAP)),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn emit(out_path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out_path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn say(stdout: &mut dyn Write, line: String) -> CliResult<()> {
    writeln!(stdout, "{line}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

pub fn load_instance(path: &Path, asymmetric: bool) -> CliResult<Instance> {
    parse_instance(&read(path)?, asymmetric).map_err(|source| CliError::Parse { path: path.into(), source })
}

/// Writes a generated instance with a uniform reload cost of `cost`.
pub fn cmd_generate(
    n: usize,
    kind: Kind,
    seed: u64,
    cost: u64,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult<i32> {
    if cost == 0 {
        return Err(CliError::Usage("reload cost must be positive".into()));
    }
    let graph = kind.generate(n, seed)?;
    let inst = Instance {
        graph,
        rho: ReloadCostMatrix::uniform(2, cost),
    };
    emit(out, &write_instance(&inst), stdout)?;
    Ok(EXIT_OK)
}

pub fn cmd_classify(path: &Path, asymmetric: bool, stdout: &mut dyn Write) -> CliResult<i32> {
    let inst = load_instance(path, asymmetric)?;
    let class = match classify(&inst.graph)? {
        ColoringClass::Equitable => "equitable",
        ColoringClass::NearlyEquitableOnly => "nearly-equitable",
        ColoringClass::Neither => "neither",
    };
    say(stdout, format!("{class} (max color gap {})", max_color_gap(&inst.graph)?))?;
    Ok(EXIT_OK)
}

pub fn cmd_cover(
    path: &Path,
    algorithm: Algorithm,
    out: Option<&Path>,
    asymmetric: bool,
    stdout: &mut dyn Write,
) -> CliResult<i32> {
    let inst = load_instance(path, asymmetric)?;
    let (cover, report) = match algorithm {
        Algorithm::Mcca => {
            let result = mcca(&inst.graph)?;
            let Some(cover) = result.cover else {
                let attempts: Vec<String> = result
                    .trace
                    .attempts
                    .iter()
                    .map(|a| format!("{}: delta={} Delta={} {:?}", a.color, a.min_degree, a.max_degree, a.connectivity))
                    .collect();
                say(stdout, format!("NONE ({})", attempts.join("; ")))?;
                return Ok(EXIT_NONE);
            };
            let color = result.trace.cover_color.expect("set on success");
            let report = format!("mcca branch {} color {color}", result.trace.terminal);
            (cover, report)
        }
        Algorithm::Oracle => {
            let r = oracle_from_env()?.solve_exact(&inst.graph, &inst.rho)?;
            (r.witness, format!("oracle explored {}", r.explored))
        }
    };
    let cost = cover_cost(&inst.graph, &inst.rho, &cover)?;
    let sizes: Vec<String> = cover.sizes().iter().map(usize::to_string).collect();
    say(stdout, format!("{report}, cycles {} (sizes {}), cost {cost}", cover.len(), sizes.join("+")))?;
    if let Some(p) = out {
        emit(Some(p), &write_cover(&cover, !inst.rho.is_symmetric()), stdout)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(instance: &Path, cover_path: &Path, asymmetric: bool, stdout: &mut dyn Write) -> CliResult<i32> {
    let inst = load_instance(instance, asymmetric)?;
    let cover: CycleCover =
        parse_cover(&read(cover_path)?).map_err(|source| CliError::Parse { path: cover_path.into(), source })?;
    let n = inst.graph.order();
    if let Some(v) = cover.cycles().iter().flatten().find(|&&v| v >= n) {
        return Err(CliError::Usage(format!(
            "cover mentions vertex {v} but the instance has order {n}"
        )));
    }
    if let Err(violation) = validate_cover(n, &cover) {
        say(stdout, format!("invalid: {violation}"))?;
        return Ok(EXIT_ERROR);
    }
    let colors = is_monochromatic(&inst.graph, &cover)?;
    let cost = cover_cost(&inst.graph, &inst.rho, &cover)?;
    let first = colors[0];
    let summary = match first {
        Some(c) if colors.iter().all(|&x| x == first) => format!("monochromatic({c})"),
        _ => "mixed".to_string(),
    };
    say(stdout, format!("valid, {summary}, cost {cost}"))?;
    for (cycle, color) in cover.cycles().iter().zip(&colors) {
        let label = color.map_or("mixed".to_string(), |c| c.to_string());
        let ids: Vec<String> = cycle.iter().map(usize::to_string).collect();
        say(stdout, format!("  {label}: {}", ids.join(" ")))?;
    }
    Ok(EXIT_OK)
}

/// Completes a possibly partial instance with big-M fresh colors.
pub fn cmd_reduce(
    path: &Path,
    big_m: Option<u64>,
    out: Option<&Path>,
    asymmetric: bool,
    stdout: &mut dyn Write,
) -> CliResult<i32> {
    let file = parse_general(&read(path)?, asymmetric).map_err(|source| CliError::Parse { path: path.into(), source })?;
    let graph = SimpleGraph::from_edges(file.n, file.edges.iter().map(|&(u, v, _)| (u, v)))?;
    let inst = GeneralInstance::new(graph, file.edges.iter().map(|&(u, v, c)| ((u, v), c)), file.rho.clone())?;
    let m = match big_m {
        Some(m) => m,
        None => inst.min_big_m()?,
    };
    let reduced = reduce_to_complete(&inst, m)?;
    let text = write_general(&GeneralFile {
        n: file.n,
        colors: reduced.graph.colors(),
        edges: reduced.graph.edges().collect(),
        rho: reduced.rho,
    });
    emit(out, &text, stdout)?;
    if out.is_some() {
        say(stdout, format!("{} fresh colors, big_m {m}", reduced.fresh.len()))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_experiment(plan: &experiment::Plan, csv_out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<i32> {
    let rows = experiment::run(plan);
    match csv_out {
        Some(p) => {
            let file = fs::File::create(p).map_err(|source| CliError::Io { path: p.into(), source })?;
            experiment::write_csv(&rows, file)?;
        }
        None => experiment::write_csv(&rows, stdout)?,
    }
    Ok(EXIT_OK)
}
