//! Command-line harness: parsing, dispatch and output formatting.
//!
//! Everything goes through [`run`], which takes the argument list and the three
//! standard streams and returns the process exit code.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use antimagic::constructions::{self, ConstructedLabeling, ConstructionError};
use antimagic::labeling::{self, Verdict};
use antimagic::magic;
use antimagic::solver::{self, SearchBudget, SolveError, Status};
use antimagic::{FamilySpec, Graph, LabelingError, Mode, TotalLabeling, WeightProfile};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "antimagic", version, about = "Super vertex/edge total local antimagic labelings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the closed-form labeling of a family instance.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a labeling: bijectivity, weights, local antimagic property, class.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        /// Also require the labeling to belong to this class.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
    },
    /// Compute the minimum number of colors by exhaustive search.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Construct and check every instance in a parameter range (JSONL).
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build and verify a magic rectangle.
    Mr {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search every connected graph up to an order for a labeling (JSONL).
    Conjecture {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=8))]
        max_order: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Render a graph, optionally labeled.
    Export {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    CompleteBipartite,
    K2n,
    Spider,
    Bistar,
    Corona,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Base family for `corona`; its parameters come from --n/--m/--t.
    #[arg(long, value_enum)]
    base: Option<Family>,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: Option<u64>,
    /// Seconds.
    #[arg(long, value_parser = parse_seconds)]
    max_time: Option<Duration>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    parallelism: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        let default = SearchBudget::default();
        SearchBudget {
            max_nodes: self.max_nodes.unwrap_or(default.max_nodes),
            max_time: self.max_time.unwrap_or(default.max_time),
            parallelism: self.parallelism as usize,
        }
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_seconds(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if secs.is_finite() && secs > 0.0 {
        Ok(Duration::from_secs_f64(secs))
    } else {
        Err("must be a positive number of seconds".into())
    }
}

/// An error with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Failure { code: EXIT_MALFORMED, message: message.into() }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = match e {
            ConstructionError::SelfCheck { .. } => EXIT_INVALID,
            _ => EXIT_MALFORMED,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<LabelingError> for Failure {
    fn from(e: LabelingError) -> Self {
        Failure::malformed(e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_cache: Option<String>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    /// Reads a file, or standard input for `-` (read once, then reused).
    fn read(&mut self, path: &PathBuf) -> Result<String, Failure> {
        if path.as_os_str() == "-" {
            if self.stdin_cache.is_none() {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(|e| Failure::malformed(format!("stdin: {e}")))?;
                self.stdin_cache = Some(s);
            }
            return Ok(self.stdin_cache.clone().expect("cached"));
        }
        std::fs::read_to_string(path).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let line = serde_json::to_string(value).expect("serializable output");
        writeln!(self.out, "{line}").map_err(|e| Failure { code: EXIT_MALFORMED, message: e.to_string() })
    }

    fn text(&mut self, text: &str) -> Result<(), Failure> {
        self.out.write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_MALFORMED, message: e.to_string() })
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_MALFORMED;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let mut io = Io { stdin, stdin_cache: None, out: stdout, err: stderr };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, io: &mut Io) -> Result<i32, Failure> {
    match command {
        Command::Construct { family, mode, seed, format } => {
            let c = build(&family, mode, seed)?;
            match format {
                Format::Json => io.json(&c)?,
                Format::Dot => io.text(&export_dot(&c.graph, Some(&c.labeling), Some(&c.profile))?)?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { graph, labeling, mode } => {
            let g = read_graph(io, &graph)?;
            let f = read_labeling(io, &labeling)?;
            verify(io, &g, &f, mode)
        }
        Command::Solve { graph, mode, budget } => {
            let g = read_graph(io, &graph)?;
            match solver::solve_min_colors(&g, mode, &budget.budget()) {
                Ok(r) => {
                    io.json(&r)?;
                    Ok(if r.status == Status::Exact { EXIT_OK } else { EXIT_BUDGET })
                }
                Err(SolveError::NoValidLabeling { graph, mode }) => {
                    io.json(&serde_json::json!({ "status": "NoValidLabeling", "certificate": { "graph": graph, "mode": mode } }))?;
                    let _ = writeln!(io.err, "COUNTEREXAMPLE: no {mode} local antimagic labeling exists");
                    Ok(EXIT_INVALID)
                }
                Err(SolveError::BudgetExhausted) => Ok(EXIT_BUDGET),
            }
        }
        Command::Sweep { family, mode, from, to, seed } => {
            if from > to {
                return Err(Failure::malformed(format!("--from {from} exceeds --to {to}")));
            }
            let mut all_ok = true;
            for n in from..=to {
                let row = sweep_row(&family, mode, n, seed);
                all_ok &= row.valid && row.bound_satisfied;
                io.json(&row)?;
            }
            Ok(if all_ok { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Mr { rows, cols, seed } => {
            let r =
                magic::construct_magic_rectangle(rows, cols, seed).map_err(|e| Failure::malformed(e.to_string()))?;
            let problems = magic::verify_magic_rectangle(&r);
            io.json(&serde_json::json!({
                "rows": r.rows,
                "cols": r.cols,
                "cells": r.cells,
                "row_sum": r.row_sum(),
                "col_sum": r.col_sum(),
                "verified": problems.is_empty(),
            }))?;
            Ok(if problems.is_empty() { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Conjecture { mode, max_order, budget } => {
            let report = solver::conjecture_scan(max_order as usize, mode, &budget.budget());
            for entry in &report.entries {
                io.json(entry)?;
            }
            let counterexamples = report.counterexamples().count();
            for entry in report.counterexamples() {
                let _ = writeln!(io.err, "COUNTEREXAMPLE: {:?} admits no {mode} labeling", entry.graph);
            }
            let _ = writeln!(
                io.err,
                "scanned {} graphs, {counterexamples} counterexamples, partial: {}",
                report.entries.len(),
                report.partial()
            );
            Ok(if counterexamples > 0 {
                EXIT_INVALID
            } else if report.partial() {
                EXIT_BUDGET
            } else {
                EXIT_OK
            })
        }
        Command::Export { graph, labeling, format } => {
            let g = read_graph(io, &graph)?;
            let f = labeling.map(|p| read_labeling(io, &p)).transpose()?;
            let profile = f.as_ref().map(|f| labeling::weight_profile(&g, f)).transpose()?;
            match format {
                Format::Dot => io.text(&export_dot(&g, f.as_ref(), profile.as_ref())?)?,
                Format::Json => {
                    io.json(&serde_json::json!({ "graph": g, "labeling": f, "weights": profile }))?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

// ============================================================================
// Inputs
// ============================================================================

/// Accepts either a bare object or one nested under `key` (as in `construct` output).
fn parse_nested<T: serde::de::DeserializeOwned>(text: &str, key: &str) -> Result<T, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::malformed(format!("invalid JSON: {e}")))?;
    let inner = match value.get(key) {
        Some(v) => v.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| Failure::malformed(format!("invalid {key}: {e}")))
}

fn read_graph(io: &mut Io, path: &PathBuf) -> Result<Graph, Failure> {
    parse_nested(&io.read(path)?, "graph")
}

fn read_labeling(io: &mut Io, path: &PathBuf) -> Result<TotalLabeling, Failure> {
    parse_nested(&io.read(path)?, "labeling")
}

fn family_spec(family: Family, args: &FamilyArgs) -> Result<FamilySpec, Failure> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::malformed(format!("--family {family:?} needs --{flag}")))
    };
    Ok(match family {
        Family::Path => FamilySpec::Path { n: need(args.n, "n")? },
        Family::Cycle => FamilySpec::Cycle { n: need(args.n, "n")? },
        Family::Star => FamilySpec::Star { n: need(args.n, "n")? },
        Family::Complete => FamilySpec::Complete { n: need(args.n, "n")? },
        Family::CompleteBipartite => FamilySpec::CompleteBipartite { m: need(args.m, "m")?, n: need(args.n, "n")? },
        Family::K2n => FamilySpec::CompleteBipartite { m: 2, n: need(args.n, "n")? },
        Family::Spider => FamilySpec::Spider { n: need(args.n, "n")?, t: need(args.t, "t")? },
        Family::Bistar => FamilySpec::Bistar { m: need(args.m, "m")?, n: need(args.n, "n")? },
        Family::Corona => {
            let base = args.base.ok_or_else(|| Failure::malformed("--family corona needs --base"))?;
            if base == Family::Corona {
                return Err(Failure::malformed("--base corona is not supported"));
            }
            FamilySpec::Corona(Box::new(family_spec(base, args)?))
        }
    })
}

fn build(args: &FamilyArgs, mode: Mode, seed: u64) -> Result<ConstructedLabeling, Failure> {
    let spec = family_spec(args.family, args)?;
    Ok(match (args.family, &spec) {
        (Family::K2n, FamilySpec::CompleteBipartite { n, .. }) => constructions::construct_k2n(*n, mode)?,
        _ => constructions::construct(&spec, mode, seed)?,
    })
}

// ============================================================================
// verify
// ============================================================================

#[derive(Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    verdict: Verdict,
    #[serde(flatten)]
    profile: WeightProfile,
    classes: Vec<Mode>,
    counting_identity: bool,
}

fn verify(io: &mut Io, g: &Graph, f: &TotalLabeling, mode: Option<Mode>) -> Result<i32, Failure> {
    let verdict = labeling::is_local_antimagic(g, f)?;
    let profile = labeling::weight_profile(g, f)?;
    let classes: Vec<Mode> = labeling::classify(g, f)?.into_iter().collect();
    let counting_identity = labeling::counting_identity_check(g, f)?;
    let in_class = mode.is_none_or(|m| m == Mode::General || classes.contains(&m));
    let ok = verdict.valid && in_class && counting_identity;
    if !in_class {
        let _ = writeln!(io.err, "labeling is not {}", mode.expect("mode given"));
    }
    io.json(&VerifyReport { verdict, profile, classes, counting_identity })?;
    Ok(if ok { EXIT_OK } else { EXIT_INVALID })
}

// ============================================================================
// sweep
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub valid: bool,
    pub colors: Option<usize>,
    pub predicted: Option<usize>,
    pub bound_satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Color-count contract of a family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exactly(usize),
    Between(usize, usize),
}

impl Bound {
    pub fn holds(self, colors: usize) -> bool {
        match self {
            Bound::Exactly(c) => colors == c,
            Bound::Between(lo, hi) => (lo..=hi).contains(&colors),
        }
    }
}

/// The proven color count (or range) for a constructed instance. Corona bounds
/// depend on the base construction and are handled by the caller.
pub fn family_bound(spec: &FamilySpec, mode: Mode) -> Option<Bound> {
    use Bound::*;
    Some(match (spec, mode) {
        (&FamilySpec::Star { n }, _) => Exactly(n + 1),
        (&FamilySpec::Path { n }, Mode::Svtla) => match n % 4 {
            _ if n < 4 => Between(2, 3),
            0 => Exactly(3),
            3 => Exactly(5),
            _ => Between(3, 4),
        },
        (&FamilySpec::Path { n }, _) if n < 4 => Between(2, 3),
        (FamilySpec::Path { .. }, _) => Between(3, 5),
        (&FamilySpec::Cycle { n }, Mode::Svtla) if n % 4 <= 1 => Exactly(3),
        (FamilySpec::Cycle { .. }, Mode::Svtla) => Between(3, 4),
        (&FamilySpec::Cycle { n }, _) if n <= 4 => Exactly(3),
        (FamilySpec::Cycle { .. }, _) => Between(3, 5),
        (&FamilySpec::Complete { n }, _) => Exactly(n),
        (&FamilySpec::CompleteBipartite { m: 2, n }, _) if n % 2 == 1 => Exactly(3),
        (FamilySpec::CompleteBipartite { .. }, _) => Exactly(2),
        (&FamilySpec::Spider { n, t }, _) => Exactly(n + t + 1),
        (&FamilySpec::Bistar { m, n }, _) => Exactly(m.max(n) + 2),
        (FamilySpec::Corona(_), _) => return None,
    })
}

fn sweep_row(args: &FamilyArgs, mode: Mode, n: usize, seed: u64) -> SweepRow {
    let args = FamilyArgs { n: Some(n), ..*args };
    let failed = |message: String| SweepRow {
        n,
        valid: false,
        colors: None,
        predicted: None,
        bound_satisfied: false,
        error: Some(message),
    };
    let c = match build(&args, mode, seed) {
        Ok(c) => c,
        Err(f) => return failed(f.message),
    };
    let valid = labeling::is_local_antimagic(&c.graph, &c.labeling).map(|v| v.valid).unwrap_or(false)
        && labeling::has_class(&c.graph, &c.labeling, mode).unwrap_or(false);
    let spec = family_spec(args.family, &args).expect("built above");
    let colors = c.colors();
    let mut bound_satisfied = colors >= labeling::pendant_lower_bound(&c.graph);
    bound_satisfied &= match (&spec, family_bound(&spec, mode)) {
        (FamilySpec::Corona(base), _) => match constructions::construct(base, mode, seed) {
            Ok(b) => colors <= b.colors() + 1,
            Err(_) => false,
        },
        (_, Some(bound)) => bound.holds(colors),
        (_, None) => true,
    };
    SweepRow { n, valid, colors: Some(colors), predicted: Some(c.predicted_colors), bound_satisfied, error: None }
}

// ============================================================================
// export
// ============================================================================

/// Graphviz text. Vertices read `id:f(v)/w(v)` and edges `f(e)` when a labeling
/// is supplied; otherwise only the topology is drawn.
pub fn export_dot(g: &Graph, f: Option<&TotalLabeling>, w: Option<&WeightProfile>) -> Result<String, LabelingError> {
    let computed;
    let w = match (f, w) {
        (Some(f), None) => {
            computed = labeling::weight_profile(g, f)?;
            Some(&computed)
        }
        (Some(f), Some(w)) => {
            f.check(g)?;
            Some(w)
        }
        (None, _) => None,
    };
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        match (f, w) {
            (Some(f), Some(w)) => writeln!(s, "  {v} [label=\"{v}:{}/{}\"];", f.vertex(v), w.weight(v)),
            _ => writeln!(s, "  {v};"),
        }
        .expect("writing to a String");
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match f {
            Some(f) => writeln!(s, "  {u} -- {v} [label=\"{}\"];", f.edge(i)),
            None => writeln!(s, "  {u} -- {v};"),
        }
        .expect("writing to a String");
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::new(2, [(1, 2)]).unwrap()
    }

    #[test]
    fn dot_for_labeled_k2() {
        let f = TotalLabeling::new(vec![1, 2], vec![3]);
        let dot = export_dot(&k2(), Some(&f), None).unwrap();
        assert_eq!(dot, "graph G {\n  1 [label=\"1:1/5\"];\n  2 [label=\"2:2/4\"];\n  1 -- 2 [label=\"3\"];\n}\n");
    }

    #[test]
    fn dot_without_labeling() {
        assert_eq!(export_dot(&k2(), None, None).unwrap(), "graph G {\n  1;\n  2;\n  1 -- 2;\n}\n");
    }

    #[test]
    fn dot_rejects_non_bijection() {
        let f = TotalLabeling::new(vec![1, 1], vec![3]);
        assert!(export_dot(&k2(), Some(&f), None).is_err());
    }

    #[test]
    fn bounds() {
        assert!(family_bound(&FamilySpec::Star { n: 3 }, Mode::Svtla).unwrap().holds(4));
        assert!(!family_bound(&FamilySpec::Path { n: 7 }, Mode::Svtla).unwrap().holds(4));
        assert!(family_bound(&FamilySpec::Cycle { n: 9 }, Mode::Setla).unwrap().holds(5));
        assert_eq!(family_bound(&FamilySpec::Bistar { m: 2, n: 3 }, Mode::Setla), Some(Bound::Exactly(5)));
    }
}
