//! Command-line front end.
//!
//! Exit codes: 0 success, 2 malformed input, 3 a computational cap was hit,
//! 4 invalid parameters (including flag errors), 1 an internal failure such
//! as a constructed certificate that does not verify.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::constructors::{
    complete_packing, minimal_graph, minimal_packing, product_packing, recognize_minimal_2_nminus2,
    CycleCover,
};
use crate::deciders::{bounds, decide2_semicomplete, decide2_symmetric, nordhaus_gaddum};
use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::explorer::{
    enumerate_digraphs, product_table_with, semicomplete_exceptions, EnumMode, Suite, TreeShape,
};
use crate::families::DEFAULT_SEED;
use crate::gadgets::build_pipeline;
use crate::io::{parse_digraph, read_digraph_file, to_dot, write_digraph};
use crate::packing::{verify_packing, Packing};
use crate::solver::{decide_lambda_s, lambda_k_exact, lambda_s_exact, SolverConfig};

/// Environment variable that sets the worker count.
pub const THREADS_ENV: &str = "STRONGK_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "strongk",
    version,
    about = "Strong subgraph k-arc-connectivity of digraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Upper limit on minimal candidate subgraphs per terminal set.
    #[arg(long, global = true, default_value_t = SolverConfig::default().candidate_cap)]
    pub candidate_cap: usize,

    /// Largest arc count handed to brute-force oracles.
    #[arg(long, global = true, default_value_t = SolverConfig::default().oracle_threshold)]
    pub oracle_threshold: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomised enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output path; a file prefix for `construct` and `gadget`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact `lambda_k` (or `lambda_S`) with witness and certificate.
    Compute(Target),
    /// Decide `lambda >= ell`, using a polynomial decider where one applies.
    Decide {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        ell: usize,
    },
    /// Build a digraph together with a verified packing.
    #[command(subcommand)]
    Construct(Construct),
    /// Build the linkage reduction gadget.
    Gadget {
        #[arg(long)]
        input: PathBuf,
        /// `s1,t1,s2,t2`.
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Exhaustive checks over small digraphs.
    Explore(Explore),
    /// Polynomial lower and upper bounds on `lambda_k`.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// `lambda_k` of a digraph and its complement against the sum and product bounds.
    Ng {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// DOT export.
    Dot {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("terminals").required(true).args(["k", "s"])))]
pub struct Target {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: Option<usize>,
    /// Explicit terminal set, e.g. `0,1,2`.
    #[arg(long = "S", value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Complete digraph on `n` vertices.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long = "S", value_delimiter = ',', required = true)]
        s: Vec<usize>,
    },
    /// Complete digraph minus a cycle cover.
    Minimal {
        #[arg(long)]
        n: usize,
        /// Cycles separated by commas, vertices by dashes: `0-1,2-3-4`.
        #[arg(long)]
        cover: CycleCover,
        #[arg(long = "S", value_delimiter = ',')]
        s: Option<Vec<usize>>,
    },
    /// Cartesian product of two digraph files.
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long = "S", value_delimiter = ',', required = true)]
        s: Vec<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Suite,
    Table,
    Scan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    All,
    Semicomplete,
    Symmetric,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Tree {
    Path,
    Star,
}

#[derive(Args, Debug)]
pub struct Explore {
    #[arg(long, value_enum, default_value_t = Task::Suite)]
    pub task: Task,
    /// Order of the enumerated digraphs (row order for `table`).
    #[arg(long)]
    pub n: usize,
    /// Values of `k` checked by the suite (default `2..=n`).
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Mode::All)]
    pub mode: Mode,
    /// Sample count for `--mode random`.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Column order for `table` (default `n`).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Tree::Path)]
    pub tree: Tree,
    /// Target arc-strength for `scan`.
    #[arg(long, default_value_t = 2)]
    pub ell: usize,
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                4
            } else {
                let _ = write!(stdout, "{rendered}");
                0
            };
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(stderr, "error: {msg}");
        return 4;
    }
    match execute(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_parse() {
        2
    } else if e.is_cap() {
        3
    } else if matches!(e, Error::Certificate(_) | Error::Derivation(_)) {
        1
    } else {
        4
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    // A second call in the same process finds the pool already built.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

/// A rendered report: text lines and the equivalent JSON document.
struct Report {
    text: String,
    json: Value,
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let cfg = SolverConfig {
        candidate_cap: cli.candidate_cap,
        oracle_threshold: cli.oracle_threshold,
        ..SolverConfig::default()
    };
    let report = match &cli.command {
        Command::Compute(target) => compute(target, &cfg)?,
        Command::Decide { target, ell } => decide(target, *ell, &cfg)?,
        Command::Construct(c) => construct(c, cli.out.as_deref(), &cfg)?,
        Command::Gadget {
            input,
            terminals,
            k,
            ell,
        } => gadget(input, terminals, *k, *ell, cli.out.as_deref())?,
        Command::Explore(e) => explore(e, cli.seed, &cfg, stderr)?,
        Command::Bounds { input, k } => {
            let r = bounds(&read_digraph_file(input)?, *k)?;
            Report {
                text: format!(
                    "lower = {} ({})\nupper = {} ({})\n",
                    r.lower, r.lower_rule, r.upper, r.upper_rule
                ),
                json: serde_json::to_value(&r).expect("report serializes"),
            }
        }
        Command::Ng { input, k } => {
            let r = nordhaus_gaddum(&read_digraph_file(input)?, *k, &cfg)?;
            let json = serde_json::to_value(&r).expect("report serializes");
            let text = json
                .as_object()
                .expect("report is an object")
                .iter()
                .map(|(key, v)| format!("{key} = {v}\n"))
                .collect();
            Report { text, json }
        }
        Command::Dot { input } => {
            let name = input.file_stem().and_then(|s| s.to_str()).unwrap_or("D");
            let dot = to_dot(&read_digraph_file(input)?, name);
            Report {
                json: json!({ "dot": dot }),
                text: dot,
            }
        }
    };
    let rendered = match cli.format {
        Format::Text => report.text,
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&report.json).expect("json serializes")
        ),
    };
    let writes_files = matches!(cli.command, Command::Construct(_) | Command::Gadget { .. });
    match &cli.out {
        Some(path) if !writes_files => fs::write(path, rendered)?,
        _ => stdout.write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn terminal_set(members: &[usize], n: usize) -> Result<VertexSet> {
    VertexSet::new(members.to_vec(), n)
}

fn certificate_json(p: &Packing, n: usize) -> Value {
    serde_json::to_value(p.to_certificate(n)).expect("certificate serializes")
}

fn compute(target: &Target, cfg: &SolverConfig) -> Result<Report> {
    let d = read_digraph_file(&target.input)?;
    let n = d.n();
    let (label, k, r) = match (&target.s, target.k) {
        (Some(s), _) => {
            let s = terminal_set(s, n)?;
            ("S".to_string(), s.len(), lambda_s_exact(&d, &s, cfg)?)
        }
        (None, Some(k)) => (k.to_string(), k, lambda_k_exact(&d, k, cfg)?),
        (None, None) => unreachable!("clap requires --k or --S"),
    };
    let cert = certificate_json(&r.certificate, n);
    Ok(Report {
        text: format!(
            "lambda_{label} = {}\nwitness S = {}\ncertificate = {}\n",
            r.value,
            r.witness,
            r.certificate.to_json(n)
        ),
        json: json!({
            "k": k,
            "value": r.value,
            "witness": r.witness.members(),
            "certificate": cert,
        }),
    })
}

fn decide(target: &Target, ell: usize, cfg: &SolverConfig) -> Result<Report> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let d = read_digraph_file(&target.input)?;
    let n = d.n();
    let explicit = target.s.as_ref().map(|s| terminal_set(s, n)).transpose()?;
    let k = explicit.as_ref().map_or_else(
        || target.k.expect("clap requires --k or --S"),
        VertexSet::len,
    );
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let (route, yes, witness, packing): (&str, bool, Option<VertexSet>, Option<Packing>) =
        if !d.is_strong() {
            ("strong-connectivity", false, None, None)
        } else if ell == 2 && explicit.is_none() && d.is_semicomplete() {
            (
                "semicomplete-decider",
                decide2_semicomplete(&d, k)?,
                None,
                None,
            )
        } else if ell == 2 && explicit.is_none() && d.is_symmetric() {
            let p = decide2_symmetric(&d, k)?;
            ("symmetric-bridgeless-decider", p.is_some(), None, p)
        } else if let Some(s) = explicit {
            let p = decide_lambda_s(&d, &s, ell, cfg)?;
            ("exact-solver", p.is_some(), Some(s), p)
        } else {
            // A NO answer is witnessed by the first k-set that falls short.
            let mut failing = None;
            for combo in (0..n).combinations(k) {
                let s = VertexSet::new(combo, n)?;
                if decide_lambda_s(&d, &s, ell, cfg)?.is_none() {
                    failing = Some(s);
                    break;
                }
            }
            ("exact-solver", failing.is_none(), failing, None)
        };
    let answer = if yes { "YES" } else { "NO" };
    let mut text = format!("answer = {answer}\nroute = {route}\n");
    if let Some(s) = &witness {
        text.push_str(&format!("S = {s}\n"));
    }
    if let Some(p) = &packing {
        text.push_str(&format!("certificate = {}\n", p.to_json(n)));
    }
    Ok(Report {
        text,
        json: json!({
            "k": k,
            "ell": ell,
            "answer": answer,
            "route": route,
            "S": witness.as_ref().map(VertexSet::members),
            "certificate": packing.as_ref().map(|p| certificate_json(p, n)),
        }),
    })
}

/// Writes `prefix.dg` and `prefix.json`, then reads both back and verifies.
fn write_certified(prefix: &Path, d: &Digraph, p: &Packing) -> Result<(PathBuf, PathBuf)> {
    let dg = prefix.with_extension("dg");
    let cert = prefix.with_extension("json");
    fs::write(&dg, write_digraph(d))?;
    fs::write(&cert, p.to_json(d.n()))?;
    let back = read_digraph_file(&dg)?;
    let (n, packing) = Packing::from_json(&fs::read_to_string(&cert)?)?;
    if n != back.n() || back != *d || !verify_packing(&back, &packing) {
        return Err(Error::Certificate(format!(
            "{} does not re-verify",
            cert.display()
        )));
    }
    Ok((dg, cert))
}

fn construct(c: &Construct, out: Option<&Path>, cfg: &SolverConfig) -> Result<Report> {
    let (d, packing, mut notes) = match c {
        Construct::Complete { n, s } => {
            let s = terminal_set(s, *n)?;
            (
                Digraph::complete(*n),
                Some(complete_packing(*n, &s)?),
                Vec::new(),
            )
        }
        Construct::Minimal { n, cover, s } => {
            let d = minimal_graph(*n, cover)?;
            let recognized = recognize_minimal_2_nminus2(&d);
            let p = s
                .as_ref()
                .map(|s| minimal_packing(&d, &terminal_set(s, *n)?))
                .transpose()?;
            (d, p, vec![("recognized", json!(recognized))])
        }
        Construct::Product { left, right, s } => {
            let g = read_digraph_file(left)?;
            let h = read_digraph_file(right)?;
            let prod = Digraph::cartesian_product(&g, &h);
            let s = terminal_set(s, prod.n())?;
            let p = product_packing(&g, &h, &s, cfg)?;
            (prod, Some(p), Vec::new())
        }
    };
    if let Some(p) = &packing {
        p.ensure_valid(&d)?;
        notes.push(("parts", json!(p.len())));
    }
    let mut text: String = notes.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
    let mut json = json!({
        "n": d.n(),
        "m": d.arc_count(),
        "certificate": packing.as_ref().map(|p| certificate_json(p, d.n())),
    });
    for (k, v) in &notes {
        json[*k] = v.clone();
    }
    match out {
        Some(prefix) => {
            let dg = prefix.with_extension("dg");
            fs::write(&dg, write_digraph(&d))?;
            json["digraph_file"] = json!(dg.display().to_string());
            text.push_str(&format!("digraph written to {}\n", dg.display()));
            if let Some(p) = &packing {
                let (_, cert) = write_certified(prefix, &d, p)?;
                json["certificate_file"] = json!(cert.display().to_string());
                text.push_str(&format!("certificate written to {}\n", cert.display()));
            }
        }
        None => {
            text.push_str(&write_digraph(&d));
            if let Some(p) = &packing {
                text.push_str(&format!("certificate = {}\n", p.to_json(d.n())));
            }
        }
    }
    Ok(Report { text, json })
}

fn gadget(
    input: &Path,
    terminals: &[usize],
    k: usize,
    ell: usize,
    out: Option<&Path>,
) -> Result<Report> {
    let &[s1, t1, s2, t2] = terminals else {
        return Err(Error::InvalidTerminals(format!(
            "expected four terminals s1,t1,s2,t2, got {}",
            terminals.len()
        )));
    };
    let d = read_digraph_file(input)?;
    let inst = build_pipeline(&d, [s1, t1, s2, t2], k, ell)?;
    let digraph = write_digraph(&inst.digraph);
    let sidecar = inst.sidecar();
    let mut json = json!({
        "stage": inst.stage.name(),
        "n": inst.digraph.n(),
        "m": inst.digraph.arc_count(),
        "S": inst.s.members(),
    });
    let mut text = format!("stage = {}\nS = {}\n", inst.stage.name(), inst.s);
    match out {
        Some(prefix) => {
            let dg = prefix.with_extension("dg");
            let map = prefix.with_extension("map");
            fs::write(&dg, &digraph)?;
            fs::write(&map, &sidecar)?;
            // Read back so a malformed file is caught here rather than downstream.
            if parse_digraph(&fs::read_to_string(&dg)?)? != inst.digraph {
                return Err(Error::Certificate(format!(
                    "{} does not round-trip",
                    dg.display()
                )));
            }
            text.push_str(&format!(
                "digraph written to {}\nmap written to {}\n",
                dg.display(),
                map.display()
            ));
            json["digraph_file"] = json!(dg.display().to_string());
            json["map_file"] = json!(map.display().to_string());
        }
        None => {
            text.push_str(&digraph);
            text.push_str(&sidecar);
            json["digraph"] = json!(digraph);
            json["map"] = json!(sidecar);
        }
    }
    Ok(Report { text, json })
}

fn explore(e: &Explore, seed: u64, cfg: &SolverConfig, stderr: &mut dyn Write) -> Result<Report> {
    match e.task {
        Task::Suite => {
            let ks = e.k.clone().unwrap_or_else(|| (2..=e.n).collect());
            let mode = match e.mode {
                Mode::All => EnumMode::AllLabeled,
                Mode::Semicomplete => EnumMode::Semicomplete,
                Mode::Symmetric => EnumMode::Symmetric,
                Mode::Random => EnumMode::Random {
                    samples: e.samples,
                    seed,
                },
            };
            let mut suite = Suite::new(*cfg);
            let mut text = String::new();
            let mut reports = Vec::new();
            let (mut digraphs, mut failures) = (0, 0);
            for d in enumerate_digraphs(e.n, mode)? {
                let r = suite.verify(&d, &ks);
                digraphs += 1;
                failures += r.failures();
                for line in r.lines() {
                    text.push_str(&line);
                    text.push('\n');
                }
                reports.push(r);
            }
            let _ = writeln!(stderr, "{digraphs} digraphs checked, {failures} failures");
            Ok(Report {
                text,
                json: json!({ "digraphs": digraphs, "failures": failures, "reports": reports }),
            })
        }
        Task::Table => {
            let tree = match e.tree {
                Tree::Path => TreeShape::Path,
                Tree::Star => TreeShape::Star,
            };
            let entries = product_table_with(e.n, e.m.unwrap_or(e.n), tree, cfg)?;
            let text = entries
                .iter()
                .map(|t| {
                    format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                        t.row,
                        t.column,
                        t.n,
                        t.m,
                        t.lower,
                        t.upper,
                        t.formula,
                        t.expected,
                        if t.matches() { "MATCH" } else { "MISMATCH" }
                    )
                })
                .collect();
            Ok(Report {
                text,
                json: serde_json::to_value(&entries).expect("entries serialize"),
            })
        }
        Task::Scan => {
            let found = semicomplete_exceptions(e.n, e.ell, cfg)?;
            let mut text = format!("exceptions = {}\n", found.len());
            for d in &found {
                text.push('\n');
                text.push_str(&write_digraph(d));
            }
            Ok(Report {
                text,
                json: json!({
                    "order": e.n,
                    "ell": e.ell,
                    "exceptions": found.iter().map(write_digraph).collect::<Vec<_>>(),
                }),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes_map_to_exit_codes() {
        let parse = Error::Parse {
            line: 1,
            msg: "x".into(),
        };
        assert_eq!(exit_code(&parse), 2);
        assert_eq!(exit_code(&Error::CandidateCap { cap: 1 }), 3);
        assert_eq!(exit_code(&Error::KOutOfRange { k: 9, n: 3 }), 4);
        assert_eq!(exit_code(&Error::Certificate("bad".into())), 1);
    }

    #[test]
    fn flags_parse_into_commands() {
        let cli = Cli::try_parse_from([
            "strongk", "--format", "json", "compute", "--input", "d.dg", "--S", "2,0",
        ])
        .unwrap();
        assert_eq!(cli.format, Format::Json);
        match cli.command {
            Command::Compute(t) => assert_eq!((t.k, t.s), (None, Some(vec![2, 0]))),
            other => panic!("{other:?}"),
        }
        let cli = Cli::try_parse_from([
            "strongk", "explore", "--n", "4", "--k", "2,3", "--seed", "9",
        ])
        .unwrap();
        assert_eq!(cli.seed, 9);
        match cli.command {
            Command::Explore(e) => assert_eq!(e.k, Some(vec![2, 3])),
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["strongk", "compute", "--input", "d.dg"]).is_err());
        assert!(Cli::try_parse_from(["strongk", "construct", "complete", "--n", "4"]).is_err());
    }
}
