//! Command-line front end: argument parsing, report formatting and exit codes.
//!
//! Exit codes: 0 for success or a positive verdict, 2 for a negative verdict,
//! 1 for errors (including unknown commands).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::complex::{fixture, Complex, FlagViolation, FIXTURE_NAMES};
use crate::homology::homology;
use crate::metric::{
    angle_graph, build_t, check_angle_graph, check_link_condition, verify_t_link, PeMetric, Verdict, DEFAULT_TOLERANCE,
};
use crate::raag::{distortion_table, presentation, PresentationMode, DEFAULT_MAX_CYCLE, DEFAULT_MAX_N};
use crate::search::{k0_report, search_metric, SearchConfig, SearchMode};

#[derive(Debug, Parser)]
#[command(name = "flagcat", version, about = "Curvature checks, metric search and Artin kernels for flag 2-complexes")]
pub struct Cli {
    /// Verdict tolerance on the slack `girth - 2π`.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json_out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Links,
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresentationArg {
    Triangle,
    Cycles,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report flag violations, free edges and connectivity.
    CheckFlag { complex: PathBuf },
    /// Integral homology via Smith normal form.
    Homology {
        complex: PathBuf,
        /// Exit 1 unless the complex is acyclic.
        #[arg(long)]
        assert_acyclic: bool,
    },
    /// Girth of every vertex link against 2π.
    Linkcond { complex: PathBuf, metric: PathBuf },
    /// Girth of the angle graph L(K) against 2π.
    Cat1 { complex: PathBuf, metric: PathBuf },
    /// Write the angle graph L(K).
    BuildL {
        complex: PathBuf,
        metric: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the one-vertex complex T(K); with a metric, compare its link with L(K).
    BuildT { complex: PathBuf, metric: Option<PathBuf> },
    /// Search for a metric satisfying the chosen criterion.
    Search {
        complex: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long)]
        max_iters: Option<usize>,
        /// Write the best metric found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Presentation of the Artin kernel.
    Presentation {
        complex: PathBuf,
        #[arg(long, value_enum)]
        mode: PresentationArg,
        #[arg(long, default_value_t = DEFAULT_MAX_CYCLE)]
        max_cycle: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: u32,
        /// Attest that the complex is simply connected (required by triangle mode).
        #[arg(long)]
        simply_connected: bool,
    },
    /// Free versus ambient word length of the elements w_N.
    Distortion {
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// The K₀ example: circuit bookkeeping, random samples and a global search.
    ReproduceK0 {
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Write the bundled fixtures and an equilateral metric file into a directory.
    Fixtures {
        #[arg(default_value = ".")]
        dir: PathBuf,
    },
}

/// A finished command: the human report, its JSON twin and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn new(text: String, json: Value, positive: bool) -> Self {
        Report { text, json, code: if positive { 0 } else { 2 } }
    }
}

/// Parses `args` (program name first), runs the command and prints the report.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            report.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

/// Runs a parsed command, writing the JSON report when asked.
pub fn execute(cli: &Cli) -> Result<Report> {
    let report = dispatch(cli)?;
    if let Some(path) = &cli.json_out {
        let body = serde_json::to_string_pretty(&report.json)?;
        fs::write(path, body + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_complex(path: &Path) -> Result<Complex> {
    Complex::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_metric(k: &Complex, path: &Path) -> Result<PeMetric> {
    PeMetric::parse(k, &read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Twelve decimals, without a sign on values that round to zero.
fn fixed(x: f64) -> String {
    let x = if x.abs() < 5e-13 { 0.0 } else { x };
    format!("{x:.12}")
}

fn fmt_slack(v: &Verdict) -> String {
    match (v.slack, &v.witness) {
        (Some(s), Some(w)) => format!("slack {}  circuit {}  length {}", fixed(s), w.cycle.join(" "), fixed(w.length)),
        _ => "vacuous (no circuit)".into(),
    }
}

fn status(v: &Verdict) -> &'static str {
    match (v.passes, v.boundary) {
        (false, _) => "FAIL",
        (true, true) => "pass (boundary case)",
        (true, false) => "pass",
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol >= 0.0) {
        bail!("--tol must be a finite non-negative number");
    }
    match &cli.command {
        Command::CheckFlag { complex } => {
            let k = load_complex(complex)?;
            let r = k.check_flag();
            let mut text = format!("flag: {}\nconnected: {}\n", yes(r.is_flag), yes(r.connected));
            for v in &r.violations {
                let line = match v {
                    FlagViolation::EmptyTriangle(t) => format!("empty triangle {}", t.join(" ")),
                    FlagViolation::FourClique(q) => format!("4-clique {}", q.join(" ")),
                };
                writeln!(text, "violation: {line}")?;
            }
            let free: Vec<String> = r.free_edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
            writeln!(text, "free edges ({}): {}", free.len(), free.join(" "))?;
            let positive = r.is_flag;
            Ok(Report::new(text, serde_json::to_value(&r)?, positive))
        }
        Command::Homology { complex, assert_acyclic } => {
            let k = load_complex(complex)?;
            let h = homology(&k);
            let text = format!("{h}\n");
            let code = if *assert_acyclic && !h.is_acyclic { 1 } else { 0 };
            Ok(Report { text, json: serde_json::to_value(&h)?, code })
        }
        Command::Linkcond { complex, metric } => {
            let k = load_complex(complex)?;
            let m = load_metric(&k, metric)?;
            let verdicts = check_link_condition(&k, &m, tol)?;
            let mut text = format!("link condition (tol {tol:e})\n");
            let width = verdicts.keys().map(String::len).max().unwrap_or(0);
            for (v, verdict) in &verdicts {
                writeln!(text, "  {v:width$}  {:<20}  {}", status(verdict), fmt_slack(verdict))?;
            }
            let failing: Vec<&str> = verdicts.iter().filter(|(_, v)| !v.passes).map(|(n, _)| n.as_str()).collect();
            let vacuous = verdicts.values().filter(|v| v.vacuous).count();
            if vacuous > 0 {
                writeln!(text, "note: {vacuous} link(s) have no circuit and pass vacuously")?;
            }
            if failing.is_empty() {
                text.push_str("verdict: PASS\n");
            } else {
                writeln!(text, "verdict: FAIL at {}", failing.join(" "))?;
            }
            let json = json!({ "tol": tol, "passes": failing.is_empty(), "vertices": verdicts });
            Ok(Report::new(text, json, failing.is_empty()))
        }
        Command::Cat1 { complex, metric } => {
            let k = load_complex(complex)?;
            let m = load_metric(&k, metric)?;
            let l = angle_graph(&k, &m)?;
            let v = check_angle_graph(&k, &m, tol)?;
            let mut text = format!("angle graph: {} vertices, {} edges\n", l.vertex_count(), l.edge_count());
            if let (Some(s), Some(w)) = (v.slack, &v.witness) {
                writeln!(text, "girth: {}\nslack: {}\ncircuit: {}", fixed(w.length), fixed(s), w.cycle.join(" "))?;
            } else {
                text.push_str("girth: infinite (no circuit)\n");
            }
            writeln!(text, "verdict: {}", if v.passes { status(&v).to_uppercase() } else { "FAIL".into() })?;
            let json = json!({ "tol": tol, "vertices": l.vertex_count(), "edges": l.edge_count(), "verdict": v });
            Ok(Report::new(text, json, v.passes))
        }
        Command::BuildL { complex, metric, out } => {
            let k = load_complex(complex)?;
            let m = load_metric(&k, metric)?;
            let l = angle_graph(&k, &m)?;
            write(out, &l.to_text())?;
            let text = format!("wrote L(K): {} vertices, {} edges to {}\n", l.vertex_count(), l.edge_count(), out.display());
            let json = json!({ "out": out, "vertices": l.vertex_count(), "edges": l.edge_count() });
            Ok(Report::new(text, json, true))
        }
        Command::BuildT { complex, metric } => {
            let k = load_complex(complex)?;
            let t = build_t(&k)?;
            let mut text = format!(
                "T(K): 1 vertex, {} edges, {} faces, euler characteristic {}\n",
                t.generators.len(),
                t.faces.len(),
                t.euler_characteristic()
            );
            for w in t.face_words() {
                writeln!(text, "  face {w}")?;
            }
            let mut json = json!({ "complex": t, "face_words": t.face_words() });
            let mut positive = true;
            if let Some(path) = metric {
                let m = load_metric(&k, path)?;
                positive = verify_t_link(&k, &m, tol)?;
                writeln!(text, "vertex link isometric to L(K): {}", yes(positive))?;
                json["link_matches"] = json!(positive);
            }
            Ok(Report::new(text, json, positive))
        }
        Command::Search { complex, mode, restarts, max_iters, out } => {
            let k = load_complex(complex)?;
            let mode = match mode {
                ModeArg::Links => SearchMode::Links,
                ModeArg::Global => SearchMode::Global,
            };
            let mut cfg = SearchConfig::new(mode).with_restarts(*restarts).with_seed(cli.seed).with_tol(tol);
            if let Some(n) = max_iters {
                cfg.max_iters = *n;
            }
            let r = search_metric(&k, &cfg)?;
            let mut text = format!("{r}\n");
            if let Some(path) = out {
                write(path, &r.best_metric.to_text(&k))?;
                writeln!(text, "best metric written to {}", path.display())?;
            }
            Ok(Report::new(text, serde_json::to_value(&r)?, r.feasible))
        }
        Command::Presentation { complex, mode, max_cycle, max_n, simply_connected } => {
            let k = load_complex(complex)?;
            let mode = match mode {
                PresentationArg::Triangle => PresentationMode::Triangle { simply_connected: *simply_connected },
                PresentationArg::Cycles => PresentationMode::Cycles { max_cycle: Some(*max_cycle), max_n: Some(*max_n) },
            };
            let p = presentation(&k, mode)?;
            let json = json!({
                "mode": p.mode,
                "note": p.note,
                "generators": p.generators,
                "relators": p.relator_texts(),
            });
            Ok(Report::new(p.to_string(), json, true))
        }
        Command::Distortion { nmax } => {
            if *nmax == 0 {
                bail!("--nmax must be at least 1");
            }
            let rows = distortion_table(*nmax);
            let mut text = format!("{:>4} {:>12} {:>12} {:>12} {:>10}\n", "N", "free", "written", "geodesic", "ratio");
            for r in &rows {
                writeln!(
                    text,
                    "{:>4} {:>12} {:>12} {:>12} {:>10.4}",
                    r.n, r.free_length, r.written_length, r.geodesic_length, r.ratio
                )?;
            }
            Ok(Report::new(text, json!({ "rows": rows }), true))
        }
        Command::ReproduceK0 { restarts, samples } => {
            let cfg = SearchConfig::new(SearchMode::Global).with_restarts(*restarts).with_seed(cli.seed).with_tol(tol);
            let report = k0_report(*samples, &cfg)?;
            let text = format!("{report}\n");
            let code = if !report.combinatorics_pass() {
                1
            } else if report.search.feasible {
                0
            } else {
                2
            };
            let json = json!({
                "multiset_identity": report.multiset_identity,
                "combinatorics_pass": report.combinatorics_pass(),
                "best_objective": report.search.best_objective,
                "feasible": report.search.feasible,
                "report": report,
            });
            Ok(Report { text, json, code })
        }
        Command::Fixtures { dir } => {
            let mut written = Vec::new();
            for name in FIXTURE_NAMES {
                // The Δ-complex dunce hat has no file form; its flag subdivision is written instead.
                let Some(k) = fixture(name)?.simplicial() else { continue };
                let path = dir.join("fixtures").join(format!("{name}.cx"));
                write(&path, &k.to_text())?;
                written.push(path);
            }
            let path = dir.join("metrics").join("equilateral.len");
            write(&path, "# every edge has length 1\ndefault 1\n")?;
            written.push(path);
            let mut text = String::new();
            for p in &written {
                writeln!(text, "wrote {}", p.display())?;
            }
            Ok(Report::new(text, json!({ "written": written }), true))
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
