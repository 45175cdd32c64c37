use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use aluffi::aluffi::VerdictRecord;
use aluffi::graphs::{self, Witness34};
use aluffi::ideals::io::{parse_ideal_file, parse_ideal_file_in};
use aluffi::ideals::jacobian_ideal;
use aluffi::pencil::{self, PencilIdeals, PencilSpec};
use aluffi::reproduce::{reproduce, RunReport};
use aluffi::{aluffi_torsion_free, budget, Error, QIdeal, QVerdict, Status};
use clap::{Parser, Subcommand};
use serde_json::json;

/// Decides Aluffi torsion-freeness of ideal pairs over the rationals.
///
/// Exit codes: 0 torsion-free, 1 not torsion-free, 2 inconclusive,
/// 3 parse error, 4 containment failure, 5 other errors.
#[derive(Parser)]
#[command(name = "aluffi", version)]
struct Cli {
    /// Worker threads for commands that fan out.
    #[arg(long, global = true, env = "ALUFFI_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether J ⊆ I is torsion-free.
    Check {
        /// Ideal file for J.
        j: PathBuf,
        /// Ideal file for I. Required unless --jacobian is given.
        i: Option<PathBuf>,
        /// Use I = (J, I_r(Θ)) with r the height of J.
        #[arg(long, conflicts_with = "i")]
        jacobian: bool,
        /// Largest t for the explicit test when no certificate applies.
        #[arg(long)]
        max_t: Option<u32>,
        /// Compute the relation type and test up to it (the default).
        #[arg(long, overrides_with = "no_certify")]
        certify: bool,
        /// Only test t = 2..max-t; the verdict may be inconclusive.
        #[arg(long, overrides_with = "certify")]
        no_certify: bool,
        /// Time limit in seconds; on expiry the verdict is inconclusive.
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Graph criterion for edge ideals. SOURCE is a family such as `cycle:5`
    /// or a graph file.
    Graph {
        source: String,
        /// Also run the algebraic test and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        max_t: Option<u32>,
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Block criterion for a pencil given as blocks, e.g. "N(1) J(2;0) S(3)".
    Pencil {
        spec: String,
        /// Compute all three conditions independently.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        max_t: Option<u32>,
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert series of S/J for an ideal file or a pencil's 2-minor ideal.
    Hilbert {
        /// Ideal file.
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        pencil: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the catalogue of worked examples and compare.
    ReproducePaper {
        /// Only one group: 2 pencils, 3 graphs, 4 curves and arrangements.
        #[arg(long)]
        section: Option<u32>,
        /// Per-item time limit in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::Parse(_)) | Failure::Io(..) => 3,
            Failure::Core(Error::NotContained(_)) => 4,
            _ => 5,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            Failure::Usage(m) => write!(f, "{m}"),
        }
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn limit(secs: Option<f64>) -> std::result::Result<Option<Duration>, Failure> {
    match secs {
        None => Ok(None),
        Some(s) if s.is_finite() && s >= 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(Failure::Usage(format!("bad timeout {s}"))),
    }
}

fn verdict_code(v: &QVerdict) -> u8 {
    match v.status {
        Status::TorsionFree { .. } => 0,
        Status::NotTorsionFree { .. } => 1,
        Status::Inconclusive { .. } => 2,
    }
}

fn describe(rec: &VerdictRecord) -> String {
    match rec.status.as_str() {
        "torsion_free" => match &rec.certificate {
            Some(c) => format!("torsion-free ({c})"),
            None => "torsion-free".into(),
        },
        "not_torsion_free" => format!("not torsion-free at t = {}; witness {}", rec.t.unwrap_or(0), rec.witness.as_deref().unwrap_or("?")),
        _ => format!("inconclusive (checked t <= {})", rec.bound.unwrap_or(0)),
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn cmd_check(j: &Path, i: Option<&Path>, jacobian: bool, max_t: Option<u32>, certify: bool, timeout: Option<f64>, json: bool) -> Outcome {
    let jt = read(j)?;
    let jj: QIdeal = parse_ideal_file(&jt)?;
    let deadline = limit(timeout)?;
    let ii = match (i, jacobian) {
        (Some(p), false) => parse_ideal_file_in(jj.ring(), &read(p)?)?,
        (None, true) => budget::with_deadline(deadline, || jacobian_ideal(&jj))?,
        _ => return Err(Failure::Usage("give an ideal file for I or --jacobian".into())),
    };
    let v = budget::with_deadline(deadline, || aluffi_torsion_free(&jj, &ii, max_t, certify))?;
    let rec = v.record();
    if json {
        print_json(&json!({ "j": jj.to_string(), "i": ii.to_string(), "verdict": rec }));
    } else {
        println!("J = {jj}");
        println!("I = {}", ii.interreduce());
        println!("{}", describe(&rec));
    }
    Ok(verdict_code(&v))
}

fn cmd_graph(source: &str, oracle: bool, max_t: Option<u32>, timeout: Option<f64>, json: bool) -> Outcome {
    let text = if Path::new(source).is_file() { read(Path::new(source))? } else { source.to_string() };
    let g = graphs::parse_graph(&text)?;
    let r = graphs::vertex_cover_number(&g)?;
    let witness: Option<Witness34> = if r > 1 { graphs::theorem34_witness(&g)? } else { None };
    let atf = graphs::is_graph_atf(&g)?;
    let algebraic = if oracle {
        let deadline = limit(timeout)?;
        Some(budget::with_deadline(deadline, || graphs::graph_oracle(&g, max_t, true))?)
    } else {
        None
    };
    let agree = algebraic.as_ref().map(|v| match v.status {
        Status::TorsionFree { .. } => atf,
        Status::NotTorsionFree { .. } => !atf,
        Status::Inconclusive { .. } => false,
    });
    if json {
        print_json(&json!({
            "vertices": g.num_vertices(),
            "edges": g.num_edges(),
            "cover_number": r,
            "torsion_free": atf,
            "witness": witness,
            "oracle": algebraic.as_ref().map(|v| v.record()),
            "agree": agree,
        }));
    } else {
        println!("{} vertices, {} edges, cover number {r}", g.num_vertices(), g.num_edges());
        match (&witness, atf) {
            (_, true) => println!("torsion-free"),
            (Some(w), false) => println!("not torsion-free; witness {w}"),
            (None, false) => println!("not torsion-free (star)"),
        }
        if let Some(v) = &algebraic {
            println!("algebraic: {}", describe(&v.record()));
            println!("agree: {}", agree.unwrap_or(false));
        }
    }
    match (agree, &algebraic) {
        (Some(false), Some(v)) if !v.is_inconclusive() => Err(Failure::Usage("combinatorial and algebraic verdicts disagree".into())),
        (Some(false), _) => Ok(2),
        _ => Ok(if atf { 0 } else { 1 }),
    }
}

fn cmd_pencil(text: &str, verify: bool, max_t: Option<u32>, certify: bool, timeout: Option<f64>, json: bool) -> Outcome {
    let spec: PencilSpec = text.parse()?;
    let height = pencil::predicted_height(&spec);
    let predicted = pencil::predicted_atf(&spec).ok();
    if !verify {
        if json {
            print_json(&json!({ "spec": spec.to_string(), "height": height, "predicted_atf": predicted }));
        } else {
            println!("{spec}: {} columns, {} variables", spec.columns(), spec.num_vars());
            println!("height {height}");
            match predicted {
                Some(p) => println!("predicted torsion-free: {p}"),
                None => println!("predicted torsion-free: undefined for height {height}"),
            }
        }
        return Ok(match predicted {
            Some(true) => 0,
            Some(false) => 1,
            None => 2,
        });
    }
    let deadline = limit(timeout)?;
    let rec = budget::with_deadline(deadline, || pencil::verify_theorem24_with(&spec, max_t, certify))?;
    let summary = rec.summary();
    if json {
        print_json(&json!({ "height": height, "record": summary }));
    } else {
        println!("{spec}: height {height}, r = {}", rec.r);
        println!("(a) I_r(Θ) = m^r: {}", rec.a);
        println!("(b) block shape: {}", rec.b);
        println!("(c) {}", describe(&summary.c));
        println!("consistent: {}", rec.consistent);
    }
    Ok(verdict_code(&rec.c_verdict))
}

fn cmd_hilbert(file: Option<&Path>, spec: Option<&str>, json: bool) -> Outcome {
    let ideal: QIdeal = match (file, spec) {
        (Some(p), None) => parse_ideal_file(&read(p)?)?,
        (None, Some(s)) => PencilIdeals::new(&s.parse()?)?.j,
        _ => return Err(Failure::Usage("give an ideal file or --pencil".into())),
    };
    let hs = ideal.hilbert_series()?;
    if json {
        print_json(&json!({
            "series": hs.to_string(),
            "numerator": hs.numerator,
            "denominator_exponent": hs.denominator_exponent,
            "dimension": hs.denominator_exponent,
        }));
    } else {
        println!("{hs}");
    }
    Ok(0)
}

fn print_report(report: &RunReport) {
    for it in &report.items {
        let mark = if it.agree { "ok  " } else { "FAIL" };
        println!("{mark} [{}] {} ({:.2}s)", it.section, it.name, it.elapsed);
        if !it.agree {
            println!("       expected: {}", it.expected);
            println!("       computed: {}", it.computed);
        }
    }
    println!("{}/{} agree", report.agreed, report.total);
}

fn cmd_reproduce(section: Option<u32>, timeout: Option<f64>, json: bool) -> Outcome {
    if let Some(s) = section {
        if !(2..=4).contains(&s) {
            return Err(Failure::Usage(format!("no section {s}; expected 2, 3 or 4")));
        }
    }
    let report = reproduce(section, limit(timeout)?);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    } else {
        print_report(&report);
    }
    Ok(if report.all_agree() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(5);
        }
    }
    let out = match &cli.command {
        Command::Check { j, i, jacobian, max_t, no_certify, timeout, json, .. } => {
            cmd_check(j, i.as_deref(), *jacobian, *max_t, !*no_certify, *timeout, *json)
        }
        Command::Graph { source, oracle, max_t, timeout, json } => cmd_graph(source, *oracle, *max_t, *timeout, *json),
        Command::Pencil { spec, verify, max_t, certify, timeout, json } => cmd_pencil(spec, *verify, *max_t, *certify, *timeout, *json),
        Command::Hilbert { file, pencil, json } => cmd_hilbert(file.as_deref(), pencil.as_deref(), *json),
        Command::ReproducePaper { section, timeout, json } => cmd_reproduce(*section, *timeout, *json),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
