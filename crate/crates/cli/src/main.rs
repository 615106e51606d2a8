use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use liesym::catalog::{self, VerifyReport, CATALOG_TOL};
use liesym::expr::{Bindings, SamplingDomain, ZeroVerdict, DEFAULT_SEED};
use liesym::jordan::{classify2x2, default_tol, Jordan2Result};
use liesym::liealg::{bracket, normalize_l4, normalize_l6, normalize_l8, AlgebraElement, OptimalRep};
use liesym::odesys::{Mat2, SystemSpec};
use liesym::symmetry::{admits, commutator_vf, Generator, GeneratorSpec, DEFAULT_TOL};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_USAGE: u8 = 1;
const EXIT_FAIL: u8 = 2;
const EXIT_QUARANTINED: u8 = 3;

#[derive(Parser)]
#[command(name = "liesym", version, about = "Lie point symmetries of y'' = F(y, z), z'' = G(y, z)")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a system admits a generator.
    Check {
        system: PathBuf,
        generator: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Normalize an element of L4, L6 or L8 to its optimal-system representative.
    Normalize {
        /// Comma-separated coefficients c1,...,c8.
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(long, value_enum, default_value = "l8")]
        algebra: AlgebraArg,
    },
    /// Real Jordan form of a 2x2 matrix.
    Jordan {
        /// a11,a12,a21,a22
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Commutator of basis operators or of two generator files.
    Commutator {
        /// Two basis indices (1..8), or two generator files with --files.
        a: String,
        b: String,
        #[arg(long)]
        files: bool,
    },
    /// The classification tables.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List entries with their parameters.
    List,
    /// Verify an entry's claimed generators.
    Verify {
        #[arg(long)]
        id: String,
        /// name=value parameter overrides.
        #[arg(long = "set", value_name = "NAME=VALUE", allow_hyphen_values = true)]
        set: Vec<String>,
        #[arg(long, default_value_t = CATALOG_TOL)]
        tol: f64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Defaults to LIESYM_SEED, then the built-in seed.
    #[arg(long)]
    seed: Option<u64>,
    /// name=lo:hi interval override, repeatable.
    #[arg(long = "domain", value_name = "NAME=LO:HI", allow_hyphen_values = true)]
    domain: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    #[value(name = "L4", alias = "l4")]
    L4,
    #[value(name = "L6", alias = "l6")]
    L6,
    #[value(name = "L8", alias = "l8")]
    L8,
}

/// Outcome of a command: the report and the exit code.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: u8,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: Vec<String>,
    #[serde(flatten)]
    body: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    seconds: Option<f64>,
}

fn seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("LIESYM_SEED") {
        Ok(v) => {
            let v = v.trim();
            let parsed = match v.strip_prefix("0x").or_else(|| v.strip_prefix("0X")) {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => v.parse(),
            };
            parsed.with_context(|| format!("LIESYM_SEED must be an unsigned integer, got {v:?}"))
        }
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_generator(path: &Path) -> Result<Generator> {
    let spec: GeneratorSpec = read_json(path)?;
    spec.build().with_context(|| format!("building generator from {}", path.display()))
}

fn numbers(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("{what}: {s:?} is not a number")))
        .collect()
}

fn domain(sampling: &Sampling) -> Result<SamplingDomain> {
    let mut dom = SamplingDomain::new().samples(sampling.samples).seed(seed(sampling.seed)?);
    for spec in &sampling.domain {
        let (name, range) = spec.split_once('=').ok_or_else(|| anyhow!("--domain {spec:?}: expected NAME=LO:HI"))?;
        let (lo, hi) = range.split_once(':').ok_or_else(|| anyhow!("--domain {spec:?}: expected NAME=LO:HI"))?;
        let lo: f64 = lo.parse().with_context(|| format!("--domain {spec:?}"))?;
        let hi: f64 = hi.parse().with_context(|| format!("--domain {spec:?}"))?;
        dom = dom.interval(name, lo, hi);
    }
    dom.validate()?;
    Ok(dom)
}

fn verdict_text(v: &ZeroVerdict) -> String {
    match (&v.witness, v.zero) {
        (_, true) => format!("admitted (worst ratio {:.3e} over {} samples)", v.worst_ratio, v.samples),
        (Some(w), false) => format!("rejected (ratio {:.3e}) at {w}", v.worst_ratio),
        (None, false) => format!("rejected (ratio {:.3e})", v.worst_ratio),
    }
}

#[derive(Serialize)]
struct CheckBody {
    system: [String; 2],
    generator: [String; 3],
    tol: f64,
    seed: u64,
    admitted: bool,
    verdict: ZeroVerdict,
}

fn cmd_check(system: &Path, generator: &Path, tol: f64, sampling: &Sampling) -> Result<Outcome> {
    let spec: SystemSpec = read_json(system)?;
    let sys = spec.build().with_context(|| format!("building system from {}", system.display()))?;
    let g = read_generator(generator)?;
    let dom = domain(sampling)?;
    let verdict = admits(&sys, &g, &dom, tol)?;
    let body = CheckBody {
        system: [sys.f.to_string(), sys.g.to_string()],
        generator: [g.xi.to_string(), g.eta1.to_string(), g.eta2.to_string()],
        tol,
        seed: dom.seed,
        admitted: verdict.zero,
        verdict,
    };
    let text = format!("{}: {}", if body.admitted { "PASS" } else { "FAIL" }, verdict_text(&body.verdict));
    let code = if body.admitted { 0 } else { EXIT_FAIL };
    Ok(Outcome { text, json: serde_json::to_value(body)?, code })
}

#[derive(Serialize)]
struct NormalizeBody {
    input: AlgebraElement,
    #[serde(flatten)]
    rep: OptimalRep,
    replayed: AlgebraElement,
    replay_error: f64,
}

fn cmd_normalize(vector: &str, algebra: AlgebraArg) -> Result<Outcome> {
    let e = AlgebraElement::from_slice(&numbers(vector, "vector")?)?;
    let rep = match algebra {
        AlgebraArg::L4 => normalize_l4(&e)?,
        AlgebraArg::L6 => normalize_l6(&e)?,
        AlgebraArg::L8 => normalize_l8(&e)?,
    };
    let replayed = rep.replay(&e);
    let replay_error = replayed.max_diff(&rep.representative);
    let words: Vec<String> = rep.word.iter().map(|s| s.to_string()).collect();
    let text = format!(
        "family {} params {} representative {}\nword: {}\nscale: {}",
        rep.family,
        params_text(&rep),
        rep.representative,
        if words.is_empty() { "(empty)".to_string() } else { words.join(", ") },
        rep.scale,
    );
    let body = NormalizeBody { input: e, rep, replayed, replay_error };
    Ok(Outcome { text, json: serde_json::to_value(body)?, code: 0 })
}

fn params_text(rep: &OptimalRep) -> String {
    let p = &rep.params;
    let parts: Vec<String> = [("alpha", p.alpha), ("beta", p.beta), ("gamma", p.gamma)]
        .iter()
        .filter_map(|(n, v)| v.map(|v| format!("{n}={v}")))
        .collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(" ")
    }
}

fn cmd_jordan(matrix: &str, tol: Option<f64>) -> Result<Outcome> {
    let v = numbers(matrix, "matrix")?;
    let [a11, a12, a21, a22] = v[..] else { bail!("--matrix needs 4 entries a11,a12,a21,a22, got {}", v.len()) };
    let a = Mat2::new(a11, a12, a21, a22);
    let r: Jordan2Result = classify2x2(&a, tol.unwrap_or_else(|| default_tol(&a)));
    let m = |m: &Mat2| format!("[[{}, {}], [{}, {}]]", m.a11, m.a12, m.a21, m.a22);
    let text = format!("{:?}: J = {}\nP = {}\nresidual {:.3e}", r.kind, m(&r.j), m(&r.p), r.residual);
    Ok(Outcome { text, json: serde_json::to_value(&r)?, code: 0 })
}

#[derive(Serialize)]
struct BasisBracket {
    i: usize,
    j: usize,
    bracket: AlgebraElement,
    display: String,
    vector_field: [String; 3],
}

#[derive(Serialize)]
struct FieldBracket {
    bracket: [String; 3],
}

fn cmd_commutator(a: &str, b: &str, files: bool) -> Result<Outcome> {
    if files {
        let c = commutator_vf(&read_generator(Path::new(a))?, &read_generator(Path::new(b))?);
        let bracket = [c.xi.to_string(), c.eta1.to_string(), c.eta2.to_string()];
        let text = format!("xi = {}\neta1 = {}\neta2 = {}", bracket[0], bracket[1], bracket[2]);
        return Ok(Outcome { text, json: serde_json::to_value(FieldBracket { bracket })?, code: 0 });
    }
    let index = |s: &str| -> Result<usize> {
        let i: usize = s.parse().with_context(|| format!("{s:?} is not a basis index"))?;
        if !(1..=8).contains(&i) {
            bail!("basis index {i} is outside 1..8");
        }
        Ok(i)
    };
    let (i, j) = (index(a)?, index(b)?);
    let c = bracket(&AlgebraElement::basis(i), &AlgebraElement::basis(j));
    let vf = commutator_vf(&Generator::basis(i), &Generator::basis(j));
    let body = BasisBracket {
        i,
        j,
        bracket: c,
        display: c.to_string(),
        vector_field: [vf.xi.to_string(), vf.eta1.to_string(), vf.eta2.to_string()],
    };
    Ok(Outcome { text: format!("[X{i}, X{j}] = {}", body.display), json: serde_json::to_value(body)?, code: 0 })
}

fn cmd_catalog_list() -> Result<Outcome> {
    let entries = catalog::list_entries();
    let mut text = String::new();
    for e in &entries {
        let params: Vec<String> = e.params.iter().map(|p| format!("{}={}", p.name, p.default)).collect();
        let flag = if e.quarantined.is_some() { " [quarantined]" } else { "" };
        text.push_str(&format!("{:<13} {}{}\n    params: {}\n", e.id, e.description, flag, params.join(" ")));
    }
    Ok(Outcome { text: text.trim_end().to_string(), json: serde_json::json!({ "entries": entries }), code: 0 })
}

fn cmd_catalog_verify(id: &str, set: &[String], tol: f64, samples: Option<usize>, seed_flag: Option<u64>) -> Result<Outcome> {
    let mut params = Bindings::new();
    for s in set {
        let (name, value) = s.split_once('=').ok_or_else(|| anyhow!("--set {s:?}: expected NAME=VALUE"))?;
        let value: f64 = value.trim().parse().with_context(|| format!("--set {s:?}"))?;
        params.set(name.trim(), value);
    }
    let inst = catalog::instantiate(id, &params)?;
    let mut dom = inst.domain.clone().seed(seed(seed_flag)?);
    if let Some(n) = samples {
        dom = dom.samples(n);
    }
    let report: VerifyReport = catalog::verify_instance(&inst, Some(&dom), tol)?;
    let mut text = format!("{} {}\n  F = {}\n  G = {}\n", report.id, status(&report), report.f, report.g);
    for g in &report.generators {
        text.push_str(&format!("  {}: {}\n", g.name, verdict_text(&g.verdict)));
    }
    if let Some(q) = &report.quarantined {
        text.push_str(&format!("  quarantined: {q}\n"));
    }
    let code = match (&report.quarantined, report.pass) {
        (Some(_), _) => EXIT_QUARANTINED,
        (None, true) => 0,
        (None, false) => EXIT_FAIL,
    };
    Ok(Outcome { text: text.trim_end().to_string(), json: serde_json::to_value(&report)?, code })
}

fn status(r: &VerifyReport) -> &'static str {
    match (r.pass, r.quarantined.is_some()) {
        (true, false) => "PASS",
        (false, false) => "FAIL",
        (true, true) => "PASS (quarantined)",
        (false, true) => "FAIL (quarantined)",
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { system, generator, tol, sampling } => cmd_check(system, generator, *tol, sampling),
        Command::Normalize { vector, algebra } => cmd_normalize(vector, *algebra),
        Command::Jordan { matrix, tol } => cmd_jordan(matrix, *tol),
        Command::Commutator { a, b, files } => cmd_commutator(a, b, *files),
        Command::Catalog(CatalogCommand::List) => cmd_catalog_list(),
        Command::Catalog(CatalogCommand::Verify { id, set, tol, samples, seed }) => {
            cmd_catalog_verify(id, set, *tol, *samples, *seed)
        }
    }
}

/// Print a line; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let seconds = cli.timings.then(|| start.elapsed().as_secs_f64());
    if cli.json {
        let report = Report { command: std::env::args().skip(1).collect(), body: outcome.json, seconds };
        match serde_json::to_string_pretty(&report) {
            Ok(s) => emit(&s),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    } else {
        emit(&outcome.text);
        if let Some(s) = seconds {
            emit(&format!("({s:.3} s)"));
        }
    }
    ExitCode::from(outcome.code)
}
