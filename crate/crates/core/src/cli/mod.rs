//! Command-line front end. [`run`] drives one command and returns the
//! process exit code, so it can be exercised in-process.

pub mod cache;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactla::{read_dump, write_dump, LinalgError};
use crate::jacobian::{ci_hilbert_coefficients, JacobianError, JacobianRing, SmoothnessCertificate};
use crate::lefschetz::{wlp_sweep, LefschetzError, RankOutcome};
use crate::polyring::{
    binomial, parse_form, parse_form_infer, HomogeneousForm, PolyError, PrimeField, DEFAULT_PRIME, MAX_DIMENSION,
};
use crate::variation::{maxvar_in_ring, GeometryInput, GeometryKind, VariationError, VariationOptions, Verdict};
use cache::{form_hash, CacheEntry, RankCache};

#[derive(Debug, Parser)]
#[command(
    name = "maxvar",
    version,
    about = "Jacobian-ring criteria for maximal variation, decided over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded dimensions of the Jacobian ring and the smoothness certificate
    Hilbert(FormArgs),
    /// Weak Lefschetz sweep through the socle degree
    Wlp(FormArgs),
    /// Maximal-variation criterion
    Maxvar {
        #[command(subcommand)]
        kind: KindCommand,
    },
    /// Compare the sparse rank of a matrix dump with the dense oracle
    RankOracle(OracleArgs),
    /// Write the Macaulay matrix of the Jacobian ideal in one degree
    DumpIdeal(DumpArgs),
}

#[derive(Debug, Subcommand)]
pub enum KindCommand {
    /// Smooth hypersurface X = {F = 0} with the system |O_X(e)|
    Hypersurface(MaxvarArgs),
    /// Double cover branched along {F = 0} with the system |π*O(e)|
    DoubleCover(MaxvarArgs),
}

#[derive(Debug, Args)]
pub struct FormArgs {
    /// File holding one homogeneous form; `-` reads stdin
    #[arg(required_unless_present = "fermat", conflicts_with = "fermat")]
    pub file: Option<PathBuf>,
    /// Use the Fermat form x0^D + ... + xN^D
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    pub fermat: Option<Vec<u32>>,
    /// Largest variable index; inferred from the form when omitted
    #[arg(short = 'n')]
    pub n: Option<usize>,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// JSON-lines file caching graded dimensions across runs
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MaxvarArgs {
    #[command(flatten)]
    pub form: FormArgs,
    /// Twist of the linear system
    #[arg(short = 'e', default_value_t = 1)]
    pub e: u32,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub form: FormArgs,
    #[arg(long)]
    pub degree: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: PolyError,
    },
    #[error("prime {prime} must exceed the degree {degree}")]
    PrimeTooSmall { prime: u64, degree: u32 },
    #[error("cache {path}: {source}")]
    Cache {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Variation(#[from] VariationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NOT_SMOOTH: i32 = 4;

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_ERROR
                }
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(Outcome { body, exit }) => {
            let _ = out.write_all(body.as_bytes());
            exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

struct Outcome {
    body: String,
    exit: i32,
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Hilbert(args) => cmd_hilbert(args),
        Command::Wlp(args) => cmd_wlp(args),
        Command::Maxvar { kind } => match kind {
            KindCommand::Hypersurface(args) => cmd_maxvar(GeometryKind::Hypersurface, args),
            KindCommand::DoubleCover(args) => cmd_maxvar(GeometryKind::DoubleCover, args),
        },
        Command::RankOracle(args) => cmd_rank_oracle(args),
        Command::DumpIdeal(args) => cmd_dump_ideal(args),
    }
}

struct Loaded {
    form: HomogeneousForm,
    input: Value,
}

fn read_source(path: &PathBuf) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// Blanks out `#` comments and line breaks so parse positions still point
/// into the original file.
fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_comment = false;
    for c in text.chars() {
        match c {
            '\n' | '\r' => {
                in_comment = false;
                out.push(' ');
            }
            '#' => {
                in_comment = true;
                out.push(' ');
            }
            _ if in_comment => out.extend(std::iter::repeat_n(' ', c.len_utf8())),
            _ => out.push(c),
        }
    }
    out
}

fn load(args: &FormArgs) -> Result<Loaded, CliError> {
    let field = PrimeField::new(args.config.prime)?;
    let (form, source) = if let Some(nd) = &args.fermat {
        let (n, d) = (nd[0] as usize, nd[1]);
        if n > MAX_DIMENSION {
            return Err(PolyError::DimensionTooLarge(n).into());
        }
        if d == 0 {
            return Err(PolyError::DegreeZero.into());
        }
        (HomogeneousForm::fermat(n, d, field), json!({"source": "fermat"}))
    } else {
        let path = args.file.as_ref().expect("clap requires a file or --fermat");
        let text = strip_comments(&read_source(path)?);
        let parsed = match args.n {
            Some(n) => parse_form(&text, n, field),
            None => parse_form_infer(&text, field),
        };
        let form = parsed.map_err(|source| CliError::Parse {
            path: path.display().to_string(),
            source,
        })?;
        (form, json!({"source": "file", "path": path.display().to_string()}))
    };
    if args.config.prime <= form.degree() as u64 {
        return Err(CliError::PrimeTooSmall {
            prime: args.config.prime,
            degree: form.degree(),
        });
    }
    let mut input = source;
    let obj = input.as_object_mut().unwrap();
    obj.insert("n".into(), json!(form.n()));
    obj.insert("d".into(), json!(form.degree()));
    obj.insert("form".into(), json!(form.to_string()));
    obj.insert("hash".into(), json!(form_hash(&form)));
    Ok(Loaded { form, input })
}

struct CacheUse {
    path: String,
    hit: bool,
    appended: usize,
}

/// The smoothness certificate, from the cache when every degree through
/// `s+1` is recorded there.
fn certificate(
    ring: &JacobianRing,
    config: &ConfigArgs,
) -> Result<(SmoothnessCertificate, Option<CacheUse>), CliError> {
    let top = ring.socle_degree() + 1;
    let Some(path) = &config.cache else {
        return Ok((ring.certify_smooth()?, None));
    };
    let cache = RankCache::new(path);
    let cache_err = |source| CliError::Cache {
        path: path.display().to_string(),
        source,
    };
    let hash = form_hash(ring.form());
    let prime = ring.field().modulus();
    let found = cache.lookup(&hash, prime, top).map_err(cache_err)?;
    if found.iter().all(Option::is_some) {
        let dims: Vec<usize> = found.iter().map(|e| e.as_ref().unwrap().dim).collect();
        let cert = SmoothnessCertificate::from_dims(ring.n(), ring.degree(), &dims)?;
        let info = CacheUse {
            path: path.display().to_string(),
            hit: true,
            appended: 0,
        };
        return Ok((cert, Some(info)));
    }
    let cert = ring.certify_smooth()?;
    let n = ring.n();
    let entries: Vec<CacheEntry> = cert
        .dims()
        .into_iter()
        .enumerate()
        .filter(|(q, _)| found[*q].is_none())
        .map(|(q, dim)| CacheEntry {
            form: hash.clone(),
            prime,
            degree: q as u32,
            dim,
            rank: binomial(n + q, n) - dim,
        })
        .collect();
    cache.append(&entries).map_err(cache_err)?;
    let info = CacheUse {
        path: path.display().to_string(),
        hit: false,
        appended: entries.len(),
    };
    Ok((cert, Some(info)))
}

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

struct Report {
    command: &'static str,
    input: Value,
    config: Value,
    verdict: String,
    dims: Value,
    rank: Value,
    failure_bound: Option<f64>,
    witness: Option<String>,
    details: Value,
    timings: Map<String, Value>,
    cache: Option<CacheUse>,
}

impl Report {
    fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("input".into(), self.input.clone());
        top.insert("config".into(), self.config.clone());
        top.insert("verdict".into(), json!(self.verdict));
        top.insert("dims".into(), self.dims.clone());
        top.insert("rank".into(), self.rank.clone());
        if let Some(b) = self.failure_bound {
            top.insert("failure_bound".into(), json!(b));
        }
        if let Some(w) = &self.witness {
            top.insert("witness".into(), json!(w));
        }
        top.insert("details".into(), self.details.clone());
        top.insert("timings_ms".into(), Value::Object(self.timings.clone()));
        if let Some(c) = &self.cache {
            top.insert(
                "cache".into(),
                json!({"path": c.path, "hit": c.hit, "appended": c.appended}),
            );
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("report serializes");
        s.push('\n');
        s
    }
}

fn config_json(config: &ConfigArgs) -> Value {
    json!({"prime": config.prime, "seed": config.seed, "trials": config.trials})
}

fn cache_line(cache: &Option<CacheUse>) -> String {
    match cache {
        Some(c) if c.hit => format!("cache: hit ({})\n", c.path),
        Some(c) => format!("cache: miss, {} entries appended ({})\n", c.appended, c.path),
        None => String::new(),
    }
}

fn describe_input(input: &Value) -> String {
    let n = input["n"].as_u64().unwrap_or(0);
    let d = input["d"].as_u64().unwrap_or(0);
    match input["path"].as_str() {
        Some(p) => format!("{p} (n = {n}, d = {d})"),
        None => format!("Fermat form (n = {n}, d = {d})"),
    }
}

fn cmd_hilbert(args: &FormArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let loaded = load(args)?;
    let ring = JacobianRing::new(loaded.form)?;
    let (cert, cache) = certificate(&ring, &args.config)?;
    let (n, d) = (ring.n(), ring.degree());
    let dims = cert.dims();
    let socle = ring.socle_degree();
    let expected = ci_hilbert_coefficients(n, d);
    let ranks: Vec<usize> = dims
        .iter()
        .enumerate()
        .map(|(q, &dim)| binomial(n + q, n) - dim)
        .collect();
    let certified = cert.is_certified();
    let verdict = if certified { "certified" } else { "not-certified" };
    let mut details = json!({"socle_degree": socle, "expected": expected, "ranks": ranks});
    if !certified {
        details["note"] = json!(format!(
            "R_{} is nonzero: not certified at p = {}; retry with other primes",
            socle + 1,
            args.config.prime
        ));
    }
    let mut timings = Map::new();
    timings.insert("total".into(), json!(millis(start)));
    let report = Report {
        command: "hilbert",
        input: loaded.input,
        config: config_json(&args.config),
        verdict: verdict.into(),
        dims: json!(dims),
        rank: json!(ranks[socle as usize + 1]),
        failure_bound: None,
        witness: None,
        details,
        timings,
        cache,
    };
    let body = match args.config.format {
        Format::Json => report.to_json(),
        Format::Text => {
            let mut t = format!("input: {}\n", describe_input(&report.input));
            t += &format!("prime: {}\n", args.config.prime);
            t += &format!("socle degree: {socle}\n");
            t += &format!("dims R_0..R_{}: {:?}\n", socle + 1, dims);
            t += &format!("complete intersection: {:?}\n", expected);
            if certified {
                t += &format!("smoothness: certified (R_{} = 0)\n", socle + 1);
            } else {
                t += &format!(
                    "smoothness: not certified at p = {} (dim R_{} = {}); retry with other primes\n",
                    args.config.prime,
                    socle + 1,
                    dims[socle as usize + 1]
                );
            }
            t += &cache_line(&report.cache);
            t
        }
    };
    Ok(Outcome {
        body,
        exit: if certified { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

fn outcome_label(o: RankOutcome) -> &'static str {
    match o {
        RankOutcome::CertifiedMaxRank => "certified-max-rank",
        RankOutcome::ProbablyDeficient => "probably-deficient",
        RankOutcome::Indeterminate => "indeterminate",
    }
}

fn cmd_wlp(args: &FormArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let loaded = load(args)?;
    let ring = JacobianRing::new(loaded.form)?;
    let (cert, cache) = certificate(&ring, &args.config)?;
    let smooth_ms = millis(start);
    let dims = cert.dims();
    let socle = ring.socle_degree();
    let mut timings = Map::new();
    let mut report = Report {
        command: "wlp",
        input: loaded.input,
        config: config_json(&args.config),
        verdict: String::new(),
        dims: json!(dims),
        rank: Value::Null,
        failure_bound: None,
        witness: None,
        details: json!({"socle_degree": socle}),
        timings: Map::new(),
        cache,
    };
    let mut text = format!("input: {}\n", describe_input(&report.input));
    text += &format!(
        "prime: {}  seed: {}  trials: {}\n",
        args.config.prime, args.config.seed, args.config.trials
    );
    let exit;
    if !cert.is_certified() {
        report.verdict = "smoothness-not-certified".into();
        report.details["note"] = json!("the Jacobian ring is not Artinian at this prime; retry with other primes");
        text += &format!(
            "smoothness: not certified at p = {}; retry with other primes\n",
            args.config.prime
        );
        exit = EXIT_NEGATIVE;
    } else {
        let sweep = wlp_sweep(&ring, args.config.trials, args.config.seed)?;
        let mut degrees = Vec::new();
        let mut worst: Option<f64> = None;
        for v in &sweep.verdicts {
            degrees.push(json!({
                "p": v.target_degree,
                "source_dim": v.source_dim,
                "target_dim": v.target_dim,
                "rank": v.best_rank,
                "required_rank": v.required_rank,
                "outcome": outcome_label(v.outcome),
                "trials_used": v.trials_used,
                "failure_bound": v.failure_bound,
            }));
            text += &format!(
                "  R_{:<3} -> R_{:<3} {:>6} -> {:<6} rank {:>6}  {}\n",
                v.source_degree,
                v.target_degree,
                v.source_dim,
                v.target_dim,
                v.best_rank,
                outcome_label(v.outcome)
            );
            if !v.is_certified() {
                worst = Some(worst.map_or(v.failure_bound, |w: f64| w.max(v.failure_bound)));
                if report.witness.is_none() {
                    report.witness = v.witness.as_ref().map(|g| g.to_string());
                }
            }
        }
        report.rank = json!(sweep.verdicts.iter().map(|v| v.best_rank).collect::<Vec<_>>());
        report.failure_bound = worst;
        report.details["shared_form_sufficed"] = json!(sweep.shared_form_sufficed);
        report.details["degrees"] = json!(degrees);
        report.verdict = if sweep.holds { "holds" } else { "fails" }.into();
        text += &format!(
            "weak Lefschetz property: {}\n",
            if sweep.holds {
                "holds in every degree"
            } else {
                "not certified in every degree"
            }
        );
        if let Some(b) = worst {
            text += &format!("failure bound: {b:e}\n");
        }
        if let Some(w) = &report.witness {
            text += &format!("witness: {w}\n");
        }
        exit = if sweep.holds { EXIT_OK } else { EXIT_NEGATIVE };
    }
    timings.insert("smoothness".into(), json!(smooth_ms));
    timings.insert("total".into(), json!(millis(start)));
    report.timings = timings;
    text += &cache_line(&report.cache);
    let body = match args.config.format {
        Format::Json => report.to_json(),
        Format::Text => text,
    };
    Ok(Outcome { body, exit })
}

fn cmd_maxvar(kind: GeometryKind, args: &MaxvarArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let config = &args.form.config;
    let loaded = load(&args.form)?;
    let input = GeometryInput::new(kind, loaded.form.clone(), args.e);
    let options = VariationOptions {
        trials: config.trials,
        seed: config.seed,
        enforce_gates: true,
    };
    let mut cache = None;
    let mut smooth_ms = 0.0;
    let report = if let Some(detail) = input.gate_violation() {
        // no ring work for inputs outside the gate
        crate::variation::VariationReport {
            kind,
            n: input.n(),
            d: input.d(),
            e: input.e,
            verdict: Verdict::PreconditionViolated { detail },
            criterion: crate::variation::Criterion::None,
            provenance: crate::variation::Provenance {
                prime: config.prime,
                seed: config.seed,
                trials: config.trials,
                source_dim: None,
                target_dim: None,
                rank: None,
            },
            dims: None,
            rank_verdict: None,
            notes: Vec::new(),
        }
    } else {
        let ring = JacobianRing::new(loaded.form)?;
        let (cert, used) = certificate(&ring, config)?;
        smooth_ms = millis(start);
        cache = used;
        maxvar_in_ring(&input, &ring, &cert, &options)?
    };

    let (failure_bound, witness) = match &report.verdict {
        Verdict::NoEvidence { failure_bound, witness } => {
            (Some(*failure_bound), witness.as_ref().map(|g| g.to_string()))
        }
        _ => (None, None),
    };
    let mut details = json!({
        "kind": kind,
        "e": args.e,
        "criterion": report.criterion,
        "provenance": report.provenance,
        "notes": report.notes,
    });
    match &report.verdict {
        Verdict::TriviallyCertified { reason } => details["reason"] = json!(reason),
        Verdict::PreconditionViolated { detail } => details["violated"] = json!(detail),
        Verdict::SmoothnessNotCertified { degree, dim } => {
            details["nonzero_degree"] = json!(degree);
            details["nonzero_dim"] = json!(dim);
        }
        _ => {}
    }
    if let Some(v) = &report.rank_verdict {
        details["map"] = json!({
            "source_degree": v.source_degree,
            "target_degree": v.target_degree,
            "source_dim": v.source_dim,
            "target_dim": v.target_dim,
            "required_rank": v.required_rank,
            "outcome": outcome_label(v.outcome),
            "trials_used": v.trials_used,
            "h": v.h.to_string(),
        });
    }
    let exit = match &report.verdict {
        Verdict::MaximalVariationCertified | Verdict::TriviallyCertified { .. } => EXIT_OK,
        Verdict::NoEvidence { .. } => EXIT_NEGATIVE,
        Verdict::PreconditionViolated { .. } => EXIT_PRECONDITION,
        Verdict::SmoothnessNotCertified { .. } => EXIT_NOT_SMOOTH,
    };
    let mut timings = Map::new();
    timings.insert("smoothness".into(), json!(smooth_ms));
    timings.insert("total".into(), json!(millis(start)));
    let command = match kind {
        GeometryKind::Hypersurface => "maxvar hypersurface",
        GeometryKind::DoubleCover => "maxvar double-cover",
    };
    let out = Report {
        command,
        input: loaded.input,
        config: config_json(config),
        verdict: report.verdict.label().into(),
        dims: json!(report.dims.clone().unwrap_or_default()),
        rank: json!(report.provenance.rank),
        failure_bound,
        witness,
        details,
        timings,
        cache,
    };
    let body = match config.format {
        Format::Json => out.to_json(),
        Format::Text => {
            let mut t = format!("input: {}\n", describe_input(&out.input));
            t += &format!("geometry: {command} with e = {}\n", args.e);
            t += &format!("verdict: {}\n", out.verdict);
            match &report.verdict {
                Verdict::TriviallyCertified { reason } => t += &format!("reason: {reason}\n"),
                Verdict::PreconditionViolated { detail } => t += &format!("violated: {detail}\n"),
                Verdict::SmoothnessNotCertified { degree, dim } => {
                    t += &format!("dim R_{degree} = {dim}, expected 0\n")
                }
                _ => {}
            }
            let p = &report.provenance;
            if let (Some(s), Some(tg)) = (p.source_dim, p.target_dim) {
                t += &format!("dim R_(d-e) = {s}, dim R_d = {tg}");
                if let Some(r) = p.rank {
                    t += &format!(", rank {r}");
                }
                t.push('\n');
            }
            if let Some(b) = failure_bound {
                t += &format!("failure bound: {b:e}\n");
            }
            if let Some(w) = &out.witness {
                t += &format!("witness G: {w}\n");
            }
            for note in &report.notes {
                t += &format!("note: {note}\n");
            }
            t += &cache_line(&out.cache);
            t
        }
    };
    Ok(Outcome { body, exit })
}

fn cmd_rank_oracle(args: &OracleArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let text = read_source(&args.file)?;
    let m = read_dump(&text)?;
    let sparse = m.to_sparse().rank();
    let oracle = m.dense_rank_oracle()?;
    let agree = sparse == oracle;
    let mut timings = Map::new();
    timings.insert("total".into(), json!(millis(start)));
    let report = Report {
        command: "rank-oracle",
        input: json!({"source": "file", "path": args.file.display().to_string()}),
        config: json!({"prime": m.field().modulus(), "seed": Value::Null, "trials": Value::Null}),
        verdict: if agree { "agree" } else { "mismatch" }.into(),
        dims: json!([m.rows(), m.cols()]),
        rank: json!(sparse),
        failure_bound: None,
        witness: None,
        details: json!({"sparse_rank": sparse, "oracle_rank": oracle, "nnz": m.nnz()}),
        timings,
        cache: None,
    };
    let body = match args.format {
        Format::Json => report.to_json(),
        Format::Text => format!(
            "matrix: {} x {} over F_{}\nsparse rank: {sparse}\noracle rank: {oracle}\n{}\n",
            m.rows(),
            m.cols(),
            m.field().modulus(),
            if agree { "agree" } else { "MISMATCH" }
        ),
    };
    Ok(Outcome {
        body,
        exit: if agree { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

fn cmd_dump_ideal(args: &DumpArgs) -> Result<Outcome, CliError> {
    let loaded = load(&args.form)?;
    let ring = JacobianRing::new(loaded.form)?;
    let m = ring.ideal_matrix(args.degree)?;
    Ok(Outcome {
        body: write_dump(&m),
        exit: EXIT_OK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["maxvar"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn comments_keep_positions() {
        let s = strip_comments("x0^2 # c\n+ x1^2");
        assert_eq!(s.len(), "x0^2 # c\n+ x1^2".len());
        assert_eq!(s.split_whitespace().collect::<Vec<_>>(), ["x0^2", "+", "x1^2"]);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["hilbert"]).0, EXIT_ERROR);
        assert_eq!(call(&["wlp", "--fermat", "3"]).0, EXIT_ERROR);
        assert_eq!(call(&["hilbert", "--fermat", "3", "4", "--prime", "12"]).0, EXIT_ERROR);
        let (code, _, err) = call(&["hilbert", "--fermat", "3", "4", "--prime", "3"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("must exceed the degree"));
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn hilbert_fermat_text() {
        let (code, out, _) = call(&["hilbert", "--fermat", "3", "4"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("[1, 4, 10, 16, 19, 16, 10, 4, 1, 0]"));
        assert!(out.contains("certified"));
    }

    #[test]
    fn maxvar_exit_codes() {
        assert_eq!(
            call(&["maxvar", "hypersurface", "--fermat", "3", "4", "-e", "1"]).0,
            EXIT_OK
        );
        assert_eq!(
            call(&["maxvar", "hypersurface", "--fermat", "3", "3"]).0,
            EXIT_PRECONDITION
        );
        assert_eq!(
            call(&["maxvar", "double-cover", "--fermat", "2", "6", "-e", "1"]).0,
            EXIT_OK
        );
        assert_eq!(
            call(&["maxvar", "double-cover", "--fermat", "3", "5"]).0,
            EXIT_PRECONDITION
        );
    }
}
