//! The `qwc` command line: argument parsing, output formatting, exit codes
//! and the on-disk result cache.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::exact::{laurent_expand, CurveClass, RatFunc};
use crate::gw::{mirror_transformed_j, Series};
use crate::ifun::{extract_i0_i1, mirror_map, small_i, truncate, Epsilon};
use crate::toric::{GitPresentation, Toric};
use crate::wallcross::{
    point_wallcross_range, verify_i0_lemma, verify_i_equals_j, verify_property, verify_truncation_consistency,
    verify_v_s, Property, Status, VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qwc", version, about = "Exact I/J-functions and wall-crossing checks for toric GIT quotients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Built-in presentation: p1, p2, f2, local-p2, point, point-r2.
    #[arg(long, conflicts_with = "file")]
    pub preset: Option<String>,
    /// JSON presentation document.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Zero the timing fields so that identical runs give identical bytes.
    #[arg(long)]
    pub stable_output: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    IEqualsJ,
    Truncation,
    #[value(name = "v-s")]
    VS,
    PointWallcross,
    String,
    Dilaton,
    Divisor,
    Trr,
    I0Lemma,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fixed points, curve classes and positivity of a presentation.
    Analyze {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        output: Output,
    },
    /// Small I-function at every fixed point.
    Ifun {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        degree: i64,
        #[arg(long = "z-order", default_value_t = 4)]
        z_order: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Small J-function by localization; with a finite epsilon, the
    /// mirror-transformed J^eps predicted from the truncated I-function.
    Jfun {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        degree: i64,
        #[arg(long = "z-order", default_value_t = 4)]
        z_order: i64,
        #[arg(long, default_value = "inf")]
        epsilon: String,
        #[command(flatten)]
        output: Output,
    },
    /// Check an identity and report per-coefficient status.
    Verify {
        #[arg(value_enum)]
        identity: Identity,
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        degree: i64,
        #[arg(long = "z-order", default_value_t = 4)]
        z_order: i64,
        #[arg(long, default_value = "1")]
        epsilon: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances per property check.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
        #[arg(long, default_value_t = 5)]
        dmax: usize,
        #[command(flatten)]
        output: Output,
    },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: String) -> Self {
        Outcome { code, stdout: String::new(), stderr: msg }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_) | Error::NotSemiPositive(_) | Error::EffectiveConeUnknown => EXIT_UNSUPPORTED,
        Error::Inconsistent(_) => EXIT_FAIL,
        _ => EXIT_INVALID,
    }
}

/// Parse `args` (including the program name) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            return Outcome { code, stdout: if code == 0 { e.to_string() } else { String::new() }, stderr: if code == 0 { String::new() } else { e.to_string() } };
        }
    };
    let output = match &cli.command {
        Command::Analyze { output, .. }
        | Command::Ifun { output, .. }
        | Command::Jfun { output, .. }
        | Command::Verify { output, .. } => output.clone(),
    };
    let go = || -> Outcome {
        let (code, payload) = match execute_cached(&cli) {
            Ok(r) => r,
            Err(e) => return Outcome::error(exit_code(&e), format!("error: {e}\n")),
        };
        match &output.out {
            Some(path) => match std::fs::write(path, &payload) {
                Ok(()) => Outcome { code, stdout: format!("wrote {}\n", path.display()), stderr: String::new() },
                Err(e) => Outcome::error(EXIT_INVALID, format!("error: cannot write {}: {e}\n", path.display())),
            },
            None => Outcome { code, stdout: payload, stderr: String::new() },
        }
    };
    match output.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => Outcome::error(EXIT_INVALID, format!("error: cannot start {n} threads: {e}\n")),
        },
        None => go(),
    }
}

fn load(target: &Target) -> Result<Toric, Error> {
    match (&target.preset, &target.file) {
        (Some(p), None) => Toric::preset(p),
        (None, Some(f)) => {
            let text = std::fs::read_to_string(f)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", f.display())))?;
            let pres = GitPresentation::from_json(&text)?;
            let name = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "custom".into());
            Toric::load_named(pres, &name)
        }
        (None, None) => Toric::preset("p1"),
        (Some(_), Some(_)) => Err(Error::InvalidArgument("give either --preset or --file".into())),
    }
}

/// A content address for the run: the presentation plus every argument
/// that changes the result.
fn cache_key(cli: &Cli, t: Option<&Toric>) -> String {
    let pres = t.map(|t| t.presentation().canonical_json()).unwrap_or_default();
    let desc = match &cli.command {
        Command::Analyze { output, .. } => format!("analyze {:?} {}", output.format, output.stable_output),
        Command::Ifun { degree, z_order, output, .. } => format!("ifun {degree} {z_order} {:?}", output.format),
        Command::Jfun { degree, z_order, epsilon, output, .. } => {
            format!("jfun {degree} {z_order} {epsilon} {:?}", output.format)
        }
        Command::Verify { identity, degree, z_order, epsilon, seed, trials, kmax, dmax, output, .. } => format!(
            "verify {identity:?} {degree} {z_order} {epsilon} {seed} {trials} {kmax} {dmax} {:?} {}",
            output.format, output.stable_output
        ),
    };
    let name = t.map(|t| t.name().to_string()).unwrap_or_default();
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update([0]);
    h.update(name.as_bytes());
    h.update([0]);
    h.update(pres.as_bytes());
    h.update([0]);
    h.update(desc.as_bytes());
    hex::encode(h.finalize())
}

fn execute_cached(cli: &Cli) -> Result<(i32, String), Error> {
    let toric = match &cli.command {
        Command::Verify { identity: Identity::PointWallcross, .. } => None,
        Command::Analyze { target, .. }
        | Command::Ifun { target, .. }
        | Command::Jfun { target, .. }
        | Command::Verify { target, .. } => Some(load(target)?),
    };
    let dir = std::env::var_os("QWC_CACHE_DIR").map(PathBuf::from);
    let path = dir.as_ref().map(|d| d.join(format!("{}.json", cache_key(cli, toric.as_ref()))));
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(v) = serde_json::from_str::<Value>(&text) {
                if let (Some(code), Some(payload)) = (v["code"].as_i64(), v["payload"].as_str()) {
                    return Ok((code as i32, payload.to_string()));
                }
            }
        }
    }
    let (code, payload) = execute(cli, toric.as_ref())?;
    if let (Some(d), Some(p)) = (&dir, &path) {
        // A cache that cannot be written is not an error.
        let _ = std::fs::create_dir_all(d);
        let _ = std::fs::write(p, json!({"code": code, "payload": payload}).to_string());
    }
    Ok((code, payload))
}

fn status_code(r: &VerificationReport) -> i32 {
    match r.status() {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_FAIL,
        Status::Unsupported => EXIT_UNSUPPORTED,
    }
}

fn execute(cli: &Cli, t: Option<&Toric>) -> Result<(i32, String), Error> {
    match &cli.command {
        Command::Analyze { output, .. } => analyze(t.expect("target loaded"), output.format),
        Command::Ifun { degree, z_order, output, .. } => {
            check_bounds(*degree, *z_order)?;
            let t = t.expect("target loaded");
            let i = small_i(t, *degree)?;
            Ok((EXIT_OK, coefficient_table(t, "I", &i.per_sigma, *degree, *z_order, output.format)?))
        }
        Command::Jfun { degree, z_order, epsilon, output, .. } => {
            check_bounds(*degree, *z_order)?;
            let t = t.expect("target loaded");
            let eps: Epsilon = epsilon.parse()?;
            if eps != Epsilon::Infinity && !t.classify()?.semi_positive {
                return Err(Error::NotSemiPositive(format!("{} is not semi-positive; J^eps is not predicted", t.name())));
            }
            let series = if eps == Epsilon::Infinity {
                mirror_transformed_j(t, *degree, None)?
            } else {
                let parts = extract_i0_i1(t, &small_i(t, *degree)?)?;
                let pair = truncate(&parts, &eps);
                let shift = mirror_map(&pair)?;
                let j = mirror_transformed_j(t, *degree, Some(&shift))?;
                j.iter().map(|s| s.mul(&pair.j0)).collect::<Result<Vec<_>, _>>()?
            };
            Ok((EXIT_OK, coefficient_table(t, "J", &series, *degree, *z_order, output.format)?))
        }
        Command::Verify { identity, degree, z_order, epsilon, seed, trials, kmax, dmax, output, .. } => {
            if *degree < 0 {
                return Err(Error::InvalidArgument(format!("degree must be non-negative, got {degree}")));
            }
            let params = VerifyParams {
                degree: *degree,
                z_order: *z_order,
                epsilon: epsilon.parse()?,
                seed: *seed,
                trials: *trials,
                kmax: *kmax,
                dmax: *dmax,
            };
            let report = run_verification(*identity, t, &params)?;
            let report = if output.stable_output { report.without_timing() } else { report };
            Ok((status_code(&report), format_report(&report, output.format)))
        }
    }
}

/// Parameters shared by every `verify` identity; each uses the ones it needs.
#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub degree: i64,
    pub z_order: i64,
    pub epsilon: Epsilon,
    pub seed: u64,
    pub trials: usize,
    pub kmax: usize,
    pub dmax: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { degree: 2, z_order: 4, epsilon: Epsilon::Finite(crate::exact::rat(1)), seed: 0, trials: 20, kmax: 6, dmax: 5 }
    }
}

impl std::str::FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        <Identity as ValueEnum>::from_str(s, false).map_err(|_| Error::InvalidArgument(format!("unknown identity `{s}`")))
    }
}

/// Run one identity check. `t` may be `None` only for `point-wallcross`.
pub fn run_verification(identity: Identity, t: Option<&Toric>, p: &VerifyParams) -> Result<VerificationReport, Error> {
    if p.degree < 0 {
        return Err(Error::InvalidArgument(format!("degree must be non-negative, got {}", p.degree)));
    }
    if identity == Identity::PointWallcross {
        return point_wallcross_range(p.kmax, p.dmax);
    }
    let t = t.ok_or_else(|| Error::InvalidArgument("this identity needs a presentation".into()))?;
    match identity {
        Identity::IEqualsJ => verify_i_equals_j(t, p.degree, p.z_order),
        Identity::Truncation => verify_truncation_consistency(t, &p.epsilon, p.degree, p.z_order),
        Identity::VS => verify_v_s(t, p.degree),
        Identity::I0Lemma => verify_i0_lemma(t, p.degree),
        Identity::String => verify_property(t, Property::String, p.degree, p.trials, p.seed),
        Identity::Dilaton => verify_property(t, Property::Dilaton, p.degree, p.trials, p.seed),
        Identity::Divisor => verify_property(t, Property::Divisor, p.degree, p.trials, p.seed),
        Identity::Trr => verify_property(t, Property::Trr, p.degree, p.trials, p.seed),
        Identity::PointWallcross => unreachable!(),
    }
}

fn check_bounds(degree: i64, z_order: i64) -> Result<(), Error> {
    if degree < 0 {
        return Err(Error::InvalidArgument(format!("degree must be non-negative, got {degree}")));
    }
    if z_order < 2 {
        return Err(Error::InvalidArgument(format!("z-order must be at least 2, got {z_order}")));
    }
    Ok(())
}

fn sigma_name(t: &Toric, sigma: usize) -> String {
    let l: Vec<String> = t.sigma_label(sigma).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", l.join(","))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The `analyze` summary as a JSON value.
pub fn analysis(t: &Toric) -> Result<Value, Error> {
    let c = t.classify()?;
    let names = t.var_names();
    let fixed: Vec<Value> = (0..t.fixed_points().len())
        .map(|s| {
            let w: Vec<String> = t.fixed_point(s).tangent_weights().iter().map(|p| p.to_string_with(&names)).collect();
            json!({"sigma": sigma_name(t, s), "tangent_weights": w})
        })
        .collect();
    let orbits: Vec<Value> = t
        .closed_orbits()
        .iter()
        .map(|o| {
            json!({
                "ends": [sigma_name(t, o.ends.0), sigma_name(t, o.ends.1)],
                "class": o.class.to_string(),
                "tangent_weight": o.weight.to_string_with(&names),
            })
        })
        .collect();
    let gens: Vec<Value> =
        c.c1_on_generators.iter().map(|(g, c1)| json!({"class": g.to_string(), "c1": c1})).collect();
    let ghost: Vec<usize> = c.ghost_rays.iter().map(|r| r + 1).collect();
    Ok(json!({
        "preset": t.name(),
        "n": t.dim(),
        "r": t.rank(),
        "dim": c.dim,
        "semi_positive": c.semi_positive,
        "fano": c.fano,
        "i1_vanishes": c.i1_vanishes,
        "chi_top": c.chi_top,
        "ghost_rays": ghost,
        "note": c.picard_rank_note,
        "effective_generators": gens,
        "fixed_points": fixed,
        "closed_orbits": orbits,
    }))
}

fn analyze(t: &Toric, format: Format) -> Result<(i32, String), Error> {
    let v = analysis(t)?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&v).expect("json") + "\n",
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for k in ["preset", "n", "r", "dim", "semi_positive", "fano", "i1_vanishes", "chi_top"] {
                let val = match &v[k] {
                    Value::String(x) => x.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(s, "{k},{}", csv_field(&val));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(s, "{}: dim {}, rank {}", t.name(), v["dim"], v["r"]);
            let _ = writeln!(s, "semi_positive={} fano={} chi_top={}", v["semi_positive"], v["fano"], v["chi_top"]);
            for f in v["fixed_points"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  fixed point {}: weights {}", f["sigma"].as_str().unwrap_or(""), f["tangent_weights"]);
            }
            for g in v["effective_generators"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  generator {} with c1 = {}", g["class"].as_str().unwrap_or(""), g["c1"]);
            }
            let _ = writeln!(s, "  {}", v["note"].as_str().unwrap_or(""));
            s
        }
    };
    Ok((EXIT_OK, text))
}

/// `(sigma, beta, value, [(z power, coefficient)])`.
type Row = (String, String, RatFunc, Vec<(i64, String)>);

fn coefficient_table(t: &Toric, what: &str, series: &[Series], degree: i64, z_order: i64, format: Format) -> Result<String, Error> {
    let names = t.var_names();
    let classes: Vec<CurveClass> = t.effective_classes(degree)?;
    let mut rows: Vec<Row> = Vec::new();
    for (s, ser) in series.iter().enumerate() {
        for b in &classes {
            let c = ser.coeff(b);
            let e = laurent_expand(&c, t.zvar(), z_order)?;
            let terms: Vec<(i64, String)> = e.terms().map(|(k, v)| (-k, v.to_factored_string_with(&names))).collect();
            rows.push((sigma_name(t, s), b.to_string(), c, terms));
        }
    }
    Ok(match format {
        Format::Json => {
            let coeffs: Vec<Value> = rows
                .iter()
                .map(|(s, b, c, terms)| {
                    let ex: Vec<Value> = terms.iter().map(|(p, v)| json!({"z_power": p, "coeff": v})).collect();
                    json!({"sigma": s, "beta": b, "value": c.to_factored_string_with(&names), "expansion": ex})
                })
                .collect();
            let v = json!({
                "function": what,
                "preset": t.name(),
                "variables": names,
                "degree_bound": degree,
                "z_order": z_order,
                "coefficients": coeffs,
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("sigma,beta,z_power,coeff\n");
            for (s, b, _, terms) in &rows {
                for (p, v) in terms {
                    let _ = writeln!(out, "{},{},{p},{}", csv_field(s), csv_field(b), csv_field(v));
                }
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (s, b, c, _) in &rows {
                let _ = writeln!(out, "{what}[{s}] q^{b}: {}", c.to_factored_string_with(&names));
            }
            out
        }
    })
}

fn format_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json() + "\n",
        Format::Csv => {
            let mut out = String::from("sigma,beta,status,witness\n");
            for c in &r.cells {
                let status = serde_json::to_value(c.status).expect("status").as_str().unwrap_or("").to_string();
                let _ = writeln!(
                    out,
                    "{},{},{status},{}",
                    csv_field(&c.sigma),
                    csv_field(&c.beta),
                    csv_field(c.witness.as_deref().unwrap_or(""))
                );
            }
            out
        }
        Format::Pretty => {
            let mut out = format!(
                "{} on {} (degree <= {}): {:?}, {} pass, {} fail, {} unsupported, {} ms\n",
                r.identity,
                r.preset,
                r.degree_bound,
                r.status(),
                r.count(Status::Pass),
                r.count(Status::Fail),
                r.count(Status::Unsupported),
                r.runtime_ms
            );
            for c in r.cells.iter().filter(|c| c.status != Status::Pass) {
                let _ = writeln!(out, "  {:?} at {} q^{}: {}", c.status, c.sigma, c.beta, c.witness.as_deref().unwrap_or(""));
            }
            out
        }
    }
}
