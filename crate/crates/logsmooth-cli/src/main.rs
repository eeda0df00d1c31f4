//! Command-line front end for the `logsmooth` toolkit.
//!
//! Four commands cover the library surface: `norm` evaluates a space norm of
//! a signal or coefficient file, `embed` decides whether one space embeds
//! into another, `witness` runs a sharpness demonstration and tabulates its
//! divergence, and `verify` runs a named check suite on the bundled corpus.
//!
//! Exit codes are a stable contract:
//!
//! * 0: success; for `embed` the embedding holds, for `verify` all checks pass
//! * 1: `embed`: the embedding fails; `verify`: some check failed
//! * 2: usage, config or input errors (including unknown suite names)
//! * 3: invalid space parameters, with the validation report on stderr
//! * 4: `embed`: the pair is outside the decidable rule catalogue
//! * 5: `witness`: exponents outside the constructible interval
//!
//! Payloads are byte-deterministic: fixed iteration orders, no timestamps.
//! With `--out` the payload goes to the file and the exact argv goes to a
//! `<out>.cmd.txt` sidecar, so runs stay reproducible without run metadata
//! leaking into the payload itself.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process;
use std::str::FromStr;

use logsmooth::closed_forms::{self, GMSequence, GmFlavor, LacunarySpec};
use logsmooth::dyadic::{self, PartitionKind, PeriodicSignal};
use logsmooth::params::{self, SpaceKind, SpaceParams};
use logsmooth::report::NormReport;
use logsmooth::sharpness::{self, NormRoute, WitnessFamily, WitnessSpec};
use logsmooth::{embed, exec, haar, moduli, rearrange, suites};
use logsmooth::{Complex64, Error};

#[derive(Parser)]
#[command(
    name = "logsmooth",
    version,
    about = "Norms, embedding decisions and sharpness demonstrations for \
             smoothness spaces with logarithmic indices"
)]
struct Cli {
    /// Write the payload to this file instead of stdout; the exact argv is
    /// recorded in a `<PATH>.cmd.txt` sidecar
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Payload format; defaults per command (json for norm/embed, csv for
    /// witness, plain text for verify)
    #[arg(long, global = true, value_enum, value_name = "FMT")]
    format: Option<Format>,

    /// Seed for the randomized fixtures of the `equivalence` suite
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// key=value file supplying defaults for any flag of the active command;
    /// explicit flags win, unknown keys are rejected
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a space norm of a signal or coefficient file
    Norm(NormArgs),
    /// Decide whether the first space embeds into the second
    Embed(EmbedArgs),
    /// Build a sharpness witness family and tabulate its divergence
    Witness(WitnessArgs),
    /// Run a named verification suite on the bundled corpus
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Method {
    /// Frequency-side routes: Besov blocks, Lipschitz truncated square
    /// function, Sobolev multiplier, plain Lebesgue norm
    Fourier,
    /// Modulus-of-smoothness routes (Lipschitz and Besov)
    Modulus,
    /// Partial-sum Fourier means route (Lipschitz)
    Means,
    /// Haar coefficient sequence norms (Lipschitz and Besov)
    Haar,
    /// Rearrangement routes (Lorentz-Zygmund, grand Lorentz, Lebesgue)
    Rearrange,
    /// Closed forms for lacunary coefficient files (Lipschitz and Besov)
    Lacunary,
    /// Closed forms for general-monotone coefficient files
    Gm,
}

impl Method {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Partition {
    Sharp,
    SmoothBump,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Flavor {
    Cos,
    Sin,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Family {
    Lacunary,
    Gm,
}

#[derive(Args)]
struct NormArgs {
    /// Space string, e.g. `Lip:alpha=1/2,p=2,q=2,b=1`
    #[arg(long)]
    space: Option<String>,

    /// Norm route family
    #[arg(long, value_enum)]
    method: Option<Method>,

    /// Input file: one sample per line (`re` or `re,im`) for signal routes,
    /// one coefficient per line for `lacunary` and `gm`
    #[arg(long)]
    input: Option<PathBuf>,

    /// Expected number of input rows, checked against the file
    #[arg(long)]
    grid_size: Option<usize>,

    /// Dyadic scale count for the modulus routes
    #[arg(long)]
    scales: Option<usize>,

    /// Difference order for the Besov modulus route
    /// (default: smallest integer above the smoothness)
    #[arg(long)]
    order: Option<f64>,

    /// Frequency partition for the Fourier-side routes
    #[arg(long, value_enum)]
    partition: Option<Partition>,

    /// Series flavor for `gm` coefficient files
    #[arg(long, value_enum)]
    flavor: Option<Flavor>,
}

#[derive(Args)]
struct EmbedArgs {
    /// Source space string
    #[arg(value_name = "SRC")]
    src: Option<String>,

    /// Target space string
    #[arg(value_name = "DST")]
    dst: Option<String>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Witness family
    #[arg(long, value_enum)]
    family: Option<Family>,

    /// Smoothness exponent (default: the family's catalogued value)
    #[arg(long)]
    alpha: Option<f64>,

    /// Secondary log exponent of the witness coefficients
    #[arg(long)]
    beta: Option<f64>,

    /// Log weight exponent of the norms
    #[arg(long)]
    b: Option<f64>,

    /// Inner integrability exponent
    #[arg(long)]
    p: Option<f64>,

    /// Outer aggregation exponent
    #[arg(long)]
    q: Option<f64>,

    /// Comma-separated truncation list, e.g. `2048,4096,8192`
    #[arg(long)]
    truncations: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: equivalence, modulus-properties, hardy, engine-table, haar
    #[arg(value_name = "SUITE")]
    suite: Option<String>,
}

// ---------------------------------------------------------------------------
// failure plumbing
// ---------------------------------------------------------------------------

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn report(&self) -> i32 {
        eprintln!("error: {}", self.message);
        self.code
    }
}

type CliResult<T> = Result<T, Failure>;

fn fail<T>(code: i32, message: impl Into<String>) -> CliResult<T> {
    Err(Failure::new(code, message))
}

/// Library errors are usage/input errors (exit 2), except the witness
/// interval violations which have their own contract code.
fn lib_err(e: Error) -> Failure {
    let code = match e {
        Error::WitnessInterval(_) => 5,
        _ => 2,
    };
    Failure::new(code, e.to_string())
}

// ---------------------------------------------------------------------------
// config file
// ---------------------------------------------------------------------------

/// Parsed key=value config file. Every key must be consumed by the active
/// command; leftovers are unknown keys and rejected.
#[derive(Default)]
struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::new(2, format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return fail(2, format!("{}:{}: expected key=value", path.display(), i + 1));
            };
            let key = k.trim().to_string();
            if entries.insert(key.clone(), v.trim().to_string()).is_some() {
                return fail(2, format!("{}:{}: duplicate key `{key}`", path.display(), i + 1));
            }
        }
        Ok(ConfigMap { entries })
    }

    fn take_raw(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    fn ensure_empty(&self, command: &str) -> CliResult<()> {
        if let Some(k) = self.entries.keys().next() {
            return fail(2, format!("config key `{k}` is not recognized for `{command}`"));
        }
        Ok(())
    }
}

/// Flag value if given, else the config value; the config key is consumed
/// either way so it never counts as unknown.
fn merge<T: FromStr>(flag: Option<T>, cfg: &mut ConfigMap, key: &str) -> CliResult<Option<T>>
where
    T::Err: fmt::Display,
{
    let raw = cfg.take_raw(key);
    if flag.is_some() {
        return Ok(flag);
    }
    match raw {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|e| Failure::new(2, format!("config key `{key}`: bad value `{v}`: {e}"))),
    }
}

fn merge_enum<T: ValueEnum>(flag: Option<T>, cfg: &mut ConfigMap, key: &str) -> CliResult<Option<T>> {
    let raw = cfg.take_raw(key);
    if flag.is_some() {
        return Ok(flag);
    }
    match raw {
        None => Ok(None),
        Some(v) => {
            T::from_str(&v, true).map(Some).map_err(|e| Failure::new(2, format!("config key `{key}`: {e}")))
        }
    }
}

fn required<T>(v: Option<T>, what: &str) -> CliResult<T> {
    match v {
        Some(v) => Ok(v),
        None => fail(2, format!("missing {what}")),
    }
}

// ---------------------------------------------------------------------------
// payload emission
// ---------------------------------------------------------------------------

struct Globals {
    out: Option<PathBuf>,
    format: Option<Format>,
    seed: u64,
}

fn json_payload<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("payload serializes");
    s.push('\n');
    s
}

/// Two-column CSV rendering of any payload: nested fields are flattened to
/// dotted keys, arrays to numeric segments. serde_json orders object keys,
/// so the row order is deterministic.
fn csv_payload<T: serde::Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("payload serializes");
    let mut rows = Vec::new();
    flatten_json("", &v, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, val) in rows {
        out.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&val)));
    }
    out
}

fn flatten_json(prefix: &str, v: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    use serde_json::Value;
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, vv) in m {
                flatten_json(&key(k), vv, rows);
            }
        }
        Value::Array(a) => {
            for (i, vv) in a.iter().enumerate() {
                flatten_json(&key(&i.to_string()), vv, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        Value::Number(n) => rows.push((prefix.to_string(), n.to_string())),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_payload(g: &Globals, payload: &str) -> CliResult<()> {
    match &g.out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, payload)
                .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))?;
            let mut side = path.clone().into_os_string();
            side.push(".cmd.txt");
            let argv: Vec<String> = std::env::args().collect();
            fs::write(&side, format!("{}\n", argv.join(" ")))
                .map_err(|e| Failure::new(2, format!("cannot write sidecar: {e}")))?;
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// input files
// ---------------------------------------------------------------------------

/// Read a numeric CSV: one value per line as `re` or `re,im`. Blank lines and
/// `#` comments are ignored; an optional `# N=<count>` header is validated
/// against the number of data rows.
fn read_numeric_rows(path: &Path) -> CliResult<Vec<Complex64>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
    let mut declared: Option<usize> = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(n) = rest.trim().strip_prefix("N=") {
                declared = Some(n.trim().parse().map_err(|_| {
                    Failure::new(2, format!("{}:{}: bad row count in header", path.display(), i + 1))
                })?);
            }
            continue;
        }
        let bad = |what: &str| Failure::new(2, format!("{}:{}: {what}", path.display(), i + 1));
        let mut cols = line.split(',');
        let re: f64 = cols
            .next()
            .expect("split yields at least one piece")
            .trim()
            .parse()
            .map_err(|_| bad("bad number"))?;
        let im: f64 = match cols.next() {
            None => 0.0,
            Some(s) => s.trim().parse().map_err(|_| bad("bad number"))?,
        };
        if cols.next().is_some() {
            return Err(bad("expected `re` or `re,im`"));
        }
        rows.push(Complex64::new(re, im));
    }
    if let Some(n) = declared {
        if n != rows.len() {
            return fail(
                2,
                format!("{}: header declares N={n} but the file has {} rows", path.display(), rows.len()),
            );
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// spaces
// ---------------------------------------------------------------------------

/// Parse and validate a space string; any failure is the exit-3 contract,
/// with the full validation report in the message.
fn parse_space_cli(s: &str) -> CliResult<SpaceParams> {
    let sp = params::parse_space(s).map_err(|e| Failure::new(3, e.to_string()))?;
    let rep = params::validate(&sp);
    if rep.is_valid() {
        return Ok(sp);
    }
    let mut msg = format!("invalid space `{}`:", rep.space);
    for v in &rep.violations {
        let trivial = if v.trivial { "; the space is trivial" } else { "" };
        msg.push_str(&format!("\n  violated: {} [{}]{}", v.constraint, v.rule, trivial));
    }
    Err(Failure::new(3, msg))
}

fn f64_field(v: Option<params::ExtRational>) -> f64 {
    v.expect("validated space has its fields").to_f64()
}

// ---------------------------------------------------------------------------
// norm
// ---------------------------------------------------------------------------

struct NormPlan {
    space: String,
    method: Method,
    input: PathBuf,
    grid_size: Option<usize>,
    scales: Option<usize>,
    order: Option<f64>,
    partition: Partition,
    flavor: Flavor,
}

fn resolve_norm(a: NormArgs, cfg: &mut ConfigMap) -> CliResult<NormPlan> {
    let space = merge(a.space, cfg, "space")?;
    let method = merge_enum(a.method, cfg, "method")?;
    let input = merge(a.input, cfg, "input")?;
    let grid_size = merge(a.grid_size, cfg, "grid-size")?;
    let scales = merge(a.scales, cfg, "scales")?;
    let order = merge(a.order, cfg, "order")?;
    let partition = merge_enum(a.partition, cfg, "partition")?;
    let flavor = merge_enum(a.flavor, cfg, "flavor")?;
    cfg.ensure_empty("norm")?;
    Ok(NormPlan {
        space: required(space, "`--space` (or config key `space`)")?,
        method: required(method, "`--method` (or config key `method`)")?,
        input: required(input, "`--input` (or config key `input`)")?,
        grid_size,
        scales,
        order,
        partition: partition.unwrap_or(Partition::Sharp),
        flavor: flavor.unwrap_or(Flavor::Cos),
    })
}

fn cmd_norm(a: NormArgs, cfg: &mut ConfigMap, g: &Globals) -> CliResult<i32> {
    let plan = resolve_norm(a, cfg)?;
    let sp = parse_space_cli(&plan.space)?;
    let report = compute_norm(&plan, &sp)?;
    let payload = match g.format.unwrap_or(Format::Json) {
        Format::Json => json_payload(&report),
        Format::Csv => csv_payload(&report),
    };
    emit_payload(g, &payload)?;
    Ok(0)
}

/// Wrap a scalar-valued route in a report so every method emits the same
/// payload shape. The value sits in the additive term, so the breakdown
/// invariant (value = recompute()) still holds.
fn scalar_report(method: &str, value: f64) -> NormReport {
    let mut rep = NormReport::new(method, 1.0);
    rep.lp_term = Some(value);
    rep.finish()
}

fn no_route(method: Method, sp: &SpaceParams) -> Failure {
    Failure::new(2, format!("method `{}` has no route for the space `{sp}`", method.name()))
}

fn compute_norm(plan: &NormPlan, sp: &SpaceParams) -> CliResult<NormReport> {
    let rows = read_numeric_rows(&plan.input)?;
    if let Some(n) = plan.grid_size {
        if n != rows.len() {
            return fail(2, format!("expected {n} rows (grid size), the file has {}", rows.len()));
        }
    }
    match plan.method {
        Method::Fourier | Method::Modulus | Method::Means | Method::Haar | Method::Rearrange => {
            let f = PeriodicSignal::new(rows, "cli").map_err(lib_err)?;
            signal_norm(plan, sp, &f)
        }
        Method::Lacunary => {
            let spec = LacunarySpec::new(rows).map_err(lib_err)?;
            match sp.kind {
                SpaceKind::Besov => Ok(closed_forms::lacunary_besov_norm(
                    &spec,
                    f64_field(sp.smooth),
                    f64_field(sp.log_exp),
                    f64_field(sp.q),
                )),
                SpaceKind::Lipschitz => closed_forms::lacunary_lipschitz_norm(
                    &spec,
                    f64_field(sp.smooth),
                    f64_field(sp.log_exp),
                    f64_field(sp.q),
                )
                .map_err(lib_err),
                _ => Err(no_route(plan.method, sp)),
            }
        }
        Method::Gm => {
            let mut a = Vec::with_capacity(rows.len());
            for (i, c) in rows.iter().enumerate() {
                if c.im != 0.0 {
                    return fail(2, format!("general-monotone coefficients are real; row {} has an imaginary part", i + 1));
                }
                a.push(c.re);
            }
            let flavor = match plan.flavor {
                Flavor::Cos => GmFlavor::Cosine,
                Flavor::Sin => GmFlavor::Sine,
            };
            let seq = GMSequence::new(a, flavor).map_err(lib_err)?;
            gm_norm(plan, sp, &seq)
        }
    }
}

fn signal_norm(plan: &NormPlan, sp: &SpaceParams, f: &PeriodicSignal) -> CliResult<NormReport> {
    let kind = match plan.partition {
        Partition::Sharp => PartitionKind::Sharp,
        Partition::SmoothBump => PartitionKind::SmoothBump,
    };
    let scales = plan.scales.unwrap_or_else(|| moduli::default_scale_count(f.n()));
    match (plan.method, sp.kind) {
        (Method::Fourier, SpaceKind::Lebesgue) => {
            let v = dyadic::lp_quasi_norm(f, f64_field(sp.p)).map_err(lib_err)?;
            Ok(scalar_report("lebesgue-lp", v))
        }
        (Method::Fourier, SpaceKind::Sobolev) => {
            dyadic::sobolev_norm(f, f64_field(sp.smooth), f64_field(sp.p)).map_err(lib_err)
        }
        (Method::Fourier, SpaceKind::Besov) => {
            let part = dyadic::make_partition(f.n(), kind).map_err(lib_err)?;
            dyadic::besov_norm_fourier(f, &part, sp).map_err(lib_err)
        }
        (Method::Fourier, SpaceKind::Lipschitz) => {
            let part = dyadic::make_partition(f.n(), kind).map_err(lib_err)?;
            dyadic::lipschitz_norm_truncated_square(f, &part, sp).map_err(lib_err)
        }
        (Method::Modulus, SpaceKind::Lipschitz) => {
            moduli::lipschitz_norm_modulus(f, sp, scales).map_err(lib_err)
        }
        (Method::Modulus, SpaceKind::Besov) => {
            let s = f64_field(sp.smooth);
            let order = plan.order.unwrap_or(s.floor() + 1.0);
            moduli::besov_norm_modulus(f, sp, order, scales).map_err(lib_err)
        }
        (Method::Means, SpaceKind::Lipschitz) => dyadic::fourier_means_lip_norm(
            f,
            f64_field(sp.smooth),
            f64_field(sp.log_exp),
            f64_field(sp.p),
            f64_field(sp.q),
        )
        .map_err(lib_err),
        (Method::Haar, SpaceKind::Lipschitz) => {
            let c = haar::haar_analyze(f);
            haar::lip_sequence_norm(
                &c,
                f64_field(sp.smooth),
                f64_field(sp.log_exp),
                f64_field(sp.p),
                f64_field(sp.q),
            )
            .map_err(lib_err)
        }
        (Method::Haar, SpaceKind::Besov) => {
            let c = haar::haar_analyze(f);
            let v = haar::b_sequence_norm(
                &c,
                f64_field(sp.smooth),
                f64_field(sp.log_exp),
                f64_field(sp.p),
                f64_field(sp.q),
            )
            .map_err(lib_err)?;
            Ok(scalar_report("haar-besov-seq", v))
        }
        (Method::Rearrange, SpaceKind::Lebesgue) => {
            let prof = rearrange::rearrangement(f);
            Ok(scalar_report("rearranged-lp", prof.lp_norm(f64_field(sp.p))))
        }
        (Method::Rearrange, SpaceKind::LorentzZygmund) => {
            let prof = rearrange::rearrangement(f);
            let v = rearrange::lorentz_zygmund_norm(
                &prof,
                f64_field(sp.p),
                f64_field(sp.q),
                f64_field(sp.log_exp),
            )
            .map_err(lib_err)?;
            Ok(scalar_report("lorentz-zygmund", v))
        }
        (Method::Rearrange, SpaceKind::GrandLorentz) => {
            let prof = rearrange::rearrangement(f);
            // the space grammar stores the signed log exponent; the norm
            // routine takes the positive weight power
            let v = rearrange::grand_norm(
                &prof,
                f64_field(sp.p),
                f64_field(sp.q),
                -f64_field(sp.log_exp),
                f64_field(sp.secondary_log),
            )
            .map_err(lib_err)?;
            Ok(scalar_report("grand-lorentz", v))
        }
        _ => Err(no_route(plan.method, sp)),
    }
}

fn gm_norm(plan: &NormPlan, sp: &SpaceParams, seq: &GMSequence) -> CliResult<NormReport> {
    match sp.kind {
        SpaceKind::Lebesgue => {
            let v = closed_forms::gm_lp_norm(seq, f64_field(sp.p)).map_err(lib_err)?;
            Ok(scalar_report("gm-lp", v))
        }
        SpaceKind::Besov => closed_forms::gm_besov_norm(
            seq,
            f64_field(sp.smooth),
            f64_field(sp.log_exp),
            f64_field(sp.p),
            f64_field(sp.q),
        )
        .map_err(lib_err),
        SpaceKind::Lipschitz => closed_forms::gm_lipschitz_norm(
            seq,
            f64_field(sp.smooth),
            f64_field(sp.log_exp),
            f64_field(sp.p),
            f64_field(sp.q),
        )
        .map_err(lib_err),
        SpaceKind::LorentzZygmund => {
            let v = closed_forms::gm_lorentz_zygmund_norm(
                seq,
                f64_field(sp.p),
                f64_field(sp.q),
                f64_field(sp.log_exp),
            )
            .map_err(lib_err)?;
            Ok(scalar_report("gm-lorentz-zygmund", v))
        }
        SpaceKind::GrandLorentz => {
            // signed grammar exponent -> positive weight power, as above
            let v = closed_forms::gm_grand_norm(
                seq,
                f64_field(sp.p),
                f64_field(sp.q),
                -f64_field(sp.log_exp),
                f64_field(sp.secondary_log),
            )
            .map_err(lib_err)?;
            Ok(scalar_report("gm-grand", v))
        }
        _ => Err(no_route(plan.method, sp)),
    }
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

fn cmd_embed(a: EmbedArgs, cfg: &mut ConfigMap, g: &Globals) -> CliResult<i32> {
    let src = merge(a.src, cfg, "src")?;
    let dst = merge(a.dst, cfg, "dst")?;
    cfg.ensure_empty("embed")?;
    let src = required(src, "source space (positional SRC or config key `src`)")?;
    let dst = required(dst, "target space (positional DST or config key `dst`)")?;
    let s = parse_space_cli(&src)?;
    let d = parse_space_cli(&dst)?;
    let decision = embed::decide_embedding(&s, &d);
    let payload = match g.format.unwrap_or(Format::Json) {
        Format::Json => json_payload(&decision),
        Format::Csv => csv_payload(&decision),
    };
    emit_payload(g, &payload)?;
    Ok(match decision.verdict {
        embed::Verdict::Embeds => 0,
        embed::Verdict::DoesNotEmbed => 1,
        embed::Verdict::OutsideTheory => 4,
    })
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

fn parse_truncations(s: &str) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        out.push(
            tok.parse()
                .map_err(|_| Failure::new(2, format!("bad truncation `{tok}`")))?,
        );
    }
    Ok(out)
}

/// The norm pair belonging to a witness family, rebuilt from the resolved
/// exponents with the catalogued design offsets: the lacunary source Besov
/// log exponent sits at `-b`, the general-monotone target log exponent at
/// `-b + 4`, and the target rearrangement index is pinned by
/// `alpha - 1/p = -1/r`.
fn routes_for(ws: &WitnessSpec) -> CliResult<(NormRoute, NormRoute)> {
    match ws.family {
        WitnessFamily::LacunaryLogPower => Ok((
            NormRoute::LacunaryBesov { s: ws.alpha, log_exp: -ws.b, q: ws.q },
            NormRoute::LacunaryLipschitz { alpha: ws.alpha, b: ws.b, q: ws.q },
        )),
        WitnessFamily::GMLogPower => {
            let gap = 1.0 / ws.p - ws.alpha;
            if !(gap > 0.0) {
                return fail(
                    2,
                    format!(
                        "the general-monotone demonstration needs alpha < 1/p, got alpha = {}, p = {}",
                        ws.alpha, ws.p
                    ),
                );
            }
            Ok((
                NormRoute::GmLipschitz { alpha: ws.alpha, b: ws.b, p: ws.p, q: ws.q },
                NormRoute::GmLorentzZygmund { r: 1.0 / gap, q: ws.q, log_exp: -ws.b + 4.0 },
            ))
        }
    }
}

fn cmd_witness(a: WitnessArgs, cfg: &mut ConfigMap, g: &Globals) -> CliResult<i32> {
    let family = merge_enum(a.family, cfg, "family")?;
    let alpha = merge(a.alpha, cfg, "alpha")?;
    let beta = merge(a.beta, cfg, "beta")?;
    let b = merge(a.b, cfg, "b")?;
    let p = merge(a.p, cfg, "p")?;
    let q = merge(a.q, cfg, "q")?;
    let truncations = merge(a.truncations, cfg, "truncations")?;
    cfg.ensure_empty("witness")?;
    let family = required(family, "`--family` (or config key `family`)")?;

    let (base, _, _) = match family {
        Family::Lacunary => sharpness::lacunary_demo(),
        Family::Gm => sharpness::gm_demo(),
    };
    let truncations = match truncations {
        Some(s) => parse_truncations(&s)?,
        None => base.truncations.clone(),
    };
    let ws = WitnessSpec::new(
        base.family,
        alpha.unwrap_or(base.alpha),
        beta.unwrap_or(base.beta),
        b.unwrap_or(base.b),
        p.unwrap_or(base.p),
        q.unwrap_or(base.q),
        truncations,
    )
    .map_err(lib_err)?;
    let (src, dst) = routes_for(&ws)?;
    let table = sharpness::demonstrate_divergence(&ws, &src, &dst).map_err(lib_err)?;

    let payload = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => json_payload(&table),
    };
    emit_payload(g, &payload)?;
    println!("verdict: {}", table.verdict);
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(a: VerifyArgs, cfg: &mut ConfigMap, g: &Globals) -> CliResult<i32> {
    let suite = merge(a.suite, cfg, "suite")?;
    cfg.ensure_empty("verify")?;
    let suite = required(suite, "suite name (positional SUITE or config key `suite`)")?;
    let report = suites::run_suite_seeded(&suite, g.seed).map_err(lib_err)?;
    let payload = match g.format {
        None => report.render(),
        Some(Format::Json) => json_payload(&report),
        Some(Format::Csv) => csv_payload(&report),
    };
    emit_payload(g, &payload)?;
    Ok(if report.passed() { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// entry
// ---------------------------------------------------------------------------

fn init_threads() -> CliResult<()> {
    match std::env::var("LOGSMOOTH_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => fail(2, format!("LOGSMOOTH_THREADS: {e}")),
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| Failure::new(2, format!("LOGSMOOTH_THREADS must be a positive integer, got `{v}`")))?;
            if n == 0 {
                return fail(2, "LOGSMOOTH_THREADS must be >= 1");
            }
            exec::configure_threads(n).map_err(|e| Failure::new(2, format!("thread pool: {e}")))
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    let mut cfg = match &cli.config {
        Some(p) => ConfigMap::load(p)?,
        None => ConfigMap::default(),
    };
    let g = Globals {
        out: merge(cli.out, &mut cfg, "out")?,
        format: merge_enum(cli.format, &mut cfg, "format")?,
        seed: merge(cli.seed, &mut cfg, "seed")?.unwrap_or(suites::DEFAULT_SUITE_SEED),
    };
    match cli.command {
        Cmd::Norm(a) => cmd_norm(a, &mut cfg, &g),
        Cmd::Embed(a) => cmd_embed(a, &mut cfg, &g),
        Cmd::Witness(a) => cmd_witness(a, &mut cfg, &g),
        Cmd::Verify(a) => cmd_verify(a, &mut cfg, &g),
    }
}

fn main() {
    process::exit(run());
}

fn run() -> i32 {
    if let Err(f) = init_threads() {
        return f.report();
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => f.report(),
    }
}
