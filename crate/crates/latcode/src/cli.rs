//! Command-line front end.
//!
//! Exit codes: 0 success / condition holds, 1 condition fails,
//! 2 usage or parse error (also used by clap itself).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;
use serde_json::json;

use crate::cyclic::{cyclic_coordinates, generator_order};
use crate::design::{derive_coding_lattice, design_w, named_lattice, WDesign};
use crate::exact::{to_i64, Mat, Rat};
use crate::iso::{check_divisibility, verify_isomorphism};
use crate::lattice::{
    matrix_to_json_exact, matrix_to_json_float, parse_matrix_json, sublattice_w, Lattice,
    NumericPolicy, ParsedMatrix, Point,
};
use crate::nested::{codebook_csv, codebook_json, usage_metrics, NestedCode, SizeSpec};
use crate::plot::{layers, layers_csv, render_svg};
use crate::quantize::shaping_gain_estimate;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(name = "latcode", about = "Cyclic nested lattice codes", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report cyclicity, codebook size and divisibility for a nested pair.
    Check(CheckArgs),
    /// Build a structured W matrix, optionally repaired for isomorphism.
    Design(DesignArgs),
    /// Encode an info vector to a codeword.
    Encode(EncodeArgs),
    /// Recover the info vector of a codeword.
    Index(IndexArgs),
    /// Emit the full codebook.
    Codebook(CodebookArgs),
    /// Exhaustively verify the group isomorphism.
    VerifyIso(VerifyIsoArgs),
    /// Codeword-usage and rate metrics.
    Metrics(MetricsArgs),
    /// Emit figure layers as SVG or CSV.
    Plot(PlotArgs),
    /// Monte Carlo shaping-gain estimate.
    ShapingGain(ShapingGainArgs),
}

#[derive(Args, Clone)]
struct NumericArgs {
    /// Force exact rational arithmetic.
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Force float arithmetic with tolerance.
    #[arg(long)]
    float: bool,
    /// Float comparison tolerance (implies --float).
    #[arg(long)]
    tol: Option<f64>,
}

impl NumericArgs {
    fn resolve(&self, inputs_exact: bool) -> Result<NumericPolicy> {
        if self.exact && self.tol.is_some() {
            return Err(Error::InvalidParameter("--exact conflicts with --tol".into()));
        }
        if self.exact {
            return Ok(NumericPolicy::Exact);
        }
        if self.float || self.tol.is_some() {
            return Ok(NumericPolicy::Float {
                tol: self.tol.unwrap_or(crate::lattice::DEFAULT_TOL),
            });
        }
        Ok(if inputs_exact {
            NumericPolicy::Exact
        } else {
            NumericPolicy::float_default()
        })
    }
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// Coding-lattice generator matrix (JSON).
    #[arg(long)]
    gc: Option<PathBuf>,
    /// Shaping-lattice generator matrix (JSON), or a name (zn:N, a2, e8).
    #[arg(long)]
    gs: String,
    /// Nesting matrix W (JSON); derives G_c = G_s W^{-1} when --gc absent.
    #[arg(long)]
    w: Option<PathBuf>,
    /// Encoding diagonal M_1,...,M_n; defaults to (1,...,1,M).
    #[arg(long)]
    diag: Option<String>,
    #[command(flatten)]
    numeric: NumericArgs,
}

impl CodeArgs {
    fn build(&self) -> Result<NestedCode> {
        let (ls, lc) = self.lattices()?;
        let w = sublattice_w(&lc, &ls)?;
        let diag = match &self.diag {
            Some(text) => parse_i64_list(text)?,
            None => {
                let m = to_i64(&w.det()?.to_integer().abs())?;
                let mut d = vec![1i64; lc.dim()];
                *d.last_mut().ok_or(Error::EmptyCoefficients)? = m;
                d
            }
        };
        NestedCode::new(lc, ls, diag)
    }

    fn lattices(&self) -> Result<(Lattice, Lattice)> {
        let gs_parsed = self.parse_gs()?;
        let gc_parsed = match &self.gc {
            Some(p) => Some(parse_matrix_json(&fs::read_to_string(p)?)?),
            None => None,
        };
        let inputs_exact = gs_exactness(&gs_parsed)
            && gc_parsed.as_ref().map_or(true, ParsedMatrix::is_exact);
        let policy = self.numeric.resolve(inputs_exact)?;
        let ls = match gs_parsed {
            GsSource::Named(name) => named_lattice(&name, policy)?,
            GsSource::Parsed(m) => m.into_lattice(policy)?,
        };
        let lc = match (gc_parsed, &self.w) {
            (Some(m), None) => m.into_lattice(policy)?,
            (None, Some(p)) => {
                let w = require_exact(parse_matrix_json(&fs::read_to_string(p)?)?)?;
                derive_coding_lattice(&ls, &w)?
            }
            (Some(_), Some(_)) => {
                return Err(Error::InvalidParameter(
                    "give either --gc or --w, not both".into(),
                ))
            }
            (None, None) => {
                return Err(Error::InvalidParameter("need --gc or --w".into()))
            }
        };
        Ok((ls, lc))
    }

    fn parse_gs(&self) -> Result<GsSource> {
        if self.gs == "a2" || self.gs == "e8" || self.gs.starts_with("zn:") {
            return Ok(GsSource::Named(self.gs.clone()));
        }
        let text = fs::read_to_string(Path::new(&self.gs))?;
        Ok(GsSource::Parsed(parse_matrix_json(&text)?))
    }
}

enum GsSource {
    Named(String),
    Parsed(ParsedMatrix),
}

fn gs_exactness(src: &GsSource) -> bool {
    match src {
        GsSource::Named(name) => name != "a2",
        GsSource::Parsed(m) => m.is_exact(),
    }
}

fn require_exact(m: ParsedMatrix) -> Result<Mat> {
    match m {
        ParsedMatrix::Exact(m) => Ok(m),
        ParsedMatrix::Float(_) => Err(Error::Parse("W must be an integer matrix".into())),
    }
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DesignArgs {
    /// Design description (JSON).
    #[arg(long)]
    file: PathBuf,
    /// Repair the last row for isomorphism and verify exhaustively.
    #[arg(long)]
    iso: bool,
    /// Shaping-lattice generator or name; used to derive and emit G_c.
    #[arg(long)]
    gs: Option<String>,
    /// Output directory for w.json / r.json / gc.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[command(flatten)]
    numeric: NumericArgs,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Info vector, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct IndexArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Codeword coordinates, comma separated (fractions or decimals).
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct CodebookArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyIsoArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct MetricsArgs {
    /// Dimension.
    #[arg(long)]
    n: u32,
    /// Per-coordinate codebook size K (self-similar comparison point).
    #[arg(long, conflicts_with = "m")]
    k: Option<i64>,
    /// Total codebook size M.
    #[arg(long)]
    m: Option<i64>,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value = "svg")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ShapingGainArgs {
    /// Shaping lattice name: zn:N, a2 or e8.
    #[arg(long, conflicts_with = "gs")]
    lattice: Option<String>,
    /// Shaping-lattice generator matrix (JSON).
    #[arg(long)]
    gs: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "text")]
    format: String,
    #[command(flatten)]
    numeric: NumericArgs,
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Check(args) => cmd_check(args),
        Command::Design(args) => cmd_design(args),
        Command::Encode(args) => cmd_encode(args),
        Command::Index(args) => cmd_index(args),
        Command::Codebook(args) => cmd_codebook(args),
        Command::VerifyIso(args) => cmd_verify_iso(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Plot(args) => cmd_plot(args),
        Command::ShapingGain(args) => cmd_shaping_gain(args),
    }
}

fn cmd_check(args: CheckArgs) -> Result<i32> {
    let code = args.code.build()?;
    let report = cyclic_coordinates(code.w())?;
    let m = code.size();
    let cyclic: Vec<usize> = report
        .verdicts
        .iter()
        .filter(|v| v.cyclic)
        .map(|v| v.coordinate + 1)
        .collect();
    // A cyclic coordinate i admits the diagonal (1,...,M,...,1); the
    // divisibility for it asks row i of W to be divisible by M.
    let divisible: Vec<usize> = cyclic
        .iter()
        .copied()
        .filter(|&i| {
            let mut diag = vec![1i64; code.dim()];
            diag[i - 1] = m;
            check_divisibility(code.w(), &diag).unwrap_or(false)
        })
        .collect();
    let payload = json!({
        "m": m,
        "rate": code.code_rate(),
        "cyclic_coordinates": cyclic,
        "iso_divisible_coordinates": divisible,
        "verdicts": report.verdicts.iter().map(|v| json!({
            "coordinate": v.coordinate + 1,
            "q": v.q.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "gcd": v.gcd.to_string(),
            "cyclic": v.cyclic,
        })).collect::<Vec<_>>(),
    });
    let text = if cyclic.is_empty() {
        format!("no cyclic coordinate; M={m}; rate={:.4}", code.code_rate())
    } else {
        let div = if divisible.is_empty() {
            "none".to_string()
        } else {
            join_usize(&divisible)
        };
        format!(
            "coordinates {} cyclic; M={m}; rate={:.4}; iso-divisibility: {div}",
            join_usize(&cyclic),
            code.code_rate()
        )
    };
    emit(&args.format, &text, &payload, args.out.as_deref())?;
    Ok(if cyclic.is_empty() { EXIT_FAIL } else { EXIT_OK })
}

fn cmd_design(args: DesignArgs) -> Result<i32> {
    let design: WDesign = serde_json::from_str(&fs::read_to_string(&args.file)?)
        .map_err(|e| Error::Parse(format!("design file: {e}")))?;
    let (w, r) = design_w(&design, args.iso)?;
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("w.json"), matrix_to_json_exact(&w))?;
    if let Some(r) = &r {
        let rj = json!({ "r": r.iter().map(|x| x.to_string()).collect::<Vec<_>>() });
        fs::write(args.out.join("r.json"), serde_json::to_string_pretty(&rj).unwrap())?;
    }

    let mut summary = format!(
        "kind={:?} n={} det={}",
        design.kind,
        design.n,
        w.det()?.to_integer()
    );
    if let Some(gs_name) = &args.gs {
        let ls = load_shaping(gs_name, &args.numeric)?;
        let lc = derive_coding_lattice(&ls, &w)?;
        match lc.generator_exact() {
            Some(g) => fs::write(args.out.join("gc.json"), matrix_to_json_exact(g))?,
            None => fs::write(args.out.join("gc.json"), matrix_to_json_float(lc.generator()))?,
        }
        if args.iso {
            let m = to_i64(&w.det()?.to_integer().abs())?;
            let mut diag = vec![1i64; design.n];
            *diag.last_mut().unwrap() = m;
            let code = NestedCode::new(lc, ls, diag)?;
            let report = verify_isomorphism(&code)?;
            if !report.holds {
                eprintln!("isomorphism verification failed: {:?}", report.counterexample);
                return Ok(EXIT_FAIL);
            }
            let order = generator_order(code.w(), design.n - 1)?;
            summary.push_str(&format!(
                " iso=verified pairs={} order={order}",
                report.pairs_checked
            ));
        }
    } else if args.iso {
        // No shaping lattice given: verify over G_s = W itself (Λ_c = Z^n).
        let ls = Lattice::from_exact(w.clone())?;
        let lc = Lattice::zn(design.n);
        let m = to_i64(&w.det()?.to_integer().abs())?;
        let mut diag = vec![1i64; design.n];
        *diag.last_mut().unwrap() = m;
        let code = NestedCode::new(lc, ls, diag)?;
        let report = verify_isomorphism(&code)?;
        if !report.holds {
            eprintln!("isomorphism verification failed: {:?}", report.counterexample);
            return Ok(EXIT_FAIL);
        }
        summary.push_str(&format!(" iso=verified pairs={}", report.pairs_checked));
    }
    println!("{summary}");
    Ok(EXIT_OK)
}

fn load_shaping(name: &str, numeric: &NumericArgs) -> Result<Lattice> {
    if name == "a2" || name == "e8" || name.starts_with("zn:") {
        let policy = numeric.resolve(name != "a2")?;
        return named_lattice(name, policy);
    }
    let parsed = parse_matrix_json(&fs::read_to_string(Path::new(name))?)?;
    let policy = numeric.resolve(parsed.is_exact())?;
    parsed.into_lattice(policy)
}

fn cmd_encode(args: EncodeArgs) -> Result<i32> {
    let code = args.code.build()?;
    let b = parse_i64_list(&args.b)?;
    let cw = code.encode(&b)?;
    let payload = json!({
        "b": b,
        "index": cw.index,
        "y": point_json(&cw.point),
    });
    let text = format!("y = ({})", point_text(&cw.point));
    emit(&args.format, &text, &payload, None)?;
    Ok(EXIT_OK)
}

fn cmd_index(args: IndexArgs) -> Result<i32> {
    let code = args.code.build()?;
    let y = parse_point(&args.y, code.coding().is_exact())?;
    let b = code.index(&y)?;
    let payload = json!({ "b": b });
    let text = format!(
        "b = ({})",
        b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    );
    emit(&args.format, &text, &payload, None)?;
    Ok(EXIT_OK)
}

fn cmd_codebook(args: CodebookArgs) -> Result<i32> {
    let code = args.code.build()?;
    let cb = code.enumerate_codebook()?;
    let body = match args.format.as_str() {
        "csv" => codebook_csv(&code, &cb),
        "json" => codebook_json(&code, &cb),
        other => {
            return Err(Error::InvalidParameter(format!(
                "codebook format {other:?}; expected csv or json"
            )))
        }
    };
    write_or_print(&body, args.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_verify_iso(args: VerifyIsoArgs) -> Result<i32> {
    let code = args.code.build()?;
    let divisible = check_divisibility(code.w(), code.diag())?;
    let report = verify_isomorphism(&code)?;
    let payload = json!({
        "holds": report.holds,
        "pairs_checked": report.pairs_checked,
        "divisibility": divisible,
        "counterexample": report.counterexample,
    });
    let text = if report.holds {
        format!(
            "isomorphism holds ({} pairs; divisibility: {divisible})",
            report.pairs_checked
        )
    } else {
        format!(
            "isomorphism fails at pair {:?}",
            report.counterexample.as_ref().unwrap()
        )
    };
    emit(&args.format, &text, &payload, None)?;
    Ok(if report.holds { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_metrics(args: MetricsArgs) -> Result<i32> {
    let spec = match (args.k, args.m) {
        (Some(k), None) => SizeSpec::PerCoordinate(k),
        (None, Some(m)) => SizeSpec::Total(m),
        _ => return Err(Error::InvalidParameter("give exactly one of --k or --m".into())),
    };
    let u = usage_metrics(args.n, spec)?;
    let m_total = match spec {
        SizeSpec::Total(m) => m,
        SizeSpec::PerCoordinate(k) => k.pow(args.n),
    };
    let rate = (m_total as f64).log2() / args.n as f64;
    let payload = json!({
        "n": args.n,
        "m": m_total,
        "u_c": u.u_c,
        "u_s": u.u_s,
        "difference": u.u_s.map(|s| u.u_c - s),
        "rate": rate,
    });
    let mut text = format!("M={m_total} rate={rate:.4} U_c={:.4}", u.u_c);
    match u.u_s {
        Some(s) => {
            text.push_str(&format!(
                " U_s={s:.4} difference={:.2}%",
                100.0 * (u.u_c - s)
            ));
        }
        None => text.push_str(" U_s=n/a (M is not a perfect n-th power)"),
    }
    emit(&args.format, &text, &payload, None)?;
    Ok(EXIT_OK)
}

fn cmd_plot(args: PlotArgs) -> Result<i32> {
    let code = args.code.build()?;
    let l = layers(&code)?;
    let body = match args.format.as_str() {
        "svg" => render_svg(&l)?,
        "csv" => layers_csv(&l),
        other => {
            return Err(Error::InvalidParameter(format!(
                "plot format {other:?}; expected svg or csv"
            )))
        }
    };
    write_or_print(&body, args.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_shaping_gain(args: ShapingGainArgs) -> Result<i32> {
    let lat = match (&args.lattice, &args.gs) {
        (Some(name), None) => {
            // Monte Carlo is float work; exact backends only slow it down.
            let policy = args.numeric.resolve(false)?;
            named_lattice(name, policy)?
        }
        (None, Some(path)) => {
            let parsed = parse_matrix_json(&fs::read_to_string(Path::new(path))?)?;
            parsed.into_lattice(args.numeric.resolve(false)?)?
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give exactly one of --lattice or --gs".into(),
            ))
        }
    };
    let gain = shaping_gain_estimate(&lat, args.samples, args.seed)?;
    let payload = json!({
        "samples": args.samples,
        "seed": args.seed,
        "gain_db": gain,
    });
    emit(&args.format, &format!("shaping gain = {gain:.4} dB"), &payload, None)?;
    Ok(EXIT_OK)
}

// --- small helpers ----------------------------------------------------------

fn emit(format: &str, text: &str, payload: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let body = match format {
        "text" => format!("{text}\n"),
        "json" => format!("{}\n", serde_json::to_string_pretty(payload).unwrap()),
        other => {
            return Err(Error::InvalidParameter(format!(
                "format {other:?}; expected text or json"
            )))
        }
    };
    write_or_print(&body, out)
}

fn write_or_print(body: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {p:?}")))
        })
        .collect()
}

fn parse_point(text: &str, exact: bool) -> Result<Point> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if exact {
        let coords: Vec<Rat> = parts
            .iter()
            .map(|p| {
                p.parse::<Rat>()
                    .map_err(|_| Error::Parse(format!("bad fraction {p:?}")))
            })
            .collect::<Result<_>>()?;
        Ok(Point::Exact(coords))
    } else {
        let coords: Vec<f64> = parts
            .iter()
            .map(|p| {
                parse_f64_or_fraction(p)
                    .ok_or_else(|| Error::Parse(format!("bad number {p:?}")))
            })
            .collect::<Result<_>>()?;
        Ok(Point::Float(coords))
    }
}

fn parse_f64_or_fraction(p: &str) -> Option<f64> {
    if let Some((num, den)) = p.split_once('/') {
        let n: f64 = num.trim().parse().ok()?;
        let d: f64 = den.trim().parse().ok()?;
        return Some(n / d);
    }
    p.parse().ok()
}

fn point_text(p: &Point) -> String {
    match p {
        Point::Exact(v) => v
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        Point::Float(v) => v
            .iter()
            .map(|x| crate::nested::fmt_sig12(*x))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn point_json(p: &Point) -> serde_json::Value {
    match p {
        Point::Exact(v) => {
            json!(v.iter().map(|r| r.to_string()).collect::<Vec<_>>())
        }
        Point::Float(v) => json!(v),
    }
}

fn join_usize(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
