use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use framing_core::anomaly::{anomaly, Target};
use framing_core::catalog::{betti, betti_exterior, h_simple, h_so};
use framing_core::koszul::{
    default_window, e3_closed_form, e3_direct, reduced_cohomology, representatives_linear_in_p, unit_coeffs,
};
use framing_core::lie::{
    adjoint_module, build_dR, build_simple, build_so, ce_cohomology, parse_lie_file, vector_module, CeOptions,
    GradedLieData, ModuleData, SimpleType,
};
use framing_core::weil::{cross_check, default_fiber_window};
use framing_core::{GradedDims, LabeledDims};

/// `print!` that exits quietly when stdout is closed (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

macro_rules! outln {
    () => { out!("\n") };
    ($($arg:tt)*) => { out!("{}\n", format_args!($($arg)*)) };
}

fn emit(args: fmt::Arguments<'_>) {
    if let Err(e) = io::stdout().lock().write_fmt(args) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

#[derive(Parser)]
#[command(name = "framing", version, about = "Exact framing-anomaly obstruction groups for topological AKSZ theories on R^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Obstruction group for a theory on R^n.
    Anomaly {
        /// Spacetime dimension n
        #[arg(long)]
        dim: usize,
        /// cs:<type>, bf:<type>, abelian_cs, trivial, file:<path> or betti:<d=k,...>
        #[arg(long)]
        target: String,
        /// Inner group (unreduced coefficients).
        #[arg(long)]
        inner: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Coefficient degrees to keep, e.g. 0..7 (default 0..n).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Brute-force Chevalley–Eilenberg cohomology.
    Cohomology {
        /// so<n>, sl<n>, sp<2r>, a simple type such as g2 or e6, or file:<path>
        #[arg(long)]
        lie: String,
        /// Drop the degree-0 class
        #[arg(long)]
        reduced: bool,
        /// trivial, adjoint or vector (vector needs so<n>)
        #[arg(long, default_value = "trivial")]
        module: String,
        /// Replace g by the acyclic g_dR.
        #[arg(long)]
        dr: bool,
        /// Word-length cap.
        #[arg(long)]
        cap: Option<u32>,
        /// Degrees to build, e.g. -1..12 (default -1..dim+1).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Lift the size guard on large computations
        #[arg(long)]
        allow_large: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cohomology of the Koszul page (I, d3) for so(n).
    E3 {
        /// Spacetime dimension n
        #[arg(long)]
        dim: usize,
        /// trivial or betti:<d=k,...>
        #[arg(long, default_value = "trivial")]
        coeffs: String,
        /// Print representatives linear in the Pontryagin classes.
        #[arg(long)]
        representatives: bool,
        /// Internal degrees to build (default c_min..c_max+n+4).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Brute-force fiber complex, checked against the Koszul page.
    Oracle {
        /// Spacetime dimension n
        #[arg(long)]
        dim: usize,
        /// trivial or betti:<d=k,...>
        #[arg(long, default_value = "trivial")]
        coeffs: String,
        /// Cohomological degrees to build (default c_min−n..c_max+4).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Lift the size guard on large computations
        #[arg(long)]
        allow_large: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the cross-check suites.
    Selftest,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Consistency(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<framing_core::Error> for Failure {
    fn from(e: framing_core::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn parse_window(text: &str) -> Result<RangeInclusive<i64>> {
    let (a, b) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .or_else(|| text.split_once(','))
        .ok_or_else(|| anyhow!("window must look like lo..hi, got {text:?}"))?;
    let lo = a.trim().parse().with_context(|| format!("bad window start {a:?}"))?;
    let hi = b.trim().parse().with_context(|| format!("bad window end {b:?}"))?;
    if hi < lo {
        bail!("empty window {text:?}");
    }
    Ok(lo..=hi)
}

fn parse_coeffs(text: &str) -> Result<LabeledDims> {
    match text.split_once(':') {
        None if text == "trivial" => Ok(unit_coeffs()),
        Some(("betti", d)) => Ok(LabeledDims::from_dims(&GradedDims::parse_inline(d)?, "c")),
        _ => bail!("coefficients must be trivial or betti:<d=k,...>, got {text:?}"),
    }
}

fn parse_lie(text: &str) -> Result<GradedLieData> {
    if let Some(path) = text.strip_prefix("file:") {
        let body = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
        return Ok(parse_lie_file(&body)?);
    }
    let lower = text.to_ascii_lowercase();
    let number = |p: &str| lower.strip_prefix(p).and_then(|r| r.parse::<usize>().ok());
    if let Some(n) = number("so") {
        return Ok(build_so(n)?);
    }
    if let Some(n) = number("sl") {
        if n < 2 {
            bail!("sl(n) needs n >= 2");
        }
        return Ok(build_simple(SimpleType::A, n - 1)?);
    }
    if let Some(n) = number("sp") {
        if n < 2 || n % 2 == 1 {
            bail!("sp(2r) needs an even size, got sp{n}");
        }
        return Ok(build_simple(SimpleType::C, n / 2)?);
    }
    let (ty, rank) = SimpleType::parse_with_rank(text)?;
    Ok(build_simple(ty, rank)?)
}

fn dims_json(d: &GradedDims) -> serde_json::Value {
    d.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>().into()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Anomaly { dim, target, inner, format, window } => {
            let target: Target = target.parse()?;
            let window = window.as_deref().map(parse_window).transpose()?;
            let report = anomaly(dim, &target, inner, window)?;
            match format {
                Format::Text => out!("{}", report.to_text()),
                Format::Json => outln!("{}", report.to_json()),
            }
        }
        Command::Cohomology { lie, reduced, module, dr, cap, window, allow_large, format } => {
            let mut g = parse_lie(&lie)?;
            let base = g.clone();
            if dr {
                g = build_dR(&g)?;
            }
            let md: Option<ModuleData> = match module.as_str() {
                "trivial" => None,
                "adjoint" => Some(adjoint_module(&g)),
                "vector" => {
                    let n = lie.to_ascii_lowercase().strip_prefix("so").and_then(|r| r.parse().ok());
                    match n {
                        Some(n) if !dr => Some(vector_module(n)?),
                        _ => return Err(Failure::Usage(anyhow!("--module vector needs --lie so<n> without --dr"))),
                    }
                }
                other => return Err(Failure::Usage(anyhow!("unknown module {other:?}"))),
            };
            let window = match window {
                Some(w) => parse_window(&w)?,
                None => CeOptions::full(&g).window,
            };
            let opts = CeOptions::new(window.clone()).reduced(reduced).word_cap(cap).allow_large(allow_large);
            let h = ce_cohomology(&g, md.as_ref(), &opts)?.dims;
            let notes = if dr { vec![format!("g_dR of a dimension-{} algebra", base.dim())] } else { vec![] };
            match format {
                Format::Text => {
                    outln!("{lie}{}: dim {}, window {}..{}", if dr { "_dR" } else { "" }, g.dim(), window.start(), window.end());
                    for (d, k) in h.iter() {
                        outln!("  H^{d} = {k}");
                    }
                    outln!("total {}", h.total());
                    for n in notes {
                        outln!("note: {n}");
                    }
                }
                Format::Json => outln!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "lie": lie, "dim": g.dim(), "reduced": reduced, "module": module,
                        "window": [window.start(), window.end()], "dims": dims_json(&h), "total": h.total(),
                        "notes": notes, "tool_version": framing_core::TOOL_VERSION,
                    }))
                    .unwrap()
                ),
            }
        }
        Command::E3 { dim, coeffs, representatives, window, format } => {
            let c = parse_coeffs(&coeffs)?;
            let window = match window {
                Some(w) => parse_window(&w)?,
                None => default_window(dim, &c.dims()),
            };
            let direct = e3_direct(dim, &c, window.clone())?;
            let interior = window.start() + 1..=window.end() - 1;
            let closed = e3_closed_form(dim, &c.dims())?.dims.restricted(&interior);
            if direct.dims != closed {
                return Err(Failure::Consistency(format!(
                    "E3 direct {} differs from the closed form {}",
                    direct.dims, closed
                )));
            }
            let mut classes = Vec::new();
            for (d, k) in direct.dims.iter() {
                let labels: Vec<String> = if representatives {
                    representatives_linear_in_p(dim, &c, d, window.clone())?.iter().map(ToString::to_string).collect()
                } else {
                    direct.representatives.get(&d).map(|v| v.iter().map(ToString::to_string).collect()).unwrap_or_default()
                };
                let mut labels = labels;
                labels.sort();
                classes.push((d, k, labels));
            }
            match format {
                Format::Text => {
                    outln!("E3 for so({dim}), C = {}, internal degrees {}..{}", c.dims(), interior.start(), interior.end());
                    for (d, k, labels) in &classes {
                        outln!("  degree {d}: {k}  {}", labels.join(", "));
                    }
                    outln!("total {} (matches the closed form)", direct.dims.total());
                }
                Format::Json => outln!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "n": dim, "coeffs": dims_json(&c.dims()),
                        "window": [interior.start(), interior.end()],
                        "classes": classes.iter().map(|(d, k, l)| json!({"degree": d, "dim": k, "labels": l})).collect::<Vec<_>>(),
                        "total": direct.dims.total(), "closed_form_agrees": true,
                        "tool_version": framing_core::TOOL_VERSION,
                    }))
                    .unwrap()
                ),
            }
        }
        Command::Oracle { dim, coeffs, window, allow_large, format } => {
            let c = parse_coeffs(&coeffs)?.dims();
            let window = match window {
                Some(w) => parse_window(&w)?,
                None => default_fiber_window(dim, &c),
            };
            let start = Instant::now();
            let r = cross_check(dim, &c, window, allow_large)?;
            match format {
                Format::Text => {
                    outln!("fiber complex for so({dim}), C = {c}, degrees {}..{}", r.degrees.0, r.degrees.1);
                    outln!("  oracle   {}", r.oracle);
                    outln!("  expected {}", r.expected);
                    outln!("{} in {:.2?}", if r.matches() { "match" } else { "MISMATCH" }, start.elapsed());
                }
                Format::Json => outln!("{}", serde_json::to_string_pretty(&r).unwrap()),
            }
            if !r.matches() {
                return Err(Failure::Consistency(format!("oracle disagrees with E3: {:?}", r.mismatches)));
            }
        }
        Command::Selftest => selftest()?,
    }
    Ok(())
}

fn selftest() -> Result<(), Failure> {
    let mut failures = Vec::new();
    let mut check = |name: String, ok: Result<bool, framing_core::Error>| {
        let line = match ok {
            Ok(true) => "ok",
            Ok(false) => "FAILED",
            Err(ref e) => {
                failures.push(format!("{name}: {e}"));
                outln!("error   {name}: {e}");
                return;
            }
        };
        if line != "ok" {
            failures.push(name.clone());
        }
        outln!("{line:<7} {name}");
    };
    for n in 2..=6 {
        let ok = (|| {
            let g = build_so(n)?;
            let h = ce_cohomology(&g, None, &CeOptions::full(&g))?.dims;
            Ok(h == betti(&h_so(n)?, 0..=g.dim() as i64, false)?)
        })();
        check(format!("catalog = CE for so({n})"), ok);
    }
    for (ty, r) in [(SimpleType::A, 1), (SimpleType::A, 2), (SimpleType::C, 2), (SimpleType::G, 2)] {
        let ok = (|| {
            let g = build_simple(ty, r)?;
            let h = ce_cohomology(&g, None, &CeOptions::full(&g))?.dims;
            Ok(h == betti_exterior(&h_simple(ty, r)?, false)?)
        })();
        check(format!("catalog = CE for {ty}{r}"), ok);
    }
    for n in 2..=6 {
        let ok = (|| {
            let c = unit_coeffs();
            let w = default_window(n, &c.dims());
            let direct = e3_direct(n, &c, w.clone())?.dims;
            let closed = e3_closed_form(n, &c.dims())?.dims.restricted(&(w.start() + 1..=w.end() - 1));
            Ok(direct == closed && reduced_cohomology(n, &c, w)?.is_zero())
        })();
        check(format!("E3 direct = closed form, H(R̄) = 0 for n = {n}"), ok);
    }
    for n in [3, 4] {
        for c in [GradedDims::point(0), GradedDims::point(3), GradedDims::from_pairs([(3, 1), (7, 1)])] {
            let ok = cross_check(n, &c, default_fiber_window(n, &c), false).map(|r| r.matches());
            check(format!("oracle = E3 for n = {n}, C = {c}"), ok);
        }
    }
    if failures.is_empty() {
        outln!("all checks passed");
        Ok(())
    } else {
        Err(Failure::Consistency(format!("{} check(s) failed", failures.len())))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Consistency(msg)) => {
            eprintln!("consistency failure: {msg}");
            ExitCode::from(2)
        }
    }
}
