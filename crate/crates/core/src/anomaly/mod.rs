//! Obstruction groups `⊕_{i+j=n} H^i_red(so(n)) ⊗ H^j(C)` for the preset
//! theories and user-supplied coefficient tables.
//!
//! The outer group uses `C = H_red(L)`, the inner group `C = H(L)` (unit
//! slot included). Only the group is computed, never the class itself, so the
//! verdict is either "vanishes" or "potential anomaly".

use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{h_simple, h_so, RingPresentation};
use crate::gca::BasisSpec;
use crate::lie::{ce_cohomology, parse_lie_file, CeOptions, SimpleType};
use crate::{Error, GradedDims, LabeledDims, TOOL_VERSION};

/// What to compute the obstruction group for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// Chern–Simons theory with a simple gauge algebra (`cs:A1`).
    ChernSimons(SimpleType, usize),
    /// BF theory with a simple gauge algebra (`bf:C,2`).
    Bf(SimpleType, usize),
    /// Abelian higher Chern–Simons theory (`abelian_cs`), odd `n` only.
    AbelianCs,
    /// Trivial `L`: `H(L) = Q` in degree 0 (`trivial`).
    Trivial,
    /// Structure constants in the JSON format of [`crate::lie::LieFile`] (`file:<path>`).
    File(PathBuf),
    /// `H_red(L)` given directly (`betti:3=1,7=1`).
    Betti(GradedDims),
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let need_arg = |what: &str| -> Result<(), Error> {
            if arg.trim().is_empty() {
                Err(Error::Parse(format!("target {kind:?} needs {what}, e.g. {kind}:A1")))
            } else {
                Ok(())
            }
        };
        match kind.to_ascii_lowercase().as_str() {
            "cs" => {
                need_arg("a simple type")?;
                let (t, r) = SimpleType::parse_with_rank(arg)?;
                Ok(Target::ChernSimons(t, r))
            }
            "bf" => {
                need_arg("a simple type")?;
                let (t, r) = SimpleType::parse_with_rank(arg)?;
                Ok(Target::Bf(t, r))
            }
            "abelian_cs" | "abelian-cs" if arg.is_empty() => Ok(Target::AbelianCs),
            "trivial" if arg.is_empty() => Ok(Target::Trivial),
            "file" => {
                need_arg("a path")?;
                Ok(Target::File(PathBuf::from(arg)))
            }
            "betti" => Ok(Target::Betti(GradedDims::parse_inline(arg)?)),
            _ => Err(Error::Parse(format!(
                "unknown target {s:?}; expected cs:<type>, bf:<type>, abelian_cs, trivial, file:<path> or betti:<dims>"
            ))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::ChernSimons(t, r) => write!(f, "cs:{t}{r}"),
            Target::Bf(t, r) => write!(f, "bf:{t}{r}"),
            Target::AbelianCs => write!(f, "abelian_cs"),
            Target::Trivial => write!(f, "trivial"),
            Target::File(p) => write!(f, "file:{}", p.display()),
            Target::Betti(d) => write!(f, "betti:{}", d.to_inline()),
        }
    }
}

/// `H_red(L)` and `H(L)` with labeled bases, plus notes for the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub reduced: LabeledDims,
    pub unreduced: LabeledDims,
    pub notes: Vec<String>,
}

/// Default coefficient window for dimension `n`: every degree an
/// obstruction cell can use.
pub fn default_coefficient_window(n: usize) -> RangeInclusive<i64> {
    0..=n as i64
}

/// Basis labels of `pres` (free graded-commutative) in `window`.
fn presentation_labels(pres: &RingPresentation, window: RangeInclusive<i64>) -> Result<LabeledDims, Error> {
    let alg = pres.algebra()?;
    let mut out = LabeledDims::new();
    for d in window {
        for m in alg.basis_in_degree(d, &BasisSpec::default())? {
            out.push(d, if m.is_one() { "1".to_string() } else { alg.format_monomial(&m) });
        }
    }
    Ok(out)
}

fn with_unit(reduced: &LabeledDims) -> LabeledDims {
    let mut out = LabeledDims::new();
    out.push(0, "1");
    for (d, l) in reduced.iter() {
        out.push(d, l);
    }
    out
}

/// The warning attached to abelian Chern–Simons at `n ≡ 1 mod 4`.
pub const ABELIAN_CS_WARNING: &str = "warning: for n ≡ 1 mod 4 the pairing-forced target shift puts the abelian \
Chern–Simons CE generator in even degree (n−1)/2, which makes the outer group nonzero; this is in tension with the \
expected absence of an outer obstruction for every odd n ≥ 3. The group is reported as computed; whether the \
class itself vanishes is not decided here";

/// Expand a target into labeled coefficient tables over `window`.
pub fn expand_preset(target: &Target, n: usize, window: RangeInclusive<i64>) -> Result<Coefficients, Error> {
    let mut notes = Vec::new();
    let reduced = match target {
        Target::ChernSimons(t, r) | Target::Bf(t, r) => {
            let pres = h_simple(*t, *r)?;
            let kind = if matches!(target, Target::Bf(..)) { "BF" } else { "Chern–Simons" };
            notes.push(format!("{kind} theory with gauge algebra {t}{r}: H(L) from the exponent table {}", pres.describe()));
            if matches!(target, Target::ChernSimons(..)) && n != 3 {
                notes.push(format!(
                    "warning: a degree-0 gauge algebra carries a pairing of degree n−3 only for n = 3, got n = {n}"
                ));
            }
            presentation_labels(&pres, window.clone())?.reduced()
        }
        Target::AbelianCs => {
            if n % 2 == 0 || n < 3 {
                return Err(Error::Invalid(format!("abelian Chern–Simons needs odd n ≥ 3, got n = {n}")));
            }
            let deg = (n as i64 - 1) / 2;
            notes.push(format!(
                "abelian Chern–Simons: L = u(1) in degree {}, forced by the pairing degree n−3; one CE generator a of degree {deg}",
                -(n as i64 - 3) / 2
            ));
            let mut out = LabeledDims::new();
            if deg % 2 == 1 {
                if window.contains(&deg) {
                    out.push(deg, "a");
                }
            } else {
                let mut k = 1;
                while window.contains(&(k * deg)) {
                    out.push(k * deg, if k == 1 { "a".to_string() } else { format!("a^{k}") });
                    k += 1;
                }
                notes.push(format!("polynomial generator: H(L) truncated to degrees {}..={}", window.start(), window.end()));
            }
            if n % 4 == 1 {
                notes.push(ABELIAN_CS_WARNING.to_string());
            }
            out
        }
        Target::Trivial => {
            notes.push("trivial L: H(L) = Q in degree 0".into());
            LabeledDims::new()
        }
        Target::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
            let l = parse_lie_file(&text)?;
            let opts = CeOptions::new(window.start() - 1..=window.end() + 1).reduced(true);
            let dims = ce_cohomology(&l, None, &opts)?.dims;
            notes.push(format!("H_red(L) computed by brute-force CE cohomology of {} (dim {})", path.display(), l.dim()));
            LabeledDims::from_dims(&dims, "c").restricted(&window)
        }
        Target::Betti(d) => {
            if d.get(0) != 0 {
                return Err(Error::Invalid(
                    "betti: gives the reduced table H_red(L) and must not have a degree-0 slot".into(),
                ));
            }
            LabeledDims::from_dims(&d.restricted(&window), "c")
        }
    };
    Ok(Coefficients { unreduced: with_unit(&reduced), reduced, notes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Outer,
    Inner,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Outer => "outer",
            Mode::Inner => "inner",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "vanishes")]
    Vanishes,
    #[serde(rename = "potential anomaly")]
    PotentialAnomaly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Vanishes => "vanishes",
            Verdict::PotentialAnomaly => "potential anomaly",
        })
    }
}

/// One summand `H^i_red(so(n)) ⊗ H^j(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub i: i64,
    pub j: i64,
    pub dim: usize,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnomalyReport {
    pub n: usize,
    pub mode: Mode,
    pub cells: Vec<Cell>,
    pub total: usize,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    pub tool_version: String,
}

impl AnomalyReport {
    fn assemble(n: usize, mode: Mode, coeffs: &LabeledDims, notes: Vec<String>) -> Result<Self, Error> {
        let so = h_so(n)?;
        let alg = so.algebra()?;
        let n_i = n as i64;
        let j_min = coeffs.dims().min_degree().unwrap_or(0).min(0);
        let mut cells = Vec::new();
        for i in 1..=n_i - j_min {
            let classes = alg.basis_in_degree(i, &BasisSpec::default())?;
            if classes.is_empty() {
                continue;
            }
            let j = n_i - i;
            let labels: Vec<String> = classes
                .iter()
                .flat_map(|m| {
                    let a = alg.format_monomial(m);
                    coeffs.labels(j).iter().map(move |c| format!("{a} ⊗ {c}"))
                })
                .collect();
            cells.push(Cell { i, j, dim: labels.len(), labels });
        }
        let total = cells.iter().map(|c| c.dim).sum();
        let verdict = if total == 0 { Verdict::Vanishes } else { Verdict::PotentialAnomaly };
        let mut notes = notes;
        notes.insert(0, format!("H_red(so({n})) = reduced {} (closed form)", so.describe()));
        Ok(Self { n, mode, cells, total, verdict, notes, tool_version: TOOL_VERSION.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let r: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if r.total != r.cells.iter().map(|c| c.dim).sum::<usize>() {
            return Err(Error::Invalid("report total does not match its cells".into()));
        }
        if (r.total == 0) != (r.verdict == Verdict::Vanishes) {
            return Err(Error::Invalid("report verdict does not match its total".into()));
        }
        Ok(r)
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}, {} group\n", self.n, self.mode);
        let rows: Vec<[String; 4]> = self
            .cells
            .iter()
            .map(|c| [c.i.to_string(), c.j.to_string(), c.dim.to_string(), c.labels.join(", ")])
            .collect();
        let head = ["i", "j", "dim", "classes"];
        let width = |k: usize| rows.iter().map(|r| r[k].chars().count()).chain([head[k].len()]).max().unwrap();
        let (w0, w1, w2) = (width(0), width(1), width(2));
        out += &format!("  {:>w0$}  {:>w1$}  {:>w2$}  {}\n", head[0], head[1], head[2], head[3]);
        for r in &rows {
            out += format!("  {:>w0$}  {:>w1$}  {:>w2$}  {}\n", r[0], r[1], r[2], r[3]).trim_end();
            out.push('\n');
        }
        out += &format!("total {}: {}\n", self.total, self.verdict);
        for note in &self.notes {
            out += &format!("note: {note}\n");
        }
        out
    }
}

impl fmt::Display for AnomalyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Outer group `⊕_{i+j=n} H^i_red(so(n)) ⊗ H^j_red(L)`.
pub fn outer_group(n: usize, hred: &LabeledDims) -> Result<AnomalyReport, Error> {
    if hred.has_degree_zero() {
        return Err(Error::Invalid(
            "the outer group takes reduced coefficients; a degree-0 slot is present (use the inner group for H(L))"
                .into(),
        ));
    }
    AnomalyReport::assemble(n, Mode::Outer, hred, Vec::new())
}

/// Inner group `⊕_{i+j=n} H^i_red(so(n)) ⊗ H^j(L)`.
pub fn inner_group(n: usize, hl: &LabeledDims) -> Result<AnomalyReport, Error> {
    let mut notes = Vec::new();
    if !hl.has_degree_zero() {
        notes.push("warning: inner coefficients have no degree-0 unit slot".to_string());
    }
    AnomalyReport::assemble(n, Mode::Inner, hl, notes)
}

/// Outer group for BF theory with a simple gauge algebra.
pub fn bf_group(n: usize, ty: SimpleType, rank: usize) -> Result<AnomalyReport, Error> {
    anomaly(n, &Target::Bf(ty, rank), false, None)
}

/// Outer or inner group for a target, with coefficients truncated to
/// `window` (default `0..=n`).
pub fn anomaly(n: usize, target: &Target, inner: bool, window: Option<RangeInclusive<i64>>) -> Result<AnomalyReport, Error> {
    let window = window.unwrap_or_else(|| default_coefficient_window(n));
    let c = expand_preset(target, n, window)?;
    let mut report = if inner { inner_group(n, &c.unreduced)? } else { outer_group(n, &c.reduced)? };
    report.notes.extend(c.notes);
    report.notes.push(format!("target {target}"));
    Ok(report)
}
