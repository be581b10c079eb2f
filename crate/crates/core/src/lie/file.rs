//! JSON input format for graded Lie algebras.
//!
//! ```json
//! {
//!   "basis": [{"name": "e", "degree": 0}, {"name": "f", "degree": 0}, {"name": "h", "degree": 0}],
//!   "brackets": [
//!     {"i": 0, "j": 1, "terms": [{"k": 2, "coeff": "1"}]},
//!     {"i": 0, "j": 2, "terms": [{"k": 0, "coeff": "-2"}]},
//!     {"i": 1, "j": 2, "terms": [{"k": 1, "coeff": "2"}]}
//!   ],
//!   "differential": [{"i": 0, "terms": [{"k": 1, "coeff": "1/2"}]}],
//!   "pairing": {"degree": 0, "entries": [{"i": 0, "j": 1, "coeff": "1"}]}
//! }
//! ```
//!
//! Indices are 0-based. Brackets are listed for `i < j` (or `i = j` for odd
//! elements); graded antisymmetry fills in the rest. `differential` lists
//! `d(x_i) = Σ coeff · x_k`. Coefficients are exact rationals written as
//! strings `"p"` or `"p/q"` (plain JSON integers are also accepted). Unknown
//! fields are rejected.

use serde::{Deserialize, Serialize};

use super::{BasisElement, GradedLieData, Pairing};
use crate::linalg::SparseMatrix;
use crate::scalar::{format_rational, parse_rational};
use crate::{Error, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Text(String),
    Int(i64),
}

impl Coeff {
    fn value(&self) -> Result<Rational, Error> {
        match self {
            Coeff::Text(s) => parse_rational(s),
            Coeff::Int(i) => Ok(Rational::from_integer((*i).into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub i: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingEntry {
    pub i: usize,
    pub j: usize,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingSpec {
    pub degree: i64,
    pub entries: Vec<PairingEntry>,
}

/// Serialized form of a [`GradedLieData`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub basis: Vec<BasisElement>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Vec<DifferentialEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingSpec>,
}

fn terms(ts: &[Term]) -> Result<Vec<(usize, Rational)>, Error> {
    ts.iter().map(|t| Ok((t.k, t.coeff.value()?))).collect()
}

fn coeff_text(c: &Rational) -> Coeff {
    Coeff::Text(format_rational(c))
}

impl LieFile {
    /// Convert to validated Lie data.
    pub fn to_lie(&self) -> Result<GradedLieData, Error> {
        let n = self.basis.len();
        let entries = self.brackets.iter().map(|b| Ok((b.i, b.j, terms(&b.terms)?))).collect::<Result<Vec<_>, Error>>()?;
        let mut g = GradedLieData::new(self.basis.clone(), entries)?;
        if let Some(diff) = &self.differential {
            let mut trip = Vec::new();
            for e in diff {
                for (k, c) in terms(&e.terms)? {
                    if e.i >= n || k >= n {
                        return Err(Error::InvalidLie(format!("differential index out of range: {} -> {k}", e.i)));
                    }
                    trip.push((k, e.i, c));
                }
            }
            g = g.with_differential(SparseMatrix::from_triplets(n, n, trip))?;
        }
        if let Some(p) = &self.pairing {
            let mut trip = Vec::new();
            for e in &p.entries {
                if e.i >= n || e.j >= n {
                    return Err(Error::InvalidLie(format!("pairing index out of range: ({}, {})", e.i, e.j)));
                }
                trip.push((e.i, e.j, e.coeff.value()?));
            }
            g = g.with_pairing(Pairing { degree: p.degree, matrix: SparseMatrix::from_triplets(n, n, trip) })?;
        }
        g.validate()?;
        Ok(g)
    }

    /// Serialize Lie data (brackets for `i ≤ j` only).
    pub fn from_lie(g: &GradedLieData) -> Self {
        let n = g.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i..n {
                let br = g.bracket(i, j);
                if !br.is_empty() {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        terms: br.iter().map(|(k, c)| Term { k: *k, coeff: coeff_text(c) }).collect(),
                    });
                }
            }
        }
        let differential = g.differential().map(|d| {
            (0..n)
                .filter(|i| !d.column(*i).is_empty())
                .map(|i| DifferentialEntry {
                    i,
                    terms: d.column(i).iter().map(|(k, c)| Term { k: *k, coeff: coeff_text(c) }).collect(),
                })
                .collect()
        });
        let pairing = g.pairing().map(|p| PairingSpec {
            degree: p.degree,
            entries: p.matrix.entries().map(|(i, j, c)| PairingEntry { i, j, coeff: coeff_text(c) }).collect(),
        });
        Self { basis: g.basis().to_vec(), brackets, differential, pairing }
    }
}

/// Parse and validate a Lie algebra document.
pub fn parse_lie_file(text: &str) -> Result<GradedLieData, Error> {
    let file: LieFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_lie()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_dR, build_so};

    const SL2: &str = r#"{
        "basis": [{"name": "e", "degree": 0}, {"name": "f", "degree": 0}, {"name": "h", "degree": 0}],
        "brackets": [
            {"i": 0, "j": 1, "terms": [{"k": 2, "coeff": "1"}]},
            {"i": 0, "j": 2, "terms": [{"k": 0, "coeff": "-2"}]},
            {"i": 1, "j": 2, "terms": [{"k": 1, "coeff": 2}]}
        ]
    }"#;

    #[test]
    fn parses_sl2() {
        let g = parse_lie_file(SL2).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.check_jacobi().is_ok());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = SL2.replacen("\"basis\"", "\"extra\": 1, \"basis\"", 1);
        assert!(matches!(parse_lie_file(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn jacobi_failures_are_reported() {
        let bad = SL2.replace("\"coeff\": 2", "\"coeff\": 3");
        assert!(matches!(parse_lie_file(&bad), Err(Error::InvalidLie(_))));
    }

    #[test]
    fn round_trip() {
        for g in [build_so(4).unwrap(), build_dR(&build_so(3).unwrap()).unwrap()] {
            let text = serde_json::to_string(&LieFile::from_lie(&g)).unwrap();
            assert_eq!(parse_lie_file(&text).unwrap(), g);
        }
    }
}
