//! Graded dimension tables and labeled graded bases.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Dimension per integer degree. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// One-dimensional space in a single degree.
    pub fn point(degree: i64) -> Self {
        Self::from_pairs([(degree, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, usize)>>(pairs: I) -> Self {
        let mut dims = Self::new();
        for (d, k) in pairs {
            dims.add(d, k);
        }
        dims
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i64, dim: usize) {
        if dim == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, dim);
        }
    }

    pub fn add(&mut self, degree: i64, dim: usize) {
        let cur = self.get(degree);
        self.set(degree, cur + dim);
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(d, k)| (*d, *k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    /// Alternating sum `Σ (-1)^k dim_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(d, k)| if d.rem_euclid(2) == 0 { k as i64 } else { -(k as i64) }).sum()
    }

    /// Move every entry from degree `d` to `d + by`.
    pub fn shifted(&self, by: i64) -> Self {
        Self(self.0.iter().map(|(d, k)| (d + by, *k)).collect())
    }

    pub fn restricted(&self, window: &RangeInclusive<i64>) -> Self {
        Self(self.0.range(window.clone()).map(|(d, k)| (*d, *k)).collect())
    }

    /// Drop the degree-0 slot.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        out.set(0, 0);
        out
    }

    /// Dimensions of the graded tensor product.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add(a + b, x * y);
            }
        }
        out
    }

    /// Parse the inline syntax `3=1,7=1` (empty string means the zero space).
    pub fn parse_inline(text: &str) -> Result<Self, Error> {
        let mut dims = Self::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (d, k) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected degree=dim, got {part:?}")))?;
            let d: i64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad degree in {part:?}")))?;
            let k: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad dimension in {part:?}")))?;
            dims.add(d, k);
        }
        Ok(dims)
    }

    /// Inverse of [`GradedDims::parse_inline`].
    pub fn to_inline(&self) -> String {
        self.iter().map(|(d, k)| format!("{d}={k}")).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, k)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {k}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<(i64, usize)> for GradedDims {
    fn from_iter<I: IntoIterator<Item = (i64, usize)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

/// A graded vector space given by labeled basis vectors, e.g. a table of
/// cohomology classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDims {
    slots: BTreeMap<i64, Vec<String>>,
}

impl LabeledDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Label the basis of `dims` as `{prefix}{degree}_{k}` (or `{prefix}{degree}`
    /// for one-dimensional slots).
    pub fn from_dims(dims: &GradedDims, prefix: &str) -> Self {
        let mut out = Self::new();
        for (d, k) in dims.iter() {
            let tag = if d < 0 { format!("m{}", -d) } else { d.to_string() };
            for i in 0..k {
                let label = if k == 1 { format!("{prefix}{tag}") } else { format!("{prefix}{tag}_{}", i + 1) };
                out.push(d, label);
            }
        }
        out
    }

    pub fn push(&mut self, degree: i64, label: impl Into<String>) {
        self.slots.entry(degree).or_default().push(label.into());
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.slots.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dims(&self) -> GradedDims {
        self.slots.iter().map(|(d, v)| (*d, v.len())).collect()
    }

    /// All `(degree, label)` pairs in degree order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &str)> + '_ {
        self.slots.iter().flat_map(|(d, v)| v.iter().map(move |l| (*d, l.as_str())))
    }

    pub fn is_empty(&self) -> bool {
        self.slots.values().all(Vec::is_empty)
    }

    pub fn has_degree_zero(&self) -> bool {
        !self.labels(0).is_empty()
    }

    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        out.slots.remove(&0);
        out
    }

    pub fn restricted(&self, window: &RangeInclusive<i64>) -> Self {
        Self { slots: self.slots.range(window.clone()).map(|(d, v)| (*d, v.clone())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_syntax() {
        let d = GradedDims::parse_inline("3=1, 7=2").unwrap();
        assert_eq!(d.get(3), 1);
        assert_eq!(d.get(7), 2);
        assert_eq!(d.total(), 3);
        assert!(GradedDims::parse_inline("").unwrap().is_zero());
        assert!(GradedDims::parse_inline("3").is_err());
        assert!(GradedDims::parse_inline("a=1").is_err());
        assert_eq!(GradedDims::parse_inline("3=0").unwrap(), GradedDims::new());
    }

    #[test]
    fn tensor_and_shift() {
        let a = GradedDims::from_pairs([(0, 1), (3, 1)]);
        let b = GradedDims::from_pairs([(0, 1), (3, 1)]);
        assert_eq!(a.tensor(&b), GradedDims::from_pairs([(0, 1), (3, 2), (6, 1)]));
        assert_eq!(a.shifted(-3), GradedDims::from_pairs([(-3, 1), (0, 1)]));
        assert_eq!(a.euler_characteristic(), 0);
        assert_eq!(a.reduced(), GradedDims::point(3));
    }

    #[test]
    fn labels_follow_dims() {
        let l = LabeledDims::from_dims(&GradedDims::from_pairs([(3, 1), (7, 2)]), "x");
        assert_eq!(l.labels(3), ["x3"]);
        assert_eq!(l.labels(7), ["x7_1", "x7_2"]);
        assert_eq!(l.dims().total(), 3);
    }
}
