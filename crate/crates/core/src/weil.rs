//! Brute-force fiber complex.
//!
//! The fiber complex is `C•(so(n), Sym^{>0}(so(n)*[−2])) ⊗ C`, shifted by
//! `[n]`, with differential `d_CE + d′` where `d′` is the derivation induced
//! by the identity `so(n)*[−1] → so(n)*[−2]`. Both pieces together are the
//! CE differential of `so(n)_dR = so(n)[1] ⊕ so(n)`: its CE algebra is
//! `Λ(so(n)*) ⊗ Sym(so(n)*[−2])` with the duals of the shifted copy in
//! degree 2, and the `Sym^{>0}` part is the subcomplex of monomials with at
//! least one degree-2 factor. The de Rham factor `Ω•(ℝⁿ)` is replaced by its
//! cohomology, the constants, so `d_dR` contributes nothing.
//!
//! No invariant theory is used: the whole non-invariant complex is built and
//! its cohomology computed by exact elimination.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::koszul::{default_window, e3_direct};
use crate::lie::{build_dR, build_so, ce_cohomology, ce_complex, BasisElement, CeAlgebra, CeOptions, GradedLieData, ModuleData};
use crate::linalg::SparseMatrix;
use crate::{Cohomology, Complex, Error, GradedDims, LabeledDims};

/// Largest `n` built without an explicit override.
pub const ORACLE_MAX_N: usize = 4;

/// The fiber complex in cohomological degrees (internal degree minus `n`).
#[derive(Clone, Debug)]
pub struct FiberComplex {
    pub n: usize,
    pub coeffs: GradedDims,
    pub window: RangeInclusive<i64>,
    pub complex: Complex,
}

/// Default cohomological window: internal degrees `[c_min, c_max + n + 4]`
/// shifted by `−n`.
pub fn default_fiber_window(n: usize, coeffs: &GradedDims) -> RangeInclusive<i64> {
    let w = default_window(n, coeffs);
    w.start() - n as i64..=w.end() - n as i64
}

fn guard(n: usize, allow_large: bool) -> Result<(), Error> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("need n >= 2, got {n}")));
    }
    if n > ORACLE_MAX_N && !allow_large {
        return Err(Error::TooLarge(format!(
            "the fiber complex for n = {n} is large (n = 5 has ~3·10^5 basis vectors); pass allow_large to build it"
        )));
    }
    Ok(())
}

fn check_window(window: &RangeInclusive<i64>) -> Result<(), Error> {
    let (lo, hi) = (*window.start(), *window.end());
    if hi - lo < 2 {
        return Err(Error::NarrowWindow { lo, hi, detail: "need one padding degree on each side".into() });
    }
    Ok(())
}

/// `C` as a module with zero action and zero differential.
fn coefficient_module(g: &GradedLieData, coeffs: &LabeledDims) -> ModuleData {
    let basis: Vec<BasisElement> = coeffs.iter().map(|(d, l)| BasisElement::new(l, d)).collect();
    let m = basis.len();
    ModuleData { basis, action: vec![SparseMatrix::zeros(m, m); g.dim()], differential: None }
}

/// `Sym^{>0}` part of the CE complex of `so(n)_dR` tensored with `coeffs`,
/// over internal degrees `internal`.
fn weil_ideal(n: usize, coeffs: &LabeledDims, internal: RangeInclusive<i64>) -> Result<Complex, Error> {
    let so = build_so(n)?;
    let dr = build_dR(&so)?;
    let ce = CeAlgebra::new(&dr)?;
    // build_dR lists the shifted copy first
    let sym: Vec<usize> = (0..so.dim()).map(|i| ce.generator_of(i)).collect();
    let spec = crate::gca::BasisSpec::default().with_bound(sym, 1, None);
    let module = coefficient_module(&dr, coeffs);
    ce.complex(Some(&module), &spec, internal)
}

/// Build the fiber complex over the cohomological `window`.
pub fn build_fiber(
    n: usize,
    coeffs: &GradedDims,
    window: RangeInclusive<i64>,
    allow_large: bool,
) -> Result<FiberComplex, Error> {
    guard(n, allow_large)?;
    check_window(&window)?;
    let shift = n as i64;
    let labeled = LabeledDims::from_dims(coeffs, "c");
    let complex = weil_ideal(n, &labeled, window.start() + shift..=window.end() + shift)?.regraded(-shift);
    Ok(FiberComplex { n, coeffs: coeffs.clone(), window, complex })
}

/// Betti numbers strictly inside the window, in cohomological degrees.
pub fn oracle_cohomology(f: &FiberComplex) -> Result<Cohomology, Error> {
    f.complex.cohomology(f.window.start() + 1..=f.window.end() - 1)
}

/// Comparison of the oracle against the Koszul page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub n: usize,
    pub coeffs: GradedDims,
    /// Cohomological degrees compared.
    pub degrees: (i64, i64),
    pub oracle: GradedDims,
    /// `E₃` dimensions moved to cohomological degrees.
    pub expected: GradedDims,
    /// `(degree, oracle, expected)` wherever they differ.
    pub mismatches: Vec<(i64, usize, usize)>,
}

impl CrossCheck {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn compare(n: usize, coeffs: GradedDims, window: &RangeInclusive<i64>, oracle: GradedDims, expected: GradedDims) -> Self {
        let (a, b) = (window.start() + 1, window.end() - 1);
        let mismatches = (a..=b)
            .filter(|d| oracle.get(*d) != expected.get(*d))
            .map(|d| (d, oracle.get(d), expected.get(d)))
            .collect();
        Self { n, coeffs, degrees: (a, b), oracle, expected, mismatches }
    }
}

/// Oracle cohomology against `E₃` from the Koszul page shifted by `n`, over
/// the cohomological `window`.
pub fn cross_check(
    n: usize,
    coeffs: &GradedDims,
    window: RangeInclusive<i64>,
    allow_large: bool,
) -> Result<CrossCheck, Error> {
    let f = build_fiber(n, coeffs, window.clone(), allow_large)?;
    let oracle = oracle_cohomology(&f)?.dims;
    let shift = n as i64;
    let labeled = LabeledDims::from_dims(coeffs, "c");
    let e3 = e3_direct(n, &labeled, window.start() + shift..=window.end() + shift)?;
    Ok(CrossCheck::compare(n, coeffs.clone(), &window, oracle, e3.dims.shifted(-shift)))
}

/// The fiber complex with a genuine coefficient complex: the `Sym^{>0}` part
/// of `CE(so(n)_dR)` tensored with the reduced CE complex of `l` (nonzero
/// differential), shifted by `[n]`. `l` must have positively graded CE
/// generators (all basis degrees ≤ 0).
pub fn build_fiber_with_lie(
    n: usize,
    l: &GradedLieData,
    window: RangeInclusive<i64>,
    allow_large: bool,
) -> Result<FiberComplex, Error> {
    guard(n, allow_large)?;
    check_window(&window)?;
    let shift = n as i64;
    let (lo, hi) = (window.start() + shift, window.end() + shift);
    // both factors live in internal degrees ≥ 0 (the reduced CE part in ≥ 1)
    let top = hi.max(2);
    let weil = weil_ideal(n, &crate::koszul::unit_coeffs(), -1..=top)?;
    let ce = ce_complex(l, None, &CeOptions::new(-1..=top).reduced(true))?;
    let complex = weil.tensor(&ce, lo, hi).regraded(-shift);
    let coeffs = ce_cohomology(l, None, &CeOptions::new(-1..=top).reduced(true))?.dims;
    Ok(FiberComplex { n, coeffs, window, complex })
}

/// [`cross_check`] for a genuine coefficient complex: the oracle against `E₃`
/// with `C = H_red(l)`.
pub fn cross_check_lie(
    n: usize,
    l: &GradedLieData,
    window: RangeInclusive<i64>,
    allow_large: bool,
) -> Result<CrossCheck, Error> {
    let f = build_fiber_with_lie(n, l, window.clone(), allow_large)?;
    let oracle = oracle_cohomology(&f)?.dims;
    let shift = n as i64;
    let labeled = LabeledDims::from_dims(&f.coeffs, "c");
    let e3 = e3_direct(n, &labeled, window.start() + shift..=window.end() + shift)?;
    Ok(CrossCheck::compare(n, f.coeffs.clone(), &window, oracle, e3.dims.shifted(-shift)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(pairs: &[(i64, usize)]) -> GradedDims {
        GradedDims::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn fiber_for_n3_squares_to_zero() {
        let f = build_fiber(3, &GradedDims::point(0), -1..=3, false).unwrap();
        assert!(f.complex.verify().unwrap());
        // internal degree 2: the three Sym generators
        assert_eq!(f.complex.dim(-1), 3);
    }

    #[test]
    fn oracle_for_n3() {
        let f = build_fiber(3, &GradedDims::point(0), -1..=3, false).unwrap();
        assert_eq!(oracle_cohomology(&f).unwrap().dims, dims(&[(1, 1)]));
        let f = build_fiber(3, &GradedDims::new(), -1..=3, false).unwrap();
        assert!(oracle_cohomology(&f).unwrap().dims.is_zero());
    }

    #[test]
    fn guards() {
        assert!(matches!(build_fiber(6, &GradedDims::point(0), -1..=3, false), Err(Error::TooLarge(_))));
        assert!(matches!(build_fiber(3, &GradedDims::point(0), 0..=1, false), Err(Error::NarrowWindow { .. })));
    }

    #[test]
    fn cross_checks_in_three_dimensions() {
        for c in [GradedDims::point(0), GradedDims::point(3)] {
            let r = cross_check(3, &c, default_fiber_window(3, &c), false).unwrap();
            assert!(r.matches(), "{r:?}");
        }
    }

    #[test]
    fn genuine_coefficients_for_so3() {
        let l = build_so(3).unwrap();
        let r = cross_check_lie(3, &l, -1..=5, false).unwrap();
        assert_eq!(r.coeffs, dims(&[(3, 1)]));
        assert_eq!(r.oracle, dims(&[(4, 1)]));
        assert!(r.matches(), "{r:?}");
    }
}
