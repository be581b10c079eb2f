//! The page-two Koszul differential `η_j ↦ p_j`.
//!
//! The page is the free algebra `A = H•(so(n)) ⊗ H•(BSO(n))` tensored with a
//! coefficient space `C` (zero product). Two subspaces matter:
//!
//! * `R̄`, spanned by `c ⊗ η^m p^k` with `(m, k) ≠ 0`;
//! * the ideal `I ⊂ R̄`, spanned by the monomials with at least one `p`.
//!
//! `d₃` is the derivation `η_j ↦ p_j`, `η′ ↦ p′`, `p ↦ 0`, extended
//! `C`-linearly with `d₃(c ⊗ a) = (−1)^{|c|} c ⊗ d₃ a`. `(R̄, d₃)` is acyclic,
//! so `H(I) ≅ R̄/I = C ⊗ Λ_red[η]`, one degree up: a class of `η`-degree `D`
//! appears in internal degree `D + 1`, represented by `c ⊗ d₃(η-monomial)`,
//! which is linear in the `p`'s.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{h_bso, h_so, RingPresentation};
use crate::gca::{Algebra, AlgebraHandle, BasisSpec, Monomial};
use crate::graded::{GradedDims, LabeledDims};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::{Complex, Derivation, Element, Error, Rational};

/// Which subspace of the page to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    /// The ideal `I`: at least one Pontryagin factor.
    Ideal,
    /// `R̄`: any nonunit monomial.
    Reduced,
}

/// The `E₂` page: the algebra, the coefficient space and the derivation.
#[derive(Clone, Debug)]
pub struct E2Page {
    pub n: usize,
    pub coeffs: LabeledDims,
    pub window: RangeInclusive<i64>,
    algebra: AlgebraHandle,
    d3: Derivation,
    etas: Vec<usize>,
    ps: Vec<usize>,
}

/// A sum `Σ c ⊗ a_c` with `c` running over labeled coefficient vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement {
    pub parts: Vec<(String, Element)>,
}

impl TensorElement {
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|(_, e)| e.is_zero())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&(String, Element)> = self.parts.iter().filter(|(_, e)| !e.is_zero()).collect();
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, e)) in parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c == "1" {
                write!(f, "{e}")?;
            } else if e.len() == 1 {
                write!(f, "{c} ⊗ {e}")?;
            } else {
                write!(f, "{c} ⊗ ({e})")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Direct,
    ClosedForm,
}

/// Cohomology of `(I, d₃)` in internal degrees.
#[derive(Clone, Debug)]
pub struct E3Result {
    pub dims: GradedDims,
    pub representatives: BTreeMap<i64, Vec<TensorElement>>,
    pub provenance: Provenance,
}

/// The coefficient space `Q` in degree 0 with its basis vector labeled `1`.
pub fn unit_coeffs() -> LabeledDims {
    let mut c = LabeledDims::new();
    c.push(0, "1");
    c
}

/// Default window `[c_min, c_max + n + 4]`: covers the obstruction degree
/// `n + 1` above every coefficient slot with padding.
pub fn default_window(n: usize, coeffs: &GradedDims) -> RangeInclusive<i64> {
    let lo = coeffs.min_degree().unwrap_or(0).min(0);
    let hi = coeffs.max_degree().unwrap_or(0).max(0) + n as i64 + 4;
    lo..=hi
}

/// Build the page for `so(n)` over the labeled coefficient space `coeffs`.
pub fn build_e2(n: usize, coeffs: LabeledDims, window: RangeInclusive<i64>) -> Result<E2Page, Error> {
    let so = h_so(n)?;
    let bso = h_bso(n)?;
    let gens = so.generators.iter().chain(&bso.generators).map(|g| g.spec.clone()).collect();
    let algebra = Algebra::new(gens)?;
    let idx = |p: &RingPresentation| -> Result<Vec<usize>, Error> {
        p.generators.iter().map(|g| algebra.index_of(&g.spec.name)).collect()
    };
    let etas = idx(&so)?;
    let ps = idx(&bso)?;
    let mut d3 = Derivation::new(&algebra, 1);
    for (e, p) in etas.iter().zip(&ps) {
        d3.set_image(*e, Element::from_monomial(&algebra, Monomial::generator(*p), Rational::one()))?;
    }
    Ok(E2Page { n, coeffs, window, algebra, d3, etas, ps })
}

impl E2Page {
    pub fn algebra(&self) -> &AlgebraHandle {
        &self.algebra
    }

    pub fn d3(&self) -> &Derivation {
        &self.d3
    }

    fn spec(&self, sector: Sector) -> BasisSpec {
        match sector {
            Sector::Ideal => BasisSpec::default().with_bound(self.ps.clone(), 1, None),
            Sector::Reduced => {
                BasisSpec::default().with_bound(self.etas.iter().chain(&self.ps).copied().collect(), 1, None)
            }
        }
    }

    fn slots(&self) -> Vec<(i64, String)> {
        self.coeffs.iter().map(|(d, l)| (d, l.to_string())).collect()
    }

    /// Basis of a sector in internal degree `d` as `(coefficient slot, monomial)`.
    pub fn basis(&self, sector: Sector, d: i64) -> Result<Vec<(usize, Monomial)>, Error> {
        let spec = self.spec(sector);
        let mut out = Vec::new();
        for (s, (cd, _)) in self.slots().iter().enumerate() {
            for m in self.algebra.basis_in_degree(d - cd, &spec)? {
                out.push((s, m));
            }
        }
        Ok(out)
    }

    pub fn label(&self, slot: usize, m: &Monomial) -> String {
        let slots = self.slots();
        let c = &slots[slot].1;
        let mono = self.algebra.format_monomial(m);
        if c == "1" {
            mono
        } else {
            format!("{c} ⊗ {mono}")
        }
    }

    /// `(sector, d₃)` as an exact complex over the page window.
    pub fn complex(&self, sector: Sector) -> Result<Complex, Error> {
        let (lo, hi) = (*self.window.start(), *self.window.end());
        let slots = self.slots();
        let bases: Vec<Vec<(usize, Monomial)>> =
            (lo..=hi).into_par_iter().map(|d| self.basis(sector, d)).collect::<Result<_, _>>()?;
        let labels = bases.iter().map(|b| b.iter().map(|(s, m)| self.label(*s, m)).collect()).collect();
        let diffs = (lo..hi)
            .into_par_iter()
            .map(|k| {
                let src = &bases[(k - lo) as usize];
                let dst = &bases[(k + 1 - lo) as usize];
                let index: HashMap<&(usize, Monomial), usize> = dst.iter().enumerate().map(|(r, b)| (b, r)).collect();
                let cols = src
                    .iter()
                    .map(|(s, m)| {
                        let sign = if slots[*s].0.rem_euclid(2) == 1 { -Rational::one() } else { Rational::one() };
                        self.d3
                            .apply_monomial(m)
                            .terms()
                            .map(|(p, c)| {
                                let r = *index.get(&(*s, p.clone())).expect("d3 preserves the sector");
                                (r, c * &sign)
                            })
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(dst.len(), cols)
            })
            .collect();
        Complex::new(lo, hi, labels, diffs)
    }

    fn to_tensor(&self, basis: &[(usize, Monomial)], v: &[(usize, Rational)]) -> TensorElement {
        let slots = self.slots();
        let mut parts: Vec<(String, Element)> =
            slots.iter().map(|(_, l)| (l.clone(), Element::zero(&self.algebra))).collect();
        for (i, c) in v {
            let (s, m) = &basis[*i];
            parts[*s].1.add_term(m.clone(), c.clone());
        }
        TensorElement { parts: parts.into_iter().filter(|(_, e)| !e.is_zero()).collect() }
    }

    fn to_vector(&self, sector: Sector, d: i64, t: &TensorElement) -> Result<SparseVec<Rational>, Error> {
        let basis = self.basis(sector, d)?;
        let index: HashMap<(usize, Monomial), usize> =
            basis.into_iter().enumerate().map(|(i, b)| (b, i)).collect();
        let slot_of: HashMap<String, usize> =
            self.slots().into_iter().enumerate().map(|(i, (_, l))| (l, i)).collect();
        let mut v = Vec::new();
        for (label, e) in &t.parts {
            let s = slot_of[label];
            for (m, c) in e.terms() {
                let i = index
                    .get(&(s, m.clone()))
                    .ok_or_else(|| Error::Degree(format!("{} is not in degree {d} of the sector", self.label(s, m))))?;
                v.push((*i, c.clone()));
            }
        }
        Ok(crate::linalg::normalize(v))
    }
}

fn interior(window: &RangeInclusive<i64>) -> RangeInclusive<i64> {
    window.start() + 1..=window.end() - 1
}

/// Cohomology of `(I, d₃)` strictly inside the page window, with cocycle
/// representatives.
pub fn e3_direct(n: usize, coeffs: &LabeledDims, window: RangeInclusive<i64>) -> Result<E3Result, Error> {
    let page = build_e2(n, coeffs.clone(), window.clone())?;
    let complex = page.complex(Sector::Ideal)?;
    let h = complex.cohomology_with_representatives(interior(&window))?;
    let mut representatives = BTreeMap::new();
    for (d, vecs) in h.representatives.unwrap_or_default() {
        if vecs.is_empty() {
            continue;
        }
        let basis = page.basis(Sector::Ideal, d)?;
        representatives.insert(d, vecs.iter().map(|v| page.to_tensor(&basis, v)).collect());
    }
    Ok(E3Result { dims: h.dims, representatives, provenance: Provenance::Direct })
}

/// Cohomology of `(R̄, d₃)` strictly inside the window (expected to vanish).
pub fn reduced_cohomology(n: usize, coeffs: &LabeledDims, window: RangeInclusive<i64>) -> Result<GradedDims, Error> {
    let page = build_e2(n, coeffs.clone(), window.clone())?;
    Ok(page.complex(Sector::Reduced)?.cohomology(interior(&window))?.dims)
}

/// Closed form: `C ⊗ Λ_red[η]` moved up one degree.
pub fn e3_closed_form(n: usize, coeffs: &GradedDims) -> Result<E3Result, Error> {
    let so = h_so(n)?;
    let eta = crate::catalog::betti_exterior(&so, true)?;
    Ok(E3Result {
        dims: coeffs.tensor(&eta).shifted(1),
        representatives: BTreeMap::new(),
        provenance: Provenance::ClosedForm,
    })
}

/// Representatives linear in the Pontryagin classes in internal degree
/// `degree`: `(−1)^{|c|} c ⊗ d₃(η_{i₁} ⋯ η_{i_l})` for every coefficient
/// vector `c` and nonunit `η`-monomial of total degree `degree − 1`. Each is
/// checked to be a cocycle, and the whole set to be independent in
/// `H(I, d₃)`; the page window must contain `degree` in its interior.
pub fn representatives_linear_in_p(
    n: usize,
    coeffs: &LabeledDims,
    degree: i64,
    window: RangeInclusive<i64>,
) -> Result<Vec<TensorElement>, Error> {
    let page = build_e2(n, coeffs.clone(), window.clone())?;
    let eta_only = BasisSpec::default().with_bound(page.ps.clone(), 0, Some(0)).with_bound(page.etas.clone(), 1, None);
    let mut reps = Vec::new();
    for (cd, label) in coeffs.iter() {
        for mono in page.algebra.basis_in_degree(degree - 1 - cd, &eta_only)? {
            let mut image = page.d3.apply_monomial(&mono);
            if cd.rem_euclid(2) == 1 {
                image = image.neg();
            }
            reps.push(TensorElement { parts: vec![(label.to_string(), image)] });
        }
    }
    if reps.is_empty() {
        return Ok(reps);
    }
    let complex = page.complex(Sector::Ideal)?;
    let w = interior(&window);
    if !w.contains(&degree) {
        return Err(Error::UntrustedBoundary { degree, lo: *window.start(), hi: *window.end() });
    }
    let vectors = reps.iter().map(|r| page.to_vector(Sector::Ideal, degree, r)).collect::<Result<Vec<_>, _>>()?;
    if !vectors.iter().all(|v| complex.is_cocycle(degree, v)) {
        return Err(Error::Invalid("a p-linear representative is not d3-closed".into()));
    }
    if !complex.independent_in_cohomology(degree, &vectors) {
        return Err(Error::Invalid("p-linear representatives are dependent in cohomology".into()));
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(pairs: &[(i64, usize)]) -> GradedDims {
        GradedDims::from_pairs(pairs.iter().copied())
    }

    fn point(d: i64) -> LabeledDims {
        LabeledDims::from_dims(&GradedDims::point(d), "x")
    }

    #[test]
    fn ideal_basis_for_n3() {
        let page = build_e2(3, unit_coeffs(), 0..=12).unwrap();
        let names = |d| page.basis(Sector::Ideal, d).unwrap().iter().map(|(s, m)| page.label(*s, m)).collect::<Vec<_>>();
        assert_eq!(names(4), ["p"]);
        assert_eq!(names(7), ["η p"]);
        assert_eq!(names(8), ["p^2"]);
        assert_eq!(names(11), ["η p^2"]);
        assert_eq!(names(12), ["p^3"]);
        assert!(names(3).is_empty());
        let page4 = build_e2(4, unit_coeffs(), 0..=8).unwrap();
        assert_eq!(page4.basis(Sector::Ideal, 4).unwrap().len(), 2);
    }

    #[test]
    fn empty_coefficients_give_an_empty_ideal() {
        let page = build_e2(3, LabeledDims::new(), 0..=12).unwrap();
        assert!((0..=12).all(|d| page.basis(Sector::Ideal, d).unwrap().is_empty()));
    }

    #[test]
    fn d3_on_eta_p_is_p_squared() {
        let page = build_e2(3, unit_coeffs(), 0..=12).unwrap();
        let c = page.complex(Sector::Ideal).unwrap();
        assert!(c.verify().unwrap());
        let d7 = c.diff(7).unwrap();
        assert_eq!(d7.to_dense(), vec![vec![Rational::one()]]);
    }

    #[test]
    fn examples_in_three_and_four_dimensions() {
        let e = e3_direct(3, &unit_coeffs(), 0..=7).unwrap();
        assert_eq!(e.dims, dims(&[(4, 1)]));
        assert_eq!(e.representatives[&4][0].to_string(), "p");
        let e = e3_direct(4, &unit_coeffs(), 0..=8).unwrap();
        assert_eq!(e.dims, dims(&[(4, 2), (7, 1)]));
        let reps = representatives_linear_in_p(4, &unit_coeffs(), 7, 0..=8).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].to_string(), "-η p′ + η′ p");
    }

    #[test]
    fn closed_form_matches_direct() {
        for n in 2..=6 {
            for c in [unit_coeffs(), point(3), LabeledDims::from_dims(&dims(&[(1, 1), (2, 2)]), "y")] {
                let w = default_window(n, &c.dims());
                let direct = e3_direct(n, &c, w.clone()).unwrap().dims;
                let closed = e3_closed_form(n, &c.dims()).unwrap().dims.restricted(&interior(&w));
                assert_eq!(direct, closed, "n={n}, C={}", c.dims());
            }
        }
    }

    #[test]
    fn reduced_sector_is_acyclic() {
        for n in 2..=6 {
            let h = reduced_cohomology(n, &unit_coeffs(), 0..=n as i64 + 6).unwrap();
            assert!(h.is_zero(), "n={n}: {h}");
        }
    }

    #[test]
    fn representatives_for_single_generators() {
        let reps = representatives_linear_in_p(6, &unit_coeffs(), 4, 0..=10).unwrap();
        assert_eq!(reps.iter().map(ToString::to_string).collect::<Vec<_>>(), ["p₁"]);
        let reps = representatives_linear_in_p(6, &unit_coeffs(), 8, 0..=10).unwrap();
        assert_eq!(reps.iter().map(ToString::to_string).collect::<Vec<_>>(), ["p₂"]);
        let reps = representatives_linear_in_p(6, &unit_coeffs(), 6, 0..=10).unwrap();
        assert_eq!(reps.iter().map(ToString::to_string).collect::<Vec<_>>(), ["p′₃"]);
        assert!(representatives_linear_in_p(6, &unit_coeffs(), 5, 0..=10).unwrap().is_empty());
    }
}
