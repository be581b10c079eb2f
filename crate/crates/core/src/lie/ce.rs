//! Chevalley–Eilenberg complexes.
//!
//! The CE algebra of `L` is the free graded-commutative algebra on generators
//! `ξ^i` dual to the basis of `L[1]`, so `|ξ^i| = 1 − |x_i|`. Its
//! differential `Q` is the derivation determined by the Maurer–Cartan
//! equation for the universal element `X = Σ ξ^i ⊗ x_i`:
//!
//! ```text
//! Q X + (1 ⊗ d) X + ½ [X, X] = 0
//! Q ξ^k = −Σ_i (−1)^{1−|x_i|} d_{ki} ξ^i − ½ Σ_{i,j} (−1)^{|x_i|(1−|x_j|)} c_{ij}^k ξ^i ξ^j
//! ```
//!
//! With coefficients in a module `V` the differential on `m ⊗ v` is
//! `Q m ⊗ v + Σ_i (−1)^{|x_i||m|} ξ^i m ⊗ ρ(x_i) v + (−1)^{|m|} m ⊗ d_V v`.
//! `Q² = 0` is checked on generators whenever a [`CeAlgebra`] is built.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_traits::One;
use rayon::prelude::*;

use super::{GradedLieData, ModuleData, DESK_SCALE_DIM};
use crate::gca::{Algebra, AlgebraHandle, BasisSpec, GeneratorSpec, Monomial};
use crate::graded::GradedDims;
use crate::linalg::SparseMatrix;
use crate::{Cohomology, Complex, Derivation, Element, Error, Rational};

/// Options for building a CE complex.
#[derive(Clone, Debug)]
pub struct CeOptions {
    /// Drop the word-length-zero part (`Sym⁰ ⊗ V`).
    pub reduced: bool,
    /// Keep only words of length at most this (a quotient complex).
    pub word_cap: Option<u32>,
    /// Degrees to build; cohomology is reported strictly inside.
    pub window: RangeInclusive<i64>,
    /// Permit algebras above [`DESK_SCALE_DIM`].
    pub allow_large: bool,
}

impl CeOptions {
    pub fn new(window: RangeInclusive<i64>) -> Self {
        Self { reduced: false, word_cap: None, window, allow_large: false }
    }

    /// Window `[-1, dim + 1]`, enough for the whole CE complex of an ordinary
    /// Lie algebra with coefficients in degree 0.
    pub fn full(g: &GradedLieData) -> Self {
        Self::new(-1..=g.dim() as i64 + 1)
    }

    pub fn reduced(mut self, reduced: bool) -> Self {
        self.reduced = reduced;
        self
    }

    pub fn word_cap(mut self, cap: Option<u32>) -> Self {
        self.word_cap = cap;
        self
    }

    pub fn allow_large(mut self, allow: bool) -> Self {
        self.allow_large = allow;
        self
    }
}

/// The CE algebra of a graded Lie algebra together with its differential.
#[derive(Clone, Debug)]
pub struct CeAlgebra {
    algebra: AlgebraHandle,
    q: Derivation,
    /// Algebra generator index of `ξ^i` for each Lie basis index `i`.
    gen_of: Vec<usize>,
    lie_degrees: Vec<i64>,
}

fn pm(negative: bool) -> Rational {
    if negative {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// Name of the CE generator dual to a basis element.
pub(crate) fn dual_name(name: &str) -> String {
    format!("ξ[{name}]")
}

impl CeAlgebra {
    pub fn new(g: &GradedLieData) -> Result<Self, Error> {
        let gens = g.basis().iter().map(|b| GeneratorSpec::new(dual_name(&b.name), 1 - b.degree)).collect();
        let algebra = Algebra::new(gens)?;
        let gen_of: Vec<usize> =
            g.basis().iter().map(|b| algebra.index_of(&dual_name(&b.name))).collect::<Result<_, _>>()?;
        let n = g.dim();
        let half = Rational::new(1.into(), 2.into());
        let mut images: Vec<Element> = vec![Element::zero(&algebra); n];
        for i in 0..n {
            let gi = Monomial::generator(gen_of[i]);
            if let Some(d) = g.differential() {
                // −(−1)^{1−|x_i|} d_{ki} ξ^i
                let s = -pm(odd(1 - g.degree(i)));
                for (k, c) in d.column(i) {
                    images[*k].add_term(gi.clone(), c * &s);
                }
            }
            for j in 0..n {
                let br = g.bracket(i, j);
                if br.is_empty() {
                    continue;
                }
                let gj = Monomial::generator(gen_of[j]);
                let Some((neg, m)) = algebra.multiply_monomials(&gi, &gj) else {
                    continue;
                };
                let s = -(&half) * pm(odd(g.degree(i) * (1 - g.degree(j)))) * pm(neg);
                for (k, c) in br {
                    images[*k].add_term(m.clone(), c * &s);
                }
            }
        }
        let mut q = Derivation::new(&algebra, 1);
        for (k, image) in images.into_iter().enumerate() {
            q.set_image(gen_of[k], image)?;
        }
        for k in 0..n {
            if !q.apply(q.image(gen_of[k]))?.is_zero() {
                return Err(Error::InvalidLie(format!(
                    "CE differential does not square to zero on the dual of {}",
                    g.basis()[k].name
                )));
            }
        }
        Ok(Self { algebra, q, gen_of, lie_degrees: g.basis().iter().map(|b| b.degree).collect() })
    }

    pub fn algebra(&self) -> &AlgebraHandle {
        &self.algebra
    }

    pub fn differential(&self) -> &Derivation {
        &self.q
    }

    /// Algebra generator index of the dual of Lie basis element `i`.
    pub fn generator_of(&self, i: usize) -> usize {
        self.gen_of[i]
    }

    /// Assemble `(A ⊗ V, d)` over `window`, where `A` is restricted to the
    /// monomials allowed by `spec`. Terms leaving the allowed monomials are
    /// dropped when `spec` has an upper word bound (a quotient complex) and
    /// are an error otherwise.
    pub fn complex(
        &self,
        module: Option<&ModuleData>,
        spec: &BasisSpec,
        window: RangeInclusive<i64>,
    ) -> Result<Complex, Error> {
        let (lo, hi) = (*window.start(), *window.end());
        let module_degrees: Vec<i64> = module.map_or(vec![0], |m| m.basis.iter().map(|b| b.degree).collect());
        let quotient = spec.total_cap.is_some() || spec.bounds.iter().any(|b| b.max.is_some());
        let bases: Vec<Vec<(usize, Monomial)>> = (lo..=hi)
            .into_par_iter()
            .map(|k| {
                let mut out = Vec::new();
                for (v, dv) in module_degrees.iter().enumerate() {
                    for m in self.algebra.basis_in_degree(k - dv, spec)? {
                        out.push((v, m));
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, Error>>()?;
        let labels = bases
            .iter()
            .map(|b| {
                b.iter()
                    .map(|(v, m)| match module {
                        Some(md) if !md.is_trivial() => {
                            format!("{} ⊗ {}", self.algebra.format_monomial(m), md.basis[*v].name)
                        }
                        _ => self.algebra.format_monomial(m),
                    })
                    .collect()
            })
            .collect();
        let diffs = (lo..hi)
            .into_par_iter()
            .map(|k| {
                let src = &bases[(k - lo) as usize];
                let dst = &bases[(k + 1 - lo) as usize];
                let index: HashMap<&(usize, Monomial), usize> = dst.iter().enumerate().map(|(r, b)| (b, r)).collect();
                let mut cols = Vec::with_capacity(src.len());
                for (v, m) in src {
                    let mut col = Vec::new();
                    let mut push = |key: (usize, Monomial), c: Rational| -> Result<(), Error> {
                        match index.get(&key) {
                            Some(&r) => col.push((r, c)),
                            None if quotient => {}
                            None => {
                                return Err(Error::Invalid(format!(
                                    "CE differential leaves the basis at {}",
                                    self.algebra.format_monomial(&key.1)
                                )))
                            }
                        }
                        Ok(())
                    };
                    for (p, c) in self.q.apply_monomial(m).terms() {
                        push((*v, p.clone()), c.clone())?;
                    }
                    if let Some(md) = module {
                        let m_deg = self.algebra.degree_of(m);
                        for (i, rho) in md.action.iter().enumerate() {
                            let column = rho.column(*v);
                            if column.is_empty() {
                                continue;
                            }
                            let gi = Monomial::generator(self.gen_of[i]);
                            let Some((neg, p)) = self.algebra.multiply_monomials(&gi, m) else {
                                continue;
                            };
                            let s = pm(neg) * pm(odd(self.lie_degrees[i] * m_deg));
                            for (b, c) in column {
                                push((*b, p.clone()), c * &s)?;
                            }
                        }
                        if let Some(dv) = &md.differential {
                            let s = pm(odd(m_deg));
                            for (b, c) in dv.column(*v) {
                                push((*b, m.clone()), c * &s)?;
                            }
                        }
                    }
                    cols.push(col);
                }
                Ok(SparseMatrix::from_columns(dst.len(), cols))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Complex::new(lo, hi, labels, diffs)
    }

    /// Largest degree `k` such that every monomial of degree `k + 1 − |v|`
    /// has word length at most `cap`, so that `H^k` is unaffected by the cap.
    /// `None` when some generator has nonpositive degree.
    fn cap_trusted_top(&self, cap: u32, module_min_degree: i64) -> Option<i64> {
        let min_deg = self.algebra.generators().iter().map(|g| g.degree).min()?;
        if min_deg <= 0 {
            return None;
        }
        // word length of a degree-t monomial is at most t / min_deg
        Some(i64::from(cap + 1) * min_deg - 1 + module_min_degree - 1)
    }
}

fn trivial(g: &GradedLieData) -> ModuleData {
    super::trivial_module(g)
}

/// The CE complex `C•(g, V)` over `opts.window` (trivial coefficients when
/// `module` is `None`).
pub fn ce_complex(g: &GradedLieData, module: Option<&ModuleData>, opts: &CeOptions) -> Result<Complex, Error> {
    if g.dim() > DESK_SCALE_DIM && !opts.allow_large {
        return Err(Error::TooLarge(format!(
            "dimension {} exceeds the brute-force limit {DESK_SCALE_DIM}; pass allow_large to override",
            g.dim()
        )));
    }
    if let Some(md) = module {
        md.validate(g)?;
    }
    let (lo, hi) = (*opts.window.start(), *opts.window.end());
    if hi - lo < 2 {
        return Err(Error::NarrowWindow { lo, hi, detail: "need one padding degree on each side".into() });
    }
    if opts.word_cap.is_none() {
        if let Some(b) = g.basis().iter().find(|b| 1 - b.degree <= 0) {
            return Err(Error::UnboundedEnumeration(dual_name(&b.name)));
        }
    }
    let ce = CeAlgebra::new(g)?;
    let mut spec = BasisSpec { total_cap: opts.word_cap, bounds: Vec::new() };
    if opts.reduced {
        spec = spec.with_bound((0..ce.algebra.len()).collect(), 1, None);
    }
    let owned;
    let module = match module {
        Some(m) => Some(m),
        None => {
            owned = trivial(g);
            Some(&owned)
        }
    };
    ce.complex(module, &spec, opts.window.clone())
}

/// Cohomology of [`ce_complex`] strictly inside the window. With a word cap
/// and positively graded generators, degrees the cap could affect are left
/// out; with nonpositive generators the output is only trustworthy up to the
/// cap.
pub fn ce_cohomology(g: &GradedLieData, module: Option<&ModuleData>, opts: &CeOptions) -> Result<Cohomology, Error> {
    let complex = ce_complex(g, module, opts)?;
    let (lo, hi) = (*opts.window.start(), *opts.window.end());
    let mut top = hi - 1;
    if let Some(cap) = opts.word_cap {
        let min_v = module.map_or(0, |m| m.basis.iter().map(|b| b.degree).min().unwrap_or(0));
        if let Some(t) = CeAlgebra::new(g)?.cap_trusted_top(cap, min_v) {
            top = top.min(t);
        }
    }
    if top < lo + 1 {
        return Ok(Cohomology { dims: GradedDims::new(), representatives: None });
    }
    complex.cohomology(lo + 1..=top)
}

/// Betti table of local functionals on `ℝⁿ`: reduced CE cohomology of `L`
/// shifted down by `n`.
pub fn local_functional_dims(l: &GradedLieData, n: i64, opts: &CeOptions) -> Result<GradedDims, Error> {
    let opts = opts.clone().reduced(true);
    Ok(ce_cohomology(l, None, &opts)?.dims.shifted(-n))
}
