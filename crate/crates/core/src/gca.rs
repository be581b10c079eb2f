//! Free graded-commutative algebras with exact coefficients.
//!
//! Generators carry an integer degree; odd generators anticommute and square
//! to zero, even generators are polynomial. Generators are kept in the
//! canonical order `(degree, name)`, which fixes the normal form of every
//! monomial and therefore every Koszul sign.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graded::GradedDims;
use crate::scalar::Scalar;
use crate::Error;

/// A named generator of a given cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Self { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// Immutable description of a free graded-commutative algebra.
#[derive(Debug, PartialEq, Eq)]
pub struct Algebra {
    gens: Vec<GeneratorSpec>,
    index: HashMap<String, usize>,
}

pub type AlgebraHandle = Arc<Algebra>;

impl Algebra {
    /// Build the algebra on `gens`; generator indices follow the canonical
    /// `(degree, name)` order, not the input order.
    pub fn new(mut gens: Vec<GeneratorSpec>) -> Result<AlgebraHandle, Error> {
        gens.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
        let mut index = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(Self { gens, index }))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &GeneratorSpec {
        &self.gens[i]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, Error> {
        self.find(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn odd(&self, i: u32) -> bool {
        self.gens[i as usize].is_odd()
    }

    fn deg(&self, i: u32) -> i64 {
        self.gens[i as usize].degree
    }

    /// Degree of a monomial.
    pub fn degree_of(&self, m: &Monomial) -> i64 {
        m.0.iter().map(|&(g, e)| self.deg(g) * i64::from(e)).sum()
    }

    /// Product of two normal-form monomials: `None` if it vanishes, otherwise
    /// the normal form together with `true` when the Koszul sign is negative.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut out = Vec::with_capacity(a.0.len() + b.0.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        // Number of odd factors of `a` not yet merged; each odd factor of `b`
        // that is placed before them passes over all of them.
        let mut odd_left_in_a = a.0.iter().filter(|(g, _)| self.odd(*g)).count();
        while i < a.0.len() || j < b.0.len() {
            let take_a = j >= b.0.len() || (i < a.0.len() && a.0[i].0 < b.0[j].0);
            let take_b = i >= a.0.len() || (j < b.0.len() && b.0[j].0 < a.0[i].0);
            if take_a {
                if self.odd(a.0[i].0) {
                    odd_left_in_a -= 1;
                }
                out.push(a.0[i]);
                i += 1;
            } else if take_b {
                if self.odd(b.0[j].0) && odd_left_in_a % 2 == 1 {
                    negative = !negative;
                }
                out.push(b.0[j]);
                j += 1;
            } else {
                let g = a.0[i].0;
                if self.odd(g) {
                    return None;
                }
                out.push((g, a.0[i].1 + b.0[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((negative, Monomial(out)))
    }

    /// Every monomial of total degree `degree` satisfying `spec`.
    pub fn basis_in_degree(&self, degree: i64, spec: &BasisSpec) -> Result<Vec<Monomial>, Error> {
        let mut enumerator = Enumerator::new(self, spec)?;
        let mut out = Vec::new();
        let mut current = Vec::new();
        enumerator.walk(0, degree, 0, &mut current, &mut out);
        Ok(out)
    }

    /// Basis of `coeffs ⊗ A` in degree `degree`, where `coeffs` is a graded
    /// vector space (with zero product) and `A` is this algebra. `None` means
    /// the ground field in degree 0. Requires all generator degrees positive
    /// or a total word-length cap.
    pub fn tensor_basis_in_degree(
        &self,
        degree: i64,
        coeffs: Option<&GradedDims>,
        word_cap: Option<u32>,
    ) -> Result<Vec<TensorBasis>, Error> {
        let spec = BasisSpec { total_cap: word_cap, bounds: Vec::new() };
        match coeffs {
            None => Ok(self
                .basis_in_degree(degree, &spec)?
                .into_iter()
                .map(|monomial| TensorBasis { coeff: None, monomial })
                .collect()),
            Some(c) => {
                let mut out = Vec::new();
                for (cd, k) in c.iter() {
                    let monos = self.basis_in_degree(degree - cd, &spec)?;
                    for slot in 0..k {
                        out.extend(
                            monos.iter().map(|m| TensorBasis { coeff: Some((cd, slot)), monomial: m.clone() }),
                        );
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.0.iter()
            .map(|&(g, e)| {
                let name = &self.gens[g as usize].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One basis vector of `coeffs ⊗ A`: a coefficient slot `(degree, index)`
/// (or the unit) tensored with a monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorBasis {
    pub coeff: Option<(i64, usize)>,
    pub monomial: Monomial,
}

/// Word-length constraint on a set of generators.
#[derive(Clone, Debug, Default)]
pub struct WordBound {
    pub generators: Vec<usize>,
    pub min: u32,
    pub max: Option<u32>,
}

/// Constraints for basis enumeration.
#[derive(Clone, Debug, Default)]
pub struct BasisSpec {
    /// Cap on the total word length.
    pub total_cap: Option<u32>,
    pub bounds: Vec<WordBound>,
}

impl BasisSpec {
    pub fn capped(cap: u32) -> Self {
        Self { total_cap: Some(cap), bounds: Vec::new() }
    }

    pub fn with_bound(mut self, generators: Vec<usize>, min: u32, max: Option<u32>) -> Self {
        self.bounds.push(WordBound { generators, min, max });
        self
    }
}

struct Enumerator<'a> {
    alg: &'a Algebra,
    spec: &'a BasisSpec,
    memberships: Vec<Vec<usize>>,
    counts: Vec<u32>,
    /// Exponent cap per generator from word-length bounds alone.
    caps: Vec<Option<u32>>,
    /// Whether every generator from index `i` on has positive degree.
    positive_suffix: Vec<bool>,
}

impl<'a> Enumerator<'a> {
    fn new(alg: &'a Algebra, spec: &'a BasisSpec) -> Result<Self, Error> {
        let n = alg.len();
        let mut memberships = vec![Vec::new(); n];
        for (b, bound) in spec.bounds.iter().enumerate() {
            for &g in &bound.generators {
                if g >= n {
                    return Err(Error::UnknownGenerator(format!("#{g}")));
                }
                memberships[g].push(b);
            }
        }
        let mut caps = vec![spec.total_cap; n];
        for (g, cap) in caps.iter_mut().enumerate() {
            for &b in &memberships[g] {
                if let Some(m) = spec.bounds[b].max {
                    *cap = Some(cap.map_or(m, |c| c.min(m)));
                }
            }
            let gen = &alg.gens[g];
            if gen.degree <= 0 && !gen.is_odd() && cap.is_none() {
                return Err(Error::UnboundedEnumeration(gen.name.clone()));
            }
        }
        let mut positive_suffix = vec![true; n + 1];
        for i in (0..n).rev() {
            positive_suffix[i] = positive_suffix[i + 1] && alg.gens[i].degree > 0;
        }
        Ok(Self { alg, spec, memberships, counts: vec![0; spec.bounds.len()], caps, positive_suffix })
    }

    fn room(&self, g: usize, total: u32) -> u32 {
        let mut room = u32::MAX;
        if let Some(c) = self.spec.total_cap {
            room = room.min(c.saturating_sub(total));
        }
        for &b in &self.memberships[g] {
            if let Some(m) = self.spec.bounds[b].max {
                room = room.min(m.saturating_sub(self.counts[b]));
            }
        }
        room
    }

    fn walk(&mut self, g: usize, remaining: i64, total: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        let n = self.alg.len();
        if self.positive_suffix[g] {
            if remaining < 0 {
                return;
            }
            if remaining == 0 {
                if self.spec.bounds.iter().zip(&self.counts).all(|(b, c)| *c >= b.min) {
                    out.push(Monomial(current.clone()));
                }
                return;
            }
        }
        if g == n {
            return;
        }
        let gen = &self.alg.gens[g];
        let mut max_e = self.room(g, total);
        if gen.is_odd() {
            max_e = max_e.min(1);
        }
        if gen.degree > 0 {
            max_e = max_e.min(u32::try_from(remaining.max(0) / gen.degree).unwrap_or(u32::MAX));
        } else {
            debug_assert!(gen.is_odd() || self.caps[g].is_some());
        }
        for e in 0..=max_e {
            if e > 0 {
                current.push((g as u32, e));
                for &b in &self.memberships[g] {
                    self.counts[b] += e;
                }
            }
            self.walk(g + 1, remaining - gen.degree * i64::from(e), total + e, current, out);
            if e > 0 {
                current.pop();
                for &b in &self.memberships[g] {
                    self.counts[b] -= e;
                }
            }
        }
    }
}

/// A monomial in normal form: `(generator index, exponent)` pairs sorted by
/// generator index, exponents positive, odd generators with exponent 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Self(vec![(i as u32, 1)])
    }

    /// Build from `(generator, exponent)` pairs in any order; zero exponents
    /// are dropped. Returns `None` for an odd generator with exponent > 1.
    pub fn from_exponents(alg: &Algebra, pairs: &[(usize, u32)]) -> Option<Self> {
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for &(g, e) in pairs {
            *acc.entry(g as u32).or_default() += e;
        }
        let v: Vec<(u32, u32)> = acc.into_iter().filter(|(_, e)| *e > 0).collect();
        if v.iter().any(|&(g, e)| e > 1 && alg.odd(g)) {
            return None;
        }
        Some(Self(v))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: usize) -> u32 {
        self.0.iter().find(|(i, _)| *i as usize == g).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(g, e)| (g as usize, e))
    }

    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Word length restricted to the generators accepted by `pred`.
    pub fn word_length_in(&self, pred: impl Fn(usize) -> bool) -> u32 {
        self.0.iter().filter(|(g, _)| pred(*g as usize)).map(|(_, e)| e).sum()
    }

    fn split_at_factor(&self, i: usize) -> (Monomial, Monomial) {
        let (g, e) = self.0[i];
        let left = Monomial(self.0[..i].to_vec());
        let mut right = Vec::with_capacity(self.0.len() - i);
        if e > 1 {
            right.push((g, e - 1));
        }
        right.extend_from_slice(&self.0[i + 1..]);
        (left, Monomial(right))
    }
}

/// Finite linear combination of monomials.
#[derive(Clone)]
pub struct Element<T: Scalar> {
    alg: AlgebraHandle,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> PartialEq for Element<T> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl<T: Scalar> fmt::Debug for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

fn same_algebra(a: &AlgebraHandle, b: &AlgebraHandle) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<T: Scalar> Element<T> {
    pub fn zero(alg: &AlgebraHandle) -> Self {
        Self { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &AlgebraHandle) -> Self {
        Self::from_monomial(alg, Monomial::one(), T::one())
    }

    pub fn from_monomial(alg: &AlgebraHandle, m: Monomial, coeff: T) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(m, coeff);
        e
    }

    /// The generator with the given name.
    pub fn generator(alg: &AlgebraHandle, name: &str) -> Result<Self, Error> {
        Ok(Self::from_monomial(alg, Monomial::generator(alg.index_of(name)?), T::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, T)>>(alg: &AlgebraHandle, terms: I) -> Self {
        let mut e = Self::zero(alg);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn algebra(&self) -> &AlgebraHandle {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Degrees of all terms.
    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|m| self.alg.degree_of(m)).collect()
    }

    /// The degree, if the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    /// Re-apply the normal-form invariants (drops zero coefficients).
    pub fn normalized(&self) -> Self {
        Self::from_terms(&self.alg, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(&self.alg);
        }
        Self { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect() }
    }

    /// Graded-commutative product.
    pub fn multiply(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = Self::zero(&self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = self.alg.multiply_monomials(ma, mb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    fn mul_monomial_left(&self, left: &Monomial, into: &mut Self, scale: &T) {
        for (m, c) in &self.terms {
            if let Some((neg, p)) = self.alg.multiply_monomials(left, m) {
                let v = c.clone() * scale.clone();
                into.add_term(p, if neg { -v } else { v });
            }
        }
    }
}

impl<T: Scalar> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, abs) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = self.alg.format_monomial(m);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs} {mono}")?;
            }
        }
        Ok(())
    }
}

/// A derivation of fixed degree, determined by its values on generators and
/// extended by the graded Leibniz rule
/// `D(ab) = D(a) b + (-1)^{|D||a|} a D(b)`.
#[derive(Clone, Debug)]
pub struct Derivation<T: Scalar> {
    alg: AlgebraHandle,
    degree: i64,
    images: Vec<Element<T>>,
}

impl<T: Scalar> Derivation<T> {
    /// The zero derivation of the given degree.
    pub fn new(alg: &AlgebraHandle, degree: i64) -> Self {
        Self { alg: alg.clone(), degree, images: vec![Element::zero(alg); alg.len()] }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn algebra(&self) -> &AlgebraHandle {
        &self.alg
    }

    /// Set the image of generator `g`; it must be homogeneous of degree
    /// `|g| + |D|` (or zero).
    pub fn set_image(&mut self, g: usize, image: Element<T>) -> Result<(), Error> {
        if !same_algebra(&self.alg, &image.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let want = self.alg.gens[g].degree + self.degree;
        if let Some(bad) = image.degrees().into_iter().find(|d| *d != want) {
            return Err(Error::Degree(format!(
                "image of {} has degree {bad}, expected {want}",
                self.alg.gens[g].name
            )));
        }
        self.images[g] = image;
        Ok(())
    }

    pub fn image(&self, g: usize) -> &Element<T> {
        &self.images[g]
    }

    /// Apply to a single normal-form monomial.
    pub fn apply_monomial(&self, m: &Monomial) -> Element<T> {
        let mut out = Element::zero(&self.alg);
        for (i, &(g, e)) in m.0.iter().enumerate() {
            let image = &self.images[g as usize];
            if image.is_zero() {
                continue;
            }
            let (left, right) = m.split_at_factor(i);
            let left_odd = (self.alg.degree_of(&left) * self.degree).rem_euclid(2) == 1;
            let mut scale = T::from_int(i64::from(e));
            if left_odd {
                scale = -scale;
            }
            // left · D(g) · right, with right = g^(e-1) · (later factors).
            let mut middle = Element::zero(&self.alg);
            for (mm, c) in &image.terms {
                if let Some((neg, p)) = self.alg.multiply_monomials(mm, &right) {
                    middle.add_term(p, if neg { -c.clone() } else { c.clone() });
                }
            }
            middle.mul_monomial_left(&left, &mut out, &scale);
        }
        out
    }

    pub fn apply(&self, x: &Element<T>) -> Result<Element<T>, Error> {
        if !same_algebra(&self.alg, &x.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = Element::zero(&self.alg);
        for (m, c) in &x.terms {
            let dm = self.apply_monomial(m);
            for (p, v) in dm.terms {
                out.add_term(p, v * c.clone());
            }
        }
        Ok(out)
    }

    /// Pointwise sum of two derivations of the same degree.
    pub fn plus(&self, other: &Self) -> Result<Self, Error> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!("cannot add derivations of degrees {} and {}", self.degree, other.degree)));
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Ok(Self { alg: self.alg.clone(), degree: self.degree, images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type E = Element<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn alg(gens: &[(&str, i64)]) -> AlgebraHandle {
        Algebra::new(gens.iter().map(|(n, d)| GeneratorSpec::new(*n, *d)).collect()).unwrap()
    }

    fn basis_names(a: &AlgebraHandle, d: i64) -> Vec<String> {
        a.basis_in_degree(d, &BasisSpec::default()).unwrap().iter().map(|m| a.format_monomial(m)).collect()
    }

    #[test]
    fn empty_algebra_has_only_the_unit() {
        let a = alg(&[]);
        assert_eq!(basis_names(&a, 0), ["1"]);
        for d in 1..6 {
            assert!(basis_names(&a, d).is_empty());
        }
    }

    #[test]
    fn single_odd_generator() {
        let a = alg(&[("eta", 3)]);
        for d in -2..12 {
            let expect: Vec<&str> = match d {
                0 => vec!["1"],
                3 => vec!["eta"],
                _ => vec![],
            };
            assert_eq!(basis_names(&a, d), expect, "degree {d}");
        }
    }

    #[test]
    fn mixed_generators_by_degree() {
        let a = alg(&[("eta", 3), ("p", 4)]);
        assert_eq!(basis_names(&a, 7), ["eta p"]);
        assert_eq!(basis_names(&a, 8), ["p^2"]);
        assert_eq!(basis_names(&a, 4), ["p"]);
        let b = alg(&[("eta", 3), ("eta'", 3), ("p", 4), ("p'", 4)]);
        let mut got = basis_names(&b, 7);
        got.sort();
        assert_eq!(got, ["eta p", "eta p'", "eta' p", "eta' p'"]);
    }

    #[test]
    fn tensor_basis_includes_coefficient_slots() {
        let a = alg(&[("eta", 3), ("p", 4)]);
        let c = GradedDims::point(3);
        let b = a.tensor_basis_in_degree(7, Some(&c), None).unwrap();
        assert_eq!(b, [TensorBasis { coeff: Some((3, 0)), monomial: Monomial::generator(1) }]);
        let c2 = GradedDims::from_pairs([(0, 1), (3, 2)]);
        let b2 = a.tensor_basis_in_degree(7, Some(&c2), None).unwrap();
        // degree 7 from C^0 (eta p) and two copies from C^3 (p)
        assert_eq!(b2.len(), 3);
    }

    #[test]
    fn nonpositive_even_generators_need_a_cap() {
        let a = alg(&[("x", 0), ("y", 2)]);
        assert!(matches!(a.basis_in_degree(2, &BasisSpec::default()), Err(Error::UnboundedEnumeration(_))));
        let capped = a.basis_in_degree(2, &BasisSpec::capped(3)).unwrap();
        // y, x y, x^2 y
        assert_eq!(capped.len(), 3);
        // odd nonpositive generators are bounded by parity
        let b = alg(&[("u", -1), ("y", 2)]);
        assert_eq!(b.basis_in_degree(1, &BasisSpec::default()).unwrap().len(), 1);
    }

    #[test]
    fn bounds_restrict_word_length() {
        let a = alg(&[("t", 1), ("w", 2)]);
        let w = a.index_of("w").unwrap();
        let spec = BasisSpec::default().with_bound(vec![w], 1, None);
        let names: Vec<String> = a.basis_in_degree(3, &spec).unwrap().iter().map(|m| a.format_monomial(m)).collect();
        assert_eq!(names, ["t w"]);
        let spec = BasisSpec::default().with_bound(vec![w], 2, Some(2));
        assert_eq!(a.basis_in_degree(4, &spec).unwrap().len(), 1);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        assert!(matches!(
            Algebra::new(vec![GeneratorSpec::new("x", 1), GeneratorSpec::new("x", 2)]),
            Err(Error::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn koszul_signs() {
        let a = alg(&[("eta1", 3), ("eta2", 3), ("p", 4)]);
        let e1 = E::generator(&a, "eta1").unwrap();
        let e2 = E::generator(&a, "eta2").unwrap();
        let p = E::generator(&a, "p").unwrap();
        assert!(e1.multiply(&e1).unwrap().is_zero());
        assert_eq!(e1.multiply(&p).unwrap(), p.multiply(&e1).unwrap());
        assert_eq!(e1.multiply(&e2).unwrap(), e2.multiply(&e1).unwrap().neg());
        assert_eq!(p.multiply(&p).unwrap().to_string(), "p^2");
    }

    #[test]
    fn mixed_algebra_operands_are_rejected() {
        let a = alg(&[("x", 1)]);
        let b = alg(&[("y", 1)]);
        let x = E::generator(&a, "x").unwrap();
        let y = E::generator(&b, "y").unwrap();
        assert!(matches!(x.multiply(&y), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn leibniz_examples() {
        let a = alg(&[("eta", 3), ("p", 4)]);
        let mut d = Derivation::new(&a, 1);
        d.set_image(a.index_of("eta").unwrap(), E::generator(&a, "p").unwrap()).unwrap();
        let eta = E::generator(&a, "eta").unwrap();
        let p = E::generator(&a, "p").unwrap();
        let ep = eta.multiply(&p).unwrap();
        assert_eq!(d.apply(&ep).unwrap(), p.multiply(&p).unwrap());
        assert!(d.apply(&E::one(&a)).unwrap().is_zero());

        let b = alg(&[("eta1", 3), ("eta2", 3), ("p1", 4), ("p2", 4)]);
        let mut d = Derivation::new(&b, 1);
        for (e, p) in [("eta1", "p1"), ("eta2", "p2")] {
            d.set_image(b.index_of(e).unwrap(), E::generator(&b, p).unwrap()).unwrap();
        }
        let g = |n| E::generator(&b, n).unwrap();
        let lhs = d.apply(&g("eta1").multiply(&g("eta2")).unwrap()).unwrap();
        let rhs = g("p1").multiply(&g("eta2")).unwrap().sub(&g("eta1").multiply(&g("p2")).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn image_degree_is_checked() {
        let a = alg(&[("eta", 3), ("p", 4)]);
        let mut d = Derivation::<Rational>::new(&a, 2);
        assert!(d.set_image(0, E::generator(&a, "p").unwrap()).is_err());
        let three = E::from_monomial(&a, Monomial::one(), q(3));
        assert_eq!(three.degree(), Some(0));
    }
}
