//! Builders for the Lie algebras and modules used throughout the crate.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::roots::{edges_a, edges_d, edges_e, SimplyLaced};
use super::{BasisElement, GradedLieData, ModuleData, Pairing};
use crate::linalg::{normalize, SparseMatrix, SparseVec};
use crate::{Error, Matrix, Rational};

/// Largest dimension for which brute-force CE computations run by default.
pub const DESK_SCALE_DIM: usize = 28;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `so(n)` with basis `E_{ab} = e_a e_bᵀ − e_b e_aᵀ` (`a < b`) in degree 0 and
/// the invariant form `⟨X, Y⟩ = −½ tr(XY)`, for which the basis is
/// orthonormal.
pub fn build_so(n: usize) -> Result<GradedLieData, Error> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("so(n) needs n >= 2, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let basis = pairs.iter().map(|(a, b)| BasisElement::new(format!("E{}_{}", a + 1, b + 1), 0)).collect();
    // entry (r, c) of E_ab as a small integer
    let entry = |(a, b): (usize, usize), r: usize, c: usize| -> i64 {
        i64::from(r == a && c == b) - i64::from(r == b && c == a)
    };
    let mut entries = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let mut terms = Vec::new();
            for (k, &(a, b)) in pairs.iter().enumerate() {
                // (XY − YX)_{ab}
                let v: i64 = (0..n)
                    .map(|m| entry(pairs[i], a, m) * entry(pairs[j], m, b) - entry(pairs[j], a, m) * entry(pairs[i], m, b))
                    .sum();
                if v != 0 {
                    terms.push((k, q(v)));
                }
            }
            entries.push((i, j, terms));
        }
    }
    let d = pairs.len();
    GradedLieData::new(basis, entries)?.with_pairing(Pairing { degree: 0, matrix: SparseMatrix::identity(d) })
}

/// Cartan type of a simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    /// Whether `(self, rank)` names a simple Lie algebra. Low-rank
    /// coincidences are allowed (`B_1 = C_1 = A_1`, `C_2 = B_2`, `D_3 = A_3`).
    pub fn is_valid(self, rank: usize) -> bool {
        match self {
            SimpleType::A | SimpleType::B | SimpleType::C => rank >= 1,
            SimpleType::D => rank >= 3,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        }
    }

    pub fn check(self, rank: usize) -> Result<(), Error> {
        if self.is_valid(rank) {
            Ok(())
        } else {
            Err(Error::InvalidSimpleType(format!("{self}{rank}")))
        }
    }

    /// Dimension of the simple Lie algebra of this type.
    pub fn dimension(self, rank: usize) -> usize {
        let n = rank;
        match self {
            SimpleType::A => n * (n + 2),
            SimpleType::B | SimpleType::C => n * (2 * n + 1),
            SimpleType::D => n * (2 * n - 1),
            SimpleType::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            SimpleType::F => 52,
            SimpleType::G => 14,
        }
    }

    /// Parse `"A2"`, `"a,2"`, `"C 3"` and similar.
    pub fn parse_with_rank(text: &str) -> Result<(SimpleType, usize), Error> {
        let t = text.trim();
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty simple type".into()))?;
        let ty: SimpleType = letter.to_string().parse()?;
        let rest = chars.as_str().trim_start_matches([',', ' ', '_']).trim();
        let rank: usize = rest.parse().map_err(|_| Error::Parse(format!("bad rank in simple type {text:?}")))?;
        ty.check(rank)?;
        Ok((ty, rank))
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(SimpleType::A),
            "B" => Ok(SimpleType::B),
            "C" => Ok(SimpleType::C),
            "D" => Ok(SimpleType::D),
            "E" => Ok(SimpleType::E),
            "F" => Ok(SimpleType::F),
            "G" => Ok(SimpleType::G),
            other => Err(Error::InvalidSimpleType(other.to_string())),
        }
    }
}

/// Split simple Lie algebra of the given type over the rationals, with its
/// Killing form attached as a degree-0 pairing.
///
/// Dimensions above [`DESK_SCALE_DIM`] are built but refused by the CE
/// routines unless explicitly allowed.
pub fn build_simple(ty: SimpleType, rank: usize) -> Result<GradedLieData, Error> {
    ty.check(rank)?;
    let g = match ty {
        SimpleType::A => SimplyLaced::new(rank, &edges_a(rank))?.lie,
        SimpleType::D => SimplyLaced::new(rank, &edges_d(rank))?.lie,
        SimpleType::E => SimplyLaced::new(rank, &edges_e(rank))?.lie,
        SimpleType::B => {
            // D_{n+1}, swapping the two end nodes of the fork
            let m = rank + 1;
            let mut perm: Vec<usize> = (0..m).collect();
            perm.swap(m - 2, m - 1);
            let edges = if m == 2 { Vec::new() } else { edges_d(m) };
            SimplyLaced::new(m, &edges)?.fold(&perm, 2)?
        }
        SimpleType::C => {
            // A_{2n−1}, reversing the chain
            let m = 2 * rank - 1;
            let perm: Vec<usize> = (0..m).rev().collect();
            SimplyLaced::new(m, &edges_a(m))?.fold(&perm, 2)?
        }
        SimpleType::F => SimplyLaced::new(6, &edges_e(6))?.fold(&[5, 1, 4, 3, 2, 0], 2)?,
        SimpleType::G => SimplyLaced::new(4, &edges_d(4))?.fold(&[2, 1, 3, 0], 3)?,
    };
    debug_assert_eq!(g.dim(), ty.dimension(rank));
    let k = killing_form(&g);
    g.with_pairing(Pairing { degree: 0, matrix: k })
}

/// Killing form `K_{ij} = tr(ad x_i ∘ ad x_j)` computed from structure constants.
pub fn killing_form(g: &GradedLieData) -> Matrix {
    let n = g.dim();
    let mut out = SparseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            // Σ_k ([x_i, [x_j, x_k]])_k
            let mut t = Rational::zero();
            for k in 0..n {
                for (l, c) in g.bracket(j, k) {
                    for (m, d) in g.bracket(i, *l) {
                        if *m == k {
                            t += c * d;
                        }
                    }
                }
            }
            if !t.is_zero() {
                out.add_to(i, j, t.clone());
                if i != j {
                    out.add_to(j, i, t);
                }
            }
        }
    }
    out
}

/// `𝔤_dR = 𝔤[1] ⊕ 𝔤` with `d(s x) = x`, `[x, s y] = (−1)^{|x|} s[x, y]` and
/// `[s x, s y] = 0`. The copy `s x_i` is named `s<name>`.
#[allow(non_snake_case)]
pub fn build_dR(g: &GradedLieData) -> Result<GradedLieData, Error> {
    if g.differential().is_some() {
        return Err(Error::InvalidLie("build_dR expects a Lie algebra without differential".into()));
    }
    let n = g.dim();
    // indices: s x_i -> i, x_i -> n + i
    let mut basis: Vec<BasisElement> =
        g.basis().iter().map(|b| BasisElement::new(format!("s{}", b.name), b.degree - 1)).collect();
    basis.extend(g.basis().iter().cloned());
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            let br = g.bracket(i, j).iter().map(|(k, c)| (n + k, c.clone())).collect();
            entries.push((n + i, n + j, br));
        }
    }
    for i in 0..n {
        for j in 0..n {
            // [s x_i, x_j] = −(−1)^{|s x_i||x_j|} [x_j, s x_i] = −(−1)^{|s x_i||x_j| + |x_j|} s[x_j, x_i]
            let sxi = g.degree(i) - 1;
            let xj = g.degree(j);
            let s = if (sxi * xj + xj).rem_euclid(2) == 0 { -Rational::one() } else { Rational::one() };
            let br: SparseVec<Rational> = g.bracket(j, i).iter().map(|(k, c)| (*k, c * &s)).collect();
            entries.push((i, n + j, br));
        }
    }
    let d = SparseMatrix::from_triplets(2 * n, 2 * n, (0..n).map(|i| (n + i, i, Rational::one())));
    GradedLieData::new(basis, entries)?.with_differential(d)
}

/// The BF target `𝔤 ⋉ 𝔤*[n−3]`: `𝔤` in its own degrees, the dual basis
/// `α^i` in degree `3 − n − |x_i|`, coadjoint brackets
/// `[x_i, α^j] = −Σ_k c_{ik}^j α^k`, and the canonical pairing of degree
/// `n − 3`. Requires an ordinary Lie algebra.
pub fn build_bf(g: &GradedLieData, n: i64) -> Result<GradedLieData, Error> {
    if !g.is_ordinary() {
        return Err(Error::InvalidLie("build_bf expects an ordinary Lie algebra".into()));
    }
    let d = g.dim();
    let mut basis = g.basis().to_vec();
    basis.extend(g.basis().iter().map(|b| BasisElement::new(format!("{}*", b.name), 3 - n)));
    let mut entries = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            entries.push((i, j, g.bracket(i, j).to_vec()));
        }
        for j in 0..d {
            let mut terms = Vec::new();
            for k in 0..d {
                for (l, c) in g.bracket(i, k) {
                    if *l == j {
                        terms.push((d + k, -c.clone()));
                    }
                }
            }
            entries.push((i, d + j, normalize(terms)));
        }
    }
    // ⟨x_i, α^j⟩ = δ_ij and ⟨α^j, x_i⟩ = δ_ij
    let pairing = SparseMatrix::from_triplets(
        2 * d,
        2 * d,
        (0..d).flat_map(|i| [(i, d + i, Rational::one()), (d + i, i, Rational::one())]),
    );
    GradedLieData::new(basis, entries)?.with_pairing(Pairing { degree: n - 3, matrix: pairing })
}

/// The one-dimensional trivial module in degree 0.
pub fn trivial_module(g: &GradedLieData) -> ModuleData {
    ModuleData {
        basis: vec![BasisElement::new("1", 0)],
        action: vec![SparseMatrix::zeros(1, 1); g.dim()],
        differential: None,
    }
}

/// The adjoint module, with the Lie algebra's differential if it has one.
pub fn adjoint_module(g: &GradedLieData) -> ModuleData {
    let n = g.dim();
    let action = (0..n)
        .map(|i| SparseMatrix::from_columns(n, (0..n).map(|j| g.bracket(i, j).to_vec()).collect()))
        .collect();
    ModuleData { basis: g.basis().to_vec(), action, differential: g.differential().cloned() }
}

/// The defining representation of `so(n)` as built by [`build_so`].
pub fn vector_module(n: usize) -> Result<ModuleData, Error> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("so(n) needs n >= 2, got {n}")));
    }
    let mut action = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            action.push(SparseMatrix::from_triplets(n, n, [(a, b, q(1)), (b, a, q(-1))]));
        }
    }
    let basis = (0..n).map(|i| BasisElement::new(format!("v{}", i + 1), 0)).collect();
    Ok(ModuleData { basis, action, differential: None })
}
