//! Graded Lie algebras given by structure constants, their modules, and
//! Chevalley–Eilenberg complexes.

mod build;
mod ce;
mod file;
mod roots;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use build::{
    adjoint_module, build_bf, build_dR, build_simple, build_so, killing_form, trivial_module, vector_module,
    SimpleType, DESK_SCALE_DIM,
};
pub use ce::{ce_cohomology, ce_complex, local_functional_dims, CeAlgebra, CeOptions};
pub use file::{parse_lie_file, LieFile};

use crate::linalg::{normalize, SparseMatrix, SparseVec};
use crate::{Error, Matrix, Rational};

/// A named basis vector of a graded vector space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Self { name: name.into(), degree }
    }
}

/// An invariant bilinear form `⟨x_i, x_j⟩ = matrix[i][j]`, nonzero only when
/// `|x_i| + |x_j| = -degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing {
    pub degree: i64,
    pub matrix: Matrix,
}

/// A graded Lie algebra with optional differential and invariant pairing.
///
/// Brackets are stored for every ordered pair; the constructor fills
/// `[x_j, x_i] = -(-1)^{|x_i||x_j|} [x_i, x_j]` from the entries given for
/// `i ≤ j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedLieData {
    basis: Vec<BasisElement>,
    brackets: Vec<SparseVec<Rational>>,
    /// Column `i` is `d(x_i)`.
    differential: Option<Matrix>,
    pairing: Option<Pairing>,
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

impl GradedLieData {
    /// Build from brackets `[x_i, x_j]` given for `i ≤ j`. Duplicate entries
    /// for the same pair are summed.
    pub fn new<I>(basis: Vec<BasisElement>, brackets: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, SparseVec<Rational>)>,
    {
        let n = basis.len();
        let mut names = std::collections::HashSet::new();
        for b in &basis {
            if !names.insert(b.name.as_str()) {
                return Err(Error::InvalidLie(format!("duplicate basis name {:?}", b.name)));
            }
        }
        let mut table: Vec<SparseVec<Rational>> = vec![Vec::new(); n * n];
        for (i, j, terms) in brackets {
            if i >= n || j >= n || terms.iter().any(|(k, _)| *k >= n) {
                return Err(Error::InvalidLie(format!("bracket index out of range in [{i}, {j}]")));
            }
            if i > j {
                return Err(Error::InvalidLie(format!("bracket [{i}, {j}] must be given with i <= j")));
            }
            let want = basis[i].degree + basis[j].degree;
            if let Some((k, _)) = terms.iter().find(|(k, c)| !c.is_zero() && basis[*k].degree != want) {
                return Err(Error::InvalidLie(format!(
                    "[{}, {}] has a component along {} of degree {}, expected {want}",
                    basis[i].name, basis[j].name, basis[*k].name, basis[*k].degree
                )));
            }
            let slot = &mut table[i * n + j];
            slot.extend(terms);
            *slot = normalize(std::mem::take(slot));
        }
        for i in 0..n {
            for j in i..n {
                let s = -sign(odd(basis[i].degree) && odd(basis[j].degree));
                let mirrored: SparseVec<Rational> =
                    table[i * n + j].iter().map(|(k, c)| (*k, c * &s)).collect();
                if i == j {
                    if mirrored != table[i * n + i] {
                        return Err(Error::InvalidLie(format!(
                            "[{0}, {0}] must vanish for an even element",
                            basis[i].name
                        )));
                    }
                } else {
                    table[j * n + i] = mirrored;
                }
            }
        }
        Ok(Self { basis, brackets: table, differential: None, pairing: None })
    }

    /// Build from a full table of brackets (`table[i * dim + j] = [x_i, x_j]`)
    /// without filling or enforcing antisymmetry; see
    /// [`Self::check_antisymmetry`].
    pub fn from_full_table(basis: Vec<BasisElement>, table: Vec<SparseVec<Rational>>) -> Result<Self, Error> {
        if table.len() != basis.len() * basis.len() {
            return Err(Error::InvalidLie(format!("bracket table has {} entries for dim {}", table.len(), basis.len())));
        }
        let brackets = table.into_iter().map(normalize).collect();
        Ok(Self { basis, brackets, differential: None, pairing: None })
    }

    /// The abelian Lie algebra on the given basis.
    pub fn abelian(basis: Vec<BasisElement>) -> Self {
        let n = basis.len();
        Self { basis, brackets: vec![Vec::new(); n * n], differential: None, pairing: None }
    }

    /// Attach a differential (column `i` is `d(x_i)`), checked by [`Self::validate`].
    pub fn with_differential(mut self, d: Matrix) -> Result<Self, Error> {
        if d.rows() != self.dim() || d.cols() != self.dim() {
            return Err(Error::InvalidLie(format!("differential must be {0}x{0}", self.dim())));
        }
        self.differential = Some(d);
        Ok(self)
    }

    pub fn with_pairing(mut self, pairing: Pairing) -> Result<Self, Error> {
        if pairing.matrix.rows() != self.dim() || pairing.matrix.cols() != self.dim() {
            return Err(Error::InvalidLie(format!("pairing must be {0}x{0}", self.dim())));
        }
        self.pairing = Some(pairing);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn differential(&self) -> Option<&Matrix> {
        self.differential.as_ref()
    }

    pub fn pairing(&self) -> Option<&Pairing> {
        self.pairing.as_ref()
    }

    /// Whether every basis element has degree zero and there is no differential.
    pub fn is_ordinary(&self) -> bool {
        self.differential.is_none() && self.basis.iter().all(|b| b.degree == 0)
    }

    /// `[x_i, x_j]` as a sparse vector.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i * self.dim() + j]
    }

    /// Bracket of two vectors, assumed homogeneous or at least with the sign
    /// rule applied per basis pair.
    pub fn bracket_vectors(&self, u: &[(usize, Rational)], v: &[(usize, Rational)]) -> SparseVec<Rational> {
        let mut acc = Vec::new();
        for (i, a) in u {
            for (j, b) in v {
                for (k, c) in self.bracket(*i, *j) {
                    acc.push((*k, a * b * c));
                }
            }
        }
        normalize(acc)
    }

    fn d_of(&self, i: usize) -> SparseVec<Rational> {
        self.differential.as_ref().map(|d| d.column(i).to_vec()).unwrap_or_default()
    }

    fn d_vector(&self, v: &[(usize, Rational)]) -> SparseVec<Rational> {
        match &self.differential {
            Some(d) => d.apply(v),
            None => Vec::new(),
        }
    }

    /// Check `[x_j, x_i] = -(-1)^{|x_i||x_j|} [x_i, x_j]` for all pairs.
    pub fn check_antisymmetry(&self) -> Result<(), (usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let s = -sign(odd(self.degree(i)) && odd(self.degree(j)));
                let mirrored: SparseVec<Rational> = self.bracket(i, j).iter().map(|(k, c)| (*k, c * &s)).collect();
                if mirrored != self.bracket(j, i) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// Check the graded Jacobi identity
    /// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]` on all basis
    /// triples; on failure returns the first failing triple.
    pub fn check_jacobi(&self) -> Result<(), (usize, usize, usize)> {
        let n = self.dim();
        let unit = |i: usize| vec![(i, Rational::one())];
        for x in 0..n {
            for y in 0..n {
                let xy = self.bracket(x, y).to_vec();
                for z in 0..n {
                    let lhs = self.bracket_vectors(&unit(x), self.bracket(y, z));
                    let mut rhs = self.bracket_vectors(&xy, &unit(z));
                    let s = sign(odd(self.degree(x)) && odd(self.degree(y)));
                    for (k, c) in self.bracket_vectors(&unit(y), self.bracket(x, z)) {
                        rhs.push((k, c * &s));
                    }
                    if lhs != normalize(rhs) {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Check `d² = 0`, `|d| = 1` and `d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]`.
    pub fn check_differential(&self) -> Result<(), Error> {
        let Some(d) = &self.differential else {
            return Ok(());
        };
        let n = self.dim();
        for (r, c, _) in d.entries() {
            if self.degree(r) != self.degree(c) + 1 {
                return Err(Error::InvalidLie(format!(
                    "d({}) has a component along {} of the wrong degree",
                    self.basis[c].name, self.basis[r].name
                )));
            }
        }
        if !d.mul(d).is_zero() {
            return Err(Error::InvalidLie("differential does not square to zero".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = self.d_vector(self.bracket(x, y));
                let unit_x = vec![(x, Rational::one())];
                let unit_y = vec![(y, Rational::one())];
                let mut rhs = self.bracket_vectors(&self.d_of(x), &unit_y);
                let s = sign(odd(self.degree(x)));
                for (k, c) in self.bracket_vectors(&unit_x, &self.d_of(y)) {
                    rhs.push((k, c * &s));
                }
                if lhs != normalize(rhs) {
                    return Err(Error::InvalidLie(format!(
                        "differential is not a derivation of [{}, {}]",
                        self.basis[x].name, self.basis[y].name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Check that the pairing has the declared degree, is nondegenerate and
    /// satisfies `⟨[x,y],z⟩ = ⟨x,[y,z]⟩`.
    pub fn check_pairing(&self) -> Result<(), Error> {
        let Some(p) = &self.pairing else {
            return Ok(());
        };
        let n = self.dim();
        for (r, c, _) in p.matrix.entries() {
            if self.degree(r) + self.degree(c) != -p.degree {
                return Err(Error::InvalidLie(format!(
                    "pairing of {} with {} violates degree {}",
                    self.basis[r].name, self.basis[c].name, p.degree
                )));
            }
        }
        if crate::linalg::rank(&p.matrix) != n {
            return Err(Error::InvalidLie("pairing is degenerate".into()));
        }
        let form = |u: &[(usize, Rational)], v: &[(usize, Rational)]| -> Rational {
            let mut s = Rational::zero();
            for (i, a) in u {
                for (j, b) in v {
                    s += a * b * p.matrix.get(*i, *j);
                }
            }
            s
        };
        for x in 0..n {
            for y in 0..n {
                let xy = self.bracket(x, y);
                for z in 0..n {
                    let lhs = form(xy, &[(z, Rational::one())]);
                    let rhs = form(&[(x, Rational::one())], self.bracket(y, z));
                    if lhs != rhs {
                        return Err(Error::InvalidLie(format!(
                            "pairing is not invariant on ({}, {}, {})",
                            self.basis[x].name, self.basis[y].name, self.basis[z].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Run every structural check.
    pub fn validate(&self) -> Result<(), Error> {
        if let Err((i, j)) = self.check_antisymmetry() {
            return Err(Error::InvalidLie(format!(
                "brackets of {} and {} are not graded antisymmetric",
                self.basis[i].name, self.basis[j].name
            )));
        }
        if let Err((x, y, z)) = self.check_jacobi() {
            return Err(Error::InvalidLie(format!(
                "Jacobi identity fails on ({}, {}, {})",
                self.basis[x].name, self.basis[y].name, self.basis[z].name
            )));
        }
        self.check_differential()?;
        self.check_pairing()
    }
}

/// A graded module over a graded Lie algebra: `action[i]` is the matrix of
/// `x_i`, optionally with an internal differential.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleData {
    pub basis: Vec<BasisElement>,
    pub action: Vec<Matrix>,
    pub differential: Option<Matrix>,
}

impl ModuleData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether this is the one-dimensional trivial module in degree zero.
    pub fn is_trivial(&self) -> bool {
        self.dim() == 1 && self.basis[0].degree == 0 && self.action.iter().all(SparseMatrix::is_zero)
            && self.differential.as_ref().is_none_or(SparseMatrix::is_zero)
    }

    /// Check degrees, `ρ([x_i,x_j]) = ρ_i ρ_j − (−1)^{|i||j|} ρ_j ρ_i` and
    /// compatibility with the differentials.
    pub fn validate(&self, g: &GradedLieData) -> Result<(), Error> {
        let n = g.dim();
        let m = self.dim();
        if self.action.len() != n {
            return Err(Error::InvalidLie(format!("module gives {} action matrices for dim {n}", self.action.len())));
        }
        for (i, a) in self.action.iter().enumerate() {
            if a.rows() != m || a.cols() != m {
                return Err(Error::InvalidLie(format!("action of {} is not {m}x{m}", g.basis[i].name)));
            }
            for (r, c, _) in a.entries() {
                if self.basis[r].degree != self.basis[c].degree + g.degree(i) {
                    return Err(Error::InvalidLie(format!("action of {} has the wrong degree", g.basis[i].name)));
                }
            }
        }
        let combo = |v: &[(usize, Rational)]| -> Matrix {
            let mut acc = SparseMatrix::zeros(m, m);
            for (k, c) in v {
                for (r, cc, x) in self.action[*k].entries() {
                    acc.add_to(r, cc, x * c);
                }
            }
            acc
        };
        let minus = |a: &Matrix, b: &Matrix| -> Matrix {
            let mut out = a.clone();
            for (r, c, x) in b.entries() {
                out.add_to(r, c, -x.clone());
            }
            out
        };
        for i in 0..n {
            for j in 0..n {
                let s = sign(odd(g.degree(i)) && odd(g.degree(j)));
                let lhs = combo(g.bracket(i, j));
                let rhs = minus(
                    &self.action[i].mul(&self.action[j]),
                    &self.action[j].mul(&self.action[i]).scaled(&s),
                );
                if lhs != rhs {
                    return Err(Error::InvalidLie(format!(
                        "module action is not a homomorphism on ({}, {})",
                        g.basis[i].name, g.basis[j].name
                    )));
                }
            }
        }
        let dv = self.differential.clone().unwrap_or_else(|| SparseMatrix::zeros(m, m));
        if !dv.mul(&dv).is_zero() {
            return Err(Error::InvalidLie("module differential does not square to zero".into()));
        }
        for i in 0..n {
            // d_V ρ_i − (−1)^{|i|} ρ_i d_V = ρ(d x_i)
            let s = sign(odd(g.degree(i)));
            let lhs = minus(&dv.mul(&self.action[i]), &self.action[i].mul(&dv).scaled(&s));
            if lhs != combo(&g.d_of(i)) {
                return Err(Error::InvalidLie(format!(
                    "module differential is incompatible with {}",
                    g.basis[i].name
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn antisymmetry_is_filled_in() {
        let basis = vec![BasisElement::new("a", 0), BasisElement::new("b", 0), BasisElement::new("c", 0)];
        let g = GradedLieData::new(basis, [(0, 1, vec![(2, q(1))])]).unwrap();
        assert_eq!(g.bracket(1, 0), &[(2, q(-1))]);
        assert!(g.check_jacobi().is_ok());
    }

    #[test]
    fn odd_elements_may_have_nonzero_squares() {
        let basis = vec![BasisElement::new("x", 1), BasisElement::new("y", 2)];
        let g = GradedLieData::new(basis, [(0, 0, vec![(1, q(1))])]).unwrap();
        assert_eq!(g.bracket(0, 0), &[(1, q(1))]);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn even_squares_are_rejected() {
        let basis = vec![BasisElement::new("x", 0)];
        assert!(GradedLieData::new(basis, [(0, 0, vec![(0, q(1))])]).is_err());
    }

    #[test]
    fn degree_violations_are_rejected() {
        let basis = vec![BasisElement::new("x", 0), BasisElement::new("y", 1), BasisElement::new("z", 0)];
        assert!(GradedLieData::new(basis, [(0, 1, vec![(2, q(1))])]).is_err());
    }

    #[test]
    fn sign_flipped_so3_fails_jacobi() {
        let g = build_so(3).unwrap();
        assert!(g.check_jacobi().is_ok());
        let mut table: Vec<SparseVec<Rational>> =
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| g.bracket(i, j).to_vec()).collect();
        table[1] = table[1].iter().map(|(k, c)| (*k, -c.clone())).collect();
        let h = GradedLieData::from_full_table(g.basis().to_vec(), table).unwrap();
        assert!(h.check_jacobi().is_err());
        assert!(h.validate().is_err());
    }

    #[test]
    fn antisymmetric_sign_flip_of_so3_is_still_a_lie_algebra() {
        // [e1, e2] = -e3 with the other brackets unchanged is so(2,1).
        let g = build_so(3).unwrap();
        let entries = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).map(|(i, j)| {
            let t = g.bracket(i, j).to_vec();
            (i, j, if (i, j) == (0, 1) { t.into_iter().map(|(k, c)| (k, -c)).collect() } else { t })
        });
        let h = GradedLieData::new(g.basis().to_vec(), entries.collect::<Vec<_>>()).unwrap();
        assert!(h.check_jacobi().is_ok());
    }
}
