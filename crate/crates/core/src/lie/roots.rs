//! Split simple Lie algebras from root data.
//!
//! Simply-laced types (A, D, E) use the Frenkel–Kac construction: basis
//! `h_i` plus one `e_α` per root, with
//! `[e_α, e_β] = ε(α,β) e_{α+β}` when `α+β` is a root, `[e_α, e_{−α}] = −h_α`,
//! and `ε` the bimultiplicative sign with `ε(α_i, α_j) = −1` iff `i = j`, or
//! `i < j` and the nodes are joined. The other types are fixed-point
//! subalgebras of a diagram automorphism (folding): `B_n ⊂ D_{n+1}`,
//! `C_n ⊂ A_{2n−1}`, `F_4 ⊂ E_6`, `G_2 ⊂ D_4`.

use std::collections::HashMap;

use num_traits::One;

use super::{BasisElement, GradedLieData};
use crate::linalg::{normalize, SparseVec};
use crate::{Error, Rational};

type Root = Vec<i32>;

/// Symmetric Cartan matrix of a simply-laced diagram given by its edges.
fn cartan(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i32>> {
    let mut c = vec![vec![0; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        c[i][j] = -1;
        c[j][i] = -1;
    }
    c
}

pub(super) fn edges_a(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

pub(super) fn edges_d(n: usize) -> Vec<(usize, usize)> {
    // chain 0 .. n-2, node n-1 attached to n-3
    let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    if n >= 3 {
        e.push((n - 3, n - 1));
    }
    e
}

pub(super) fn edges_e(n: usize) -> Vec<(usize, usize)> {
    // Bourbaki labels 1..n shifted to 0-based: 1-3-4-5-..., 2-4
    let mut e = vec![(0, 2), (1, 3)];
    e.extend((3..n).map(|i| (i - 1, i)));
    e
}

struct RootSystem {
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    /// For a non-simple positive root: `(parent, i)` with root = parent + α_i.
    parent: HashMap<Root, (Root, usize)>,
}

impl RootSystem {
    fn new(rank: usize, edges: &[(usize, usize)]) -> Self {
        let cartan = cartan(rank, edges);
        let mut positive: Vec<Root> = (0..rank).map(|i| unit(rank, i)).collect();
        let mut parent = HashMap::new();
        let mut k = 0;
        while k < positive.len() {
            let beta = positive[k].clone();
            for i in 0..rank {
                if form(&cartan, &beta, &unit(rank, i)) == -1 {
                    let mut next = beta.clone();
                    next[i] += 1;
                    if !parent.contains_key(&next) {
                        parent.insert(next.clone(), (beta.clone(), i));
                        positive.push(next);
                    }
                }
            }
            k += 1;
        }
        positive.sort_by_key(|r| (r.iter().sum::<i32>(), std::cmp::Reverse(r.clone())));
        Self { cartan, positive, parent }
    }

    fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `ε(α, β) ∈ {±1}` as a boolean "is negative".
    fn epsilon_negative(&self, a: &[i32], b: &[i32]) -> bool {
        let mut parity = 0i64;
        for i in 0..self.rank() {
            for j in i..self.rank() {
                if i == j || self.cartan[i][j] == -1 {
                    parity += i64::from(a[i]) * i64::from(b[j]);
                }
            }
        }
        parity.rem_euclid(2) == 1
    }
}

fn unit(rank: usize, i: usize) -> Root {
    let mut r = vec![0; rank];
    r[i] = 1;
    r
}

fn form(c: &[Vec<i32>], a: &[i32], b: &[i32]) -> i32 {
    let mut s = 0;
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += a[i] * c[i][j] * b[j];
        }
    }
    s
}

fn root_name(r: &[i32]) -> String {
    let sign = if r.iter().any(|x| *x < 0) { '-' } else { '+' };
    let digits: String = r.iter().map(|x| char::from_digit(x.unsigned_abs(), 10).unwrap_or('?')).collect();
    format!("e{sign}{digits}")
}

/// A Lie algebra in the Frenkel–Kac basis together with the data needed to
/// lift diagram automorphisms.
pub(super) struct SimplyLaced {
    roots: RootSystem,
    /// Basis index of each root vector.
    index: HashMap<Root, usize>,
    pub(super) lie: GradedLieData,
}

impl SimplyLaced {
    pub(super) fn new(rank: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let roots = RootSystem::new(rank, edges);
        let mut basis: Vec<BasisElement> = (0..rank).map(|i| BasisElement::new(format!("h{}", i + 1), 0)).collect();
        let mut all: Vec<Root> = roots.positive.clone();
        all.extend(roots.positive.iter().map(|r| r.iter().map(|x| -x).collect::<Root>()));
        let mut index = HashMap::new();
        for r in &all {
            index.insert(r.clone(), basis.len());
            basis.push(BasisElement::new(root_name(r), 0));
        }
        let n = basis.len();
        let root_of = |k: usize| -> &Root { &all[k - rank] };
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let terms: SparseVec<Rational> = match (a < rank, b < rank) {
                    (true, true) => Vec::new(),
                    (true, false) => {
                        let v = form(&roots.cartan, &unit(rank, a), root_of(b));
                        vec![(b, Rational::from_integer(v.into()))]
                    }
                    (false, true) => unreachable!("a < b"),
                    (false, false) => {
                        let (x, y) = (root_of(a), root_of(b));
                        let s: Root = x.iter().zip(y).map(|(p, q)| p + q).collect();
                        let eps = if roots.epsilon_negative(x, y) { -Rational::one() } else { Rational::one() };
                        if s.iter().all(|c| *c == 0) {
                            // [e_α, e_{−α}] = ε(α, −α) h_α = −h_α
                            x.iter()
                                .enumerate()
                                .map(|(i, c)| (i, Rational::from_integer((*c).into()) * &eps))
                                .collect()
                        } else if let Some(&k) = index.get(&s) {
                            vec![(k, eps)]
                        } else {
                            Vec::new()
                        }
                    }
                };
                entries.push((a, b, normalize(terms)));
            }
        }
        let lie = GradedLieData::new(basis, entries)?;
        Ok(Self { roots, index, lie })
    }

    /// Matrix of the automorphism lifting the node permutation `perm`, as a
    /// map from basis index to sparse image vector. Built from
    /// `e_i ↦ e_{σi}`, `e_{−α_i} ↦ e_{−α_{σi}}`, `h_i ↦ h_{σi}` and
    /// extended along the root-building brackets.
    fn automorphism(&self, perm: &[usize]) -> Vec<SparseVec<Rational>> {
        let rank = self.roots.rank();
        let n = self.lie.dim();
        let mut image: Vec<Option<SparseVec<Rational>>> = vec![None; n];
        for i in 0..rank {
            image[i] = Some(vec![(perm[i], Rational::one())]);
            let pos = unit(rank, i);
            let neg: Root = pos.iter().map(|x| -x).collect();
            image[self.index[&pos]] = Some(vec![(self.index[&unit(rank, perm[i])], Rational::one())]);
            let neg_img: Root = unit(rank, perm[i]).iter().map(|x| -x).collect();
            image[self.index[&neg]] = Some(vec![(self.index[&neg_img], Rational::one())]);
        }
        // positive roots are sorted by height, so parents come first
        for beta in &self.roots.positive {
            if let Some((parent, i)) = self.roots.parent.get(beta) {
                for sgn in [1, -1] {
                    let b: Root = beta.iter().map(|x| sgn * x).collect();
                    let p: Root = parent.iter().map(|x| sgn * x).collect();
                    let ai: Root = unit(rank, *i).iter().map(|x| sgn * x).collect();
                    // [e_{α_i}, e_p] = ε(α_i, p) e_b
                    let eps = if self.roots.epsilon_negative(&ai, &p) { -Rational::one() } else { Rational::one() };
                    let x = image[self.index[&ai]].clone().unwrap();
                    let y = image[self.index[&p]].clone().unwrap();
                    let v = self.lie.bracket_vectors(&x, &y).into_iter().map(|(k, c)| (k, c * &eps)).collect();
                    image[self.index[&b]] = Some(v);
                }
            }
        }
        image.into_iter().map(Option::unwrap).collect()
    }

    /// Fixed-point subalgebra of the automorphism lifting `perm` (of order
    /// `order`), with basis `Σ_k σ^k(b)` over orbit representatives `b`.
    pub(super) fn fold(&self, perm: &[usize], order: usize) -> Result<GradedLieData, Error> {
        let sigma = self.automorphism(perm);
        let n = self.lie.dim();
        let apply = |v: &SparseVec<Rational>| -> SparseVec<Rational> {
            let mut acc = Vec::new();
            for (k, c) in v {
                for (r, x) in &sigma[*k] {
                    acc.push((*r, x * c));
                }
            }
            normalize(acc)
        };
        let mut seen = vec![false; n];
        let mut vectors: Vec<(usize, SparseVec<Rational>)> = Vec::new();
        for b in 0..n {
            if seen[b] {
                continue;
            }
            let mut acc = Vec::new();
            let mut cur = vec![(b, Rational::one())];
            for _ in 0..order {
                for (k, _) in &cur {
                    seen[*k] = true;
                }
                acc.extend(cur.iter().cloned());
                cur = apply(&cur);
            }
            debug_assert_eq!(cur, vec![(b, Rational::one())], "automorphism order mismatch");
            let v = normalize(acc);
            if !v.is_empty() {
                vectors.push((b, v));
            }
        }
        let m = vectors.len();
        let pivot: HashMap<usize, (usize, Rational)> = vectors
            .iter()
            .enumerate()
            .map(|(c, (b, v))| (*b, (c, v.iter().find(|(k, _)| k == b).unwrap().1.clone())))
            .collect();
        let basis: Vec<BasisElement> =
            vectors.iter().map(|(b, _)| BasisElement::new(self.lie.basis()[*b].name.clone(), 0)).collect();
        let mut entries = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let br = self.lie.bracket_vectors(&vectors[a].1, &vectors[b].1);
                let mut coords = Vec::new();
                for (k, c) in &br {
                    if let Some((col, lead)) = pivot.get(k) {
                        coords.push((*col, c / lead));
                    }
                }
                // reconstruct to make sure the bracket lies in the span
                let mut back = Vec::new();
                for (col, c) in &coords {
                    back.extend(vectors[*col].1.iter().map(|(k, x)| (*k, x * c)));
                }
                if normalize(back) != br {
                    return Err(Error::InvalidLie("folded bracket leaves the fixed subalgebra".into()));
                }
                entries.push((a, b, coords));
            }
        }
        GradedLieData::new(basis, entries)
    }

    #[cfg(test)]
    fn is_automorphism(&self, perm: &[usize]) -> bool {
        let sigma = self.automorphism(perm);
        let n = self.lie.dim();
        let apply = |v: &[(usize, Rational)]| -> SparseVec<Rational> {
            let mut acc = Vec::new();
            for (k, c) in v {
                for (r, x) in &sigma[*k] {
                    acc.push((*r, x * c));
                }
            }
            normalize(acc)
        };
        (0..n).all(|a| {
            (0..n).all(|b| {
                apply(self.lie.bracket(a, b)) == self.lie.bracket_vectors(&sigma[a], &sigma[b])
            })
        })
    }
}
