//! Closed-form cohomology rings: `H•(so(n))`, `H•(BSO(n))` and the cohomology
//! of simple Lie algebras via their exponents.
//!
//! For `n = 2k + 1`, `H•(so(n)) = Λ[η_1, …, η_k]` with `|η_j| = 4j − 1` and
//! `H•(BSO(n)) = Q[p_1, …, p_k]` with `|p_j| = 4j`. For `n = 2k` the top pair
//! is replaced by the Pfaffian `p′_k` in degree `n` and its partner `η′_k`
//! in degree `n − 1`. Each `η` sits one degree below its `p`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::gca::{Algebra, AlgebraHandle, BasisSpec, GeneratorSpec};
use crate::graded::GradedDims;
use crate::lie::SimpleType;
use crate::Error;

/// Where a catalog generator comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Transgression class `η_j` of `so(n)`.
    Eta(u32),
    /// Pontryagin class `p_j`.
    Pontryagin(u32),
    /// The Pfaffian (Euler class) `p′_k` for `n = 2k`.
    Pfaffian,
    /// Its partner `η′_k` in `H•(so(2k))`.
    PfaffianPartner,
    /// Primitive generator of degree `2m + 1` for exponent `m`.
    Exponent(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogGenerator {
    pub spec: GeneratorSpec,
    pub provenance: Provenance,
}

/// A free graded-commutative ring: exterior on odd generators, polynomial on
/// even ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPresentation {
    pub title: String,
    pub generators: Vec<CatalogGenerator>,
}

impl RingPresentation {
    pub fn degrees(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.spec.degree).collect()
    }

    pub fn algebra(&self) -> Result<AlgebraHandle, Error> {
        Algebra::new(self.generators.iter().map(|g| g.spec.clone()).collect())
    }

    /// Compact description such as `Λ[η₁@3, η₂@7]`.
    pub fn describe(&self) -> String {
        let ext: Vec<String> = self
            .generators
            .iter()
            .filter(|g| g.spec.is_odd())
            .map(|g| format!("{}@{}", g.spec.name, g.spec.degree))
            .collect();
        let poly: Vec<String> = self
            .generators
            .iter()
            .filter(|g| !g.spec.is_odd())
            .map(|g| format!("{}@{}", g.spec.name, g.spec.degree))
            .collect();
        match (ext.is_empty(), poly.is_empty()) {
            (_, true) => format!("Λ[{}]", ext.join(", ")),
            (true, false) => format!("Q[{}]", poly.join(", ")),
            (false, false) => format!("Λ[{}] ⊗ Q[{}]", ext.join(", "), poly.join(", ")),
        }
    }
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn subscript(n: u32) -> String {
    n.to_string().chars().map(|c| SUBSCRIPTS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Generator names for `so(n)`/`BSO(n)`. Indices are dropped when there is
/// only one class of each kind (`η, p` for n = 3; `η, η′, p, p′` for n = 4).
fn names(n: usize) -> (Vec<(String, String, u32)>, Option<(String, String)>) {
    let k = (n / 2) as u32;
    let ordinary = if n % 2 == 1 { k } else { k - 1 };
    let plain = ordinary <= 1;
    let pairs = (1..=ordinary)
        .map(|j| {
            if plain {
                ("η".to_string(), "p".to_string(), j)
            } else {
                (format!("η{}", subscript(j)), format!("p{}", subscript(j)), j)
            }
        })
        .collect();
    let pfaffian = (n % 2 == 0).then(|| {
        if plain {
            ("η′".to_string(), "p′".to_string())
        } else {
            (format!("η′{}", subscript(k)), format!("p′{}", subscript(k)))
        }
    });
    (pairs, pfaffian)
}

fn check_n(n: usize) -> Result<(), Error> {
    if n < 2 {
        Err(Error::InvalidDimension(format!("need n >= 2, got {n}")))
    } else {
        Ok(())
    }
}

/// `H•(so(n))`.
pub fn h_so(n: usize) -> Result<RingPresentation, Error> {
    check_n(n)?;
    let (pairs, pf) = names(n);
    let mut generators: Vec<CatalogGenerator> = pairs
        .into_iter()
        .map(|(eta, _, j)| CatalogGenerator {
            spec: GeneratorSpec::new(eta, 4 * i64::from(j) - 1),
            provenance: Provenance::Eta(j),
        })
        .collect();
    if let Some((eta, _)) = pf {
        generators.push(CatalogGenerator {
            spec: GeneratorSpec::new(eta, n as i64 - 1),
            provenance: Provenance::PfaffianPartner,
        });
    }
    Ok(RingPresentation { title: format!("H(so({n}))"), generators })
}

/// `H•(BSO(n))`.
pub fn h_bso(n: usize) -> Result<RingPresentation, Error> {
    check_n(n)?;
    let (pairs, pf) = names(n);
    let mut generators: Vec<CatalogGenerator> = pairs
        .into_iter()
        .map(|(_, p, j)| CatalogGenerator {
            spec: GeneratorSpec::new(p, 4 * i64::from(j)),
            provenance: Provenance::Pontryagin(j),
        })
        .collect();
    if let Some((_, p)) = pf {
        generators.push(CatalogGenerator { spec: GeneratorSpec::new(p, n as i64), provenance: Provenance::Pfaffian });
    }
    Ok(RingPresentation { title: format!("H(BSO({n}))"), generators })
}

/// Exponents of the simple Lie algebra of the given type (Bourbaki, Planches;
/// equivalently the degrees of the basic invariants minus one).
pub fn exponents(ty: SimpleType, rank: usize) -> Result<Vec<u32>, Error> {
    ty.check(rank)?;
    let r = rank as u32;
    Ok(match ty {
        // A_n: 1, 2, …, n
        SimpleType::A => (1..=r).collect(),
        // B_n, C_n: 1, 3, …, 2n − 1
        SimpleType::B | SimpleType::C => (1..=r).map(|i| 2 * i - 1).collect(),
        // D_n: 1, 3, …, 2n − 3 and n − 1
        SimpleType::D => {
            let mut e: Vec<u32> = (1..r).map(|i| 2 * i - 1).collect();
            e.push(r - 1);
            e.sort_unstable();
            e
        }
        SimpleType::E => match r {
            6 => vec![1, 4, 5, 7, 8, 11],
            7 => vec![1, 5, 7, 9, 11, 13, 17],
            _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
        },
        SimpleType::F => vec![1, 5, 7, 11],
        SimpleType::G => vec![1, 5],
    })
}

/// `H•(𝔤)` for simple `𝔤`: exterior on generators of degree `2m + 1`.
pub fn h_simple(ty: SimpleType, rank: usize) -> Result<RingPresentation, Error> {
    let exps = exponents(ty, rank)?;
    let generators = exps
        .iter()
        .enumerate()
        .map(|(i, m)| CatalogGenerator {
            spec: GeneratorSpec::new(format!("x{}", i + 1), 2 * i64::from(*m) + 1),
            provenance: Provenance::Exponent(*m),
        })
        .collect();
    Ok(RingPresentation { title: format!("H({ty}{rank})"), generators })
}

/// Dimension per degree of the free graded-commutative algebra on the
/// presentation's generators over `window`; `reduced` drops the unit.
pub fn betti(pres: &RingPresentation, window: RangeInclusive<i64>, reduced: bool) -> Result<GradedDims, Error> {
    let alg = pres.algebra()?;
    let spec = BasisSpec::default();
    let mut out = GradedDims::new();
    for d in window {
        let mut k = alg.basis_in_degree(d, &spec)?.len();
        if reduced && d == 0 && k > 0 {
            k -= 1;
        }
        out.set(d, k);
    }
    Ok(out)
}

/// Betti numbers of an exterior presentation over its whole range.
pub fn betti_exterior(pres: &RingPresentation, reduced: bool) -> Result<GradedDims, Error> {
    if let Some(g) = pres.generators.iter().find(|g| !g.spec.is_odd()) {
        return Err(Error::Invalid(format!("{} is not exterior: {} is even", pres.title, g.spec.name)));
    }
    let top: i64 = pres.degrees().iter().sum();
    betti(pres, 0..=top, reduced)
}
