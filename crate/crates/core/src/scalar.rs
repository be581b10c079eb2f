//! Scalar traits for the coefficient field.
//!
//! Everything above this module is written against [`Scalar`]. Rank and
//! cohomology additionally need [`ExactScalar`], which is only implemented for
//! ratios of integers: rank over a float field is not a well-defined notion.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedMul, CheckedSub, FromPrimitive, Num, Signed, Zero};

use crate::Error;

/// Field operations needed by the algebra and matrix layers.
pub trait Scalar:
    Num + Clone + Debug + Display + Send + Sync + std::ops::Neg<Output = Self> + 'static
{
    fn from_int(v: i64) -> Self;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T
where
    T: Num + Clone + Debug + Display + Send + Sync + std::ops::Neg<Output = T> + FromPrimitive + 'static,
{
    fn from_int(v: i64) -> Self {
        T::from_i64(v).expect("integer literal fits the scalar type")
    }
}

/// Integer types the fraction-free elimination can run over.
///
/// Arithmetic is checked: `None` from an elimination signals overflow and the
/// caller retries over [`BigInt`].
pub trait EliminationInt:
    Integer + Signed + Clone + Debug + CheckedMul + CheckedSub + Send + Sync + Into<BigInt>
{
    /// Rough cost of using this value as a pivot.
    fn magnitude(&self) -> u64;
}

impl EliminationInt for i64 {
    fn magnitude(&self) -> u64 {
        self.unsigned_abs()
    }
}

impl EliminationInt for i128 {
    fn magnitude(&self) -> u64 {
        u64::try_from(self.unsigned_abs()).unwrap_or(u64::MAX)
    }
}

impl EliminationInt for BigInt {
    fn magnitude(&self) -> u64 {
        if self.bits() < 64 {
            let (_, digits) = self.to_u64_digits();
            digits.first().copied().unwrap_or(0)
        } else {
            u64::MAX
        }
    }
}

/// Scalars that are exact ratios of integers.
pub trait ExactScalar: Scalar {
    type Int: EliminationInt;

    /// Scale a sparse row by a positive rational so that it becomes a
    /// primitive integer vector. Entries must be nonzero.
    fn primitive_row(row: &[(usize, Self)]) -> Vec<(usize, Self::Int)>;

    /// Small-integer view of a primitive row, if every entry fits in `i64`.
    fn narrow(row: &[(usize, Self::Int)]) -> Option<Vec<(usize, i64)>>;

    fn from_big(v: &BigInt) -> Self;
}

impl<I> ExactScalar for Ratio<I>
where
    I: EliminationInt + FromPrimitive + num_traits::ToPrimitive + Display + 'static,
    Ratio<I>: Scalar,
{
    type Int = I;

    fn primitive_row(row: &[(usize, Self)]) -> Vec<(usize, I)> {
        if row.is_empty() {
            return Vec::new();
        }
        let lcm = row.iter().fold(I::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let mut ints: Vec<(usize, I)> =
            row.iter().map(|(c, v)| (*c, v.numer().clone() * (lcm.clone() / v.denom().clone()))).collect();
        let g = ints.iter().fold(I::zero(), |acc, (_, v)| acc.gcd(v));
        if !g.is_one() && !g.is_zero() {
            for (_, v) in ints.iter_mut() {
                *v = v.clone() / g.clone();
            }
        }
        ints
    }

    fn narrow(row: &[(usize, I)]) -> Option<Vec<(usize, i64)>> {
        row.iter().map(|(c, v)| v.to_i64().map(|x| (*c, x))).collect()
    }

    fn from_big(v: &BigInt) -> Self {
        let s = v.to_string();
        let parsed = I::from_str_radix(&s, 10).unwrap_or_else(|_| panic!("integer {s} does not fit the scalar type"));
        Ratio::from_integer(parsed)
    }
}

/// Parse an exact rational written as `"p"` or `"p/q"`.
pub fn parse_rational<T: Scalar>(text: &str) -> Result<T, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(big_to_scalar::<T>(&num)? / big_to_scalar::<T>(&den)?)
}

fn big_to_scalar<T: Scalar>(v: &BigInt) -> Result<T, Error> {
    // Horner over chunks of nine decimal digits keeps this generic.
    let (sign, digits) = v.to_radix_be(10);
    let mut acc = T::zero();
    for chunk in digits.chunks(9) {
        let mut word = 0i64;
        let mut scale = 1i64;
        for d in chunk {
            word = word * 10 + i64::from(*d);
            scale *= 10;
        }
        acc = acc * T::from_int(scale) + T::from_int(word);
    }
    Ok(if sign == num_bigint::Sign::Minus { -acc } else { acc })
}

/// Render a rational as `"p"` or `"p/q"`.
pub fn format_rational<T: Scalar>(v: &T) -> String {
    v.to_string()
}
