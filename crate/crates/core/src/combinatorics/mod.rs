//! Exact counts behind the motionless-element lemma.
//!
//! All counts are arbitrary-precision integers. Real-valued shares are
//! formed as exact rationals and only converted to `f64` at the end, so the
//! rounding error of every returned share is at most half an ulp.

mod union;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutations;

pub use union::{
    union_cardinality_direct, union_cardinality_inclusion_exclusion, union_cardinality_recursive,
    SetFamily,
};

/// Largest `m` accepted by the closed-form paths.
pub const MAX_CLOSED_FORM: usize = 500;
/// Largest family size accepted by the subset-sum and recursive union paths.
pub const MAX_INCLUSION_EXCLUSION: usize = 20;
/// Largest `m` accepted by exhaustive enumeration (8! = 40320 permutations).
pub const MAX_BRUTE_FORCE: usize = 8;

/// μ = 1 − 1/e, correctly rounded to `f64`.
pub const MU: f64 = 0.632_120_558_828_557_7;

/// A non-negative integer count of unbounded size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactCount(BigUint);

impl ExactCount {
    pub fn new(value: BigUint) -> Self {
        Self(value)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    /// The value as a `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl From<BigUint> for ExactCount {
    fn from(v: BigUint) -> Self {
        Self(v)
    }
}

impl PartialEq<u64> for ExactCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

fn check_closed_form(m: usize) -> Result<()> {
    if m > MAX_CLOSED_FORM {
        Err(Error::TooLarge {
            m,
            max: MAX_CLOSED_FORM,
        })
    } else {
        Ok(())
    }
}

fn check_positive(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::ZeroSize)
    } else {
        check_closed_form(m)
    }
}

fn factorial_big(m: usize) -> BigUint {
    (2..=m as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `m!`, exact.
pub fn factorial(m: usize) -> Result<ExactCount> {
    check_closed_form(m)?;
    Ok(ExactCount(factorial_big(m)))
}

/// The binomial coefficient `m! / (k! (m − k)!)`, exact.
pub fn binomial(m: usize, k: usize) -> Result<ExactCount> {
    check_closed_form(m)?;
    if k > m {
        return Err(Error::SubsetTooLarge { k, m });
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    // acc = C(m - k + i, i) after step i, so every division is exact.
    for i in 1..=k as u64 {
        acc *= (m - k) as u64 + i;
        acc /= i;
    }
    Ok(ExactCount(acc))
}

/// Number of summands in the inclusion–exclusion expansion over `m` sets,
/// `2^m − 1`.
pub fn inclusion_exclusion_term_count(m: usize) -> Result<ExactCount> {
    if m == 0 {
        return Err(Error::ZeroSize);
    }
    Ok(ExactCount((BigUint::one() << m) - 1u32))
}

/// Permutations of `m` elements that keep `k` designated positions in place:
/// `(m − k)!`.
pub fn count_permutations_fixing(m: usize, k: usize) -> Result<ExactCount> {
    check_positive(m)?;
    if k > m {
        return Err(Error::SubsetTooLarge { k, m });
    }
    Ok(ExactCount(factorial_big(m - k)))
}

/// N_m, the number of permutations of `m` elements with at least one fixed
/// point, evaluated as `m!/1! − m!/2! + … + (−1)^{m+1} m!/m!`.
pub fn fixed_point_permutation_count(m: usize) -> Result<ExactCount> {
    check_positive(m)?;
    Ok(ExactCount(fixed_point_count_big(m)))
}

fn fixed_point_count_big(m: usize) -> BigUint {
    // Walk k from m down to 1 carrying m!/k!.
    let mut ratio = BigUint::one();
    let mut sum = BigInt::zero();
    for k in (1..=m).rev() {
        let term = BigInt::from(ratio.clone());
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        ratio *= k as u64;
    }
    sum.to_biguint()
        .expect("alternating sum of m!/k! is non-negative")
}

/// D_m, the number of derangements of `m` elements, by the recurrence
/// `D_m = (m − 1)(D_{m−1} + D_{m−2})` with `D_0 = 1`, `D_1 = 0`.
///
/// Kept as an oracle independent of the alternating sum: N_m + D_m = m!.
pub fn derangement_count(m: usize) -> Result<ExactCount> {
    check_closed_form(m)?;
    let (mut prev, mut cur) = (BigUint::one(), BigUint::zero());
    if m == 0 {
        return Ok(ExactCount(prev));
    }
    for i in 2..=m as u64 {
        let next = (&prev + &cur) * (i - 1);
        prev = core::mem::replace(&mut cur, next);
    }
    Ok(ExactCount(cur))
}

/// Counts permutations of `m` elements with at least one fixed point by
/// visiting all `m!` of them.
pub fn brute_force_fixed_point_count(m: usize) -> Result<ExactCount> {
    if m == 0 {
        return Err(Error::ZeroSize);
    }
    if m > MAX_BRUTE_FORCE {
        return Err(Error::TooLarge {
            m,
            max: MAX_BRUTE_FORCE,
        });
    }
    let count = Permutations::new(m)
        .filter(|p| p.iter().enumerate().any(|(i, &v)| i == v))
        .count();
    Ok(ExactCount::from(count as u64))
}

fn ratio_to_f64(numer: BigUint, denom: BigUint) -> f64 {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
        .to_f64()
        .expect("ratio of finite integers converts to f64")
}

/// Ψ_m = N_m / m!, the share of permutations with a fixed point.
pub fn fixed_point_share(m: usize) -> Result<f64> {
    check_positive(m)?;
    Ok(ratio_to_f64(fixed_point_count_big(m), factorial_big(m)))
}

/// The alternating partial sum `Σ_{i=1..m} (−1)^{i+1} / i!`, summed term by
/// term in exact rationals.
pub fn partial_sum_s(m: usize) -> Result<f64> {
    check_positive(m)?;
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    for i in 1..=m {
        fact *= i as u64;
        let term = BigRational::new(BigInt::one(), fact.clone());
        if i % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum.to_f64().expect("partial sum lies in (0, 1]"))
}

/// The limiting share μ = 1 − 1/e.
pub fn mu() -> f64 {
    MU
}

/// The alternating-series remainder bound `1 / (m + 1)!`.
pub fn series_bound(m: usize) -> Result<f64> {
    check_closed_form(m)?;
    Ok(ratio_to_f64(BigUint::one(), factorial_big(m + 1)))
}

/// One row of the convergence table of Ψ_m towards μ.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub m: usize,
    pub factorial: ExactCount,
    pub n_fixed: ExactCount,
    pub share: f64,
    pub abs_error: f64,
    pub series_bound: f64,
}

impl ConvergenceRow {
    pub fn new(m: usize) -> Result<Self> {
        check_positive(m)?;
        let factorial = factorial_big(m);
        let n_fixed = fixed_point_count_big(m);
        let share = ratio_to_f64(n_fixed.clone(), factorial.clone());
        Ok(Self {
            m,
            factorial: ExactCount(factorial),
            n_fixed: ExactCount(n_fixed),
            share,
            abs_error: (share - MU).abs(),
            series_bound: series_bound(m)?,
        })
    }
}

/// Rows for `m = 1..=max_m`.
pub fn convergence_table(max_m: usize) -> Result<Vec<ConvergenceRow>> {
    check_positive(max_m)?;
    (1..=max_m).map(ConvergenceRow::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0).unwrap(), 1);
        assert_eq!(factorial(3).unwrap(), 6);
        assert_eq!(factorial(5).unwrap(), 120);
        assert!(factorial(500).is_ok());
        assert_eq!(factorial(501), Err(Error::TooLarge { m: 501, max: 500 }));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 0).unwrap(), 1);
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(10, 3).unwrap(), 120);
        assert_eq!(binomial(3, 4), Err(Error::SubsetTooLarge { k: 4, m: 3 }));
    }

    #[test]
    fn term_count_examples() {
        assert_eq!(inclusion_exclusion_term_count(1).unwrap(), 1);
        assert_eq!(inclusion_exclusion_term_count(2).unwrap(), 3);
        assert_eq!(
            inclusion_exclusion_term_count(40).unwrap(),
            1_099_511_627_775
        );
        assert_eq!(inclusion_exclusion_term_count(0), Err(Error::ZeroSize));
    }

    #[test]
    fn fixing_counts() {
        assert_eq!(count_permutations_fixing(3, 1).unwrap(), 2);
        assert_eq!(count_permutations_fixing(5, 5).unwrap(), 1);
        assert_eq!(count_permutations_fixing(4, 2).unwrap(), 2);
        assert!(count_permutations_fixing(2, 3).is_err());
    }

    #[test]
    fn fixed_point_counts() {
        assert_eq!(fixed_point_permutation_count(1).unwrap(), 1);
        assert_eq!(fixed_point_permutation_count(2).unwrap(), 1);
        assert_eq!(fixed_point_permutation_count(3).unwrap(), 4);
        assert_eq!(fixed_point_permutation_count(4).unwrap(), 15);
        assert_eq!(fixed_point_permutation_count(0), Err(Error::ZeroSize));
        assert!(fixed_point_permutation_count(501).is_err());
    }

    #[test]
    fn brute_force() {
        assert_eq!(brute_force_fixed_point_count(1).unwrap(), 1);
        assert_eq!(brute_force_fixed_point_count(3).unwrap(), 4);
        assert_eq!(brute_force_fixed_point_count(5).unwrap(), 76);
        assert_eq!(
            brute_force_fixed_point_count(9),
            Err(Error::TooLarge { m: 9, max: 8 })
        );
    }

    #[test]
    fn derangements_small() {
        let expected = [1u64, 0, 1, 2, 9, 44, 265];
        for (m, d) in expected.iter().enumerate() {
            assert_eq!(derangement_count(m).unwrap(), *d);
        }
    }

    #[test]
    fn shares() {
        assert_eq!(fixed_point_share(1).unwrap(), 1.0);
        assert_eq!(fixed_point_share(2).unwrap(), 0.5);
        assert_eq!(fixed_point_share(4).unwrap(), 0.625);
        assert_eq!(partial_sum_s(1).unwrap(), 1.0);
        assert_eq!(partial_sum_s(3).unwrap(), 2.0 / 3.0);
        assert!((partial_sum_s(20).unwrap() - mu()).abs() < 1e-12);
    }

    #[test]
    fn mu_bracketing() {
        assert!(mu() > 0.5 && mu() < 1.0);
        assert!((mu() - 0.6321).abs() < 5e-5);
        let bound = series_bound(12).unwrap();
        assert!((mu() - partial_sum_s(12).unwrap()).abs() < bound);
    }

    #[test]
    fn row_m10() {
        let row = ConvergenceRow::new(10).unwrap();
        assert_eq!(row.n_fixed, 2_293_839);
        assert_eq!(row.factorial, 3_628_800);
        assert!(row.abs_error <= row.series_bound);
        assert!((row.share - 0.6321).abs() < 5e-5);
    }
}
