//! Fractional Helly statistics of a set family: which fraction of the
//! k-member subfamilies share a point, how large the best-covered
//! subfamily is, and the optimal conversion between the two. All
//! quantities are exact rationals; the only rounding happens in the
//! conversion formula, at an explicit number of decimal places.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::pointset::k_subsets_colex;

/// Refuse to walk more subfamilies than this.
pub const SUBFAMILY_ENUM_CAP: u64 = 10_000_000;

/// Number of `k`-member subfamilies with a common point, together with
/// the total number of `k`-member subfamilies.
pub fn intersecting_k_subsets(family: &SetFamily, k: usize) -> Result<(BigUint, BigUint)> {
    let n = family.len();
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= {n}, got k = {k}"
        )));
    }
    let total = num_integer::binomial(BigUint::from(n), BigUint::from(k));
    if total > BigUint::from(SUBFAMILY_ENUM_CAP) {
        return Err(Error::CapExceeded {
            what: "subfamily enumeration",
            needed: total.to_usize().unwrap_or(usize::MAX),
            cap: SUBFAMILY_ENUM_CAP as usize,
        });
    }
    let all: Vec<usize> = (0..n).collect();
    let mut hits = BigUint::zero();
    for picked in k_subsets_colex(&all, k) {
        let mut meet = family.sets()[picked[0]].clone();
        for &i in &picked[1..] {
            meet.intersect_with(&family.sets()[i]);
            if meet.is_empty() {
                break;
            }
        }
        if !meet.is_empty() {
            hits += BigUint::one();
        }
    }
    Ok((hits, total))
}

/// Size of the largest subfamily with a common point, and the first
/// ground point realizing it. The size of a largest intersecting
/// subfamily equals the best point coverage, so this is a single sweep.
pub fn max_intersecting_subfamily(family: &SetFamily) -> Result<(usize, Option<usize>)> {
    if family.is_empty() {
        return Err(Error::Precondition(
            "an empty family has no intersecting subfamily".into(),
        ));
    }
    let mut best = 0usize;
    let mut best_point = None;
    for p in 0..family.universe() {
        let coverage = family.iter().filter(|s| s.contains(p)).count();
        if coverage > best {
            best = coverage;
            best_point = Some(p);
        }
    }
    Ok((best, best_point))
}

#[derive(Clone, Debug)]
pub struct FhReport {
    pub family_size: usize,
    pub k: usize,
    pub intersecting: BigUint,
    pub total: BigUint,
    /// Fraction of k-member subfamilies with a common point.
    pub alpha: BigRational,
    /// Best-covered subfamily size and the point achieving it.
    pub max_intersecting: usize,
    pub best_point: Option<usize>,
    /// `max_intersecting / family_size`.
    pub beta: BigRational,
}

pub fn fh_report(family: &SetFamily, k: usize) -> Result<FhReport> {
    let (intersecting, total) = intersecting_k_subsets(family, k)?;
    let (max_intersecting, best_point) = max_intersecting_subfamily(family)?;
    let alpha = BigRational::new(
        BigInt::from(intersecting.clone()),
        BigInt::from(total.clone()),
    );
    let beta = BigRational::new(BigInt::from(max_intersecting), BigInt::from(family.len()));
    Ok(FhReport {
        family_size: family.len(),
        k,
        intersecting,
        total,
        alpha,
        max_intersecting,
        best_point,
        beta,
    })
}

/// The optimal conversion `beta = 1 - (1 - alpha)^(1/(d+1))`, with the
/// root rounded to `decimal_places` places (ties round away from
/// zero). When the root is exactly representable at that precision —
/// alpha = 3/4 with d = 1 gives exactly 1/2 — the result is exact.
pub fn optimal_beta(alpha: &BigRational, d: usize, decimal_places: usize) -> Result<BigRational> {
    if alpha < &BigRational::zero() || alpha > &BigRational::one() {
        return Err(Error::Precondition(format!(
            "alpha must lie in [0,1], got {alpha}"
        )));
    }
    let n = (d + 1) as u32;
    let x = BigRational::one() - alpha; // 1 - alpha, in [0,1]
    let p = x.numer().magnitude().clone();
    let q = x.denom().magnitude().clone();
    let t = BigUint::from(10u32).pow(decimal_places as u32);
    // floor(x^(1/n) * t) computed as the integer n-th root of
    // floor(p * t^n / q): both floors agree because consecutive n-th
    // powers bracket the scaled value.
    let scaled = &p * t.pow(n) / &q;
    let a = scaled.nth_root(n);
    // Round to nearest: compare x * t^n against (a + 1/2)^n, i.e.
    // 2^n * p * t^n against q * (2a + 1)^n.
    let lhs = (BigUint::from(2u32).pow(n)) * &p * t.pow(n);
    let rhs = &q * (BigUint::from(2u32) * &a + BigUint::one()).pow(n);
    let rounded = if lhs >= rhs { a + BigUint::one() } else { a };
    Ok(BigRational::one() - BigRational::new(BigInt::from(rounded), BigInt::from(t)))
}
