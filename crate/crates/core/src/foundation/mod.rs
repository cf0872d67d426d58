//! Exact arithmetic substrate: reduced rationals and integer polynomials,
//! plus the exact decision procedure for vanishing sums of roots of unity.

mod poly;
mod roots;

pub use poly::{cyclotomic, IntPolynomial};
pub use roots::{digit_sum_vanishes_at, root_of_unity_sum_is_zero};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision reduced fraction. Every set-theoretic computation in
/// the crate (lattice slices, cycles, spectrum levels, witnesses) uses it.
pub type ExactRational = BigRational;

/// `num / den` in lowest terms. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// True iff `x` lies in `Z / d`, i.e. its reduced denominator divides `d`.
pub fn in_lattice(x: &ExactRational, d: &BigInt) -> bool {
    d.is_multiple_of(x.denom())
}

/// Best-effort conversion for diagnostics. Exact values never flow back
/// from here.
pub fn to_f64(x: &ExactRational) -> f64 {
    match x.to_f64() {
        Some(v) => v,
        None => {
            // Outside the f64 range of either part; fall back to a ratio of
            // leading digits.
            let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
            let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }
}

/// Formats a rational as `v` or `v/u`.
pub fn format_rational(x: &ExactRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `v` or `v/u` (decimal integers, optional sign on `v`).
pub fn parse_rational(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(BigRational::new(n, d))
}
