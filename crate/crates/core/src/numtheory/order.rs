use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use super::factor::{factorize, Factorization};
use super::sieve::{is_prime, pow_mod, sieve_primes};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// A positive rational exponent `num/den`, such as the `δ` of `A_a(δ)` or
/// the `θ` of a level of distribution. Comparisons against it are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponent {
    num: u32,
    den: u32,
}

impl Exponent {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num == 0 {
            return Err(Error::InvalidArgument(format!("exponent {num}/{den} must be positive")));
        }
        let g = num.gcd(&den);
        Ok(Exponent { num: num / g, den: den / g })
    }

    pub const HALF: Exponent = Exponent { num: 1, den: 2 };

    /// Unchecked constructor for reduced positive fractions.
    pub(crate) const fn raw(num: u32, den: u32) -> Self {
        Exponent { num, den }
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact conversion of the shortest decimal that round-trips `x`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::InvalidArgument(format!("exponent {x} must be positive and finite")));
        }
        format!("{x}").parse()
    }

    /// Requires `0 < δ < 1`.
    pub fn check_open_unit(self, name: &str) -> Result<Self> {
        if self.num >= self.den {
            return Err(Error::InvalidArgument(format!("{name} = {self} must lie in (0, 1)")));
        }
        Ok(self)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `a/b` or a plain decimal such as `0.677`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse exponent {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            let d: u32 = d.trim().parse().map_err(|_| bad())?;
            return Exponent::new(n, d);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 9 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_v: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_v))
            .filter(|&v| v <= u32::MAX as u64)
            .ok_or_else(bad)?;
        let g = num.gcd(&scale);
        let (num, den) = (num / g, scale / g);
        Exponent::new(num as u32, u32::try_from(den).map_err(|_| bad())?)
    }
}

/// Exact test of `value > base^e`, i.e. `value^den > base^num`.
///
/// Logarithms settle every case outside a narrow relative band; inside it
/// the integer powers are compared exactly.
pub fn exceeds_power(value: u64, base: u64, e: Exponent) -> bool {
    if value == 0 {
        return false;
    }
    if base <= 1 {
        return value > base;
    }
    let lhs = e.den as f64 * (value as f64).ln();
    let rhs = e.num as f64 * (base as f64).ln();
    let gap = lhs - rhs;
    if gap.abs() > 1e-9 * (lhs.abs() + rhs.abs() + 1.0) {
        return gap > 0.0;
    }
    let l: BigUint = Pow::pow(BigUint::from(value), e.den);
    let r: BigUint = Pow::pow(BigUint::from(base), e.num);
    l > r
}

/// Largest integer `m ≥ 0` with `m ≤ base^e`.
pub fn floor_power(base: u64, e: Exponent) -> u64 {
    let mut m = (base as f64).powf(e.value()).floor() as u64;
    while m > 0 && exceeds_power(m, base, e) {
        m -= 1;
    }
    while !exceeds_power(m + 1, base, e) {
        m += 1;
    }
    m
}

fn not_coprime_to_p(a: u64, p: u64) -> Error {
    Error::NotCoprime {
        what: "a",
        value: a.to_string(),
        against_name: "p",
        against: p.to_string(),
        gcd: p.to_string(),
        criterion: "definition of the multiplicative order Ord_a(p)",
    }
}

/// `Ord_a(p)` given the factorization of `p - 1`: start from `p - 1` and
/// strip each prime factor while the power stays `≡ 1`.
pub(crate) fn order_with(a: u64, p: u64, pm1: &Factorization) -> u64 {
    let a = a % p;
    let mut ord = p - 1;
    for &(r, _) in pm1.pairs() {
        while ord.is_multiple_of(r) && pow_mod(a, ord / r, p) == 1 {
            ord /= r;
        }
    }
    ord
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn multiplicative_order(a: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if a.is_multiple_of(p) {
        return Err(not_coprime_to_p(a, p));
    }
    Ok(order_with(a, p, &factorize(p - 1)))
}

/// `p ∈ A_a(δ)`: `Ord_a(p) > p^δ`, decided exactly.
pub fn in_a(a: u64, delta: Exponent, p: u64) -> Result<bool> {
    delta.check_open_unit("delta")?;
    Ok(exceeds_power(multiplicative_order(a, p)?, p, delta))
}

/// `N = a^(2^k)` with `a` not a perfect square.
pub fn artin_decompose(n: u64) -> Result<(u64, u32)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("N = {n} must be at least 2")));
    }
    let (mut a, mut k) = (n, 0);
    loop {
        let r = a.sqrt();
        if r * r != a {
            return Ok((a, k));
        }
        a = r;
        k += 1;
    }
}

/// Primes `p ≤ x` with `p ∤ a` for which `a` is a primitive root.
pub fn primitive_root_primes(a: u64, x: u64, exec: Exec) -> Vec<u64> {
    let primes = sieve_primes(x, exec);
    let hits = exec.map(&primes, |&p| {
        !a.is_multiple_of(p) && order_with(a, p, &factorize(p - 1)) == p - 1
    });
    primes.into_iter().zip(hits).filter_map(|(p, h)| h.then_some(p)).collect()
}
