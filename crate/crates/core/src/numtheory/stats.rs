use std::collections::BTreeMap;

use serde::Serialize;

use super::factor::{factorize, Factorization};
use super::order::{exceeds_power, order_with, Exponent};
use super::sieve::sieve_primes;
use crate::error::Result;
use crate::exec::Exec;

/// A density `numerator / denominator` measured over the primes up to `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityReport {
    pub x: u64,
    pub numerator: u64,
    pub denominator: u64,
    pub ratio: f64,
}

impl DensityReport {
    pub fn new(x: u64, numerator: u64, denominator: u64) -> Self {
        let ratio = if denominator == 0 { 0.0 } else { numerator as f64 / denominator as f64 };
        DensityReport { x, numerator, denominator, ratio }
    }
}

/// Per-prime data: the factorization of `p - 1`, orders, and `P⁺(p - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeRecord {
    pub p: u64,
    pub factorization_pm1: Factorization,
    /// `Ord_a(p)` for each requested base `a` with `p ∤ a`.
    pub ord: BTreeMap<u64, u64>,
    pub pplus: u64,
}

impl PrimeRecord {
    pub fn new(p: u64, bases: &[u64]) -> Self {
        let factorization_pm1 = factorize(p - 1);
        let ord = bases
            .iter()
            .filter(|&&a| a % p != 0)
            .map(|&a| (a, order_with(a, p, &factorization_pm1)))
            .collect();
        let pplus = factorization_pm1.largest().unwrap_or(1);
        PrimeRecord { p, factorization_pm1, ord, pplus }
    }
}

/// Records for every prime `p ≤ x`, ascending.
pub fn prime_records(x: u64, bases: &[u64], exec: Exec) -> Vec<PrimeRecord> {
    let primes = sieve_primes(x, exec);
    exec.map(&primes, |&p| PrimeRecord::new(p, bases))
}

/// `#(A_a(δ) ∩ [0, x]) / π(x)`; primes dividing `a` never count.
pub fn order_density(a: u64, delta: Exponent, x: u64, exec: Exec) -> Result<DensityReport> {
    delta.check_open_unit("delta")?;
    let primes = sieve_primes(x, exec);
    let hits = exec.map(&primes, |&p| {
        !a.is_multiple_of(p) && exceeds_power(order_with(a, p, &factorize(p - 1)), p, delta)
    });
    let count = hits.iter().filter(|&&h| h).count() as u64;
    Ok(DensityReport::new(x, count, primes.len() as u64))
}

/// `#{p ≤ x : P⁺(p - 1) > x^δ} / π(x)`.
pub fn pplus_density(x: u64, delta: Exponent, exec: Exec) -> DensityReport {
    let primes = sieve_primes(x, exec);
    let hits = exec.map(&primes, |&p| {
        let pplus = factorize(p - 1).largest().unwrap_or(1);
        exceeds_power(pplus, x, delta)
    });
    let count = hits.iter().filter(|&&h| h).count() as u64;
    DensityReport::new(x, count, primes.len() as u64)
}

/// Primes `p ≤ x` for which some prime `q > √x` divides `p - 1` but not
/// `Ord_a(p)`, as a fraction of `π(x)`.
///
/// Only `P⁺(p - 1)` can exceed `√x`: two such factors would exceed `p - 1`.
pub fn goldfeld_exceptions(a: u64, x: u64, exec: Exec) -> DensityReport {
    let primes = sieve_primes(x, exec);
    let hits = exec.map(&primes, |&p| {
        if a.is_multiple_of(p) {
            return false;
        }
        let pm1 = factorize(p - 1);
        match pm1.largest() {
            Some(q) if (q as u128) * (q as u128) > x as u128 => !order_with(a, p, &pm1).is_multiple_of(q),
            _ => false,
        }
    });
    let count = hits.iter().filter(|&&h| h).count() as u64;
    DensityReport::new(x, count, primes.len() as u64)
}
