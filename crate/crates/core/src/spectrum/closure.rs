use num_integer::Integer;
use serde::Serialize;

use super::{scaled_dual_system, SpectralOracle};
use crate::error::{Error, Result};
use crate::foundation::format_rational;
use crate::hadamard::HadamardTriple;
use crate::numtheory::is_prime;

/// Cap on the number of exponent vectors tested.
const MAX_PRODUCTS: usize = 100_000;

/// One product `p_1^(n_1) ⋯ p_r^(n_r)` tested for the eigenvalue property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureProduct {
    pub exponents: Vec<u32>,
    pub q: u64,
    pub is_eigenvalue: bool,
}

/// Outcome of the power-closure check for a set of primes.
///
/// With `p = p_1 ⋯ p_r` and `n_0` read off `D_p ∩ K(N, dL)`: if `p^(n_0)` is
/// an eigenvalue then so is every product of the `p_i`. `n_0` is empirical,
/// taken from the last populated level up to `max_level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerClosureReport {
    pub primes: Vec<u64>,
    pub product: u64,
    pub max_level: u32,
    /// Sizes of the `D_p ∩ K(N, dL)` levels `0..=max_level`.
    pub level_sizes: Vec<usize>,
    /// Points of each level, formatted.
    pub level_points: Vec<Vec<String>>,
    /// `None` when the top scanned level is still populated.
    pub n0: Option<u32>,
    pub hypothesis_q: Option<u64>,
    pub hypothesis_holds: Option<bool>,
    pub exponent_budget: u32,
    pub products: Vec<ClosureProduct>,
    /// Every tested product is an eigenvalue. `None` when nothing was tested.
    pub conclusion_holds: Option<bool>,
}

fn exponent_vectors(r: usize, budget: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; r];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, budget, &mut cur, &mut out);
    out
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    (0..k).try_fold(1u128, |acc, i| acc.checked_mul(n - i).map(|v| v / (i + 1)))
}

/// Checks the power-closure statement for distinct primes coprime to `N`.
pub fn power_closure_check(
    t: &HadamardTriple,
    primes: &[u64],
    max_level: u32,
    exponent_budget: u32,
) -> Result<PowerClosureReport> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("at least one prime is required".into()));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return Err(Error::InvalidArgument("primes must be distinct".into()));
    }
    let n = t.n() as u64;
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let g = p.gcd(&n);
        if g != 1 {
            return Err(Error::NotCoprime {
                what: "p",
                value: p.to_string(),
                against_name: "N",
                against: n.to_string(),
                gcd: g.to_string(),
                criterion: "power-closure statement for products of primes",
            });
        }
    }
    let product = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::Resource("product of primes overflows 64 bits".into()))?;
    let count = binomial(exponent_budget as u128 + primes.len() as u128, primes.len() as u128);
    if count.is_none_or(|c| c > MAX_PRODUCTS as u128) {
        return Err(Error::Resource(format!("exponent budget {exponent_budget} gives more than {MAX_PRODUCTS} products")));
    }

    let dp = scaled_dual_system(t)?.dp_intersection(product, max_level)?;
    let level_sizes = dp.levels.iter().map(|l| l.points.len()).collect();
    let level_points = dp.levels.iter().map(|l| l.points.iter().map(format_rational).collect()).collect();
    let n0 = dp.stabilization_index;

    let oracle = SpectralOracle::new(t)?;
    let mut report = PowerClosureReport {
        primes: primes.to_vec(),
        product,
        max_level,
        level_sizes,
        level_points,
        n0,
        hypothesis_q: None,
        hypothesis_holds: None,
        exponent_budget,
        products: Vec::new(),
        conclusion_holds: None,
    };
    let Some(n0) = n0 else { return Ok(report) };
    let q0 = product
        .checked_pow(n0)
        .ok_or_else(|| Error::Resource(format!("{product}^{n0} overflows 64 bits")))?;
    let holds = oracle.check(q0)?.is_eigenvalue;
    report.hypothesis_q = Some(q0);
    report.hypothesis_holds = Some(holds);
    if !holds {
        return Ok(report);
    }
    for exponents in exponent_vectors(primes.len(), exponent_budget) {
        let q = primes
            .iter()
            .zip(&exponents)
            .try_fold(1u64, |acc, (&p, &e)| p.checked_pow(e).and_then(|pe| acc.checked_mul(pe)))
            .ok_or_else(|| Error::Resource("product overflows 64 bits".into()))?;
        let is_eigenvalue = oracle.check(q)?.is_eigenvalue;
        report.products.push(ClosureProduct { exponents, q, is_eigenvalue });
    }
    report.conclusion_holds = Some(report.products.iter().all(|c| c.is_eigenvalue));
    Ok(report)
}
