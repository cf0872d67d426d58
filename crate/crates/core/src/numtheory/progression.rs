use num_integer::Integer;
use serde::Serialize;

use super::factor::euler_phi;
use super::order::{floor_power, Exponent};
use super::sieve::sieve_primes;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Upper bound on `q_max · π(x)` for one discrepancy sum.
pub const EH_BUDGET: u64 = 4_000_000_000;

/// `π(x; q, a)`: primes `p ≤ x` with `p ≡ a (mod q)`.
pub fn prime_count_progression(x: u64, q: u64, a: i64) -> Result<u64> {
    if q < 1 {
        return Err(Error::InvalidArgument("modulus q must be positive".into()));
    }
    let r = a.rem_euclid(q as i64) as u64;
    let g = r.gcd(&q);
    if g != 1 {
        return Err(Error::NotCoprime {
            what: "a",
            value: a.to_string(),
            against_name: "q",
            against: q.to_string(),
            gcd: g.to_string(),
            criterion: "Dirichlet progression count π(x; q, a)",
        });
    }
    Ok(sieve_primes(x, Exec::Sequential).iter().filter(|&&p| p % q == r).count() as u64)
}

/// The Elliott–Halberstam sum at a single `x`, with its per-modulus terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EhSum {
    pub x: u64,
    pub theta: Exponent,
    pub q_max: u64,
    /// `max_{y ≤ x} max_{(a,q)=1} |π(y;q,a) - π(y)/φ(q)|` for `q = 1..=q_max`.
    pub terms: Vec<f64>,
    pub total: f64,
}

/// `Σ_{q ≤ x^θ} max_{y ≤ x} max_{(a,q)=1} |π(y;q,a) - π(y)/φ(q)|`.
///
/// Both counts are step functions that only move at primes, so the max over
/// `y` is attained at a prime (or at `y < 2`, where everything vanishes).
/// Each modulus is swept once through the primes while the extreme class
/// counts are maintained incrementally.
pub fn eh_discrepancy(x: u64, theta: Exponent, exec: Exec) -> Result<EhSum> {
    theta.check_open_unit("theta")?;
    if x < 3 {
        return Err(Error::InvalidArgument(format!("x = {x} must be at least 3")));
    }
    let primes = sieve_primes(x, exec);
    let q_max = floor_power(x, theta).max(1);
    if q_max.saturating_mul(primes.len() as u64) > EH_BUDGET {
        return Err(Error::Resource(format!(
            "discrepancy sum over q ≤ {q_max} and {} primes exceeds {EH_BUDGET} steps",
            primes.len()
        )));
    }
    let terms = exec.map_range(q_max as usize, |i| max_deviation(&primes, i as u64 + 1));
    let total = terms.iter().sum();
    Ok(EhSum { x, theta, q_max, terms, total })
}

fn max_deviation(primes: &[u64], q: u64) -> f64 {
    let phi = euler_phi(q);
    let coprime: Vec<bool> = (0..q).map(|r| r.gcd(&q) == 1).collect();
    let mut counts = vec![0u32; q as usize];
    // histogram[c] = number of coprime classes holding exactly c primes
    let mut histogram = vec![0u64; primes.len() + 2];
    histogram[0] = phi;
    let (mut lo, mut hi) = (0u32, 0u32);
    let mut worst = 0.0f64;
    for (i, &p) in primes.iter().enumerate() {
        let r = (p % q) as usize;
        if coprime[r] {
            let c = counts[r];
            counts[r] = c + 1;
            histogram[c as usize] -= 1;
            histogram[c as usize + 1] += 1;
            hi = hi.max(c + 1);
            if c == lo && histogram[c as usize] == 0 {
                lo += 1;
            }
        }
        let expected = (i + 1) as f64 / phi as f64;
        worst = worst.max(hi as f64 - expected).max(expected - lo as f64);
    }
    worst
}
