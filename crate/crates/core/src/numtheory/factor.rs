use std::fmt;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sieve::{is_prime, mul_mod};

/// Trial division handles every factor below this bound, so cofactors
/// under its square are prime.
const TRIAL_BOUND: u64 = 1000;

/// Seed used by [`factorize`].
pub const DEFAULT_SEED: u64 = 0x5eed_1234;

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn product(&self) -> u128 {
        self.0.iter().map(|&(p, e)| (p as u128).pow(e)).product()
    }

    /// Largest prime factor, `None` for the empty factorization of 1.
    pub fn largest(&self) -> Option<u64> {
        self.0.last().map(|&(p, _)| p)
    }

    fn from_primes(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match pairs.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => pairs.push((p, 1)),
            }
        }
        Factorization(pairs)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Factorization of `n ≥ 1` with the default seed.
pub fn factorize(n: u64) -> Factorization {
    factorize_seeded(n, DEFAULT_SEED)
}

/// Trial division below [`TRIAL_BOUND`], then Miller–Rabin and Brent's
/// variant of Pollard's rho for what is left. The rho walks draw their
/// constants from a ChaCha stream seeded with `seed`.
pub fn factorize_seeded(n: u64, seed: u64) -> Factorization {
    assert!(n >= 1, "cannot factor 0");
    let mut primes = Vec::new();
    let mut m = n;
    while m.is_multiple_of(2) {
        primes.push(2);
        m /= 2;
    }
    let mut d = 3;
    while d < TRIAL_BOUND && d * d <= m {
        while m.is_multiple_of(d) {
            primes.push(d);
            m /= d;
        }
        d += 2;
    }
    if m > 1 {
        if m < TRIAL_BOUND * TRIAL_BOUND || is_prime(m) {
            primes.push(m);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            split_composite(m, &mut rng, &mut primes);
        }
    }
    Factorization::from_primes(primes)
}

fn split_composite(n: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = loop {
        if let Some(d) = brent_rho(n, rng.random_range(1..n), rng.random_range(1..n)) {
            break d;
        }
    };
    split_composite(d, rng, out);
    split_composite(n / d, rng, out);
}

/// One Brent rho attempt; `None` if the walk degenerates.
fn brent_rho(n: u64, c: u64, y0: u64) -> Option<u64> {
    let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    let m = 128;
    let (mut y, mut r, mut q, mut g) = (y0, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (0, 0);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// `P⁺(n)`, the largest prime factor, with `P⁺(1) = 1`.
pub fn largest_prime_factor(n: u64) -> u64 {
    factorize(n).largest().unwrap_or(1)
}

/// Euler's totient via the factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    factorize(n)
        .pairs()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}
