//! Prime sieving, factorization, multiplicative orders and the prime
//! statistics behind the density arguments: `A_a(δ)`, `P⁺(p - 1)`,
//! Goldfeld exceptions, Dickman's `ρ`, progression counts and the
//! Elliott–Halberstam discrepancy sum.
//!
//! All finite-`x` numbers produced here are measurements, not bounds.

mod dickman;
mod factor;
mod order;
mod progression;
mod sieve;
mod stats;

pub use dickman::{dickman, DickmanTable, DEFAULT_STEPS};
pub use factor::{euler_phi, factorize, factorize_seeded, largest_prime_factor, Factorization, DEFAULT_SEED};
pub use order::{
    artin_decompose, exceeds_power, floor_power, in_a, multiplicative_order, primitive_root_primes, Exponent,
};
pub use progression::{eh_discrepancy, prime_count_progression, EhSum, EH_BUDGET};
pub use sieve::{is_prime, sieve_primes};
pub use stats::{goldfeld_exceptions, order_density, pplus_density, prime_records, DensityReport, PrimeRecord};

pub(crate) use order::order_with;
