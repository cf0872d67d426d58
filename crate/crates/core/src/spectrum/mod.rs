//! Canonical spectra of Hadamard triples and their integer scalings.
//!
//! The canonical spectrum of `(N, B, L)` is `Λ = ∪ Λ_n` with
//! `Λ_0 = -(K(N, L) ∩ Z/d)` and `Λ_n = N·Λ_(n-1) + L`, where `d = gcd(B)`.
//! For `q` coprime to `N`, `q·Λ` is again a spectrum iff
//! `K(N, L) ∩ Z/(qd) = K(N, L) ∩ Z/d`; [`SpectralOracle`] decides this
//! exactly on the finite state graphs of [`crate::selfsimilar`].

mod closure;
mod cycles;
mod eigen;
mod levels;

pub use closure::{power_closure_check, ClosureProduct, PowerClosureReport};
pub use cycles::{extreme_cycles, ExtremeCycle, MAX_CYCLES};
pub use eigen::{
    eigenvalue_scan, is_spectral_eigenvalue, EigenvalueScan, EigenvalueVerdict, LargeEigenvalueCheck, ScanRow,
    SpectralOracle,
};
pub use levels::{canonical_levels, lambda_nl, SpectrumLevels, DEFAULT_LEVEL_BUDGET};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::hadamard::HadamardTriple;
use crate::selfsimilar::DigitSystem;

/// `K(N, L)`, the attractor of the dual maps `τ_ℓ(x) = (x + ℓ)/N`.
pub fn dual_system(t: &HadamardTriple) -> DigitSystem {
    DigitSystem::integer(t.n(), t.l()).expect("verified triples give valid digit systems")
}

/// `K(N, dL) = d·K(N, L)`.
pub fn scaled_dual_system(t: &HadamardTriple) -> Result<DigitSystem> {
    let d = BigInt::from(t.d());
    let digits: Vec<BigRational> = t.l().iter().map(|&l| BigRational::from_integer(BigInt::from(l) * &d)).collect();
    DigitSystem::new(t.n(), &digits)
}
