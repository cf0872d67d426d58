//! Exact spectral-eigenvalue oracle for canonical spectra generated by
//! one-dimensional Hadamard triples, together with the fractal and
//! number-theoretic machinery around it.
//!
//! * [`foundation`]: exact rationals, integer polynomials, vanishing sums
//!   of roots of unity.
//! * [`hadamard`]: Hadamard triples `(N, B, L)` and the mask `m_B`.
//! * [`selfsimilar`]: membership, codings and lattice slices of
//!   self-similar sets `K(q, A)`.
//! * [`spectrum`]: extreme cycles, canonical levels, the eigenvalue
//!   criterion and prime scans.
//! * [`fourier`]: transform products, Parseval and completeness diagnostics.
//! * [`numtheory`]: sieving, orders, shifted-prime statistics, Dickman's
//!   function and progression counts.

pub mod error;
pub mod exec;
pub mod foundation;
pub mod fourier;
pub mod hadamard;
pub mod numtheory;
pub mod selfsimilar;
pub mod spectrum;

pub use error::{Error, Result};
pub use exec::Exec;
pub use foundation::ExactRational;
pub use hadamard::{HadamardTriple, TripleVerdict};
