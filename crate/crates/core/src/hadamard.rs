//! Hadamard triples `(N, B, L)`: exact unitarity verification, the mask
//! `m_B`, and scaling of the dual digit set.

use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::foundation::{digit_sum_vanishes_at, root_of_unity_sum_is_zero, ExactRational};

/// Pair of rows of the exponential matrix whose inner product is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingPair {
    pub b: i64,
    pub b_prime: i64,
    /// `(b - b')·ℓ mod N` for `ℓ ∈ L`: the non-vanishing root-of-unity sum.
    pub exponents: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleVerdict {
    pub is_hadamard: bool,
    pub failing_pair: Option<FailingPair>,
}

fn sorted_distinct(name: &str, digits: &[i64]) -> Result<Vec<i64>> {
    let mut v = digits.to_vec();
    v.sort_unstable();
    let len = v.len();
    v.dedup();
    if v.len() != len {
        return Err(Error::InvalidTriple(format!("digit set {name} contains repeated digits")));
    }
    if v.is_empty() {
        return Err(Error::InvalidTriple(format!("digit set {name} is empty")));
    }
    Ok(v)
}

/// Exact check that `(1/sqrt(#B)) exp(2πi bℓ/N)` is unitary.
///
/// Rows are orthogonal iff for every `b ≠ b'` the sum of the `N`-th roots of
/// unity `exp(2πi (b-b')ℓ/N)` over `ℓ ∈ L` vanishes; row norms are 1 by
/// construction and, for a square matrix, orthogonal rows imply orthogonal
/// columns.
pub fn verify(n: i64, b: &[i64], l: &[i64]) -> Result<TripleVerdict> {
    if n < 2 {
        return Err(Error::InvalidBase(n));
    }
    let b = sorted_distinct("B", b)?;
    let l = sorted_distinct("L", l)?;
    if b.len() != l.len() {
        return Err(Error::SizeMismatch { b: b.len(), l: l.len() });
    }
    for (i, &bi) in b.iter().enumerate() {
        for &bj in &b[i + 1..] {
            let diff = bi as i128 - bj as i128;
            let exponents: Vec<u64> = l
                .iter()
                .map(|&ell| (diff * ell as i128).rem_euclid(n as i128) as u64)
                .collect();
            if !root_of_unity_sum_is_zero(&exponents, n as u64) {
                return Ok(TripleVerdict {
                    is_hadamard: false,
                    failing_pair: Some(FailingPair { b: bi, b_prime: bj, exponents }),
                });
            }
        }
    }
    Ok(TripleVerdict { is_hadamard: true, failing_pair: None })
}

/// Value of the mask `m_B(x) = (1/#B) Σ_b exp(2πi b x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskValue {
    pub value: Complex64,
    /// `m_B(x) = 0` exactly. When set, `value` is exactly zero.
    pub exact_zero: bool,
    /// Binary precision actually delivered (at most 53).
    pub bits: u32,
}

/// A verified Hadamard triple with `0 ∈ B ∩ L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HadamardTriple {
    n: i64,
    b: Vec<i64>,
    l: Vec<i64>,
    d: i64,
}

impl HadamardTriple {
    /// Validates and builds a triple. Fails unless `(N, B, L)` passes
    /// [`verify`], `#B = #L >= 2`, and `0 ∈ B ∩ L`.
    pub fn new(n: i64, b: &[i64], l: &[i64]) -> Result<Self> {
        let verdict = verify(n, b, l)?;
        if let Some(fp) = verdict.failing_pair {
            return Err(Error::InvalidTriple(format!(
                "({n}, {b:?}, {l:?}) is not a Hadamard triple: rows b = {} and b' = {} are not orthogonal",
                fp.b, fp.b_prime
            )));
        }
        let b = sorted_distinct("B", b)?;
        let l = sorted_distinct("L", l)?;
        if b.len() < 2 {
            return Err(Error::InvalidTriple("a Hadamard triple needs #B = #L >= 2".into()));
        }
        if b.binary_search(&0).is_err() || l.binary_search(&0).is_err() {
            return Err(Error::InvalidTriple("the canonical spectrum needs 0 in both B and L".into()));
        }
        let d = b.iter().filter(|&&x| x != 0).fold(0i64, |g, &x| g.gcd(&x));
        Ok(HadamardTriple { n, b, l, d })
    }

    /// Contraction base `N`.
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn l(&self) -> &[i64] {
        &self.l
    }

    /// `gcd` of the nonzero elements of `B`.
    pub fn d(&self) -> i64 {
        self.d
    }

    /// `#B`, which equals `#L`.
    pub fn size(&self) -> usize {
        self.b.len()
    }

    pub fn mask_value(&self, x: &ExactRational, precision: u32) -> MaskValue {
        let bits = precision.clamp(1, f64::MANTISSA_DIGITS);
        if digit_sum_vanishes_at(&self.b, x) {
            return MaskValue { value: Complex64::zero(), exact_zero: true, bits };
        }
        let u = x.denom();
        let v = x.numer();
        let sum: Complex64 = self
            .b
            .iter()
            .map(|&b| {
                // Reduce the phase exactly before leaving the rationals.
                let r = (v * BigInt::from(b)).mod_floor(u);
                let frac = BigRational::new(r, u.clone()).to_f64().unwrap_or(0.0);
                Complex64::from_polar(1.0, TAU * frac)
            })
            .sum();
        let value = sum / self.b.len() as f64;
        MaskValue { value: round_to_bits(value, bits), exact_zero: false, bits }
    }

    /// `m_B(x)` at a real argument, for numerical diagnostics.
    pub fn mask_at(&self, x: f64) -> Complex64 {
        let sum: Complex64 = self
            .b
            .iter()
            .map(|&b| {
                let phase = (b as f64 * x).rem_euclid(1.0);
                Complex64::from_polar(1.0, TAU * phase)
            })
            .sum();
        sum / self.b.len() as f64
    }

    /// `|m_B(x)| = 1` exactly. Since `0 ∈ B`, every phase must equal 1,
    /// which happens iff the denominator of `x` divides `d`.
    pub fn is_extremal(&self, x: &ExactRational) -> bool {
        BigInt::from(self.d).is_multiple_of(x.denom())
    }

    /// `(N, B, qL)`, a Hadamard triple whenever `gcd(q, N) = 1`.
    pub fn scaled_triple(&self, q: i64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidArgument(format!("scaling factor q = {q} must be at least 2")));
        }
        let g = q.gcd(&self.n);
        if g != 1 {
            return Err(Error::NotCoprime {
                what: "q",
                value: q.to_string(),
                against_name: "N",
                against: self.n.to_string(),
                gcd: g.to_string(),
                criterion: "dual-digit scaling lemma (N, B, qL)",
            });
        }
        let scaled: Vec<i64> = self
            .l
            .iter()
            .map(|&ell| {
                ell.checked_mul(q)
                    .ok_or_else(|| Error::Resource(format!("q·ℓ overflows for ℓ = {ell}, q = {q}")))
            })
            .collect::<Result<_>>()?;
        HadamardTriple::new(self.n, &self.b, &scaled)
    }
}

impl fmt::Display for HadamardTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}, {{{}}}, {{{}}})", self.n, join(&self.b), join(&self.l))
    }
}

fn round_to_bits(z: Complex64, bits: u32) -> Complex64 {
    if bits >= f64::MANTISSA_DIGITS {
        return z;
    }
    let round = |x: f64| {
        if x == 0.0 || !x.is_finite() {
            return x;
        }
        let e = x.abs().log2().floor() as i32;
        let scale = 2f64.powi(bits as i32 - 1 - e);
        (x * scale).round() / scale
    };
    Complex64::new(round(z.re), round(z.im))
}
