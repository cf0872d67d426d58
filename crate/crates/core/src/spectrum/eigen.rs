use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use super::{dual_system, scaled_dual_system};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::foundation::{format_rational, ExactRational};
use crate::hadamard::HadamardTriple;
use crate::numtheory::{exceeds_power, factorize, order_with, sieve_primes, Exponent};
use crate::selfsimilar::DigitSystem;

/// Result of the eigenvalue test for one `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueVerdict {
    pub q: u64,
    pub is_eigenvalue: bool,
    /// Point of `K(N, L) ∩ Z/(qd)` outside `Z/d`, least denominator first,
    /// then least `|numerator|`.
    pub witness: Option<ExactRational>,
    /// Whether the `K(N, L)` and `K(N, dL)` formulations gave the same answer.
    pub methods_agreed: bool,
}

/// Decides whether `q·Λ` is a spectrum of `μ(N, B)` for `q` coprime to `N`.
///
/// Two formulations are evaluated independently:
/// `K(N, L) ∩ Z/(qd) = K(N, L) ∩ Z/d` and `K(N, dL) ∩ Z/q = K(N, dL) ∩ Z`.
/// The `q`-independent right-hand sides are computed once.
#[derive(Debug, Clone)]
pub struct SpectralOracle {
    n: i64,
    d: u64,
    dual: DigitSystem,
    scaled: DigitSystem,
    base: Vec<ExactRational>,
    scaled_base: Vec<ExactRational>,
}

impl SpectralOracle {
    pub fn new(t: &HadamardTriple) -> Result<Self> {
        let dual = dual_system(t);
        let scaled = scaled_dual_system(t)?;
        let d = t.d() as u64;
        let base = dual.lattice_points(d)?;
        let scaled_base = scaled.lattice_points(1)?;
        Ok(Self { n: t.n(), d, dual, scaled, base, scaled_base })
    }

    /// `K(N, L) ∩ Z/d`.
    pub fn base(&self) -> &[ExactRational] {
        &self.base
    }

    pub fn check(&self, q: u64) -> Result<EigenvalueVerdict> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        let g = q.gcd(&(self.n as u64));
        if g != 1 {
            return Err(Error::NotCoprime {
                what: "q",
                value: q.to_string(),
                against_name: "N",
                against: self.n.to_string(),
                gcd: g.to_string(),
                criterion: "eigenvalue criterion K(N, L) ∩ Z/(qd) = K(N, L) ∩ Z/d",
            });
        }
        if q == 1 {
            return Ok(EigenvalueVerdict { q, is_eigenvalue: true, witness: None, methods_agreed: true });
        }
        let qd = q
            .checked_mul(self.d)
            .ok_or_else(|| Error::Resource(format!("q·d overflows 64 bits for q = {q}")))?;
        let wide = self.dual.lattice_points(qd)?;
        let form_a = wide == self.base;
        let scaled_wide = self.scaled.lattice_points(q)?;
        let form_b = scaled_wide == self.scaled_base;

        let witness = wide
            .into_iter()
            .filter(|x| self.base.binary_search(x).is_err())
            .min_by(|x, y| {
                let key = |v: &ExactRational| (v.denom().clone(), v.numer().abs(), v.numer().is_negative());
                key(x).cmp(&key(y))
            });
        Ok(EigenvalueVerdict { q, is_eigenvalue: form_a, witness, methods_agreed: form_a == form_b })
    }
}

/// One-shot form of [`SpectralOracle::check`].
pub fn is_spectral_eigenvalue(t: &HadamardTriple, q: u64) -> Result<EigenvalueVerdict> {
    SpectralOracle::new(t)?.check(q)
}

/// Eigenvalue data for one prime of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub p: u64,
    pub is_eigenvalue: bool,
    pub witness: Option<String>,
    pub methods_agreed: bool,
    /// `Ord_N(p)`.
    pub order: u64,
    pub in_a_half: bool,
    pub in_a_0677: bool,
}

/// Consistency of the large-eigenvalue statement with a scan at one `δ`:
/// primes in `A_N(δ)` that are not eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LargeEigenvalueCheck {
    pub delta: Exponent,
    /// `δ` exceeds the similarity dimension `log #L / log N`.
    pub applies: bool,
    pub primes_in_a: usize,
    pub violations: Vec<u64>,
    pub largest_violation: Option<u64>,
    /// Primes of `A_N(δ)` beyond the largest violation, all eigenvalues.
    pub eigenvalues_beyond: usize,
}

/// Primes `p ≤ x` coprime to `N` with their eigenvalue verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueScan {
    pub x: u64,
    pub rows: Vec<ScanRow>,
    pub eigenvalues: usize,
    pub fraction: f64,
    pub dimension: f64,
    pub checks: Vec<LargeEigenvalueCheck>,
}

impl EigenvalueScan {
    pub fn disagreements(&self) -> usize {
        self.rows.iter().filter(|r| !r.methods_agreed).count()
    }
}

const DELTA_0677: Exponent = Exponent::raw(677, 1000);

/// Runs the eigenvalue test over every prime `p ≤ x` with `p ∤ N`.
pub fn eigenvalue_scan(t: &HadamardTriple, x: u64, exec: Exec) -> Result<EigenvalueScan> {
    let oracle = SpectralOracle::new(t)?;
    let n = t.n() as u64;
    let primes: Vec<u64> = sieve_primes(x, exec).into_iter().filter(|p| !n.is_multiple_of(*p)).collect();
    let rows = exec.map(&primes, |&p| -> Result<ScanRow> {
        let v = oracle.check(p)?;
        let order = order_with(n, p, &factorize(p - 1));
        Ok(ScanRow {
            p,
            is_eigenvalue: v.is_eigenvalue,
            witness: v.witness.as_ref().map(format_rational),
            methods_agreed: v.methods_agreed,
            order,
            in_a_half: exceeds_power(order, p, Exponent::HALF),
            in_a_0677: exceeds_power(order, p, DELTA_0677),
        })
    });
    let rows: Vec<ScanRow> = rows.into_iter().collect::<Result<_>>()?;
    let eigenvalues = rows.iter().filter(|r| r.is_eigenvalue).count();
    let fraction = if rows.is_empty() { 0.0 } else { eigenvalues as f64 / rows.len() as f64 };
    let dimension = oracle.dual.similarity_dimension();

    let checks = [Exponent::HALF, DELTA_0677]
        .into_iter()
        .map(|delta| {
            let in_a: Vec<&ScanRow> =
                rows.iter().filter(|r| if delta == Exponent::HALF { r.in_a_half } else { r.in_a_0677 }).collect();
            let violations: Vec<u64> = in_a.iter().filter(|r| !r.is_eigenvalue).map(|r| r.p).collect();
            let largest_violation = violations.last().copied();
            let eigenvalues_beyond = in_a.iter().filter(|r| Some(r.p) > largest_violation).count();
            LargeEigenvalueCheck {
                delta,
                applies: delta.value() > dimension,
                primes_in_a: in_a.len(),
                violations,
                largest_violation,
                eigenvalues_beyond,
            }
        })
        .collect();
    Ok(EigenvalueScan { x, rows, eigenvalues, fraction, dimension, checks })
}
