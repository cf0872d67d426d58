//! Fourier-side diagnostics for `μ = μ(N, B)`: the truncated product
//! `μ̂(ξ) ≈ Π_(k≤depth) m_B(ξ/N^k)`, the level-wise Parseval identity, Gram
//! orthogonality of exponentials and the completeness functional
//! `Q(t) = Σ_λ |μ̂(t + λ)|²`.
//!
//! Omitted factors have modulus at most 1, so truncation can only
//! overestimate `|μ̂|`. Exact zeros are detected algebraically at any depth.
//! Nothing here is a verdict; the exact criterion lives in
//! [`crate::spectrum`].

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::foundation::ExactRational;
use crate::hadamard::HadamardTriple;

pub const DEFAULT_DEPTH: u32 = 30;

/// Default cap on `#L^n` for [`level_parseval`].
pub const PARSEVAL_BUDGET: u128 = 1 << 24;

/// Truncated transform value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformValue {
    pub value: Complex64,
    /// Some factor vanished exactly; `value` is then exactly zero.
    pub exact_zero: bool,
    pub depth: u32,
}

fn check_depth(depth: u32) -> Result<()> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    Ok(())
}

/// `Π_(k=1..depth) m_B(ξ/N^k)` with exact phase reduction.
pub fn mu_hat(t: &HadamardTriple, xi: &ExactRational, depth: u32) -> Result<TransformValue> {
    check_depth(depth)?;
    let n = BigRational::from_integer(BigInt::from(t.n()));
    let mut arg = xi.clone();
    let mut value = Complex64::one();
    for _ in 0..depth {
        arg /= &n;
        let m = t.mask_value(&arg, f64::MANTISSA_DIGITS);
        if m.exact_zero {
            return Ok(TransformValue { value: Complex64::new(0.0, 0.0), exact_zero: true, depth });
        }
        value *= m.value;
    }
    Ok(TransformValue { value, exact_zero: false, depth })
}

/// `Π_(k=1..depth) m_B(x/N^k)` at a real argument.
pub fn mu_hat_at(t: &HadamardTriple, x: f64, depth: u32) -> Complex64 {
    let n = t.n() as f64;
    let mut arg = x;
    let mut value = Complex64::one();
    for _ in 0..depth {
        arg /= n;
        value *= t.mask_at(arg);
    }
    value
}

/// `Σ_(ℓ ∈ L^n) Π_(k=1..n) |m_B((t0 + λ_ℓ)/N^k)|²` with
/// `λ_ℓ = Σ ℓ_k N^(k-1)`. Column orthonormality of the Hadamard matrix
/// makes this exactly 1.
pub fn level_parseval(t: &HadamardTriple, t0: f64, n: u32, budget: u128) -> Result<f64> {
    check_depth(n)?;
    let words = (t.size() as u128).checked_pow(n);
    if words.is_none_or(|w| w > budget) {
        return Err(Error::Resource(format!("{}^{n} words exceed budget {budget}", t.size())));
    }
    // Factor k depends only on ℓ_1..ℓ_k modulo 1, so the sum factors into
    // a tree walk.
    fn walk(t: &HadamardTriple, shift: f64, scale: f64, k: u32, n: u32) -> f64 {
        if k > n {
            return 1.0;
        }
        let big_n = t.n() as f64;
        t.l()
            .iter()
            .map(|&l| {
                let s = shift + l as f64 * scale;
                let w = t.mask_at(s / (scale * big_n)).norm_sqr();
                if w == 0.0 {
                    0.0
                } else {
                    w * walk(t, s, scale * big_n, k + 1, n)
                }
            })
            .sum()
    }
    Ok(walk(t, t0, 1.0, 1, n))
}

/// One off-diagonal Gram entry `μ̂(λ_j - λ_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramPair {
    pub i: usize,
    pub j: usize,
    pub modulus: f64,
    pub exact_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    /// Largest modulus over distinct pairs, 0 when there are none.
    pub max: f64,
    pub pairs: Vec<GramPair>,
}

impl GramReport {
    pub fn all_exact_zero(&self) -> bool {
        self.pairs.iter().all(|p| p.exact_zero)
    }
}

/// Off-diagonal entries `⟨e_λ, e_λ'⟩ = μ̂(λ' - λ)` over `i < j`.
pub fn gram_offdiag(t: &HadamardTriple, points: &[ExactRational], depth: u32) -> Result<GramReport> {
    check_depth(depth)?;
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let v = mu_hat(t, &(&points[j] - &points[i]), depth)?;
            pairs.push(GramPair { i, j, modulus: v.value.norm(), exact_zero: v.exact_zero });
        }
    }
    let max = pairs.iter().map(|p| p.modulus).fold(0.0, f64::max);
    Ok(GramReport { max, pairs })
}

/// `Q(t0) = Σ_λ |μ̂(t0 + λ)|²` for each grid point, in grid order.
pub fn completeness_q(
    t: &HadamardTriple,
    points: &[ExactRational],
    grid: &[f64],
    depth: u32,
    exec: Exec,
) -> Result<Vec<f64>> {
    check_depth(depth)?;
    let lambdas: Vec<f64> = points.iter().map(crate::foundation::to_f64).collect();
    Ok(exec.map(grid, |&t0| lambdas.iter().map(|&l| mu_hat_at(t, t0 + l, depth).norm_sqr()).sum()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::{integer, rational};
    use crate::spectrum::{canonical_levels, DEFAULT_LEVEL_BUDGET};
    use proptest::prelude::*;

    fn classic() -> HadamardTriple {
        HadamardTriple::new(4, &[0, 2], &[0, 1]).unwrap()
    }

    #[test]
    fn mu_hat_examples() {
        let t = classic();
        let v = mu_hat(&t, &integer(0), 7).unwrap();
        assert_eq!(v.value, Complex64::one());
        assert!(!v.exact_zero);
        assert!(mu_hat(&t, &integer(1), 1).unwrap().exact_zero);
        assert!(mu_hat(&t, &integer(4), 3).unwrap().exact_zero);
        assert!(!mu_hat(&t, &integer(4), 1).unwrap().exact_zero);
        assert!(mu_hat(&t, &integer(0), 0).is_err());
    }

    #[test]
    fn mu_hat_matches_real_argument_form() {
        let t = HadamardTriple::new(6, &[0, 1], &[0, 3]).unwrap();
        for (a, b) in [(1, 2), (2, 7), (-5, 3), (11, 1)] {
            let x = rational(a, b);
            let exact = mu_hat(&t, &x, 20).unwrap().value;
            let real = mu_hat_at(&t, a as f64 / b as f64, 20);
            assert!((exact - real).norm() < 1e-12, "{a}/{b}");
        }
    }

    #[test]
    fn parseval_examples() {
        let t = classic();
        assert!((level_parseval(&t, 0.0, 1, PARSEVAL_BUDGET).unwrap() - 1.0).abs() < 1e-12);
        assert!((level_parseval(&t, 0.37, 4, PARSEVAL_BUDGET).unwrap() - 1.0).abs() < 1e-10);
        let t = HadamardTriple::new(6, &[0, 1], &[0, 3]).unwrap();
        assert!((level_parseval(&t, -1.5, 3, PARSEVAL_BUDGET).unwrap() - 1.0).abs() < 1e-10);
        assert!(level_parseval(&t, 0.0, 30, PARSEVAL_BUDGET).unwrap_err().is_resource());
    }

    #[test]
    fn parseval_matches_word_sum() {
        // Direct sum over all words, without the tree factorization.
        let t = HadamardTriple::new(8, &[0, 1, 2, 3], &[0, 2, 4, 6]).unwrap();
        let (t0, n) = (0.123, 3u32);
        let mut total = 0.0;
        for w in 0..4usize.pow(n) {
            let mut lambda = 0.0;
            let mut digit = w;
            for k in 0..n {
                lambda += t.l()[digit % 4] as f64 * 8f64.powi(k as i32);
                digit /= 4;
            }
            total += (1..=n).map(|k| t.mask_at((t0 + lambda) / 8f64.powi(k as i32)).norm_sqr()).product::<f64>();
        }
        let tree = level_parseval(&t, t0, n, PARSEVAL_BUDGET).unwrap();
        assert!((total - tree).abs() < 1e-12);
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gram_examples() {
        let t = classic();
        let l2 = canonical_levels(&t, 2, DEFAULT_LEVEL_BUDGET).unwrap();
        let g = gram_offdiag(&t, l2.top(), 6).unwrap();
        assert_eq!(g.pairs.len(), 6);
        assert_eq!(g.max, 0.0);
        assert!(g.all_exact_zero());

        let g = gram_offdiag(&t, &[integer(0), rational(1, 2)], 40).unwrap();
        assert!(g.max > 0.1);
        assert!(!g.all_exact_zero());

        let g = gram_offdiag(&t, &[integer(0)], 5).unwrap();
        assert!(g.pairs.is_empty() && g.max == 0.0);
    }

    #[test]
    fn exact_zeros_are_numerically_tiny() {
        let t = classic();
        let l4 = canonical_levels(&t, 4, DEFAULT_LEVEL_BUDGET).unwrap();
        let pts = l4.top();
        let g = gram_offdiag(&t, pts, 15).unwrap();
        for p in g.pairs.iter().filter(|p| p.exact_zero) {
            let diff = crate::foundation::to_f64(&(&pts[p.j] - &pts[p.i]));
            assert!(mu_hat_at(&t, diff, 30).norm() < 1e-15);
        }
    }

    #[test]
    fn q_examples() {
        let t = classic();
        let q = completeness_q(&t, &[integer(0)], &[0.0], DEFAULT_DEPTH, Exec::Sequential).unwrap();
        assert!((q[0] - 1.0).abs() < 1e-9);
        let l6 = canonical_levels(&t, 6, DEFAULT_LEVEL_BUDGET).unwrap();
        let q = completeness_q(&t, l6.top(), &[0.25], DEFAULT_DEPTH, Exec::Sequential).unwrap()[0];
        assert!((0.95..=1.001).contains(&q), "{q}");
        let scaled: Vec<ExactRational> = l6.top().iter().map(|x| x * integer(3)).collect();
        let q3 = completeness_q(&t, &scaled, &[0.25], DEFAULT_DEPTH, Exec::Sequential).unwrap()[0];
        assert!(q3 <= 0.9, "{q3}");
    }

    #[test]
    fn q_grid_order_is_exec_independent() {
        let t = classic();
        let l3 = canonical_levels(&t, 3, DEFAULT_LEVEL_BUDGET).unwrap();
        let grid: Vec<f64> = (0..50).map(|i| i as f64 / 17.0 - 1.0).collect();
        let a = completeness_q(&t, l3.top(), &grid, 20, Exec::Sequential).unwrap();
        let b = completeness_q(&t, l3.top(), &grid, 20, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn q_is_monotone_in_level(t0 in -2.0f64..2.0, n in 0u32..5) {
            let t = classic();
            let s = canonical_levels(&t, n + 1, DEFAULT_LEVEL_BUDGET).unwrap();
            let lo = completeness_q(&t, s.level(n as usize), &[t0], 20, Exec::Sequential).unwrap()[0];
            let hi = completeness_q(&t, s.level(n as usize + 1), &[t0], 20, Exec::Sequential).unwrap()[0];
            prop_assert!(hi >= lo - 1e-12);
            prop_assert!(hi <= 1.0 + 1e-9);
        }

        #[test]
        fn parseval_holds(t0 in -50.0f64..50.0, n in 1u32..7) {
            for (nb, b, l) in [(4, &[0, 2][..], &[0, 1][..]), (6, &[0, 1], &[0, 3]), (8, &[0, 1, 2, 3], &[0, 2, 4, 6])] {
                let t = HadamardTriple::new(nb, b, l).unwrap();
                prop_assert!((level_parseval(&t, t0, n, PARSEVAL_BUDGET).unwrap() - 1.0).abs() < 1e-9);
            }
        }
    }
}
