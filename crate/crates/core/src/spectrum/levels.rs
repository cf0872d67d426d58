use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::dual_system;
use crate::error::{Error, Result};
use crate::foundation::ExactRational;
use crate::hadamard::HadamardTriple;

/// Default cap on `#Λ_0 · #L^n`.
pub const DEFAULT_LEVEL_BUDGET: u128 = 1 << 22;

/// Levels `Λ_0 ⊆ Λ_1 ⊆ … ⊆ Λ_n` of the canonical spectrum, each ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumLevels {
    pub levels: Vec<Vec<ExactRational>>,
}

impl SpectrumLevels {
    pub fn level(&self, n: usize) -> &[ExactRational] {
        &self.levels[n]
    }

    pub fn top(&self) -> &[ExactRational] {
        self.levels.last().expect("level 0 always exists")
    }
}

fn check_budget(base: usize, digits: usize, n: u32, budget: u128) -> Result<()> {
    let size = (digits as u128).checked_pow(n).and_then(|p| p.checked_mul(base as u128));
    match size {
        Some(s) if s <= budget => Ok(()),
        _ => Err(Error::Resource(format!("level {n} would hold {base}·{digits}^{n} points, budget {budget}"))),
    }
}

/// `Λ_0 = -(K(N, L) ∩ Z/d)` and `Λ_k = N·Λ_(k-1) + L` for `k ≤ n`.
pub fn canonical_levels(t: &HadamardTriple, n: u32, budget: u128) -> Result<SpectrumLevels> {
    let mut base: Vec<ExactRational> = dual_system(t).lattice_points(t.d() as u64)?.into_iter().map(|x| -x).collect();
    base.sort();
    check_budget(base.len(), t.size(), n, budget)?;
    let big_n = BigRational::from_integer(BigInt::from(t.n()));
    let digits: Vec<ExactRational> = t.l().iter().map(|&l| BigRational::from_integer(l.into())).collect();
    let mut levels = vec![base];
    for _ in 0..n {
        let prev = levels.last().expect("nonempty");
        let (big_n, digits) = (&big_n, &digits);
        let mut next: Vec<ExactRational> =
            prev.iter().flat_map(|x| digits.iter().map(move |l| x * big_n + l)).collect();
        next.sort();
        next.dedup();
        levels.push(next);
    }
    Ok(SpectrumLevels { levels })
}

/// `Λ(N, L, n) = { Σ_(k≤n) ℓ_k N^k : ℓ_k ∈ L }`, ascending and deduplicated.
pub fn lambda_nl(n_base: i64, l: &[i64], n: u32) -> Result<Vec<BigInt>> {
    if n_base < 2 {
        return Err(Error::InvalidBase(n_base));
    }
    if !l.contains(&0) {
        return Err(Error::InvalidArgument("0 must be a digit".into()));
    }
    check_budget(1, l.len(), n + 1, DEFAULT_LEVEL_BUDGET)?;
    let big_n = BigInt::from(n_base);
    let mut out = vec![BigInt::zero()];
    let mut power = BigInt::from(1);
    for _ in 0..=n {
        let power_ref = &power;
        out = out.iter().flat_map(|x| l.iter().map(move |&d| x + power_ref * d)).collect();
        out.sort();
        out.dedup();
        power *= &big_n;
    }
    Ok(out)
}
