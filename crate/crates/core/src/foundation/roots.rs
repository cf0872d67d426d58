use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::{cyclotomic, IntPolynomial};
use super::ExactRational;

/// Decides `Σ_e exp(2πi e / n) = 0` exactly.
///
/// The multiset of exponents becomes the polynomial `Σ x^(e mod n)`, already
/// reduced modulo `x^n - 1`; the sum vanishes iff `Φ_n` divides it.
pub fn root_of_unity_sum_is_zero(exponents: &[u64], n: u64) -> bool {
    assert!(n >= 1, "root of unity order must be positive");
    let n = usize::try_from(n).expect("root of unity order fits in usize");
    let mut counts = vec![0i64; n];
    for &e in exponents {
        counts[(e % n as u64) as usize] += 1;
    }
    let p = IntPolynomial::from_i64(&counts);
    if p.is_zero() {
        return true;
    }
    let (_, r) = p
        .div_rem_monic(&cyclotomic(n))
        .expect("cyclotomic polynomials are monic");
    r.is_zero()
}

/// Decides `Σ_{b ∈ digits} exp(2πi b x) = 0` exactly for rational `x`.
///
/// With `x = v/u` reduced, `exp(2πi x)` is a primitive `u`-th root of unity
/// and the sum vanishes iff `Φ_u` divides the Laurent polynomial `Σ z^b`.
/// That polynomial has degree `span = max - min`, and `φ(u) >= sqrt(u/2)`,
/// so any `u > 2·span²` is decided without building `Φ_u`.
pub fn digit_sum_vanishes_at(digits: &[i64], x: &ExactRational) -> bool {
    let (Some(&lo), Some(&hi)) = (digits.iter().min(), digits.iter().max()) else {
        return true;
    };
    let span = (hi as i128 - lo as i128) as u128;
    let u = x.denom();
    let bound = BigInt::from(2u128 * span * span);
    if *u > bound {
        return false;
    }
    let u64_den = u.to_u64().expect("bounded denominator fits in u64");
    let v = x.numer();
    let exponents: Vec<u64> = digits
        .iter()
        .map(|&b| {
            let e = (v * BigInt::from(b)).mod_floor(u);
            e.to_u64().expect("residue below denominator")
        })
        .collect();
    debug_assert!(!u.is_zero() && !u.is_negative());
    root_of_unity_sum_is_zero(&exponents, u64_den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::rational;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn numeric_sum(exponents: &[u64], n: u64) -> f64 {
        let (re, im) = exponents.iter().fold((0.0, 0.0), |(re, im), &e| {
            let t = TAU * (e % n) as f64 / n as f64;
            (re + t.cos(), im + t.sin())
        });
        re.hypot(im)
    }

    #[test]
    fn spec_examples() {
        assert!(root_of_unity_sum_is_zero(&[0, 3], 6));
        assert!(!root_of_unity_sum_is_zero(&[0, 1], 4));
        assert!(root_of_unity_sum_is_zero(&[0, 2, 4], 6));
    }

    #[test]
    fn empty_sum_vanishes() {
        assert!(root_of_unity_sum_is_zero(&[], 5));
        assert!(!root_of_unity_sum_is_zero(&[0], 1));
    }

    #[test]
    fn mixed_prime_vanishing_sum() {
        // Sum of a full triangle and an antipodal pair in 6th roots.
        assert!(root_of_unity_sum_is_zero(&[0, 2, 4, 1, 4], 6));
        assert!(!root_of_unity_sum_is_zero(&[0, 2, 4, 1, 3], 6));
    }

    #[test]
    fn digit_sums() {
        assert!(digit_sum_vanishes_at(&[0, 2], &rational(1, 4)));
        assert!(!digit_sum_vanishes_at(&[0, 2], &rational(1, 2)));
        assert!(digit_sum_vanishes_at(&[-3, 0], &rational(1, 6)));
        assert!(digit_sum_vanishes_at(&[0, 1, 2], &rational(-2, 3)));
        // Huge denominators are decided by the degree bound.
        let tiny = rational(1, 1 << 40);
        assert!(!digit_sum_vanishes_at(&[0, 2], &tiny));
    }

    proptest! {
        #[test]
        fn agrees_with_floating_point(n in 1u64..=24, raw in prop::collection::vec(0u64..24, 0..9)) {
            let exps: Vec<u64> = raw.iter().map(|e| e % n).collect();
            let exact = root_of_unity_sum_is_zero(&exps, n);
            let mag = numeric_sum(&exps, n);
            prop_assert_eq!(exact, mag < 1e-9, "n = {}, exps = {:?}, |sum| = {}", n, exps, mag);
        }

        #[test]
        fn digit_sum_agrees_with_floating_point(
            digits in prop::collection::btree_set(-12i64..12, 1..5),
            v in -60i64..60,
            u in 1i64..80,
        ) {
            let digits: Vec<i64> = digits.into_iter().collect();
            let x = rational(v, u);
            let (re, im) = digits.iter().fold((0.0, 0.0), |(re, im), &b| {
                let t = TAU * (b * v) as f64 / u as f64;
                (re + t.cos(), im + t.sin())
            });
            prop_assert_eq!(digit_sum_vanishes_at(&digits, &x), re.hypot(im) < 1e-9);
        }
    }
}
