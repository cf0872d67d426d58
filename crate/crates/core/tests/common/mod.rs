#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Unitarity of `(1/√#B)·exp(2πi bℓ/N)` checked in floating point.
pub fn numeric_hadamard(n: i64, b: &[i64], l: &[i64]) -> bool {
    if b.len() != l.len() {
        return false;
    }
    let k = b.len();
    for i in 0..k {
        for j in 0..k {
            let s: Complex64 = l
                .iter()
                .map(|&x| {
                    let phase = ((b[i] - b[j]) * x).rem_euclid(n) as f64 / n as f64;
                    Complex64::from_polar(1.0, std::f64::consts::TAU * phase)
                })
                .sum();
            let want = if i == j { k as f64 } else { 0.0 };
            if (s - want).norm() > 1e-9 {
                return false;
            }
        }
    }
    true
}

/// `C = Σ_(j<s) a_j q^j` with every `a_j ∈ A`.
fn representable(c: &BigInt, q: i64, digits: &[i64], s: u32) -> bool {
    let q = BigInt::from(q);
    let mut frontier: BTreeSet<BigInt> = BTreeSet::from([c.clone()]);
    for _ in 0..s {
        let mut next = BTreeSet::new();
        for v in &frontier {
            for &a in digits {
                let (quo, rem) = (v - a).div_mod_floor(&q);
                if rem.is_zero() {
                    next.insert(quo);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return false;
        }
    }
    frontier.contains(&BigInt::zero())
}

fn words(digits: &[i64], r: u32) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out.iter().flat_map(|w| digits.iter().map(move |&a| [w.clone(), vec![a]].concat())).collect();
    }
    out
}

fn coprime_part(mut u: u64, q: u64) -> u64 {
    loop {
        let g = u.gcd(&q);
        if g == 1 {
            return u;
        }
        u /= g;
    }
}

fn order_mod(q: u64, m: u64) -> u32 {
    if m == 1 {
        return 1;
    }
    let (mut v, mut k) = (q % m, 1);
    while v != 1 {
        v = v * q % m;
        k += 1;
    }
    k
}

/// `x ∈ K(q, A)` by search over eventually periodic codings
/// `a_1 … a_r (c_1 … c_s)^∞`: `q^r (q^s - 1) x` must equal
/// `(q^s - 1)·Σ a_j q^(r-j) + Σ c_j q^(s-j)`. The periodic tail has a
/// denominator dividing `q^s - 1`, so `s` runs over multiples of the order
/// of `q` modulo the `q`-free part of `den(x)`.
pub fn coding_member(q: i64, digits: &[i64], x: &BigRational, max_pre: u32, max_mult: u32) -> bool {
    let den = x.denom().to_u64().expect("small denominators");
    let o = order_mod(q as u64, coprime_part(den, q as u64));
    let bq = BigInt::from(q);
    for r in 0..=max_pre {
        let qr = num_traits::pow(bq.clone(), r as usize);
        for w in words(digits, r) {
            let prefix: BigInt = w.iter().fold(BigInt::zero(), |acc, &a| acc * &bq + a);
            for k in 1..=max_mult {
                let s = o * k;
                let qs1 = num_traits::pow(bq.clone(), s as usize) - BigInt::one();
                let t = x * BigRational::from_integer(&qr * &qs1);
                if !t.is_integer() {
                    continue;
                }
                let c = t.to_integer() - &qs1 * &prefix;
                if representable(&c, q, digits, s) {
                    return true;
                }
            }
        }
    }
    false
}

/// `K(q, A) ∩ Z/u` by brute force over the hull.
pub fn brute_lattice(q: i64, digits: &[i64], u: u64, max_pre: u32, max_mult: u32) -> Vec<BigRational> {
    let lo = *digits.iter().min().unwrap();
    let hi = *digits.iter().max().unwrap();
    let ui = u as i64;
    // hull = [lo/(q-1), hi/(q-1)]
    let start = Integer::div_floor(&(lo * ui), &(q - 1));
    let end = Integer::div_ceil(&(hi * ui), &(q - 1));
    (start..=end)
        .map(|s| BigRational::new(BigInt::from(s), BigInt::from(u)))
        .filter(|x| {
            let v = x * BigRational::from_integer(BigInt::from(q - 1));
            v >= BigRational::from_integer(lo.into()) && v <= BigRational::from_integer(hi.into())
        })
        .filter(|x| coding_member(q, digits, x, max_pre, max_mult))
        .collect()
}
