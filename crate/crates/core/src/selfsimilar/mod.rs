//! Rational points of self-similar sets
//! `K(q, A) = { Σ_{k≥1} a_k q^-k : a_k ∈ A }`.
//!
//! Membership of a rational `v/u` is decided on the finite graph of the
//! shift `y ↦ q·y - a` over denominator `u`: the point lies in `K` iff it
//! survives greatest-fixed-point pruning. No period bound is needed, and
//! every surviving point comes with an eventually periodic coding whose
//! period is at most the number of surviving states.

mod coding;
mod graph;

pub use coding::CodingCertificate;
pub use graph::{StateGraph, MAX_STATES};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::foundation::{format_rational, ExactRational};

/// Base `q` and a finite digit set `A` of rationals with common
/// denominator `w`. Internally the system is rescaled to the integer digits
/// `w·A`, using `x ∈ K(q, A) ⟺ w·x ∈ K(q, w·A)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSystem {
    q: i64,
    digits: Vec<ExactRational>,
    scale: i64,
    int_digits: Vec<i64>,
}

/// Outcome of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub is_member: bool,
    pub certificate: Option<CodingCertificate>,
    /// States reachable from the query point inside the hull.
    pub states_explored: usize,
    /// States that survived pruning.
    pub states_alive: usize,
}

/// One level of `D_p ∩ K`: members whose exact `p`-power level is `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpLevel {
    pub m: u32,
    pub points: Vec<ExactRational>,
}

/// `D_p ∩ K` split by `p`-power level up to a scan bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpIntersection {
    pub p: u64,
    pub max_level: u32,
    pub levels: Vec<DpLevel>,
    /// Least `n` with every level in `(n, max_level]` empty. `None` when the
    /// top level is still populated, i.e. no stabilization is visible.
    /// Empirical: valid only up to `max_level`.
    pub stabilization_index: Option<u32>,
}

impl DpIntersection {
    pub fn level(&self, m: u32) -> &[ExactRational] {
        &self.levels[m as usize].points
    }
}

impl DigitSystem {
    pub fn new(q: i64, digits: &[ExactRational]) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidBase(q));
        }
        let mut digits = digits.to_vec();
        digits.sort();
        let len = digits.len();
        digits.dedup();
        if digits.is_empty() || digits.len() != len {
            return Err(Error::InvalidArgument("digit set must be nonempty with distinct digits".into()));
        }
        let w = digits.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let scale = w
            .to_i64()
            .ok_or_else(|| Error::Resource("common digit denominator exceeds 64 bits".into()))?;
        let int_digits = digits
            .iter()
            .map(|a| (a * BigRational::from_integer(w.clone())).to_integer().to_i64())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Resource("scaled digits exceed 64 bits".into()))?;
        Ok(DigitSystem { q, digits, scale, int_digits })
    }

    /// System with integer digits.
    pub fn integer(q: i64, digits: &[i64]) -> Result<Self> {
        let digits: Vec<ExactRational> =
            digits.iter().map(|&a| BigRational::from_integer(a.into())).collect();
        Self::new(q, &digits)
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn digits(&self) -> &[ExactRational] {
        &self.digits
    }

    /// Common denominator `w` of the digits.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// `[min A/(q-1), max A/(q-1)]`, which contains `K(q, A)`.
    pub fn hull(&self) -> (ExactRational, ExactRational) {
        let qm1 = BigRational::from_integer(BigInt::from(self.q - 1));
        (&self.digits[0] / &qm1, self.digits.last().unwrap() / &qm1)
    }

    pub fn in_hull(&self, x: &ExactRational) -> bool {
        let (lo, hi) = self.hull();
        lo <= *x && *x <= hi
    }

    /// Similarity dimension `log #A / log q`, an upper bound for the
    /// Hausdorff dimension of `K(q, A)`.
    pub fn similarity_dimension(&self) -> f64 {
        (self.digits.len() as f64).ln() / (self.q as f64).ln()
    }

    fn digit_of(&self, int_digit: i64) -> ExactRational {
        BigRational::new(int_digit.into(), self.scale.into())
    }

    /// Reachable state graph for `x`, in the rescaled integer system.
    pub fn state_graph(&self, x: &ExactRational) -> Result<StateGraph> {
        let u = x
            .denom()
            .to_u64()
            .ok_or_else(|| Error::Resource(format!("denominator of {} exceeds 64 bits", format_rational(x))))?;
        let start = (x.numer() * BigInt::from(self.scale))
            .to_i64()
            .ok_or_else(|| Error::Resource("scaled numerator exceeds 64 bits".into()))?;
        StateGraph::explore(self.q, &self.int_digits, u, start)
    }

    /// Decides `x ∈ K(q, A)`; members come with a coding certificate.
    pub fn member(&self, x: &ExactRational) -> Result<Membership> {
        if !self.in_hull(x) {
            return Ok(Membership { is_member: false, certificate: None, states_explored: 0, states_alive: 0 });
        }
        let graph = self.state_graph(x)?;
        let certificate = coding::certificate(&graph).map(|(pre, per)| CodingCertificate {
            preperiod: pre.into_iter().map(|a| self.digit_of(a)).collect(),
            period: per.into_iter().map(|a| self.digit_of(a)).collect(),
        });
        Ok(Membership {
            is_member: graph.start_alive(),
            certificate,
            states_explored: graph.len(),
            states_alive: graph.alive_count(),
        })
    }

    /// Eventually periodic coding of a member `x`.
    pub fn coding(&self, x: &ExactRational) -> Result<CodingCertificate> {
        self.member(x)?
            .certificate
            .ok_or_else(|| Error::NotMember(format_rational(x)))
    }

    /// `K(q, A) ∩ Z/u`, ascending. Scans every hull candidate over
    /// denominator `u` in a single pruning sweep.
    pub fn lattice_points(&self, u: u64) -> Result<Vec<ExactRational>> {
        if u == 0 {
            return Err(Error::InvalidArgument("lattice denominator must be positive".into()));
        }
        let (lo, hi) = graph::hull_range(self.q, &self.int_digits, u)?;
        let alive = graph::sweep_alive(self.q, &self.int_digits, u, lo, hi);
        let w = self.scale;
        let den = BigInt::from(u);
        Ok((lo..=hi)
            .filter(|&s| alive[(s - lo) as usize] && s.rem_euclid(w) == 0)
            .map(|s| BigRational::new(BigInt::from(s / w), den.clone()))
            .collect())
    }

    /// `D_p ∩ K` by exact `p`-power level, `0 ≤ m ≤ max_level`. Level `m`
    /// holds the members of `Z/(p^m·w)` that are not in `Z/(p^(m-1)·w)`.
    pub fn dp_intersection(&self, p: u64, max_level: u32) -> Result<DpIntersection> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("p = {p} must be at least 2")));
        }
        let g = p.gcd(&(self.q as u64));
        if g != 1 {
            return Err(Error::NotCoprime {
                what: "p",
                value: p.to_string(),
                against_name: "q",
                against: self.q.to_string(),
                gcd: g.to_string(),
                criterion: "finiteness of D_p ∩ K(q, A)",
            });
        }
        let mut levels = Vec::with_capacity(max_level as usize + 1);
        let mut previous: Vec<ExactRational> = Vec::new();
        for m in 0..=max_level {
            let den = p
                .checked_pow(m)
                .and_then(|pm| pm.checked_mul(self.scale as u64))
                .ok_or_else(|| Error::Resource(format!("p^{m}·w overflows 64 bits for p = {p}")))?;
            let slice = self.lattice_points(den)?;
            let fresh: Vec<ExactRational> =
                slice.iter().filter(|x| previous.binary_search(x).is_err()).cloned().collect();
            levels.push(DpLevel { m, points: fresh });
            previous = slice;
        }
        let last = levels.iter().rposition(|l| !l.points.is_empty());
        let stabilization_index = match last {
            None => Some(0),
            Some(m) if m as u32 == max_level && max_level > 0 => None,
            Some(m) => Some(m as u32),
        };
        Ok(DpIntersection { p, max_level, levels, stabilization_index })
    }
}

/// Exact `p`-adic level of `x` relative to `w`: least `m` with
/// `x ∈ Z/(p^m·w)`, if any.
pub fn p_level(x: &ExactRational, p: u64, w: i64) -> Option<u32> {
    let mut den = x.denom().clone();
    let g = den.gcd(&BigInt::from(w));
    den /= g;
    let p = BigInt::from(p);
    let mut m = 0;
    while !den.is_one() {
        let g = den.gcd(&p);
        if g.is_one() {
            return None;
        }
        den /= g;
        m += 1;
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::{integer, rational};

    fn sys(q: i64, d: &[i64]) -> DigitSystem {
        DigitSystem::integer(q, d).unwrap()
    }

    fn word(v: &[i64]) -> Vec<ExactRational> {
        v.iter().map(|&a| integer(a)).collect()
    }

    #[test]
    fn member_examples() {
        let s = sys(4, &[0, 1]);
        let m = s.member(&rational(1, 3)).unwrap();
        assert!(m.is_member);
        let c = m.certificate.unwrap();
        assert!(c.preperiod.is_empty());
        assert_eq!(c.period, word(&[1]));
        assert!(!s.member(&rational(1, 5)).unwrap().is_member);
        let z = s.member(&integer(0)).unwrap().certificate.unwrap();
        assert!(z.preperiod.is_empty());
        assert_eq!(z.period, word(&[0]));
    }

    #[test]
    fn outside_hull_is_rejected_immediately() {
        let m = sys(4, &[0, 1]).member(&rational(1, 2)).unwrap();
        assert!(!m.is_member);
        assert_eq!(m.states_explored, 0);
    }

    #[test]
    fn coding_examples() {
        let c = sys(4, &[0, 1]).coding(&rational(1, 3)).unwrap();
        assert_eq!((c.preperiod.len(), c.period.clone()), (0, word(&[1])));
        let c = sys(4, &[0, 3]).coding(&integer(1)).unwrap();
        assert_eq!((c.preperiod.len(), c.period.clone()), (0, word(&[3])));
        let c = sys(4, &[0, 2]).coding(&rational(2, 3)).unwrap();
        assert_eq!((c.preperiod.len(), c.period.clone()), (0, word(&[2])));
        assert!(matches!(sys(4, &[0, 1]).coding(&rational(1, 5)), Err(Error::NotMember(_))));
    }

    #[test]
    fn preperiodic_coding() {
        // 1/12 = 1/4 · 1/3: digit 0 then 1^∞.
        let c = sys(4, &[0, 1]).coding(&rational(1, 12)).unwrap();
        assert_eq!(c.preperiod, word(&[0]));
        assert_eq!(c.period, word(&[1]));
        assert_eq!(c.value(4), rational(1, 12));
    }

    #[test]
    fn lattice_examples() {
        let s = sys(4, &[0, 1]);
        assert_eq!(s.lattice_points(2).unwrap(), vec![integer(0)]);
        assert_eq!(s.lattice_points(6).unwrap(), vec![integer(0), rational(1, 3)]);
        assert_eq!(s.lattice_points(10).unwrap(), vec![integer(0)]);
        assert!(s.lattice_points(0).is_err());
    }

    #[test]
    fn lattice_agrees_with_member() {
        for s in [sys(4, &[0, 1]), sys(6, &[0, 1, 2]), sys(5, &[-2, 0, 1]), sys(3, &[0, 2])] {
            let (lo, hi) = s.hull();
            for u in 1..=60i64 {
                let pts = s.lattice_points(u as u64).unwrap();
                let lo_v = (lo.clone() * integer(u)).ceil().to_integer().to_i64().unwrap();
                let hi_v = (hi.clone() * integer(u)).floor().to_integer().to_i64().unwrap();
                let brute: Vec<_> = (lo_v..=hi_v)
                    .map(|v| rational(v, u))
                    .filter(|x| s.member(x).unwrap().is_member)
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                assert_eq!(pts, brute, "q={} u={u}", s.q());
            }
        }
    }

    #[test]
    fn rational_digits_rescale() {
        // K(4, {0, 1/2}) = K(4, {0,1}) / 2.
        let half = DigitSystem::new(4, &[integer(0), rational(1, 2)]).unwrap();
        assert_eq!(half.scale(), 2);
        assert_eq!(half.hull(), (integer(0), rational(1, 6)));
        assert!(half.member(&rational(1, 6)).unwrap().is_member);
        assert!(!half.member(&rational(1, 10)).unwrap().is_member);
        assert_eq!(half.lattice_points(6).unwrap(), vec![integer(0), rational(1, 6)]);
        let c = half.coding(&rational(1, 6)).unwrap();
        assert_eq!(c.period, vec![rational(1, 2)]);
        assert_eq!(c.value(4), rational(1, 6));
    }

    #[test]
    fn dp_examples() {
        let r = sys(4, &[0, 1]).dp_intersection(3, 4).unwrap();
        assert_eq!(r.level(0), &[integer(0)]);
        assert_eq!(r.level(1), &[rational(1, 3)]);
        assert!((2..=4).all(|m| r.level(m).is_empty()));
        assert_eq!(r.stabilization_index, Some(1));

        let r = sys(4, &[0, 2]).dp_intersection(3, 4).unwrap();
        assert_eq!(r.level(0), &[integer(0)]);
        assert_eq!(r.level(1), &[rational(2, 3)]);
        assert_eq!(r.stabilization_index, Some(1));

        let r = sys(4, &[0, 1]).dp_intersection(5, 3).unwrap();
        assert_eq!(r.level(0), &[integer(0)]);
        assert!((1..=3).all(|m| r.level(m).is_empty()));
        assert_eq!(r.stabilization_index, Some(0));

        assert!(matches!(sys(4, &[0, 1]).dp_intersection(2, 3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn dp_levels_are_exact() {
        let s = sys(7, &[0, 1, 3]);
        let r = s.dp_intersection(10, 3).unwrap();
        for lvl in &r.levels {
            for x in &lvl.points {
                assert_eq!(p_level(x, 10, 1), Some(lvl.m));
            }
        }
    }

    #[test]
    fn similarity_dimensions() {
        assert!((sys(4, &[0, 1]).similarity_dimension() - 0.5).abs() < 1e-15);
        assert!((sys(6, &[0, 3]).similarity_dimension() - 2f64.ln() / 6f64.ln()).abs() < 1e-15);
        assert!((sys(4, &[0, 1, 2, 3]).similarity_dimension() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_systems() {
        assert!(DigitSystem::integer(1, &[0]).is_err());
        assert!(DigitSystem::integer(4, &[]).is_err());
        assert!(DigitSystem::integer(4, &[1, 1]).is_err());
    }
}
