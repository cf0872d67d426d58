//! Finite state graphs of the shift `y ↦ q·y - a` on rationals with a fixed
//! denominator.
//!
//! A state is an integer numerator `s` over a fixed denominator `u`; the
//! successor under digit `a` is `q·s - a·u`. Only states inside the hull
//! `[min A/(q-1), max A/(q-1)]` are kept. A state lies in `K(q, A)` iff it
//! has an infinite forward path, so the attractor slice is the greatest
//! fixed point of "has a surviving successor".

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Upper bound on states materialized by a single sweep.
pub const MAX_STATES: u64 = 1 << 27;

/// Numerator range `[lo, hi]` of hull points over denominator `u`.
pub(crate) fn hull_range(q: i64, digits: &[i64], u: u64) -> Result<(i64, i64)> {
    let lo_d = *digits.first().expect("nonempty digits") as i128;
    let hi_d = *digits.last().expect("nonempty digits") as i128;
    let u = u as i128;
    let qm1 = (q - 1) as i128;
    let lo = (lo_d * u).div_euclid(qm1) + i128::from((lo_d * u).rem_euclid(qm1) != 0);
    let hi = (hi_d * u).div_euclid(qm1);
    let count = hi - lo + 1;
    if count > MAX_STATES as i128 {
        return Err(Error::Resource(format!(
            "state graph at denominator {u} would hold {count} states (limit {MAX_STATES})"
        )));
    }
    // q·s - a·u must stay inside i64 for every state and digit.
    let bound = (hi.abs().max(lo.abs())) * q as i128 + lo_d.abs().max(hi_d.abs()) * u;
    if bound > i64::MAX as i128 {
        return Err(Error::Resource(format!("state numerators at denominator {u} overflow 64 bits")));
    }
    Ok((lo as i64, hi as i64))
}

/// Alive flags for every numerator in `[lo, hi]`, by reverse-degree
/// pruning. Predecessors of `t` under digit `a` are recovered as
/// `(t + a·u)/q`, so no adjacency lists are stored.
pub(crate) fn sweep_alive(q: i64, digits: &[i64], u: u64, lo: i64, hi: i64) -> Vec<bool> {
    if hi < lo {
        return Vec::new();
    }
    let len = (hi - lo + 1) as usize;
    let u = u as i64;
    let mut degree = vec![0u32; len];
    for (i, deg) in degree.iter_mut().enumerate() {
        let s = lo + i as i64;
        *deg = digits
            .iter()
            .filter(|&&a| (lo..=hi).contains(&(q * s - a * u)))
            .count() as u32;
    }
    let mut alive = vec![true; len];
    let mut queue: Vec<usize> = Vec::new();
    for i in 0..len {
        if degree[i] == 0 {
            alive[i] = false;
            queue.push(i);
        }
    }
    while let Some(i) = queue.pop() {
        let t = lo + i as i64;
        for &a in digits {
            let num = t + a * u;
            if num.rem_euclid(q) != 0 {
                continue;
            }
            let s = num.div_euclid(q);
            if !(lo..=hi).contains(&s) {
                continue;
            }
            let j = (s - lo) as usize;
            if alive[j] {
                degree[j] -= 1;
                if degree[j] == 0 {
                    alive[j] = false;
                    queue.push(j);
                }
            }
        }
    }
    alive
}

/// The part of the state graph reachable from one start state, after
/// pruning. Node 0 is the start.
#[derive(Debug, Clone)]
pub struct StateGraph {
    q: i64,
    digits: Vec<i64>,
    denominator: u64,
    states: Vec<i64>,
    /// Outgoing edges as `(digit index, target node)`, digits ascending.
    edges: Vec<Vec<(usize, usize)>>,
    alive: Vec<bool>,
}

impl StateGraph {
    /// Explores every hull state reachable from `start / u`, then prunes.
    pub(crate) fn explore(q: i64, digits: &[i64], u: u64, start: i64) -> Result<Self> {
        let (lo, hi) = hull_range(q, digits, u)?;
        let mut graph = StateGraph {
            q,
            digits: digits.to_vec(),
            denominator: u,
            states: Vec::new(),
            edges: Vec::new(),
            alive: Vec::new(),
        };
        if !(lo..=hi).contains(&start) {
            return Ok(graph);
        }
        let mut index: HashMap<i64, usize> = HashMap::new();
        index.insert(start, 0);
        graph.states.push(start);
        let mut frontier = VecDeque::from([0usize]);
        let ui = u as i64;
        while let Some(i) = frontier.pop_front() {
            let s = graph.states[i];
            let mut out = Vec::new();
            for (k, &a) in digits.iter().enumerate() {
                let t = q * s - a * ui;
                if !(lo..=hi).contains(&t) {
                    continue;
                }
                let j = *index.entry(t).or_insert_with(|| {
                    graph.states.push(t);
                    frontier.push_back(graph.states.len() - 1);
                    graph.states.len() - 1
                });
                out.push((k, j));
            }
            graph.edges.push(out);
        }
        graph.prune();
        Ok(graph)
    }

    fn prune(&mut self) {
        let n = self.states.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut degree = vec![0usize; n];
        for (i, out) in self.edges.iter().enumerate() {
            degree[i] = out.len();
            for &(_, j) in out {
                preds[j].push(i);
            }
        }
        self.alive = vec![true; n];
        let mut queue: Vec<usize> = (0..n).filter(|&i| degree[i] == 0).collect();
        for &i in &queue {
            self.alive[i] = false;
        }
        while let Some(j) = queue.pop() {
            for &i in &preds[j] {
                if self.alive[i] {
                    degree[i] -= 1;
                    if degree[i] == 0 {
                        self.alive[i] = false;
                        queue.push(i);
                    }
                }
            }
        }
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Numerator of node `i` over [`Self::denominator`].
    pub fn numerator(&self, i: usize) -> i64 {
        self.states[i]
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    pub fn start_alive(&self) -> bool {
        !self.states.is_empty() && self.alive[0]
    }

    /// Surviving edges out of node `i` as `(digit, target)`.
    pub fn alive_edges(&self, i: usize) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.edges[i]
            .iter()
            .filter(|&&(_, j)| self.alive[j])
            .map(|&(k, j)| (self.digits[k], j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_range_rounds_inward() {
        // K(4, {0,1}) ⊂ [0, 1/3]; over denominator 10 the numerators are 0..=3.
        assert_eq!(hull_range(4, &[0, 1], 10).unwrap(), (0, 3));
        assert_eq!(hull_range(4, &[-3, 0], 10).unwrap(), (-10, 0));
        assert_eq!(hull_range(6, &[-1, 1], 7).unwrap(), (-1, 1));
    }

    #[test]
    fn sweep_on_middle_thirds() {
        // K(3, {0,2}) is the Cantor set; over denominator 4 it contains 0, 1/4, 3/4, 1.
        let (lo, hi) = hull_range(3, &[0, 2], 4).unwrap();
        let alive = sweep_alive(3, &[0, 2], 4, lo, hi);
        let members: Vec<i64> = (lo..=hi).filter(|s| alive[(s - lo) as usize]).collect();
        assert_eq!(members, vec![0, 1, 3, 4]);
    }

    #[test]
    fn explore_agrees_with_sweep() {
        for (q, digits) in [(4i64, vec![0i64, 1]), (5, vec![0, 2, 4]), (6, vec![-3, 0, 2])] {
            for u in 1..30u64 {
                let (lo, hi) = hull_range(q, &digits, u).unwrap();
                let alive = sweep_alive(q, &digits, u, lo, hi);
                for s in lo..=hi {
                    let g = StateGraph::explore(q, &digits, u, s).unwrap();
                    assert_eq!(g.start_alive(), alive[(s - lo) as usize], "q={q} u={u} s={s}");
                }
            }
        }
    }

    #[test]
    fn oversized_graphs_are_rejected() {
        assert!(matches!(hull_range(2, &[0, 1], u64::MAX / 4), Err(Error::Resource(_))));
    }
}
