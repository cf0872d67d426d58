use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::graph::StateGraph;
use crate::foundation::{format_rational, ExactRational};

/// An eventually periodic coding `preperiod · period^∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingCertificate {
    pub preperiod: Vec<ExactRational>,
    pub period: Vec<ExactRational>,
}

impl CodingCertificate {
    /// The point coded by this word in base `q`:
    /// `Σ_{k≤j} a_k q^-k + q^-j · (Σ_{k≤m} c_k q^-k) · q^m / (q^m - 1)`.
    pub fn value(&self, q: i64) -> ExactRational {
        let q = BigRational::from_integer(BigInt::from(q));
        let mut pre = BigRational::zero();
        let mut scale = BigRational::one();
        for a in &self.preperiod {
            scale /= &q;
            pre += a * &scale;
        }
        let mut per = BigRational::zero();
        let mut s = BigRational::one();
        for c in &self.period {
            s /= &q;
            per += c * &s;
        }
        let qm: BigRational = Pow::pow(&q, self.period.len());
        let geometric = &qm / (&qm - BigRational::one());
        pre + scale * per * geometric
    }
}

impl fmt::Display for CodingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &[ExactRational]| w.iter().map(format_rational).collect::<Vec<_>>().join(",");
        write!(f, "[{}]([{}])^∞", word(&self.preperiod), word(&self.period))
    }
}

/// `(parent, digit)` of the edge that first reached a node.
type Parents = Vec<Option<(usize, i64)>>;

/// BFS over alive nodes from `root`. Returns per-node distance and parents.
fn bfs(graph: &StateGraph, root: usize) -> (Vec<Option<usize>>, Parents) {
    let n = graph.len();
    let mut dist = vec![None; n];
    let mut parent = vec![None; n];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(i) = queue.pop_front() {
        let di = dist[i].unwrap();
        for (a, j) in graph.alive_edges(i) {
            if dist[j].is_none() {
                dist[j] = Some(di + 1);
                parent[j] = Some((i, a));
                queue.push_back(j);
            }
        }
    }
    (dist, parent)
}

fn path_digits(parent: &[Option<(usize, i64)>], root: usize, mut node: usize) -> Vec<i64> {
    let mut word = Vec::new();
    while node != root {
        let (p, a) = parent[node].expect("node reached by bfs");
        word.push(a);
        node = p;
    }
    word.reverse();
    word
}

/// Shortest cycle through `z` in the alive subgraph, as a digit word, if
/// one of length at most `limit` exists.
fn shortest_cycle_through(graph: &StateGraph, z: usize, limit: usize) -> Option<Vec<i64>> {
    let n = graph.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent: Vec<Option<(usize, i64)>> = vec![None; n];
    dist[z] = 0;
    let mut queue = VecDeque::from([z]);
    while let Some(i) = queue.pop_front() {
        if dist[i] + 1 > limit {
            break;
        }
        for (a, j) in graph.alive_edges(i) {
            if j == z {
                let mut word = path_digits(&parent, z, i);
                word.push(a);
                return Some(word);
            }
            if dist[j] == usize::MAX {
                dist[j] = dist[i] + 1;
                parent[j] = Some((i, a));
                queue.push_back(j);
            }
        }
    }
    None
}

/// Integer-digit certificate for the start node of `graph`: the shortest
/// period among cycles reachable from the start, then the shortest
/// preperiod reaching such a cycle. Ties go to the earliest BFS node.
pub(crate) fn certificate(graph: &StateGraph) -> Option<(Vec<i64>, Vec<i64>)> {
    if !graph.start_alive() {
        return None;
    }
    let (dist, parent) = bfs(graph, 0);
    let mut order: Vec<usize> = (0..graph.len()).filter(|&i| dist[i].is_some()).collect();
    order.sort_by_key(|&i| dist[i]);
    let mut best: Option<(usize, usize, Vec<i64>)> = None;
    for &z in &order {
        let limit = best.as_ref().map_or(usize::MAX, |(len, _, _)| *len - 1);
        if limit == 0 {
            break;
        }
        if let Some(cycle) = shortest_cycle_through(graph, z, limit) {
            best = Some((cycle.len(), z, cycle));
        }
    }
    let (_, z, period) = best.expect("an alive state always reaches a cycle");
    Some((path_digits(&parent, 0, z), period))
}
