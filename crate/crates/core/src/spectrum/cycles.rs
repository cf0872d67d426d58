use num_bigint::BigInt;
use num_rational::BigRational;

use super::dual_system;
use crate::error::{Error, Result};
use crate::foundation::ExactRational;
use crate::hadamard::HadamardTriple;

/// Cap on the number of elementary cycles enumerated for one triple.
pub const MAX_CYCLES: usize = 10_000;

/// A cycle `x_1 → x_2 → … → x_k → x_1` of the dual maps on which
/// `|m_B| ≡ 1`. `labels[j]` is the digit with `(x_j + ℓ_j)/N = x_(j+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeCycle {
    pub points: Vec<ExactRational>,
    pub labels: Vec<i64>,
}

impl ExtremeCycle {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks `(x_j + ℓ_j)/N = x_(j+1 mod k)` exactly.
    pub fn is_closed(&self, n: i64) -> bool {
        let n = BigRational::from_integer(BigInt::from(n));
        let k = self.points.len();
        (0..k).all(|j| {
            let next = (&self.points[j] + BigRational::from_integer(self.labels[j].into())) / &n;
            next == self.points[(j + 1) % k]
        })
    }
}

/// Every extreme cycle of the triple.
///
/// Points of an `m_B`-cycle satisfy `|m_B(x)| = 1`, so they lie in `Z/d`,
/// and as fixed points of compositions of `τ_ℓ` they lie in `K(N, L)`. The
/// candidates are therefore `K(N, L) ∩ Z/d`; cycles of the finite digraph
/// `x → τ_ℓ(x)` on them are enumerated, each rooted at its smallest point.
pub fn extreme_cycles(t: &HadamardTriple) -> Result<Vec<ExtremeCycle>> {
    let candidates = dual_system(t).lattice_points(t.d() as u64)?;
    let n = BigRational::from_integer(BigInt::from(t.n()));
    let succ: Vec<Vec<(i64, usize)>> = candidates
        .iter()
        .map(|x| {
            t.l()
                .iter()
                .filter_map(|&l| {
                    let y = (x + BigRational::from_integer(l.into())) / &n;
                    candidates.binary_search(&y).ok().map(|j| (l, j))
                })
                .collect()
        })
        .collect();

    let mut cycles = Vec::new();
    for root in 0..candidates.len() {
        let mut path = vec![root];
        let mut labels = Vec::new();
        let mut on_path = vec![false; candidates.len()];
        on_path[root] = true;
        walk(root, root, &succ, &mut path, &mut labels, &mut on_path, &mut cycles)?;
    }
    Ok(cycles
        .into_iter()
        .map(|(nodes, labels)| ExtremeCycle {
            points: nodes.into_iter().map(|i| candidates[i].clone()).collect(),
            labels,
        })
        .filter(|c| c.points.iter().all(|x| t.is_extremal(x)))
        .collect())
}

type RawCycle = (Vec<usize>, Vec<i64>);

fn walk(
    root: usize,
    at: usize,
    succ: &[Vec<(i64, usize)>],
    path: &mut Vec<usize>,
    labels: &mut Vec<i64>,
    on_path: &mut [bool],
    out: &mut Vec<RawCycle>,
) -> Result<()> {
    for &(l, next) in &succ[at] {
        if next == root {
            let mut ls = labels.clone();
            ls.push(l);
            out.push((path.clone(), ls));
            if out.len() > MAX_CYCLES {
                return Err(Error::Resource(format!("more than {MAX_CYCLES} extreme cycles")));
            }
        } else if next > root && !on_path[next] {
            on_path[next] = true;
            path.push(next);
            labels.push(l);
            walk(root, next, succ, path, labels, on_path, out)?;
            labels.pop();
            path.pop();
            on_path[next] = false;
        }
    }
    Ok(())
}
