//! Dispatch from a [`RunConfig`] to the library and assembly of reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use scalespec::foundation::{format_rational, integer, ExactRational};
use scalespec::fourier::{completeness_q, DEFAULT_DEPTH};
use scalespec::hadamard::verify;
use scalespec::numtheory::{
    dickman, eh_discrepancy, exceeds_power, order_density, pplus_density, prime_records, Exponent, DEFAULT_STEPS,
};
use scalespec::spectrum::{
    canonical_levels, eigenvalue_scan, extreme_cycles, power_closure_check, scaled_dual_system, SpectralOracle,
    DEFAULT_LEVEL_BUDGET,
};
use scalespec::{Exec, HadamardTriple};

use crate::config::{required, RunConfig, Task};
use crate::error::CliError;
use crate::report::{to_value, Report, Table};

/// Grid size used by `fourier-q` when no grid is supplied.
const DEFAULT_GRID_POINTS: usize = 16;

struct Out {
    verdict: Map<String, Value>,
    diagnostic: Map<String, Value>,
    table: Table,
}

impl Out {
    fn new(header: &[&str]) -> Self {
        Out { verdict: Map::new(), diagnostic: Map::new(), table: Table::new(header) }
    }

    fn verdict(&mut self, key: &str, v: Value) {
        self.verdict.insert(key.into(), v);
    }

    fn diagnostic(&mut self, key: &str, v: Value) {
        self.diagnostic.insert(key.into(), v);
    }
}

fn fmt_all(xs: &[ExactRational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn exponent(text: &Option<String>, task: Task, name: &str) -> Result<Exponent, CliError> {
    let s = required(text, task, name)?;
    s.parse::<Exponent>().map_err(|e| CliError::Config(format!("{name} = {s:?}: {e}")))
}

fn triple(config: &RunConfig) -> Result<HadamardTriple, CliError> {
    let (n, b, l) = config.triple_parts()?;
    Ok(HadamardTriple::new(n, &b, &l)?)
}

pub fn run(config: &RunConfig, exec: Exec, seed: u64) -> Result<Report, CliError> {
    let task = config.task;
    if task.needs_triple() {
        config.triple_parts()?;
    }
    let p = &config.params;
    let out = match task {
        Task::Verify => {
            let (n, b, l) = config.triple_parts()?;
            let v = verify(n, &b, &l)?;
            let mut o = Out::new(&["N", "B", "L", "is_hadamard", "failing_b", "failing_b_prime"]);
            o.verdict("is_hadamard", json!(v.is_hadamard));
            o.verdict("failing_pair", json!(v.failing_pair.as_ref().map(|f| [f.b, f.b_prime])));
            o.diagnostic("size", json!(b.len()));
            if let Some(f) = &v.failing_pair {
                o.diagnostic("failing_exponents", json!(f.exponents));
            }
            let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            let (fb, fb2) = match &v.failing_pair {
                Some(f) => (f.b.to_string(), f.b_prime.to_string()),
                None => (String::new(), String::new()),
            };
            o.table.push(vec![n.to_string(), join(&b), join(&l), v.is_hadamard.to_string(), fb, fb2]);
            o
        }
        Task::Cycles => {
            let t = triple(config)?;
            let cycles = extreme_cycles(&t)?;
            let mut o = Out::new(&["cycle", "position", "point", "label"]);
            let list: Vec<Value> =
                cycles.iter().map(|c| json!({ "points": fmt_all(&c.points), "labels": c.labels })).collect();
            o.verdict("count", json!(cycles.len()));
            o.verdict("cycles", Value::Array(list));
            o.diagnostic("d", json!(t.d()));
            for (i, c) in cycles.iter().enumerate() {
                for (j, (x, l)) in c.points.iter().zip(&c.labels).enumerate() {
                    o.table.push(vec![i.to_string(), j.to_string(), format_rational(x), l.to_string()]);
                }
            }
            o
        }
        Task::Spectrum => {
            let t = triple(config)?;
            let n: u32 = required(&p.levels, task, "levels")?.parse("levels")?;
            let budget: u128 = match &p.budget {
                Some(b) => b.parse("budget")?,
                None => DEFAULT_LEVEL_BUDGET,
            };
            let s = canonical_levels(&t, n, budget)?;
            let mut o = Out::new(&["level", "point"]);
            let levels: Vec<Vec<String>> = s.levels.iter().map(|l| fmt_all(l)).collect();
            let nested = s.levels.windows(2).all(|w| w[0].iter().all(|x| w[1].binary_search(x).is_ok()));
            o.verdict("levels", json!(levels));
            o.verdict("nested", json!(nested));
            o.diagnostic("sizes", json!(s.levels.iter().map(Vec::len).collect::<Vec<_>>()));
            for (k, l) in levels.iter().enumerate() {
                for x in l {
                    o.table.push(vec![k.to_string(), x.clone()]);
                }
            }
            o
        }
        Task::Eigenvalue => {
            let t = triple(config)?;
            let q: u64 = required(&p.q, task, "q")?.parse("q")?;
            let v = SpectralOracle::new(&t)?.check(q)?;
            let witness = v.witness.as_ref().map(format_rational);
            let mut o = Out::new(&["q", "is_eigenvalue", "witness", "methods_agreed"]);
            o.verdict("q", json!(q));
            o.verdict("is_eigenvalue", json!(v.is_eigenvalue));
            o.verdict("witness", json!(witness));
            o.verdict("methods_agreed", json!(v.methods_agreed));
            o.table.push(vec![
                q.to_string(),
                v.is_eigenvalue.to_string(),
                witness.unwrap_or_default(),
                v.methods_agreed.to_string(),
            ]);
            o
        }
        Task::Scan => {
            let t = triple(config)?;
            let x: u64 = required(&p.x, task, "x")?.parse("x")?;
            let scan = eigenvalue_scan(&t, x, exec)?;
            let mut o = Out::new(&["p", "is_eigenvalue", "witness", "methods_agreed", "order", "in_a_half", "in_a_0677"]);
            let non: Vec<u64> = scan.rows.iter().filter(|r| !r.is_eigenvalue).map(|r| r.p).collect();
            o.verdict("x", json!(x));
            o.verdict("primes", json!(scan.rows.len()));
            o.verdict("eigenvalues", json!(scan.eigenvalues));
            o.verdict("non_eigenvalues", json!(non));
            o.verdict("disagreements", json!(scan.disagreements()));
            o.verdict("large_eigenvalue_checks", to_value(&scan.checks));
            o.diagnostic("fraction", json!(scan.fraction));
            o.diagnostic("similarity_dimension", json!(scan.dimension));
            for r in &scan.rows {
                o.table.push(vec![
                    r.p.to_string(),
                    r.is_eigenvalue.to_string(),
                    r.witness.clone().unwrap_or_default(),
                    r.methods_agreed.to_string(),
                    r.order.to_string(),
                    r.in_a_half.to_string(),
                    r.in_a_0677.to_string(),
                ]);
            }
            o
        }
        Task::PowerClosure => {
            let t = triple(config)?;
            let primes: Vec<u64> = required(&p.primes, task, "primes")?
                .iter()
                .map(|v| v.parse("primes"))
                .collect::<Result<_, _>>()?;
            let m: u32 = required(&p.m, task, "M")?.parse("M")?;
            let budget: u32 = required(&p.budget, task, "budget")?.parse("budget")?;
            let r = power_closure_check(&t, &primes, m, budget)?;
            let mut o = Out::new(&["exponents", "q", "is_eigenvalue"]);
            o.verdict("primes", json!(r.primes));
            o.verdict("dp_levels", json!(r.level_points));
            o.verdict("hypothesis_q", json!(r.hypothesis_q));
            o.verdict("hypothesis_holds", json!(r.hypothesis_holds));
            o.verdict("products", to_value(&r.products));
            o.verdict("conclusion_holds", json!(r.conclusion_holds));
            o.diagnostic("n0", json!(r.n0));
            o.diagnostic("n0_note", json!(format!("empirical: last populated level up to M = {m}")));
            for c in &r.products {
                let e = c.exponents.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                o.table.push(vec![e, c.q.to_string(), c.is_eigenvalue.to_string()]);
            }
            o
        }
        Task::DpScan => {
            let t = triple(config)?;
            let prime: u64 = required(&p.p, task, "p")?.parse("p")?;
            let m: u32 = required(&p.m, task, "M")?.parse("M")?;
            let sys = scaled_dual_system(&t)?;
            let dp = sys.dp_intersection(prime, m)?;
            let mut o = Out::new(&["m", "point"]);
            let levels: Vec<Vec<String>> = dp.levels.iter().map(|l| fmt_all(&l.points)).collect();
            o.verdict("p", json!(prime));
            o.verdict("levels", json!(levels));
            o.diagnostic("stabilization_index", json!(dp.stabilization_index));
            o.diagnostic("sizes", json!(dp.levels.iter().map(|l| l.points.len()).collect::<Vec<_>>()));
            for l in &dp.levels {
                for x in &l.points {
                    o.table.push(vec![l.m.to_string(), format_rational(x)]);
                }
            }
            o
        }
        Task::FourierQ => {
            let t = triple(config)?;
            let n: u32 = required(&p.levels, task, "levels")?.parse("levels")?;
            let depth: u32 = match &p.depth {
                Some(d) => d.parse("depth")?,
                None => DEFAULT_DEPTH,
            };
            let scale: i64 = match &p.q {
                Some(q) => q.parse("q")?,
                None => 1,
            };
            let grid = match &p.grid {
                Some(g) => g.clone(),
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut g: Vec<f64> = (0..DEFAULT_GRID_POINTS).map(|_| rng.random_range(-1.0..1.0)).collect();
                    g.sort_by(f64::total_cmp);
                    g
                }
            };
            let s = canonical_levels(&t, n, DEFAULT_LEVEL_BUDGET)?;
            let factor = integer(scale);
            let mut header: Vec<String> = vec!["t0".into()];
            header.extend((0..=n).map(|k| format!("Q_{k}")));
            let mut o = Out { verdict: Map::new(), diagnostic: Map::new(), table: Table { header, rows: vec![] } };
            let mut columns = Vec::new();
            for level in &s.levels {
                let pts: Vec<ExactRational> = level.iter().map(|x| x * &factor).collect();
                columns.push(completeness_q(&t, &pts, &grid, depth, exec)?);
            }
            for (i, t0) in grid.iter().enumerate() {
                let mut row = vec![t0.to_string()];
                row.extend(columns.iter().map(|c| c[i].to_string()));
                o.table.push(row);
            }
            o.diagnostic("scale", json!(scale));
            o.diagnostic("depth", json!(depth));
            o.diagnostic("grid", json!(grid));
            o.diagnostic("q_by_level", json!(columns));
            o.diagnostic(
                "min_top_level",
                json!(columns.last().map(|c| c.iter().copied().fold(f64::INFINITY, f64::min))),
            );
            o.diagnostic("points_top_level", json!(s.top().len()));
            o
        }
        Task::OrderStats => {
            let a: u64 = required(&p.a, task, "a")?.parse("a")?;
            let x: u64 = required(&p.x, task, "x")?.parse("x")?;
            let delta = exponent(&p.delta, task, "delta")?;
            let r = order_density(a, delta, x, exec)?;
            let mut o = Out::new(&["p", "order", "in_a"]);
            o.verdict("a", json!(a));
            o.verdict("delta", json!(delta.to_string()));
            o.verdict("x", json!(x));
            o.verdict("numerator", json!(r.numerator));
            o.verdict("denominator", json!(r.denominator));
            o.diagnostic("ratio", json!(r.ratio));
            for rec in prime_records(x, &[a], exec).iter().filter(|rec| !a.is_multiple_of(rec.p)) {
                let ord = rec.ord[&a];
                o.table.push(vec![rec.p.to_string(), ord.to_string(), exceeds_power(ord, rec.p, delta).to_string()]);
            }
            o
        }
        Task::PplusStats => {
            let x: u64 = required(&p.x, task, "x")?.parse("x")?;
            let delta = exponent(&p.delta, task, "delta")?;
            delta.check_open_unit("delta")?;
            let r = pplus_density(x, delta, exec);
            let mut o = Out::new(&["p", "pplus", "exceeds"]);
            o.verdict("delta", json!(delta.to_string()));
            o.verdict("x", json!(x));
            o.verdict("numerator", json!(r.numerator));
            o.verdict("denominator", json!(r.denominator));
            o.diagnostic("ratio", json!(r.ratio));
            o.diagnostic("dickman_target", json!(1.0 - dickman(1.0 / delta.value(), DEFAULT_STEPS)));
            for rec in prime_records(x, &[], exec) {
                o.table.push(vec![
                    rec.p.to_string(),
                    rec.pplus.to_string(),
                    exceeds_power(rec.pplus, rec.p, delta).to_string(),
                ]);
            }
            o
        }
        Task::Dickman => {
            let u = *required(&p.u, task, "u")?;
            if !(u.is_finite() && u >= 0.0) {
                return Err(scalespec::Error::InvalidArgument(format!("u = {u} must be finite and nonnegative")).into());
            }
            let rho = dickman(u, DEFAULT_STEPS);
            let mut o = Out::new(&["u", "rho"]);
            o.diagnostic("u", json!(u));
            o.diagnostic("rho", json!(rho));
            o.diagnostic("steps_per_unit", json!(DEFAULT_STEPS));
            o.table.push(vec![u.to_string(), rho.to_string()]);
            o
        }
        Task::EhSum => {
            let x: u64 = required(&p.x, task, "x")?.parse("x")?;
            let theta = exponent(&p.theta, task, "theta")?;
            let r = eh_discrepancy(x, theta, exec)?;
            let mut o = Out::new(&["q", "max_deviation"]);
            o.verdict("x", json!(x));
            o.verdict("theta", json!(theta.to_string()));
            o.verdict("q_max", json!(r.q_max));
            o.diagnostic("total", json!(r.total));
            for (i, d) in r.terms.iter().enumerate() {
                o.table.push(vec![(i + 1).to_string(), d.to_string()]);
            }
            o
        }
    };
    Ok(Report {
        task: task.name().to_string(),
        config_hash: config.hash(),
        verdict: out.verdict,
        diagnostic: out.diagnostic,
        table: out.table,
    })
}
