/// Resolution (grid points per unit interval) used when none is given.
pub const DEFAULT_STEPS: usize = 10_000;

/// Tabulated Dickman function on `[0, u_max]`.
///
/// `ρ = 1` on `[0, 1]`. Beyond that the table integrates the delay equation
/// `u ρ'(u) = -ρ(u - 1)` in its integrated form `u ρ(u) = ∫_{u-1}^u ρ(t) dt`
/// with the composite trapezoidal rule on a grid aligned with the integers.
/// The trapezoid's own endpoint `ρ(u)` is solved for implicitly, so every
/// new value is a positive weighted average of earlier ones and the table
/// keeps its relative accuracy far into the tail.
#[derive(Debug, Clone)]
pub struct DickmanTable {
    steps: usize,
    values: Vec<f64>,
}

/// Neumaier-compensated running sum; the sliding window adds and removes
/// terms that differ by ten orders of magnitude.
#[derive(Default)]
struct RunningSum {
    sum: f64,
    carry: f64,
}

impl RunningSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl DickmanTable {
    pub fn new(u_max: f64, steps: usize) -> Self {
        assert!(steps >= 1, "steps must be positive");
        assert!(u_max >= 0.0 && u_max.is_finite(), "u_max must be finite and non-negative");
        let h = 1.0 / steps as f64;
        let units = u_max.ceil().max(1.0) as usize;
        let len = units * steps + 2;
        let mut values = vec![1.0; len];
        // interior of the window (i - steps, i): indices i-steps+1 ..= i-1
        let mut interior = RunningSum::default();
        for _ in 1..steps {
            interior.add(1.0);
        }
        for i in steps + 1..len {
            let t = i as f64 * h;
            values[i] = h * (0.5 * values[i - steps] + interior.value()) / (t - 0.5 * h);
            interior.add(values[i]);
            interior.add(-values[i - steps + 1]);
        }
        DickmanTable { steps, values }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Largest argument the table covers.
    pub fn u_max(&self) -> f64 {
        (self.values.len() - 2) as f64 / self.steps as f64
    }

    /// `ρ(u)` by linear interpolation between grid points. Panics past
    /// [`Self::u_max`].
    pub fn eval(&self, u: f64) -> f64 {
        assert!(u >= 0.0, "dickman argument must be non-negative");
        if u <= 1.0 {
            return 1.0;
        }
        let pos = u * self.steps as f64;
        let i = pos.floor() as usize;
        assert!(i + 1 < self.values.len(), "u = {u} beyond table range {}", self.u_max());
        let frac = pos - i as f64;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }
}

/// `ρ(u)` at resolution `steps` points per unit interval.
pub fn dickman(u: f64, steps: usize) -> f64 {
    DickmanTable::new(u, steps).eval(u)
}
