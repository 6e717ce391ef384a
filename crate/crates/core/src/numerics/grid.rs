use super::NumericsError;

/// Finite-difference weights by Fornberg's recursion.
///
/// Returns `c` with `c[k][j]` the weight of `x[j]` in the `k`-th derivative at
/// `z`, for `k = 0..=m`.
pub fn fd_weights(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Half-width of the central stencil for derivative `d` at even accuracy `p`.
pub fn central_half_width(d: usize, p: usize) -> usize {
    (d.div_ceil(2) + p / 2).saturating_sub(1).max(1)
}

/// Central stencil on a unit-spaced grid: `(offsets, weights)`, to be scaled by
/// `step^{-d}`.
pub fn central_stencil(d: usize, p: usize) -> (Vec<i64>, Vec<f64>) {
    let r = central_half_width(d, p) as i64;
    let offsets: Vec<i64> = (-r..=r).collect();
    let x: Vec<f64> = offsets.iter().map(|&o| o as f64).collect();
    let w = fd_weights(0.0, &x, d).swap_remove(d);
    (offsets, w)
}

fn check_accuracy(p: usize) -> Result<(), NumericsError> {
    if p == 0 || p % 2 == 1 {
        return Err(NumericsError::InvalidParameter(format!(
            "stencil accuracy must be a positive even integer, got {p}"
        )));
    }
    Ok(())
}

/// Uniformly sampled scalar function of arc length.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField {
    origin: f64,
    step: f64,
    values: Vec<f64>,
    periodic: bool,
}

impl SampledField {
    pub fn new(origin: f64, step: f64, values: Vec<f64>, periodic: bool) -> Result<Self, NumericsError> {
        if !(step > 0.0 && step.is_finite()) || !origin.is_finite() {
            return Err(NumericsError::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if values.len() < 4 {
            return Err(NumericsError::InvalidGrid(format!(
                "need at least 4 samples, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(NumericsError::InvalidGrid(format!("sample {i} is not finite")));
        }
        Ok(Self {
            origin,
            step,
            values,
            periodic,
        })
    }

    /// Samples `f` at `origin + i·step` for `i < n`.
    pub fn from_fn(
        origin: f64,
        step: f64,
        n: usize,
        periodic: bool,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, NumericsError> {
        let values = (0..n).map(|i| f(origin + i as f64 * step)).collect();
        Self::new(origin, step, values, periodic)
    }

    /// `n` samples of `f` on the periodic interval `[0, length)`.
    pub fn periodic_from_fn(n: usize, length: f64, f: impl Fn(f64) -> f64) -> Result<Self, NumericsError> {
        Self::from_fn(0.0, length / n as f64, n, true, f)
    }

    /// Samples of `f` on `[a, b]` with both ends included.
    pub fn interval_from_fn(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self, NumericsError> {
        if n < 2 {
            return Err(NumericsError::InvalidGrid("need at least 2 samples".into()));
        }
        Self::from_fn(a, (b - a) / (n - 1) as f64, n, false, f)
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn s(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.step
    }

    /// Length of the period for periodic fields, of the sampled span otherwise.
    pub fn span(&self) -> f64 {
        let cells = if self.periodic { self.len() } else { self.len() - 1 };
        cells as f64 * self.step
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self, NumericsError> {
        if values.len() != self.len() {
            return Err(NumericsError::GridMismatch(format!(
                "{} values for a grid of {}",
                values.len(),
                self.len()
            )));
        }
        Self::new(self.origin, self.step, values, self.periodic)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self.periodic == other.periodic
            && (self.origin - other.origin).abs() <= 1e-12 * self.step
            && (self.step - other.step).abs() <= 1e-12 * self.step
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, NumericsError> {
        if !self.same_grid(other) {
            return Err(NumericsError::GridMismatch("fields live on different grids".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    fn wrap(&self, i: i64) -> usize {
        i.rem_euclid(self.len() as i64) as usize
    }

    /// Stencil indices (relative to `i`) for derivative `d` at accuracy `p`.
    fn window(&self, i: usize, d: usize, p: usize) -> Vec<i64> {
        let r = central_half_width(d, p) as i64;
        let n = self.len() as i64;
        let i = i as i64;
        if self.periodic || (i - r >= 0 && i + r < n) {
            return (-r..=r).collect();
        }
        let width = (2 * r + 1).max((p + d) as i64).min(n);
        let start = (i - r).clamp(0, n - width);
        (start - i..start - i + width).collect()
    }

    /// `d`-th derivative by `p`-th order finite differences: central on
    /// periodic grids and in the interior, one-sided near open ends.
    pub fn derivative(&self, d: usize, p: usize) -> Result<Self, NumericsError> {
        check_accuracy(p)?;
        if d == 0 {
            return Ok(self.clone());
        }
        let needed = if self.periodic {
            2 * central_half_width(d, p) + 1
        } else {
            (2 * central_half_width(d, p) + 1).max(p + d)
        };
        if self.len() < needed {
            return Err(NumericsError::InvalidGrid(format!(
                "derivative of order {d} at accuracy {p} needs {needed} samples"
            )));
        }
        let scale = self.step.powi(-(d as i32));
        let mut out = Vec::with_capacity(self.len());
        if self.periodic {
            let (offsets, w) = central_stencil(d, p);
            for i in 0..self.len() {
                let sum: f64 = offsets
                    .iter()
                    .zip(&w)
                    .map(|(&o, &wk)| wk * self.values[self.wrap(i as i64 + o)])
                    .sum();
                out.push(sum * scale);
            }
        } else {
            for i in 0..self.len() {
                let offsets = self.window(i, d, p);
                let x: Vec<f64> = offsets.iter().map(|&o| o as f64).collect();
                let w = fd_weights(0.0, &x, d).swap_remove(d);
                let sum: f64 = offsets
                    .iter()
                    .zip(&w)
                    .map(|(&o, &wk)| wk * self.values[(i as i64 + o) as usize])
                    .sum();
                out.push(sum * scale);
            }
        }
        self.with_values(out)
    }

    /// `[u, u′, …, u^(max_order)]` at every sample.
    pub fn jets(&self, max_order: usize, p: usize) -> Result<Vec<Vec<f64>>, NumericsError> {
        let derivs = (0..=max_order)
            .map(|d| self.derivative(d, p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((0..self.len())
            .map(|i| derivs.iter().map(|f| f.values[i]).collect())
            .collect())
    }

    /// Four-point Lagrange interpolation; wraps on periodic grids and uses the
    /// boundary window (extrapolating) past open ends.
    pub fn interpolate(&self, s: f64) -> f64 {
        let x = (s - self.origin) / self.step;
        let j = x.floor() as i64;
        let n = self.len() as i64;
        let start = if self.periodic { j - 1 } else { (j - 1).clamp(0, n - 4) };
        let t = x - start as f64;
        let mut sum = 0.0;
        for a in 0..4 {
            let mut w = 1.0;
            for b in 0..4 {
                if a != b {
                    w *= (t - b as f64) / (a as f64 - b as f64);
                }
            }
            sum += w * self.values[self.wrap(start + a)];
        }
        sum
    }

    /// Resamples onto `target`'s grid by [`interpolate`](Self::interpolate).
    pub fn resample(&self, origin: f64, step: f64, n: usize, periodic: bool) -> Result<Self, NumericsError> {
        Self::from_fn(origin, step, n, periodic, |s| self.interpolate(s))
    }

    /// `F(s_i) = ∫_{s_0}^{s_i} u`, integrating the cubic interpolant cell by
    /// cell with two-point Gauss quadrature.
    pub fn cumulative_integral(&self) -> Self {
        let node = 0.5 / 3f64.sqrt();
        let mut out = Vec::with_capacity(self.len());
        let mut acc = 0.0;
        out.push(acc);
        for i in 0..self.len() - 1 {
            let a = self.s(i);
            let q = self.interpolate(a + self.step * (0.5 - node))
                + self.interpolate(a + self.step * (0.5 + node));
            acc += 0.5 * self.step * q;
            out.push(acc);
        }
        Self {
            values: out,
            periodic: false,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classic_weights() {
        let (o, w) = central_stencil(1, 2);
        assert_eq!(o, vec![-1, 0, 1]);
        assert!((w[0] + 0.5).abs() < 1e-15 && w[1].abs() < 1e-15 && (w[2] - 0.5).abs() < 1e-15);
        let (_, w) = central_stencil(2, 2);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] + 2.0).abs() < 1e-15);
        let (o, w) = central_stencil(1, 4);
        assert_eq!(o.len(), 5);
        let expected = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(central_half_width(3, 2), 2);
        assert_eq!(central_half_width(2, 4), 2);
    }

    #[test]
    fn periodic_derivatives_converge() {
        let err = |n: usize, p: usize| {
            let f = SampledField::periodic_from_fn(n, 2.0 * PI, f64::sin).unwrap();
            let df = f.derivative(1, p).unwrap();
            let exact = SampledField::periodic_from_fn(n, 2.0 * PI, f64::cos).unwrap();
            df.max_abs_diff(&exact).unwrap()
        };
        let r2 = err(32, 2) / err(64, 2);
        let r4 = err(32, 4) / err(64, 4);
        assert!((3.8..4.2).contains(&r2), "{r2}");
        assert!((15.0..17.0).contains(&r4), "{r4}");
    }

    #[test]
    fn open_grid_uses_one_sided_windows() {
        let f = SampledField::interval_from_fn(0.0, 1.0, 41, |s| s.powi(3)).unwrap();
        let d2 = f.derivative(2, 2).unwrap();
        for (i, v) in d2.values().iter().enumerate() {
            assert!((v - 6.0 * f.s(i)).abs() < 1e-9, "{i}: {v}");
        }
    }

    #[test]
    fn interpolation_is_exact_on_cubics() {
        let f = SampledField::interval_from_fn(-1.0, 2.0, 13, |s| 1.0 - s + 2.0 * s.powi(3)).unwrap();
        for s in [-1.0, -0.93, 0.1, 1.37, 1.99, 2.0] {
            assert!((f.interpolate(s) - (1.0 - s + 2.0 * s.powi(3))).abs() < 1e-12);
        }
        let p = SampledField::periodic_from_fn(64, 2.0 * PI, f64::cos).unwrap();
        assert!((p.interpolate(2.0 * PI + 0.3) - 0.3f64.cos()).abs() < 1e-6);
        assert!((p.interpolate(-0.3) - 0.3f64.cos()).abs() < 1e-6);
    }

    #[test]
    fn cumulative_integral_order() {
        let err = |n: usize| {
            let f = SampledField::interval_from_fn(0.0, 3.0, n, f64::cos).unwrap();
            let fi = f.cumulative_integral();
            (0..n).map(|i| (fi.values()[i] - f.s(i).sin()).abs()).fold(0.0, f64::max)
        };
        let (a, b) = (err(31), err(61));
        assert!(a < 2e-6);
        assert!(a / b > 12.0, "{a} {b}");
    }

    #[test]
    fn invalid_grids() {
        assert!(SampledField::new(0.0, 0.0, vec![0.0; 8], true).is_err());
        assert!(SampledField::new(0.0, 1.0, vec![0.0; 3], true).is_err());
        assert!(SampledField::new(0.0, 1.0, vec![f64::NAN; 5], true).is_err());
        let f = SampledField::new(0.0, 1.0, vec![0.0; 5], true).unwrap();
        assert!(f.derivative(1, 3).is_err());
        assert!(f.derivative(4, 4).is_err());
    }
}
