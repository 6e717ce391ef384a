use nalgebra::Vector4;

pub type Vec4 = Vector4<f64>;

/// Flat Minkowski 3-space for `G = 0`, otherwise the hyperquadric
/// `⟨γ,γ⟩ = 1/G` in a 4-dimensional pseudo-Euclidean space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmbientMetric {
    dimension: usize,
    signs: [f64; 4],
    curvature: f64,
}

impl AmbientMetric {
    pub fn new(curvature: f64) -> Self {
        let (dimension, signs) = if curvature == 0.0 {
            (3, [1.0, 1.0, -1.0, 0.0])
        } else if curvature > 0.0 {
            (4, [1.0, 1.0, 1.0, -1.0])
        } else {
            (4, [1.0, 1.0, -1.0, -1.0])
        };
        Self {
            dimension,
            signs,
            curvature,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn signs(&self) -> &[f64] {
        &self.signs[..self.dimension]
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    /// Unused trailing coordinates carry sign 0 and never contribute.
    pub fn inner(&self, a: &Vec4, b: &Vec4) -> f64 {
        (0..4).map(|i| self.signs[i] * a[i] * b[i]).sum()
    }

    /// `1/G` on the hyperquadric.
    pub fn quadric_level(&self) -> Option<f64> {
        (self.curvature != 0.0).then(|| 1.0 / self.curvature)
    }
}

/// Point and Frenet frame of a pseudo-null curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameState {
    pub gamma: Vec4,
    pub t: Vec4,
    pub n: Vec4,
    pub b: Vec4,
}

impl FrameState {
    pub fn to_array(&self) -> [Vec4; 4] {
        [self.gamma, self.t, self.n, self.b]
    }

    pub fn from_array([gamma, t, n, b]: [Vec4; 4]) -> Self {
        Self { gamma, t, n, b }
    }

    /// Largest deviation of the frame Gram matrix from
    /// `⟨T,T⟩ = 1, ⟨N,B⟩ = −1` with all other products zero.
    pub fn gram_residual(&self, metric: &AmbientMetric) -> f64 {
        let ip = |a: &Vec4, b: &Vec4| metric.inner(a, b);
        [
            (ip(&self.t, &self.t) - 1.0).abs(),
            (ip(&self.n, &self.b) + 1.0).abs(),
            ip(&self.t, &self.n).abs(),
            ip(&self.t, &self.b).abs(),
            ip(&self.n, &self.n).abs(),
            ip(&self.b, &self.b).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// `|⟨γ,γ⟩ − 1/G|` and tangency of the frame to the hyperquadric; zero when `G = 0`.
    pub fn quadric_residual(&self, metric: &AmbientMetric) -> f64 {
        let Some(level) = metric.quadric_level() else {
            return 0.0;
        };
        let g = &self.gamma;
        [
            (metric.inner(g, g) - level).abs(),
            metric.inner(g, &self.t).abs(),
            metric.inner(g, &self.n).abs(),
            metric.inner(g, &self.b).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn residual(&self, metric: &AmbientMetric) -> f64 {
        self.gram_residual(metric).max(self.quadric_residual(metric))
    }

    /// `(ξ, η) = (N/k, kB)`.
    pub fn parallel_vectors(&self, k: f64) -> (Vec4, Vec4) {
        (self.n / k, self.b * k)
    }
}

/// Explicit pseudo-orthonormal seed frame with `γ₀` on the hyperquadric.
pub fn default_frame(metric: &AmbientMetric) -> FrameState {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let g = metric.curvature();
    if g == 0.0 {
        FrameState {
            gamma: Vec4::zeros(),
            t: Vec4::new(1.0, 0.0, 0.0, 0.0),
            n: Vec4::new(0.0, r, r, 0.0),
            b: Vec4::new(0.0, -r, r, 0.0),
        }
    } else if g > 0.0 {
        FrameState {
            gamma: Vec4::new(0.0, 0.0, 1.0 / g.sqrt(), 0.0),
            t: Vec4::new(1.0, 0.0, 0.0, 0.0),
            n: Vec4::new(0.0, r, 0.0, r),
            b: Vec4::new(0.0, -r, 0.0, r),
        }
    } else {
        FrameState {
            gamma: Vec4::new(0.0, 0.0, 0.0, 1.0 / (-g).sqrt()),
            t: Vec4::new(1.0, 0.0, 0.0, 0.0),
            n: Vec4::new(0.0, r, r, 0.0),
            b: Vec4::new(0.0, -r, r, 0.0),
        }
    }
}
