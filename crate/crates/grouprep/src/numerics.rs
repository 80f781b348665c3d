//! Grids, sampled functions, inner products, quadrature, and the Fourier
//! transform used by every other module.
//!
//! Discretization conventions:
//! - grids sample at midpoints `lower + (j + 1/2) h`, never at cell edges;
//! - the Fourier transform is `f̂(ξ) = ∫ f(x) e^{-2πiξx} dx`;
//! - multiplicative axes (`a > 0`) are discretized log-uniformly.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;

pub type C64 = Complex64;

/// Pointwise evaluator backing a [`SampledFunction`]. When present,
/// transformed functions are re-evaluated exactly instead of interpolated.
pub type Evaluator = Arc<dyn Fn(&[f64]) -> C64 + Send + Sync>;

/// A uniform midpoint grid over a box in R^n, n = 1 or 2.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    axes: Vec<GridAxis>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridAxis {
    pub lower: f64,
    pub upper: f64,
    pub points: usize,
}

impl GridAxis {
    pub fn spacing(&self) -> f64 {
        (self.upper - self.lower) / self.points as f64
    }

    /// Midpoint sample location `lower + (j + 1/2) h`.
    pub fn coord(&self, j: usize) -> f64 {
        self.lower + (j as f64 + 0.5) * self.spacing()
    }
}

impl Grid {
    pub fn line(lower: f64, upper: f64, points: usize) -> Result<Grid> {
        Grid::new(vec![GridAxis { lower, upper, points }])
    }

    pub fn plane(lower: [f64; 2], upper: [f64; 2], points: [usize; 2]) -> Result<Grid> {
        Grid::new(vec![
            GridAxis { lower: lower[0], upper: upper[0], points: points[0] },
            GridAxis { lower: lower[1], upper: upper[1], points: points[1] },
        ])
    }

    pub fn new(axes: Vec<GridAxis>) -> Result<Grid> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::InvalidParameter(format!(
                "grid dimension must be 1 or 2, got {}",
                axes.len()
            )));
        }
        for ax in &axes {
            if !(ax.lower < ax.upper) || ax.points == 0 || !ax.spacing().is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "bad grid axis [{}, {}] with {} points",
                    ax.lower, ax.upper, ax.points
                )));
            }
        }
        Ok(Grid { axes })
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, i: usize) -> &GridAxis {
        &self.axes[i]
    }

    pub fn total_points(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing()).product()
    }

    /// Coordinates of the flat index `idx` (row-major, axis 0 slowest).
    pub fn point(&self, idx: usize) -> [f64; 2] {
        match self.axes.len() {
            1 => [self.axes[0].coord(idx), 0.0],
            _ => {
                let n1 = self.axes[1].points;
                [self.axes[0].coord(idx / n1), self.axes[1].coord(idx % n1)]
            }
        }
    }
}

/// A complex-valued function on a midpoint grid; the stand-in for elements
/// of L²(Rⁿ). An optional analytic evaluator is carried along so that group
/// actions can re-evaluate the function exactly instead of interpolating.
#[derive(Clone)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<C64>,
    evaluator: Option<Evaluator>,
}

impl SampledFunction {
    pub fn from_values(grid: Grid, values: Vec<C64>) -> Result<SampledFunction> {
        if values.len() != grid.total_points() {
            return Err(Error::InvalidParameter(format!(
                "value count {} does not match grid point count {}",
                values.len(),
                grid.total_points()
            )));
        }
        Ok(SampledFunction { grid, values, evaluator: None })
    }

    /// Samples `f` on the grid and keeps it as the exact evaluator.
    pub fn from_fn(grid: Grid, f: Evaluator) -> SampledFunction {
        let g = grid.clone();
        let f2 = f.clone();
        let values = exec::map_indexed(grid.total_points(), move |i| {
            let p = g.point(i);
            f2(&p[..g.dimension()])
        });
        SampledFunction { grid, values, evaluator: Some(f) }
    }

    /// Like [`from_values`](Self::from_values) but keeps an evaluator for
    /// off-grid points. The caller guarantees the two agree on the grid.
    pub fn from_values_with(grid: Grid, values: Vec<C64>, f: Evaluator) -> Result<SampledFunction> {
        let mut out = SampledFunction::from_values(grid, values)?;
        out.evaluator = Some(f);
        Ok(out)
    }

    pub fn zero(grid: Grid) -> SampledFunction {
        let n = grid.total_points();
        SampledFunction { grid, values: vec![C64::new(0.0, 0.0); n], evaluator: None }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn evaluator(&self) -> Option<&Evaluator> {
        self.evaluator.as_ref()
    }

    pub fn has_evaluator(&self) -> bool {
        self.evaluator.is_some()
    }

    /// Evaluates at an arbitrary point: exactly through the evaluator when
    /// available, otherwise by linear interpolation of the samples with 0
    /// outside the box.
    pub fn eval(&self, x: &[f64]) -> C64 {
        if let Some(f) = &self.evaluator {
            return f(x);
        }
        self.interpolate(x)
    }

    fn interpolate(&self, x: &[f64]) -> C64 {
        match self.grid.dimension() {
            1 => {
                let (j, t) = match locate(self.grid.axis(0), x[0]) {
                    Some(jt) => jt,
                    None => return C64::new(0.0, 0.0),
                };
                let a = self.sample_or_zero_1d(j);
                let b = self.sample_or_zero_1d(j + 1);
                a * (1.0 - t) + b * t
            }
            _ => {
                let l0 = locate(self.grid.axis(0), x[0]);
                let l1 = locate(self.grid.axis(1), x[1]);
                let ((j0, t0), (j1, t1)) = match (l0, l1) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return C64::new(0.0, 0.0),
                };
                let v = |i0: isize, i1: isize| self.sample_or_zero_2d(i0, i1);
                let j0 = j0 as isize;
                let j1 = j1 as isize;
                v(j0, j1) * ((1.0 - t0) * (1.0 - t1))
                    + v(j0, j1 + 1) * ((1.0 - t0) * t1)
                    + v(j0 + 1, j1) * (t0 * (1.0 - t1))
                    + v(j0 + 1, j1 + 1) * (t0 * t1)
            }
        }
    }

    fn sample_or_zero_1d(&self, j: isize) -> C64 {
        if j < 0 || j as usize >= self.values.len() {
            C64::new(0.0, 0.0)
        } else {
            self.values[j as usize]
        }
    }

    fn sample_or_zero_2d(&self, j0: isize, j1: isize) -> C64 {
        let n0 = self.grid.axis(0).points as isize;
        let n1 = self.grid.axis(1).points as isize;
        if j0 < 0 || j0 >= n0 || j1 < 0 || j1 >= n1 {
            C64::new(0.0, 0.0)
        } else {
            self.values[(j0 * n1 + j1) as usize]
        }
    }

    /// Midpoint-rule squared L² norm.
    pub fn norm_sq(&self) -> f64 {
        let vol = self.grid.cell_volume();
        exec::sum_indexed(self.values.len(), |i| self.values[i].norm_sqr()) * vol
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, c: C64) -> SampledFunction {
        let values = self.values.iter().map(|v| v * c).collect();
        let evaluator = self.evaluator.clone().map(|f| {
            let g: Evaluator = Arc::new(move |x: &[f64]| f(x) * c);
            g
        });
        SampledFunction { grid: self.grid.clone(), values, evaluator }
    }
}

/// Fractional position of `x` between midpoints `j` and `j+1`, or `None`
/// when `x` is outside the closed box.
fn locate(axis: &GridAxis, x: f64) -> Option<(isize, f64)> {
    if x < axis.lower || x > axis.upper {
        return None;
    }
    let h = axis.spacing();
    let s = (x - axis.lower) / h - 0.5;
    let j = s.floor();
    Some((j as isize, s - j))
}

/// `Σ f(x_j) conj(g(x_j)) · cell volume`; conjugate-linear in the second
/// slot.
pub fn inner_product(f: &SampledFunction, g: &SampledFunction) -> Result<C64> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch(
            "inner product requires both functions on the same grid".into(),
        ));
    }
    let vol = f.grid.cell_volume();
    let re = exec::sum_indexed(f.values.len(), |i| (f.values[i] * g.values[i].conj()).re);
    let im = exec::sum_indexed(f.values.len(), |i| (f.values[i] * g.values[i].conj()).im);
    Ok(C64::new(re, im) * vol)
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadKind {
    Midpoint,
    GaussLegendre(usize),
}

impl QuadKind {
    pub fn nodes_per_panel(self) -> usize {
        match self {
            QuadKind::Midpoint => 1,
            QuadKind::GaussLegendre(n) => n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisScale {
    Linear,
    Log,
}

/// One axis of a composite quadrature rule over a parameter box.
#[derive(Clone, Copy, Debug)]
pub struct QuadAxis {
    pub lo: f64,
    pub hi: f64,
    pub panels: usize,
    pub kind: QuadKind,
    pub scale: AxisScale,
}

impl QuadAxis {
    pub fn linear(lo: f64, hi: f64, panels: usize, kind: QuadKind) -> QuadAxis {
        QuadAxis { lo, hi, panels, kind, scale: AxisScale::Linear }
    }

    pub fn log(lo: f64, hi: f64, panels: usize, kind: QuadKind) -> QuadAxis {
        QuadAxis { lo, hi, panels, kind, scale: AxisScale::Log }
    }

    /// Materializes the nodes and weights of the composite rule.
    pub fn rule(&self) -> Result<QuadRule1d> {
        if self.panels == 0 || self.kind.nodes_per_panel() == 0 {
            return Err(Error::InvalidParameter("quadrature rule needs >= 1 node".into()));
        }
        if !(self.lo < self.hi) {
            return Err(Error::InvalidParameter(format!(
                "bad quadrature interval [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.scale == AxisScale::Log && self.lo <= 0.0 {
            return Err(Error::InvalidParameter(
                "log-scaled axis requires a strictly positive interval".into(),
            ));
        }
        let (ref_nodes, ref_weights) = match self.kind {
            QuadKind::Midpoint => (vec![0.0], vec![2.0]),
            QuadKind::GaussLegendre(n) => gauss_legendre(n)?,
        };
        // work in t-space: identity for linear axes, log for multiplicative
        let (tlo, thi) = match self.scale {
            AxisScale::Linear => (self.lo, self.hi),
            AxisScale::Log => (self.lo.ln(), self.hi.ln()),
        };
        let dt = (thi - tlo) / self.panels as f64;
        let mut nodes = Vec::with_capacity(self.panels * ref_nodes.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for p in 0..self.panels {
            let c = tlo + (p as f64 + 0.5) * dt;
            for (u, w) in ref_nodes.iter().zip(&ref_weights) {
                let t = c + 0.5 * dt * u;
                let wt = 0.5 * dt * w;
                match self.scale {
                    AxisScale::Linear => {
                        nodes.push(t);
                        weights.push(wt);
                    }
                    AxisScale::Log => {
                        let x = t.exp();
                        nodes.push(x);
                        weights.push(wt * x);
                    }
                }
            }
        }
        Ok(QuadRule1d { nodes, weights })
    }
}

#[derive(Clone, Debug)]
pub struct QuadRule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule1d {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: Fn(f64) -> C64>(&self, f: F) -> C64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .fold(C64::new(0.0, 0.0), |a, b| a + b)
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("Gauss-Legendre order must be >= 1".into()));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_n'(x)
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    Ok((nodes, weights))
}

/// Composite quadrature of `integrand × density` over a truncated parameter
/// box; up to three axes, product rule.
pub fn integrate_haar<I, D>(axes: &[QuadAxis], integrand: I, density: D) -> Result<f64>
where
    I: Fn(&[f64]) -> f64 + Sync + Send,
    D: Fn(&[f64]) -> f64 + Sync + Send,
{
    if axes.is_empty() || axes.len() > 3 {
        return Err(Error::InvalidParameter("integrate_haar supports 1 to 3 axes".into()));
    }
    let rules: Vec<QuadRule1d> = axes.iter().map(|a| a.rule()).collect::<Result<_>>()?;
    let sizes: Vec<usize> = rules.iter().map(|r| r.len()).collect();
    let total: usize = sizes.iter().product();
    // validate density at every node before summing
    for flat in 0..total {
        let mut rem = flat;
        let mut x = [0.0; 3];
        for (d, r) in rules.iter().enumerate().rev() {
            x[d] = r.nodes[rem % sizes[d]];
            rem /= sizes[d];
        }
        let den = density(&x[..axes.len()]);
        if !den.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Haar density is not finite at node {:?}",
                &x[..axes.len()]
            )));
        }
    }
    Ok(exec::sum_indexed(total, |flat| {
        let mut rem = flat;
        let mut x = [0.0; 3];
        let mut w = 1.0;
        for (d, r) in rules.iter().enumerate().rev() {
            let j = rem % sizes[d];
            x[d] = r.nodes[j];
            w *= r.weights[j];
            rem /= sizes[d];
        }
        let p = &x[..axes.len()];
        w * integrand(p) * density(p)
    }))
}

// ---------------------------------------------------------------------------
// Fourier transform
// ---------------------------------------------------------------------------

/// `f̂(ξ)` by the defining midpoint-rule integral; spectrally accurate for
/// smooth functions well contained in the grid box.
pub fn fourier_integral(f: &SampledFunction, xi: f64) -> C64 {
    debug_assert_eq!(f.grid().dimension(), 1);
    let ax = f.grid().axis(0);
    let h = ax.spacing();
    let mut acc = C64::new(0.0, 0.0);
    for (j, v) in f.values().iter().enumerate() {
        let x = ax.coord(j);
        acc += v * C64::from_polar(1.0, -2.0 * PI * xi * x);
    }
    acc * h
}

/// Discrete Fourier transform on the midpoint grid, with phase correction
/// for the box offset. Output samples live on the frequency grid
/// `[-N/2L, N/2L)` with spacing `1/L`; the caller is responsible for `f`
/// being supported well inside its box.
pub fn fourier_transform(f: &SampledFunction) -> Result<SampledFunction> {
    if f.grid().dimension() != 1 {
        return Err(Error::InvalidParameter("fourier_transform is one-dimensional".into()));
    }
    let ax = f.grid().axis(0);
    let n = ax.points;
    let h = ax.spacing();
    let len = ax.upper - ax.lower;
    let lo = ax.lower;

    // f̂(ξ_m) with ξ_m = (m + 1/2)/L, m = k - N/2, reduces to a standard DFT
    // of f_j (-1)^j e^{-iπj/N} with pre/post twiddles.
    let mut buf: Vec<C64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            v * C64::from_polar(sign, -PI * j as f64 / n as f64)
        })
        .collect();
    let mut planner = rustfft::FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    fft.process(&mut buf);

    let freq_grid = Grid::line(-(n as f64) / (2.0 * len), n as f64 / (2.0 * len), n)?;
    let values: Vec<C64> = buf
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let m = k as f64 - n as f64 / 2.0;
            let phase = -2.0 * PI * ((m + 0.5) * lo / len + (2.0 * m + 1.0) / (4.0 * n as f64));
            v * C64::from_polar(h, phase)
        })
        .collect();
    // off-grid frequencies go through the defining integral, so transformed
    // functions stay exact to quadrature precision under later group actions;
    // beyond the Nyquist band the quadrature aliases, so cut to 0 there like
    // the interpolation convention does
    let src = f.clone();
    let (lo_f, hi_f) = (freq_grid.axis(0).lower, freq_grid.axis(0).upper);
    let eval: Evaluator = Arc::new(move |x: &[f64]| {
        if x[0] < lo_f || x[0] >= hi_f {
            C64::new(0.0, 0.0)
        } else {
            fourier_integral(&src, x[0])
        }
    });
    SampledFunction::from_values_with(freq_grid, values, eval)
}
