//! Named analytic functions used as targets and admissible vectors: the
//! characteristic function of [0,1), Gaussians, the odd Gaussian
//! `√(2π) x e^{-πx²}`, the B-spline hat, and the closed-form transform
//! `χ̂_[0,1)`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::numerics::{Evaluator, C64};

/// χ_[0,1)
pub fn chi01() -> Evaluator {
    Arc::new(|x: &[f64]| {
        if x[0] >= 0.0 && x[0] < 1.0 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// e^{-πx²}
pub fn gaussian() -> Evaluator {
    Arc::new(|x: &[f64]| C64::new((-PI * x[0] * x[0]).exp(), 0.0))
}

/// 2^{1/4} e^{-πx²}, unit L² norm
pub fn normalized_gaussian() -> Evaluator {
    let c = 2.0f64.powf(0.25);
    Arc::new(move |x: &[f64]| C64::new(c * (-PI * x[0] * x[0]).exp(), 0.0))
}

/// √(2π) x e^{-πx²}; admissible for the affine representation with
/// Calderón constant exactly 1.
pub fn odd_gaussian() -> Evaluator {
    let c = (2.0 * PI).sqrt();
    Arc::new(move |x: &[f64]| C64::new(c * x[0] * (-PI * x[0] * x[0]).exp(), 0.0))
}

/// Piecewise-linear hat on [0,2] with peak 1 at x = 1.
pub fn hat() -> Evaluator {
    Arc::new(|x: &[f64]| {
        let t = x[0];
        let v = if t >= 0.0 && t <= 2.0 { 1.0 - (t - 1.0).abs() } else { 0.0 };
        C64::new(v, 0.0)
    })
}

/// sin(2πx) on [0,1): a zero-mean, compactly supported bump.
pub fn zero_mean_bump() -> Evaluator {
    Arc::new(|x: &[f64]| {
        if x[0] >= 0.0 && x[0] < 1.0 {
            C64::new((2.0 * PI * x[0]).sin(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// e^{-π|x|²} on R²
pub fn gaussian2d() -> Evaluator {
    Arc::new(|x: &[f64]| C64::new((-PI * (x[0] * x[0] + x[1] * x[1])).exp(), 0.0))
}

/// Closed form χ̂_[0,1)(ξ) = (e^{-2πiξ} - 1)/(-2πiξ), with the limit value 1
/// at ξ = 0.
pub fn chi01_hat() -> Evaluator {
    Arc::new(|x: &[f64]| chi01_hat_at(x[0]))
}

pub fn chi01_hat_at(xi: f64) -> C64 {
    if xi == 0.0 {
        return C64::new(1.0, 0.0);
    }
    let num = C64::from_polar(1.0, -2.0 * PI * xi) - C64::new(1.0, 0.0);
    num / C64::new(0.0, -2.0 * PI * xi)
}

/// Constant 1 (any dimension).
pub fn constant_one() -> Evaluator {
    Arc::new(|_: &[f64]| C64::new(1.0, 0.0))
}

/// Looks a function up by its CLI name.
pub fn by_name(name: &str) -> Option<Evaluator> {
    match name {
        "chi01" => Some(chi01()),
        "gaussian" => Some(gaussian()),
        "normalized-gaussian" => Some(normalized_gaussian()),
        "odd-gaussian" => Some(odd_gaussian()),
        "hat" => Some(hat()),
        "zero-mean-bump" => Some(zero_mean_bump()),
        "gaussian2d" => Some(gaussian2d()),
        "chi01-hat" => Some(chi01_hat()),
        "one" => Some(constant_one()),
        _ => None,
    }
}
