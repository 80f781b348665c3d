//! The unitary operators `T_y`, `E_y`, `D_y` and the four representations
//! acting on sampled functions.
//!
//! Transformed functions carry a composed evaluator: the group action is
//! re-evaluated at the mapped point rather than interpolated, so identities
//! that are exact in the continuum stay exact on the grid whenever the
//! underlying function has an analytic evaluator.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{multiply, GroupElement};
use crate::numerics::{SampledFunction, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentationKind {
    /// π(a,b) f(x) = |a|^{-1/2} f((x-b)/a) on L²(R)
    AffinePi,
    /// π⁺(a,b) f(x) = a^{1/2} e^{2πibx} f(ax) on L²(0,∞), a > 0
    AffinePiPlus,
    /// π(t,a,b) f(x) = e^{2πit} e^{-2πi a·b} e^{2πi a·x} f(x-b) on L²(Rⁿ)
    SchroedingerWH,
    /// π(S_s A_a, t) f(x) = a^{-3/4} f((S_s A_a)^{-1}(x-t)) on L²(R²)
    ShearletPi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepresentationTag {
    pub kind: RepresentationKind,
    pub dimension: usize,
}

impl RepresentationTag {
    pub fn new(kind: RepresentationKind, dimension: usize) -> Result<RepresentationTag> {
        let ok = match kind {
            RepresentationKind::AffinePi | RepresentationKind::AffinePiPlus => dimension == 1,
            RepresentationKind::ShearletPi => dimension == 2,
            RepresentationKind::SchroedingerWH => dimension == 1 || dimension == 2,
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "representation {kind:?} does not act in dimension {dimension}"
            )));
        }
        Ok(RepresentationTag { kind, dimension })
    }

    pub fn affine() -> RepresentationTag {
        RepresentationTag { kind: RepresentationKind::AffinePi, dimension: 1 }
    }

    pub fn affine_plus() -> RepresentationTag {
        RepresentationTag { kind: RepresentationKind::AffinePiPlus, dimension: 1 }
    }

    pub fn schroedinger(n: usize) -> RepresentationTag {
        RepresentationTag { kind: RepresentationKind::SchroedingerWH, dimension: n }
    }

    pub fn shearlet() -> RepresentationTag {
        RepresentationTag { kind: RepresentationKind::ShearletPi, dimension: 2 }
    }

    pub fn cli_name(&self) -> &'static str {
        match self.kind {
            RepresentationKind::AffinePi => "pi-affine",
            RepresentationKind::AffinePiPlus => "pi-plus",
            RepresentationKind::SchroedingerWH => "schroedinger",
            RepresentationKind::ShearletPi => "pi-shearlet",
        }
    }

    pub fn from_cli_name(name: &str) -> Result<RepresentationTag> {
        match name {
            "pi-affine" => Ok(RepresentationTag::affine()),
            "pi-plus" => Ok(RepresentationTag::affine_plus()),
            "schroedinger" => Ok(RepresentationTag::schroedinger(1)),
            "pi-shearlet" => Ok(RepresentationTag::shearlet()),
            _ => Err(Error::InvalidParameter(format!("unknown representation `{name}`"))),
        }
    }
}

/// Builds `x ↦ amp(x) · f(src(x))` with a composed evaluator.
fn transformed<M>(f: &SampledFunction, map: M) -> SampledFunction
where
    M: Fn(&[f64]) -> ([f64; 2], C64) + Send + Sync + 'static,
{
    let dim = f.grid().dimension();
    let inner = Arc::new(f.clone());
    SampledFunction::from_fn(
        f.grid().clone(),
        Arc::new(move |x: &[f64]| {
            let (src, amp) = map(x);
            amp * inner.eval(&src[..dim])
        }),
    )
}

/// T_y f(x) = f(x - y)
pub fn translate(f: &SampledFunction, y: &[f64]) -> SampledFunction {
    let y = [y[0], if y.len() > 1 { y[1] } else { 0.0 }];
    transformed(f, move |x| {
        let src = [x[0] - y[0], if x.len() > 1 { x[1] - y[1] } else { 0.0 }];
        (src, C64::new(1.0, 0.0))
    })
}

/// E_y f(x) = e^{2πi y·x} f(x)
pub fn modulate(f: &SampledFunction, y: &[f64]) -> SampledFunction {
    let y = [y[0], if y.len() > 1 { y[1] } else { 0.0 }];
    transformed(f, move |x| {
        let d = x[0] * y[0] + if x.len() > 1 { x[1] * y[1] } else { 0.0 };
        ([x[0], if x.len() > 1 { x[1] } else { 0.0 }], C64::from_polar(1.0, 2.0 * PI * d))
    })
}

/// D_y f(x) = |y|^{-1/2} f(x/y), y ≠ 0 (one-dimensional)
pub fn dilate(f: &SampledFunction, y: f64) -> Result<SampledFunction> {
    if y == 0.0 || !y.is_finite() {
        return Err(Error::InvalidParameter("dilation parameter must be nonzero".into()));
    }
    if f.grid().dimension() != 1 {
        return Err(Error::InvalidParameter("dilate is one-dimensional".into()));
    }
    // computed as 1/sqrt so that 2^{-1/2} · |2^{-1}|^{-1/2} rounds to exactly 1
    let amp = y.abs().sqrt().recip();
    Ok(transformed(f, move |x| ([x[0] / y, 0.0], C64::new(amp, 0.0))))
}

/// The representation applied to a sampled function.
pub fn apply(rep: RepresentationTag, g: &GroupElement, f: &SampledFunction) -> Result<SampledFunction> {
    if f.grid().dimension() != rep.dimension {
        return Err(Error::GridMismatch(format!(
            "{:?} acts on {}-dimensional functions, got a {}-dimensional grid",
            rep.kind,
            rep.dimension,
            f.grid().dimension()
        )));
    }
    match (rep.kind, g) {
        (RepresentationKind::AffinePi, GroupElement::Affine { a, b }) => {
            // π(a,b) = T_b D_a, exactly as factored
            Ok(translate(&dilate(f, *a)?, &[*b]))
        }
        (RepresentationKind::AffinePiPlus, GroupElement::Affine { a, b }) => {
            if !(*a > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "π⁺ requires a > 0, got a = {a}"
                )));
            }
            // π⁺(a,b) = E_b D_{a^{-1}}
            Ok(modulate(&dilate(f, 1.0 / a)?, &[*b]))
        }
        (RepresentationKind::SchroedingerWH, GroupElement::WeylHeisenberg { t, a, b }) => {
            if a.len() != rep.dimension {
                return Err(Error::KindMismatch(format!(
                    "Schrödinger representation of dimension {} got an element of dimension {}",
                    rep.dimension,
                    a.len()
                )));
            }
            let phase0 = 2.0 * PI * (t - a.iter().zip(b.iter()).map(|(x, y)| x * y).sum::<f64>());
            let a = [a[0], if a.len() > 1 { a[1] } else { 0.0 }];
            let b = [b[0], if b.len() > 1 { b[1] } else { 0.0 }];
            let dim = rep.dimension;
            Ok(transformed(f, move |x| {
                let ax = a[0] * x[0] + if dim > 1 { a[1] * x[1] } else { 0.0 };
                let src = [x[0] - b[0], if dim > 1 { x[1] - b[1] } else { 0.0 }];
                (src, C64::from_polar(1.0, phase0 + 2.0 * PI * ax))
            }))
        }
        (RepresentationKind::ShearletPi, GroupElement::Shearlet { a, s, t }) => {
            let amp = a.powf(-0.75);
            let (a, s, t) = (*a, *s, *t);
            // (S_s A_a)^{-1} = [[1/a, -s/a], [0, 1/√a]]
            let inv00 = 1.0 / a;
            let inv01 = -s / a;
            let inv11 = 1.0 / a.sqrt();
            Ok(transformed(f, move |x| {
                let u = [x[0] - t[0], x[1] - t[1]];
                ([inv00 * u[0] + inv01 * u[1], inv11 * u[1]], C64::new(amp, 0.0))
            }))
        }
        _ => Err(Error::KindMismatch(format!(
            "{:?} cannot act via element kind `{}`",
            rep.kind,
            g.kind_name()
        ))),
    }
}

/// ‖π(gh)f − π(g)π(h)f‖ / ‖f‖ on the grid.
pub fn homomorphism_check(
    rep: RepresentationTag,
    g: &GroupElement,
    h: &GroupElement,
    f: &SampledFunction,
) -> Result<f64> {
    let gh = multiply(g, h)?;
    let lhs = apply(rep, &gh, f)?;
    let rhs = apply(rep, g, &apply(rep, h, f)?)?;
    let diff_sq: f64 = lhs
        .values()
        .iter()
        .zip(rhs.values())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        * f.grid().cell_volume();
    Ok(diff_sq.sqrt() / f.norm())
}

/// ‖f‖² − ‖π(g)f‖² on the grid: the mass pushed outside the box by the
/// action (zero for a perfectly contained transform).
pub fn unitarity_defect(rep: RepresentationTag, g: &GroupElement, f: &SampledFunction) -> Result<f64> {
    Ok(f.norm_sq() - apply(rep, g, f)?.norm_sq())
}
