//! Matrix coefficients F_{v,u}(x) = ⟨v, π(x)u⟩, Calderón admissibility
//! constants, the Weyl–Heisenberg orthogonality relation, and the transfer
//! that turns a dependency in H_π into one among left translations in L²(G).

use std::io::Write;

use crate::dependency::{verify, CertificateSpace, CertificateTarget, DependencyCertificate};
use crate::error::{Error, Result};
use crate::exec;
use crate::groups::{ContinuousGroup, GroupElement, HaarDensity, Side};
use crate::numerics::{fourier_integral, inner_product, QuadAxis, QuadKind, SampledFunction, C64};
use crate::representations::{apply, RepresentationKind, RepresentationTag};

/// Inner-product rule used when evaluating a matrix coefficient.
#[derive(Clone, Copy, Debug)]
pub enum InnerRule {
    /// Midpoint sum over the grid of `v` (uses sampled values).
    GridMidpoint,
    /// Composite Gauss–Legendre on `[lower, upper]` through the evaluators;
    /// an even panel count aligns a panel boundary at the interval midpoint.
    GaussLegendre { lower: f64, upper: f64, panels: usize, nodes: usize },
}

/// Quadrature sampling of a group's parameter box: group points with Haar
/// weights, used to take norms and inner products of functions on G.
#[derive(Clone, Debug)]
pub struct ParameterGrid {
    pub points: Vec<GroupElement>,
    pub weights: Vec<f64>,
}

impl ParameterGrid {
    /// (a, b) box with `na` log-spaced a > 0 midpoints and `nb` linear b
    /// midpoints, weighted by the left Haar measure da db/a².
    pub fn affine_log(a_lo: f64, a_hi: f64, na: usize, b_lo: f64, b_hi: f64, nb: usize) -> Result<ParameterGrid> {
        if !(a_lo > 0.0 && a_hi > a_lo) || na == 0 || nb == 0 || !(b_hi > b_lo) {
            return Err(Error::InvalidParameter("malformed affine parameter box".into()));
        }
        let dl = (a_hi / a_lo).ln() / na as f64;
        let db = (b_hi - b_lo) / nb as f64;
        let density = HaarDensity::new(ContinuousGroup::Affine, Side::Left);
        let mut points = Vec::with_capacity(na * nb);
        let mut weights = Vec::with_capacity(na * nb);
        for i in 0..na {
            let a = (a_lo.ln() + (i as f64 + 0.5) * dl).exp();
            for j in 0..nb {
                let b = b_lo + (j as f64 + 0.5) * db;
                points.push(GroupElement::affine(a, b)?);
                // da = a d(log a)
                weights.push(a * dl * db * density.eval(&[a, b]));
            }
        }
        Ok(ParameterGrid { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The recipe for F_{v,u} on a group: conjugate-linear in `u` (second slot).
#[derive(Clone)]
pub struct MatrixCoefficient {
    pub rep: RepresentationTag,
    pub v: SampledFunction,
    pub u: SampledFunction,
    pub rule: InnerRule,
    pub parameter_grid: ParameterGrid,
    pub density: HaarDensity,
}

impl MatrixCoefficient {
    pub fn new(
        rep: RepresentationTag,
        v: SampledFunction,
        u: SampledFunction,
        rule: InnerRule,
        parameter_grid: ParameterGrid,
    ) -> Result<MatrixCoefficient> {
        if u.norm_sq() == 0.0 {
            return Err(Error::ZeroFunction);
        }
        let group = match rep.kind {
            RepresentationKind::AffinePi => ContinuousGroup::Affine,
            RepresentationKind::AffinePiPlus => ContinuousGroup::PositiveAffine,
            RepresentationKind::SchroedingerWH => ContinuousGroup::WeylHeisenberg,
            RepresentationKind::ShearletPi => ContinuousGroup::Shearlet,
        };
        Ok(MatrixCoefficient {
            rep,
            v,
            u,
            rule,
            parameter_grid,
            density: HaarDensity::new(group, Side::Left),
        })
    }

    /// F_{v,u}(g) = ⟨v, π(g)u⟩
    pub fn eval(&self, g: &GroupElement) -> Result<C64> {
        matrix_coefficient(self.rep, &self.v, &self.u, g, self.rule)
    }

    /// F over the parameter grid, in grid order.
    pub fn sample(&self) -> Result<Vec<C64>> {
        self.sample_translated(None)
    }

    /// Samples x ↦ F(g⁻¹x) (left translation by `g`, exact group
    /// arithmetic); `None` samples F itself.
    pub fn sample_translated(&self, g: Option<&GroupElement>) -> Result<Vec<C64>> {
        let g_inv = g.map(crate::groups::invert).transpose()?;
        let results = exec::map_indexed(self.parameter_grid.len(), |i| {
            let x = &self.parameter_grid.points[i];
            let arg = match &g_inv {
                Some(gi) => crate::groups::multiply(gi, x)?,
                None => x.clone(),
            };
            self.eval(&arg)
        });
        results.into_iter().collect()
    }

    /// Weighted L²(G) norm of a sample vector over the parameter grid.
    pub fn grid_norm(&self, samples: &[C64]) -> f64 {
        samples
            .iter()
            .zip(&self.parameter_grid.weights)
            .map(|(z, w)| w * z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Weighted L²(G) inner product, conjugate-linear in the second slot.
    pub fn grid_inner(&self, f: &[C64], g: &[C64]) -> C64 {
        f.iter()
            .zip(g)
            .zip(&self.parameter_grid.weights)
            .map(|((a, b), w)| a * b.conj() * *w)
            .fold(C64::new(0.0, 0.0), |s, t| s + t)
    }

    /// Rows `params..., |F|` for external plotting.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        let samples = self.sample()?;
        let io = |e: std::io::Error| Error::InvalidParameter(format!("csv write failed: {e}"));
        match self.parameter_grid.points.first() {
            Some(GroupElement::Affine { .. }) => writeln!(out, "a,b,abs_F").map_err(io)?,
            _ => writeln!(out, "params,abs_F").map_err(io)?,
        }
        for (p, z) in self.parameter_grid.points.iter().zip(&samples) {
            match p {
                GroupElement::Affine { a, b } => {
                    writeln!(out, "{a},{b},{}", z.norm()).map_err(io)?
                }
                other => writeln!(out, "{other},{}", z.norm()).map_err(io)?,
            }
        }
        Ok(())
    }
}

/// F_{v,u}(g) = ⟨v, π(g)u⟩ under the chosen inner-product rule.
pub fn matrix_coefficient(
    rep: RepresentationTag,
    v: &SampledFunction,
    u: &SampledFunction,
    g: &GroupElement,
    rule: InnerRule,
) -> Result<C64> {
    let pgu = apply(rep, g, u)?;
    match rule {
        InnerRule::GridMidpoint => inner_product(v, &pgu),
        InnerRule::GaussLegendre { lower, upper, panels, nodes } => {
            let r = QuadAxis::linear(lower, upper, panels, QuadKind::GaussLegendre(nodes)).rule()?;
            Ok(r.integrate_complex(|x| v.eval(&[x]) * pgu.eval(&[x]).conj()))
        }
    }
}

/// Calderón-type admissibility data for the (positive) affine group.
#[derive(Clone, Copy, Debug)]
pub struct AdmissibilityReport {
    /// ∫ |û(ξ)|²/|ξ| dξ over the truncated range (both signs of ξ).
    pub constant: f64,
    /// false when the log-spaced panel contributions fail to decay at
    /// either end of the range.
    pub convergent: bool,
    pub xi_min: f64,
    pub xi_max: f64,
}

const XI_MIN_DEFAULT: f64 = 2.44140625e-4; // 2^-12
const XI_MAX_DEFAULT: f64 = 16.0; // 2^4, half the Nyquist band of the stock grids

/// ∫ |û(ξ)|²/|ξ| dξ by per-octave log-spaced Gauss–Legendre quadrature on
/// [xi_min, xi_max] for both signs of ξ; the octave sums drive the
/// convergence flag.
pub fn admissibility_constant(rep: RepresentationTag, u: &SampledFunction) -> Result<AdmissibilityReport> {
    admissibility_constant_on(rep, u, XI_MIN_DEFAULT, XI_MAX_DEFAULT)
}

pub fn admissibility_constant_on(
    rep: RepresentationTag,
    u: &SampledFunction,
    xi_min: f64,
    xi_max: f64,
) -> Result<AdmissibilityReport> {
    match rep.kind {
        RepresentationKind::AffinePi | RepresentationKind::AffinePiPlus => {}
        other => {
            return Err(Error::InvalidParameter(format!(
                "admissibility constant is defined for the affine representations, not {other:?}"
            )))
        }
    }
    if u.norm_sq() == 0.0 {
        return Err(Error::ZeroFunction);
    }
    if !(xi_min > 0.0 && xi_max > xi_min) {
        return Err(Error::InvalidParameter("admissibility range must satisfy 0 < xi_min < xi_max".into()));
    }

    let octaves = (xi_max / xi_min).log2().ceil().max(1.0) as usize;
    let sums: Vec<f64> = exec::map_indexed(octaves, |k| {
        let lo = xi_min * 2f64.powi(k as i32);
        let hi = (lo * 2.0).min(xi_max);
        let rule = QuadAxis::log(lo, hi, 4, QuadKind::GaussLegendre(8))
            .rule()
            .expect("octave rule");
        rule.integrate(|xi| {
            (fourier_integral(u, xi).norm_sqr() + fourier_integral(u, -xi).norm_sqr()) / xi
        })
    });
    let constant: f64 = sums.iter().sum();

    // decay at each end: innermost/outermost octave contributions must
    // shrink relative to their neighbors (a log divergence keeps them flat)
    let slack = 1e-13 * (constant.abs() + 1e-300);
    let inner_decays = sums.len() < 2 || sums[0] < 0.6 * sums[1] + slack;
    let outer_decays =
        sums.len() < 2 || sums[sums.len() - 1] < 0.6 * sums[sums.len() - 2] + slack;
    Ok(AdmissibilityReport { constant, convergent: inner_decays && outer_decays, xi_min, xi_max })
}

/// Both sides of the affine energy identity
/// ∫∫ |⟨v, π(a,b)u⟩|² da db/a²  =  ‖v‖² · ∫ |û(ξ)|²/|ξ| dξ
/// on the truncated box |a| ∈ [a_lo, a_hi] (log-spaced, both signs),
/// |b| ≤ b_half.
pub fn calderon_energy_check(
    v: &SampledFunction,
    u: &SampledFunction,
    a_lo: f64,
    a_hi: f64,
    b_half: f64,
) -> Result<(f64, f64)> {
    let rep = RepresentationTag::affine();
    let rhs = v.norm_sq() * admissibility_constant(rep, u)?.constant;
    if v.norm_sq() == 0.0 {
        return Ok((0.0, 0.0));
    }

    let rule_a = QuadAxis::log(a_lo, a_hi, 64, QuadKind::GaussLegendre(4)).rule()?;
    let rule_b = QuadAxis::linear(-b_half, b_half, 48, QuadKind::GaussLegendre(4)).rule()?;
    let (na, nb) = (rule_a.len(), rule_b.len());
    let lhs = exec::sum_indexed(2 * na * nb, |flat| {
        let sign = if flat < na * nb { 1.0 } else { -1.0 };
        let rem = flat % (na * nb);
        let a = sign * rule_a.nodes[rem / nb];
        let b = rule_b.nodes[rem % nb];
        let w = rule_a.weights[rem / nb] * rule_b.weights[rem % nb];
        let g = GroupElement::affine(a, b).expect("a != 0 on the rule");
        let f = matrix_coefficient(rep, v, u, &g, InnerRule::GridMidpoint).expect("grids match");
        w * f.norm_sqr() / (a * a)
    });
    Ok((lhs, rhs))
}

/// Default Calderón truncation box: |a| ∈ [2⁻⁶, 2⁶], |b| ≤ 12.
pub fn calderon_energy_check_default(v: &SampledFunction, u: &SampledFunction) -> Result<(f64, f64)> {
    calderon_energy_check(v, u, 0.015625, 64.0, 12.0)
}

/// Both sides of the Weyl–Heisenberg orthogonality relation
/// ∫_𝕋 ∫∫ |⟨f, π(t,a,b)g⟩|² da db dt  =  ‖f‖²·‖g‖²
/// over (a,b) ∈ [−half, half]²; the 𝕋 integral is analytic (the t-phase has
/// unit modulus, so it contributes the factor 1).
pub fn wh_orthogonality_check(f: &SampledFunction, g: &SampledFunction, half: f64) -> Result<(f64, f64)> {
    let rep = RepresentationTag::schroedinger(1);
    let rhs = f.norm_sq() * g.norm_sq();
    if rhs == 0.0 {
        return Ok((0.0, 0.0));
    }
    let rule = QuadAxis::linear(-half, half, 48, QuadKind::GaussLegendre(4)).rule()?;
    let n = rule.len();
    let lhs = exec::sum_indexed(n * n, |flat| {
        let (i, j) = (flat / n, flat % n);
        let el = GroupElement::weyl_heisenberg(0.0, vec![rule.nodes[i]], vec![rule.nodes[j]])
            .expect("valid element");
        let c = matrix_coefficient(rep, f, g, &el, InnerRule::GridMidpoint).expect("grids match");
        rule.weights[i] * rule.weights[j] * c.norm_sqr()
    });
    Ok((lhs, rhs))
}

/// Prop-style transfer: a verified dependency Σ cₖ π(gₖ)v = 0 in H_π becomes
/// Σ cₖ L(gₖ)F_{v,u} = 0 in L²(G), with the same coefficients and elements.
pub fn transfer_certificate(
    cert: &DependencyCertificate,
    u: &SampledFunction,
    rule: InnerRule,
    parameter_grid: ParameterGrid,
    tolerance: f64,
) -> Result<DependencyCertificate> {
    let (rep, v) = match (&cert.space, &cert.target) {
        (CertificateSpace::HPi(rep), CertificateTarget::Function(v)) => (*rep, v),
        _ => {
            return Err(Error::MalformedCertificate(
                "transfer requires an H_π certificate with a function target".into(),
            ))
        }
    };
    let outcome = verify(cert)?;
    if !(outcome.relative < tolerance) {
        return Err(Error::MalformedCertificate(format!(
            "input certificate unverified: relative residual {} ≥ tolerance {}",
            outcome.relative, tolerance
        )));
    }
    let coeff = MatrixCoefficient::new(rep, v.clone(), u.clone(), rule, parameter_grid)?;
    DependencyCertificate::new(
        CertificateSpace::L2G(coeff.density.group),
        cert.terms.clone(),
        CertificateTarget::Coefficient(Box::new(coeff)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions;
    use crate::numerics::Grid;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid1d() -> Grid {
        Grid::line(-8.0, 8.0, 1024).unwrap()
    }

    fn odd_gaussian() -> SampledFunction {
        SampledFunction::from_fn(grid1d(), functions::odd_gaussian())
    }

    fn gaussian() -> SampledFunction {
        SampledFunction::from_fn(grid1d(), functions::gaussian())
    }

    #[test]
    fn coefficient_at_identity_is_inner_product() {
        let v = gaussian();
        let u = odd_gaussian();
        let e = GroupElement::affine(1.0, 0.0).unwrap();
        let rep = RepresentationTag::affine();
        let f = matrix_coefficient(rep, &v, &v, &e, InnerRule::GridMidpoint).unwrap();
        assert!((f.re - v.norm_sq()).abs() < 1e-12 && f.im.abs() < 1e-15);
        // even–odd orthogonality
        let z = matrix_coefficient(rep, &v, &u, &e, InnerRule::GridMidpoint).unwrap();
        assert!(z.norm() < 1e-14);
    }

    #[test]
    fn affine_chi_coefficient_matches_direct_quadrature() {
        // F(a,b) = ∫₀¹ |a|^{-1/2} conj(u((x-b)/a)) dx
        let v = SampledFunction::from_fn(grid1d(), functions::chi01());
        let u = gaussian();
        let rep = RepresentationTag::affine();
        for &(a, b) in &[(2.0, 1.0), (0.5, -0.25), (-3.0, 0.75)] {
            let g = GroupElement::affine(a, b).unwrap();
            let rule = InnerRule::GaussLegendre { lower: 0.0, upper: 1.0, panels: 32, nodes: 8 };
            let f = matrix_coefficient(rep, &v, &u, &g, rule).unwrap();
            let quad = QuadAxis::linear(0.0, 1.0, 64, QuadKind::GaussLegendre(8)).rule().unwrap();
            let amp = a.abs().sqrt().recip();
            let oracle = quad
                .integrate_complex(|x| functions::gaussian()(&[(x - b) / a]).conj() * amp);
            assert!((f - oracle).norm() < 1e-8, "(a,b)=({a},{b}) defect {}", (f - oracle).norm());
        }
    }

    #[test]
    fn coefficient_sesquilinearity_random_scalars() {
        let v = gaussian();
        let u = odd_gaussian();
        let rep = RepresentationTag::affine();
        let g = GroupElement::affine(2.0, 0.5).unwrap();
        let base = matrix_coefficient(rep, &v, &u, &g, InnerRule::GridMidpoint).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let lam = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let mu = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let f = matrix_coefficient(rep, &v.scaled(lam), &u.scaled(mu), &g, InnerRule::GridMidpoint)
                .unwrap();
            assert!((f - lam * mu.conj() * base).norm() < 1e-12);
        }
    }

    #[test]
    fn coefficient_cauchy_schwarz() {
        let v = gaussian();
        let u = odd_gaussian();
        let bound = v.norm() * u.norm() + 1e-12;
        let rep = RepresentationTag::affine();
        let pg = ParameterGrid::affine_log(0.125, 8.0, 8, -4.0, 4.0, 8).unwrap();
        for g in &pg.points {
            let f = matrix_coefficient(rep, &v, &u, g, InnerRule::GridMidpoint).unwrap();
            assert!(f.norm() <= bound);
        }
    }

    #[test]
    fn odd_gaussian_admissibility_is_one() {
        // oracle: ∫ 2π|ξ| e^{-2πξ²} dξ = 1 by substitution
        let r = admissibility_constant(RepresentationTag::affine(), &odd_gaussian()).unwrap();
        assert!(r.convergent);
        assert!((r.constant - 1.0).abs() < 1e-6, "constant {}", r.constant);
    }

    #[test]
    fn plain_gaussian_diverges_logarithmically() {
        let r = admissibility_constant(RepresentationTag::affine(), &gaussian()).unwrap();
        assert!(!r.convergent);
    }

    #[test]
    fn zero_mean_bump_is_admissible() {
        let f = SampledFunction::from_fn(Grid::line(-2.0, 3.0, 1024).unwrap(), functions::zero_mean_bump());
        let r = admissibility_constant(RepresentationTag::affine(), &f).unwrap();
        assert!(r.convergent);
        assert!(r.constant > 0.0 && r.constant.is_finite());
        assert!(admissibility_constant(RepresentationTag::affine(), &f.scaled(C64::new(0.0, 0.0))).is_err());
    }

    #[test]
    fn calderon_energy_identity_on_default_box() {
        let w = odd_gaussian();
        let (lhs, rhs) = calderon_energy_check_default(&w, &w).unwrap();
        assert!((lhs / rhs - 1.0).abs() < 2e-2, "lhs {lhs} rhs {rhs}");
        let z = w.scaled(C64::new(0.0, 0.0));
        let (l0, r0) = calderon_energy_check_default(&z, &w).unwrap();
        assert_eq!((l0, r0), (0.0, 0.0));
    }

    #[test]
    fn wh_orthogonality_of_normalized_gaussians() {
        let f = SampledFunction::from_fn(grid1d(), functions::normalized_gaussian());
        let (lhs, rhs) = wh_orthogonality_check(&f, &f, 6.0).unwrap();
        assert!((rhs - 1.0).abs() < 1e-10, "rhs {rhs}");
        assert!((lhs - 1.0).abs() < 1e-2, "lhs {lhs}");
        // homogeneity pins the squared-norm exponents
        let lam = C64::new(1.5, -0.5);
        let (l2, r2) = wh_orthogonality_check(&f.scaled(lam), &f, 6.0).unwrap();
        assert!((r2 / rhs - lam.norm_sqr()).abs() < 1e-12);
        assert!((l2 / lhs - lam.norm_sqr()).abs() < 1e-2 * lam.norm_sqr());
    }

    #[test]
    fn csv_emission_shape() {
        let v = SampledFunction::from_fn(grid1d(), functions::chi01());
        let pg = ParameterGrid::affine_log(0.5, 2.0, 4, -1.0, 1.0, 4).unwrap();
        let mc = MatrixCoefficient::new(
            RepresentationTag::affine(),
            v,
            odd_gaussian(),
            InnerRule::GridMidpoint,
            pg,
        )
        .unwrap();
        let mut buf = Vec::new();
        mc.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 17);
        assert!(text.starts_with("a,b,abs_F\n"));
    }
}
