//! Linear-dependency certificates Σ cₖ Λ(gₖ) f = 0 and independence probes
//! via Gram spectra.

use nalgebra::DMatrix;

use crate::coefficients::MatrixCoefficient;
use crate::error::{Error, Result};
use crate::exec;
use crate::groups::{ContinuousGroup, GroupElement};
use crate::numerics::{SampledFunction, C64};
use crate::representations::{apply, RepresentationTag};

pub const DISTINCTNESS_TOL: f64 = 1e-12;
pub const DEFAULT_SPECTRAL_THRESHOLD: f64 = 1e-8;
pub const INCONCLUSIVE_FLOOR: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateSpace {
    /// Λ(g) = π(g) acting on the representation space.
    HPi(RepresentationTag),
    /// Λ(g) = left translation L(g)F(x) = F(g⁻¹x) on L²(G).
    L2G(ContinuousGroup),
}

#[derive(Clone)]
pub enum CertificateTarget {
    Function(SampledFunction),
    Coefficient(Box<MatrixCoefficient>),
}

#[derive(Clone)]
pub struct DependencyCertificate {
    pub space: CertificateSpace,
    pub terms: Vec<(C64, GroupElement)>,
    pub target: CertificateTarget,
}

impl DependencyCertificate {
    pub fn new(
        space: CertificateSpace,
        terms: Vec<(C64, GroupElement)>,
        target: CertificateTarget,
    ) -> Result<DependencyCertificate> {
        if terms.is_empty() {
            return Err(Error::MalformedCertificate("certificate has no terms".into()));
        }
        if terms.iter().any(|(c, _)| c.norm() == 0.0) {
            return Err(Error::MalformedCertificate("zero coefficient in certificate".into()));
        }
        check_distinct(terms.iter().map(|(_, g)| g))?;
        match (&space, &target) {
            (CertificateSpace::HPi(_), CertificateTarget::Function(_))
            | (CertificateSpace::L2G(_), CertificateTarget::Coefficient(_)) => {}
            _ => {
                return Err(Error::MalformedCertificate(
                    "certificate space does not match its target kind".into(),
                ))
            }
        }
        Ok(DependencyCertificate { space, terms, target })
    }

    pub fn h_pi(
        rep: RepresentationTag,
        terms: Vec<(C64, GroupElement)>,
        f: SampledFunction,
    ) -> Result<DependencyCertificate> {
        DependencyCertificate::new(CertificateSpace::HPi(rep), terms, CertificateTarget::Function(f))
    }
}

fn check_distinct<'a, I: Iterator<Item = &'a GroupElement> + Clone>(elements: I) -> Result<()> {
    let v: Vec<&GroupElement> = elements.collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let dup = match (v[i], v[j]) {
                (GroupElement::Lattice(a), GroupElement::Lattice(b)) => a == b,
                (a, b) => a.approx_eq(b, DISTINCTNESS_TOL),
            };
            if dup {
                return Err(Error::DuplicateElements(format!("{} ~ {}", v[i], v[j])));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOutcome {
    /// ‖Σ cₖ Λ(gₖ) f‖
    pub unnormalized: f64,
    /// ‖Σ cₖ Λ(gₖ) f‖ / ‖f‖
    pub relative: f64,
}

pub fn verify(cert: &DependencyCertificate) -> Result<VerifyOutcome> {
    match (&cert.space, &cert.target) {
        (CertificateSpace::HPi(rep), CertificateTarget::Function(f)) => {
            let mut parts = Vec::with_capacity(cert.terms.len());
            for (c, g) in &cert.terms {
                parts.push((*c, apply(*rep, g, f)?));
            }
            let vol = f.grid().cell_volume();
            let n = f.grid().total_points();
            let sum_sq = exec::sum_indexed(n, |j| {
                parts
                    .iter()
                    .map(|(c, w)| c * w.values()[j])
                    .fold(C64::new(0.0, 0.0), |a, b| a + b)
                    .norm_sqr()
            }) * vol;
            let unnormalized = sum_sq.sqrt();
            Ok(VerifyOutcome { unnormalized, relative: unnormalized / f.norm() })
        }
        (CertificateSpace::L2G(_), CertificateTarget::Coefficient(mc)) => {
            let base = mc.sample()?;
            let mut translated = Vec::with_capacity(cert.terms.len());
            for (c, g) in &cert.terms {
                translated.push((*c, mc.sample_translated(Some(g))?));
            }
            let combined: Vec<C64> = (0..base.len())
                .map(|i| {
                    translated
                        .iter()
                        .map(|(c, v)| c * v[i])
                        .fold(C64::new(0.0, 0.0), |a, b| a + b)
                })
                .collect();
            let unnormalized = mc.grid_norm(&combined);
            Ok(VerifyOutcome { unnormalized, relative: unnormalized / mc.grid_norm(&base) })
        }
        _ => Err(Error::MalformedCertificate("space/target mismatch".into())),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MaskTerm {
    pub coeff: C64,
    /// translation β; 1-dimensional masks use beta[0]
    pub beta: [f64; 2],
}

impl MaskTerm {
    pub fn one_d(coeff: f64, beta: f64) -> MaskTerm {
        MaskTerm { coeff: C64::new(coeff, 0.0), beta: [beta, 0.0] }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Dilation {
    Scalar(f64),
    Matrix([[f64; 2]; 2]),
}

impl Dilation {
    fn apply(&self, x: &[f64]) -> [f64; 2] {
        match self {
            Dilation::Scalar(d) => [d * x[0], if x.len() > 1 { d * x[1] } else { 0.0 }],
            Dilation::Matrix(m) => {
                let x1 = if x.len() > 1 { x[1] } else { 0.0 };
                [m[0][0] * x[0] + m[0][1] * x1, m[1][0] * x[0] + m[1][1] * x1]
            }
        }
    }
}

/// Relative grid residual of the refinement equation
/// f(x) = Σ_β a(β) f(Dx − β), with the dilation applied directly to x
/// (D = 2 for the classical dyadic case).
pub fn verify_refinement(f: &SampledFunction, mask: &[MaskTerm], dilation: Dilation) -> Result<f64> {
    if mask.is_empty() {
        return Err(Error::MalformedCertificate("empty refinement mask".into()));
    }
    let nf = f.norm();
    if nf == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let dim = f.grid().dimension();
    let grid = f.grid().clone();
    let n = grid.total_points();
    let sum_sq = exec::sum_indexed(n, |j| {
        let x = grid.point(j);
        let dx = dilation.apply(&x[..dim]);
        let rhs: C64 = mask
            .iter()
            .map(|t| {
                let p = [dx[0] - t.beta[0], dx[1] - t.beta[1]];
                t.coeff * f.eval(&p[..dim])
            })
            .fold(C64::new(0.0, 0.0), |a, b| a + b);
        (f.values()[j] - rhs).norm_sqr()
    }) * grid.cell_volume();
    Ok(sum_sq.sqrt() / nf)
}

/// Certificate behind the shearlet refinement derivation: for a mask a(β),
/// π(S₀A₁, 0)f = Σ_β 4^{3/4} a(β) π(S₀A₄, β′)f with β′ = (4β₁, 2β₂).
pub fn shearlet_dependency_from_mask(
    mask: &[MaskTerm],
    target: SampledFunction,
) -> Result<DependencyCertificate> {
    if mask.is_empty() {
        return Err(Error::MalformedCertificate("empty shearlet mask".into()));
    }
    let mut terms: Vec<(C64, GroupElement)> =
        vec![(C64::new(1.0, 0.0), GroupElement::shearlet(1.0, 0.0, [0.0, 0.0])?)];
    let scale = 4.0f64.powf(0.75);
    for t in mask {
        if t.coeff.norm() == 0.0 {
            continue;
        }
        let beta_prime = [4.0 * t.beta[0], 2.0 * t.beta[1]];
        terms.push((-t.coeff * scale, GroupElement::shearlet(4.0, 0.0, beta_prime)?));
    }
    DependencyCertificate::h_pi(RepresentationTag::shearlet(), terms, target)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Independent,
    Dependent,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Independent => write!(f, "independent"),
            Verdict::Dependent => write!(f, "dependent"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndependenceProbe {
    pub elements: Vec<GroupElement>,
    pub gram: DMatrix<C64>,
    /// ascending real spectrum of the Hermitian Gram matrix
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

/// Verdict from the relative spectral gap: independent when
/// min/max > threshold, dependent below the inconclusive floor, otherwise
/// inconclusive. A numeric can support independence, not prove it.
fn classify(min_eig: f64, max_eig: f64, threshold: f64) -> Verdict {
    let rel = if max_eig > 0.0 { min_eig.max(0.0) / max_eig } else { 0.0 };
    if rel > threshold {
        Verdict::Independent
    } else if rel <= INCONCLUSIVE_FLOOR.min(threshold) {
        Verdict::Dependent
    } else {
        Verdict::Inconclusive
    }
}

fn probe_from_gram(
    elements: Vec<GroupElement>,
    gram: DMatrix<C64>,
    threshold: f64,
) -> IndependenceProbe {
    let mut eigenvalues: Vec<f64> = gram
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigenvalues.sort_by(f64::total_cmp);
    let min_eigenvalue = eigenvalues[0];
    let max_eigenvalue = eigenvalues[eigenvalues.len() - 1];
    let verdict = classify(min_eigenvalue, max_eigenvalue, threshold);
    IndependenceProbe { elements, gram, eigenvalues, min_eigenvalue, max_eigenvalue, threshold, verdict }
}

pub fn gram_matrix(vectors: &[Vec<C64>], weight: &(dyn Fn(usize) -> f64 + Sync)) -> DMatrix<C64> {
    let n = vectors.len();
    let entries = exec::map_indexed(n * n, |flat| {
        let (j, k) = (flat / n, flat % n);
        vectors[j]
            .iter()
            .zip(&vectors[k])
            .enumerate()
            .map(|(i, (a, b))| a * b.conj() * weight(i))
            .fold(C64::new(0.0, 0.0), |s, t| s + t)
    });
    // exact Hermitian symmetrization so the eigensolver sees G = Gᴴ
    let mut g = DMatrix::from_fn(n, n, |r, c| entries[r * n + c]);
    for r in 0..n {
        for c in 0..r {
            let avg = (g[(r, c)] + g[(c, r)].conj()) * 0.5;
            g[(r, c)] = avg;
            g[(c, r)] = avg.conj();
        }
        g[(r, r)] = C64::new(g[(r, r)].re, 0.0);
    }
    g
}

/// Gram-spectrum probe of {π(gⱼ)f} in the representation space.
pub fn probe_independence(
    rep: RepresentationTag,
    elements: &[GroupElement],
    f: &SampledFunction,
    threshold: f64,
) -> Result<IndependenceProbe> {
    if elements.is_empty() {
        return Err(Error::InvalidParameter("no elements to probe".into()));
    }
    if f.norm_sq() == 0.0 {
        return Err(Error::ZeroFunction);
    }
    check_distinct(elements.iter())?;
    let mut vectors = Vec::with_capacity(elements.len());
    for g in elements {
        vectors.push(apply(rep, g, f)?.values().to_vec());
    }
    let vol = f.grid().cell_volume();
    let gram = gram_matrix(&vectors, &|_| vol);
    Ok(probe_from_gram(elements.to_vec(), gram, threshold))
}

/// Gram-spectrum probe of the left translations {L(gⱼ)F} in L²(G), with F
/// the matrix coefficient sampled on its parameter grid.
pub fn probe_independence_l2g(
    mc: &MatrixCoefficient,
    elements: &[GroupElement],
    threshold: f64,
) -> Result<IndependenceProbe> {
    if elements.is_empty() {
        return Err(Error::InvalidParameter("no elements to probe".into()));
    }
    check_distinct(elements.iter())?;
    let mut vectors = Vec::with_capacity(elements.len());
    for g in elements {
        vectors.push(mc.sample_translated(Some(g))?);
    }
    let weights = mc.parameter_grid.weights.clone();
    let gram = gram_matrix(&vectors, &|i| weights[i]);
    Ok(probe_from_gram(elements.to_vec(), gram, threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions;
    use crate::numerics::Grid;
    use std::sync::Arc;

    fn chi_on(lower: f64, upper: f64, n: usize) -> SampledFunction {
        SampledFunction::from_fn(Grid::line(lower, upper, n).unwrap(), functions::chi01())
    }

    fn affine_refinement_terms() -> Vec<(C64, GroupElement)> {
        let c = -C64::new(0.5f64.sqrt(), 0.0);
        vec![
            (C64::new(1.0, 0.0), GroupElement::affine(1.0, 0.0).unwrap()),
            (c, GroupElement::affine(0.5, 0.0).unwrap()),
            (c, GroupElement::affine(0.5, 0.5).unwrap()),
        ]
    }

    #[test]
    fn affine_chi_certificate_is_exactly_zero() {
        let cert = DependencyCertificate::h_pi(
            RepresentationTag::affine(),
            affine_refinement_terms(),
            chi_on(-1.0, 2.0, 1024),
        )
        .unwrap();
        let out = verify(&cert).unwrap();
        assert_eq!(out.unnormalized, 0.0);
        assert_eq!(out.relative, 0.0);
    }

    #[test]
    fn single_identity_term_has_residual_one() {
        let cert = DependencyCertificate::h_pi(
            RepresentationTag::affine(),
            vec![(C64::new(1.0, 0.0), GroupElement::affine(1.0, 0.0).unwrap())],
            chi_on(-1.0, 2.0, 512),
        )
        .unwrap();
        let out = verify(&cert).unwrap();
        assert!((out.relative - 1.0).abs() < 1e-14);
    }

    #[test]
    fn residual_is_coefficient_homogeneous() {
        // a deliberately wrong certificate scales linearly in λ
        let f = chi_on(-1.0, 2.0, 512);
        let terms = vec![
            (C64::new(1.0, 0.0), GroupElement::affine(1.0, 0.0).unwrap()),
            (C64::new(-0.5, 0.0), GroupElement::affine(0.5, 0.0).unwrap()),
        ];
        let lam = C64::new(0.0, 3.0);
        let cert = DependencyCertificate::h_pi(RepresentationTag::affine(), terms.clone(), f.clone()).unwrap();
        let scaled: Vec<_> = terms.iter().map(|(c, g)| (lam * c, g.clone())).collect();
        let cert2 = DependencyCertificate::h_pi(RepresentationTag::affine(), scaled, f).unwrap();
        let (r1, r2) = (verify(&cert).unwrap(), verify(&cert2).unwrap());
        assert!((r2.unnormalized - lam.norm() * r1.unnormalized).abs() < 1e-12);
    }

    #[test]
    fn malformed_certificates_rejected() {
        let f = chi_on(-1.0, 2.0, 64);
        let e = GroupElement::affine(1.0, 0.0).unwrap();
        assert!(matches!(
            DependencyCertificate::h_pi(RepresentationTag::affine(), vec![], f.clone()),
            Err(Error::MalformedCertificate(_))
        ));
        assert!(matches!(
            DependencyCertificate::h_pi(
                RepresentationTag::affine(),
                vec![(C64::new(0.0, 0.0), e.clone())],
                f.clone()
            ),
            Err(Error::MalformedCertificate(_))
        ));
        assert!(matches!(
            DependencyCertificate::h_pi(
                RepresentationTag::affine(),
                vec![(C64::new(1.0, 0.0), e.clone()), (C64::new(-1.0, 0.0), e)],
                f
            ),
            Err(Error::DuplicateElements(_))
        ));
    }

    #[test]
    fn chi_refinement_mask_exact() {
        let f = chi_on(-1.0, 2.0, 1024);
        let mask = [MaskTerm::one_d(1.0, 0.0), MaskTerm::one_d(1.0, 1.0)];
        let r = verify_refinement(&f, &mask, Dilation::Scalar(2.0)).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn hat_refinement_mask() {
        let f = SampledFunction::from_fn(Grid::line(-1.0, 3.0, 1024).unwrap(), functions::hat());
        let mask = [MaskTerm::one_d(0.5, 0.0), MaskTerm::one_d(1.0, 1.0), MaskTerm::one_d(0.5, 2.0)];
        let r = verify_refinement(&f, &mask, Dilation::Scalar(2.0)).unwrap();
        assert!(r < 1e-14, "residual {r}");
    }

    #[test]
    fn gaussian_is_not_refinable_with_trivial_mask() {
        let f = SampledFunction::from_fn(Grid::line(-8.0, 8.0, 512).unwrap(), functions::gaussian());
        let r = verify_refinement(&f, &[MaskTerm::one_d(1.0, 0.0)], Dilation::Scalar(2.0)).unwrap();
        assert!(r > 0.1, "residual {r}");
    }

    #[test]
    fn shearlet_mask_certificate_terms() {
        let grid = Grid::plane([-8.0, -8.0], [8.0, 8.0], [64, 64]).unwrap();
        let f = SampledFunction::from_fn(grid, functions::gaussian2d());
        let cert = shearlet_dependency_from_mask(
            &[MaskTerm { coeff: C64::new(0.25, 0.0), beta: [1.0, 1.0] }],
            f,
        )
        .unwrap();
        assert_eq!(cert.terms.len(), 2);
        match &cert.terms[1].1 {
            GroupElement::Shearlet { a, s, t } => {
                assert_eq!((*a, *s), (4.0, 0.0));
                assert_eq!(*t, [4.0, 2.0]);
            }
            other => panic!("unexpected element {other}"),
        }
        assert_eq!(cert.terms[1].0, C64::new(-0.25 * 4.0f64.powf(0.75), 0.0));
    }

    #[test]
    fn shearlet_constant_desk_witness() {
        // f ≡ 1 on the box is A₄-self-similar with mask a(0,0) = 1: the
        // certificate coefficient -4^{3/4} a(β) cancels the representation's
        // 4^{-3/4} amplitude exactly.
        let grid = Grid::plane([-2.0, -2.0], [2.0, 2.0], [32, 32]).unwrap();
        let f = SampledFunction::from_fn(grid, functions::constant_one());
        let cert = shearlet_dependency_from_mask(
            &[MaskTerm { coeff: C64::new(1.0, 0.0), beta: [0.0, 0.0] }],
            f,
        )
        .unwrap();
        let out = verify(&cert).unwrap();
        assert!(out.unnormalized < 1e-12, "residual {}", out.unnormalized);
    }

    #[test]
    fn single_element_probe_is_independent() {
        let f = chi_on(-1.0, 2.0, 256);
        let p = probe_independence(
            RepresentationTag::affine(),
            &[GroupElement::affine(1.0, 0.0).unwrap()],
            &f,
            DEFAULT_SPECTRAL_THRESHOLD,
        )
        .unwrap();
        assert_eq!(p.verdict, Verdict::Independent);
        assert!((p.min_eigenvalue - f.norm_sq()).abs() < 1e-12);
    }

    #[test]
    fn torsion_pattern_is_dependent() {
        // translates of a constant function coincide: rank-1 Gram, zero
        // minimal eigenvalue, mirroring (1 + g + … + g^{n-1}) ∗ (1 − g) = 0
        let grid = Grid::line(0.0, 3.0, 128).unwrap();
        let f = SampledFunction::from_fn(grid, Arc::new(|_: &[f64]| C64::new(1.0, 0.0)));
        let els: Vec<GroupElement> =
            (0..3).map(|n| GroupElement::affine(1.0, n as f64 * 3.0).unwrap()).collect();
        let p = probe_independence(RepresentationTag::affine(), &els, &f, DEFAULT_SPECTRAL_THRESHOLD)
            .unwrap();
        assert_eq!(p.verdict, Verdict::Dependent);
        assert!(p.min_eigenvalue.abs() < 1e-10 * p.max_eigenvalue);
    }

    #[test]
    fn gabor_probe_gaussian_lattice_independent() {
        let f = SampledFunction::from_fn(Grid::line(-8.0, 8.0, 1024).unwrap(), functions::gaussian());
        let mut els = Vec::new();
        for &a in &[-0.5, 0.0, 0.5] {
            for &b in &[-0.5, 0.0, 0.5] {
                els.push(GroupElement::weyl_heisenberg(0.0, vec![a], vec![b]).unwrap());
            }
        }
        let p = probe_independence(RepresentationTag::schroedinger(1), &els, &f, 1e-6).unwrap();
        assert_eq!(p.verdict, Verdict::Independent);
        // oracle: Gram entries of Gaussian Gabor atoms are closed-form,
        // ⟨π(0,a,b)f, π(0,c,d)f⟩ = e^{iπ(a+c)(d-b)} e^{-π((a-c)² + (b-d)²)/2} ‖f‖²
        let norm_sq = f.norm_sq();
        for (j, gj) in els.iter().enumerate() {
            for (k, gk) in els.iter().enumerate() {
                let (GroupElement::WeylHeisenberg { a: aj, b: bj, .. },
                     GroupElement::WeylHeisenberg { a: ak, b: bk, .. }) = (gj, gk)
                else {
                    unreachable!()
                };
                let (a, b, c, d) = (aj[0], bj[0], ak[0], bk[0]);
                let oracle = C64::from_polar(
                    (-std::f64::consts::PI * ((a - c).powi(2) + (b - d).powi(2)) / 2.0).exp(),
                    std::f64::consts::PI * (a + c) * (d - b),
                ) * norm_sq;
                let got = p.gram[(j, k)];
                assert!((got - oracle).norm() < 1e-10, "({j},{k}): {got} vs {oracle}");
            }
        }
    }

    #[test]
    fn probe_verdict_invariant_under_permutation_and_scaling() {
        let f = SampledFunction::from_fn(Grid::line(-8.0, 8.0, 512).unwrap(), functions::gaussian());
        let els: Vec<GroupElement> =
            (-2..=2).map(|n| GroupElement::affine(1.0, n as f64).unwrap()).collect();
        let p1 = probe_independence(RepresentationTag::affine(), &els, &f, 1e-8).unwrap();
        let mut rev = els.clone();
        rev.reverse();
        let p2 = probe_independence(RepresentationTag::affine(), &rev, &f, 1e-8).unwrap();
        let lam = C64::new(0.0, -2.5);
        let p3 = probe_independence(RepresentationTag::affine(), &els, &f.scaled(lam), 1e-8).unwrap();
        assert_eq!(p1.verdict, p2.verdict);
        assert_eq!(p1.verdict, p3.verdict);
        let ratio = p3.min_eigenvalue / p1.min_eigenvalue;
        assert!((ratio - lam.norm_sqr()).abs() < 1e-9 * lam.norm_sqr());
    }

    #[test]
    fn gram_matches_brute_force_oracle() {
        let f = SampledFunction::from_fn(Grid::line(-8.0, 8.0, 512).unwrap(), functions::gaussian());
        let els: Vec<GroupElement> = vec![
            GroupElement::affine(1.0, 0.0).unwrap(),
            GroupElement::affine(2.0, 1.0).unwrap(),
            GroupElement::affine(0.5, -1.0).unwrap(),
        ];
        let p = probe_independence(RepresentationTag::affine(), &els, &f, 1e-8).unwrap();
        let vol = f.grid().cell_volume();
        for (j, gj) in els.iter().enumerate() {
            for (k, gk) in els.iter().enumerate() {
                let wj = apply(RepresentationTag::affine(), gj, &f).unwrap();
                let wk = apply(RepresentationTag::affine(), gk, &f).unwrap();
                let mut acc = C64::new(0.0, 0.0);
                for (x, y) in wj.values().iter().zip(wk.values()) {
                    acc += x * y.conj();
                }
                acc *= vol;
                assert!((p.gram[(j, k)] - acc).norm() < 1e-12);
            }
        }
    }
}
