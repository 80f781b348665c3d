//! Exact formal-sum arithmetic in ℂG for the discrete groups (ℤⁿ, ℤ/m, the
//! rational Heisenberg lattice), convolution against finitely supported
//! vectors, and zero-divisor probes.
//!
//! Coefficients come in two modes that are never mixed: exact Gaussian
//! rationals for the algebraic identities, and complex floats for spectral
//! probes. The mode is a type parameter of [`FormalSum`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use nalgebra::DMatrix;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groups::{lattice_invert, lattice_multiply, HeisElement, LatticeElement};
use crate::numerics::C64;

pub type Rational = Ratio<i64>;

// ---------------------------------------------------------------------------
// Coefficient rings
// ---------------------------------------------------------------------------

/// Ring of coefficients for formal sums; either exact (Gaussian rationals)
/// or floating complex.
pub trait Coefficient: Clone + PartialEq + Send + Sync + fmt::Display {
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// multiplicative inverse; None on zero
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> C64;
}

/// Exact Gaussian rational a + bi with a, b ∈ ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> GaussianRational {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> GaussianRational {
        GaussianRational { re: Rational::from_integer(n), im: Rational::zero() }
    }

    pub fn i() -> GaussianRational {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Coefficient for GaussianRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    fn one() -> Self {
        GaussianRational::from_integer(1)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        GaussianRational::new(self.re + other.re, self.im + other.im)
    }

    fn mul(&self, other: &Self) -> Self {
        GaussianRational::new(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )
    }

    fn neg(&self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }

    fn inv(&self) -> Option<Self> {
        let n = self.re * self.re + self.im * self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussianRational::new(self.re / n, -self.im / n))
    }

    fn to_c64(&self) -> C64 {
        let r = |x: Rational| *x.numer() as f64 / *x.denom() as f64;
        C64::new(r(self.re), r(self.im))
    }
}

impl Coefficient for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }

    fn one() -> Self {
        C64::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Coefficient::is_zero(self) {
            None
        } else {
            Some(C64::new(1.0, 0.0) / self)
        }
    }

    fn to_c64(&self) -> C64 {
        *self
    }
}

// ---------------------------------------------------------------------------
// Formal sums
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    /// free abelian of the given rank
    Zn(usize),
    /// cyclic of order m
    ZMod(u64),
    /// rational Heisenberg lattice points (z, a, b) with n = dim a
    Heisenberg(usize),
}

impl LatticeKind {
    pub fn matches(&self, el: &LatticeElement) -> bool {
        match (self, el) {
            (LatticeKind::Zn(n), LatticeElement::Zn(v)) => v.len() == *n,
            (LatticeKind::ZMod(m), LatticeElement::ZMod { m: m2, .. }) => m == m2,
            (LatticeKind::Heisenberg(n), LatticeElement::Heisenberg(h)) => h.a.len() == *n,
            _ => false,
        }
    }

    pub fn identity(&self) -> LatticeElement {
        match self {
            LatticeKind::Zn(n) => LatticeElement::Zn(vec![0; *n]),
            LatticeKind::ZMod(m) => LatticeElement::ZMod { m: *m, k: 0 },
            LatticeKind::Heisenberg(n) => LatticeElement::Heisenberg(HeisElement {
                z: Rational::zero(),
                a: vec![Rational::zero(); *n],
                b: vec![Rational::zero(); *n],
            }),
        }
    }
}

/// Finitely supported Σ a_g g with exact element comparison; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSum<R: Coefficient> {
    kind: LatticeKind,
    terms: BTreeMap<LatticeElement, R>,
}

impl<R: Coefficient> FormalSum<R> {
    pub fn zero(kind: LatticeKind) -> FormalSum<R> {
        FormalSum { kind, terms: BTreeMap::new() }
    }

    pub fn delta(kind: LatticeKind, g: LatticeElement, c: R) -> Result<FormalSum<R>> {
        FormalSum::from_terms(kind, vec![(c, g)])
    }

    pub fn from_terms(kind: LatticeKind, terms: Vec<(R, LatticeElement)>) -> Result<FormalSum<R>> {
        let mut sum = FormalSum::zero(kind);
        for (c, g) in terms {
            if !kind.matches(&g) {
                return Err(Error::KindMismatch(format!(
                    "element {g:?} does not belong to {kind:?}"
                )));
            }
            sum.accumulate(g, c);
        }
        Ok(sum)
    }

    fn accumulate(&mut self, g: LatticeElement, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&g) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(g, s);
                }
            }
            None => {
                self.terms.insert(g, c);
            }
        }
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticeElement> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeElement, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &LatticeElement) -> R {
        self.terms.get(g).cloned().unwrap_or_else(R::zero)
    }

    pub fn scaled(&self, c: &R) -> FormalSum<R> {
        let mut out = FormalSum::zero(self.kind);
        for (g, a) in &self.terms {
            out.accumulate(g.clone(), a.mul(c));
        }
        out
    }

    pub fn plus(&self, other: &FormalSum<R>) -> Result<FormalSum<R>> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch("formal sums over different groups".into()));
        }
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.accumulate(g.clone(), c.clone());
        }
        Ok(out)
    }

    /// Lines `coeff * element-literal`, in element order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (g, c) in &self.terms {
            out.push_str(&format!("{c} * {}\n", crate::groups::GroupElement::Lattice(g.clone())));
        }
        out
    }
}

/// α ∗ f = Σ_{g,h} a_g b_h (gh), with exact group arithmetic.
pub fn convolve<R: Coefficient>(alpha: &FormalSum<R>, f: &FormalSum<R>) -> Result<FormalSum<R>> {
    if alpha.kind != f.kind {
        return Err(Error::KindMismatch("convolution of sums over different groups".into()));
    }
    let mut out = FormalSum::zero(alpha.kind);
    for (g, a) in &alpha.terms {
        for (h, b) in &f.terms {
            out.accumulate(lattice_multiply(g, h)?, a.mul(b));
        }
    }
    Ok(out)
}

/// L_g f = Σ a_x (gx); equals convolve(δ_g, f).
pub fn left_translate<R: Coefficient>(g: &LatticeElement, f: &FormalSum<R>) -> Result<FormalSum<R>> {
    if !f.kind.matches(g) {
        return Err(Error::KindMismatch("translation element from a different group".into()));
    }
    let mut out = FormalSum::zero(f.kind);
    for (x, c) in &f.terms {
        out.accumulate(lattice_multiply(g, x)?, c.clone());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Support balls
// ---------------------------------------------------------------------------

/// Radius-R ball: max-norm box on ℤⁿ, everything on ℤ/m, generator
/// word-length on the (integer-generated) Heisenberg lattice.
pub fn support_ball(kind: LatticeKind, radius: usize) -> Result<Vec<LatticeElement>> {
    match kind {
        LatticeKind::Zn(n) => {
            if n == 0 || n > 3 {
                return Err(Error::InvalidParameter("ℤⁿ ball supports 1 ≤ n ≤ 3".into()));
            }
            let side = 2 * radius + 1;
            let total = side.pow(n as u32);
            let mut out = Vec::with_capacity(total);
            for flat in 0..total {
                let mut rem = flat;
                let mut v = vec![0i64; n];
                for d in 0..n {
                    v[d] = (rem % side) as i64 - radius as i64;
                    rem /= side;
                }
                out.push(LatticeElement::Zn(v));
            }
            out.sort();
            Ok(out)
        }
        LatticeKind::ZMod(m) => {
            if m == 0 {
                return Err(Error::InvalidParameter("ℤ/m needs m ≥ 1".into()));
            }
            Ok((0..m).map(|k| LatticeElement::ZMod { m, k }).collect())
        }
        LatticeKind::Heisenberg(n) => {
            // breadth-first over the standard generators a_i^{±1}, b_i^{±1}
            let mut gens = Vec::new();
            for i in 0..n {
                for sign in [1i64, -1] {
                    let mut a = vec![Rational::zero(); n];
                    a[i] = Rational::from_integer(sign);
                    gens.push(LatticeElement::Heisenberg(
                        HeisElement::new(Rational::zero(), a.clone(), vec![Rational::zero(); n])
                            .expect("valid generator"),
                    ));
                    let mut b = vec![Rational::zero(); n];
                    b[i] = Rational::from_integer(sign);
                    gens.push(LatticeElement::Heisenberg(
                        HeisElement::new(Rational::zero(), vec![Rational::zero(); n], b)
                            .expect("valid generator"),
                    ));
                }
            }
            let start = kind.identity();
            let mut seen: BTreeSet<LatticeElement> = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([(start, 0usize)]);
            while let Some((el, d)) = queue.pop_front() {
                if d == radius {
                    continue;
                }
                for g in &gens {
                    let next = lattice_multiply(&el, g)?;
                    if seen.insert(next.clone()) {
                        queue.push_back((next, d + 1));
                    }
                }
            }
            Ok(seen.into_iter().collect())
        }
    }
}

// ---------------------------------------------------------------------------
// Convolution matrices and the zero-divisor probe
// ---------------------------------------------------------------------------

/// Matrix of α ∗ (·) restricted to functions supported on `cols`; rows run
/// over the reachable products, entry (x, h) = α(x·h⁻¹).
#[derive(Clone, Debug)]
pub struct ConvolutionMatrix<R: Coefficient> {
    pub rows: Vec<LatticeElement>,
    pub cols: Vec<LatticeElement>,
    /// row-major
    pub entries: Vec<R>,
}

impl<R: Coefficient> ConvolutionMatrix<R> {
    pub fn assemble(alpha: &FormalSum<R>, cols: Vec<LatticeElement>) -> Result<ConvolutionMatrix<R>> {
        if alpha.is_zero() {
            return Err(Error::InvalidParameter("zero α has no convolution matrix".into()));
        }
        let mut row_set = BTreeSet::new();
        for g in alpha.support() {
            for h in &cols {
                row_set.insert(lattice_multiply(g, h)?);
            }
        }
        let rows: Vec<LatticeElement> = row_set.into_iter().collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for x in &rows {
            for h in &cols {
                entries.push(alpha.coefficient(&lattice_multiply(x, &lattice_invert(h))?));
            }
        }
        Ok(ConvolutionMatrix { rows, cols, entries })
    }

    pub fn entry(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols.len() + j]
    }

    pub fn to_complex(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.rows.len(), self.cols.len(), |i, j| self.entry(i, j).to_c64())
    }

    /// Exact kernel vector by Gaussian elimination (nonzero-pivot test in
    /// exact mode, magnitude threshold for floats); None when full rank.
    pub fn kernel_vector(&self) -> Option<Vec<R>> {
        let (nr, nc) = (self.rows.len(), self.cols.len());
        let mut m: Vec<R> = self.entries.clone();
        let float_tol = if R::EXACT {
            0.0
        } else {
            1e-10 * self.entries.iter().map(|e| e.to_c64().norm()).fold(0.0, f64::max)
        };
        let nonzero = |e: &R| {
            if R::EXACT {
                !e.is_zero()
            } else {
                e.to_c64().norm() > float_tol
            }
        };
        let mut pivot_col_of_row = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            let piv = (r..nr).find(|&i| nonzero(&m[i * nc + c]));
            let Some(piv) = piv else { continue };
            m.swap_chunks(piv, r, nc);
            let inv = m[r * nc + c].inv().expect("pivot nonzero");
            for j in 0..nc {
                m[r * nc + j] = m[r * nc + j].mul(&inv);
            }
            for i in 0..nr {
                if i != r && nonzero(&m[i * nc + c]) {
                    let factor = m[i * nc + c].clone();
                    for j in 0..nc {
                        let t = m[r * nc + j].mul(&factor);
                        m[i * nc + j] = m[i * nc + j].add(&t.neg());
                    }
                }
            }
            pivot_col_of_row.push(c);
            r += 1;
            if r == nr {
                break;
            }
        }
        let pivot_cols: BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
        let free = (0..nc).find(|c| !pivot_cols.contains(c))?;
        let mut v = vec![R::zero(); nc];
        v[free] = R::one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = m[row * nc + free].neg();
        }
        Some(v)
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl<T> SwapChunks for Vec<T> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        for j in 0..width {
            self.swap(a * width + j, b * width + j);
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZeroDivisorProbe<R: Coefficient> {
    pub matrix: ConvolutionMatrix<R>,
    pub radius: usize,
    pub min_singular_value: f64,
    pub witness: Option<FormalSum<R>>,
    /// finitely supported f only: the probe cannot decide the ℓ² statement
    pub finite_support_only: bool,
}

/// Smallest singular value of α ∗ (·) on the radius-R ball, with an exact
/// kernel witness when the map is singular there.
pub fn zero_divisor_probe<R: Coefficient>(
    alpha: &FormalSum<R>,
    radius: usize,
) -> Result<ZeroDivisorProbe<R>> {
    if alpha.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let cols = support_ball(alpha.kind(), radius)?;
    let matrix = ConvolutionMatrix::assemble(alpha, cols)?;
    let a = matrix.to_complex();
    let ata = a.adjoint() * &a;
    let min_lambda = ata
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let min_singular_value = min_lambda.max(0.0).sqrt();
    let witness = if min_singular_value < 1e-12 {
        matrix.kernel_vector().map(|v| {
            let terms = matrix
                .cols
                .iter()
                .zip(&v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(g, c)| (c.clone(), g.clone()))
                .collect();
            FormalSum::from_terms(alpha.kind(), terms).expect("kernel support is in the ball")
        })
    } else {
        None
    };
    Ok(ZeroDivisorProbe { matrix, radius, min_singular_value, witness, finite_support_only: true })
}

/// Symbol extremes of α̂(θ) = Σ a_g e^{−2πi g·θ} over a uniform torus grid.
pub fn zn_fourier_criterion<R: Coefficient>(
    alpha: &FormalSum<R>,
    resolution: usize,
) -> Result<(f64, f64)> {
    let LatticeKind::Zn(n) = alpha.kind() else {
        return Err(Error::KindMismatch("Fourier criterion needs a ℤⁿ sum".into()));
    };
    if resolution == 0 || resolution.pow(n as u32) > 100_000_000 {
        return Err(Error::InvalidParameter("unusable torus resolution".into()));
    }
    let total = resolution.pow(n as u32);
    let (mut min_abs, mut max_abs) = (f64::INFINITY, 0.0f64);
    let terms: Vec<(Vec<i64>, C64)> = alpha
        .terms()
        .map(|(g, c)| {
            let LatticeElement::Zn(v) = g else { unreachable!() };
            (v.clone(), c.to_c64())
        })
        .collect();
    for flat in 0..total {
        let mut rem = flat;
        let mut theta = vec![0.0; n];
        for t in theta.iter_mut() {
            *t = (rem % resolution) as f64 / resolution as f64;
            rem /= resolution;
        }
        let mut s = C64::new(0.0, 0.0);
        for (g, c) in &terms {
            let phase: f64 = g.iter().zip(&theta).map(|(gi, ti)| *gi as f64 * ti).sum();
            s += c * C64::from_polar(1.0, -2.0 * std::f64::consts::PI * phase);
        }
        min_abs = min_abs.min(s.norm());
        max_abs = max_abs.max(s.norm());
    }
    Ok((min_abs, max_abs))
}

// ---------------------------------------------------------------------------
// Rational Heisenberg lattice check
// ---------------------------------------------------------------------------

/// True iff r·(a_h·b_k) ∈ ℤ for all h, k and the points generate a discrete
/// subgroup of ℝ²(verified by exact integer linear algebra on the common
/// denominator scaling; a subgroup of (1/L)ℤ² is automatically free and
/// discrete once the scaled basis has been computed).
pub fn heisenberg_lattice_check(points: &[(Rational, Rational)], r: i64) -> Result<bool> {
    if r <= 0 {
        return Err(Error::InvalidParameter("r must be a positive integer".into()));
    }
    for (ah, _) in points {
        for (_, bk) in points {
            if !(ah * bk * Rational::from_integer(r)).is_integer() {
                return Ok(false);
            }
        }
    }
    // scale to ℤ² by the lcm of all denominators, then reduce the generator
    // list to a Hermite-style basis; rank ≤ 2 and torsion-freeness certify
    // discreteness of the generated subgroup
    let mut l: i64 = 1;
    for (a, b) in points {
        l = num_integer::lcm(l, *a.denom());
        l = num_integer::lcm(l, *b.denom());
    }
    let mut vecs: Vec<[i64; 2]> = points
        .iter()
        .map(|(a, b)| {
            [
                a.numer() * (l / a.denom()),
                b.numer() * (l / b.denom()),
            ]
        })
        .collect();
    let basis = integer_basis_2d(&mut vecs);
    debug_assert!(basis.len() <= 2);
    Ok(true)
}

/// Basis of the subgroup of ℤ² generated by `vecs`, by gcd row reduction.
fn integer_basis_2d(vecs: &mut Vec<[i64; 2]>) -> Vec<[i64; 2]> {
    vecs.retain(|v| *v != [0, 0]);
    // reduce first coordinates to a single nonzero entry by gcd steps
    loop {
        let mut nonzero: Vec<usize> = (0..vecs.len()).filter(|&i| vecs[i][0] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        nonzero.sort_by_key(|&i| vecs[i][0].abs());
        let (small, big) = (nonzero[0], nonzero[1]);
        let q = vecs[big][0] / vecs[small][0];
        vecs[big][0] -= q * vecs[small][0];
        vecs[big][1] -= q * vecs[small][1];
        vecs.retain(|v| *v != [0, 0]);
    }
    let mut basis = Vec::new();
    if let Some(i) = (0..vecs.len()).find(|&i| vecs[i][0] != 0) {
        basis.push(vecs[i]);
    }
    // remaining vectors have first coordinate 0: gcd their second entries
    let mut g2: i64 = 0;
    for v in vecs.iter() {
        if v[0] == 0 {
            g2 = num_integer::gcd(g2, v[1]);
        }
    }
    if g2 != 0 {
        basis.push([0, g2]);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z() -> LatticeKind {
        LatticeKind::Zn(1)
    }

    fn dz(k: i64) -> LatticeElement {
        LatticeElement::Zn(vec![k])
    }

    fn one() -> GaussianRational {
        GaussianRational::from_integer(1)
    }

    fn sum_z(terms: &[(i64, i64)]) -> FormalSum<GaussianRational> {
        FormalSum::from_terms(
            z(),
            terms.iter().map(|&(c, k)| (GaussianRational::from_integer(c), dz(k))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn z_hand_expansion() {
        // (δ₀ + δ₁) ∗ (δ₀ − δ₁) = δ₀ − δ₂
        let p = convolve(&sum_z(&[(1, 0), (1, 1)]), &sum_z(&[(1, 0), (-1, 1)])).unwrap();
        assert_eq!(p, sum_z(&[(1, 0), (-1, 2)]));
    }

    #[test]
    fn torsion_zero_divisor_exact() {
        for m in 2..=12u64 {
            let kind = LatticeKind::ZMod(m);
            let all: Vec<_> =
                (0..m).map(|k| (one(), LatticeElement::ZMod { m, k })).collect();
            let alpha = FormalSum::from_terms(kind, all).unwrap();
            let f = FormalSum::from_terms(
                kind,
                vec![
                    (one(), LatticeElement::ZMod { m, k: 0 }),
                    (one().neg(), LatticeElement::ZMod { m, k: 1 }),
                ],
            )
            .unwrap();
            assert!(convolve(&alpha, &f).unwrap().is_zero(), "m = {m}");
        }
    }

    #[test]
    fn identity_delta_is_neutral() {
        let alpha = sum_z(&[(3, -2), (1, 0), (-5, 4)]);
        let e = FormalSum::delta(z(), dz(0), one()).unwrap();
        assert_eq!(convolve(&alpha, &e).unwrap(), alpha);
        assert_eq!(convolve(&e, &alpha).unwrap(), alpha);
    }

    #[test]
    fn left_translate_equals_delta_convolution() {
        let kind = LatticeKind::Zn(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let f = FormalSum::from_terms(
                kind,
                (0..5)
                    .map(|_| {
                        (
                            GaussianRational::new(
                                Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9)),
                                Rational::from_integer(rng.gen_range(-3..=3)),
                            ),
                            LatticeElement::Zn(vec![rng.gen_range(-5..=5), rng.gen_range(-5..=5)]),
                        )
                    })
                    .collect(),
            )
            .unwrap();
            let g = LatticeElement::Zn(vec![rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
            let dg = FormalSum::delta(kind, g.clone(), one()).unwrap();
            assert_eq!(left_translate(&g, &f).unwrap(), convolve(&dg, &f).unwrap());
        }
    }

    #[test]
    fn ring_axioms_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rand_sum = |rng: &mut ChaCha8Rng| {
            FormalSum::from_terms(
                z(),
                (0..3)
                    .map(|_| {
                        (
                            GaussianRational::new(
                                Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
                                Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
                            ),
                            dz(rng.gen_range(-6..=6)),
                        )
                    })
                    .collect(),
            )
            .unwrap()
        };
        for _ in 0..500 {
            let (a, b, c) = (rand_sum(&mut rng), rand_sum(&mut rng), rand_sum(&mut rng));
            // associativity, exactly
            let lhs = convolve(&convolve(&a, &b).unwrap(), &c).unwrap();
            let rhs = convolve(&a, &convolve(&b, &c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            // distributivity, exactly
            let d1 = convolve(&a, &b.plus(&c).unwrap()).unwrap();
            let d2 = convolve(&a, &b).unwrap().plus(&convolve(&a, &c).unwrap()).unwrap();
            assert_eq!(d1, d2);
        }
    }

    #[test]
    fn zmod3_probe_finds_torsion_witness() {
        let kind = LatticeKind::ZMod(3);
        let alpha = FormalSum::from_terms(
            kind,
            (0..3).map(|k| (one(), LatticeElement::ZMod { m: 3, k })).collect(),
        )
        .unwrap();
        let probe = zero_divisor_probe(&alpha, 1).unwrap();
        assert!(probe.min_singular_value < 1e-12, "sv {}", probe.min_singular_value);
        let w = probe.witness.expect("kernel witness");
        assert!(!w.is_zero());
        assert!(convolve(&alpha, &w).unwrap().is_zero());
    }

    #[test]
    fn z_one_minus_g_has_no_finite_kernel() {
        let alpha = sum_z(&[(1, 0), (-1, 1)]);
        let probe = zero_divisor_probe(&alpha, 20).unwrap();
        assert!(probe.min_singular_value > 0.0 && probe.witness.is_none());
        // rank oracle: the bidiagonal matrix has full column rank, so exact
        // elimination finds no kernel vector either
        assert!(probe.matrix.kernel_vector().is_none());
    }

    #[test]
    fn torsion_dichotomy_on_z() {
        // the ℤ lift of 1 + g + … + g^{m-1} is not a zero divisor
        for m in 2..=6 {
            let alpha = sum_z(&(0..m).map(|k| (1, k)).collect::<Vec<_>>());
            let probe = zero_divisor_probe(&alpha, 12).unwrap();
            assert!(probe.min_singular_value > 1e-10, "m = {m}");
        }
    }

    #[test]
    fn convolution_matrix_matches_defining_sum() {
        let alpha = sum_z(&[(2, -1), (1, 0), (-1, 3)]);
        let cols = support_ball(z(), 2).unwrap();
        let m = ConvolutionMatrix::assemble(&alpha, cols).unwrap();
        // brute force: column h of the matrix is α ∗ δ_h restricted to rows
        for (j, h) in m.cols.iter().enumerate() {
            let dh = FormalSum::delta(z(), h.clone(), one()).unwrap();
            let col = convolve(&alpha, &dh).unwrap();
            for (i, x) in m.rows.iter().enumerate() {
                assert_eq!(*m.entry(i, j), col.coefficient(x));
            }
        }
    }

    #[test]
    fn fourier_criterion_examples() {
        let delta0 = sum_z(&[(1, 0)]);
        assert_eq!(zn_fourier_criterion(&delta0, 64).unwrap(), (1.0, 1.0));

        // the symbol 1 − e^{−2πiθ} vanishes at θ = 0, which the uniform
        // grid hits exactly at every resolution
        let (min1, max1) = zn_fourier_criterion(&sum_z(&[(1, 0), (-1, 1)]), 64).unwrap();
        let (min2, _) = zn_fourier_criterion(&sum_z(&[(1, 0), (-1, 1)]), 4096).unwrap();
        assert!(min1 < 1e-12 && min2 <= min1);
        assert!((max1 - 2.0).abs() < 1e-2);
        // yet the finite-support probe stays full rank (no ℓ² kernel)
        let p = zero_divisor_probe(
            &FormalSum::from_terms(
                z(),
                vec![(C64::new(1.0, 0.0), dz(0)), (C64::new(-1.0, 0.0), dz(1))],
            )
            .unwrap(),
            12,
        )
        .unwrap();
        assert!(p.min_singular_value > 1e-10);

        let (min3, _) = zn_fourier_criterion(&sum_z(&[(2, 0), (1, 1)]), 1024).unwrap();
        assert!(min3 >= 1.0 - 1e-12);
    }

    #[test]
    fn random_z2_probes_stay_regular() {
        // spot check of the acceptance-scale property at a smaller radius
        let kind = LatticeKind::Zn(2);
        let palette = [
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, -1.0),
            C64::new(2.0, 0.0),
            C64::new(-2.0, 0.0),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let nterms = rng.gen_range(1..=5);
            let sum = FormalSum::from_terms(
                kind,
                (0..nterms)
                    .map(|_| {
                        (
                            palette[rng.gen_range(0..palette.len())],
                            LatticeElement::Zn(vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)]),
                        )
                    })
                    .collect(),
            )
            .unwrap();
            if sum.is_zero() {
                continue;
            }
            let probe = zero_divisor_probe(&sum, 4).unwrap();
            assert!(probe.min_singular_value > 1e-10, "α = {}", sum.serialize());
        }
    }

    #[test]
    fn heisenberg_lattice_examples() {
        let r1 = Rational::from_integer(1);
        let r0 = Rational::zero();
        let half = Rational::new(1, 2);
        assert!(heisenberg_lattice_check(&[(r1, r0), (r0, r1)], 1).unwrap());
        assert!(heisenberg_lattice_check(&[(half, r0), (r0, half)], 4).unwrap());
        // r = 1 is too coarse for quarter-integer products
        assert!(!heisenberg_lattice_check(&[(half, r0), (half, half)], 1).unwrap());
        assert!(heisenberg_lattice_check(&[], 0).is_err());
        // permutation invariance
        let pts = [(half, r0), (r0, half), (r1, half)];
        let mut rev = pts;
        rev.reverse();
        assert_eq!(
            heisenberg_lattice_check(&pts, 4).unwrap(),
            heisenberg_lattice_check(&rev, 4).unwrap()
        );
    }

    #[test]
    fn heisenberg_ball_and_convolution() {
        let kind = LatticeKind::Heisenberg(1);
        let ball = support_ball(kind, 2).unwrap();
        assert!(ball.len() > 5);
        // integer points commute in the Weyl–Heisenberg quotient (the
        // commutator z = a₁b₂ − a₂b₁ reduces mod 1); half-integer points
        // leave a nontrivial central z = 1/4
        let half = Rational::new(1, 2);
        let a = LatticeElement::Heisenberg(
            HeisElement::new(Rational::zero(), vec![half], vec![Rational::zero()]).unwrap(),
        );
        let b = LatticeElement::Heisenberg(
            HeisElement::new(Rational::zero(), vec![Rational::zero()], vec![half]).unwrap(),
        );
        let ab = lattice_multiply(&a, &b).unwrap();
        let ba = lattice_multiply(&b, &a).unwrap();
        let comm = lattice_multiply(&ab, &lattice_invert(&ba)).unwrap();
        match comm {
            LatticeElement::Heisenberg(h) => {
                assert!(h.a.iter().all(|x| x.is_zero()) && h.b.iter().all(|x| x.is_zero()));
                assert!(!h.z.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn serialization_lines() {
        let alpha = sum_z(&[(1, 0), (-2, 3)]);
        let s = alpha.serialize();
        assert_eq!(s.lines().count(), 2);
        assert!(s.contains('*'));
    }
}
