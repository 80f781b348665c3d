//! Element algebra and Haar densities for the four continuous groups
//! (affine, positive-affine, Weyl–Heisenberg, shearlet) and the discrete
//! groups used by the group-ring module.
//!
//! Shearlet elements `(a, s, t)` represent the matrix part `S_s A_a` with
//! `A_a = diag(a, √a)`; the matrix product works out to
//! `(a, s)(a', s') = (aa', s + s'√a)`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    /// (a, b) with a ≠ 0; the positive-affine subgroup K has a > 0.
    Affine { a: f64, b: f64 },
    /// (t, a, b) with the circle coordinate t stored in [0, 1).
    WeylHeisenberg { t: f64, a: Vec<f64>, b: Vec<f64> },
    /// (S_s A_a, t) with a > 0.
    Shearlet { a: f64, s: f64, t: [f64; 2] },
    Lattice(LatticeElement),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeElement {
    Zn(Vec<i64>),
    ZMod { m: u64, k: u64 },
    Heisenberg(HeisElement),
}

/// Rational point of the Weyl–Heisenberg lattice; `z` is the circle
/// coordinate reduced to [0, 1). Exact arithmetic throughout.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeisElement {
    pub z: Rational,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl HeisElement {
    pub fn new(z: Rational, a: Vec<Rational>, b: Vec<Rational>) -> Result<HeisElement> {
        if a.len() != b.len() {
            return Err(Error::InvalidParameter(
                "Heisenberg element needs a and b of equal length".into(),
            ));
        }
        Ok(HeisElement { z: reduce_mod_one(z), a, b })
    }
}

fn reduce_mod_one(z: Rational) -> Rational {
    let f = z.floor();
    z - f
}

fn frac_mod_one(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rdot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl GroupElement {
    pub fn affine(a: f64, b: f64) -> Result<GroupElement> {
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("affine element needs a ≠ 0, got ({a}, {b})")));
        }
        Ok(GroupElement::Affine { a, b })
    }

    pub fn weyl_heisenberg(t: f64, a: Vec<f64>, b: Vec<f64>) -> Result<GroupElement> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::InvalidParameter("wh element needs matching nonempty a, b".into()));
        }
        Ok(GroupElement::WeylHeisenberg { t: frac_mod_one(t), a, b })
    }

    pub fn shearlet(a: f64, s: f64, t: [f64; 2]) -> Result<GroupElement> {
        if !(a > 0.0) {
            return Err(Error::InvalidParameter(format!("shearlet element needs a > 0, got {a}")));
        }
        Ok(GroupElement::Shearlet { a, s, t })
    }

    pub fn zn(coords: Vec<i64>) -> GroupElement {
        GroupElement::Lattice(LatticeElement::Zn(coords))
    }

    pub fn zmod(m: u64, k: u64) -> Result<GroupElement> {
        if m == 0 {
            return Err(Error::InvalidParameter("Z/m needs m >= 1".into()));
        }
        Ok(GroupElement::Lattice(LatticeElement::ZMod { m, k: k % m }))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GroupElement::Affine { .. } => "affine",
            GroupElement::WeylHeisenberg { .. } => "weyl-heisenberg",
            GroupElement::Shearlet { .. } => "shearlet",
            GroupElement::Lattice(LatticeElement::Zn(_)) => "zn",
            GroupElement::Lattice(LatticeElement::ZMod { .. }) => "zmod",
            GroupElement::Lattice(LatticeElement::Heisenberg(_)) => "heisenberg-lattice",
        }
    }

    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Affine { .. } => GroupElement::Affine { a: 1.0, b: 0.0 },
            GroupElement::WeylHeisenberg { a, .. } => GroupElement::WeylHeisenberg {
                t: 0.0,
                a: vec![0.0; a.len()],
                b: vec![0.0; a.len()],
            },
            GroupElement::Shearlet { .. } => GroupElement::Shearlet { a: 1.0, s: 0.0, t: [0.0, 0.0] },
            GroupElement::Lattice(l) => GroupElement::Lattice(l.identity_like()),
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&self.identity_like(), tol)
    }

    /// Parameter-wise comparison with tolerance (exact for lattice elements).
    pub fn approx_eq(&self, other: &GroupElement, tol: f64) -> bool {
        match (self, other) {
            (GroupElement::Affine { a, b }, GroupElement::Affine { a: c, b: d }) => {
                (a - c).abs() <= tol && (b - d).abs() <= tol
            }
            (
                GroupElement::WeylHeisenberg { t, a, b },
                GroupElement::WeylHeisenberg { t: t2, a: a2, b: b2 },
            ) => {
                let dt = (t - t2).abs();
                let circ = dt.min(1.0 - dt);
                circ <= tol
                    && a.len() == a2.len()
                    && a.iter().zip(a2).all(|(x, y)| (x - y).abs() <= tol)
                    && b.iter().zip(b2).all(|(x, y)| (x - y).abs() <= tol)
            }
            (
                GroupElement::Shearlet { a, s, t },
                GroupElement::Shearlet { a: a2, s: s2, t: t2 },
            ) => {
                (a - a2).abs() <= tol
                    && (s - s2).abs() <= tol
                    && (t[0] - t2[0]).abs() <= tol
                    && (t[1] - t2[1]).abs() <= tol
            }
            (GroupElement::Lattice(x), GroupElement::Lattice(y)) => x == y,
            _ => false,
        }
    }
}

impl LatticeElement {
    pub fn identity_like(&self) -> LatticeElement {
        match self {
            LatticeElement::Zn(v) => LatticeElement::Zn(vec![0; v.len()]),
            LatticeElement::ZMod { m, .. } => LatticeElement::ZMod { m: *m, k: 0 },
            LatticeElement::Heisenberg(h) => LatticeElement::Heisenberg(HeisElement {
                z: Rational::zero(),
                a: vec![Rational::zero(); h.a.len()],
                b: vec![Rational::zero(); h.b.len()],
            }),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }
}

fn mismatch(g: &GroupElement, h: &GroupElement) -> Error {
    Error::KindMismatch(format!("{} vs {}", g.kind_name(), h.kind_name()))
}

/// The group product.
pub fn multiply(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    match (g, h) {
        (GroupElement::Affine { a, b }, GroupElement::Affine { a: c, b: d }) => {
            GroupElement::affine(a * c, b + a * d)
        }
        (
            GroupElement::WeylHeisenberg { t: t1, a: a1, b: b1 },
            GroupElement::WeylHeisenberg { t: t2, a: a2, b: b2 },
        ) => {
            if a1.len() != a2.len() {
                return Err(mismatch(g, h));
            }
            GroupElement::weyl_heisenberg(
                t1 + t2 + dot(a1, b2),
                a1.iter().zip(a2).map(|(x, y)| x + y).collect(),
                b1.iter().zip(b2).map(|(x, y)| x + y).collect(),
            )
        }
        (
            GroupElement::Shearlet { a, s, t },
            GroupElement::Shearlet { a: a2, s: s2, t: t2 },
        ) => {
            // (M, t)(M', t') = (MM', t + M t') with M = S_s A_a
            let mt = [a * t2[0] + s * a.sqrt() * t2[1], a.sqrt() * t2[1]];
            GroupElement::shearlet(a * a2, s + s2 * a.sqrt(), [t[0] + mt[0], t[1] + mt[1]])
        }
        (GroupElement::Lattice(x), GroupElement::Lattice(y)) => {
            Ok(GroupElement::Lattice(lattice_multiply(x, y)?))
        }
        _ => Err(mismatch(g, h)),
    }
}

pub fn lattice_multiply(x: &LatticeElement, y: &LatticeElement) -> Result<LatticeElement> {
    match (x, y) {
        (LatticeElement::Zn(u), LatticeElement::Zn(v)) if u.len() == v.len() => {
            Ok(LatticeElement::Zn(u.iter().zip(v).map(|(a, b)| a + b).collect()))
        }
        (LatticeElement::ZMod { m, k }, LatticeElement::ZMod { m: m2, k: k2 }) if m == m2 => {
            Ok(LatticeElement::ZMod { m: *m, k: (k + k2) % m })
        }
        (LatticeElement::Heisenberg(p), LatticeElement::Heisenberg(q))
            if p.a.len() == q.a.len() =>
        {
            Ok(LatticeElement::Heisenberg(HeisElement {
                z: reduce_mod_one(p.z + q.z + rdot(&p.a, &q.b)),
                a: p.a.iter().zip(&q.a).map(|(u, v)| u + v).collect(),
                b: p.b.iter().zip(&q.b).map(|(u, v)| u + v).collect(),
            }))
        }
        _ => Err(Error::KindMismatch("lattice elements from different groups".into())),
    }
}

/// The group inverse.
pub fn invert(g: &GroupElement) -> Result<GroupElement> {
    match g {
        GroupElement::Affine { a, b } => GroupElement::affine(1.0 / a, -b / a),
        GroupElement::WeylHeisenberg { t, a, b } => GroupElement::weyl_heisenberg(
            dot(a, b) - t,
            a.iter().map(|x| -x).collect(),
            b.iter().map(|x| -x).collect(),
        ),
        GroupElement::Shearlet { a, s, t } => {
            // M^{-1} = S_{-s/√a} A_{1/a}; translation -M^{-1} t
            let inv_a = 1.0 / a;
            let inv_s = -s / a.sqrt();
            let mt = [inv_a * t[0] + inv_s * inv_a.sqrt() * t[1], inv_a.sqrt() * t[1]];
            GroupElement::shearlet(inv_a, inv_s, [-mt[0], -mt[1]])
        }
        GroupElement::Lattice(l) => Ok(GroupElement::Lattice(lattice_invert(l))),
    }
}

pub fn lattice_invert(x: &LatticeElement) -> LatticeElement {
    match x {
        LatticeElement::Zn(v) => LatticeElement::Zn(v.iter().map(|a| -a).collect()),
        LatticeElement::ZMod { m, k } => LatticeElement::ZMod { m: *m, k: (m - k) % m },
        LatticeElement::Heisenberg(h) => LatticeElement::Heisenberg(HeisElement {
            z: reduce_mod_one(rdot(&h.a, &h.b) - h.z),
            a: h.a.iter().map(|x| -x).collect(),
            b: h.b.iter().map(|x| -x).collect(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Haar densities
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContinuousGroup {
    Affine,
    PositiveAffine,
    WeylHeisenberg,
    Shearlet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Closed-form Haar density as a function of the parameter tuple:
/// affine (a, b), shearlet (a, s, t₁, t₂), Weyl–Heisenberg (t, a, b).
#[derive(Clone, Copy, Debug)]
pub struct HaarDensity {
    pub group: ContinuousGroup,
    pub side: Side,
}

impl HaarDensity {
    pub fn new(group: ContinuousGroup, side: Side) -> HaarDensity {
        HaarDensity { group, side }
    }

    pub fn eval(&self, params: &[f64]) -> f64 {
        let a = params[0];
        match (self.group, self.side) {
            (ContinuousGroup::Affine | ContinuousGroup::PositiveAffine, Side::Left) => 1.0 / (a * a),
            (ContinuousGroup::Affine | ContinuousGroup::PositiveAffine, Side::Right) => 1.0 / a.abs(),
            (ContinuousGroup::WeylHeisenberg, _) => 1.0,
            (ContinuousGroup::Shearlet, Side::Left) => 1.0 / (a * a * a),
            (ContinuousGroup::Shearlet, Side::Right) => 1.0 / a,
        }
    }
}

pub fn haar_density(group: ContinuousGroup, side: Side) -> HaarDensity {
    HaarDensity::new(group, side)
}

// ---------------------------------------------------------------------------
// Element literals
// ---------------------------------------------------------------------------

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Affine { a, b } => write!(f, "affine({a},{b})"),
            GroupElement::WeylHeisenberg { t, a, b } => {
                write!(f, "wh({t}")?;
                for x in a {
                    write!(f, ",{x}")?;
                }
                for x in b {
                    write!(f, ",{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Shearlet { a, s, t } => write!(f, "shear({a},{s},{},{})", t[0], t[1]),
            GroupElement::Lattice(LatticeElement::Zn(v)) => {
                write!(f, "zn(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Lattice(LatticeElement::ZMod { m, k }) => write!(f, "zmod({m},{k})"),
            GroupElement::Lattice(LatticeElement::Heisenberg(h)) => {
                let join = |v: &[Rational]| {
                    v.iter().map(fmt_rational).collect::<Vec<_>>().join(",")
                };
                write!(f, "heis({};{};{})", fmt_rational(&h.z), join(&h.a), join(&h.b))
            }
        }
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().abs() == 1 {
        format!("{}", r.numer() * r.denom().signum())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses an element literal: `affine(a,b)`, `wh(t,a…,b…)`,
/// `shear(a,s,t1,t2)`, `zn(k1,…)`, `zmod(m,k)`, `heis(z;a…;b…)`.
/// Rational syntax `p/q` is accepted wherever a number is expected.
pub fn parse_element(text: &str) -> Result<GroupElement> {
    let text = text.trim();
    let (head, rest) = text
        .split_once('(')
        .ok_or_else(|| Error::InvalidParameter(format!("not an element literal: `{text}`")))?;
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::InvalidParameter(format!("missing `)` in `{text}`")))?;
    let nums = |s: &str| -> Result<Vec<f64>> { s.split(',').map(parse_number).collect() };
    match head.trim() {
        "affine" => {
            let v = nums(body)?;
            if v.len() != 2 {
                return Err(Error::InvalidParameter("affine(a,b) takes 2 parameters".into()));
            }
            GroupElement::affine(v[0], v[1])
        }
        "wh" => {
            let v = nums(body)?;
            if v.len() < 3 || (v.len() - 1) % 2 != 0 {
                return Err(Error::InvalidParameter("wh(t,a…,b…) needs 1 + 2n parameters".into()));
            }
            let n = (v.len() - 1) / 2;
            GroupElement::weyl_heisenberg(v[0], v[1..1 + n].to_vec(), v[1 + n..].to_vec())
        }
        "shear" => {
            let v = nums(body)?;
            if v.len() != 4 {
                return Err(Error::InvalidParameter("shear(a,s,t1,t2) takes 4 parameters".into()));
            }
            GroupElement::shearlet(v[0], v[1], [v[2], v[3]])
        }
        "zn" => {
            let coords = body
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidParameter(format!("bad integer `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GroupElement::zn(coords))
        }
        "zmod" => {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::InvalidParameter("zmod(m,k) takes 2 parameters".into()));
            }
            let m = parts[0].trim().parse::<u64>().map_err(|_| {
                Error::InvalidParameter(format!("bad modulus `{}`", parts[0]))
            })?;
            let k = parts[1].trim().parse::<i64>().map_err(|_| {
                Error::InvalidParameter(format!("bad residue `{}`", parts[1]))
            })?;
            GroupElement::zmod(m, k.rem_euclid(m as i64) as u64)
        }
        "heis" => {
            let groups: Vec<&str> = body.split(';').collect();
            if groups.len() != 3 {
                return Err(Error::InvalidParameter("heis(z;a…;b…) takes 3 groups".into()));
            }
            let z = parse_rational(groups[0])?;
            let a = groups[1].split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            let b = groups[2].split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            Ok(GroupElement::Lattice(LatticeElement::Heisenberg(HeisElement::new(z, a, b)?)))
        }
        other => Err(Error::InvalidParameter(format!("unknown element kind `{other}`"))),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad_rat(s))?;
        let d: i64 = den.trim().parse().map_err(|_| bad_rat(s))?;
        if d == 0 {
            return Err(bad_rat(s));
        }
        Ok(Rational::new(n, d))
    } else {
        let n: i64 = s.parse().map_err(|_| bad_rat(s))?;
        Ok(Rational::from_integer(n))
    }
}

fn bad_rat(s: &str) -> Error {
    Error::InvalidParameter(format!("not an exact rational: `{s}` (use p/q)"))
}

fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|_| bad_rat(s))?;
        let d: f64 = den.trim().parse().map_err(|_| bad_rat(s))?;
        if d == 0.0 {
            return Err(bad_rat(s));
        }
        Ok(n / d)
    } else {
        s.parse::<f64>()
            .map_err(|_| Error::InvalidParameter(format!("bad number `{s}`")))
    }
}
