//! Vectors, bases and superbases in the plane, conorms, vonorms and the
//! reduction of an arbitrary basis to an obtuse superbase.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which a conorm counts as zero.
pub const EPS_ZERO_REL: f64 = 1e-9;
/// Normalized determinant threshold for degenerate bases.
pub const EPS_DEGENERATE: f64 = 1e-12;
/// Relative tolerance for `v0 + v1 + v2 = 0`.
pub const EPS_SUM_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// Signed area `x1*y2 - y1*x2`.
    pub fn det(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn rotate(self, theta: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Reflection in the x-axis.
    pub fn reflect(self) -> Vec2 {
        Vec2::new(self.x, -self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

fn is_degenerate(v1: Vec2, v2: Vec2) -> bool {
    let scale = v1.norm() * v2.norm();
    scale.is_nan() || scale <= 0.0 || v1.det(v2).abs() <= EPS_DEGENERATE * scale
}

/// A basis `(v1, v2)` of a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Basis {
    pub v1: Vec2,
    pub v2: Vec2,
}

impl Basis {
    pub fn new(v1: Vec2, v2: Vec2) -> Result<Self> {
        if !v1.is_finite() || !v2.is_finite() {
            return Err(Error::NonFinite);
        }
        if is_degenerate(v1, v2) {
            return Err(Error::DegenerateBasis);
        }
        Ok(Basis { v1, v2 })
    }

    pub fn from_rows(m: [[f64; 2]; 2]) -> Result<Self> {
        Basis::new(Vec2::new(m[0][0], m[0][1]), Vec2::new(m[1][0], m[1][1]))
    }

    pub fn det(&self) -> f64 {
        self.v1.det(self.v2)
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.v1.x, self.v1.y], [self.v2.x, self.v2.y]]
    }

    /// The lattice point `c1*v1 + c2*v2`.
    pub fn point(&self, c1: i64, c2: i64) -> Vec2 {
        self.v1 * c1 as f64 + self.v2 * c2 as f64
    }

    /// Rotates the basis so that `v1` points along the positive x-axis.
    pub fn standard_pose(&self) -> Basis {
        let theta = -self.v1.angle();
        Basis {
            v1: Vec2::new(self.v1.norm(), 0.0),
            v2: self.v2.rotate(theta),
        }
    }
}

/// An ordered triple `(v0, v1, v2)` with `v0 + v1 + v2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Superbase {
    pub v0: Vec2,
    pub v1: Vec2,
    pub v2: Vec2,
}

impl Superbase {
    pub fn new(v0: Vec2, v1: Vec2, v2: Vec2) -> Result<Self> {
        if !v0.is_finite() || !v1.is_finite() || !v2.is_finite() {
            return Err(Error::NonFinite);
        }
        let scale = v0.norm().max(v1.norm()).max(v2.norm());
        if (v0 + v1 + v2).norm() > EPS_SUM_REL * scale {
            return Err(Error::NotASuperbase);
        }
        if is_degenerate(v1, v2) {
            return Err(Error::DegenerateBasis);
        }
        Ok(Superbase { v0, v1, v2 })
    }

    pub fn from_array(v: [Vec2; 3]) -> Result<Self> {
        Superbase::new(v[0], v[1], v[2])
    }

    pub fn vectors(&self) -> [Vec2; 3] {
        [self.v0, self.v1, self.v2]
    }

    pub fn basis(&self) -> Basis {
        Basis {
            v1: self.v1,
            v2: self.v2,
        }
    }

    pub fn max_length(&self) -> f64 {
        self.vectors().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Applies `f` to every vector; `f` must be linear.
    pub fn map(&self, f: impl Fn(Vec2) -> Vec2) -> Superbase {
        Superbase {
            v0: f(self.v0),
            v1: f(self.v1),
            v2: f(self.v2),
        }
    }

    /// `1e-9` times the largest vonorm.
    pub fn eps_zero(&self) -> f64 {
        EPS_ZERO_REL * vonorms(self).max()
    }

    pub fn is_obtuse(&self) -> bool {
        conorms(self).min() >= -self.eps_zero()
    }

    /// Relabels the vectors so that `p12 <= p01 <= p02`.
    pub fn canonical(&self) -> Superbase {
        let v = self.vectors();
        let mut best = *self;
        for [i, j, k] in PERMUTATIONS {
            let s = Superbase {
                v0: v[i],
                v1: v[j],
                v2: v[k],
            };
            let p = conorms(&s);
            if p.p12 <= p.p01 && p.p01 <= p.p02 {
                best = s;
                break;
            }
        }
        best
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Negated scalar products `p_ij = -v_i . v_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conorms {
    pub p12: f64,
    pub p01: f64,
    pub p02: f64,
}

impl Conorms {
    /// Conorm for a pair of distinct indices in `0..3`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (1, 2) => self.p12,
            (0, 1) => self.p01,
            (0, 2) => self.p02,
            _ => panic!("conorm indices must be distinct and below 3"),
        }
    }

    pub fn min(&self) -> f64 {
        self.p12.min(self.p01).min(self.p02)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p12, self.p01, self.p02]
    }
}

/// Squared lengths `vn_i = |v_i|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vonorms {
    pub vn0: f64,
    pub vn1: f64,
    pub vn2: f64,
}

impl Vonorms {
    pub fn as_array(&self) -> [f64; 3] {
        [self.vn0, self.vn1, self.vn2]
    }

    pub fn max(&self) -> f64 {
        self.vn0.max(self.vn1).max(self.vn2)
    }

    pub fn min(&self) -> f64 {
        self.vn0.min(self.vn1).min(self.vn2)
    }

    pub fn sorted(&self) -> [f64; 3] {
        let mut a = self.as_array();
        a.sort_by(f64::total_cmp);
        a
    }
}

pub fn make_superbase(b: &Basis) -> Result<Superbase> {
    Superbase::new(-(b.v1 + b.v2), b.v1, b.v2)
}

pub fn conorms(s: &Superbase) -> Conorms {
    Conorms {
        p12: -s.v1.dot(s.v2),
        p01: -s.v0.dot(s.v1),
        p02: -s.v0.dot(s.v2),
    }
}

pub fn vonorms(s: &Superbase) -> Vonorms {
    Vonorms {
        vn0: s.v0.norm2(),
        vn1: s.v1.norm2(),
        vn2: s.v2.norm2(),
    }
}

/// `|c1*v1 + c2*v2|^2` from the conorms of an obtuse superbase.
pub fn norm_from_coefficients(c1: i64, c2: i64, p: &Conorms) -> f64 {
    let (c1, c2) = (c1 as f64, c2 as f64);
    c1 * c1 * p.p01 + c2 * c2 * p.p02 + (c1 - c2) * (c1 - c2) * p.p12
}

/// Maximum number of reduction steps for a basis with the given vonorms.
pub fn iteration_cap(vn: &Vonorms) -> usize {
    let ratio = vn.max() / vn.min();
    64 + (10.0 * ratio.log2().max(0.0)).ceil() as usize
}

/// Flips the most negative conorm until the superbase is obtuse.
///
/// For `p_ij < 0` the triple `(v_i, v_j, v_k)` becomes `(-v_i, v_j, v_i - v_j)`,
/// which shrinks `|v_k|^2` by `4|p_ij|`.
pub fn obtuse_flips(s: &Superbase, cap: usize) -> Result<(Superbase, usize)> {
    let mut v = s.vectors();
    let eps = s.eps_zero();
    for step in 0..=cap {
        let cur = Superbase {
            v0: v[0],
            v1: v[1],
            v2: v[2],
        };
        let p = conorms(&cur);
        let (i, j, pij) = [(1, 2, p.p12), (0, 1, p.p01), (0, 2, p.p02)]
            .into_iter()
            .min_by(|a, b| a.2.total_cmp(&b.2))
            .unwrap();
        if pij >= -eps {
            return Ok((cur, step));
        }
        let k = 3 - i - j;
        let (vi, vj) = (v[i], v[j]);
        v[i] = -vi;
        v[k] = vi - vj;
    }
    Err(Error::NonTermination(cap))
}

/// Reduces a basis to an obtuse superbase of the same lattice.
///
/// A Lagrange-Gauss pass with rounded quotients shortens the basis first, so the
/// flips of [`obtuse_flips`] finish in at most one step even for very skewed input.
pub fn reduce_to_obtuse(b: &Basis) -> Result<Superbase> {
    let start = make_superbase(b)?;
    let cap = iteration_cap(&vonorms(&start));
    let (mut v1, mut v2) = (b.v1, b.v2);
    let mut steps = 0;
    loop {
        if v2.norm2() < v1.norm2() {
            std::mem::swap(&mut v1, &mut v2);
        }
        let m = (v1.dot(v2) / v1.norm2()).round();
        let w = v2 - v1 * m;
        if m == 0.0 || w.norm2() >= v2.norm2() {
            break;
        }
        v2 = w;
        steps += 1;
        if steps > cap {
            return Err(Error::NonTermination(cap));
        }
    }
    let s = Superbase::new(-(v1 + v2), v1, v2)?;
    let (s, _) = obtuse_flips(&s, cap - steps)?;
    Ok(s)
}
