//! Root invariants, signs, projected invariants and reduced bases.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{conorms, Basis, Superbase, Vec2, EPS_ZERO_REL};

/// Relative tolerance for equal root products.
pub const EPS_EQUAL_REL: f64 = 1e-9;
/// Tolerance for points on the boundary of the quotient triangle.
pub const EPS_BOUNDARY: f64 = 1e-9;

/// Nondecreasing triple `r12 <= r01 <= r02` of root products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootInvariant {
    pub r12: f64,
    pub r01: f64,
    pub r02: f64,
}

impl RootInvariant {
    pub fn new(r12: f64, r01: f64, r02: f64) -> Result<Self> {
        let ok = [r12, r01, r02].iter().all(|r| r.is_finite())
            && r12 >= 0.0
            && r12 <= r01
            && r01 <= r02
            && r01 > 0.0;
        if ok {
            Ok(RootInvariant { r12, r01, r02 })
        } else {
            Err(Error::InvalidRootInvariant(r12, r01, r02))
        }
    }

    /// Sorts three root products into an invariant.
    pub fn from_unsorted(r: [f64; 3]) -> Result<Self> {
        let mut r = r;
        r.sort_by(f64::total_cmp);
        RootInvariant::new(r[0], r[1], r[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.r12, self.r01, self.r02]
    }

    /// The conorms `r_ij^2`.
    pub fn squares(&self) -> [f64; 3] {
        [
            self.r12 * self.r12,
            self.r01 * self.r01,
            self.r02 * self.r02,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_int(v: i64) -> Result<Sign> {
        match v {
            -1 => Ok(Sign::Negative),
            0 => Ok(Sign::Zero),
            1 => Ok(Sign::Positive),
            _ => Err(Error::InvalidSign(v)),
        }
    }

    pub fn of(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    /// True when the signs are strictly opposite.
    pub fn opposes(self, other: Sign) -> bool {
        self.value() * other.value() < 0
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedRootInvariant {
    pub ri: RootInvariant,
    pub sign: Sign,
}

impl OrientedRootInvariant {
    pub fn new(ri: RootInvariant, sign: Sign) -> Result<Self> {
        if (sign == Sign::Zero) != is_mirror_symmetric(&ri) {
            return Err(Error::InconsistentSign);
        }
        Ok(OrientedRootInvariant { ri, sign })
    }

    pub fn mirror(&self) -> Self {
        OrientedRootInvariant {
            ri: self.ri,
            sign: -self.sign,
        }
    }
}

/// A point of the quotient triangle `0 <= x < 1`, `0 <= y <= 1`, `x + y <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectedInvariant {
    pub x: f64,
    pub y: f64,
}

impl ProjectedInvariant {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let e = EPS_BOUNDARY;
        let ok = x.is_finite()
            && y.is_finite()
            && x >= -e
            && x < 1.0
            && y >= -e
            && y <= 1.0 + e
            && x + y <= 1.0 + e;
        if ok {
            Ok(ProjectedInvariant { x, y })
        } else {
            Err(Error::InvalidPi(x, y))
        }
    }

    /// Root invariant of size 1 with this projection.
    pub fn unit_root_invariant(&self) -> [f64; 3] {
        let (x, y) = (self.x, self.y);
        [
            y / 3.0,
            (3.0 - 3.0 * x - y) / 6.0,
            (3.0 + 3.0 * x - y) / 6.0,
        ]
    }

    /// Mirror-symmetric lattices project to the sides of the triangle.
    pub fn is_on_boundary(&self) -> bool {
        let [a, b, c] = self.unit_root_invariant();
        mirror_test(a.max(0.0), b.max(0.0), c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedProjectedInvariant {
    pub pi: ProjectedInvariant,
    pub sign: Sign,
}

impl OrientedProjectedInvariant {
    pub fn new(pi: ProjectedInvariant, sign: Sign) -> Result<Self> {
        if (sign == Sign::Zero) != pi.is_on_boundary() {
            return Err(Error::InconsistentSign);
        }
        Ok(OrientedProjectedInvariant { pi, sign })
    }

    pub fn mirror(&self) -> Self {
        OrientedProjectedInvariant {
            pi: self.pi,
            sign: -self.sign,
        }
    }
}

/// Coefficients of the quadratic form `q11 x^2 + 2 q12 x y + q22 y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricTensor {
    pub q11: f64,
    pub q12: f64,
    pub q22: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    Isometry,
    Rigid,
}

pub fn root_invariant(s: &Superbase) -> Result<RootInvariant> {
    let p = conorms(s);
    if p.min() < -s.eps_zero() {
        return Err(Error::NotObtuse);
    }
    let r = p.as_array().map(|x| x.max(0.0).sqrt());
    RootInvariant::from_unsorted(r)
}

fn mirror_test(r12: f64, r01: f64, r02: f64) -> bool {
    let max_vonorm = r01 * r01 + r02 * r02;
    let eps_equal = EPS_EQUAL_REL * r02;
    r12 * r12 <= EPS_ZERO_REL * max_vonorm || r01 - r12 <= eps_equal || r02 - r01 <= eps_equal
}

/// A zero root product or two equal root products.
pub fn is_mirror_symmetric(ri: &RootInvariant) -> bool {
    mirror_test(ri.r12, ri.r01, ri.r02)
}

/// Orientation of the two shortest superbase vectors, or zero for mirror-symmetric lattices.
pub fn sign_of(s: &Superbase) -> Result<Sign> {
    let ri = root_invariant(s)?;
    if is_mirror_symmetric(&ri) {
        return Ok(Sign::Zero);
    }
    let mut v = s.vectors();
    v.sort_by(|a, b| a.norm2().total_cmp(&b.norm2()));
    Ok(Sign::of(v[0].det(v[1])))
}

/// Sign of the lattice with obtuse superbase `(1,0), (x,y), (-1-x,-y)`.
pub fn sign_via_region(v2: Vec2) -> Result<Sign> {
    let (x, y) = (v2.x, v2.y);
    let e = EPS_BOUNDARY;
    let inside = x.is_finite()
        && y.is_finite()
        && x >= -1.0 - e
        && x <= e
        && y > 0.0
        && x * x + x + y * y >= -e;
    if !inside {
        return Err(Error::OutsideObt(x, y));
    }
    let half = x + 0.5;
    let c1 = x * x + y * y - 1.0;
    let c2 = x * x + 2.0 * x + y * y;
    let edges = [x, x + 1.0, x * x + x + y * y, half, c1, c2];
    if edges.iter().any(|v| v.abs() <= e) {
        return Ok(Sign::Zero);
    }
    let s = if half > 0.0 {
        if c1 > 0.0 || c2 < 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    } else if c2 > 0.0 {
        Sign::Negative
    } else if c1 > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    };
    Ok(s)
}

/// The point `v2 = (x, y)` after rotating and scaling `v1` to `(1, 0)`;
/// `v0` takes the place of `v2` when needed to get `y > 0`.
pub fn region_point(s: &Superbase) -> Vec2 {
    let n = s.v1.norm2();
    let p = Vec2::new(s.v1.dot(s.v2), s.v1.det(s.v2)) * (1.0 / n);
    if p.y > 0.0 {
        p
    } else {
        Vec2::new(s.v1.dot(s.v0), s.v1.det(s.v0)) * (1.0 / n)
    }
}

pub fn oriented_root_invariant(s: &Superbase) -> Result<OrientedRootInvariant> {
    Ok(OrientedRootInvariant {
        ri: root_invariant(s)?,
        sign: sign_of(s)?,
    })
}

pub fn size(ri: &RootInvariant) -> f64 {
    ri.r12 + ri.r01 + ri.r02
}

pub fn projected_invariant(ri: &RootInvariant) -> ProjectedInvariant {
    let sigma = size(ri);
    let x = (ri.r02 - ri.r01) / sigma;
    let y = 3.0 * ri.r12 / sigma;
    ProjectedInvariant {
        x: x.max(0.0),
        y: y.clamp(0.0, 1.0 - x.max(0.0)),
    }
}

pub fn oriented_projected_invariant(s: &Superbase) -> Result<OrientedProjectedInvariant> {
    let o = oriented_root_invariant(s)?;
    Ok(OrientedProjectedInvariant {
        pi: projected_invariant(&o.ri),
        sign: o.sign,
    })
}

/// Reduced basis up to isometry or up to rigid motion.
pub fn reduced_basis(s: &Superbase, mode: ReductionMode) -> Result<Basis> {
    if !s.is_obtuse() {
        return Err(Error::NotObtuse);
    }
    let eps = s.eps_zero();
    let mut v = s.vectors();
    v.sort_by(|a, b| a.norm2().total_cmp(&b.norm2()));
    let (a, b) = (v[0], v[1]);
    let (v1, v2) = match mode {
        ReductionMode::Isometry => (a, b),
        ReductionMode::Rigid => {
            let ab = a.dot(b);
            if a.det(b) < 0.0 {
                (a, -b)
            } else if (b.norm2() - a.norm2()).abs() <= eps && ab < -eps {
                (b, -a)
            } else if ab <= -0.5 * a.norm2() + eps {
                (a, a + b)
            } else {
                (a, b)
            }
        }
    };
    Basis::new(v1, v2)
}

pub fn metric_tensor(ri: &RootInvariant) -> MetricTensor {
    let [a, b, c] = ri.squares();
    MetricTensor {
        q11: a + b,
        q12: -a,
        q22: a + c,
    }
}
