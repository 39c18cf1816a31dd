//! Distances between lattices: root and projected metrics, their
//! orientation-aware versions, and superbase-level metrics.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{conorms, Superbase, Vec2};
use crate::invariants::{
    OrientedProjectedInvariant, OrientedRootInvariant, ProjectedInvariant, RootInvariant,
};
use crate::optimize::{golden_section, lp_minimize};

/// Minkowski parameter `q` in `[1, +inf]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minkowski(f64);

impl Minkowski {
    pub const ONE: Minkowski = Minkowski(1.0);
    pub const TWO: Minkowski = Minkowski(2.0);
    pub const INF: Minkowski = Minkowski(f64::INFINITY);

    pub fn new(q: f64) -> Result<Self> {
        if q >= 1.0 {
            Ok(Minkowski(q))
        } else {
            Err(Error::UnsupportedQ(q))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_inf(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_two(self) -> bool {
        self.0 == 2.0
    }

    /// `n^(1/q)`, which is 1 for `q = inf`.
    pub fn root(self, n: f64) -> f64 {
        if self.is_inf() {
            1.0
        } else {
            n.powf(1.0 / self.0)
        }
    }

    /// Dual exponent factor `n^(1 - 1/q)`, the dual norm of an all-ones vector.
    pub fn dual_root(self, n: f64) -> f64 {
        n / self.root(n)
    }

    pub fn norm(self, v: &[f64]) -> f64 {
        let m = v.iter().fold(0.0f64, |s, x| s.max(x.abs()));
        if self.is_inf() || m == 0.0 {
            return m;
        }
        let q = self.0;
        if q == 1.0 {
            return v.iter().map(|x| x.abs()).sum();
        }
        if q == 2.0 {
            return m * v.iter().map(|x| (x / m) * (x / m)).sum::<f64>().sqrt();
        }
        m * v
            .iter()
            .map(|x| (x.abs() / m).powf(q))
            .sum::<f64>()
            .powf(1.0 / q)
    }
}

impl fmt::Display for Minkowski {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Minkowski {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" => Ok(Minkowski::INF),
            t => t
                .parse::<f64>()
                .map_err(|_| Error::InvalidParams(format!("bad Minkowski parameter '{s}'")))
                .and_then(Minkowski::new),
        }
    }
}

/// `max{|a-b|, |c-d|, |a+b-c-d|/2}`, the least possible value of
/// `max{|a-x|+|x-b|, |c-x|+|x-d|}` over real `x`.
pub fn max_sum_moduli(a: f64, b: f64, c: f64, d: f64) -> f64 {
    (a - b)
        .abs()
        .max((c - d).abs())
        .max(0.5 * (a + b - c - d).abs())
}

fn diff<const N: usize>(a: [f64; N], b: [f64; N]) -> [f64; N] {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn root_metric(r: &RootInvariant, s: &RootInvariant, q: Minkowski) -> f64 {
    q.norm(&diff(r.as_array(), s.as_array()))
}

pub fn projected_metric(p: &ProjectedInvariant, r: &ProjectedInvariant, q: Minkowski) -> f64 {
    q.norm(&[p.x - r.x, p.y - r.y])
}

// The three boundary components of the triangular cone, `t = M (u, w)` with `0 <= u <= w`.
const ROOT_SIDES: [[[f64; 2]; 3]; 3] = [
    [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
    [[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
    [[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]],
];

// The three sides of the quotient triangle, `t = o + u d` with `0 <= u <= 1`.
const PROJECTED_SIDES: [([f64; 2], [f64; 2]); 3] = [
    ([0.0, 0.0], [1.0, 0.0]),
    ([0.0, 0.0], [0.0, 1.0]),
    ([0.0, 1.0], [1.0, -1.0]),
];

fn root_side_point(m: &[[f64; 2]; 3], u: f64, w: f64) -> [f64; 3] {
    std::array::from_fn(|i| m[i][0] * u + m[i][1] * w)
}

fn side_sum<const N: usize>(points: &[[f64; N]], t: [f64; N], q: Minkowski) -> f64 {
    points.iter().map(|p| q.norm(&diff(*p, t))).sum()
}

/// Infimum over mirror-symmetric root invariants `t` of `sum_j ||p_j - t||_q`.
pub fn root_boundary_infimum(points: &[[f64; 3]], q: Minkowski) -> f64 {
    ROOT_SIDES
        .iter()
        .map(|m| {
            if q.is_inf() {
                root_side_lp(m, points)
            } else {
                root_side_numeric(m, points, q)
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn root_side_lp(m: &[[f64; 2]; 3], points: &[[f64; 3]]) -> f64 {
    let k = points.len();
    let n = 2 + k;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (j, p) in points.iter().enumerate() {
        for i in 0..3 {
            for sgn in [1.0, -1.0] {
                let mut row = vec![0.0; n];
                row[0] = sgn * m[i][0];
                row[1] = sgn * m[i][1];
                row[2 + j] = -1.0;
                a.push(row);
                b.push(sgn * p[i]);
            }
        }
    }
    let mut row = vec![0.0; n];
    row[0] = -1.0;
    a.push(row);
    b.push(0.0);
    let mut row = vec![0.0; n];
    row[0] = 1.0;
    row[1] = -1.0;
    a.push(row);
    b.push(0.0);
    let mut c = vec![0.0; n];
    c[2..].iter_mut().for_each(|x| *x = 1.0);
    lp_minimize(&c, &a, &b).map_or(f64::INFINITY, |(v, _)| v)
}

fn root_side_numeric(m: &[[f64; 2]; 3], points: &[[f64; 3]], q: Minkowski) -> f64 {
    let top = points
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |s, v| s.max(*v));
    let hi = 2.0 * top + f64::MIN_POSITIVE;
    let tol = 1e-10 * hi;
    let inner = |w: f64| {
        golden_section(
            |u| side_sum(points, root_side_point(m, u, w), q),
            0.0,
            w,
            tol,
        )
        .1
    };
    golden_section(inner, 0.0, hi, tol).1
}

/// Infimum over points `t` on the sides of the quotient triangle of `sum_j ||p_j - t||_q`.
pub fn projected_boundary_infimum(points: &[[f64; 2]], q: Minkowski) -> f64 {
    PROJECTED_SIDES
        .iter()
        .map(|&(o, d)| {
            if q.is_inf() {
                projected_side_lp(o, d, points)
            } else {
                let at = |u: f64| [o[0] + u * d[0], o[1] + u * d[1]];
                golden_section(|u| side_sum(points, at(u), q), 0.0, 1.0, 1e-11).1
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn projected_side_lp(o: [f64; 2], d: [f64; 2], points: &[[f64; 2]]) -> f64 {
    let k = points.len();
    let n = 1 + k;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (j, p) in points.iter().enumerate() {
        for i in 0..2 {
            for sgn in [1.0, -1.0] {
                let mut row = vec![0.0; n];
                row[0] = sgn * d[i];
                row[1 + j] = -1.0;
                a.push(row);
                b.push(sgn * (p[i] - o[i]));
            }
        }
    }
    let mut row = vec![0.0; n];
    row[0] = -1.0;
    a.push(row);
    b.push(0.0);
    let mut row = vec![0.0; n];
    row[0] = 1.0;
    a.push(row);
    b.push(1.0);
    let mut c = vec![1.0; n];
    c[0] = 0.0;
    lp_minimize(&c, &a, &b).map_or(f64::INFINITY, |(v, _)| v)
}

/// Orientation-aware root metric.
///
/// Lattices with opposite signs are joined through the closest mirror-symmetric
/// lattice. For `q = 2` this is the distance to the nearest of the three
/// reflections of `b` in the walls of the cone; for `q = inf` an exact linear
/// program over each wall; for other `q` a nested golden-section search.
pub fn oriented_root_metric(
    a: &OrientedRootInvariant,
    b: &OrientedRootInvariant,
    q: Minkowski,
) -> f64 {
    if !a.sign.opposes(b.sign) {
        return root_metric(&a.ri, &b.ri, q);
    }
    let r = a.ri.as_array();
    let [s12, s01, s02] = b.ri.as_array();
    if q.is_two() {
        return [[-s12, s01, s02], [s01, s12, s02], [s12, s02, s01]]
            .iter()
            .map(|t| q.norm(&diff(r, *t)))
            .fold(f64::INFINITY, f64::min);
    }
    root_boundary_infimum(&[r, [s12, s01, s02]], q)
}

/// Orientation-aware projected metric, computed like [`oriented_root_metric`]
/// over the sides of the quotient triangle.
pub fn oriented_projected_metric(
    a: &OrientedProjectedInvariant,
    b: &OrientedProjectedInvariant,
    q: Minkowski,
) -> f64 {
    if !a.sign.opposes(b.sign) {
        return projected_metric(&a.pi, &b.pi, q);
    }
    let p = [a.pi.x, a.pi.y];
    let (x2, y2) = (b.pi.x, b.pi.y);
    if q.is_two() {
        return [[-x2, y2], [x2, -y2], [1.0 - y2, 1.0 - x2]]
            .iter()
            .map(|t| q.norm(&diff(p, *t)))
            .fold(f64::INFINITY, f64::min);
    }
    projected_boundary_infimum(&[p, [x2, y2]], q)
}

fn require_obtuse(s: &Superbase) -> Result<()> {
    if s.is_obtuse() {
        Ok(())
    } else {
        Err(Error::NotObtuse)
    }
}

const CYCLES: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
const PAIRS: [(usize, usize); 3] = [(1, 2), (0, 1), (0, 2)];

/// Minimum over cyclic relabelings of the largest conorm difference.
pub fn coform_cyclic_metric(s1: &Superbase, s2: &Superbase) -> Result<f64> {
    require_obtuse(s1)?;
    require_obtuse(s2)?;
    let (p, q) = (conorms(s1), conorms(s2));
    Ok(CYCLES
        .iter()
        .map(|z| {
            PAIRS
                .iter()
                .map(|&(i, j)| (p.get(i, j) - q.get(z[i], z[j])).abs())
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min))
}

const SIM_GRID: usize = 720;
const SIM_TOL_ANGLE: f64 = 1e-10;

fn sim_objective(u: &[Vec2; 3], v: &[Vec2; 3], z: &[usize; 3], reflect: bool, theta: f64) -> f64 {
    (0..3)
        .map(|i| {
            let w = if reflect { u[i].reflect() } else { u[i] };
            (w.rotate(theta) - v[z[i]]).norm()
        })
        .fold(0.0, f64::max)
}

/// Smallest `max_i |f(u_i) - v_i|` over rotations `f` (and reflections unless
/// `oriented`), also minimized over the cyclic relabelings of the second superbase.
pub fn superbase_isometry_metric(s1: &Superbase, s2: &Superbase, oriented: bool) -> Result<f64> {
    require_obtuse(s1)?;
    require_obtuse(s2)?;
    let (u, v) = (s1.vectors(), s2.vectors());
    let step = TAU / SIM_GRID as f64;
    let mut best = f64::INFINITY;
    let reflections: &[bool] = if oriented { &[false] } else { &[false, true] };
    for &reflect in reflections {
        for z in &CYCLES {
            let f = |t: f64| sim_objective(&u, &v, z, reflect, t);
            let vals: Vec<f64> = (0..SIM_GRID).map(|k| f(k as f64 * step)).collect();
            for k in 0..SIM_GRID {
                let prev = vals[(k + SIM_GRID - 1) % SIM_GRID];
                let next = vals[(k + 1) % SIM_GRID];
                best = best.min(vals[k]);
                if vals[k] <= prev && vals[k] <= next {
                    let t = k as f64 * step;
                    let (_, fx) = golden_section(f, t - step, t + step, SIM_TOL_ANGLE);
                    best = best.min(fx);
                }
            }
        }
    }
    Ok(best)
}

/// Superbases `B+(delta)`, `B-(delta)` of mirror-image lattices that approach
/// the rectangular lattice `a x b` as `delta -> 0`. Requires `0 <= 3 delta < a < b`.
pub fn discontinuity_pair(a: f64, b: f64, delta: f64) -> Result<(Superbase, Superbase)> {
    let ok =
        [a, b, delta].iter().all(|x| x.is_finite()) && 0.0 <= delta && 3.0 * delta < a && a < b;
    if !ok {
        return Err(Error::InvalidParams(format!(
            "need 0 <= 3*delta < a < b, got a={a}, b={b}, delta={delta}"
        )));
    }
    let v1 = Vec2::new(a, 0.0);
    let plus = Superbase::new(Vec2::new(delta - a, -b), v1, Vec2::new(-delta, b))?;
    let minus = Superbase::new(Vec2::new(-delta, -b), v1, Vec2::new(delta - a, b))?;
    Ok((plus, minus))
}

/// Lower bound `min{a^2/3, b^2 - a^2} / (2 sqrt(a^2 + b^2))` for the oriented
/// superbase metric between the pair of [`discontinuity_pair`].
pub fn discontinuity_lower_bound(a: f64, b: f64) -> f64 {
    (a * a / 3.0).min(b * b - a * a) / (2.0 * (a * a + b * b).sqrt())
}
