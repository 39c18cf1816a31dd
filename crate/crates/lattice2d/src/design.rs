//! Inverse design: root invariants and explicit superbases from projected
//! invariants and size, plus the linear structure on root invariants.

use crate::error::{Error, Result};
use crate::geometry::{Superbase, Vec2};
use crate::invariants::{is_mirror_symmetric, ProjectedInvariant, RootInvariant, Sign};

fn check_pi(pi: &ProjectedInvariant) -> Result<()> {
    ProjectedInvariant::new(pi.x, pi.y).map(|_| ())
}

/// The root invariant of size `sigma` projecting to `pi`.
pub fn ri_from_pi(pi: &ProjectedInvariant, sigma: f64) -> Result<RootInvariant> {
    check_pi(pi)?;
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "size must be positive, got {sigma}"
        )));
    }
    let r = pi.unit_root_invariant().map(|r| (sigma * r).max(0.0));
    RootInvariant::from_unsorted(r)
}

/// Area of a primitive cell of the lattice with root invariant `ri`.
pub fn cell_area(ri: &RootInvariant) -> f64 {
    let [a, b, c] = ri.squares();
    (a * b + a * c + b * c).sqrt()
}

/// Obtuse superbase with conorms `p12 = r12^2`, `p01 = r01^2`, `p02 = r02^2`.
///
/// `v1` lies on the positive x-axis and `v2` in the upper half-plane unless
/// `sgn` is negative.
pub fn superbase_from_ri(ri: &RootInvariant, sgn: Sign) -> Result<Superbase> {
    if (sgn == Sign::Zero) != is_mirror_symmetric(ri) {
        return Err(Error::InconsistentSign);
    }
    let [p12, p01, _] = ri.squares();
    let a = (p12 + p01).sqrt();
    let y = cell_area(ri) / a;
    let v1 = Vec2::new(a, 0.0);
    let v2 = Vec2::new(-p12 / a, if sgn == Sign::Negative { -y } else { y });
    Superbase::new(-(v1 + v2), v1, v2)
}

/// Angle between `v1` and `v2` of the superbase reconstructed from `pi`.
pub fn reconstruction_angle_from_pi(pi: &ProjectedInvariant) -> Result<f64> {
    check_pi(pi)?;
    let (x, y) = (pi.x, pi.y);
    let u = 9.0 * x * x + 5.0 * y * y - 6.0 * y + 9.0;
    let den = (u * u - 36.0 * x * x * (3.0 - y) * (3.0 - y)).sqrt();
    Ok((-4.0 * y * y / den).clamp(-1.0, 1.0).acos())
}

/// Convex combination `t*a + (1-t)*b`.
pub fn lattice_mix(a: &RootInvariant, b: &RootInvariant, t: f64) -> Result<RootInvariant> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParams(format!(
            "mixing weight {t} outside [0, 1]"
        )));
    }
    let (a, b) = (a.as_array(), b.as_array());
    RootInvariant::from_unsorted([0, 1, 2].map(|i| t * a[i] + (1.0 - t) * b[i]))
}

pub fn ri_dot(a: &RootInvariant, b: &RootInvariant) -> f64 {
    a.r12 * b.r12 + a.r01 * b.r01 + a.r02 * b.r02
}
