//! Distances from a lattice to the nearest lattice with point group at least
//! D2 (mirror-symmetric), D4 (square) or D6 (hexagonal).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::invariants::{
    OrientedProjectedInvariant, OrientedRootInvariant, ProjectedInvariant, RootInvariant,
};
use crate::metrics::Minkowski;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointGroup {
    D2,
    D4,
    D6,
}

impl PointGroup {
    pub const ALL: [PointGroup; 3] = [PointGroup::D2, PointGroup::D4, PointGroup::D6];
}

impl fmt::Display for PointGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointGroup::D2 => "D2",
            PointGroup::D4 => "D4",
            PointGroup::D6 => "D6",
        };
        f.write_str(s)
    }
}

impl FromStr for PointGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "D2" => Ok(PointGroup::D2),
            "D4" => Ok(PointGroup::D4),
            "D6" => Ok(PointGroup::D6),
            _ => Err(Error::InvalidParams(format!("unknown point group '{s}'"))),
        }
    }
}

/// Root chirality `RC_q[G]`: the `M_q` distance from `ri` to the nearest root
/// invariant with point group at least `g`.
///
/// D2 is available for every `q`; D4 and D6 for `q` in `{2, inf}`.
pub fn root_chirality(ri: &RootInvariant, g: PointGroup, q: Minkowski) -> Result<f64> {
    let [r12, r01, r02] = ri.as_array();
    match g {
        PointGroup::D2 => {
            let k = q.dual_root(2.0);
            Ok(r12.min((r01 - r12) / k).min((r02 - r01) / k))
        }
        PointGroup::D4 if q.is_two() => {
            let h = 0.5 * (r02 - r01);
            Ok((r12 * r12 + 2.0 * h * h).sqrt())
        }
        PointGroup::D4 if q.is_inf() => Ok(r12.max(0.5 * (r02 - r01))),
        PointGroup::D6 if q.is_two() => {
            let s = r12 * r12 + r01 * r01 + r02 * r02 - r12 * r01 - r12 * r02 - r01 * r02;
            Ok((2.0 / 3.0 * s).max(0.0).sqrt())
        }
        PointGroup::D6 if q.is_inf() => Ok(0.5 * (r02 - r12)),
        _ => Err(Error::UnsupportedQ(q.value())),
    }
}

/// Projected chirality `PC_q[G]` in the quotient triangle, for every `q`.
pub fn projected_chirality(pi: &ProjectedInvariant, g: PointGroup, q: Minkowski) -> Result<f64> {
    let (x, y) = (pi.x, pi.y);
    Ok(match g {
        PointGroup::D2 => x.min(y).min((1.0 - x - y) / q.dual_root(2.0)).max(0.0),
        PointGroup::D4 => q.norm(&[x, y]),
        PointGroup::D6 => q.norm(&[x, 1.0 - y]),
    })
}

/// `sign * RC_q[G]`, invariant under rigid motion.
pub fn signed_root_chirality(
    o: &OrientedRootInvariant,
    g: PointGroup,
    q: Minkowski,
) -> Result<f64> {
    Ok(o.sign.as_f64() * root_chirality(&o.ri, g, q)?)
}

/// `sign * PC_q[G]`, invariant under rigid motion.
pub fn signed_projected_chirality(
    o: &OrientedProjectedInvariant,
    g: PointGroup,
    q: Minkowski,
) -> Result<f64> {
    Ok(o.sign.as_f64() * projected_chirality(&o.pi, g, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::Sign;
    use crate::metrics::{projected_boundary_infimum, root_boundary_infimum};

    fn ri(a: f64, b: f64, c: f64) -> RootInvariant {
        RootInvariant::new(a, b, c).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn root_chirality_examples() {
        let linf = ri(1.0, 4.0, 7.0);
        assert!(close(
            root_chirality(&linf, PointGroup::D2, Minkowski::TWO).unwrap(),
            1.0
        ));
        let d6 = root_chirality(&linf, PointGroup::D6, Minkowski::TWO).unwrap();
        assert!(close(d6, 3.0 * 2f64.sqrt()));
        assert!(close(
            root_chirality(&linf, PointGroup::D6, Minkowski::INF).unwrap(),
            3.0
        ));
        assert!(close(
            root_chirality(&linf, PointGroup::D2, Minkowski::INF).unwrap(),
            1.0
        ));
        assert!(close(
            root_chirality(&linf, PointGroup::D4, Minkowski::INF).unwrap(),
            1.5
        ));
        let d4 = root_chirality(&linf, PointGroup::D4, Minkowski::TWO).unwrap();
        assert!(close(d4, 5.5f64.sqrt()));
        let q3 = Minkowski::new(3.0).unwrap();
        assert_eq!(
            root_chirality(&linf, PointGroup::D4, q3),
            Err(Error::UnsupportedQ(3.0))
        );
    }

    // Nearest square lattice (0, s, s) found by scanning s.
    #[test]
    fn square_chirality_matches_scan() {
        let r = ri(0.7, 1.9, 4.4);
        for q in [Minkowski::TWO, Minkowski::INF] {
            let scan = (0..=200_000)
                .map(|i| i as f64 * 5e-5)
                .map(|s| q.norm(&[r.r12, r.r01 - s, r.r02 - s]))
                .fold(f64::INFINITY, f64::min);
            let c = root_chirality(&r, PointGroup::D4, q).unwrap();
            assert!((c - scan).abs() < 1e-6, "{q}: {c} vs {scan}");
        }
    }

    #[test]
    fn mirror_chirality_matches_wall_minimizer() {
        let r = ri(0.7, 1.9, 4.4);
        for q in [1.0, 1.5, 2.0, 3.0, 7.0] {
            let q = Minkowski::new(q).unwrap();
            let numeric = root_boundary_infimum(&[r.as_array()], q);
            let c = root_chirality(&r, PointGroup::D2, q).unwrap();
            assert!((c - numeric).abs() < 1e-8, "{q}: {c} vs {numeric}");
        }
        let p = ProjectedInvariant::new(0.31, 0.42).unwrap();
        for q in [1.0, 2.0, 3.0, f64::INFINITY] {
            let q = Minkowski::new(q).unwrap();
            let numeric = projected_boundary_infimum(&[[p.x, p.y]], q);
            let c = projected_chirality(&p, PointGroup::D2, q).unwrap();
            assert!((c - numeric).abs() < 1e-8, "{q}: {c} vs {numeric}");
        }
    }

    #[test]
    fn projected_chirality_examples() {
        let linf = ProjectedInvariant::new(0.25, 0.25).unwrap();
        let d4 = projected_chirality(&linf, PointGroup::D4, Minkowski::TWO).unwrap();
        assert!(close(d4, 2f64.sqrt() / 4.0));
        let d6 = projected_chirality(&linf, PointGroup::D6, Minkowski::INF).unwrap();
        assert!(close(d6, 0.75));
        let c = 1.0 / (2.0 + 2f64.sqrt());
        let l2 = ProjectedInvariant::new(c, c).unwrap();
        let d2 = projected_chirality(&l2, PointGroup::D2, Minkowski::TWO).unwrap();
        assert!(close(d2, c));
        let d2 = projected_chirality(&l2, PointGroup::D2, Minkowski::INF).unwrap();
        assert!(close(d2, 0.5 * (2f64.sqrt() - 1.0)));
    }

    #[test]
    fn signed_values() {
        let plus = OrientedRootInvariant::new(ri(1.0, 4.0, 7.0), Sign::Positive).unwrap();
        let c = signed_root_chirality(&plus, PointGroup::D2, Minkowski::INF).unwrap();
        assert!(close(c, 1.0));
        let c = signed_root_chirality(&plus.mirror(), PointGroup::D2, Minkowski::INF).unwrap();
        assert!(close(c, -1.0));
        let rect = OrientedRootInvariant::new(ri(0.0, 1.0, 3.0), Sign::Zero).unwrap();
        assert_eq!(
            signed_root_chirality(&rect, PointGroup::D2, Minkowski::TWO).unwrap(),
            0.0
        );
        let p = OrientedProjectedInvariant::new(
            ProjectedInvariant::new(0.25, 0.25).unwrap(),
            Sign::Negative,
        )
        .unwrap();
        let c = signed_projected_chirality(&p, PointGroup::D2, Minkowski::INF).unwrap();
        assert!(close(c, -0.25));
    }

    #[test]
    fn parse_groups() {
        assert_eq!("d4".parse::<PointGroup>().unwrap(), PointGroup::D4);
        assert!("D3".parse::<PointGroup>().is_err());
        assert_eq!(PointGroup::D6.to_string(), "D6");
    }
}
