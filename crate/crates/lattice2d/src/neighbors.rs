//! Voronoi vectors, the reduced sequence of distances (RSD) and brute-force
//! lattice enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{conorms, Basis, Superbase, Vec2, Vonorms};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VoronoiVector {
    pub v: Vec2,
    pub strict: bool,
}

/// The partial sums `+-v0, +-v1, +-v2` of an obtuse superbase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoronoiVectorSet {
    pub vectors: Vec<VoronoiVector>,
}

impl VoronoiVectorSet {
    pub fn all_strict(&self) -> bool {
        self.vectors.iter().all(|v| v.strict)
    }
}

/// Voronoi vectors of the lattice of an obtuse superbase.
///
/// `v_i` shares its 2-lattice class with `v_j - v_k`, and
/// `|v_j - v_k|^2 - |v_i|^2 = 4 p_jk`, so `+-v_i` are strict exactly when the
/// conorm of the other two vectors is positive.
pub fn voronoi_vectors(s: &Superbase) -> Result<VoronoiVectorSet> {
    if !s.is_obtuse() {
        return Err(Error::NotObtuse);
    }
    let p = conorms(s);
    let eps = s.eps_zero();
    let v = s.vectors();
    let opposite = [p.p12, p.p02, p.p01];
    let vectors = (0..3)
        .flat_map(|i| {
            let strict = opposite[i] > eps;
            [
                VoronoiVector { v: v[i], strict },
                VoronoiVector { v: -v[i], strict },
            ]
        })
        .collect();
    Ok(VoronoiVectorSet { vectors })
}

/// Nondecreasing positive distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceSequence {
    pub distances: Vec<f64>,
}

impl DistanceSequence {
    pub fn new(distances: Vec<f64>) -> Result<Self> {
        let ok = distances.first().is_none_or(|&d| d > 0.0)
            && distances.windows(2).all(|w| w[0] <= w[1])
            && distances.iter().all(|d| d.is_finite());
        if ok {
            Ok(DistanceSequence { distances })
        } else {
            Err(Error::InvalidParams(
                "distances must be positive and nondecreasing".into(),
            ))
        }
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }
}

fn representative(c1: i64, c2: i64) -> bool {
    c1 > 0 || (c1 == 0 && c2 > 0)
}

/// Squared lengths of all lattice points `c1 v1 + c2 v2` with `|c1| <= n1`,
/// `|c2| <= n2`, one per `+-` pair.
fn enumerate(b: &Basis, n1: i64, n2: i64) -> Vec<f64> {
    let mut out = Vec::with_capacity(((2 * n1 + 1) * (2 * n2 + 1) / 2) as usize);
    for c1 in 0..=n1 {
        for c2 in -n2..=n2 {
            if representative(c1, c2) {
                out.push(b.point(c1, c2).norm2());
            }
        }
    }
    out
}

/// First `k` distances from the origin to lattice points, one per `+-` pair.
///
/// Every point within radius `R` has `|c1| <= R |v2| / |det|` and
/// `|c2| <= R |v1| / |det|`, so the enumeration inside the disk is complete;
/// `R` doubles until the disk holds `k` pairs.
pub fn rsd(s: &Superbase, k: usize) -> DistanceSequence {
    let b = s.basis();
    let det = b.det().abs();
    let (l1, l2) = (b.v1.norm(), b.v2.norm());
    let mut radius = l1.min(l2) * (k as f64).sqrt().ceil().max(1.0);
    loop {
        let n1 = (radius * l2 / det).ceil() as i64 + 1;
        let n2 = (radius * l1 / det).ceil() as i64 + 1;
        let mut d2: Vec<f64> = enumerate(&b, n1, n2)
            .into_iter()
            .filter(|&d| d <= radius * radius)
            .collect();
        if d2.len() >= k {
            d2.sort_by(f64::total_cmp);
            d2.truncate(k);
            return DistanceSequence {
                distances: d2.into_iter().map(f64::sqrt).collect(),
            };
        }
        radius *= 2.0;
    }
}

/// Independent oracle: the `k`-th smallest distance over `|c_i| <= r`, doubling
/// `r` until the value is below `(r + 1) |det| / max |v_i|`, the least length
/// of any point outside the box.
pub fn kth_distance_oracle(b: &Basis, k: usize) -> f64 {
    assert!(k >= 1, "k must be positive");
    let floor = b.det().abs() / b.v1.norm().max(b.v2.norm());
    let mut r = k as i64;
    loop {
        let mut d = enumerate(b, r, r);
        d.sort_by(f64::total_cmp);
        let kth = d[k - 1].sqrt();
        if kth <= (r + 1) as f64 * floor {
            return kth;
        }
        r *= 2;
    }
}

const AMBIGUITY_REL: f64 = 1e-6;

/// Recovers the vonorms `(|v0|^2, |v1|^2, |v2|^2)` with `|v1| <= |v2| <= |v0|`
/// from a prefix of an RSD.
///
/// One copy of every multiple `m d1` is removed; the next distance is `|v2|`.
/// Removing one copy of every multiple of `|v2|` leaves `|v0|` in front.
/// Values closer than `1e-6 d1` but not within the `1e-9 d1` matching tolerance
/// are reported as ambiguous.
pub fn extract_vonorms_from_rsd(d: &DistanceSequence) -> Result<Vonorms> {
    let first = *d.distances.first().ok_or(Error::InsufficientLength)?;
    let tol = 1e-9 * first;
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for &x in &d.distances {
        match groups.last_mut() {
            Some((v, n)) if (x - *v).abs() <= tol * (x / first).max(1.0) => *n += 1,
            _ => groups.push((x, 1)),
        }
    }
    // The final group may be cut short, so it cannot be trusted.
    let usable = groups.len() - 1;

    let remove_multiples = |groups: &mut [(f64, usize)], base: f64| {
        for g in groups.iter_mut() {
            let m = (g.0 / base).round();
            if m >= 1.0 && (g.0 - m * base).abs() <= tol * m && g.1 > 0 {
                g.1 -= 1;
            }
        }
    };
    let next_remaining = |groups: &[(f64, usize)]| groups[..usable].iter().position(|g| g.1 > 0);

    let d1 = groups[0].0;
    remove_multiples(&mut groups, d1);
    let i2 = next_remaining(&groups).ok_or(Error::InsufficientLength)?;
    let d2 = groups[i2].0;
    remove_multiples(&mut groups, d2);
    let i3 = next_remaining(&groups).ok_or(Error::InsufficientLength)?;
    let d3 = groups[i3].0;

    let near = groups[..=i3]
        .windows(2)
        .any(|w| w[1].0 - w[0].0 <= AMBIGUITY_REL * first);
    if near {
        return Err(Error::AmbiguousSequence);
    }
    Ok(Vonorms {
        vn0: d3 * d3,
        vn1: d1 * d1,
        vn2: d2 * d2,
    })
}
