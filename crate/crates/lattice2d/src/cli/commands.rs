//! The computations behind each subcommand, separated from argument parsing
//! and output so they can be called directly.

use rayon::prelude::*;

use crate::design::{cell_area, reconstruction_angle_from_pi, ri_from_pi, superbase_from_ri};
use crate::error::{Error, Result};
use crate::geometry::{reduce_to_obtuse, Basis, Superbase};
use crate::invariants::{
    metric_tensor, oriented_projected_invariant, oriented_root_invariant, projected_invariant,
    reduced_basis, root_invariant, size, MetricTensor, OrientedProjectedInvariant,
    OrientedRootInvariant, ProjectedInvariant, ReductionMode, RootInvariant, Sign,
};
use crate::metrics::{
    coform_cyclic_metric, discontinuity_lower_bound, discontinuity_pair, oriented_projected_metric,
    oriented_root_metric, projected_metric, root_metric, superbase_isometry_metric, Minkowski,
};
use crate::neighbors::{extract_vonorms_from_rsd, rsd, DistanceSequence};

use super::io::LatticeRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EquivalenceMode {
    Isometry,
    Rigid,
    Similarity,
    SimilarityOriented,
}

impl EquivalenceMode {
    pub fn reduction(self) -> ReductionMode {
        match self {
            EquivalenceMode::Isometry | EquivalenceMode::Similarity => ReductionMode::Isometry,
            EquivalenceMode::Rigid | EquivalenceMode::SimilarityOriented => ReductionMode::Rigid,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub superbase: Superbase,
    pub ri: RootInvariant,
    pub sign: Sign,
    pub size: f64,
    pub pi: ProjectedInvariant,
    pub pi_oriented: OrientedProjectedInvariant,
    pub metric_tensor: MetricTensor,
    pub cell_area: f64,
}

pub fn invariant_report(b: &Basis) -> Result<InvariantReport> {
    let s = reduce_to_obtuse(b)?;
    let ri = root_invariant(&s)?;
    let ori = oriented_root_invariant(&s)?;
    Ok(InvariantReport {
        superbase: s,
        ri,
        sign: ori.sign,
        size: size(&ri),
        pi: projected_invariant(&ri),
        pi_oriented: oriented_projected_invariant(&s)?,
        metric_tensor: metric_tensor(&ri),
        cell_area: cell_area(&ri),
    })
}

fn oriented_invariants(b: &Basis) -> Result<(OrientedRootInvariant, OrientedProjectedInvariant)> {
    let s = reduce_to_obtuse(b)?;
    Ok((
        oriented_root_invariant(&s)?,
        oriented_projected_invariant(&s)?,
    ))
}

/// RM_q, RM_q°, PM_q or PM_q° between two lattices.
pub fn distance(a: &Basis, b: &Basis, mode: EquivalenceMode, q: Minkowski) -> Result<f64> {
    let (ra, pa) = oriented_invariants(a)?;
    let (rb, pb) = oriented_invariants(b)?;
    Ok(match mode {
        EquivalenceMode::Isometry => root_metric(&ra.ri, &rb.ri, q),
        EquivalenceMode::Rigid => oriented_root_metric(&ra, &rb, q),
        EquivalenceMode::Similarity => projected_metric(&pa.pi, &pb.pi, q),
        EquivalenceMode::SimilarityOriented => oriented_projected_metric(&pa, &pb, q),
    })
}

/// Symmetric distance matrix in input order, cells evaluated in parallel.
pub fn distance_matrix(
    records: &[LatticeRecord],
    mode: EquivalenceMode,
    q: Minkowski,
) -> Result<Vec<Vec<f64>>> {
    let bases = records
        .iter()
        .map(LatticeRecord::to_basis)
        .collect::<Result<Vec<_>>>()?;
    let n = bases.len();
    let upper = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| distance(&bases[i], &bases[j], mode, q))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in upper.into_iter().enumerate() {
        for (off, d) in row.into_iter().enumerate() {
            let j = i + 1 + off;
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    Ok(m)
}

pub const DEFORMATION_START: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, 1.0]];
pub const DEFORMATION_END: [[f64; 2]; 2] = [[1.0, 0.0], [1.0, 1.0]];

#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub t: f64,
    pub ri: RootInvariant,
    pub pi: ProjectedInvariant,
    pub sign: Sign,
    pub reduced: Basis,
}

fn lerp(a: [[f64; 2]; 2], b: [[f64; 2]; 2], t: f64) -> [[f64; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| (1.0 - t) * a[i][j] + t * b[i][j]))
}

/// Samples the basis path `(1-t) start + t end` at `samples` equally spaced `t`.
pub fn path_trace(
    start: [[f64; 2]; 2],
    end: [[f64; 2]; 2],
    samples: usize,
) -> Result<Vec<PathSample>> {
    if samples < 2 {
        return Err(Error::InvalidParams(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    (0..samples)
        .map(|i| {
            let t = i as f64 / (samples - 1) as f64;
            let b = Basis::from_rows(lerp(start, end, t)).map_err(|e| match e {
                Error::DegenerateBasis => Error::DegeneratePath(t),
                e => e,
            })?;
            let s = reduce_to_obtuse(&b)?;
            let o = oriented_root_invariant(&s)?;
            Ok(PathSample {
                t,
                ri: o.ri,
                pi: projected_invariant(&o.ri),
                sign: o.sign,
                reduced: reduced_basis(&s, ReductionMode::Rigid)?.standard_pose(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscontinuityRow {
    pub delta: f64,
    pub rm_inf: f64,
    pub rm_bound: f64,
    pub cm_inf: f64,
    pub sim_inf: f64,
    pub sim_lower_bound: f64,
}

/// For each `delta`, compares the mirror-image pair `B+(delta)`, `B-(delta)`
/// by RM_inf°, by the coform metric CM_inf and by the oriented superbase metric.
pub fn discontinuity_table(a: f64, b: f64, deltas: &[f64]) -> Result<Vec<DiscontinuityRow>> {
    deltas
        .iter()
        .map(|&delta| {
            let (plus, minus) = discontinuity_pair(a, b, delta)?;
            let rm_inf = oriented_root_metric(
                &oriented_root_invariant(&plus)?,
                &oriented_root_invariant(&minus)?,
                Minkowski::INF,
            );
            Ok(DiscontinuityRow {
                delta,
                rm_inf,
                rm_bound: 2.0 * delta * a,
                cm_inf: coform_cyclic_metric(&plus, &minus)?,
                sim_inf: superbase_isometry_metric(&plus, &minus, true)?,
                sim_lower_bound: discontinuity_lower_bound(a, b),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    pub ri: RootInvariant,
    pub superbase: Superbase,
    pub angle: f64,
}

/// Lattice with projected invariant `(x, y)`, size `sigma` and the given sign.
pub fn design(x: f64, y: f64, sigma: f64, sign: i64) -> Result<Design> {
    let pi = ProjectedInvariant::new(x, y)?;
    let sign = Sign::from_int(sign)?;
    let ri = ri_from_pi(&pi, sigma)?;
    Ok(Design {
        ri,
        superbase: superbase_from_ri(&ri, sign)?,
        angle: reconstruction_angle_from_pi(&pi)?,
    })
}

pub fn distances(b: &Basis, k: usize) -> Result<(DistanceSequence, Result<[f64; 3]>)> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    let s = reduce_to_obtuse(b)?;
    let d = rsd(&s, k);
    let vn = extract_vonorms_from_rsd(&d).map(|v| v.sorted());
    Ok((d, vn))
}

pub fn reduce(b: &Basis, mode: EquivalenceMode) -> Result<(Superbase, Basis)> {
    let s = reduce_to_obtuse(b)?;
    let r = reduced_basis(&s, mode.reduction())?;
    Ok((s, r))
}
