//! Complete continuous invariants of 2D lattices: reduction to obtuse
//! superbases, root and projected invariants, signs, metrics, chiralities,
//! inverse design and distance sequences.

pub mod chirality;
pub mod cli;
pub mod design;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod metrics;
pub mod neighbors;
pub mod optimize;

pub use chirality::{projected_chirality, root_chirality, PointGroup};
pub use error::{Error, Result};
pub use geometry::{reduce_to_obtuse, Basis, Superbase, Vec2};
pub use invariants::{
    oriented_projected_invariant, oriented_root_invariant, projected_invariant, root_invariant,
    sign_of, OrientedProjectedInvariant, OrientedRootInvariant, ProjectedInvariant, RootInvariant,
    Sign,
};
pub use metrics::Minkowski;
