//! Scaled relative graphs of real matrices.
//!
//! The scaled relative graph (SRG) of `A` collects the points
//! `z_A(x) = |Ax| / |x| * exp(i * angle(Ax, x))` over nonzero `x`, together
//! with their conjugates. This crate provides:
//!
//! * [`halfplane`]: hyperbolic geometry in the upper half-plane (geodesic
//!   arcs, disks and arc-edge convex polygons);
//! * [`linalg`]: a dense real matrix kernel with an eigenvalue solver and
//!   orthogonal-similarity utilities;
//! * [`zmap`] and [`sampling`]: the point map and sample clouds;
//! * [`regions`]: exact SRG regions for 2x2, normal, symmetric and
//!   block-diagonal matrices, with membership tests;
//! * [`io`]: matrix, region and cloud file formats.

pub mod error;
pub mod halfplane;
pub mod io;
pub mod linalg;
pub mod regions;
pub mod rng;
pub mod sampling;
pub mod tolerance;
pub mod zmap;

pub use error::{Result, SrgError};
pub use halfplane::{
    arc_min, arc_point, arc_polygon, disk_contains, geodesic_through, klein_inverse, klein_map,
    polygon_boundary, polygon_contains, ArcPolygon, HalfPlanePoint, KleinPoint, MinArc,
    PolygonKind,
};
pub use linalg::{
    assemble_block_diag, build_normal_matrix, eigenvalues, is_normal, random_orthogonal,
    BlockSpec, RealMatrix, Spectrum,
};
pub use regions::{
    region_contains, spectrum_inclusion_report, srg_2x2, srg_blockdiag_contains, srg_normal,
    srg_symmetric, verify_cloud_in_region, SrgRegion,
};
pub use sampling::{span_arc_sample, srg_sample, SampleCloud, Strategy};
pub use zmap::{angle_between, z_map};
