//! Tolerances shared by the geometry kernel and the region tests.
//!
//! All geometric tolerances are relative to
//! `scale = max(1, max |z_i|)` of the points involved, except the
//! Klein-model tests, whose coordinates already live in the unit disk.

/// Exactness tolerance: coincidence, vertical-line detection, hull
/// orientation, disk boundaries.
pub const EXACT: f64 = 1e-12;

/// Membership tolerance for point-location tests.
pub const MEMBERSHIP: f64 = 1e-10;

/// Relative gap under which two eigenvalues count as one.
pub const EIGEN_CLUSTER: f64 = 1e-8;

/// Default relative tolerance for the normality and symmetry checks.
pub const STRUCTURE: f64 = 1e-9;

/// Relative tolerance on the orthogonality conditions of a span arc.
pub const SPAN_ORTHOGONALITY: f64 = 1e-9;

/// The two geometry knobs, overridable per call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub exact: f64,
    pub membership: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            exact: EXACT,
            membership: MEMBERSHIP,
        }
    }
}
