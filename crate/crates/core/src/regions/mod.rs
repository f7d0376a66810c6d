//! Exact SRG regions and membership.
//!
//! Each exact constructor returns a region describing `G+(A)`, the part
//! of the SRG in the closed upper half-plane. The full SRG is its union
//! with the mirror image.

mod blockdiag;
mod exact;
mod spectrum;

pub use blockdiag::{srg_blockdiag_contains, srg_blockdiag_exact, BlockDiagVerdict};
pub use exact::{distinct_real_eigenvalues, srg_2x2, srg_normal, srg_symmetric, upper_spectrum};
pub use spectrum::{spectrum_inclusion_report, InclusionStatus, SpectrumEntry, SpectrumReport};

use num_complex::Complex64;

use crate::error::{Result, SrgError};
use crate::halfplane::{scale_of, ArcPolygon, Disk, HalfPlanePoint};
use crate::linalg::RealMatrix;
use crate::sampling::SampleCloud;
use crate::tolerance::{EIGEN_CLUSTER, MEMBERSHIP};

/// `G+` of a 2x2 matrix: the parts in the closed upper half-plane of the
/// circles of radius `radius` centered at `center_re +/- i center_im`.
///
/// Only the upper center is stored; the lower circle still contributes
/// its arc above the real axis whenever `radius > center_im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoCircles {
    pub center_re: f64,
    pub center_im: f64,
    pub radius: f64,
}

impl TwoCircles {
    pub fn new(center_re: f64, center_im: f64, radius: f64) -> Result<Self> {
        let finite = center_re.is_finite() && center_im.is_finite() && radius.is_finite();
        if !finite || center_im < 0.0 || radius < 0.0 {
            return Err(SrgError::InvalidArgument(format!(
                "two circles need a finite center with non-negative imaginary part \
                 and a finite non-negative radius, got ({center_re}, {center_im}), {radius}"
            )));
        }
        Ok(Self {
            center_re,
            center_im,
            radius,
        })
    }

    pub fn scale(&self) -> f64 {
        1f64.max(self.center_re.hypot(self.center_im) + self.radius)
    }

    /// Distance from `w` to the nearer of the two circles.
    pub fn distance_to(&self, w: HalfPlanePoint) -> f64 {
        [self.center_im, -self.center_im]
            .into_iter()
            .map(|c| ((w.re() - self.center_re).hypot(w.im() - c) - self.radius).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// The point at angle `t` on the upper (`upper = true`) or lower
    /// circle, if it lies in the closed upper half-plane.
    pub fn point_at(&self, t: f64, upper: bool) -> Option<HalfPlanePoint> {
        let c = if upper { self.center_im } else { -self.center_im };
        let (s, co) = t.sin_cos();
        let im = c + self.radius * s;
        (im >= 0.0).then(|| HalfPlanePoint::clamped(self.center_re + self.radius * co, im))
    }
}

/// `Disk(l_1, l_m)` minus the open disks `Disk°(l_i, l_{i+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskDifference {
    outer: (f64, f64),
    removed: Vec<(f64, f64)>,
}

impl DiskDifference {
    /// Builds the region from distinct eigenvalues sorted ascending.
    pub fn from_sorted(values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(SrgError::InvalidArgument(
                "a disk difference needs at least two distinct values".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SrgError::InvalidArgument(
                "disk difference values must be finite and strictly increasing".into(),
            ));
        }
        Ok(Self {
            outer: (values[0], values[values.len() - 1]),
            removed: values.windows(2).map(|w| (w[0], w[1])).collect(),
        })
    }

    /// Checks that `removed` tiles `outer` with consecutive pairs.
    pub fn new(outer: (f64, f64), removed: Vec<(f64, f64)>) -> Result<Self> {
        let mut values = vec![outer.0];
        for (i, &(a, b)) in removed.iter().enumerate() {
            if a != values[values.len() - 1] {
                return Err(SrgError::InvalidArgument(format!(
                    "removed pair {i} does not start where the previous one ended"
                )));
            }
            values.push(b);
        }
        if values[values.len() - 1] != outer.1 {
            return Err(SrgError::InvalidArgument(
                "removed pairs do not end at the outer maximum".into(),
            ));
        }
        Self::from_sorted(&values)
    }

    pub fn outer(&self) -> (f64, f64) {
        self.outer
    }

    pub fn removed(&self) -> &[(f64, f64)] {
        &self.removed
    }

    /// The distinct eigenvalues `l_1 < ... < l_m`.
    pub fn values(&self) -> Vec<f64> {
        std::iter::once(self.outer.0)
            .chain(self.removed.iter().map(|r| r.1))
            .collect()
    }

    pub fn scale(&self) -> f64 {
        1f64.max(self.outer.0.abs()).max(self.outer.1.abs())
    }

    fn outer_disk(&self) -> Disk {
        Disk::over_interval(self.outer.0, self.outer.1).expect("validated interval")
    }

    fn removed_disks(&self) -> impl Iterator<Item = Disk> + '_ {
        self.removed
            .iter()
            .map(|&(a, b)| Disk::over_interval(a, b).expect("validated interval"))
    }

    pub fn contains(&self, w: HalfPlanePoint) -> bool {
        let z = w.to_complex();
        self.outer_disk().contains(z, true) && !self.removed_disks().any(|d| d.contains(z, false))
    }

    /// Largest depth of `w` inside any removed open disk; zero or negative
    /// when it lies in none.
    pub fn penetration(&self, w: HalfPlanePoint) -> f64 {
        let z = w.to_complex();
        self.removed_disks()
            .map(|d| -d.signed_distance(z))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn defect(&self, w: HalfPlanePoint) -> f64 {
        self.outer_disk()
            .signed_distance(w.to_complex())
            .max(self.penetration(w))
            .max(0.0)
    }
}

/// A representation of `G+(A)`.
#[derive(Debug, Clone, PartialEq)]
pub enum SrgRegion {
    SinglePoint(HalfPlanePoint),
    TwoCircles(TwoCircles),
    Polygon(ArcPolygon),
    DiskDiff(DiskDifference),
    /// An empirical region: points within `delta` of some sample.
    Cloud { cloud: SampleCloud, delta: f64 },
}

impl From<ArcPolygon> for SrgRegion {
    fn from(p: ArcPolygon) -> Self {
        SrgRegion::Polygon(p)
    }
}

impl From<TwoCircles> for SrgRegion {
    fn from(c: TwoCircles) -> Self {
        SrgRegion::TwoCircles(c)
    }
}

impl From<DiskDifference> for SrgRegion {
    fn from(d: DiskDifference) -> Self {
        SrgRegion::DiskDiff(d)
    }
}

impl SrgRegion {
    /// Cloud region with the default radius `1e-3 * |A|_F`.
    pub fn cloud(cloud: SampleCloud, a: &RealMatrix) -> Self {
        SrgRegion::Cloud {
            cloud,
            delta: default_cloud_delta(a),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SrgRegion::SinglePoint(_) => "point",
            SrgRegion::TwoCircles(_) => "two_circles",
            SrgRegion::Polygon(_) => "polygon",
            SrgRegion::DiskDiff(_) => "disk_diff",
            SrgRegion::Cloud { .. } => "cloud",
        }
    }

    /// `max(1, largest modulus)` over the region's defining points.
    pub fn scale(&self) -> f64 {
        match self {
            SrgRegion::SinglePoint(p) => scale_of([p]),
            SrgRegion::TwoCircles(c) => c.scale(),
            SrgRegion::Polygon(p) => scale_of(p.hull_vertices()),
            SrgRegion::DiskDiff(d) => d.scale(),
            SrgRegion::Cloud { cloud, .. } => scale_of(&cloud.points),
        }
    }

    /// Membership with each variant's own tolerance.
    pub fn contains(&self, w: HalfPlanePoint) -> bool {
        match self {
            SrgRegion::SinglePoint(p) => p.distance(&w) <= MEMBERSHIP * scale_of([p, &w]),
            SrgRegion::TwoCircles(c) => {
                c.distance_to(w) <= MEMBERSHIP * c.scale().max(w.abs())
            }
            SrgRegion::Polygon(p) => p.contains(w),
            SrgRegion::DiskDiff(d) => d.contains(w),
            SrgRegion::Cloud { cloud, delta } => nearest_distance(&cloud.points, w) <= *delta,
        }
    }

    /// Half-plane distance by which `w` misses the region; zero for
    /// members. For a disk difference this is the largest violated
    /// constraint rather than the exact distance.
    pub fn defect(&self, w: HalfPlanePoint) -> f64 {
        match self {
            SrgRegion::SinglePoint(p) => p.distance(&w),
            SrgRegion::TwoCircles(c) => c.distance_to(w),
            SrgRegion::Polygon(p) => p.distance_to(w),
            SrgRegion::DiskDiff(d) => d.defect(w),
            SrgRegion::Cloud { cloud, delta } => {
                (nearest_distance(&cloud.points, w) - delta).max(0.0)
            }
        }
    }

    /// Points certainly in the region, used as search seeds.
    pub fn representatives(&self) -> Vec<HalfPlanePoint> {
        match self {
            SrgRegion::SinglePoint(p) => vec![*p],
            SrgRegion::TwoCircles(c) => {
                let mut pts = Vec::new();
                for k in 0..16 {
                    let t = std::f64::consts::PI * k as f64 / 8.0;
                    pts.extend(c.point_at(t, true));
                    if c.center_im > 0.0 {
                        pts.extend(c.point_at(t, false));
                    }
                }
                pts
            }
            SrgRegion::Polygon(p) => p.hull_vertices().to_vec(),
            SrgRegion::DiskDiff(d) => d
                .values()
                .into_iter()
                .map(|v| HalfPlanePoint::real(v).expect("finite"))
                .collect(),
            SrgRegion::Cloud { cloud, .. } => cloud.points.clone(),
        }
    }
}

pub fn region_contains(region: &SrgRegion, w: HalfPlanePoint) -> bool {
    region.contains(w)
}

pub fn default_cloud_delta(a: &RealMatrix) -> f64 {
    1e-3 * a.frobenius_norm()
}

fn nearest_distance(points: &[HalfPlanePoint], w: HalfPlanePoint) -> f64 {
    points
        .iter()
        .map(|p| p.distance(&w))
        .fold(f64::INFINITY, f64::min)
}

/// Outcome of checking every cloud point against a region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudReport {
    pub checked: usize,
    /// Points outside the region by more than `tol * region scale`.
    pub violations: usize,
    /// Largest membership defect over the cloud.
    pub max_excess: f64,
}

/// A point counts as a violation when it fails the region's own test and
/// its defect also exceeds `tol` relative to the region's scale.
pub fn verify_cloud_in_region(cloud: &SampleCloud, region: &SrgRegion, tol: f64) -> CloudReport {
    let slack = tol * region.scale();
    let mut report = CloudReport {
        checked: cloud.points.len(),
        violations: 0,
        max_excess: 0.0,
    };
    for &w in &cloud.points {
        let defect = region.defect(w);
        report.max_excess = report.max_excess.max(defect);
        if defect > slack && !region.contains(w) {
            report.violations += 1;
        }
    }
    report
}

/// Snaps an eigenvalue with negligible imaginary part onto the real axis.
pub(crate) fn snap(z: Complex64, scale: f64) -> Complex64 {
    if z.im.abs() <= EIGEN_CLUSTER * scale {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}
