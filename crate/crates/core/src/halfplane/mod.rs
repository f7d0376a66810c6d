//! Hyperbolic geometry in the Poincaré half-plane model.
//!
//! Geodesics are circles centered on the real axis or vertical lines. The
//! hyperbolic segment between two points ([`arc_min`]) is the upper arc of
//! the geodesic through them. Convex hulls ([`arc_polygon`]) are computed in
//! the Beltrami–Klein disk, where geodesics become straight chords.

mod klein;
mod polygon;

pub use klein::{klein_inverse, klein_map, KleinPoint};
pub use polygon::{
    arc_polygon, arc_polygon_with, polygon_boundary, polygon_contains, ArcPolygon, PolygonKind,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SrgError};
use crate::tolerance::{Tolerances, EXACT};

/// A point of the closed upper half-plane `{z : Im z >= 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct HalfPlanePoint {
    re: f64,
    im: f64,
}

impl HalfPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || im < 0.0 {
            return Err(SrgError::NotInUpperHalfPlane { re, im });
        }
        // `+ 0.0` turns -0.0 into +0.0 so angles never flip to -pi.
        Ok(Self {
            re: re + 0.0,
            im: im + 0.0,
        })
    }

    /// A point on the real axis.
    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    /// Builds a point from computed coordinates, clamping rounding noise
    /// below the real axis. Callers guarantee finiteness.
    pub(crate) fn clamped(re: f64, im: f64) -> Self {
        debug_assert!(re.is_finite() && im.is_finite());
        Self {
            re: re + 0.0,
            im: im.max(0.0) + 0.0,
        }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn distance(&self, other: &HalfPlanePoint) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<HalfPlanePoint> for Complex64 {
    fn from(p: HalfPlanePoint) -> Self {
        p.to_complex()
    }
}

impl TryFrom<Complex64> for HalfPlanePoint {
    type Error = SrgError;

    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }
}

impl TryFrom<[f64; 2]> for HalfPlanePoint {
    type Error = SrgError;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Self::new(v[0], v[1])
    }
}

impl From<HalfPlanePoint> for [f64; 2] {
    fn from(p: HalfPlanePoint) -> Self {
        [p.re, p.im]
    }
}

/// `max(1, max |z_i|)`, the reference magnitude for relative tolerances.
pub fn scale_of<'a>(points: impl IntoIterator<Item = &'a HalfPlanePoint>) -> f64 {
    points.into_iter().fold(1.0_f64, |acc, p| acc.max(p.abs()))
}

/// A hyperbolic line of the half-plane model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geodesic {
    /// Circle centered at `(center, 0)`.
    Circle { center: f64, radius: f64 },
    VerticalLine { x: f64 },
}

impl Geodesic {
    /// Euclidean distance from `w` to the full carrier curve.
    pub fn distance_to(&self, w: Complex64) -> f64 {
        match *self {
            Geodesic::Circle { center, radius } => {
                ((w.re - center).hypot(w.im) - radius).abs()
            }
            Geodesic::VerticalLine { x } => (w.re - x).abs(),
        }
    }
}

/// The geodesic through two distinct points.
pub fn geodesic_through(z1: HalfPlanePoint, z2: HalfPlanePoint) -> Result<Geodesic> {
    geodesic_through_with(z1, z2, &Tolerances::default())
}

pub fn geodesic_through_with(
    z1: HalfPlanePoint,
    z2: HalfPlanePoint,
    tol: &Tolerances,
) -> Result<Geodesic> {
    let scale = scale_of([&z1, &z2]);
    if z1.distance(&z2) <= tol.exact * scale {
        return Err(SrgError::CoincidentPoints);
    }
    let dx = z2.re - z1.re;
    if dx.abs() <= tol.exact * scale {
        return Ok(Geodesic::VerticalLine {
            x: 0.5 * (z1.re + z2.re),
        });
    }
    // Intersection of the perpendicular bisector with the real axis.
    let center = 0.5 * (z1.re + z2.re) + (z2.im - z1.im) * (z2.im + z1.im) / (2.0 * dx);
    let radius = 0.5 * ((z1.re - center).hypot(z1.im) + (z2.re - center).hypot(z2.im));
    Ok(Geodesic::Circle { center, radius })
}

/// The hyperbolic segment between two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinArc {
    start: HalfPlanePoint,
    end: HalfPlanePoint,
    /// `None` for the single-point arc.
    carrier: Option<Geodesic>,
    /// Polar angles of the endpoints about a circle carrier's center.
    angles: [f64; 2],
}

/// The minimal arc between `z1` and `z2`: a point, a vertical segment, a
/// minor circular arc, or a full upper semicircle when both are real.
pub fn arc_min(z1: HalfPlanePoint, z2: HalfPlanePoint) -> MinArc {
    arc_min_with(z1, z2, &Tolerances::default())
}

pub fn arc_min_with(z1: HalfPlanePoint, z2: HalfPlanePoint, tol: &Tolerances) -> MinArc {
    let carrier = geodesic_through_with(z1, z2, tol).ok();
    let angles = match carrier {
        Some(Geodesic::Circle { center, .. }) => [
            z1.im.atan2(z1.re - center),
            z2.im.atan2(z2.re - center),
        ],
        _ => [0.0, 0.0],
    };
    MinArc {
        start: z1,
        end: z2,
        carrier,
        angles,
    }
}

impl MinArc {
    pub fn start(&self) -> HalfPlanePoint {
        self.start
    }

    pub fn end(&self) -> HalfPlanePoint {
        self.end
    }

    pub fn carrier(&self) -> Option<Geodesic> {
        self.carrier
    }

    pub fn is_degenerate(&self) -> bool {
        self.carrier.is_none()
    }

    /// Point at parameter `s` in `[0, 1]`, running from `start` to `end`.
    pub fn point_at(&self, s: f64) -> Result<HalfPlanePoint> {
        if !(0.0..=1.0).contains(&s) {
            return Err(SrgError::ParameterOutOfRange(s));
        }
        if s == 0.0 {
            return Ok(self.start);
        }
        if s == 1.0 {
            return Ok(self.end);
        }
        Ok(match self.carrier {
            None => self.start,
            Some(Geodesic::VerticalLine { .. }) => HalfPlanePoint::clamped(
                self.start.re + s * (self.end.re - self.start.re),
                self.start.im + s * (self.end.im - self.start.im),
            ),
            Some(Geodesic::Circle { center, radius }) => {
                let theta = self.angles[0] + s * (self.angles[1] - self.angles[0]);
                HalfPlanePoint::clamped(center + radius * theta.cos(), radius * theta.sin())
            }
        })
    }

    /// `count` points at evenly spaced parameters, endpoints included.
    pub fn sample(&self, count: usize) -> Vec<HalfPlanePoint> {
        match count {
            0 => Vec::new(),
            1 => vec![self.start],
            _ => (0..count)
                .map(|k| {
                    let s = k as f64 / (count - 1) as f64;
                    self.point_at(s.min(1.0)).expect("parameter in range")
                })
                .collect(),
        }
    }

    /// Euclidean distance from `w` (upper half-plane) to the arc.
    pub fn distance_to(&self, w: HalfPlanePoint) -> f64 {
        let ends = w.distance(&self.start).min(w.distance(&self.end));
        match self.carrier {
            None => w.distance(&self.start),
            Some(Geodesic::VerticalLine { .. }) => {
                let (ax, ay) = (self.start.re, self.start.im);
                let (dx, dy) = (self.end.re - ax, self.end.im - ay);
                let len2 = dx * dx + dy * dy;
                let t = (((w.re - ax) * dx + (w.im - ay) * dy) / len2).clamp(0.0, 1.0);
                (w.re - (ax + t * dx)).hypot(w.im - (ay + t * dy))
            }
            Some(Geodesic::Circle { center, radius }) => {
                let phi = w.im.atan2(w.re - center);
                let (lo, hi) = if self.angles[0] <= self.angles[1] {
                    (self.angles[0], self.angles[1])
                } else {
                    (self.angles[1], self.angles[0])
                };
                if (lo..=hi).contains(&phi) {
                    ((w.re - center).hypot(w.im) - radius).abs()
                } else {
                    ends
                }
            }
        }
    }

    /// Polar angle span of a circular carrier; zero otherwise.
    pub fn angle_span(&self) -> f64 {
        match self.carrier {
            Some(Geodesic::Circle { .. }) => (self.angles[1] - self.angles[0]).abs().min(PI),
            _ => 0.0,
        }
    }
}

/// Point of `arc` at parameter `s`.
pub fn arc_point(arc: &MinArc, s: f64) -> Result<HalfPlanePoint> {
    arc.point_at(s)
}

/// The closed disk bounded by the geodesic circle through two points with
/// distinct real parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: f64,
    pub radius: f64,
    scale: f64,
}

impl Disk {
    pub fn through(z1: HalfPlanePoint, z2: HalfPlanePoint) -> Result<Self> {
        let scale = scale_of([&z1, &z2]);
        if (z1.re - z2.re).abs() <= EXACT * scale {
            return Err(SrgError::UndefinedDisk);
        }
        match geodesic_through(z1, z2)? {
            Geodesic::Circle { center, radius } => Ok(Self {
                center,
                radius,
                scale,
            }),
            Geodesic::VerticalLine { .. } => Err(SrgError::UndefinedDisk),
        }
    }

    /// Disk over the real segment `[a, b]`.
    pub fn over_interval(a: f64, b: f64) -> Result<Self> {
        Self::through(HalfPlanePoint::real(a)?, HalfPlanePoint::real(b)?)
    }

    /// Boundary points belong to the closed disk and not to the open one.
    pub fn contains(&self, w: Complex64, closed: bool) -> bool {
        let d = (w.re - self.center).hypot(w.im);
        let margin = EXACT * self.scale;
        if closed {
            d <= self.radius + margin
        } else {
            d < self.radius - margin
        }
    }

    /// Signed distance from the boundary circle, positive outside.
    pub fn signed_distance(&self, w: Complex64) -> f64 {
        (w.re - self.center).hypot(w.im) - self.radius
    }
}

/// Membership of `w` in `Disk(z1, z2)` (closed) or `Disk°(z1, z2)` (open).
pub fn disk_contains(
    z1: HalfPlanePoint,
    z2: HalfPlanePoint,
    w: Complex64,
    closed: bool,
) -> Result<bool> {
    Ok(Disk::through(z1, z2)?.contains(w, closed))
}
