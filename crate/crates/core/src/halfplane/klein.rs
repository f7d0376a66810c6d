use crate::error::{Result, SrgError};

use super::HalfPlanePoint;

/// A point of the Beltrami–Klein disk.
///
/// Besides the coordinates `(u, v)` the point carries `1 - u` and
/// `1 - u^2 - v^2` evaluated from the source half-plane point. Near the
/// unit circle both quantities cancel catastrophically when recomputed
/// from `(u, v)`, and they are exactly what the inverse map needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinPoint {
    u: f64,
    v: f64,
    rim: f64,
    gap: f64,
}

impl KleinPoint {
    /// A point given by its coordinates; must lie in the closed unit disk.
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !u.is_finite() || !v.is_finite() || u * u + v * v > 1.0 + 1e-12 {
            return Err(SrgError::OutsideKleinDisk { u, v });
        }
        Ok(Self {
            u,
            v,
            rim: 1.0 - u,
            gap: ((1.0 - u) * (1.0 + u) - v * v).max(0.0),
        })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    /// `1 - u^2 - v^2`; zero exactly for images of real points.
    pub fn boundary_gap(&self) -> f64 {
        self.gap
    }

    pub(crate) fn xy(&self) -> [f64; 2] {
        [self.u, self.v]
    }
}

/// `f(g(z))` with `g(z) = (z - i)/(z + i)` and `f(w) = 2w/(1 + |w|^2)`.
///
/// Expanding the composition gives, with `rho = |z|^2`,
/// `u = (rho - 1)/(rho + 1)` and `v = -2 Re z/(rho + 1)`.
pub fn klein_map(z: HalfPlanePoint) -> KleinPoint {
    let (x, y) = (z.re(), z.im());
    let denom = x * x + y * y + 1.0;
    let rim = 2.0 / denom;
    let h = 2.0 * y / denom;
    KleinPoint {
        u: (x * x + y * y - 1.0) / denom,
        v: -2.0 * x / denom + 0.0,
        rim,
        gap: h * h,
    }
}

/// Inverse of [`klein_map`]; fails only for `(1, 0)`, the image of infinity.
pub fn klein_inverse(w: KleinPoint) -> Result<HalfPlanePoint> {
    if w.rim <= 0.0 {
        return Err(SrgError::PointAtInfinity);
    }
    let x = -w.v / w.rim;
    let y = w.gap.sqrt() / w.rim;
    if !x.is_finite() || !y.is_finite() {
        return Err(SrgError::PointAtInfinity);
    }
    Ok(HalfPlanePoint::clamped(x, y))
}
