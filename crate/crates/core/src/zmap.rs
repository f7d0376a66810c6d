//! The point map `z_A(x) = |Ax|/|x| * exp(i * angle(Ax, x))`.

use crate::error::{Result, SrgError};
use crate::halfplane::HalfPlanePoint;
use crate::linalg::{dot, norm, RealMatrix};

/// Angle in `[0, pi]` between `a` and `b`; zero if either vector is zero.
pub fn angle_between(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(SrgError::LengthMismatch(a.len(), b.len()));
    }
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return Ok(0.0);
    }
    // 2 atan2(|â - b̂|, |â + b̂|) equals acos(<â, b̂>) but stays accurate
    // for nearly parallel or antiparallel vectors.
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x / na - y / nb).collect();
    let sum: Vec<f64> = a.iter().zip(b).map(|(x, y)| x / na + y / nb).collect();
    Ok(2.0 * norm(&diff).atan2(norm(&sum)))
}

/// `z_A(x)`, a point of the closed upper half-plane.
///
/// Evaluated as `Re = <Ax, x> / <x, x>` and `Im = |Ax - Re x| / |x|`,
/// which equals the polar form but keeps full relative accuracy when the
/// angle is near `0` or `pi`, where `acos` does not.
pub fn z_map(a: &RealMatrix, x: &[f64]) -> Result<HalfPlanePoint> {
    if x.len() != a.n() {
        return Err(SrgError::LengthMismatch(x.len(), a.n()));
    }
    let len = norm(x);
    if len.is_nan() || len <= 1e-300 || !len.is_finite() {
        return Err(SrgError::ZeroVector);
    }
    let peak = x.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let y: Vec<f64> = x.iter().map(|c| c / peak).collect();
    let image = a.mul_vec(&y);
    let re = dot(&image, &y) / dot(&y, &y);
    let residual: Vec<f64> = image.iter().zip(&y).map(|(p, q)| p - re * q).collect();
    Ok(HalfPlanePoint::clamped(re, norm(&residual) / norm(&y)))
}
