use num_complex::Complex64;

use crate::error::{Result, SrgError};
use crate::halfplane::{arc_polygon, ArcPolygon, HalfPlanePoint};
use crate::linalg::{eigenvalues, is_normal, is_symmetric, normality_defect, RealMatrix, Spectrum};
use crate::tolerance::{EIGEN_CLUSTER, STRUCTURE};

use super::{snap, DiskDifference, SrgRegion, TwoCircles};

/// `G+` of `[[a1, b1], [b2, a2]]`: circles centered at
/// `((a1 + a2) / 2, +/- |b1 - b2| / 2)` with radius
/// `sqrt(((a1 - a2) / 2)^2 + ((b1 + b2) / 2)^2)`.
pub fn srg_2x2(a: &RealMatrix) -> Result<TwoCircles> {
    if a.n() != 2 {
        return Err(SrgError::WrongDimension {
            expected: 2,
            found: a.n(),
        });
    }
    let (a1, b1, b2, a2) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    TwoCircles::new(
        0.5 * (a1 + a2),
        0.5 * (b1 - b2).abs(),
        (0.5 * (a1 - a2)).hypot(0.5 * (b1 + b2)),
    )
}

/// Eigenvalues in the closed upper half-plane with conjugates dropped and
/// near-duplicates (within `1e-8` relative) merged.
pub fn upper_spectrum(spectrum: &Spectrum) -> Vec<HalfPlanePoint> {
    let scale = spectrum
        .eigenvalues()
        .iter()
        .fold(1.0_f64, |m, z| m.max(z.norm()));
    let mut upper: Vec<Complex64> = spectrum
        .eigenvalues()
        .iter()
        .map(|&z| snap(z, scale))
        .filter(|z| z.im >= 0.0)
        .collect();
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for z in upper {
        match clusters
            .iter_mut()
            .find(|(c, k)| (c / *k as f64 - z).norm() <= EIGEN_CLUSTER * scale)
        {
            Some((sum, k)) => {
                *sum += z;
                *k += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    clusters
        .into_iter()
        .map(|(sum, k)| {
            let z = sum / k as f64;
            HalfPlanePoint::new(z.re, z.im.max(0.0)).expect("finite eigenvalue")
        })
        .collect()
}

/// `G+(A) = Poly(Lambda(A) ∩ C+)` for normal `A`.
pub fn srg_normal(a: &RealMatrix) -> Result<ArcPolygon> {
    if !is_normal(a, STRUCTURE) {
        let scale = a.frobenius_norm().powi(2).max(f64::MIN_POSITIVE);
        return Err(SrgError::NotNormal {
            defect: normality_defect(a) / scale,
        });
    }
    arc_polygon(&upper_spectrum(&eigenvalues(a)?))
}

/// Distinct real parts of the spectrum, ascending, merged at `1e-8`
/// relative.
pub fn distinct_real_eigenvalues(spectrum: &Spectrum) -> Vec<f64> {
    let mut values: Vec<f64> = spectrum.eigenvalues().iter().map(|z| z.re).collect();
    values.sort_by(f64::total_cmp);
    let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match groups.last_mut() {
            Some(g) if v - g[0] <= EIGEN_CLUSTER * scale => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    groups
        .into_iter()
        .map(|g| g.iter().sum::<f64>() / g.len() as f64)
        .collect()
}

/// `{l_1}` when all eigenvalues coincide, otherwise
/// `Disk(l_1, l_m)` minus the open disks over consecutive eigenvalues.
pub fn srg_symmetric(a: &RealMatrix) -> Result<SrgRegion> {
    if !is_symmetric(a) {
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
        return Err(SrgError::NotSymmetric {
            defect: a.asymmetry() / scale,
        });
    }
    let values = distinct_real_eigenvalues(&eigenvalues(a)?);
    if values.len() == 1 {
        return Ok(SrgRegion::SinglePoint(HalfPlanePoint::real(values[0])?));
    }
    Ok(SrgRegion::DiskDiff(DiskDifference::from_sorted(&values)?))
}
