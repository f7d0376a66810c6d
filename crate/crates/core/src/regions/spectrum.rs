use num_complex::Complex64;

use crate::error::Result;
use crate::halfplane::HalfPlanePoint;
use crate::linalg::{eigenvalues, is_normal, real_eigenvector, RealMatrix};
use crate::tolerance::{EIGEN_CLUSTER, STRUCTURE};
use crate::zmap::z_map;

use super::{exact::srg_normal, snap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InclusionStatus {
    Contained,
    NotContained,
    /// No constructive witness is available: a complex eigenvalue of a
    /// non-normal matrix.
    Unverified,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub eigenvalue: Complex64,
    pub status: InclusionStatus,
    /// Distance between the eigenvalue and its witness point, when one
    /// exists.
    pub metric: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumReport {
    /// Spectrum inclusion is only asserted for `n = 1` and `n >= 3`.
    Skipped { n: usize },
    Checked(Vec<SpectrumEntry>),
}

impl SpectrumReport {
    pub fn all_contained(&self) -> bool {
        match self {
            SpectrumReport::Skipped { .. } => false,
            SpectrumReport::Checked(entries) => entries
                .iter()
                .all(|e| e.status == InclusionStatus::Contained),
        }
    }
}

/// Checks `Lambda(A) ⊆ G(A)` for every eigenvalue in the closed upper
/// half-plane.
///
/// Normal matrices are checked against the exact polygon. Otherwise a real
/// eigenvalue is checked through `z_map` of its real eigenvector, within
/// `1e-8 * max(1, |A|_F)`; complex ones are reported as unverified.
pub fn spectrum_inclusion_report(a: &RealMatrix) -> Result<SpectrumReport> {
    let n = a.n();
    if n == 2 {
        return Ok(SpectrumReport::Skipped { n });
    }
    let spectrum = eigenvalues(a)?;
    let scale = spectrum
        .eigenvalues()
        .iter()
        .fold(1.0_f64, |m, z| m.max(z.norm()));
    let upper = spectrum
        .sorted()
        .into_iter()
        .map(|z| snap(z, scale))
        .filter(|z| z.im >= 0.0);

    if is_normal(a, STRUCTURE) {
        let region = srg_normal(a)?;
        return Ok(SpectrumReport::Checked(
            upper
                .map(|z| {
                    let w = HalfPlanePoint::clamped(z.re, z.im);
                    let d = region.distance_to(w);
                    SpectrumEntry {
                        eigenvalue: z,
                        status: if region.contains(w) {
                            InclusionStatus::Contained
                        } else {
                            InclusionStatus::NotContained
                        },
                        metric: Some(d),
                    }
                })
                .collect(),
        ));
    }

    let tol = EIGEN_CLUSTER * a.frobenius_norm().max(1.0);
    let entries = upper
        .map(|z| {
            if z.im != 0.0 {
                return Ok(SpectrumEntry {
                    eigenvalue: z,
                    status: InclusionStatus::Unverified,
                    metric: None,
                });
            }
            let v = real_eigenvector(a, z.re);
            let d = (z_map(a, &v)?.to_complex() - z).norm();
            Ok(SpectrumEntry {
                eigenvalue: z,
                status: if d <= tol {
                    InclusionStatus::Contained
                } else {
                    InclusionStatus::NotContained
                },
                metric: Some(d),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumReport::Checked(entries))
}
