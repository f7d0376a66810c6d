use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Result, SrgError};
use crate::rng::{self, streams};
use crate::tolerance::STRUCTURE;

use super::eigen::Spectrum;
use super::matrix::{norm, RealMatrix};

/// `|A^T A - A A^T|_F <= tol * |A|_F^2`.
pub fn is_normal(a: &RealMatrix, tol: f64) -> bool {
    normality_defect(a) <= tol * a.frobenius_norm().powi(2)
}

pub fn normality_defect(a: &RealMatrix) -> f64 {
    let at = a.transpose();
    at.matmul(a).sub(&a.matmul(&at)).frobenius_norm()
}

/// A random orthogonal matrix: the Q factor of a Gaussian matrix, with
/// column signs fixed so that R has a positive diagonal.
pub fn random_orthogonal(n: usize, seed: u64) -> RealMatrix {
    let mut rng = rng::stream(seed, streams::ORTHOGONAL);
    let mut r = RealMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            r[(i, j)] = StandardNormal.sample(&mut rng);
        }
    }
    let mut q = RealMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let x: Vec<f64> = (k..n).map(|i| r[(i, k)]).collect();
        let alpha = norm(&x);
        if alpha == 0.0 {
            continue;
        }
        let mut v = x;
        v[0] += alpha.copysign(v[0]);
        let beta = 2.0 / v.iter().map(|c| c * c).sum::<f64>();
        for j in k..n {
            let s = beta * (0..v.len()).map(|t| v[t] * r[(k + t, j)]).sum::<f64>();
            for t in 0..v.len() {
                r[(k + t, j)] -= s * v[t];
            }
        }
        for i in 0..n {
            let s = beta * (0..v.len()).map(|t| v[t] * q[(i, k + t)]).sum::<f64>();
            for t in 0..v.len() {
                q[(i, k + t)] -= s * v[t];
            }
        }
    }
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// The real block-diagonal form of a normal matrix with spectrum `eigs`:
/// a block `[[a, b], [-b, a]]` per conjugate pair `a ± bi` (b > 0) in order
/// of appearance, followed by the real eigenvalues.
pub fn normal_block_form(eigs: &Spectrum) -> Result<RealMatrix> {
    let values = eigs.eigenvalues();
    let scale = values.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
    let tol = 1e-9 * scale;

    let mut lower: Vec<Option<Complex64>> = values
        .iter()
        .filter(|z| z.im < -tol)
        .map(|z| Some(*z))
        .collect();
    let mut pairs = Vec::new();
    for z in values.iter().filter(|z| z.im > tol) {
        let partner = lower
            .iter()
            .position(|w| w.is_some_and(|w| (w - z.conj()).norm() <= tol))
            .ok_or(SrgError::NotConjugateClosed)?;
        lower[partner] = None;
        pairs.push(*z);
    }
    if lower.iter().any(Option::is_some) {
        return Err(SrgError::NotConjugateClosed);
    }
    let reals: Vec<f64> = values
        .iter()
        .filter(|z| z.im.abs() <= tol)
        .map(|z| z.re)
        .collect();

    let n = values.len();
    let mut m = RealMatrix::zeros(n);
    let mut k = 0;
    for z in pairs {
        m[(k, k)] = z.re;
        m[(k, k + 1)] = z.im;
        m[(k + 1, k)] = -z.im;
        m[(k + 1, k + 1)] = z.re;
        k += 2;
    }
    for r in reals {
        m[(k, k)] = r;
        k += 1;
    }
    Ok(m)
}

/// A normal matrix with spectrum `eigs`: [`normal_block_form`] conjugated
/// by [`random_orthogonal`].
pub fn build_normal_matrix(eigs: &Spectrum, seed: u64) -> Result<RealMatrix> {
    let block = normal_block_form(eigs)?;
    let q = random_orthogonal(block.n(), seed);
    Ok(block.conjugate_by(&q))
}

/// Relative symmetry check used by the symmetric constructor.
pub fn is_symmetric(a: &RealMatrix) -> bool {
    a.asymmetry() <= STRUCTURE * a.frobenius_norm()
}
