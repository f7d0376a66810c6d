//! Eigenvalues of dense real matrices.
//!
//! Householder reduction to upper Hessenberg form, then Francis
//! double-shift QR with deflation. The orthogonal transformations are
//! accumulated so the result is a real Schur decomposition
//! `A = Z T Z^T`, with `T` quasi-triangular: 1x1 blocks for real
//! eigenvalues and standardized 2x2 blocks for complex conjugate pairs.

use num_complex::Complex64;

use crate::error::{Result, SrgError};

use super::matrix::{norm, RealMatrix};

/// Sweep budget per unit dimension before giving up.
pub const SWEEPS_PER_DIMENSION: usize = 30;

/// Eigenvalues with multiplicity, closed under conjugation.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
}

impl Spectrum {
    /// Checks conjugate closure with tolerance `1e-9 * max(1, max |lambda|)`.
    pub fn new(eigenvalues: Vec<Complex64>) -> Result<Self> {
        let scale = eigenvalues.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
        if eigenvalues.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SrgError::InvalidArgument("non-finite eigenvalue".into()));
        }
        if !conjugate_closed(&eigenvalues, 1e-9 * scale) {
            return Err(SrgError::NotConjugateClosed);
        }
        Ok(Self { eigenvalues })
    }

    #[cfg(test)]
    pub(crate) fn unchecked(eigenvalues: Vec<Complex64>) -> Self {
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Sorted by real part, then imaginary part descending.
    pub fn sorted(&self) -> Vec<Complex64> {
        let mut v = self.eigenvalues.clone();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(b.im.total_cmp(&a.im)));
        v
    }
}

fn conjugate_closed(values: &[Complex64], tol: f64) -> bool {
    let mut lower: Vec<Option<Complex64>> =
        values.iter().filter(|z| z.im < -tol).map(|z| Some(*z)).collect();
    for z in values.iter().filter(|z| z.im > tol) {
        let best = lower
            .iter()
            .enumerate()
            .filter_map(|(i, w)| w.map(|w| (i, (w - z.conj()).norm())))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) if d <= tol => lower[i] = None,
            _ => return false,
        }
    }
    lower.iter().all(Option::is_none)
}

/// `A = Z T Z^T` with `Z` orthogonal and `T` quasi upper triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSchur {
    pub t: RealMatrix,
    pub z: RealMatrix,
}

/// A diagonal block of the Schur form and the Schur vectors spanning it.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurBlock {
    /// The block's eigenvalue with non-negative imaginary part.
    pub eigenvalue: Complex64,
    /// One vector for a real eigenvalue, two for a conjugate pair.
    pub basis: Vec<Vec<f64>>,
}

impl RealSchur {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.blocks()
            .into_iter()
            .flat_map(|b| {
                if b.basis.len() == 2 {
                    vec![b.eigenvalue, b.eigenvalue.conj()]
                } else {
                    vec![b.eigenvalue]
                }
            })
            .collect()
    }

    /// Diagonal blocks in order. For a normal matrix `T` is block diagonal
    /// and each basis spans an invariant subspace of `A`.
    pub fn blocks(&self) -> Vec<SchurBlock> {
        let t = &self.t;
        let n = t.n();
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        while i < n {
            if i + 1 < n && t[(i + 1, i)] != 0.0 {
                let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
                let half = 0.5 * (a - d);
                let disc = half * half + b * c;
                out.push(SchurBlock {
                    eigenvalue: Complex64::new(0.5 * (a + d), (-disc).max(0.0).sqrt()),
                    basis: vec![self.z.column(i), self.z.column(i + 1)],
                });
                i += 2;
            } else {
                out.push(SchurBlock {
                    eigenvalue: Complex64::new(t[(i, i)], 0.0),
                    basis: vec![self.z.column(i)],
                });
                i += 1;
            }
        }
        out
    }
}

/// The spectrum of `a`.
pub fn eigenvalues(a: &RealMatrix) -> Result<Spectrum> {
    let schur = real_schur(a)?;
    Ok(Spectrum {
        eigenvalues: schur.eigenvalues(),
    })
}

pub fn real_schur(a: &RealMatrix) -> Result<RealSchur> {
    let (mut t, mut z) = hessenberg(a);
    francis_qr(&mut t, &mut z)?;
    Ok(RealSchur { t, z })
}

/// Householder vector `v` and `beta` with `(I - beta v v^T) x = -sign(x_0) |x| e_1`.
fn reflector<const N: usize>(x: [f64; N]) -> Option<([f64; N], f64)> {
    let alpha = norm(&x);
    if alpha == 0.0 {
        return None;
    }
    let mut v = x;
    v[0] += alpha.copysign(x[0]);
    let vtv: f64 = v.iter().map(|c| c * c).sum();
    Some((v, 2.0 / vtv))
}

/// Applies `I - beta v v^T` on the left to rows `r0..r0+N`, columns `cols`.
fn reflect_rows<const N: usize>(
    m: &mut RealMatrix,
    v: &[f64; N],
    beta: f64,
    r0: usize,
    cols: std::ops::Range<usize>,
) {
    for j in cols {
        let s = beta * (0..N).map(|k| v[k] * m[(r0 + k, j)]).sum::<f64>();
        for k in 0..N {
            m[(r0 + k, j)] -= s * v[k];
        }
    }
}

/// Applies `I - beta v v^T` on the right to columns `c0..c0+N`, rows `rows`.
fn reflect_cols<const N: usize>(
    m: &mut RealMatrix,
    v: &[f64; N],
    beta: f64,
    c0: usize,
    rows: std::ops::Range<usize>,
) {
    for i in rows {
        let s = beta * (0..N).map(|k| v[k] * m[(i, c0 + k)]).sum::<f64>();
        for k in 0..N {
            m[(i, c0 + k)] -= s * v[k];
        }
    }
}

/// Householder reduction `A = Q H Q^T` with `H` upper Hessenberg.
pub fn hessenberg(a: &RealMatrix) -> (RealMatrix, RealMatrix) {
    let n = a.n();
    let mut h = a.clone();
    let mut q = RealMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha = norm(&x);
        if alpha == 0.0 {
            continue;
        }
        let mut v = x;
        v[0] += alpha.copysign(v[0]);
        let beta = 2.0 / v.iter().map(|c| c * c).sum::<f64>();
        for j in k..n {
            let s = beta * (0..v.len()).map(|r| v[r] * h[(k + 1 + r, j)]).sum::<f64>();
            for r in 0..v.len() {
                h[(k + 1 + r, j)] -= s * v[r];
            }
        }
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let s = beta * (0..v.len()).map(|c| v[c] * m[(i, k + 1 + c)]).sum::<f64>();
                for c in 0..v.len() {
                    m[(i, k + 1 + c)] -= s * v[c];
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = 0.0;
        }
    }
    (h, q)
}

fn francis_qr(h: &mut RealMatrix, z: &mut RealMatrix) -> Result<()> {
    let n = h.n();
    let cap = SWEEPS_PER_DIMENSION * n;
    let scale = h.frobenius_norm();
    let mut sweeps = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;

    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == 0.0 {
                s = scale;
            }
            if h[(l, l - 1)].abs() <= f64::EPSILON * s {
                h[(l, l - 1)] = 0.0;
                break;
            }
            l -= 1;
        }

        if l == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if l + 1 == hi {
            standardize_block(h, z, hi - 1);
            if hi < 2 {
                break;
            }
            hi -= 2;
            since_deflation = 0;
            continue;
        }

        sweeps += 1;
        if sweeps > cap {
            return Err(SrgError::NoConvergence(cap));
        }
        since_deflation += 1;

        let (sum, prod) = if since_deflation % 10 == 0 {
            // Exceptional shift to break cycles.
            let w = h[(hi, hi - 1)].abs() + h[(hi - 1, hi - 2)].abs();
            let centre = h[(hi, hi)] + 0.75 * w;
            (2.0 * centre, centre * centre + 0.4375 * w * w)
        } else {
            let (a, b, c, d) = (
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            );
            (a + d, a * d - b * c)
        };

        let mut x = h[(l, l)] * h[(l, l)] + h[(l, l + 1)] * h[(l + 1, l)] - sum * h[(l, l)] + prod;
        let mut y = h[(l + 1, l)] * (h[(l, l)] + h[(l + 1, l + 1)] - sum);
        let mut w = h[(l + 1, l)] * h[(l + 2, l + 1)];

        for k in l..=hi - 2 {
            if let Some((v, beta)) = reflector([x, y, w]) {
                let c0 = if k > l { k - 1 } else { l };
                reflect_rows(h, &v, beta, k, c0..n);
                reflect_cols(h, &v, beta, k, 0..(k + 4).min(hi + 1));
                reflect_cols(z, &v, beta, k, 0..n);
                if k > l {
                    h[(k + 1, k - 1)] = 0.0;
                    h[(k + 2, k - 1)] = 0.0;
                }
            }
            x = h[(k + 1, k)];
            y = h[(k + 2, k)];
            if k + 3 <= hi {
                w = h[(k + 3, k)];
            }
        }
        if let Some((v, beta)) = reflector([x, y]) {
            reflect_rows(h, &v, beta, hi - 1, hi - 2..n);
            reflect_cols(h, &v, beta, hi - 1, 0..hi + 1);
            reflect_cols(z, &v, beta, hi - 1, 0..n);
            h[(hi, hi - 2)] = 0.0;
        }
    }
    Ok(())
}

/// Splits a converged 2x2 block with real eigenvalues into two 1x1 blocks
/// by a rotation; complex blocks are left as they are.
fn standardize_block(t: &mut RealMatrix, z: &mut RealMatrix, p: usize) {
    let n = t.n();
    let (a, b, c, d) = (t[(p, p)], t[(p, p + 1)], t[(p + 1, p)], t[(p + 1, p + 1)]);
    if c == 0.0 {
        return;
    }
    let half = 0.5 * (a - d);
    let disc = half * half + b * c;
    if disc < 0.0 {
        return;
    }
    // (lambda - d, c) is an eigenvector of the block; this root of the
    // characteristic polynomial avoids cancellation in lambda - d.
    let shift = half + disc.sqrt().copysign(half);
    let r = shift.hypot(c);
    let (cs, sn) = (shift / r, c / r);

    for j in p..n {
        let (u, v) = (t[(p, j)], t[(p + 1, j)]);
        t[(p, j)] = cs * u + sn * v;
        t[(p + 1, j)] = -sn * u + cs * v;
    }
    for (m, rows) in [(&mut *t, p + 2), (&mut *z, n)] {
        for i in 0..rows {
            let (u, v) = (m[(i, p)], m[(i, p + 1)]);
            m[(i, p)] = cs * u + sn * v;
            m[(i, p + 1)] = -sn * u + cs * v;
        }
    }
    t[(p + 1, p)] = 0.0;
}

/// A unit eigenvector for the real eigenvalue `lambda`, by inverse
/// iteration on `A - lambda I`.
pub fn real_eigenvector(a: &RealMatrix, lambda: f64) -> Vec<f64> {
    let n = a.n();
    let floor = f64::EPSILON * a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut lu = a.clone();
    for i in 0..n {
        lu[(i, i)] -= lambda;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| lu[(i, k)].abs().total_cmp(&lu[(j, k)].abs()))
            .unwrap_or(k);
        if pivot != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            perm.swap(k, pivot);
        }
        if lu[(k, k)].abs() < floor {
            lu[(k, k)] = floor;
        }
        for i in k + 1..n {
            let f = lu[(i, k)] / lu[(k, k)];
            lu[(i, k)] = f;
            for j in k + 1..n {
                lu[(i, j)] -= f * lu[(k, j)];
            }
        }
    }

    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * i as f64).collect();
    for _ in 0..3 {
        let mut y: Vec<f64> = perm.iter().map(|&p| x[p]).collect();
        for i in 0..n {
            for j in 0..i {
                y[i] -= lu[(i, j)] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                y[i] -= lu[(i, j)] * y[j];
            }
            y[i] /= lu[(i, i)];
        }
        let s = norm(&y);
        x = y.iter().map(|v| v / s).collect();
    }
    x
}
