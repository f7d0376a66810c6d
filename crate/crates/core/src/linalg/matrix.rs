use std::fmt;
use std::ops::{Index, IndexMut};

use sha2::{Digest, Sha256};

use crate::error::{Result, SrgError};

/// A dense square real matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(SrgError::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(SrgError::NotSquare(data.len(), n));
        }
        if let Some(index) = data.iter().position(|x| !x.is_finite()) {
            return Err(SrgError::NonFiniteEntry { index });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SrgError::NotSquare(rows.iter().map(Vec::len).sum(), n));
        }
        Self::new(n, rows.concat())
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut data = vec![0.0; n * n];
        for (i, &v) in values.iter().enumerate() {
            data[i * n + i] = v;
        }
        Self::new(n, data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &RealMatrix) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn sub(&self, other: &RealMatrix) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    /// `Q A Q^T`.
    pub fn conjugate_by(&self, q: &RealMatrix) -> Self {
        q.matmul(self).matmul(&q.transpose())
    }

    /// `|A - A^T|_F`.
    pub fn asymmetry(&self) -> f64 {
        self.sub(&self.transpose()).frobenius_norm()
    }

    /// Short hex digest of the dimension and the entries' bit patterns.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.n as u64).to_le_bytes());
        for x in &self.data {
            hasher.update(x.to_bits().to_le_bytes());
        }
        hasher
            .finalize()
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[f64]> = (0..self.n).map(|i| self.row(i)).collect();
        f.debug_struct("RealMatrix")
            .field("n", &self.n)
            .field("rows", &rows)
            .finish()
    }
}

/// An ordered list of diagonal blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpec {
    blocks: Vec<RealMatrix>,
}

impl BlockSpec {
    pub fn new(blocks: Vec<RealMatrix>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(SrgError::EmptyInput);
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[RealMatrix] {
        &self.blocks
    }

    /// Index range of each block inside the assembled matrix.
    pub fn offsets(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = start..start + b.n();
                start += b.n();
                r
            })
            .collect()
    }
}

/// `Diag(A_1, ..., A_m)`.
pub fn assemble_block_diag(spec: &BlockSpec) -> RealMatrix {
    let n: usize = spec.blocks.iter().map(RealMatrix::n).sum();
    let mut out = RealMatrix::zeros(n);
    for (block, range) in spec.blocks.iter().zip(spec.offsets()) {
        for i in 0..block.n() {
            for j in 0..block.n() {
                out[(range.start + i, range.start + j)] = block[(i, j)];
            }
        }
    }
    out
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    // Scaled to stay finite for large entries.
    let m = a.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    m * a.iter().map(|x| (x / m) * (x / m)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_is_validated() {
        assert_eq!(RealMatrix::new(0, vec![]), Err(SrgError::EmptyMatrix));
        assert_eq!(
            RealMatrix::new(2, vec![1.0; 3]),
            Err(SrgError::NotSquare(3, 2))
        );
        assert_eq!(
            RealMatrix::new(1, vec![f64::NAN]),
            Err(SrgError::NonFiniteEntry { index: 0 })
        );
        assert!(RealMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn block_assembly() {
        let a = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let one = BlockSpec::new(vec![a.clone()]).unwrap();
        assert_eq!(assemble_block_diag(&one), a);

        let two = BlockSpec::new(vec![
            RealMatrix::diag(&[1.0]).unwrap(),
            RealMatrix::diag(&[2.0]).unwrap(),
        ])
        .unwrap();
        assert_eq!(assemble_block_diag(&two), RealMatrix::diag(&[1.0, 2.0]).unwrap());

        let rot = RealMatrix::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let spec = BlockSpec::new(vec![rot, RealMatrix::diag(&[3.0]).unwrap()]).unwrap();
        let m = assemble_block_diag(&spec);
        let expected = RealMatrix::from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 0.0, 3.0],
        ])
        .unwrap();
        assert_eq!(m, expected);
        assert_eq!(spec.offsets(), vec![0..2, 2..3]);
        assert!(BlockSpec::new(vec![]).is_err());
    }

    #[test]
    fn digest_is_stable_and_distinguishes() {
        let a = RealMatrix::identity(3);
        assert_eq!(a.digest(), RealMatrix::identity(3).digest());
        assert_ne!(a.digest(), RealMatrix::identity(2).digest());
        assert_eq!(a.digest().len(), 16);
    }
}
