//! Finite approximations of `G+(A) = { z_A(x) : x != 0 }`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Result, SrgError};
use crate::halfplane::HalfPlanePoint;
use crate::linalg::{dot, norm, real_schur, RealMatrix};
use crate::rng::{self, streams};
use crate::tolerance::SPAN_ORTHOGONALITY;
use crate::zmap::z_map;

/// Default sample budget.
pub const DEFAULT_SAMPLE_COUNT: usize = 10_000;

/// Samples per worker task; each task owns one random stream.
const CHUNK: usize = 1024;

/// A finite set of `z_A` evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleCloud {
    pub points: Vec<HalfPlanePoint>,
    /// Unit vectors producing each point, when retained.
    pub generators: Option<Vec<Vec<f64>>>,
    pub matrix_digest: String,
    pub seed: u64,
}

impl SampleCloud {
    /// A cloud read back from storage, with no generator or matrix record.
    pub fn from_points(points: Vec<HalfPlanePoint>) -> Self {
        Self {
            points,
            generators: None,
            matrix_digest: String::new(),
            seed: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn without_generators(mut self) -> Self {
        self.generators = None;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Normalized standard Gaussian vectors.
    UniformSphere,
    /// Grids on the spans of coordinate-vector pairs.
    CoordinatePairs,
    /// Random directions in spans of pairs of real Schur vectors.
    EigenDirected,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::UniformSphere,
        Strategy::CoordinatePairs,
        Strategy::EigenDirected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::UniformSphere => "uniform-sphere",
            Strategy::CoordinatePairs => "coordinate-pairs",
            Strategy::EigenDirected => "eigen-directed",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = SrgError;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| SrgError::InvalidArgument(format!("unknown strategy `{s}`")))
    }
}

/// Samples `count` points of `G+(A)`. The output depends only on
/// `(A, count, strategy, seed)`: work is split into fixed chunks, each
/// drawing from its own stream, and chunks are concatenated in order.
pub fn srg_sample(a: &RealMatrix, count: usize, strategy: Strategy, seed: u64) -> Result<SampleCloud> {
    if count == 0 {
        return Err(SrgError::InvalidArgument("sample count must be at least 1".into()));
    }
    let n = a.n();
    let generators: Vec<Vec<f64>> = match strategy {
        Strategy::UniformSphere => {
            chunked(count, seed, streams::SAMPLE_BASE, |rng| gaussian_direction(rng, n))
        }
        Strategy::CoordinatePairs => coordinate_pairs(n, count),
        Strategy::EigenDirected => {
            let basis: Vec<Vec<f64>> = match real_schur(a) {
                Ok(schur) => (0..n).map(|j| schur.z.column(j)).collect(),
                Err(_) => (0..n).map(|j| unit_vector(n, j)).collect(),
            };
            chunked(count, seed, streams::SAMPLE_BASE * streams::EIGEN_DIRECTED, |rng| {
                if n == 1 {
                    return basis[0].clone();
                }
                let i = rng.random_range(0..n);
                let j = (i + rng.random_range(1..n)) % n;
                let theta = rng.random_range(0.0..PI);
                let (s, c) = theta.sin_cos();
                basis[i].iter().zip(&basis[j]).map(|(u, v)| c * u + s * v).collect()
            })
        }
    };
    let points = generators
        .par_iter()
        .map(|x| z_map(a, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleCloud {
        points,
        generators: Some(generators),
        matrix_digest: a.digest(),
        seed,
    })
}

fn chunked<F>(count: usize, seed: u64, base: u64, draw: F) -> Vec<Vec<f64>>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng::stream(seed, base + c as u64);
            let len = CHUNK.min(count - c * CHUNK);
            (0..len).map(|_| draw(&mut rng)).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn gaussian_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let len = norm(&x);
        if len > 1e-12 {
            return x.into_iter().map(|c| c / len).collect();
        }
    }
}

fn unit_vector(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

fn coordinate_pairs(n: usize, count: usize) -> Vec<Vec<f64>> {
    if n == 1 {
        return vec![vec![1.0]; count];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let per_pair = count.div_ceil(pairs.len());
    (0..count)
        .map(|k| {
            let (i, j) = pairs[k % pairs.len()];
            let theta = PI * (k / pairs.len()) as f64 / per_pair as f64;
            let (s, c) = theta.sin_cos();
            let mut x = vec![0.0; n];
            x[i] = c;
            x[j] = s;
            x
        })
        .collect()
}

/// Largest violation of `<u,v> = <Au,v> = <u,Av> = <Au,Av> = 0`, each term
/// relative to its natural scale.
pub fn span_orthogonality_residual(a: &RealMatrix, u: &[f64], v: &[f64]) -> f64 {
    let (au, av) = (a.mul_vec(u), a.mul_vec(v));
    let uv = norm(u) * norm(v);
    let an = a.frobenius_norm().max(f64::MIN_POSITIVE);
    [
        dot(u, v).abs() / uv,
        dot(&au, v).abs() / (an * uv),
        dot(u, &av).abs() / (an * uv),
        dot(&au, &av).abs() / (an * an * uv),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// `z_A(cos t * û + sin t * v̂)` for `t` on a uniform grid over `[0, pi/2]`.
///
/// Under the orthogonality conditions these points trace
/// `Arc_min(z_A(u), z_A(v))`.
pub fn span_arc_sample(a: &RealMatrix, u: &[f64], v: &[f64], count: usize) -> Result<SampleCloud> {
    let n = a.n();
    for w in [u, v] {
        if w.len() != n {
            return Err(SrgError::LengthMismatch(w.len(), n));
        }
    }
    let (nu, nv) = (norm(u), norm(v));
    if nu.is_nan() || nv.is_nan() || nu <= 1e-300 || nv <= 1e-300 {
        return Err(SrgError::ZeroVector);
    }
    if count == 0 {
        return Err(SrgError::InvalidArgument("sample count must be at least 1".into()));
    }
    let residual = span_orthogonality_residual(a, u, v);
    if residual.is_nan() || residual > SPAN_ORTHOGONALITY {
        return Err(SrgError::OrthogonalityViolated { residual });
    }
    let generators: Vec<Vec<f64>> = (0..count)
        .map(|k| {
            let t = if count == 1 {
                0.0
            } else {
                FRAC_PI_2 * k as f64 / (count - 1) as f64
            };
            let (s, c) = t.sin_cos();
            u.iter().zip(v).map(|(p, q)| c * p / nu + s * q / nv).collect()
        })
        .collect();
    let points = generators
        .iter()
        .map(|x| z_map(a, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleCloud {
        points,
        generators: Some(generators),
        matrix_digest: a.digest(),
        seed: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfplane::arc_min;

    fn p(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(re, im).unwrap()
    }

    #[test]
    fn scalar_matrix_is_a_point() {
        let a = RealMatrix::identity(4).scale(3.0);
        for strategy in Strategy::ALL {
            let cloud = srg_sample(&a, 100, strategy, 1).unwrap();
            assert_eq!(cloud.len(), 100);
            for z in &cloud.points {
                assert!(z.distance(&p(3.0, 0.0)) < 1e-14, "{strategy}: {z:?}");
            }
        }
    }

    #[test]
    fn diag_one_two_is_a_semicircle() {
        let a = RealMatrix::diag(&[1.0, 2.0]).unwrap();
        let cloud = srg_sample(&a, 10_000, Strategy::UniformSphere, 7).unwrap();
        for z in &cloud.points {
            let r = (z.re() - 1.5).hypot(z.im());
            assert!((r - 0.5).abs() <= 1e-9);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        for strategy in Strategy::ALL {
            let c1 = srg_sample(&a, 3000, strategy, 42).unwrap();
            let c2 = srg_sample(&a, 3000, strategy, 42).unwrap();
            assert_eq!(c1, c2);
        }
        let c3 = srg_sample(&a, 3000, Strategy::UniformSphere, 43).unwrap();
        assert_ne!(c3, srg_sample(&a, 3000, Strategy::UniformSphere, 42).unwrap());
    }

    #[test]
    fn generators_reproduce_points() {
        let a = RealMatrix::from_rows(&[
            vec![0.5, -1.0, 2.0],
            vec![0.0, 1.5, 1.0],
            vec![-1.0, 0.3, 0.2],
        ])
        .unwrap();
        let cloud = srg_sample(&a, 500, Strategy::EigenDirected, 3).unwrap();
        let gens = cloud.generators.as_ref().unwrap();
        for (x, z) in gens.iter().zip(&cloud.points) {
            assert!((norm(x) - 1.0).abs() < 1e-12);
            assert!(z_map(&a, x).unwrap().distance(z) <= 1e-12 * a.frobenius_norm());
        }
    }

    #[test]
    fn zero_count_is_rejected() {
        let a = RealMatrix::identity(2);
        assert!(srg_sample(&a, 0, Strategy::UniformSphere, 0).is_err());
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("sphere".parse::<Strategy>().is_err());
    }

    #[test]
    fn span_arc_of_diagonal() {
        let a = RealMatrix::diag(&[1.0, 2.0]).unwrap();
        let cloud = span_arc_sample(&a, &[1.0, 0.0], &[0.0, 1.0], 9).unwrap();
        assert_eq!(cloud.points[0], p(1.0, 0.0));
        assert!(cloud.points[8].distance(&p(2.0, 0.0)) < 1e-15);
        let arc = arc_min(p(1.0, 0.0), p(2.0, 0.0));
        for z in &cloud.points {
            assert!(arc.distance_to(*z) < 1e-12);
        }
        // Real parts sweep monotonically from 1 to 2.
        assert!(cloud.points.windows(2).all(|w| w[0].re() <= w[1].re()));

        let flat = RealMatrix::diag(&[2.0, 2.0]).unwrap();
        let cloud = span_arc_sample(&flat, &[1.0, 0.0], &[0.0, 1.0], 5).unwrap();
        assert!(cloud.points.iter().all(|z| z.distance(&p(2.0, 0.0)) < 1e-15));
    }

    #[test]
    fn span_arc_across_blocks() {
        let a = RealMatrix::from_rows(&[
            vec![1.0, 1.0, 0.0],
            vec![-1.0, 1.0, 0.0],
            vec![0.0, 0.0, 3.0],
        ])
        .unwrap();
        let cloud = span_arc_sample(&a, &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0], 50).unwrap();
        assert!(cloud.points[0].distance(&p(1.0, 1.0)) < 1e-15);
        let arc = arc_min(p(1.0, 1.0), p(3.0, 0.0));
        for z in &cloud.points {
            assert!(arc.distance_to(*z) < 1e-9);
        }
    }

    #[test]
    fn span_arc_preconditions() {
        let a = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert!(matches!(
            span_arc_sample(&a, &[1.0, 0.0], &[0.0, 1.0], 10),
            Err(SrgError::OrthogonalityViolated { .. })
        ));
        let id = RealMatrix::identity(2);
        assert_eq!(
            span_arc_sample(&id, &[0.0, 0.0], &[0.0, 1.0], 10),
            Err(SrgError::ZeroVector)
        );
    }
}
