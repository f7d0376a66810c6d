#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srg_core::linalg::{build_normal_matrix, RealMatrix, Spectrum};
use srg_core::HalfPlanePoint;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(re: f64, im: f64) -> HalfPlanePoint {
    HalfPlanePoint::new(re, im).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: f64) -> RealMatrix {
    let data = (0..n * n).map(|_| rng.random_range(-bound..bound)).collect();
    RealMatrix::new(n, data).unwrap()
}

/// A conjugate-closed spectrum of size `n`: some conjugate pairs with
/// imaginary parts in `[0.2, 5)` and the rest real, all with real parts in
/// `[-5, 5)`.
pub fn random_spectrum(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let pairs = rng.random_range(0..=n / 2);
    let mut eigs = Vec::with_capacity(n);
    for _ in 0..pairs {
        let z = Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(0.2..5.0));
        eigs.push(z);
        eigs.push(z.conj());
    }
    while eigs.len() < n {
        eigs.push(Complex64::new(rng.random_range(-5.0..5.0), 0.0));
    }
    eigs
}

pub fn random_normal(rng: &mut ChaCha8Rng, n: usize) -> (RealMatrix, Vec<Complex64>) {
    let eigs = random_spectrum(rng, n);
    let a = build_normal_matrix(&Spectrum::new(eigs.clone()).unwrap(), rng.random()).unwrap();
    (a, eigs)
}

/// Klein coordinates by composing the Cayley transform onto the unit
/// disk with the Poincaré-to-Klein map `w -> 2w / (1 + |w|^2)`.
pub fn klein_oracle(z: HalfPlanePoint) -> [f64; 2] {
    let z = Complex64::new(z.re(), z.im());
    let i = Complex64::i();
    let w = (z - i) / (z + i);
    let k = w * 2.0 / (1.0 + w.norm_sqr());
    [k.re, k.im]
}

pub fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Indices of the extreme points: endpoints of every ordered pair `(i, j)`
/// with all other points strictly to the left of the line `i -> j`.
/// Assumes general position.
pub fn brute_force_hull(points: &[[f64; 2]]) -> Vec<usize> {
    let m = points.len();
    if m <= 2 {
        return (0..m).collect();
    }
    let mut extreme = vec![false; m];
    for i in 0..m {
        for j in 0..m {
            if i != j
                && (0..m)
                    .filter(|&k| k != i && k != j)
                    .all(|k| cross(points[i], points[j], points[k]) > 0.0)
            {
                extreme[i] = true;
                extreme[j] = true;
            }
        }
    }
    (0..m).filter(|&i| extreme[i]).collect()
}

/// Largest pairwise distance under the best matching, by exhaustive
/// search over permutations of `b` (small inputs only).
pub fn matching_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    fn go(a: &[Complex64], b: &mut Vec<Complex64>, best: &mut f64, acc: f64) {
        if acc >= *best {
            return;
        }
        let Some((first, rest)) = a.split_first() else {
            *best = acc;
            return;
        };
        for k in 0..b.len() {
            let z = b.remove(k);
            go(rest, b, best, acc.max((first - z).norm()));
            b.insert(k, z);
        }
    }
    let mut best = f64::INFINITY;
    go(a, &mut b.to_vec(), &mut best, 0.0);
    best
}
