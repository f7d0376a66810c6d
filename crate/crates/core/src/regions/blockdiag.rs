use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::halfplane::{arc_polygon_with, klein_inverse, ArcPolygon, HalfPlanePoint, KleinPoint};
use crate::linalg::{assemble_block_diag, is_normal, BlockSpec};
use crate::rng::{self, streams};
use crate::tolerance::{Tolerances, STRUCTURE};

use super::{exact::srg_normal, SrgRegion};

#[derive(Debug, Clone, PartialEq)]
pub enum BlockDiagVerdict {
    /// One point of each block's region whose polygon contains the target.
    Certified(Vec<HalfPlanePoint>),
    NotFound,
}

impl BlockDiagVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, BlockDiagVerdict::Certified(_))
    }
}

/// Searches for `z_i` in `G+(A_i)`, one per block, with `w` in
/// `Poly(z_1, ..., z_m)`; `G+(Diag(A_1, ..., A_m))` is the union of all
/// such polygons.
///
/// Tries at most `budget` tuples: first every block's own region, then
/// representative tuples in mixed-radix order, then random points of the
/// regions. `tol` is the polygon membership tolerance. A certificate is
/// sound up to that tolerance; `NotFound` only means the search gave up.
pub fn srg_blockdiag_contains(
    blocks: &[SrgRegion],
    w: HalfPlanePoint,
    budget: usize,
    seed: u64,
    tol: f64,
) -> BlockDiagVerdict {
    let candidates: Vec<Vec<HalfPlanePoint>> =
        blocks.iter().map(SrgRegion::representatives).collect();
    if blocks.is_empty() || candidates.iter().any(Vec::is_empty) {
        return BlockDiagVerdict::NotFound;
    }
    let tolerances = Tolerances {
        membership: tol,
        ..Tolerances::default()
    };
    let certifies = |tuple: &[HalfPlanePoint]| {
        arc_polygon_with(tuple, &tolerances)
            .map(|poly| poly.contains(w))
            .unwrap_or(false)
    };

    // w itself may serve as the representative of a block containing it.
    if let Some(i) = blocks.iter().position(|b| b.contains(w)) {
        let mut tuple: Vec<HalfPlanePoint> = candidates.iter().map(|c| c[0]).collect();
        tuple[i] = w;
        return BlockDiagVerdict::Certified(tuple);
    }

    let total: usize = candidates
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .unwrap_or(usize::MAX);
    let enumerated = total.min(budget.div_ceil(2));
    let mut digits = vec![0usize; candidates.len()];
    for _ in 0..enumerated {
        let tuple: Vec<HalfPlanePoint> = digits.iter().zip(&candidates).map(|(&d, c)| c[d]).collect();
        if certifies(&tuple) {
            return BlockDiagVerdict::Certified(tuple);
        }
        for (d, c) in digits.iter_mut().zip(&candidates) {
            *d += 1;
            if *d < c.len() {
                break;
            }
            *d = 0;
        }
    }

    let mut rng = rng::stream(seed, streams::BLOCKDIAG_SEARCH);
    for _ in enumerated..budget {
        let tuple: Vec<HalfPlanePoint> = blocks
            .iter()
            .zip(&candidates)
            .map(|(b, c)| random_member(b, c, &mut rng))
            .collect();
        if certifies(&tuple) {
            return BlockDiagVerdict::Certified(tuple);
        }
    }
    BlockDiagVerdict::NotFound
}

fn random_member(
    region: &SrgRegion,
    candidates: &[HalfPlanePoint],
    rng: &mut ChaCha8Rng,
) -> HalfPlanePoint {
    let fallback = candidates[rng.random_range(0..candidates.len())];
    match region {
        SrgRegion::TwoCircles(c) => {
            let t = rng.random_range(0.0..2.0 * PI);
            c.point_at(t, rng.random_bool(0.5)).unwrap_or(fallback)
        }
        SrgRegion::Polygon(p) => random_polygon_point(p, rng).unwrap_or(fallback),
        SrgRegion::DiskDiff(d) => {
            // Every removed circle and the outer circle lie in the region.
            let mut circles = d.removed().to_vec();
            circles.push(d.outer());
            let (a, b) = circles[rng.random_range(0..circles.len())];
            let t = rng.random_range(0.0..PI);
            let (s, co) = t.sin_cos();
            HalfPlanePoint::new(0.5 * (a + b) + 0.5 * (b - a) * co, 0.5 * (b - a) * s)
                .unwrap_or(fallback)
        }
        SrgRegion::SinglePoint(_) | SrgRegion::Cloud { .. } => fallback,
    }
}

/// A random convex combination of the hull's Klein vertices.
fn random_polygon_point(p: &ArcPolygon, rng: &mut ChaCha8Rng) -> Option<HalfPlanePoint> {
    let weights: Vec<f64> = p
        .klein_hull()
        .iter()
        .map(|_| -rng.random_range(f64::MIN_POSITIVE..1.0).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    let (u, v) = p
        .klein_hull()
        .iter()
        .zip(&weights)
        .fold((0.0, 0.0), |(u, v), (k, wt)| (u + wt * k.u(), v + wt * k.v()));
    klein_inverse(KleinPoint::new(u / total, v / total).ok()?).ok()
}

/// The exact region of `Diag(A_1, ..., A_m)` when every block is normal,
/// in which case the assembled matrix is normal too. `None` otherwise.
pub fn srg_blockdiag_exact(spec: &BlockSpec) -> Result<Option<ArcPolygon>> {
    if !spec.blocks().iter().all(|b| is_normal(b, STRUCTURE)) {
        return Ok(None);
    }
    srg_normal(&assemble_block_diag(spec)).map(Some)
}
