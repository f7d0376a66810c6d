//! Arc-edge polygons: hyperbolic convex hulls of finite point sets.

use crate::error::{Result, SrgError};
use crate::tolerance::Tolerances;

use super::{arc_min_with, klein_map, scale_of, HalfPlanePoint, KleinPoint, MinArc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonKind {
    Point,
    Arc,
    Region,
}

/// The hyperbolic convex hull of `input_points`.
///
/// `hull_vertices` are the extreme inputs in counterclockwise order of
/// their Klein images, starting at the image with the smallest `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcPolygon {
    input_points: Vec<HalfPlanePoint>,
    hull_vertices: Vec<HalfPlanePoint>,
    klein_hull: Vec<KleinPoint>,
    kind: PolygonKind,
    tol: Tolerances,
}

pub fn arc_polygon(points: &[HalfPlanePoint]) -> Result<ArcPolygon> {
    arc_polygon_with(points, &Tolerances::default())
}

pub fn arc_polygon_with(points: &[HalfPlanePoint], tol: &Tolerances) -> Result<ArcPolygon> {
    if points.is_empty() {
        return Err(SrgError::EmptyInput);
    }
    let scale = scale_of(points);
    let mut distinct: Vec<HalfPlanePoint> = Vec::with_capacity(points.len());
    for p in points {
        if !distinct.iter().any(|q| q.distance(p) <= tol.exact * scale) {
            distinct.push(*p);
        }
    }

    let mut mapped: Vec<(KleinPoint, HalfPlanePoint)> =
        distinct.iter().map(|&z| (klein_map(z), z)).collect();
    mapped.sort_by(|a, b| {
        a.0.u()
            .total_cmp(&b.0.u())
            .then_with(|| a.0.v().total_cmp(&b.0.v()))
    });

    let hull = if mapped.len() == 1 {
        mapped
    } else {
        monotone_chain(&mapped, tol.exact)
    };
    let kind = match hull.len() {
        1 => PolygonKind::Point,
        2 => PolygonKind::Arc,
        _ => PolygonKind::Region,
    };
    let (klein_hull, hull_vertices) = hull.into_iter().unzip();
    Ok(ArcPolygon {
        input_points: points.to_vec(),
        hull_vertices,
        klein_hull,
        kind,
        tol: *tol,
    })
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain over points sorted by `(u, v)`. Turns with a
/// cross product at or below `eps` count as collinear and are dropped, so
/// every retained turn is strictly counterclockwise.
fn monotone_chain<T: Copy>(sorted: &[(KleinPoint, T)], eps: f64) -> Vec<(KleinPoint, T)> {
    let mut lower: Vec<(KleinPoint, T)> = Vec::with_capacity(sorted.len());
    for &p in sorted {
        while lower.len() >= 2
            && cross(lower[lower.len() - 2].0.xy(), lower[lower.len() - 1].0.xy(), p.0.xy())
                <= eps
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(KleinPoint, T)> = Vec::with_capacity(sorted.len());
    for &p in sorted.iter().rev() {
        while upper.len() >= 2
            && cross(upper[upper.len() - 2].0.xy(), upper[upper.len() - 1].0.xy(), p.0.xy())
                <= eps
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.is_empty() {
        // All points coincide in the Klein disk.
        lower.push(sorted[0]);
    }
    lower
}

impl ArcPolygon {
    pub fn input_points(&self) -> &[HalfPlanePoint] {
        &self.input_points
    }

    pub fn hull_vertices(&self) -> &[HalfPlanePoint] {
        &self.hull_vertices
    }

    pub fn klein_hull(&self) -> &[KleinPoint] {
        &self.klein_hull
    }

    pub fn kind(&self) -> PolygonKind {
        self.kind
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    /// Point location through the Klein image, with the membership
    /// tolerance applied as a Euclidean distance in the disk.
    pub fn contains(&self, w: HalfPlanePoint) -> bool {
        self.klein_excess(klein_map(w)) <= self.tol.membership
    }

    /// How far `k` lies outside the Klein hull; zero or negative inside.
    fn klein_excess(&self, k: KleinPoint) -> f64 {
        let q = k.xy();
        match self.kind {
            PolygonKind::Point => distance(q, self.klein_hull[0].xy()),
            PolygonKind::Arc => {
                segment_distance(q, self.klein_hull[0].xy(), self.klein_hull[1].xy())
            }
            PolygonKind::Region => {
                let m = self.klein_hull.len();
                (0..m)
                    .map(|i| {
                        let a = self.klein_hull[i].xy();
                        let b = self.klein_hull[(i + 1) % m].xy();
                        -cross(a, b, q) / distance(a, b)
                    })
                    .fold(f64::NEG_INFINITY, f64::max)
            }
        }
    }

    /// Closed boundary curve `Arc_min(v_1, v_2), ..., Arc_min(v_q, v_1)`.
    pub fn boundary(&self) -> Result<Vec<MinArc>> {
        match self.kind {
            PolygonKind::Point => Err(SrgError::DegeneratePolygon("single point")),
            PolygonKind::Arc => Err(SrgError::DegeneratePolygon("single arc")),
            PolygonKind::Region => {
                let v = &self.hull_vertices;
                Ok((0..v.len())
                    .map(|i| arc_min_with(v[i], v[(i + 1) % v.len()], &self.tol))
                    .collect())
            }
        }
    }

    /// The arcs making up the polygon's outline, for any kind: the boundary
    /// of a region, the single arc, or a degenerate arc at the lone vertex.
    pub fn outline(&self) -> Vec<MinArc> {
        match self.kind {
            PolygonKind::Point => vec![arc_min_with(
                self.hull_vertices[0],
                self.hull_vertices[0],
                &self.tol,
            )],
            PolygonKind::Arc => vec![arc_min_with(
                self.hull_vertices[0],
                self.hull_vertices[1],
                &self.tol,
            )],
            PolygonKind::Region => self.boundary().expect("region has a boundary"),
        }
    }

    /// Half-plane Euclidean distance from `w` to the polygon; zero inside.
    pub fn distance_to(&self, w: HalfPlanePoint) -> f64 {
        if self.kind == PolygonKind::Region && self.klein_excess(klein_map(w)) <= 0.0 {
            return 0.0;
        }
        self.outline()
            .iter()
            .map(|arc| arc.distance_to(w))
            .fold(f64::INFINITY, f64::min)
    }
}

fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn segment_distance(q: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    if len2 == 0.0 {
        return distance(q, a);
    }
    let t = (((q[0] - a[0]) * d[0] + (q[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0);
    distance(q, [a[0] + t * d[0], a[1] + t * d[1]])
}

pub fn polygon_contains(poly: &ArcPolygon, w: HalfPlanePoint) -> bool {
    poly.contains(w)
}

pub fn polygon_boundary(poly: &ArcPolygon) -> Result<Vec<MinArc>> {
    poly.boundary()
}
