mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use srg_core::halfplane::{arc_min, geodesic_through, klein_inverse, klein_map};
use srg_core::io::{parse_cloud_csv, parse_matrix, parse_region_json};
use srg_core::linalg::{eigenvalues, random_orthogonal, real_schur, Spectrum};
use srg_core::regions::{srg_2x2, srg_normal, srg_symmetric, SrgRegion};
use srg_core::{
    arc_polygon, build_normal_matrix, span_arc_sample, srg_sample, z_map, HalfPlanePoint,
    RealMatrix, Strategy as Sampling,
};

use common::*;

fn upper_point() -> impl Strategy<Value = HalfPlanePoint> {
    (-10.0..10.0f64, 0.0..10.0f64).prop_map(|(re, im)| p(re, im))
}

fn interior_point() -> impl Strategy<Value = HalfPlanePoint> {
    (-10.0..10.0f64, 0.01..10.0f64).prop_map(|(re, im)| p(re, im))
}

fn square(n: usize) -> impl Strategy<Value = RealMatrix> {
    proptest::collection::vec(-5.0..5.0f64, n * n)
        .prop_map(move |data| RealMatrix::new(n, data).unwrap())
}

fn matrix(max_n: usize) -> impl Strategy<Value = RealMatrix> {
    (1..=max_n).prop_flat_map(square)
}

fn matrix_and_vector(max_n: usize) -> impl Strategy<Value = (RealMatrix, Vec<f64>)> {
    matrix(max_n).prop_flat_map(|a| {
        let n = a.n();
        (
            Just(a),
            proptest::collection::vec(-1.0..1.0f64, n)
                .prop_filter("nonzero", |x| x.iter().any(|c| c.abs() > 1e-3)),
        )
    })
}

fn spectrum(max_n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_spectrum(&mut rng(seed), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn z_map_is_scale_invariant((a, x) in matrix_and_vector(6)) {
        let z = z_map(&a, &x).unwrap();
        for c in [-2.0, 0.5, 10.0] {
            let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
            let zc = z_map(&a, &cx).unwrap();
            prop_assert!(zc.distance(&z) <= 1e-12 * a.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn z_map_matches_polar_form((a, x) in matrix_and_vector(6)) {
        let ax = a.mul_vec(&x);
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let nax = ax.iter().map(|v| v * v).sum::<f64>().sqrt();
        let z = z_map(&a, &x).unwrap();
        prop_assert!((z.abs() - nax / nx).abs() <= 1e-12 * a.frobenius_norm().max(1.0));
        if nax > 1e-6 {
            let cos = ax.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() / (nax * nx);
            prop_assert!((z.re() / z.abs() - cos).abs() <= 1e-12);
        }
    }

    #[test]
    fn z_map_commutes_with_orthogonal_conjugation((a, x) in matrix_and_vector(6), seed: u64) {
        let q = random_orthogonal(a.n(), seed);
        let z = z_map(&a, &x).unwrap();
        let zq = z_map(&a.conjugate_by(&q), &q.mul_vec(&x)).unwrap();
        prop_assert!(z.distance(&zq) <= 1e-12 * a.frobenius_norm().max(1.0));
    }

    #[test]
    fn eigen_solver_recovers_built_spectra(eigs in spectrum(8), seed: u64) {
        let a = build_normal_matrix(&Spectrum::new(eigs.clone()).unwrap(), seed).unwrap();
        let found = eigenvalues(&a).unwrap();
        prop_assert!(matching_distance(&eigs, found.eigenvalues()) <= 1e-8);
    }

    #[test]
    fn schur_form_reconstructs(a in matrix(7)) {
        let s = real_schur(&a).unwrap();
        let back = s.t.conjugate_by(&s.z);
        prop_assert!(back.sub(&a).frobenius_norm() <= 1e-12 * a.frobenius_norm().max(1.0));
        let zt = s.z.transpose().matmul(&s.z);
        prop_assert!(zt.sub(&RealMatrix::identity(a.n())).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn two_by_two_samples_lie_on_the_circles(a in square(2), seed: u64) {
        let region = srg_2x2(&a).unwrap();
        let cloud = srg_sample(&a, 500, Sampling::UniformSphere, seed).unwrap();
        for &w in &cloud.points {
            prop_assert!(region.distance_to(w) <= 1e-9 * a.frobenius_norm());
        }
    }

    #[test]
    fn sampling_is_deterministic(a in matrix(5), seed: u64, count in 1usize..3000) {
        for strategy in Sampling::ALL {
            let c1 = srg_sample(&a, count, strategy, seed).unwrap();
            let c2 = srg_sample(&a, count, strategy, seed).unwrap();
            prop_assert_eq!(c1.len(), count);
            prop_assert_eq!(c1, c2);
        }
    }

    #[test]
    fn generators_reproduce_cloud_points(a in matrix(6), seed: u64) {
        let cloud = srg_sample(&a, 200, Sampling::UniformSphere, seed).unwrap();
        for (x, z) in cloud.generators.as_ref().unwrap().iter().zip(&cloud.points) {
            prop_assert!(z_map(&a, x).unwrap().distance(z) <= 1e-12 * a.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn span_samples_follow_the_arc(eigs in spectrum(6), seed: u64) {
        let a = build_normal_matrix(&Spectrum::new(eigs).unwrap(), seed).unwrap();
        let blocks = real_schur(&a).unwrap().blocks();
        prop_assume!(blocks.len() >= 2);
        let (u, v) = (&blocks[0].basis[0], &blocks[blocks.len() - 1].basis[0]);
        let cloud = span_arc_sample(&a, u, v, 40).unwrap();
        let arc = arc_min(z_map(&a, u).unwrap(), z_map(&a, v).unwrap());
        let scale = a.frobenius_norm().max(1.0);
        for &w in &cloud.points {
            prop_assert!(arc.distance_to(w) <= 1e-9 * scale);
        }
    }

    #[test]
    fn klein_round_trip(z in upper_point()) {
        let back = klein_inverse(klein_map(z)).unwrap();
        prop_assert!(back.distance(&z) <= 1e-12 * z.abs().max(1.0));
        let k = klein_map(z);
        let o = klein_oracle(z);
        prop_assert!((k.u() - o[0]).abs() <= 1e-12 && (k.v() - o[1]).abs() <= 1e-12);
    }

    #[test]
    fn arcs_lie_on_their_geodesic(z1 in upper_point(), z2 in upper_point(), s in 0.0..=1.0f64) {
        prop_assume!(z1.distance(&z2) > 1e-6);
        let w = arc_min(z1, z2).point_at(s).unwrap();
        let scale = z1.abs().max(z2.abs()).max(1.0);
        let g = geodesic_through(z1, z2).unwrap();
        prop_assert!(g.distance_to(w.to_complex()) <= 1e-9 * scale);
    }

    #[test]
    fn hull_matches_brute_force(points in proptest::collection::vec(interior_point(), 1..=12)) {
        let klein: Vec<[f64; 2]> = points.iter().map(|&z| klein_oracle(z)).collect();
        // Skip nearly degenerate configurations, where the strict oracle and
        // the tolerant hull may legitimately disagree.
        for i in 0..klein.len() {
            for j in 0..klein.len() {
                for k in 0..klein.len() {
                    if i != j && j != k && i != k {
                        prop_assume!(cross(klein[i], klein[j], klein[k]).abs() > 1e-9);
                    }
                }
            }
        }
        let mut expected: Vec<usize> = brute_force_hull(&klein);
        let poly = arc_polygon(&points).unwrap();
        let mut found: Vec<usize> = poly
            .hull_vertices()
            .iter()
            .map(|v| points.iter().position(|z| z == v).unwrap())
            .collect();
        expected.sort();
        found.sort();
        prop_assert_eq!(expected, found);
        for &z in &points {
            prop_assert!(poly.contains(z));
        }
    }

    #[test]
    fn polygon_is_hyperbolically_convex(
        points in proptest::collection::vec(interior_point(), 1..=8),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
        s in 0.0..=1.0f64,
    ) {
        let poly = arc_polygon(&points).unwrap();
        let w = arc_min(*i.get(&points), *j.get(&points)).point_at(s).unwrap();
        prop_assert!(poly.contains(w));
    }

    #[test]
    fn multiplicity_does_not_change_the_region(eigs in spectrum(5), seed: u64) {
        let mut doubled = eigs.clone();
        doubled.extend(eigs.iter().copied());
        let a = build_normal_matrix(&Spectrum::new(eigs).unwrap(), seed).unwrap();
        let b = build_normal_matrix(&Spectrum::new(doubled).unwrap(), seed).unwrap();
        let (ha, hb) = (srg_normal(&a).unwrap(), srg_normal(&b).unwrap());
        prop_assert_eq!(ha.hull_vertices().len(), hb.hull_vertices().len());
        for v in ha.hull_vertices() {
            let d = hb.hull_vertices().iter().map(|w| w.distance(v)).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-9 * v.abs().max(1.0));
        }
    }

    #[test]
    fn normal_hull_is_orthogonally_invariant(eigs in spectrum(7), seed: u64, qseed: u64) {
        let a = build_normal_matrix(&Spectrum::new(eigs).unwrap(), seed).unwrap();
        let b = a.conjugate_by(&random_orthogonal(a.n(), qseed));
        let (ha, hb) = (srg_normal(&a).unwrap(), srg_normal(&b).unwrap());
        prop_assert_eq!(ha.hull_vertices().len(), hb.hull_vertices().len());
        for v in ha.hull_vertices() {
            let d = hb.hull_vertices().iter().map(|w| w.distance(v)).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-8);
        }
    }

    #[test]
    fn symmetric_eigenvalues_are_members(values in proptest::collection::vec(-5.0..5.0f64, 1..6), seed: u64) {
        let eigs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let q = build_normal_matrix(&Spectrum::new(eigs).unwrap(), seed).unwrap();
        let n = q.n();
        let sym = RealMatrix::new(n, (0..n * n).map(|k| 0.5 * (q[(k / n, k % n)] + q[(k % n, k / n)])).collect()).unwrap();
        let region = srg_symmetric(&sym).unwrap();
        for &v in &values {
            let w = HalfPlanePoint::real(v).unwrap();
            // Eigenvalues sit on region boundaries; allow solver error.
            prop_assert!(region.contains(w) || region.defect(w) <= 1e-9);
        }
        prop_assert!(matches!(region, SrgRegion::SinglePoint(_) | SrgRegion::DiskDiff(_)));
    }

    #[test]
    fn parsers_never_panic(text in ".{0,200}") {
        let _ = parse_matrix(&text);
        let _ = parse_region_json(&text);
        let _ = parse_cloud_csv(&text);
    }

    #[test]
    fn structured_inputs_never_panic(
        n in -3i64..5,
        data in proptest::collection::vec(prop_oneof![Just(f64::NAN), Just(1e308), -1e3..1e3f64], 0..20),
        kind in prop::sample::select(vec!["two_circles", "polygon", "disk_diff", "point", "cloud"]),
    ) {
        let nums = data.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let _ = parse_matrix(&format!(r#"{{"n": {n}, "data": [{nums}]}}"#));
        let _ = parse_matrix(&format!(r#"{{"blocks": [{{"n": {n}, "data": [{nums}]}}]}}"#));
        let _ = parse_matrix(&nums);
        let pairs = data.chunks(2).map(|c| format!("[{}]", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))).collect::<Vec<_>>().join(",");
        for field in ["center", "vertices", "outer", "removed", "point", "points"] {
            let _ = parse_region_json(&format!(r#"{{"kind": "{kind}", "{field}": [{pairs}], "radius": {n}, "delta": {n}}}"#));
        }
        let _ = parse_cloud_csv(&format!("re,im\n{}", data.chunks(2).map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("\n")));
    }
}
