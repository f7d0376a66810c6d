//! Verification suites behind `srg verify`.

use std::io::Write;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use srg_core::halfplane::{arc_min, arc_polygon, klein_inverse, klein_map, HalfPlanePoint, PolygonKind};
use srg_core::io::MatrixInput;
use srg_core::linalg::{
    eigenvalues, is_normal, is_symmetric, normality_defect, real_schur, RealMatrix,
};
use srg_core::regions::{
    upper_spectrum, spectrum_inclusion_report, srg_2x2, srg_blockdiag_contains,
    srg_blockdiag_exact, srg_normal, srg_symmetric, verify_cloud_in_region, InclusionStatus,
    SpectrumReport, SrgRegion,
};
use srg_core::rng::stream;
use srg_core::sampling::{span_arc_sample, srg_sample, Strategy};
use srg_core::tolerance::{EXACT, STRUCTURE};

use crate::cli::{Suite, VerifyArgs};
use crate::commands::read_matrix;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    pub metric: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Record {
    fn measured(name: impl Into<String>, metric: f64, tolerance: f64) -> Self {
        let status = if metric <= tolerance { Status::Pass } else { Status::Fail };
        Self { name: name.into(), status, metric: Some(metric), tolerance, detail: None }
    }

    fn with_status(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            metric: None,
            tolerance: 0.0,
            detail: Some(detail.into()),
        }
    }

    fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub records: Vec<Record>,
    /// True iff no record failed.
    pub overall: bool,
}

impl VerifyReport {
    fn new(suite: Suite, seed: u64, records: Vec<Record>) -> Self {
        let overall = records.iter().all(|r| r.status != Status::Fail);
        let suite = format!("{suite:?}").to_lowercase();
        Self { suite, seed, records, overall }
    }
}

pub fn run(args: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Input(format!("--tol must be positive, got {}", args.tol)));
    }
    let input = match (&args.matrix, args.suite) {
        (Some(path), _) => Some(read_matrix(path)?),
        (None, Suite::Geometry) => None,
        (None, suite) => {
            return Err(CliError::Input(format!(
                "suite `{}` needs --matrix",
                format!("{suite:?}").to_lowercase()
            )))
        }
    };
    let report = verify(args.suite, input.as_ref(), args.seed, args.tol)?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    out.write_all(text.as_bytes())
        .and_then(|()| out.write_all(b"\n"))
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    if report.overall {
        Ok(())
    } else {
        Err(CliError::Failed(format!("suite `{}` failed", report.suite)))
    }
}

/// Runs `suite`. An explicitly named suite that does not apply to the
/// matrix fails; under `all` it is recorded as skipped.
pub fn verify(
    suite: Suite,
    input: Option<&MatrixInput>,
    seed: u64,
    tol: f64,
) -> Result<VerifyReport, CliError> {
    let mut records = Vec::new();
    match (suite, input) {
        (Suite::Geometry, _) => geometry(seed, &mut records),
        (Suite::All, input) => {
            geometry(seed, &mut records);
            if let Some(input) = input {
                for each in [Suite::Twocircles, Suite::Normal, Suite::Symmetric, Suite::Blockdiag, Suite::Spectrum] {
                    matrix_suite(each, input, seed, tol, false, &mut records)?;
                }
            }
        }
        (suite, Some(input)) => matrix_suite(suite, input, seed, tol, true, &mut records)?,
        (_, None) => unreachable!("matrix presence is checked by the caller"),
    }
    Ok(VerifyReport::new(suite, seed, records))
}

fn matrix_suite(
    suite: Suite,
    input: &MatrixInput,
    seed: u64,
    tol: f64,
    explicit: bool,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let a = &input.matrix;
    let inapplicable = |name: &str, why: String| {
        let status = if explicit { Status::Fail } else { Status::Skipped };
        Record::with_status(name, status, why)
    };
    match suite {
        Suite::Twocircles if a.n() != 2 => records.push(inapplicable(
            "twocircles",
            format!("needs a 2x2 matrix, got {0}x{0}", a.n()),
        )),
        Suite::Twocircles => two_circles(a, seed, tol, records)?,
        Suite::Normal => normal(a, seed, tol, explicit, records)?,
        Suite::Symmetric if !is_symmetric(a) => records.push(inapplicable(
            "symmetric",
            srg_core::SrgError::NotSymmetric { defect: a.asymmetry() }.to_string(),
        )),
        Suite::Symmetric => symmetric(a, seed, tol, records)?,
        Suite::Blockdiag => match &input.blocks {
            Some(_) => blockdiag(input, seed, tol, records)?,
            None => records.push(inapplicable(
                "blockdiag",
                "matrix file has no `blocks` field".into(),
            )),
        },
        Suite::Spectrum => spectrum(a, records)?,
        Suite::Geometry | Suite::All => unreachable!("not a matrix suite"),
    }
    Ok(())
}

const CLOUD_SIZE: usize = 10_000;
const NORMAL_CLOUD_SIZE: usize = 5_000;

fn cloud_record(
    name: &str,
    a: &RealMatrix,
    region: &SrgRegion,
    count: usize,
    seed: u64,
    tol: f64,
) -> Result<Record, CliError> {
    let cloud = srg_sample(a, count, Strategy::UniformSphere, seed)?;
    let report = verify_cloud_in_region(&cloud, region, tol);
    let mut record = Record::measured(name, report.max_excess / region.scale(), tol)
        .detail(format!("{} of {} samples outside", report.violations, report.checked));
    // Points the region's own test accepts never fail.
    if report.violations == 0 {
        record.status = Status::Pass;
    }
    Ok(record)
}

fn two_circles(a: &RealMatrix, seed: u64, tol: f64, records: &mut Vec<Record>) -> Result<(), CliError> {
    let region = SrgRegion::TwoCircles(srg_2x2(a)?);
    records.push(cloud_record("twocircles.cloud_on_circles", a, &region, CLOUD_SIZE, seed, tol)?);
    Ok(())
}

fn normal(
    a: &RealMatrix,
    seed: u64,
    tol: f64,
    explicit: bool,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let relative_defect = normality_defect(a) / a.frobenius_norm().powi(2).max(f64::MIN_POSITIVE);
    if !is_normal(a, STRUCTURE) {
        let status = if explicit { Status::Fail } else { Status::Skipped };
        let mut record = Record::measured("normal.normality", relative_defect, STRUCTURE);
        record.status = status;
        records.push(record.detail(
            srg_core::SrgError::NotNormal { defect: normality_defect(a) }.to_string(),
        ));
        return Ok(());
    }
    records.push(Record::measured("normal.normality", relative_defect, STRUCTURE));
    let poly = srg_normal(a)?;
    let region = SrgRegion::Polygon(poly.clone());
    records.push(cloud_record("normal.cloud_inclusion", a, &region, NORMAL_CLOUD_SIZE, seed, tol)?);

    let scale = a.frobenius_norm().max(1.0);
    let spectrum = eigenvalues(a)?;
    let worst = upper_spectrum(&spectrum)
        .iter()
        .map(|&z| if poly.contains(z) { 0.0 } else { poly.distance_to(z) / scale })
        .fold(0.0, f64::max);
    records.push(Record::measured("normal.eigenvalues_in_polygon", worst, tol));

    if poly.kind() == PolygonKind::Point {
        records.push(Record::with_status(
            "normal.boundary_coverage",
            Status::Skipped,
            "the region is a single point",
        ));
        return Ok(());
    }
    let blocks = real_schur(a)?.blocks();
    let vector_for = |v: HalfPlanePoint| {
        blocks
            .iter()
            .min_by(|x, y| {
                let d = |b: &srg_core::linalg::SchurBlock| (b.eigenvalue - v.to_complex()).norm();
                d(x).total_cmp(&d(y))
            })
            .map(|b| b.basis[0].clone())
            .expect("a nonempty matrix has Schur blocks")
    };
    let mut worst = 0.0_f64;
    let outline = poly.outline();
    for arc in &outline {
        let (u, v) = (vector_for(arc.start()), vector_for(arc.end()));
        let span = span_arc_sample(a, &u, &v, 50)?;
        for &w in &span.points {
            worst = worst.max(arc.distance_to(w) / scale);
        }
        let ends = [span.points[0], span.points[span.points.len() - 1]];
        worst = worst.max(ends[0].distance(&arc.start()) / scale);
        worst = worst.max(ends[1].distance(&arc.end()) / scale);
    }
    records.push(
        Record::measured("normal.boundary_coverage", worst, 1e-8)
            .detail(format!("{} boundary arcs traced by invariant-subspace span arcs", outline.len())),
    );
    Ok(())
}

fn symmetric(a: &RealMatrix, seed: u64, tol: f64, records: &mut Vec<Record>) -> Result<(), CliError> {
    records.push(Record::measured("symmetric.symmetry", a.asymmetry() / a.frobenius_norm().max(1.0), STRUCTURE));
    let region = srg_symmetric(a)?;
    records.push(cloud_record("symmetric.cloud_membership", a, &region, CLOUD_SIZE, seed, tol)?);
    if let SrgRegion::DiskDiff(d) = &region {
        let cloud = srg_sample(a, CLOUD_SIZE, Strategy::UniformSphere, seed)?;
        let worst = cloud
            .points
            .iter()
            .map(|&w| d.penetration(w) / d.scale())
            .fold(0.0, f64::max);
        records.push(Record::measured("symmetric.removed_disk_penetration", worst, tol));
    }
    Ok(())
}

const BLOCKDIAG_SAMPLES: usize = 500;
const BLOCKDIAG_BUDGET: usize = 1_000;

fn blockdiag(input: &MatrixInput, seed: u64, tol: f64, records: &mut Vec<Record>) -> Result<(), CliError> {
    let spec = input.blocks.as_ref().expect("caller checked blocks");
    let mut regions = Vec::with_capacity(spec.blocks().len());
    for (i, block) in spec.blocks().iter().enumerate() {
        let exact = crate::commands::exact_region(&MatrixInput { matrix: block.clone(), blocks: None })?;
        let region = match exact {
            Some(region) => region,
            None => SrgRegion::cloud(
                srg_sample(block, CLOUD_SIZE, Strategy::EigenDirected, seed.wrapping_add(i as u64))?,
                block,
            ),
        };
        regions.push(region);
    }
    let kinds: Vec<&str> = regions.iter().map(SrgRegion::kind_name).collect();

    if let Some(poly) = srg_blockdiag_exact(spec)? {
        let region = SrgRegion::Polygon(poly);
        records.push(
            cloud_record("blockdiag.exact_route", &input.matrix, &region, NORMAL_CLOUD_SIZE, seed, tol)?
                .detail("all blocks normal; checked against the assembled normal matrix"),
        );
    }

    let cloud = srg_sample(&input.matrix, BLOCKDIAG_SAMPLES, Strategy::UniformSphere, seed)?;
    let certified = cloud
        .points
        .iter()
        .enumerate()
        .filter(|(i, &w)| {
            srg_blockdiag_contains(&regions, w, BLOCKDIAG_BUDGET, seed.wrapping_add(*i as u64), tol)
                .is_certified()
        })
        .count();
    let missing = cloud.points.len() - certified;
    let status = if missing == 0 { Status::Pass } else { Status::Unverified };
    records.push(Record {
        name: "blockdiag.certification".into(),
        status,
        metric: Some(missing as f64),
        tolerance: 0.0,
        detail: Some(format!(
            "{certified} of {} samples certified; block regions: {}",
            cloud.points.len(),
            kinds.join(", ")
        )),
    });
    Ok(())
}

fn spectrum(a: &RealMatrix, records: &mut Vec<Record>) -> Result<(), CliError> {
    match spectrum_inclusion_report(a)? {
        SpectrumReport::Skipped { n } => records.push(Record::with_status(
            "spectrum.inclusion",
            Status::Skipped,
            format!("n = {n}: inclusion is only asserted for n = 1 and n >= 3"),
        )),
        SpectrumReport::Checked(entries) => {
            let tolerance = 1e-8 * a.frobenius_norm().max(1.0);
            for e in entries {
                let name = format!("spectrum.eigenvalue({},{})", e.eigenvalue.re, e.eigenvalue.im);
                let status = match e.status {
                    InclusionStatus::Contained => Status::Pass,
                    InclusionStatus::NotContained => Status::Fail,
                    InclusionStatus::Unverified => Status::Unverified,
                };
                let detail = match e.status {
                    InclusionStatus::Unverified => Some("complex eigenvalue of a non-normal matrix".into()),
                    _ => None,
                };
                records.push(Record { name, status, metric: e.metric, tolerance, detail });
            }
        }
    }
    Ok(())
}

const GEOMETRY_TRIALS: usize = 1_000;

fn random_point(rng: &mut ChaCha8Rng) -> HalfPlanePoint {
    HalfPlanePoint::new(rng.random_range(-10.0..10.0), 10.0 - rng.random_range(0.0..10.0))
        .expect("finite upper half-plane point")
}

/// Klein image through the Cayley transform `w = (z - i) / (z + i)`
/// followed by `2w / (1 + |w|^2)`.
fn klein_reference(z: HalfPlanePoint) -> [f64; 2] {
    let z = z.to_complex();
    let i = Complex64::new(0.0, 1.0);
    let w = (z - i) / (z + i);
    let s = 2.0 / (1.0 + w.norm_sqr());
    [s * w.re, s * w.im]
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Indices of hull vertices: endpoints of pairs `(i, j)` with every other
/// point strictly left of `i -> j` or strictly inside the segment.
fn brute_force_hull(points: &[[f64; 2]]) -> Vec<usize> {
    let m = points.len();
    if m == 1 {
        return vec![0];
    }
    let mut vertex = vec![false; m];
    for i in 0..m {
        for j in (0..m).filter(|&j| j != i) {
            let (a, b) = (points[i], points[j]);
            let len2 = (b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2);
            let edge = (0..m).filter(|&k| k != i && k != j).all(|k| {
                let c = cross(a, b, points[k]);
                let t = ((points[k][0] - a[0]) * (b[0] - a[0]) + (points[k][1] - a[1]) * (b[1] - a[1])) / len2;
                c > EXACT || (c.abs() <= EXACT && t > 0.0 && t < 1.0)
            });
            if edge {
                vertex[i] = true;
                vertex[j] = true;
            }
        }
    }
    (0..m).filter(|&i| vertex[i]).collect()
}

fn geometry(seed: u64, records: &mut Vec<Record>) {
    let mut rng = stream(seed, 0);

    let mut round_trip = 0.0_f64;
    let mut against_reference = 0.0_f64;
    for _ in 0..GEOMETRY_TRIALS {
        let z = random_point(&mut rng);
        let k = klein_map(z);
        let r = klein_reference(z);
        against_reference = against_reference.max((k.u() - r[0]).hypot(k.v() - r[1]));
        let back = klein_inverse(k).expect("image lies in the disk");
        round_trip = round_trip.max(back.distance(&z) / z.abs().max(1.0));
    }
    records.push(Record::measured("geometry.klein_round_trip", round_trip, 1e-12));
    records.push(Record::measured("geometry.klein_reference", against_reference, 1e-12));

    let mut straightness = 0.0_f64;
    for _ in 0..GEOMETRY_TRIALS {
        let (z1, z2) = (random_point(&mut rng), random_point(&mut rng));
        let (k1, k2) = (klein_reference(z1), klein_reference(z2));
        let chord = (k2[0] - k1[0]).hypot(k2[1] - k1[1]);
        for w in arc_min(z1, z2).sample(20) {
            straightness = straightness.max(cross(k1, k2, klein_reference(w)).abs() / chord);
        }
    }
    records.push(Record::measured("geometry.geodesic_straightness", straightness, 1e-9));

    let mut mismatches = 0usize;
    for _ in 0..200 {
        let m = rng.random_range(1..=12);
        let pts: Vec<HalfPlanePoint> = (0..m).map(|_| random_point(&mut rng)).collect();
        let klein: Vec<[f64; 2]> = pts.iter().map(|&z| klein_reference(z)).collect();
        let mut expected: Vec<[f64; 2]> =
            brute_force_hull(&klein).into_iter().map(|i| [pts[i].re(), pts[i].im()]).collect();
        let mut found: Vec<[f64; 2]> = arc_polygon(&pts)
            .expect("nonempty input")
            .hull_vertices()
            .iter()
            .map(|z| [z.re(), z.im()])
            .collect();
        expected.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        found.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        mismatches += usize::from(expected != found);
    }
    records.push(
        Record::measured("geometry.hull_vs_brute_force", mismatches as f64, 0.0)
            .detail("200 random point sets of up to 12 points"),
    );

    let p = |re: f64, im: f64| HalfPlanePoint::new(re, im).expect("valid point");
    let z = [
        p(0.0, 0.0),
        p(1.0, 0.5),
        p(2.0, 1.0),
        p(2.0, 2.0),
        p(0.5, 4.75f64.sqrt()),
        p(-1.0, 1.0),
        p(-0.5, 1.0),
    ];
    let poly = arc_polygon(&z).expect("seven points");
    let mut found: Vec<[f64; 2]> = poly.hull_vertices().iter().map(|v| [v.re(), v.im()]).collect();
    let mut expected: Vec<[f64; 2]> = [0, 1, 2, 3, 5].iter().map(|&i| [z[i].re(), z[i].im()]).collect();
    found.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    expected.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let ok = found == expected && poly.contains(z[4]) && poly.contains(z[6]);
    records.push(Record {
        name: "geometry.seven_point_polygon".into(),
        status: if ok { Status::Pass } else { Status::Fail },
        metric: None,
        tolerance: 0.0,
        detail: Some(format!("{} hull vertices; z5 and z7 interior", found.len())),
    });
}
