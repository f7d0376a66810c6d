//! File formats: matrices (JSON or CSV), region JSON and cloud CSV.
//!
//! Matrix JSON is `{"n": 2, "data": [1, 2, 3, 4]}` (row-major) or
//! `{"blocks": [<matrix>, ...]}` for a block-diagonal matrix. Matrix CSV is
//! `n` lines of `n` comma-separated numbers.
//!
//! Region JSON is an object tagged by `kind`:
//!
//! ```json
//! {"kind": "two_circles", "center": [2.5, 0.5], "radius": 2.9154759474226504}
//! {"kind": "polygon", "vertices": [[1, 1], [3, 0]]}
//! {"kind": "disk_diff", "outer": [1, 4], "removed": [[1, 2], [2, 4]]}
//! {"kind": "point", "point": [5, 0]}
//! {"kind": "cloud", "points": [[1, 0]], "delta": 0.001}
//! ```
//!
//! with an optional `"meta": {"matrix_digest": ..., "tool_version": ...}`.
//! Cloud CSV has the header `re,im` and one point per row.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::error::SrgError;
use crate::halfplane::{arc_polygon, HalfPlanePoint};
use crate::linalg::{assemble_block_diag, BlockSpec, RealMatrix};
use crate::regions::{DiskDifference, SrgRegion, TwoCircles};
use crate::sampling::SampleCloud;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Value(#[from] SrgError),
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// A parsed matrix file. `blocks` is kept when the file listed blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixInput {
    pub matrix: RealMatrix,
    pub blocks: Option<BlockSpec>,
}

/// Parses matrix JSON when the text starts with `{`, CSV otherwise.
pub fn parse_matrix(text: &str) -> Result<MatrixInput, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix_csv(text).map(|matrix| MatrixInput {
            matrix,
            blocks: None,
        })
    }
}

pub fn parse_matrix_json(text: &str) -> Result<MatrixInput, ParseError> {
    let value: Value = serde_json::from_str(text)?;
    let blocks = json_blocks(&value, "")?;
    if value.get("blocks").is_some() {
        let spec = BlockSpec::new(blocks)?;
        Ok(MatrixInput {
            matrix: assemble_block_diag(&spec),
            blocks: Some(spec),
        })
    } else {
        Ok(MatrixInput {
            matrix: blocks.into_iter().next().expect("one matrix"),
            blocks: None,
        })
    }
}

/// Flattens a matrix object into its diagonal blocks (itself, if it has
/// no `blocks` field).
fn json_blocks(value: &Value, path: &str) -> Result<Vec<RealMatrix>, ParseError> {
    let obj = value
        .as_object()
        .ok_or_else(|| field_error(root(path), "expected a matrix object"))?;
    if let Some(blocks) = obj.get("blocks") {
        let field = format!("{path}blocks");
        let list = blocks
            .as_array()
            .ok_or_else(|| field_error(&field, "expected an array of matrix objects"))?;
        if list.is_empty() {
            return Err(field_error(field, "needs at least one block"));
        }
        let mut out = Vec::new();
        for (i, b) in list.iter().enumerate() {
            out.extend(json_blocks(b, &format!("{field}[{i}].", ))?);
        }
        return Ok(out);
    }
    let n_field = format!("{path}n");
    let n = obj
        .get("n")
        .ok_or_else(|| field_error(&n_field, "missing"))?
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| field_error(&n_field, "expected a positive integer"))? as usize;
    let data_field = format!("{path}data");
    let data = obj
        .get("data")
        .ok_or_else(|| field_error(&data_field, "missing"))?
        .as_array()
        .ok_or_else(|| field_error(&data_field, "expected an array of numbers"))?;
    if n.checked_mul(n) != Some(data.len()) {
        return Err(field_error(
            data_field,
            format!("expected {} entries for n = {n}, found {}", n.saturating_mul(n), data.len()),
        ));
    }
    let entries = data
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .filter(|x| x.is_finite())
                .ok_or_else(|| field_error(format!("{data_field}[{i}]"), "expected a finite number"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(vec![RealMatrix::new(n, entries)?])
}

fn root(path: &str) -> String {
    if path.is_empty() {
        "(root)".into()
    } else {
        path.trim_end_matches('.').into()
    }
}

pub fn parse_matrix_csv(text: &str) -> Result<RealMatrix, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                cell.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| {
                        field_error(format!("row {} column {}", r + 1, c + 1), "expected a finite number")
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(field_error("rows", "matrix is empty"));
    }
    let n = rows.len();
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(field_error(
            format!("row {}", r + 1),
            format!("expected {n} entries, found {}", row.len()),
        ));
    }
    Ok(RealMatrix::from_rows(&rows)?)
}

/// Provenance carried alongside a region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionMeta {
    pub matrix_digest: String,
    pub tool_version: String,
}

/// The JSON shape of a region. Validation happens when converting to
/// [`SrgRegion`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionJson {
    TwoCircles { center: [f64; 2], radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
    DiskDiff { outer: [f64; 2], removed: Vec<[f64; 2]> },
    Point { point: [f64; 2] },
    Cloud { points: Vec<[f64; 2]>, delta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionDocument {
    #[serde(flatten)]
    pub region: RegionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<RegionMeta>,
}

fn point_field(field: &str, p: [f64; 2]) -> Result<HalfPlanePoint, ParseError> {
    HalfPlanePoint::try_from(p).map_err(|e| field_error(field, e.to_string()))
}

impl RegionJson {
    pub fn from_region(region: &SrgRegion) -> Self {
        match region {
            SrgRegion::SinglePoint(p) => RegionJson::Point { point: (*p).into() },
            SrgRegion::TwoCircles(c) => RegionJson::TwoCircles {
                center: [c.center_re, c.center_im],
                radius: c.radius,
            },
            SrgRegion::Polygon(p) => RegionJson::Polygon {
                vertices: p.hull_vertices().iter().map(|&v| v.into()).collect(),
            },
            SrgRegion::DiskDiff(d) => RegionJson::DiskDiff {
                outer: [d.outer().0, d.outer().1],
                removed: d.removed().iter().map(|&(a, b)| [a, b]).collect(),
            },
            SrgRegion::Cloud { cloud, delta } => RegionJson::Cloud {
                points: cloud.points.iter().map(|&v| v.into()).collect(),
                delta: *delta,
            },
        }
    }

    pub fn to_region(&self) -> Result<SrgRegion, ParseError> {
        Ok(match self {
            RegionJson::Point { point } => SrgRegion::SinglePoint(point_field("point", *point)?),
            RegionJson::TwoCircles { center, radius } => SrgRegion::TwoCircles(
                TwoCircles::new(center[0], center[1], *radius)
                    .map_err(|e| field_error("center/radius", e.to_string()))?,
            ),
            RegionJson::Polygon { vertices } => {
                let points = vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| point_field(&format!("vertices[{i}]"), *v))
                    .collect::<Result<Vec<_>, _>>()?;
                SrgRegion::Polygon(
                    arc_polygon(&points).map_err(|e| field_error("vertices", e.to_string()))?,
                )
            }
            RegionJson::DiskDiff { outer, removed } => SrgRegion::DiskDiff(
                DiskDifference::new(
                    (outer[0], outer[1]),
                    removed.iter().map(|r| (r[0], r[1])).collect(),
                )
                .map_err(|e| field_error("outer/removed", e.to_string()))?,
            ),
            RegionJson::Cloud { points, delta } => {
                if !(delta.is_finite() && *delta >= 0.0) {
                    return Err(field_error("delta", "expected a finite non-negative number"));
                }
                let points = points
                    .iter()
                    .enumerate()
                    .map(|(i, v)| point_field(&format!("points[{i}]"), *v))
                    .collect::<Result<Vec<_>, _>>()?;
                SrgRegion::Cloud {
                    cloud: SampleCloud::from_points(points),
                    delta: *delta,
                }
            }
        })
    }
}

pub fn parse_region_document(text: &str) -> Result<RegionDocument, ParseError> {
    let doc: RegionDocument = serde_json::from_str(text)?;
    doc.region.to_region()?;
    Ok(doc)
}

pub fn parse_region_json(text: &str) -> Result<SrgRegion, ParseError> {
    parse_region_document(text)?.region.to_region()
}

pub fn region_to_json(region: &SrgRegion, meta: Option<RegionMeta>) -> String {
    let doc = RegionDocument {
        region: RegionJson::from_region(region),
        meta,
    };
    serde_json::to_string(&doc).expect("regions serialize")
}

pub fn parse_cloud_csv(text: &str) -> Result<Vec<HalfPlanePoint>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?;
    if headers.len() != 2 || &headers[0] != "re" || &headers[1] != "im" {
        return Err(field_error("header", "expected `re,im`"));
    }
    let mut points = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        let row = format!("row {}", r + 1);
        if record.len() != 2 {
            return Err(field_error(row, "expected two columns"));
        }
        let number = |i: usize, name: &str| {
            record[i]
                .parse::<f64>()
                .map_err(|_| field_error(format!("{row} {name}"), "expected a number"))
        };
        let (re, im) = (number(0, "re")?, number(1, "im")?);
        points.push(HalfPlanePoint::new(re, im).map_err(|e| field_error(&row, e.to_string()))?);
    }
    Ok(points)
}

pub fn cloud_to_csv(points: &[HalfPlanePoint]) -> String {
    let mut out = String::with_capacity(16 * points.len() + 6);
    out.push_str("re,im\n");
    for p in points {
        out.push_str(&format!("{},{}\n", p.re(), p.im()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::{srg_2x2, srg_normal, srg_symmetric};

    #[test]
    fn matrix_json_and_csv_agree() {
        let json = parse_matrix(r#"{"n": 2, "data": [1, 2, 3, 4]}"#).unwrap();
        let csv = parse_matrix("1, 2\n3,4\n").unwrap();
        assert_eq!(json, csv);
        assert_eq!(json.matrix[(1, 0)], 3.0);
    }

    #[test]
    fn block_matrix_json() {
        let input = parse_matrix(
            r#"{"blocks": [{"n": 2, "data": [0, 1, -1, 0]}, {"blocks": [{"n": 1, "data": [3]}]}]}"#,
        )
        .unwrap();
        assert_eq!(input.blocks.as_ref().unwrap().blocks().len(), 2);
        assert_eq!(input.matrix.n(), 3);
        assert_eq!(input.matrix[(2, 2)], 3.0);
        assert_eq!(input.matrix[(0, 2)], 0.0);
    }

    #[test]
    fn matrix_errors_name_the_field() {
        let msg = |t: &str| parse_matrix(t).unwrap_err().to_string();
        assert!(msg(r#"{"data": [1]}"#).contains("`n`"));
        assert!(msg(r#"{"n": 2, "data": [1, 2, 3]}"#).contains("`data`"));
        assert!(msg(r#"{"n": 1, "data": ["x"]}"#).contains("`data[0]`"));
        assert!(msg(r#"{"blocks": [{"n": 0, "data": []}]}"#).contains("`blocks[0].n`"));
        assert!(msg(r#"{"blocks": []}"#).contains("`blocks`"));
        assert!(msg("1,2\n3\n").contains("row 2"));
        assert!(msg("1,x\n3,4\n").contains("row 1 column 2"));
        assert!(msg("").contains("rows"));
        assert!(msg("1,2,3\n4,5,6\n").contains("row 1"));
    }

    #[test]
    fn region_json_round_trip() {
        let a = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let regions = [
            SrgRegion::TwoCircles(srg_2x2(&a).unwrap()),
            srg_symmetric(&RealMatrix::diag(&[1.0, 2.0, 4.0]).unwrap()).unwrap(),
            srg_symmetric(&RealMatrix::identity(2)).unwrap(),
            SrgRegion::Polygon(
                srg_normal(&RealMatrix::from_rows(&[vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap())
                    .unwrap(),
            ),
        ];
        for region in &regions {
            let text = region_to_json(region, None);
            assert_eq!(&parse_region_json(&text).unwrap(), region, "{text}");
        }
        assert_eq!(
            region_to_json(&regions[1], None),
            r#"{"kind":"disk_diff","outer":[1.0,4.0],"removed":[[1.0,2.0],[2.0,4.0]]}"#
        );
    }

    #[test]
    fn region_meta_is_optional() {
        let meta = RegionMeta {
            matrix_digest: "00ff".into(),
            tool_version: "0.1.0".into(),
        };
        let text = region_to_json(&SrgRegion::SinglePoint(HalfPlanePoint::real(5.0).unwrap()), Some(meta.clone()));
        assert_eq!(
            text,
            r#"{"kind":"point","point":[5.0,0.0],"meta":{"matrix_digest":"00ff","tool_version":"0.1.0"}}"#
        );
        assert_eq!(parse_region_document(&text).unwrap().meta, Some(meta));
    }

    #[test]
    fn invalid_regions_are_rejected() {
        for text in [
            r#"{"kind":"two_circles","center":[0,-1],"radius":1}"#,
            r#"{"kind":"two_circles","center":[0,1],"radius":-1}"#,
            r#"{"kind":"polygon","vertices":[]}"#,
            r#"{"kind":"polygon","vertices":[[0,-1]]}"#,
            r#"{"kind":"disk_diff","outer":[1,4],"removed":[[1,2]]}"#,
            r#"{"kind":"cloud","points":[],"delta":-1}"#,
            r#"{"kind":"hexagon"}"#,
            r#"[1,2]"#,
        ] {
            assert!(parse_region_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn cloud_csv_round_trip() {
        let points = vec![
            HalfPlanePoint::new(1.0, 0.0).unwrap(),
            HalfPlanePoint::new(-0.0, 2.5).unwrap(),
            HalfPlanePoint::new(0.1, 1e-300).unwrap(),
        ];
        let text = cloud_to_csv(&points);
        assert!(text.starts_with("re,im\n1,0\n0,2.5\n"));
        assert_eq!(parse_cloud_csv(&text).unwrap(), points);
        assert!(parse_cloud_csv("x,y\n1,2\n").is_err());
        assert!(parse_cloud_csv("re,im\n1,-2\n").is_err());
        assert!(parse_cloud_csv("re,im\n1,a\n").unwrap_err().to_string().contains("row 1 im"));
    }
}
