use std::io::Write;
use std::path::{Path, PathBuf};

use srg_core::io::{
    cloud_to_csv, parse_cloud_csv, parse_matrix, parse_region_document, region_to_json,
    MatrixInput, RegionMeta,
};
use srg_core::linalg::{eigenvalues, is_normal, is_symmetric};
use srg_core::regions::{srg_2x2, srg_normal, srg_symmetric, SrgRegion};
use srg_core::srg_sample;
use srg_core::tolerance::STRUCTURE;

use crate::cli::{Command, EigsArgs, ExactArgs, RenderArgs, SampleArgs};
use crate::render::{render_svg, Input, RenderSpec};
use crate::{verify, CliError, TOOL_VERSION};

pub fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Sample(args) => sample(args, out),
        Command::Exact(args) => exact(args, out),
        Command::Verify(args) => verify::run(args, out),
        Command::Render(args) => render(args, out),
        Command::Eigs(args) => eigs(args, out),
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read `{}`: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<MatrixInput, CliError> {
    parse_matrix(&read_text(path)?)
        .map_err(|e| CliError::Input(format!("`{}`: {e}", path.display())))
}

fn emit(path: Option<&PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write `{}`: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write output: {e}"))),
    }
}

fn sample(args: SampleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let input = read_matrix(&args.matrix)?;
    let cloud = srg_sample(&input.matrix, args.count, args.strategy, args.seed)?;
    emit(args.out.as_ref(), &cloud_to_csv(&cloud.points), out)
}

/// The exact region, trying the 2x2 formula, then the symmetric and the
/// normal constructors.
pub fn exact_region(input: &MatrixInput) -> Result<Option<SrgRegion>, CliError> {
    let a = &input.matrix;
    if a.n() == 2 {
        return Ok(Some(SrgRegion::TwoCircles(srg_2x2(a)?)));
    }
    if is_symmetric(a) {
        return Ok(Some(srg_symmetric(a)?));
    }
    if is_normal(a, STRUCTURE) {
        return Ok(Some(SrgRegion::Polygon(srg_normal(a)?)));
    }
    Ok(None)
}

fn exact(args: ExactArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let input = read_matrix(&args.matrix)?;
    match exact_region(&input)? {
        Some(region) => {
            let meta = RegionMeta {
                matrix_digest: input.matrix.digest(),
                tool_version: TOOL_VERSION.into(),
            };
            emit(args.out.as_ref(), &(region_to_json(&region, Some(meta)) + "\n"), out)
        }
        None => {
            let report = serde_json::json!({
                "kind": "unsupported",
                "reason": format!(
                    "no exact region for a non-normal {0}x{0} matrix",
                    input.matrix.n()
                ),
                "hint": "use `srg sample` for an empirical cloud",
            });
            emit(args.out.as_ref(), &format!("{report}\n"), out)?;
            Err(CliError::Failed("matrix is not 2x2, symmetric or normal".into()))
        }
    }
}

fn eigs(args: EigsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let input = read_matrix(&args.matrix)?;
    let spectrum = eigenvalues(&input.matrix)?;
    let floor = 1e-12 * input.matrix.frobenius_norm().max(1.0);
    let snap = |v: f64| if v.abs() <= floor { 0.0 } else { v };
    let mut values: Vec<(f64, f64)> = spectrum
        .eigenvalues()
        .iter()
        .map(|z| (snap(z.re), snap(z.im)))
        .collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    let text: String = values
        .iter()
        .map(|(re, im)| format!("{},{}\n", re + 0.0, im + 0.0))
        .collect();
    emit(None, &text, out)
}

fn render(args: RenderArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = match &args.spec {
        Some(path) => RenderSpec::parse(&read_text(path)?)
            .map_err(|e| CliError::Input(format!("`{}`: {e}", path.display())))?,
        None => RenderSpec::default(),
    };
    let mut inputs = Vec::with_capacity(args.inputs.len());
    for path in &args.inputs {
        let text = read_text(path)?;
        let located = |e: srg_core::io::ParseError| CliError::Input(format!("`{}`: {e}", path.display()));
        let input = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => {
                let doc = parse_region_document(&text).map_err(located)?;
                Input::Region {
                    region: doc.region.to_region().map_err(located)?,
                    source: text.trim().to_string(),
                }
            }
            Some("csv") => Input::Cloud(parse_cloud_csv(&text).map_err(located)?),
            _ => {
                return Err(CliError::Input(format!(
                    "`{}`: expected a .json region or a .csv cloud",
                    path.display()
                )))
            }
        };
        inputs.push(input);
    }
    let spectrum = match &args.matrix {
        Some(path) => Some(eigenvalues(&read_matrix(path)?.matrix)?),
        None => None,
    };
    let svg = render_svg(&spec, &inputs, spectrum.as_ref())
        .map_err(|e| CliError::Input(e.to_string()))?;
    emit(args.out.as_ref(), &svg, out)
}
