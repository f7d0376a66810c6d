//! Deterministic SVG output.
//!
//! Everything is drawn as the full SRG: each region, cloud and spectrum
//! appears with its mirror image in the real axis. Coordinates are written
//! in fixed notation with 12 significant digits. The JSON text of every
//! region input is embedded in a `<metadata>` element so it can be
//! recovered from the file.

use std::fmt::Write as _;

use serde::Deserialize;
use srg_core::halfplane::{Geodesic, MinArc, PolygonKind};
use srg_core::linalg::Spectrum;
use srg_core::regions::SrgRegion;
use srg_core::HalfPlanePoint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("render spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("render spec field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> RenderError {
    RenderError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Style {
    pub stroke: Option<String>,
    pub fill: Option<String>,
    pub fill_opacity: Option<f64>,
    pub stroke_width: Option<f64>,
    /// Dot radius or marker half-size, in pixels.
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Layer {
    /// A region input, by position on the command line.
    Region {
        input: usize,
        #[serde(default)]
        style: Style,
    },
    Cloud {
        input: usize,
        #[serde(default)]
        style: Style,
    },
    /// Eigenvalue markers; empty `points` means the `--matrix` spectrum.
    Spectrum {
        #[serde(default)]
        points: Vec<[f64; 2]>,
        #[serde(default)]
        style: Style,
    },
    Axes {
        #[serde(default)]
        style: Style,
    },
}

/// Layout and layers. Omitted `viewport` fits the content with a 10%
/// margin; omitted `layers` draws every input in order.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderSpec {
    #[serde(default)]
    pub viewport: Option<[f64; 4]>,
    #[serde(default = "default_width")]
    pub width_px: u32,
    #[serde(default = "default_height")]
    pub height_px: u32,
    #[serde(default)]
    pub layers: Option<Vec<Layer>>,
}

fn default_width() -> u32 {
    800
}

fn default_height() -> u32 {
    600
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            viewport: None,
            width_px: default_width(),
            height_px: default_height(),
            layers: None,
        }
    }
}

const MAX_PIXELS: u32 = 20_000;

impl RenderSpec {
    pub fn parse(text: &str) -> Result<Self, RenderError> {
        let spec: RenderSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if let Some([x0, x1, y0, y1]) = self.viewport {
            if ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) || x0 >= x1 || y0 >= y1 {
                return Err(field_error(
                    "viewport",
                    "expected finite [x_min, x_max, y_min, y_max] with x_min < x_max and y_min < y_max",
                ));
            }
        }
        for (name, v) in [("width_px", self.width_px), ("height_px", self.height_px)] {
            if v == 0 || v > MAX_PIXELS {
                return Err(field_error(name, format!("expected 1 to {MAX_PIXELS}")));
            }
        }
        for (i, layer) in self.layers.iter().flatten().enumerate() {
            let style = match layer {
                Layer::Region { style, .. }
                | Layer::Cloud { style, .. }
                | Layer::Spectrum { style, .. }
                | Layer::Axes { style } => style,
            };
            validate_style(style, &format!("layers[{i}]"))?;
            if let Layer::Spectrum { points, .. } = layer {
                if points.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(field_error(format!("layers[{i}].points"), "expected finite numbers"));
                }
            }
        }
        Ok(())
    }
}

fn validate_style(style: &Style, path: &str) -> Result<(), RenderError> {
    let safe = |c: char| c.is_ascii_alphanumeric() || "#(),.% -".contains(c);
    for (name, color) in [("stroke", &style.stroke), ("fill", &style.fill)] {
        if let Some(c) = color {
            if c.is_empty() || c.len() > 64 || !c.chars().all(safe) {
                return Err(field_error(format!("{path}.style.{name}"), "not a color"));
            }
        }
    }
    if let Some(o) = style.fill_opacity {
        if !(0.0..=1.0).contains(&o) {
            return Err(field_error(format!("{path}.style.fill_opacity"), "expected 0 to 1"));
        }
    }
    for (name, v) in [("stroke_width", style.stroke_width), ("radius", style.radius)] {
        if let Some(v) = v {
            if !(v.is_finite() && v > 0.0 && v <= 1000.0) {
                return Err(field_error(format!("{path}.style.{name}"), "expected a positive size"));
            }
        }
    }
    Ok(())
}

/// A parsed render input.
#[derive(Debug, Clone)]
pub enum Input {
    /// A region and the JSON text it was read from.
    Region { region: SrgRegion, source: String },
    Cloud(Vec<HalfPlanePoint>),
}

const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

/// Fixed notation with 12 significant digits and trailing zeros removed.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 40) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn unescape(text: &str) -> String {
    text.replace("&lt;", "<").replace("&gt;", ">").replace("&amp;", "&")
}

/// The region JSON texts embedded by [`render_svg`], in input order.
pub fn embedded_regions(svg: &str) -> Vec<String> {
    const OPEN: &str = "<metadata id=\"srg-region-";
    let mut out = Vec::new();
    let mut rest = svg;
    while let Some(start) = rest.find(OPEN) {
        rest = &rest[start + OPEN.len()..];
        let Some(body) = rest.find('>').map(|i| &rest[i + 1..]) else {
            break;
        };
        let Some(end) = body.find("</metadata>") else {
            break;
        };
        out.push(unescape(&body[..end]));
        rest = &body[end..];
    }
    out
}

#[derive(Debug, Clone, Copy)]
enum Seg {
    Move(f64, f64),
    Line(f64, f64),
    /// Circular arc about `(cx, 0)` with radius `r`, counterclockwise in
    /// data coordinates when `ccw`.
    Arc { cx: f64, r: f64, ccw: bool, x: f64, y: f64 },
    Close,
}

#[derive(Debug, Clone)]
enum Shape {
    Path { segs: Vec<Seg>, even_odd: bool, filled: bool },
    Circle { cx: f64, cy: f64, r: f64 },
    Dot { x: f64, y: f64 },
    Marker { x: f64, y: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Bounds {
    fn empty() -> Self {
        Self {
            x0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y0: f64::INFINITY,
            y1: f64::NEG_INFINITY,
        }
    }

    fn add(&mut self, x: f64, y: f64) {
        self.x0 = self.x0.min(x);
        self.x1 = self.x1.max(x);
        self.y0 = self.y0.min(y);
        self.y1 = self.y1.max(y);
    }

    fn is_empty(&self) -> bool {
        self.x0 > self.x1
    }
}

/// Segments tracing `arc` from its start, or from its end when `reverse`;
/// `mirror` reflects it into the lower half-plane.
fn arc_segs(arc: &MinArc, reverse: bool, mirror: bool) -> (Seg, Vec<Seg>) {
    let (a, b) = if reverse {
        (arc.end(), arc.start())
    } else {
        (arc.start(), arc.end())
    };
    let sign = if mirror { -1.0 } else { 1.0 };
    let start = Seg::Move(a.re(), sign * a.im());
    let seg = match arc.carrier() {
        Some(Geodesic::Circle { center, radius }) => {
            let ta = a.im().atan2(a.re() - center);
            let tb = b.im().atan2(b.re() - center);
            Seg::Arc {
                cx: center,
                r: radius,
                ccw: (tb > ta) != mirror,
                x: b.re(),
                y: sign * b.im(),
            }
        }
        _ => Seg::Line(b.re(), sign * b.im()),
    };
    (start, vec![seg])
}

fn closed_outline(arcs: &[MinArc], mirror: bool) -> Vec<Seg> {
    let mut segs = Vec::new();
    for (i, arc) in arcs.iter().enumerate() {
        let (start, rest) = arc_segs(arc, false, mirror);
        if i == 0 {
            segs.push(start);
        }
        segs.extend(rest);
    }
    segs.push(Seg::Close);
    segs
}

/// Full circle over the real interval `[a, b]`, traced clockwise.
fn interval_circle(a: f64, b: f64) -> Vec<Seg> {
    let r = 0.5 * (b - a);
    let cx = 0.5 * (a + b);
    vec![
        Seg::Move(a, 0.0),
        Seg::Arc { cx, r, ccw: false, x: b, y: 0.0 },
        Seg::Arc { cx, r, ccw: false, x: a, y: 0.0 },
        Seg::Close,
    ]
}

fn point_pair(p: HalfPlanePoint, marker: bool, shapes: &mut Vec<Shape>) {
    let ys: &[f64] = if p.im() > 0.0 { &[1.0, -1.0] } else { &[1.0] };
    for &s in ys {
        let (x, y) = (p.re(), s * p.im());
        shapes.push(if marker { Shape::Marker { x, y } } else { Shape::Dot { x, y } });
    }
}

fn region_shapes(region: &SrgRegion) -> Vec<Shape> {
    let mut shapes = Vec::new();
    match region {
        SrgRegion::SinglePoint(p) => point_pair(*p, false, &mut shapes),
        SrgRegion::TwoCircles(c) => {
            if c.radius == 0.0 {
                point_pair(
                    HalfPlanePoint::new(c.center_re, c.center_im).expect("valid center"),
                    false,
                    &mut shapes,
                );
            } else {
                for cy in [c.center_im, -c.center_im] {
                    shapes.push(Shape::Circle { cx: c.center_re, cy, r: c.radius });
                    if c.center_im == 0.0 {
                        break;
                    }
                }
            }
        }
        SrgRegion::Polygon(poly) => match poly.kind() {
            PolygonKind::Point => point_pair(poly.hull_vertices()[0], false, &mut shapes),
            PolygonKind::Arc => {
                for mirror in [false, true] {
                    let (start, rest) = arc_segs(&poly.outline()[0], false, mirror);
                    let mut segs = vec![start];
                    segs.extend(rest);
                    shapes.push(Shape::Path { segs, even_odd: false, filled: false });
                }
            }
            PolygonKind::Region => {
                let arcs = poly.outline();
                for mirror in [false, true] {
                    shapes.push(Shape::Path {
                        segs: closed_outline(&arcs, mirror),
                        even_odd: false,
                        filled: true,
                    });
                }
            }
        },
        SrgRegion::DiskDiff(d) => {
            let (a, b) = d.outer();
            let mut segs = interval_circle(a, b);
            for &(x, y) in d.removed() {
                segs.extend(interval_circle(x, y));
            }
            shapes.push(Shape::Path { segs, even_odd: true, filled: true });
        }
        SrgRegion::Cloud { cloud, .. } => {
            for &p in &cloud.points {
                point_pair(p, false, &mut shapes);
            }
        }
    }
    shapes
}

fn shape_bounds(shape: &Shape, b: &mut Bounds) {
    match shape {
        Shape::Circle { cx, cy, r } => {
            b.add(cx - r, cy - r);
            b.add(cx + r, cy + r);
        }
        Shape::Dot { x, y } | Shape::Marker { x, y } => b.add(*x, *y),
        Shape::Path { segs, .. } => {
            let mut cur = (0.0, 0.0);
            for seg in segs {
                match *seg {
                    Seg::Move(x, y) | Seg::Line(x, y) => {
                        b.add(x, y);
                        cur = (x, y);
                    }
                    Seg::Arc { cx, r, ccw, x, y } => {
                        b.add(x, y);
                        let from = cur.1.atan2(cur.0 - cx);
                        let to = y.atan2(x - cx);
                        for k in 0..4 {
                            let t = f64::from(k) * std::f64::consts::FRAC_PI_2;
                            if in_sweep(from, to, t, ccw) {
                                b.add(cx + r * t.cos(), r * t.sin());
                            }
                        }
                        cur = (x, y);
                    }
                    Seg::Close => {}
                }
            }
        }
    }
}

/// Whether angle `t` lies on the sweep from `from` to `to`.
fn in_sweep(from: f64, to: f64, t: f64, ccw: bool) -> bool {
    use std::f64::consts::TAU;
    let (a, b) = if ccw { (from, to) } else { (to, from) };
    let span = (b - a).rem_euclid(TAU);
    let off = (t - a).rem_euclid(TAU);
    off <= span || off >= TAU - 1e-12
}

struct Frame {
    scale: f64,
    ox: f64,
    oy: f64,
    viewport: [f64; 4],
}

impl Frame {
    fn new(spec: &RenderSpec, content: Bounds) -> Self {
        let [x0, x1, y0, y1] = spec.viewport.unwrap_or_else(|| {
            let mut b = if content.is_empty() {
                Bounds { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 }
            } else {
                content
            };
            for (lo, hi) in [(&mut b.x0, &mut b.x1), (&mut b.y0, &mut b.y1)] {
                if *hi - *lo < 1e-9 {
                    let mid = 0.5 * (*lo + *hi);
                    let half = 0.5 * mid.abs().max(1.0);
                    (*lo, *hi) = (mid - half, mid + half);
                }
                let margin = 0.1 * (*hi - *lo);
                (*lo, *hi) = (*lo - margin, *hi + margin);
            }
            [b.x0, b.x1, b.y0, b.y1]
        });
        let (w, h) = (spec.width_px as f64, spec.height_px as f64);
        let scale = (w / (x1 - x0)).min(h / (y1 - y0));
        Self {
            scale,
            ox: 0.5 * w - scale * 0.5 * (x0 + x1),
            oy: 0.5 * h + scale * 0.5 * (y0 + y1),
            viewport: [x0, x1, y0, y1],
        }
    }

    fn x(&self, x: f64) -> String {
        fmt_num(self.ox + self.scale * x)
    }

    fn y(&self, y: f64) -> String {
        fmt_num(self.oy - self.scale * y)
    }
}

fn path_data(segs: &[Seg], f: &Frame) -> String {
    let mut d = String::new();
    for seg in segs {
        if !d.is_empty() {
            d.push(' ');
        }
        match *seg {
            Seg::Move(x, y) => write!(d, "M {} {}", f.x(x), f.y(y)),
            Seg::Line(x, y) => write!(d, "L {} {}", f.x(x), f.y(y)),
            Seg::Arc { r, ccw, x, y, .. } => {
                let r = fmt_num(f.scale * r);
                // Screen y points down, so a counterclockwise data arc has
                // sweep flag 0.
                write!(d, "A {r} {r} 0 0 {} {} {}", u8::from(!ccw), f.x(x), f.y(y))
            }
            Seg::Close => write!(d, "Z"),
        }
        .expect("writing to a String");
    }
    d
}

struct Drawn {
    kind: &'static str,
    shapes: Vec<Shape>,
    style: Style,
}

fn default_style(kind: &str, index: usize) -> Style {
    let color = PALETTE[index % PALETTE.len()].to_string();
    match kind {
        "region" => Style {
            stroke: Some(color.clone()),
            fill: Some(color),
            fill_opacity: Some(0.3),
            stroke_width: Some(1.5),
            radius: Some(3.0),
        },
        "cloud" => Style {
            stroke: None,
            fill: Some(color),
            fill_opacity: Some(0.6),
            stroke_width: None,
            radius: Some(1.0),
        },
        "spectrum" => Style {
            stroke: Some("#000000".into()),
            fill: None,
            fill_opacity: None,
            stroke_width: Some(1.5),
            radius: Some(4.0),
        },
        _ => Style {
            stroke: Some("#888888".into()),
            fill: None,
            fill_opacity: None,
            stroke_width: Some(1.0),
            radius: None,
        },
    }
}

fn merge(style: &Style, defaults: Style) -> Style {
    Style {
        stroke: style.stroke.clone().or(defaults.stroke),
        fill: style.fill.clone().or(defaults.fill),
        fill_opacity: style.fill_opacity.or(defaults.fill_opacity),
        stroke_width: style.stroke_width.or(defaults.stroke_width),
        radius: style.radius.or(defaults.radius),
    }
}

/// Renders `inputs` per `spec`. `spectrum` fills spectrum layers without
/// explicit points, and adds one when the layer list has none.
pub fn render_svg(
    spec: &RenderSpec,
    inputs: &[Input],
    spectrum: Option<&Spectrum>,
) -> Result<String, RenderError> {
    spec.validate()?;
    let mut layers: Vec<Layer> = spec.layers.clone().unwrap_or_else(|| {
        inputs
            .iter()
            .enumerate()
            .map(|(i, input)| match input {
                Input::Region { .. } => Layer::Region { input: i, style: Style::default() },
                Input::Cloud(_) => Layer::Cloud { input: i, style: Style::default() },
            })
            .collect()
    });
    if spectrum.is_some() && !layers.iter().any(|l| matches!(l, Layer::Spectrum { .. })) {
        layers.push(Layer::Spectrum { points: Vec::new(), style: Style::default() });
    }
    if !layers.iter().any(|l| matches!(l, Layer::Axes { .. })) {
        layers.insert(0, Layer::Axes { style: Style::default() });
    }

    let mut drawn = Vec::with_capacity(layers.len());
    for (i, layer) in layers.iter().enumerate() {
        let missing = || field_error(format!("layers[{i}].input"), "no such input");
        let item = match layer {
            Layer::Region { input, style } => match inputs.get(*input).ok_or_else(missing)? {
                Input::Region { region, .. } => Drawn {
                    kind: "region",
                    shapes: region_shapes(region),
                    style: merge(style, default_style("region", *input)),
                },
                Input::Cloud(_) => return Err(field_error(format!("layers[{i}].input"), "is a cloud, not a region")),
            },
            Layer::Cloud { input, style } => match inputs.get(*input).ok_or_else(missing)? {
                Input::Cloud(points) => {
                    let mut shapes = Vec::new();
                    for &p in points {
                        point_pair(p, false, &mut shapes);
                    }
                    Drawn { kind: "cloud", shapes, style: merge(style, default_style("cloud", *input)) }
                }
                Input::Region { .. } => return Err(field_error(format!("layers[{i}].input"), "is a region, not a cloud")),
            },
            Layer::Spectrum { points, style } => {
                let mut shapes = Vec::new();
                if points.is_empty() {
                    for z in spectrum.map(Spectrum::eigenvalues).unwrap_or_default() {
                        shapes.push(Shape::Marker { x: z.re, y: z.im });
                    }
                } else {
                    for &[x, y] in points {
                        shapes.push(Shape::Marker { x, y });
                    }
                }
                Drawn { kind: "spectrum", shapes, style: merge(style, default_style("spectrum", 0)) }
            }
            Layer::Axes { style } => Drawn { kind: "axes", shapes: Vec::new(), style: merge(style, default_style("axes", 0)) },
        };
        drawn.push(item);
    }

    let mut bounds = Bounds::empty();
    for shape in drawn.iter().flat_map(|d| &d.shapes) {
        shape_bounds(shape, &mut bounds);
    }
    let frame = Frame::new(spec, bounds);

    let mut svg = String::new();
    let (w, h) = (spec.width_px, spec.height_px);
    writeln!(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    )
    .unwrap();
    for (i, input) in inputs.iter().enumerate() {
        if let Input::Region { source, .. } = input {
            writeln!(svg, "<metadata id=\"srg-region-{i}\">{}</metadata>", escape(source)).unwrap();
        }
    }
    writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>").unwrap();
    for (i, d) in drawn.iter().enumerate() {
        write_layer(&mut svg, i, d, &frame);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn write_layer(svg: &mut String, index: usize, d: &Drawn, f: &Frame) {
    let s = &d.style;
    let width = fmt_num(s.stroke_width.unwrap_or(1.0));
    let radius = s.radius.unwrap_or(2.0);
    let stroke = s.stroke.as_deref().unwrap_or("none");
    let fill = s.fill.as_deref().unwrap_or("none");
    let opacity = fmt_num(s.fill_opacity.unwrap_or(1.0));
    writeln!(svg, "<g id=\"layer-{index}\" class=\"{}\">", d.kind).unwrap();
    if d.kind == "axes" {
        let [x0, x1, y0, y1] = f.viewport;
        if y0 <= 0.0 && 0.0 <= y1 {
            writeln!(svg, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>", f.x(x0), f.y(0.0), f.x(x1), f.y(0.0)).unwrap();
        }
        if x0 <= 0.0 && 0.0 <= x1 {
            writeln!(svg, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>", f.x(0.0), f.y(y0), f.x(0.0), f.y(y1)).unwrap();
        }
    }
    for shape in &d.shapes {
        match shape {
            Shape::Path { segs, even_odd, filled } => {
                let fill = if *filled { fill } else { "none" };
                let rule = if *even_odd { " fill-rule=\"evenodd\"" } else { "" };
                writeln!(svg, "<path d=\"{}\" fill=\"{fill}\" fill-opacity=\"{opacity}\"{rule} stroke=\"{stroke}\" stroke-width=\"{width}\"/>", path_data(segs, f)).unwrap();
            }
            Shape::Circle { cx, cy, r } => {
                writeln!(svg, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>", f.x(*cx), f.y(*cy), fmt_num(f.scale * r)).unwrap();
            }
            Shape::Dot { x, y } => {
                let color = s.fill.as_deref().or(s.stroke.as_deref()).unwrap_or("#000000");
                writeln!(svg, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\" fill-opacity=\"{opacity}\"/>", f.x(*x), f.y(*y), fmt_num(radius)).unwrap();
            }
            Shape::Marker { x, y } => {
                let (px, py) = (f.ox + f.scale * x, f.oy - f.scale * y);
                writeln!(
                    svg,
                    "<path d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>",
                    fmt_num(px - radius), fmt_num(py - radius), fmt_num(px + radius), fmt_num(py + radius),
                    fmt_num(px - radius), fmt_num(py + radius), fmt_num(px + radius), fmt_num(py - radius),
                )
                .unwrap();
            }
        }
    }
    svg.push_str("</g>\n");
}
