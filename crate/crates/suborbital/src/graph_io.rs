//! JSON, DOT and SVG output for suborbital graphs.
//!
//! Fractions are always written as reduced `"num/den"` strings, so ∞ is
//! `"1/0"`. JSON output is compact with a fixed key order; re-emitting a
//! parsed document reproduces it byte for byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use suborbital_core::{DirectedEdge, Family, GraphSpec, ProjectiveRational, Sign, SuborbitalGraph};

pub const FORMAT_VERSION: &str = "1";

/// Smallest accepted SVG width.
pub const MIN_SVG_WIDTH: u32 = 64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphIoError {
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("unsupported format_version {found:?} (expected {FORMAT_VERSION:?})")]
    VersionMismatch { found: String },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("width {0} is below the minimum of {MIN_SVG_WIDTH} px")]
    WidthTooSmall(u32),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    format_version: String,
    family: String,
    u: i64,
    modulus: i64,
    reversed: bool,
    height_bound: i64,
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    src: String,
    dst: String,
    sign: String,
}

pub fn emit_json(g: &SuborbitalGraph) -> String {
    let spec = g.spec();
    let doc = GraphDocument {
        format_version: FORMAT_VERSION.to_string(),
        family: spec.family().name().to_string(),
        u: spec.u(),
        modulus: spec.modulus(),
        reversed: spec.reversed(),
        height_bound: g.height_bound(),
        vertices: g.vertices().iter().map(ToString::to_string).collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                src: e.src().to_string(),
                dst: e.dst().to_string(),
                sign: e.sign().symbol().to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("document serializes")
}

fn parse_point(s: &str, what: &str) -> Result<ProjectiveRational, GraphIoError> {
    let v: ProjectiveRational =
        s.parse().map_err(|e| GraphIoError::MalformedDocument(format!("{what} {s:?}: {e}")))?;
    if v.to_string() != s {
        return Err(GraphIoError::MalformedDocument(format!("{what} {s:?} is not in reduced form {v}")));
    }
    Ok(v)
}

/// Parses and re-validates a document produced by [`emit_json`].
pub fn parse_json(text: &str) -> Result<SuborbitalGraph, GraphIoError> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| GraphIoError::MalformedDocument(e.to_string()))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(GraphIoError::VersionMismatch { found: doc.format_version });
    }
    let family = Family::from_name(&doc.family)
        .ok_or_else(|| GraphIoError::MalformedDocument(format!("unknown family {:?}", doc.family)))?;
    let spec = GraphSpec::new(family, doc.u, doc.modulus, doc.reversed)
        .map_err(|e| GraphIoError::InvariantViolation(e.to_string()))?;
    let vertices = doc
        .vertices
        .iter()
        .map(|s| parse_point(s, "vertex"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for rec in &doc.edges {
        let src = parse_point(&rec.src, "edge source")?;
        let dst = parse_point(&rec.dst, "edge destination")?;
        let sign = Sign::from_symbol(&rec.sign)
            .ok_or_else(|| GraphIoError::MalformedDocument(format!("edge sign {:?}", rec.sign)))?;
        edges.push(DirectedEdge::with_sign(src, dst, sign));
    }
    let g = SuborbitalGraph::from_parts(spec, doc.height_bound, vertices, edges)
        .map_err(|e| GraphIoError::InvariantViolation(e.to_string()))?;
    if emit_json(&g) != text {
        return Err(GraphIoError::MalformedDocument("document is not in canonical form".to_string()));
    }
    Ok(g)
}

fn dot_id(v: &ProjectiveRational) -> String {
    format!("\"{v}\"")
}

pub fn emit_dot(g: &SuborbitalGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", g.spec()).unwrap();
    for v in g.vertices() {
        writeln!(out, "  {} [label=\"{v}\"];", dot_id(v)).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  {} -> {} [sign=\"{}\"];", dot_id(&e.src()), dot_id(&e.dst()), e.sign().symbol()).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The hyperbolic geodesic in the upper half-plane joining two points of Q̂.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geodesic {
    Semicircle { center: ProjectiveRational, radius: ProjectiveRational },
    VerticalRay { at: ProjectiveRational },
}

pub fn geodesic(e: &DirectedEdge) -> suborbital_core::Result<Geodesic> {
    let (v, w) = (e.src(), e.dst());
    if v.is_infinity() {
        return Ok(Geodesic::VerticalRay { at: w });
    }
    if w.is_infinity() {
        return Ok(Geodesic::VerticalRay { at: v });
    }
    let (a, b) = (v.num() as i128, v.den() as i128);
    let (c, d) = (w.num() as i128, w.den() as i128);
    let den = 2 * b * d;
    let narrow = |x: i128| i64::try_from(x).map_err(|_| suborbital_core::Error::ArithmeticOverflow);
    let center = reduced(narrow(a * d + c * b)?, narrow(den)?)?;
    let radius = reduced(narrow((a * d - c * b).abs())?, narrow(den)?)?;
    Ok(Geodesic::Semicircle { center, radius })
}

fn reduced(n: i64, d: i64) -> suborbital_core::Result<ProjectiveRational> {
    ProjectiveRational::new(n, d)
}

fn to_f64(v: &ProjectiveRational) -> f64 {
    v.num() as f64 / v.den() as f64
}

/// Edges as geodesics over a fixed real-axis window around the finite
/// vertices; rays to ∞ are clipped at the top border.
pub fn emit_svg(g: &SuborbitalGraph, width_px: u32) -> Result<String, GraphIoError> {
    if width_px < MIN_SVG_WIDTH {
        return Err(GraphIoError::WidthTooSmall(width_px));
    }
    let finite: Vec<f64> = g.vertices().iter().filter(|v| !v.is_infinity()).map(to_f64).collect();
    let (lo, hi) = if finite.is_empty() {
        (0.0, 0.0)
    } else {
        (
            finite.iter().copied().fold(f64::INFINITY, f64::min),
            finite.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let margin = ((hi - lo) * 0.05).max(0.5);
    let (lo, hi) = (lo - margin, hi + margin);
    let width = f64::from(width_px);
    let pad = 8.0;
    let scale = (width - 2.0 * pad) / (hi - lo);
    let height = ((hi - lo) / 2.0 * scale + 2.0 * pad).ceil();
    let axis_y = height - pad;
    let px = |x: f64| pad + (x - lo) * scale;

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width_px}\" height=\"{height}\" viewBox=\"0 0 {width_px} {height}\">"
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", g.spec()).unwrap();
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><polygon points=\"0,0 10,5 0,10\"/></marker></defs>\n",
    );
    writeln!(out, "<line x1=\"0\" y1=\"{axis_y:.3}\" x2=\"{width_px}\" y2=\"{axis_y:.3}\" stroke=\"black\"/>").unwrap();
    for v in g.vertices().iter().filter(|v| !v.is_infinity()) {
        writeln!(out, "<circle cx=\"{:.3}\" cy=\"{axis_y:.3}\" r=\"2\"><title>{v}</title></circle>", px(to_f64(v))).unwrap();
    }
    for e in g.edges() {
        let geo = geodesic(e).map_err(|err| GraphIoError::InvariantViolation(format!("edge {e}: {err}")))?;
        let d = match geo {
            Geodesic::VerticalRay { at } => {
                let x = px(to_f64(&at));
                if e.src().is_infinity() {
                    format!("M {x:.3} 0 L {x:.3} {axis_y:.3}")
                } else {
                    format!("M {x:.3} {axis_y:.3} L {x:.3} 0")
                }
            }
            Geodesic::Semicircle { radius, .. } => {
                let (x1, x2) = (px(to_f64(&e.src())), px(to_f64(&e.dst())));
                let r = to_f64(&radius) * scale;
                // sweep so the arc bulges upward in screen coordinates
                let sweep = u8::from(x2 > x1);
                format!("M {x1:.3} {axis_y:.3} A {r:.3} {r:.3} 0 0 {sweep} {x2:.3} {axis_y:.3}")
            }
        };
        writeln!(
            out,
            "<path d=\"{d}\" fill=\"none\" stroke=\"black\" marker-end=\"url(#arrow)\"><title>{e}</title></path>"
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
