use suborbital::graph_io::{emit_dot, emit_json, emit_svg, geodesic, parse_json, Geodesic, GraphIoError};
use suborbital_core::suborbital::enumerate_graph;
use suborbital_core::{DirectedEdge, GraphSpec, ProjectiveRational, Sign, SuborbitalGraph};

fn pr(n: i64, d: i64) -> ProjectiveRational {
    ProjectiveRational::new(n, d).unwrap()
}

fn f12(bound: i64) -> SuborbitalGraph {
    enumerate_graph(&GraphSpec::f_infinity(1, 2).unwrap(), bound).unwrap()
}

fn empty() -> SuborbitalGraph {
    SuborbitalGraph::from_parts(GraphSpec::f_infinity(1, 2).unwrap(), 4, vec![], vec![]).unwrap()
}

fn single_edge() -> SuborbitalGraph {
    let spec = GraphSpec::f_infinity(1, 2).unwrap();
    let edge = DirectedEdge::new(ProjectiveRational::INFINITY, pr(1, 2)).unwrap();
    SuborbitalGraph::from_parts(spec, 4, vec![ProjectiveRational::INFINITY, pr(1, 2)], vec![edge]).unwrap()
}

#[test]
fn json_empty_graph() {
    assert_eq!(
        emit_json(&empty()),
        r#"{"format_version":"1","family":"finf","u":1,"modulus":2,"reversed":false,"height_bound":4,"vertices":[],"edges":[]}"#
    );
}

#[test]
fn json_contains_base_edge() {
    let text = emit_json(&f12(4));
    assert!(text.contains(r#"{"src":"1/0","dst":"1/2","sign":"+"}"#));
}

#[test]
fn json_round_trip_is_identity() {
    let specs = [
        GraphSpec::f_infinity(1, 2).unwrap(),
        GraphSpec::f_infinity(3, 5).unwrap(),
        GraphSpec::f_zero(3, 2).unwrap(),
        GraphSpec::new(suborbital_core::Family::FZero, 5, 7, true).unwrap(),
    ];
    for spec in specs {
        let g = enumerate_graph(&spec, 12).unwrap();
        let text = emit_json(&g);
        let back = parse_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(emit_json(&back), text);
        assert_eq!(emit_json(&g), text);
    }
    let e = empty();
    assert_eq!(parse_json(&emit_json(&e)).unwrap(), e);
}

#[test]
fn corrupted_determinant_is_rejected() {
    let text = emit_json(&f12(4));
    let bad = text.replace(r#"{"src":"1/0","dst":"1/2","sign":"+"}"#, r#"{"src":"1/0","dst":"1/4","sign":"+"}"#);
    assert_ne!(bad, text);
    match parse_json(&bad) {
        Err(GraphIoError::InvariantViolation(msg)) => {
            assert!(msg.contains("1/0 -> 1/4"), "{msg}");
            assert!(msg.contains("determinant"), "{msg}");
        }
        other => panic!("expected an invariant violation, got {other:?}"),
    }
}

#[test]
fn other_invariants_are_rechecked() {
    let text = emit_json(&f12(4));
    // flipped sign
    let bad = text.replace(r#"{"src":"1/0","dst":"1/2","sign":"+"}"#, r#"{"src":"1/0","dst":"1/2","sign":"-"}"#);
    assert!(matches!(parse_json(&bad), Err(GraphIoError::InvariantViolation(_))));
    // vertex outside the block
    let bad = text.replace(r#""vertices":["#, r#""vertices":["1/3","#);
    assert!(matches!(parse_json(&bad), Err(GraphIoError::InvariantViolation(m)) if m.contains("1/3")));
    // invalid spec
    let bad = text.replace(r#""u":1,"modulus":2"#, r#""u":2,"modulus":4"#);
    assert!(matches!(parse_json(&bad), Err(GraphIoError::InvariantViolation(_))));
}

#[test]
fn malformed_documents() {
    let text = emit_json(&f12(4));
    assert!(matches!(parse_json(&text[..text.len() / 2]), Err(GraphIoError::MalformedDocument(_))));
    assert!(matches!(parse_json(""), Err(GraphIoError::MalformedDocument(_))));
    let bad = text.replace(r#""vertices":["#, r#""vertices":["2/4","#);
    assert!(matches!(parse_json(&bad), Err(GraphIoError::MalformedDocument(m)) if m.contains("2/4")));
    let bad = text.replace(r#""family":"finf""#, r#""family":"fone""#);
    assert!(matches!(parse_json(&bad), Err(GraphIoError::MalformedDocument(_))));
    let bad = text.replace(r#""reversed":false,"#, r#""reversed":false,"extra":1,"#);
    assert!(matches!(parse_json(&bad), Err(GraphIoError::MalformedDocument(_))));
    // valid content with non-canonical whitespace
    let spaced = text.replacen(',', ", ", 1);
    assert!(matches!(parse_json(&spaced), Err(GraphIoError::MalformedDocument(_))));
}

#[test]
fn version_mismatch() {
    let text = emit_json(&f12(4)).replace(r#""format_version":"1""#, r#""format_version":"2""#);
    assert_eq!(parse_json(&text), Err(GraphIoError::VersionMismatch { found: "2".to_string() }));
}

#[test]
fn dot_output() {
    let dot = emit_dot(&empty());
    assert_eq!(dot.lines().count(), 2);
    assert!(dot.starts_with("digraph") && dot.trim_end().ends_with('}'));

    let dot = emit_dot(&single_edge());
    let arcs: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(arcs.len(), 1);
    assert!(arcs[0].contains("\"1/0\"") && arcs[0].contains("\"1/2\"") && arcs[0].contains("sign=\"+\""));
    assert!(dot.contains("[label=\"1/0\"]"));

    let g = f12(8);
    let dot = emit_dot(&g);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), g.edges().len());
    assert_eq!(dot, emit_dot(&g));
}

#[test]
fn geodesics() {
    let ray = DirectedEdge::new(ProjectiveRational::INFINITY, pr(1, 2)).unwrap();
    assert_eq!(geodesic(&ray).unwrap(), Geodesic::VerticalRay { at: pr(1, 2) });
    let arc = DirectedEdge::with_sign(pr(1, 2), pr(1, 4), Sign::Plus);
    assert_eq!(geodesic(&arc).unwrap(), Geodesic::Semicircle { center: pr(3, 8), radius: pr(1, 8) });
    assert_eq!(geodesic(&arc.reversed()).unwrap(), geodesic(&arc).unwrap());
}

#[test]
fn svg_output() {
    let svg = emit_svg(&empty(), 200).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("<line"));
    assert_eq!(svg.matches("<path").count(), 0);

    let svg = emit_svg(&single_edge(), 200).unwrap();
    assert_eq!(svg.matches("<path").count(), 1);
    // a vertical segment: both points share the x coordinate of 1/2
    let d = svg.split("<path d=\"").nth(1).unwrap().split('"').next().unwrap();
    let parts: Vec<&str> = d.split_whitespace().collect();
    assert_eq!(parts[0], "M");
    assert_eq!(parts[3], "L");
    assert_eq!(parts[1], parts[4]);

    let g = f12(8);
    let svg = emit_svg(&g, 800).unwrap();
    assert_eq!(svg.matches("<path").count(), g.edges().len());
    assert_eq!(svg, emit_svg(&g, 800).unwrap());

    assert_eq!(emit_svg(&g, 63), Err(GraphIoError::WidthTooSmall(63)));
    assert!(emit_svg(&g, 64).is_ok());
}
