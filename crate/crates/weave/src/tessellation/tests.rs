use super::*;
use crate::diagram::{find_isomorphism, fixtures::plain_weave, WordCheck};

fn sym(s: &str) -> VertexSymbol {
    parse_vertex_symbol(s).unwrap()
}

fn build(s: &str, scale: usize, method: Method, m: usize) -> SurfaceDiagram {
    let t = build_tiling(&sym(s), scale).unwrap();
    transform(&t, TransformSpec { method, m }).unwrap()
}

#[test]
fn symbols_parse_and_canonicalize() {
    let s = sym("(4,4,4,4)");
    assert!(s.is_euclidean());
    assert_eq!(s.to_string(), "(4,4,4,4)");
    assert_eq!(sym("(6,3,6,3)").to_string(), "(3,6,3,6)");
    assert_eq!(sym("(4, 8, 8)"), sym("(8,4,8)"));
    assert_eq!(sym("(3,4,6,4)").polygons, vec![3, 4, 6, 4]);
    assert!(matches!(parse_vertex_symbol("(3,2,1)"), Err(TessellationError::Syntax(_))));
    assert!(matches!(parse_vertex_symbol("4,4,4,4"), Err(TessellationError::Syntax(_))));
    let hyp = sym("(5,5,5,5)");
    assert!(!hyp.is_euclidean());
    assert!(matches!(build_tiling(&hyp, 1), Err(TessellationError::UnsupportedTiling(_))));
    assert!(matches!(build_tiling(&sym("(3,12,12)"), 1), Err(TessellationError::UnsupportedTiling(_))));
}

#[test]
fn tilings_close_up() {
    for (s, v, e, f) in [("(4,4,4,4)", 1, 2, 1), ("(3,3,3,3,3,3)", 1, 3, 2), ("(6,6,6)", 2, 3, 1), ("(3,6,3,6)", 3, 6, 3)] {
        for scale in 1..=3 {
            let t = build_tiling(&sym(s), scale).unwrap();
            let k2 = scale * scale;
            assert_eq!((t.vertex_count(), t.edges.len(), t.faces.len()), (v * k2, e * k2, f * k2), "{s} x{scale}");
            // every face returns to where it started, with zero total wrap
            for face in &t.faces {
                let mut wrap = (0, 0);
                for &(ei, fwd) in face {
                    let w = t.edges[ei].wrap;
                    let s = if fwd { 1 } else { -1 };
                    wrap = (wrap.0 + s * w.0, wrap.1 + s * w.1);
                }
                assert_eq!(wrap, (0, 0));
            }
            let sizes: Vec<usize> = t.faces.iter().map(|f| f.len()).collect();
            for k in &sym(s).polygons {
                assert!(sizes.contains(&(*k as usize)));
            }
        }
    }
}

#[test]
fn transforms_are_well_formed() {
    let cases = [
        ("(4,4,4,4)", Method::Cr, 1, 1),
        ("(4,4,4,4)", Method::NCr, 0, 4),
        ("(4,4,4,4)", Method::NCr, 1, 6),
        ("(4,4,4,4)", Method::NBr, 1, 2),
        ("(4,4,4,4)", Method::NBr, 3, 6),
        ("(3,3,3,3,3,3)", Method::Cr, 1, 3),
        ("(6,6,6)", Method::NBr, 1, 3),
        ("(6,6,6)", Method::NCr, 1, 9),
        ("(3,6,3,6)", Method::Cr, 1, 3),
        ("(3,6,3,6)", Method::NBr, 1, 6),
    ];
    for (s, method, m, per_cell) in cases {
        for scale in 1..=2 {
            let d = build(s, scale, method, m);
            assert_eq!(d.crossings.len(), per_cell * scale * scale, "{s} {method:?} {m}");
            let r = d.validate();
            assert!(r.is_well_formed(), "{s} {method:?} {m}: {:?}", r.violations);
            assert!(d.is_coherently_oriented());
        }
    }
    assert_eq!(
        transform(&build_tiling(&sym("(6,6,6)"), 1).unwrap(), TransformSpec { method: Method::Cr, m: 1 }).unwrap_err(),
        TessellationError::OddValencyForCr(3)
    );
}

#[test]
fn classification() {
    assert_eq!(classify(&build("(4,4,4,4)", 2, Method::Cr, 1)).unwrap(), Classification::Weave);
    assert_eq!(classify(&build("(4,4,4,4)", 1, Method::NBr, 1)).unwrap(), Classification::Weave);
    assert_eq!(classify(&build("(4,4,4,4)", 1, Method::NBr, 2)).unwrap(), Classification::Polycatenane);
    assert_eq!(classify(&build("(4,4,4,4)", 1, Method::NBr, 0)).unwrap(), Classification::Polycatenane);
    assert_eq!(classify(&build("(4,4,4,4)", 2, Method::NBr, 3)).unwrap(), Classification::Weave);
    assert_eq!(classify(&build("(3,6,3,6)", 1, Method::Cr, 1)).unwrap(), Classification::Weave);
    assert_eq!(classify(&build("(6,6,6)", 1, Method::NBr, 1)).unwrap(), Classification::Weave);
    let mut mixed = build("(4,4,4,4)", 1, Method::Cr, 1);
    mixed.loops.push(Default::default());
    assert_eq!(classify(&mixed).unwrap(), Classification::Mixed);
}

#[test]
fn plain_weave_from_the_square_tiling() {
    let d = build("(4,4,4,4)", 2, Method::Cr, 1);
    let w = assign_weaving_map(&d, &"1,2:1,1".parse().unwrap()).unwrap();
    assert!(w.is_alternating());
    let oracle = plain_weave(2, 2, |i, j| (i + j) % 2 == 0);
    let flipped = plain_weave(2, 2, |i, j| (i + j) % 2 == 1);
    assert!(
        find_isomorphism(&w, &oracle, true, WordCheck::Homology).is_some()
            || find_isomorphism(&w, &flipped, true, WordCheck::Homology).is_some()
    );
    assert_eq!(
        assign_weaving_map(&d, &"1,2:2,2".parse().unwrap()).unwrap_err(),
        TessellationError::InconsistentSequence(0, 1)
    );
    let alt = assign_weaving_map(&d, &WeavingMap::Alternating).unwrap();
    assert!(alt.is_alternating());
}

#[test]
fn twill_and_complementary_reading() {
    let d = build("(4,4,4,4)", 4, Method::Cr, 1);
    let w = assign_weaving_map(&d, &"1,2:2,2".parse().unwrap()).unwrap();
    assert!(!w.is_alternating());
    assert_eq!(read_sequence(&w, 0, 1).unwrap(), Some((2, 2)));
    assert_eq!(read_sequence(&w, 1, 0).unwrap(), Some((2, 2)));
    let w = assign_weaving_map(&d, &"2,1:3,1".parse().unwrap()).unwrap();
    assert_eq!(read_sequence(&w, 1, 0).unwrap(), Some((3, 1)));
    assert_eq!(read_sequence(&w, 0, 1).unwrap(), Some((1, 3)));
}

#[test]
fn weaving_map_errors() {
    let poly = build("(4,4,4,4)", 1, Method::NBr, 2);
    assert!(matches!(
        assign_weaving_map(&poly, &WeavingMap::Alternating),
        Err(TessellationError::NotAWeave(Classification::Polycatenane))
    ));
    let d = build("(4,4,4,4)", 2, Method::Cr, 1);
    assert_eq!(
        assign_weaving_map(&d, &"".parse().unwrap()).unwrap_err(),
        TessellationError::MissingSequence(0, 1)
    );
    assert!("1,1:1,1".parse::<WeavingMap>().is_err());
    assert!("1,2:0,1".parse::<WeavingMap>().is_err());
    assert!("1,2".parse::<WeavingMap>().is_err());
    assert!("0,1:1,1".parse::<WeavingMap>().is_err());
}

#[test]
fn alternating_builds_are_reduced() {
    for (s, method, m, scale) in [
        ("(4,4,4,4)", Method::Cr, 1, 2),
        ("(4,4,4,4)", Method::NBr, 1, 1),
        ("(3,6,3,6)", Method::Cr, 1, 1),
        ("(3,6,3,6)", Method::Cr, 1, 2),
        ("(6,6,6)", Method::NBr, 1, 1),
        ("(6,6,6)", Method::NBr, 1, 2),
    ] {
        let d = assign_weaving_map(&build(s, scale, method, m), &WeavingMap::Alternating).unwrap();
        assert!(d.is_alternating(), "{s}");
        assert!(d.is_reduced().0, "{s}");
    }
}
