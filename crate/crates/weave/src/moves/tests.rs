use super::*;
use crate::diagram::fixtures::{plain_weave, plain_weave_2x2};
use crate::diagram::{find_isomorphism, BoundaryWord, SurfaceDiagram, WordCheck};
use crate::invariants::{bracket, kauffman_f, writhe, LaurentPoly};

fn iso(a: &SurfaceDiagram, b: &SurfaceDiagram) -> bool {
    find_isomorphism(a, b, true, WordCheck::Homology).is_some()
}

fn fc(d: &SurfaceDiagram) -> (usize, usize) {
    (d.crossings.len(), d.faces().unwrap().len())
}

/// The monogon created by a curl at crossing `x`.
fn monogon_at(d: &SurfaceDiagram, x: usize) -> usize {
    d.faces()
        .unwrap()
        .iter()
        .position(|f| f.len() == 1 && f.boundary[0].corner.crossing == x)
        .unwrap()
}

#[test]
fn move_text_round_trips() {
    let lines = [
        "R1_add e7 sign=+ side=right",
        "R1_add e0 sign=- side=left",
        "R1_remove f2",
        "R2_add f3 i0 j2 over=first",
        "R2_add f1 i2 j0 over=second",
        "R2_remove f5",
        "R3 f4",
    ];
    for l in lines {
        let m: Move = l.parse().unwrap();
        assert_eq!(m.to_string(), l);
    }
    assert!("R4 f1".parse::<Move>().is_err());
    assert!("R1_add e1 sign=0 side=left".parse::<Move>().is_err());
    let t = MoveTrace {
        seed: 9,
        moves: vec!["R3 f4".parse().unwrap(), "R1_remove f0".parse().unwrap()],
    };
    assert_eq!(MoveTrace::parse(&t.to_text()).unwrap(), t);
}

#[test]
fn curls_scale_bracket_and_writhe() {
    let d = plain_weave_2x2();
    let b0 = bracket(&d).unwrap();
    let f0 = kauffman_f(&d).unwrap();
    for sign in [1i8, -1] {
        for side in [Side::Left, Side::Right] {
            let m = Move::R1Add { edge: 3, sign, side };
            let e = apply_move(&d, m).unwrap();
            assert!(e.validate().is_well_formed(), "{m}");
            assert!(e.is_coherently_oriented());
            assert_eq!(fc(&e), (5, 5), "{m}");
            assert_eq!(writhe(&e).unwrap(), sign as i64, "{m}");
            let factor = LaurentPoly::monomial(-1, 3 * sign as i32);
            assert_eq!(bracket(&e).unwrap(), b0.mul_poly(&factor), "{m}");
            assert_eq!(kauffman_f(&e).unwrap(), f0, "{m}");
            let back = apply_move(&e, Move::R1Remove { face: monogon_at(&e, 4) }).unwrap();
            assert!(iso(&back, &d), "{m}");
        }
    }
}

#[test]
fn r2_add_then_remove() {
    let d = plain_weave(3, 3, |i, j| (i + j) % 2 == 0);
    let b0 = bracket(&d).unwrap();
    let (c0, f0) = fc(&d);
    let faces = d.faces().unwrap();
    let n = faces[0].len();
    for (i, j) in [(0, 1), (0, 2), (1, 3), (3, 1)] {
        for over in [Over::First, Over::Second] {
            if i >= n || j >= n {
                continue;
            }
            let m = Move::R2Add { face: 0, i, j, over };
            let e = apply_move(&d, m).unwrap();
            assert!(e.validate().is_well_formed(), "{m}");
            assert_eq!(fc(&e), (c0 + 2, f0 + 2), "{m}");
            assert_eq!(bracket(&e).unwrap(), b0, "{m}");
            let bigon = e
                .faces()
                .unwrap()
                .iter()
                .position(|f| {
                    f.len() == 2 && f.boundary.iter().all(|s| s.corner.crossing >= c0)
                })
                .unwrap();
            let back = apply_move(&e, Move::R2Remove { face: bigon }).unwrap();
            assert!(iso(&back, &d), "{m}");
        }
    }
}

#[test]
fn r3_is_an_involution_and_keeps_bracket() {
    let d = plain_weave_2x2();
    let mut found = 0;
    let (trace, steps) = fuzz(&d, 60, 11, 10).unwrap();
    assert_eq!(trace.moves.len(), steps.len());
    let mut cur = d.clone();
    for s in &steps {
        let b = bracket(&cur).unwrap();
        for m in enumerate_simplifying(&cur) {
            if let Move::R3 { .. } = m {
                let e = apply_move(&cur, m).unwrap();
                assert!(e.validate().is_well_formed());
                assert_eq!(fc(&e), fc(&cur));
                assert_eq!(bracket(&e).unwrap(), b, "{m}");
                let tri = e
                    .faces()
                    .unwrap()
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.len() == 3)
                    .map(|(i, _)| Move::R3 { face: i })
                    .find(|&m2| apply_move(&e, m2).map(|back| iso(&back, &cur)).unwrap_or(false));
                assert!(tri.is_some(), "no R3 undoes {m}");
                found += 1;
            }
        }
        cur = s.after.clone();
    }
    assert!(found > 0, "walk produced no triangles");
}

#[test]
fn fuzz_preserves_kauffman_f_and_replays() {
    let d = plain_weave_2x2();
    let f0 = kauffman_f(&d).unwrap();
    for seed in 0..4 {
        let (trace, steps) = fuzz(&d, 25, seed, 10).unwrap();
        let mut prev = d.clone();
        for s in &steps {
            assert!(s.after.crossings.len() <= 10);
            assert!(s.after.validate().is_well_formed(), "{}", s.mv);
            assert_eq!(s.after.crossings.len() as i64, prev.crossings.len() as i64 + s.mv.delta());
            assert_eq!(kauffman_f(&s.after).unwrap(), f0, "seed {seed} {}", s.mv);
            prev = s.after.clone();
        }
        let end = replay(&d, &trace).unwrap();
        assert_eq!(&end, &prev);
        let again = fuzz(&d, 25, seed, 10).unwrap().0;
        assert_eq!(again, trace);
    }
}

#[test]
fn wrapped_monogon_is_not_removable() {
    let d = plain_weave_2x2();
    let mut e = apply_move(&d, Move::R1Add { edge: 0, sign: 1, side: Side::Right }).unwrap();
    let face = monogon_at(&e, 4);
    let edge = e.faces().unwrap()[face].boundary[0].edge;
    e.edges[edge].word = BoundaryWord::from_wrap((1, 0));
    for f in 0..e.faces().unwrap().len() {
        assert!(apply_move(&e, Move::R1Remove { face: f }).is_err());
    }
}

#[test]
fn bounds_on_a_padded_weave() {
    let d = plain_weave_2x2();
    let mut e = d.clone();
    for edge in [0, 5] {
        e = apply_move(&e, Move::R1Add { edge, sign: 1, side: Side::Left }).unwrap();
    }
    let b = crossing_number_bounds(&e, SearchBudget::default()).unwrap();
    assert_eq!(b.upper, 4);
    assert_eq!(b.lower, Some(4));
}
