//! A fixed set of diagrams for tests and the `verify` command: alternating
//! builds from the curated tilings, sequence builds, move-perturbed copies,
//! and genus-2 diagrams made by joining two torus diagrams along an edge.

use crate::diagram::wiring::{End, Wiring};
use crate::diagram::{BoundaryWord, Edge, Letter, SlotRef, SurfaceDiagram};
use crate::moves::{apply_move, fuzz, Move, Over, Side};
use crate::tessellation::{assign_weaving_map, build_tiling, parse_vertex_symbol, transform, Method, TransformSpec, WeavingMap};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub diagram: SurfaceDiagram,
}

/// Builds a tiling diagram and assigns its weaving map.
pub fn woven(symbol: &str, scale: usize, method: Method, m: usize, map: &str) -> SurfaceDiagram {
    let t = build_tiling(&parse_vertex_symbol(symbol).unwrap(), scale).unwrap();
    let d = transform(&t, TransformSpec { method, m }).unwrap();
    assign_weaving_map(&d, &map.parse::<WeavingMap>().unwrap()).unwrap()
}

fn relabel(w: &BoundaryWord, a: u16, b: u16) -> BoundaryWord {
    w.substitute(|g| BoundaryWord::from_letters([Letter::new(if g == 0 { a } else { b }, false)]))
}

/// Joins torus diagrams `x` and `y` by cutting one edge of each and
/// reconnecting the halves across a tube. The first pair of edges whose
/// result has every face a disk is used.
pub fn edge_sum(x: &SurfaceDiagram, y: &SurfaceDiagram) -> Option<SurfaceDiagram> {
    if x.genus != 1 || y.genus != 1 {
        return None;
    }
    let n = x.crossings.len();
    for (ya, yb) in [(1, 3), (3, 1)] {
        for ex in 0..x.edges.len() {
            for ey in 0..y.edges.len() {
                if let Some(d) = join(x, ex, y, ey, n, (ya, yb)) {
                    return Some(d);
                }
            }
        }
    }
    None
}

fn entry(name: &str, diagram: SurfaceDiagram) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        diagram,
    }
}

fn word(letters: &[(u16, bool)]) -> BoundaryWord {
    BoundaryWord::from_letters(letters.iter().map(|&(g, inv)| Letter::new(g, inv)))
}

/// `u` with `f = u c u^-1` in the free group, if any.
fn conjugator(f: &BoundaryWord, c: &BoundaryWord) -> Option<BoundaryWord> {
    let l = f.letters();
    let mut k = 0;
    while 2 * k + 2 <= l.len() && l[k] == l[l.len() - 1 - k].inverted() {
        k += 1;
    }
    let s = BoundaryWord::from_letters(l[..k].iter().copied());
    let m = &l[k..l.len() - k];
    let cl = c.letters();
    if m.len() != cl.len() {
        return None;
    }
    (0..cl.len()).find_map(|r| {
        let rotated: Vec<Letter> = cl[r..].iter().chain(cl[..r].iter()).copied().collect();
        (rotated == m).then(|| s.concat(&BoundaryWord::from_letters(cl[..r].iter().copied()).inverse()))
    })
}

/// Word around the face left of `edge` traversed forward, starting just
/// after (`after`) or at that step.
fn face_word(d: &SurfaceDiagram, edge: usize, after: bool) -> Option<BoundaryWord> {
    let faces = d.faces().ok()?;
    for f in &faces {
        if let Some(i) = f.boundary.iter().position(|st| st.edge == edge && st.forward) {
            let n = f.len();
            let j = if after { i } else { (i + n - 1) % n };
            return Some(f.segment_word(j, j));
        }
    }
    None
}

fn join(x: &SurfaceDiagram, ex: usize, y: &SurfaceDiagram, ey: usize, n: usize, (ya, yb): (u16, u16)) -> Option<SurfaceDiagram> {
    let f1 = relabel(&face_word(x, ex, true)?, 0, 2);
    let f2 = relabel(&face_word(y, ey, false)?, ya, yb);
    // the tube joins the two faces; a corner face on each side must meet
    // another so that the merged face reads the surface relator
    let g = match (f1.is_empty(), f2.is_empty()) {
        (true, true) => BoundaryWord::empty(),
        (false, false) => {
            let (a1, a2, b1, b2) = (0, 1, 2, 3);
            [
                (word(&[(a1, false), (b1, false), (a1, true), (b1, true)]), word(&[(a2, false), (b2, false), (a2, true), (b2, true)])),
                (word(&[(b1, false), (a1, false), (b1, true), (a1, true)]), word(&[(b2, false), (a2, false), (b2, true), (a2, true)])),
            ]
            .iter()
            .find_map(|(c1, c2)| Some(conjugator(&f1, c1)?.concat(&conjugator(&f2, c2)?.inverse())))?
        }
        _ => return None,
    };
    let mut w = Wiring::new(2);
    w.crossings = x.crossings.iter().chain(y.crossings.iter()).copied().collect();
    let shift = |e: &Edge| e.ends.map(|s| SlotRef::new(s.crossing + n, s.slot));
    for (i, e) in x.edges.iter().enumerate() {
        if i != ex {
            w.link(End::Slot(e.ends[0]), End::Slot(e.ends[1]), relabel(&e.word, 0, 2));
        }
    }
    for (i, e) in y.edges.iter().enumerate() {
        if i != ey {
            let [u, v] = shift(e);
            w.link(End::Slot(u), End::Slot(v), relabel(&e.word, ya, yb));
        }
    }
    let (a, b) = (&x.edges[ex], &y.edges[ey]);
    let [bu, bv] = shift(b);
    let across = relabel(&a.word, 0, 2).concat(&g).concat(&relabel(&b.word, ya, yb));
    w.link(End::Slot(a.ends[0]), End::Slot(bv), across);
    w.link(End::Slot(bu), End::Slot(a.ends[1]), g.inverse());
    w.loops = x.loops.iter().map(|l| relabel(l, 0, 2)).chain(y.loops.iter().map(|l| relabel(l, ya, yb))).collect();
    let d = w.resolve().ok()?;
    let faces = d.faces().ok()?;
    (d.validate().is_well_formed() && faces.iter().all(|f| f.holonomy.is_trivial(2))).then_some(d)
}

/// The standard corpus, in a fixed order.
pub fn standard() -> Vec<CorpusEntry> {
    let plain = woven("(4,4,4,4)", 2, Method::Cr, 1, "1,2:1,1");
    let kagome = woven("(3,6,3,6)", 1, Method::Cr, 1, "alt");
    let hex = woven("(6,6,6)", 1, Method::NBr, 1, "alt");
    let diag = woven("(4,4,4,4)", 1, Method::NBr, 1, "alt");
    let mut out = vec![
        entry("square-cr-s2-alt", plain.clone()),
        entry("square-cr-s4-alt", woven("(4,4,4,4)", 4, Method::Cr, 1, "alt")),
        entry("square-cr-s4-twill22", woven("(4,4,4,4)", 4, Method::Cr, 1, "1,2:2,2")),
        entry("square-cr-s4-seq31", woven("(4,4,4,4)", 4, Method::Cr, 1, "1,2:3,1")),
        entry("square-br1-s1-alt", diag.clone()),
        entry("square-br1-s2-alt", woven("(4,4,4,4)", 2, Method::NBr, 1, "alt")),
        entry("kagome-cr-s1-alt", kagome.clone()),
        entry("kagome-cr-s2-alt", woven("(3,6,3,6)", 2, Method::Cr, 1, "alt")),
        entry("hex-br1-s1-alt", hex.clone()),
        entry("hex-br1-s2-alt", woven("(6,6,6)", 2, Method::NBr, 1, "alt")),
        entry("hex-cr1-s1-alt", woven("(6,6,6)", 1, Method::NCr, 1, "alt")),
        entry("tri-cr-s1-alt", woven("(3,3,3,3,3,3)", 1, Method::Cr, 1, "alt")),
        entry("tri-cr-s2-alt", woven("(3,3,3,3,3,3)", 2, Method::Cr, 1, "alt")),
        entry("square-cr1-s1-alt", woven("(4,4,4,4)", 1, Method::NCr, 1, "alt")),
        entry("square-br3-s1-alt", woven("(4,4,4,4)", 1, Method::NBr, 3, "alt")),
    ];
    let curl = apply_move(&plain, Move::R1Add { edge: 0, sign: 1, side: Side::Left }).unwrap();
    out.push(entry("square-cr-s2-curl", curl));
    let finger = apply_move(&plain, Move::R2Add { face: 0, i: 0, j: 2, over: Over::First }).unwrap();
    out.push(entry("square-cr-s2-finger", finger));
    for seed in 1..=3 {
        let (_, steps) = fuzz(&plain, 30, seed, 10).unwrap();
        let d = steps.last().map_or(plain.clone(), |s| s.after.clone());
        out.push(entry(&format!("square-cr-s2-fuzz{seed}"), d));
    }
    for (name, x, y) in [
        ("genus2-square-square", &plain, &plain),
        ("genus2-square-kagome", &plain, &kagome),
        ("genus2-kagome-hex", &kagome, &hex),
        ("genus2-diag-diag", &diag, &diag),
        ("genus2-hex-diag", &hex, &diag),
    ] {
        if let Some(d) = edge_sum(x, y) {
            out.push(entry(name, d));
        }
    }
    out
}
