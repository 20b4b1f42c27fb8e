use super::{Move, MoveError, Over, Side};
use crate::diagram::wiring::{rejoin, End, Wiring};
use crate::diagram::{Axis, BoundaryWord, Crossing, Edge, Face, SlotRef, SurfaceDiagram};

const STRAIGHT: [[u8; 2]; 2] = [[0, 2], [1, 3]];

fn illegal(m: Move, why: &str) -> MoveError {
    MoveError::IllegalMove(m, why.to_string())
}

fn face_of(d: &SurfaceDiagram, faces: &[Face], face: usize, len: usize, m: Move) -> Result<Face, MoveError> {
    let f = faces.get(face).ok_or_else(|| illegal(m, "no such face"))?;
    if f.len() != len {
        return Err(illegal(m, "face has the wrong number of sides"));
    }
    if !f.holonomy.is_trivial(d.genus) {
        return Err(illegal(m, "face boundary wraps the surface"));
    }
    Ok(f.clone())
}

fn wiring_of(d: &SurfaceDiagram, skip: &[usize]) -> Wiring {
    let mut w = Wiring::new(d.genus);
    w.crossings = d.crossings.clone();
    w.loops = d.loops.clone();
    for (i, e) in d.edges.iter().enumerate() {
        if !skip.contains(&i) {
            w.link(End::Slot(e.ends[0]), End::Slot(e.ends[1]), e.word.clone());
        }
    }
    w
}

fn r1_add(d: &SurfaceDiagram, m: Move, edge: usize, sign: i8, side: Side) -> Result<SurfaceDiagram, MoveError> {
    let e = d.edges.get(edge).ok_or_else(|| illegal(m, "no such edge"))?;
    // the curl re-enters at slot q; q = 1 puts it right of the edge direction
    let q: u8 = if side == Side::Right { 1 } else { 3 };
    let over = match (q, sign > 0) {
        (1, true) | (3, false) => Axis::Axis02,
        _ => Axis::Axis13,
    };
    let mut w = wiring_of(d, &[edge]);
    let x = w.add_crossing(Crossing::new(over));
    let s = |k: u8| End::Slot(SlotRef::new(x, k));
    w.link(End::Slot(e.ends[0]), s(0), e.word.clone());
    w.link(s(2), s(q), BoundaryWord::empty());
    w.link(s(q + 2), End::Slot(e.ends[1]), BoundaryWord::empty());
    Ok(w.resolve()?)
}

/// The crossing of a removable curl bounding `face`.
fn r1_site(d: &SurfaceDiagram, faces: &[Face], face: usize, m: Move) -> Result<usize, MoveError> {
    let f = face_of(d, faces, face, 1, m)?;
    Ok(f.boundary[0].corner.crossing)
}

/// The two crossings of a removable bigon.
fn r2_site(d: &SurfaceDiagram, faces: &[Face], face: usize, m: Move) -> Result<(usize, usize), MoveError> {
    let f = face_of(d, faces, face, 2, m)?;
    let y = f.boundary[0].corner;
    let x = f.boundary[1].corner;
    if x.crossing == y.crossing {
        return Err(illegal(m, "bigon corners at one crossing"));
    }
    // the strand leaving x at slot k+1 reaches y at slot l
    let cx = d.crossings[x.crossing];
    let cy = d.crossings[y.crossing];
    if cx.is_over(x.slot + 1) != cy.is_over(y.slot) {
        return Err(illegal(m, "strands do not stack"));
    }
    Ok((x.crossing, y.crossing))
}

fn step_ends(d: &SurfaceDiagram, f: &Face, t: usize) -> (SlotRef, SlotRef, bool) {
    let st = f.boundary[t];
    let e = &d.edges[st.edge];
    if st.forward {
        (e.ends[0], e.ends[1], true)
    } else {
        (e.ends[1], e.ends[0], false)
    }
}

fn r2_add(d: &SurfaceDiagram, m: Move, face: usize, i: usize, j: usize, over: Over) -> Result<SurfaceDiagram, MoveError> {
    let faces = d.faces()?;
    let f = faces.get(face).ok_or_else(|| illegal(m, "no such face"))?;
    let n = f.len();
    if i >= n || j >= n || i == j || f.boundary[i].edge == f.boundary[j].edge {
        return Err(illegal(m, "steps must be distinct edges of the face"));
    }
    if !f.holonomy.is_trivial(d.genus) {
        return Err(illegal(m, "face boundary wraps the surface"));
    }
    let mut h = BoundaryWord::empty();
    let mut k = (i + 1) % n;
    while k != j {
        h.extend(&f.step_words[k]);
        k = (k + 1) % n;
    }
    let (ai, bi, fi) = step_ends(d, f, i);
    let (aj, bj, fj) = step_ends(d, f, j);
    let mut w = wiring_of(d, &[f.boundary[i].edge, f.boundary[j].edge]);
    let axis = if over == Over::First { Axis::Axis13 } else { Axis::Axis02 };
    let x = w.add_crossing(Crossing::new(axis));
    let y = w.add_crossing(Crossing::new(axis));
    let sx = |k: u8| End::Slot(SlotRef::new(x, k));
    let sy = |k: u8| End::Slot(SlotRef::new(y, k));
    let pieces_i = [
        (End::Slot(ai), sx(1), f.step_words[i].concat(&h)),
        (sx(3), sy(3), BoundaryWord::empty()),
        (sy(1), End::Slot(bi), h.inverse()),
    ];
    let pieces_j = [
        (End::Slot(aj), sy(0), BoundaryWord::empty()),
        (sy(2), sx(0), BoundaryWord::empty()),
        (sx(2), End::Slot(bj), f.step_words[j].clone()),
    ];
    for (pieces, forward) in [(pieces_i, fi), (pieces_j, fj)] {
        for (a, b, word) in pieces {
            if forward {
                w.link(a, b, word);
            } else {
                w.link(b, a, word.inverse());
            }
        }
    }
    Ok(w.resolve()?)
}

struct Triangle {
    c: [usize; 3],
    k: [u8; 3],
}

fn r3_site(d: &SurfaceDiagram, faces: &[Face], face: usize, m: Move) -> Result<Triangle, MoveError> {
    let f = face_of(d, faces, face, 3, m)?;
    let c = [0, 1, 2].map(|t| f.boundary[t].corner.crossing);
    let k = [0, 1, 2].map(|t| f.boundary[t].corner.slot);
    if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
        return Err(illegal(m, "triangle corners repeat a crossing"));
    }
    let over = |t: usize, s: u8| d.crossings[c[t]].is_over(s);
    // side t joins corner t (slot k+1) to corner t+1 (slot k)
    let stacked = (0..3).any(|t| {
        let u = (t + 1) % 3;
        over(t, k[t] + 1) == over(u, k[u])
    });
    if !stacked {
        return Err(illegal(m, "no strand passes over both others"));
    }
    Ok(Triangle { c, k })
}

fn r3(d: &SurfaceDiagram, tri: Triangle) -> Result<SurfaceDiagram, MoveError> {
    let [c1, c2, c3] = tri.c;
    let [k1, k2, k3] = tri.k;
    let s = |c: usize, k: u8| SlotRef::new(c, k);
    let mut g = d.clone();
    for (from, to) in [(s(c1, k1 + 1), c2), (s(c2, k2 + 1), c3)] {
        let t = g.darts()?;
        let a = t.att[from.dart()];
        let w = g.edges[a.edge].word_from(a.end);
        g.regauge(to, &w);
    }
    let t = g.darts()?;
    let side_edge = |from: SlotRef| t.att[from.dart()];
    let sides = [side_edge(s(c1, k1 + 1)), side_edge(s(c2, k2 + 1)), side_edge(s(c3, k3 + 1))];
    let closing = g.edges[sides[2].edge].word_from(sides[2].end);
    if !closing.is_empty() && !closing.is_trivial(d.genus) {
        return Err(illegal(Move::R3 { face: usize::MAX }, "triangle wraps the surface"));
    }
    let remap = [
        (s(c3, k3 + 3), s(c1, k1)),
        (s(c2, k2 + 2), s(c1, k1 + 1)),
        (s(c1, k1 + 3), s(c2, k2)),
        (s(c3, k3 + 2), s(c2, k2 + 1)),
        (s(c2, k2 + 3), s(c3, k3)),
        (s(c1, k1 + 2), s(c3, k3 + 1)),
    ];
    let side_ids: Vec<usize> = sides.iter().map(|a| a.edge).collect();
    let mut out = g.clone();
    out.edges.clear();
    for (i, e) in g.edges.iter().enumerate() {
        if side_ids.contains(&i) {
            continue;
        }
        let mut e = e.clone();
        for end in &mut e.ends {
            if let Some(&(_, to)) = remap.iter().find(|(from, _)| from == end) {
                *end = to;
            }
        }
        out.edges.push(e);
    }
    // each line now meets the other two in the opposite order, so its inner
    // edge runs against the crossing order of the old side
    let inner = [
        (sides[0], s(c1, k1 + 3), s(c2, k2 + 2)),
        (sides[1], s(c2, k2 + 3), s(c3, k3 + 2)),
        (sides[2], s(c3, k3 + 3), s(c1, k1 + 2)),
    ];
    for (att, near, far) in inner {
        // `near` sits at the crossing the side leaves from in walk order
        let walk_forward = att.end == 0;
        let e = if walk_forward {
            Edge::new(far, near, BoundaryWord::empty())
        } else {
            Edge::new(near, far, BoundaryWord::empty())
        };
        out.edges.push(e);
    }
    Ok(out)
}

pub fn apply_move(d: &SurfaceDiagram, m: Move) -> Result<SurfaceDiagram, MoveError> {
    match m {
        Move::R1Add { edge, sign, side } => r1_add(d, m, edge, sign, side),
        Move::R1Remove { face } => {
            let x = r1_site(d, &d.faces()?, face, m)?;
            Ok(rejoin(d, &[(x, STRAIGHT)])?.0)
        }
        Move::R2Add { face, i, j, over } => r2_add(d, m, face, i, j, over),
        Move::R2Remove { face } => {
            let (x, y) = r2_site(d, &d.faces()?, face, m)?;
            Ok(rejoin(d, &[(x, STRAIGHT), (y, STRAIGHT)])?.0)
        }
        Move::R3 { face } => {
            let tri = r3_site(d, &d.faces()?, face, m)?;
            r3(d, tri).map_err(|e| match e {
                MoveError::IllegalMove(_, why) => MoveError::IllegalMove(m, why),
                other => other,
            })
        }
    }
}

/// Removes and R3 moves only.
pub fn enumerate_simplifying(d: &SurfaceDiagram) -> Vec<Move> {
    let Ok(faces) = d.faces() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (fi, f) in faces.iter().enumerate() {
        let m = match f.len() {
            1 => Move::R1Remove { face: fi },
            2 => Move::R2Remove { face: fi },
            3 => Move::R3 { face: fi },
            _ => continue,
        };
        let ok = match m {
            Move::R1Remove { .. } => r1_site(d, &faces, fi, m).is_ok(),
            Move::R2Remove { .. } => r2_site(d, &faces, fi, m).is_ok(),
            _ => r3_site(d, &faces, fi, m).is_ok() && apply_move(d, m).is_ok(),
        };
        if ok {
            out.push(m);
        }
    }
    out
}

/// Every applicable move, removes and R3 first, then adds.
pub fn enumerate_moves(d: &SurfaceDiagram) -> Vec<Move> {
    let mut out = enumerate_simplifying(d);
    for edge in 0..d.edges.len() {
        for sign in [1, -1] {
            for side in [Side::Left, Side::Right] {
                out.push(Move::R1Add { edge, sign, side });
            }
        }
    }
    if let Ok(faces) = d.faces() {
        for (fi, f) in faces.iter().enumerate() {
            if !f.holonomy.is_trivial(d.genus) {
                continue;
            }
            for i in 0..f.len() {
                for j in 0..f.len() {
                    if i != j && f.boundary[i].edge != f.boundary[j].edge {
                        for over in [Over::First, Over::Second] {
                            out.push(Move::R2Add { face: fi, i, j, over });
                        }
                    }
                }
            }
        }
    }
    out
}
