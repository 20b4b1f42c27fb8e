//! Polygonal-link transforms. Each vertex becomes a block of straight chords
//! inside a small disk whose boundary points sit at the edge directions; two
//! chords cross exactly when their endpoints interleave.
//!
//! - `Cr`: one line per edge, opposite edges joined through the vertex.
//! - `nCr`: two lines per edge; the chord from the clockwise line of edge `i`
//!   to the counterclockwise line of edge `i + 1` crosses both neighbours.
//! - `nBr`: two lines per edge; the counterclockwise line of edge `i` turns
//!   to the clockwise line of edge `i + 1` without crossing.
//!
//! For the double-line methods each tiling edge carries `m` crossings
//! between its two lines; odd `m` swaps them.

use serde::Serialize;

use super::{PeriodicTiling, TessellationError};
use crate::diagram::wiring::{slot, End, Wiring};
use crate::diagram::{Axis, BoundaryWord, Crossing, SurfaceDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Cr,
    NCr,
    NBr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TransformSpec {
    pub method: Method,
    pub m: usize,
}

impl TransformSpec {
    pub fn new(method: Method, m: usize) -> Result<Self, TessellationError> {
        if method == Method::Cr && m != 1 {
            return Err(TessellationError::BadTwistCount(method));
        }
        Ok(TransformSpec { method, m })
    }
}

/// Offset of the two lines of an edge from the edge direction.
const SPREAD: f64 = 0.2;

struct Chord {
    from: (f64, End),
    to: (f64, End),
}

fn point(angle: f64) -> (f64, f64) {
    (angle.cos(), angle.sin())
}

/// Wires a disk of straight chords: crossings where chords interleave, and
/// links along each chord from its start to its end.
fn chord_block(w: &mut Wiring, chords: &[Chord]) {
    // (crossing, slot toward start, slot toward end, parameter along chord)
    let mut hits: Vec<Vec<(usize, u8, u8, f64)>> = vec![Vec::new(); chords.len()];
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            let (p, q) = (point(chords[i].from.0), point(chords[i].to.0));
            let (r, s) = (point(chords[j].from.0), point(chords[j].to.0));
            let d1 = (q.0 - p.0, q.1 - p.1);
            let d2 = (s.0 - r.0, s.1 - r.1);
            let den = d1.0 * d2.1 - d1.1 * d2.0;
            if den.abs() < 1e-12 {
                continue;
            }
            let t = ((r.0 - p.0) * d2.1 - (r.1 - p.1) * d2.0) / den;
            let u = ((r.0 - p.0) * d1.1 - (r.1 - p.1) * d1.0) / den;
            if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&u) {
                continue;
            }
            let c = w.add_crossing(Crossing::new(Axis::Axis02));
            let mut dirs = [
                (d1.1.atan2(d1.0), i, true),
                ((-d1.1).atan2(-d1.0), i, false),
                (d2.1.atan2(d2.0), j, true),
                ((-d2.1).atan2(-d2.0), j, false),
            ];
            dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let slot_of = |chord: usize, forward: bool| dirs.iter().position(|x| x.1 == chord && x.2 == forward).unwrap() as u8;
            hits[i].push((c, slot_of(i, false), slot_of(i, true), t));
            hits[j].push((c, slot_of(j, false), slot_of(j, true), u));
        }
    }
    for (ch, hs) in chords.iter().zip(hits.iter_mut()) {
        hs.sort_by(|a, b| a.3.total_cmp(&b.3));
        let mut prev = ch.from.1;
        for &(c, back, fwd, _) in hs.iter() {
            w.link(prev, slot(c, back), BoundaryWord::empty());
            prev = slot(c, fwd);
        }
        w.link(prev, ch.to.1, BoundaryWord::empty());
    }
}

/// Replaces vertices and edges of the tiling by the chosen blocks. Crossings
/// are numbered block by block in vertex order, then edge regions in edge
/// order; every crossing starts with axis 02 over.
pub fn transform(t: &PeriodicTiling, spec: TransformSpec) -> Result<SurfaceDiagram, TessellationError> {
    let double = spec.method != Method::Cr;
    if spec.method == Method::Cr {
        if spec.m != 1 {
            return Err(TessellationError::BadTwistCount(spec.method));
        }
        if let Some(r) = t.rotation.iter().find(|r| r.len() % 2 != 0) {
            return Err(TessellationError::OddValencyForCr(r.len()));
        }
    }
    let mut w = Wiring::new(1);
    // ports[edge][end][line]; line 0 is the counterclockwise side
    let lines = if double { 2 } else { 1 };
    let mut ports = vec![[[End::Port(0); 2]; 2]; t.edges.len()];
    for p in ports.iter_mut() {
        for end in p.iter_mut() {
            for l in end.iter_mut().take(lines) {
                *l = w.add_port();
            }
        }
    }
    for r in &t.rotation {
        let n = r.len();
        let mut chords = Vec::new();
        match spec.method {
            Method::Cr => {
                // a small tilt keeps the chords through the centre generic
                let at = |i: usize| {
                    let (e, end, a) = r[i];
                    (a + 0.01 * i as f64, ports[e][end][0])
                };
                for i in 0..n / 2 {
                    chords.push(Chord {
                        from: at(i + n / 2),
                        to: at(i),
                    });
                }
            }
            Method::NCr | Method::NBr => {
                let side = |i: usize, line: usize| {
                    let (e, end, a) = r[i % n];
                    let a = if line == 0 { a + SPREAD } else { a - SPREAD };
                    (a, ports[e][end][line])
                };
                for i in 0..n {
                    let (from, to) = if spec.method == Method::NCr {
                        (side(i, 1), side(i + 1, 0))
                    } else {
                        (side(i, 0), side(i + 1, 1))
                    };
                    chords.push(Chord { from, to });
                }
            }
        }
        chord_block(&mut w, &chords);
    }
    for (ei, e) in t.edges.iter().enumerate() {
        let word = BoundaryWord::from_wrap(e.wrap);
        let p = ports[ei];
        if !double {
            w.link(p[0][0], p[1][0], word);
            continue;
        }
        // walking from end 0, the counterclockwise line is on the left
        let (mut left, mut right) = (p[0][0], p[0][1]);
        let mut first = true;
        for _ in 0..spec.m {
            let x = w.add_crossing(Crossing::new(Axis::Axis02));
            let wd = if first { word.clone() } else { BoundaryWord::empty() };
            w.link(left, slot(x, 1), wd.clone());
            w.link(right, slot(x, 2), wd);
            first = false;
            left = slot(x, 0);
            right = slot(x, 3);
        }
        let wd = if first { word } else { BoundaryWord::empty() };
        w.link(left, p[1][1], wd.clone());
        w.link(right, p[1][0], wd);
    }
    Ok(w.resolve()?.orient_threads()?)
}
