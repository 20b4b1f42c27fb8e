//! r-parallel of a diagram: every thread replaced by `r` parallel copies.
//!
//! Each edge end at slot `s` of crossing `c` becomes `r` ports numbered
//! counterclockwise around `c`; copy `k` at one end of an edge meets copy
//! `r - 1 - k` at the other. A crossing becomes an `r x r` grid drawn in its
//! own frame (slot 0 east, 1 north, 2 west, 3 south): grid crossing `(y, x)`
//! has id `c r^2 + y r + x`, with rows counted from the south and columns
//! from the west.

use super::InvariantError;
use crate::diagram::wiring::{End, Wiring};
use crate::diagram::{SlotRef, SurfaceDiagram};

pub fn r_parallel(d: &SurfaceDiagram, r: usize) -> Result<SurfaceDiagram, InvariantError> {
    if r < 1 {
        return Err(InvariantError::InvalidParallel(r));
    }
    let t = d.darts()?;
    let n = d.crossings.len();
    let mut w = Wiring::new(d.genus);
    for c in 0..n {
        for _ in 0..r * r {
            w.add_crossing(d.crossings[c]);
        }
    }
    let port = |c: usize, s: u8, k: usize| End::Port((4 * c + s as usize) * r + k);
    w.ports = 4 * n * r;
    let g = |c: usize, y: usize, x: usize, s: u8| End::Slot(SlotRef::new(c * r * r + y * r + x, s));
    for c in 0..n {
        // a strand runs from its incoming slot to the opposite one
        let incoming = |s: u8| t.att[SlotRef::new(c, s).dart()].end == 1;
        let west_to_east = incoming(2) || !incoming(0);
        let south_to_north = incoming(3) || !incoming(1);
        let link = |w: &mut Wiring, a: End, b: End, forward: bool| {
            let (a, b) = if forward { (a, b) } else { (b, a) };
            w.link(a, b, Default::default());
        };
        for y in 0..r {
            link(&mut w, port(c, 2, r - 1 - y), g(c, y, 0, 2), west_to_east);
            for x in 0..r - 1 {
                link(&mut w, g(c, y, x, 0), g(c, y, x + 1, 2), west_to_east);
            }
            link(&mut w, g(c, y, r - 1, 0), port(c, 0, y), west_to_east);
        }
        for x in 0..r {
            link(&mut w, port(c, 3, x), g(c, 0, x, 3), south_to_north);
            for y in 0..r - 1 {
                link(&mut w, g(c, y, x, 1), g(c, y + 1, x, 3), south_to_north);
            }
            link(&mut w, g(c, r - 1, x, 1), port(c, 1, r - 1 - x), south_to_north);
        }
    }
    for e in &d.edges {
        let [u, v] = e.ends;
        for k in 0..r {
            w.link(port(u.crossing, u.slot, k), port(v.crossing, v.slot, r - 1 - k), e.word.clone());
        }
    }
    for l in &d.loops {
        for _ in 0..r {
            w.loops.push(l.clone());
        }
    }
    Ok(w.resolve()?)
}
