//! Assembly of diagrams from loose pieces: crossing slots joined by chains of
//! links through pass-through ports. Used by every local rewrite.

use super::{BoundaryWord, Crossing, DiagramError, Edge, SlotRef, SurfaceDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum End {
    Slot(SlotRef),
    Port(usize),
}

/// A piece of strand from `a` to `b`, carrying `word` in that direction.
#[derive(Clone, Debug)]
pub(crate) struct Link {
    pub a: End,
    pub b: End,
    pub word: BoundaryWord,
}

impl Link {
    pub fn new(a: End, b: End, word: BoundaryWord) -> Self {
        Link { a, b, word }
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Wiring {
    pub genus: usize,
    pub crossings: Vec<Crossing>,
    pub links: Vec<Link>,
    pub loops: Vec<BoundaryWord>,
    pub ports: usize,
}

pub(crate) fn slot(c: usize, s: u8) -> End {
    End::Slot(SlotRef::new(c, s))
}

impl Wiring {
    pub fn new(genus: usize) -> Self {
        Wiring {
            genus,
            ..Default::default()
        }
    }

    pub fn add_crossing(&mut self, c: Crossing) -> usize {
        self.crossings.push(c);
        self.crossings.len() - 1
    }

    pub fn add_port(&mut self) -> End {
        self.ports += 1;
        End::Port(self.ports - 1)
    }

    pub fn link(&mut self, a: End, b: End, word: BoundaryWord) {
        self.links.push(Link::new(a, b, word));
    }

    /// Collapses port chains into edges. Each chain keeps the direction that
    /// most of its links agree with.
    pub fn resolve(self) -> Result<SurfaceDiagram, DiagramError> {
        let nslots = 4 * self.crossings.len();
        let mut at_slot: Vec<Option<(usize, usize)>> = vec![None; nslots];
        let mut at_port: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.ports];
        for (li, l) in self.links.iter().enumerate() {
            for (side, end) in [l.a, l.b].into_iter().enumerate() {
                match end {
                    End::Slot(s) => {
                        let d = s.dart();
                        if d >= nslots || at_slot[d].is_some() {
                            return Err(DiagramError::Malformed(format!(
                                "wiring slot c{}.{} used twice or missing",
                                s.crossing, s.slot
                            )));
                        }
                        at_slot[d] = Some((li, side));
                    }
                    End::Port(p) => at_port[p].push((li, side)),
                }
            }
        }
        if let Some(p) = at_port.iter().position(|v| v.len() != 2) {
            return Err(DiagramError::Malformed(format!("wiring port {p} is not pass-through")));
        }
        let mut used = vec![false; self.links.len()];
        let mut out = SurfaceDiagram {
            genus: self.genus,
            crossings: self.crossings.clone(),
            edges: Vec::new(),
            loops: self.loops.clone(),
        };
        // walks from (link, side) outward; returns far end, word and vote
        let walk = |used: &mut Vec<bool>, mut li: usize, mut side: usize| -> (End, BoundaryWord, i64, usize, usize) {
            let mut word = BoundaryWord::empty();
            let mut vote = 0i64;
            loop {
                used[li] = true;
                let l = &self.links[li];
                if side == 0 {
                    word.extend(&l.word);
                    vote += 1;
                } else {
                    word.extend(&l.word.inverse());
                    vote -= 1;
                }
                let far = if side == 0 { l.b } else { l.a };
                match far {
                    End::Slot(_) => return (far, word, vote, li, 1 - side),
                    End::Port(p) => {
                        let inc = &at_port[p];
                        let here = (li, 1 - side);
                        let next = if inc[0] == here { inc[1] } else { inc[0] };
                        if used[next.0] {
                            return (far, word, vote, next.0, next.1);
                        }
                        li = next.0;
                        side = next.1;
                    }
                }
            }
        };
        for (d, &at) in at_slot.iter().enumerate() {
            let Some((li, side)) = at else {
                return Err(DiagramError::Malformed(format!("wiring slot {d} unattached")));
            };
            if used[li] {
                continue;
            }
            let (far, word, vote, _, _) = walk(&mut used, li, side);
            let End::Slot(t) = far else {
                return Err(DiagramError::Malformed("wiring chain does not end at a slot".into()));
            };
            let e = Edge::new(SlotRef::from_dart(d), t, word);
            out.edges.push(if vote < 0 { e.reversed() } else { e });
        }
        for li in 0..self.links.len() {
            if used[li] {
                continue;
            }
            let (_, word, vote, _, _) = walk(&mut used, li, 0);
            out.loops.push(if vote < 0 { word.inverse() } else { word });
        }
        Ok(out)
    }
}

/// Removes the listed crossings, joining each given pair of their slots, and
/// renumbers the survivors in their original order. Returns the new diagram
/// and the old-to-new crossing map.
pub(crate) fn rejoin(
    d: &SurfaceDiagram,
    removals: &[(usize, [[u8; 2]; 2])],
) -> Result<(SurfaceDiagram, Vec<Option<usize>>), DiagramError> {
    let n = d.crossings.len();
    let mut port_of: Vec<Option<usize>> = vec![None; 4 * n];
    let mut removed = vec![false; n];
    let mut w = Wiring::new(d.genus);
    for &(c, pairs) in removals {
        if c >= n {
            return Err(DiagramError::UnknownCrossing(c));
        }
        removed[c] = true;
        for pair in pairs {
            let End::Port(p) = w.add_port() else { unreachable!() };
            for s in pair {
                port_of[4 * c + s as usize] = Some(p);
            }
        }
    }
    let mut map = vec![None; n];
    for c in 0..n {
        if !removed[c] {
            map[c] = Some(w.add_crossing(d.crossings[c]));
        }
    }
    let end = |s: SlotRef| -> End {
        match map[s.crossing] {
            Some(nc) => End::Slot(SlotRef::new(nc, s.slot)),
            None => End::Port(port_of[s.dart()].expect("removed crossing slot must be paired")),
        }
    };
    for e in &d.edges {
        w.link(end(e.ends[0]), end(e.ends[1]), e.word.clone());
    }
    w.loops = d.loops.clone();
    Ok((w.resolve()?, map))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn removing_all_crossings_straight_gives_threads_as_loops() {
        let d = plain_weave_2x2();
        let straight = [[0, 2], [1, 3]];
        let removals: Vec<_> = (0..4).map(|c| (c, straight)).collect();
        let (r, map) = rejoin(&d, &removals).unwrap();
        assert!(map.iter().all(|m| m.is_none()));
        assert!(r.crossings.is_empty());
        let mut h: Vec<Vec<i32>> = r.loops.iter().map(|w| w.abelianize(1)).collect();
        h.sort();
        assert_eq!(h, vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]]);
    }

    #[test]
    fn removing_nothing_is_identity() {
        let d = plain_weave_2x2();
        let (r, _) = rejoin(&d, &[]).unwrap();
        assert_eq!(r.faces().unwrap().len(), 4);
        assert!(r.is_coherently_oriented());
        assert_eq!(r.crossings, d.crossings);
    }
}
