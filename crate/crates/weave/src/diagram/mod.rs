//! Combinatorial model of a weaving diagram on a closed orientable surface.
//!
//! A diagram is a 4-valent graph drawn on a genus-`g` unit cell. Each crossing
//! has four slots numbered counterclockwise `0..4`; opposite slots `s` and
//! `s + 2` belong to the same strand. Every edge joins two slots and carries
//! the [`BoundaryWord`] of identified cell sides it crosses, read from
//! `ends[0]` to `ends[1]`. The edge direction doubles as the thread
//! orientation when the diagram is coherently oriented.
//!
//! Closed components without any crossing are kept separately as `loops`.

mod faces;
pub mod format;
mod iso;
mod predicates;
mod threads;
pub(crate) mod wiring;
mod word;

pub use faces::{Corner, Face};
pub use faces::FaceStep;
pub use iso::{find_isomorphism, translation_symmetries, Isomorphism, WordCheck};
pub use predicates::{ValidationIssue, ValidationReport};
pub use threads::{normalize_sign, primitive_direction, strand_threads, Thread, ThreadVisit};
pub use word::{BoundaryWord, Letter};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("thread {0} is null-homologous")]
    ZeroHomologyThread(usize),
    #[error("unknown crossing c{0}")]
    UnknownCrossing(usize),
    #[error("diagram is not coherently oriented")]
    Unoriented,
}

/// Which pair of opposite slots carries the over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Axis02,
    Axis13,
}

impl Axis {
    pub fn parity(self) -> u8 {
        match self {
            Axis::Axis02 => 0,
            Axis::Axis13 => 1,
        }
    }

    pub fn from_parity(p: u8) -> Axis {
        if p.is_multiple_of(2) {
            Axis::Axis02
        } else {
            Axis::Axis13
        }
    }

    pub fn flipped(self) -> Axis {
        Axis::from_parity(self.parity() + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub over: Axis,
}

impl Crossing {
    pub fn new(over: Axis) -> Self {
        Crossing { over }
    }

    /// Whether the strand through `slot` is the over-strand.
    pub fn is_over(&self, slot: u8) -> bool {
        slot % 2 == self.over.parity()
    }
}

/// A slot of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRef {
    pub crossing: usize,
    pub slot: u8,
}

impl SlotRef {
    pub fn new(crossing: usize, slot: u8) -> Self {
        SlotRef { crossing, slot: slot % 4 }
    }

    pub fn dart(self) -> usize {
        4 * self.crossing + self.slot as usize
    }

    pub fn from_dart(d: usize) -> Self {
        SlotRef {
            crossing: d / 4,
            slot: (d % 4) as u8,
        }
    }

    /// The slot across the crossing on the same strand.
    pub fn opposite(self) -> Self {
        SlotRef::new(self.crossing, self.slot + 2)
    }

    pub fn rotated(self, k: u8) -> Self {
        SlotRef::new(self.crossing, self.slot + k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: [SlotRef; 2],
    pub word: BoundaryWord,
}

impl Edge {
    pub fn new(from: SlotRef, to: SlotRef, word: BoundaryWord) -> Self {
        Edge {
            ends: [from, to],
            word,
        }
    }

    /// Word read when leaving through end `end`.
    pub fn word_from(&self, end: usize) -> BoundaryWord {
        if end == 0 {
            self.word.clone()
        } else {
            self.word.inverse()
        }
    }

    pub fn reversed(&self) -> Edge {
        Edge {
            ends: [self.ends[1], self.ends[0]],
            word: self.word.inverse(),
        }
    }
}

/// Where a dart's edge end lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub edge: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceDiagram {
    pub genus: usize,
    pub crossings: Vec<Crossing>,
    pub edges: Vec<Edge>,
    /// Crossingless closed components.
    pub loops: Vec<BoundaryWord>,
}

impl SurfaceDiagram {
    pub fn new(genus: usize) -> Self {
        SurfaceDiagram {
            genus,
            crossings: Vec::new(),
            edges: Vec::new(),
            loops: Vec::new(),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Dart attachment table, or an error naming the first broken slot.
    pub fn attachments(&self) -> Result<Vec<Attachment>, DiagramError> {
        let n = 4 * self.crossings.len();
        let mut table: Vec<Option<Attachment>> = vec![None; n];
        for (ei, e) in self.edges.iter().enumerate() {
            for (end, s) in e.ends.iter().enumerate() {
                if s.crossing >= self.crossings.len() || s.slot > 3 {
                    return Err(DiagramError::Malformed(format!(
                        "edge {ei} references missing slot c{}.{}",
                        s.crossing, s.slot
                    )));
                }
                let d = s.dart();
                if table[d].is_some() {
                    return Err(DiagramError::Malformed(format!(
                        "slot c{}.{} used twice",
                        s.crossing, s.slot
                    )));
                }
                table[d] = Some(Attachment { edge: ei, end });
            }
        }
        table
            .into_iter()
            .enumerate()
            .map(|(d, a)| {
                a.ok_or_else(|| {
                    let s = SlotRef::from_dart(d);
                    DiagramError::Malformed(format!("slot c{}.{} is unattached", s.crossing, s.slot))
                })
            })
            .collect()
    }

    /// Precomputed navigation tables for a well-formed diagram.
    pub fn darts(&self) -> Result<DartTable, DiagramError> {
        let att = self.attachments()?;
        let other = att
            .iter()
            .map(|a| self.edges[a.edge].ends[1 - a.end].dart())
            .collect();
        Ok(DartTable { att, other })
    }

    /// Sign of crossing `c` under the right-hand rule, when both strands are
    /// coherently oriented through it.
    pub fn crossing_sign(&self, darts: &DartTable, c: usize) -> Option<i8> {
        let outgoing = |s: u8| -> Option<u8> {
            let a = darts.att[SlotRef::new(c, s).dart()];
            let b = darts.att[SlotRef::new(c, s + 2).dart()];
            match (a.end, b.end) {
                (0, 1) => Some(s),
                (1, 0) => Some((s + 2) % 4),
                _ => None,
            }
        };
        let over = self.crossings[c].over.parity();
        let over_out = outgoing(over)?;
        let under_out = outgoing(over + 1)?;
        Some(if under_out == (over_out + 1) % 4 { 1 } else { -1 })
    }

    /// True when every strand passes every crossing from an incoming to an
    /// outgoing edge end.
    pub fn is_coherently_oriented(&self) -> bool {
        let Ok(darts) = self.darts() else {
            return false;
        };
        (0..self.crossings.len()).all(|c| self.crossing_sign(&darts, c).is_some())
    }

    /// Flips edges so that each thread is traversed consistently. Each thread
    /// keeps the direction of its lowest-numbered edge.
    pub fn orient_threads(&self) -> Result<SurfaceDiagram, DiagramError> {
        let darts = self.darts()?;
        let mut out = self.clone();
        let mut seen = vec![false; self.edges.len()];
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            // walk forward from end 0 of `start`
            let mut e = start;
            let mut from_end = 0usize;
            loop {
                seen[e] = true;
                if from_end == 1 {
                    out.edges[e] = self.edges[e].reversed();
                }
                let arrive = self.edges[e].ends[1 - from_end];
                let next = darts.att[arrive.opposite().dart()];
                if next.edge == start && next.end == 0 {
                    break;
                }
                if seen[next.edge] {
                    break;
                }
                e = next.edge;
                from_end = next.end;
            }
        }
        Ok(out)
    }

    /// Rotates each crossing frame so the over-strand sits on slots 1 and 3.
    pub fn orient_crossings(&self) -> SurfaceDiagram {
        let mut out = self.clone();
        let shift: Vec<u8> = self
            .crossings
            .iter()
            .map(|c| if c.over == Axis::Axis02 { 1 } else { 0 })
            .collect();
        for c in &mut out.crossings {
            c.over = Axis::Axis13;
        }
        for e in &mut out.edges {
            for s in &mut e.ends {
                *s = s.rotated(shift[s.crossing]);
            }
        }
        out
    }

    /// Same projection with the over/under data at `c` exchanged.
    pub fn with_crossing_flipped(&self, c: usize) -> SurfaceDiagram {
        let mut out = self.clone();
        out.crossings[c].over = out.crossings[c].over.flipped();
        out
    }

    /// Changes the basepoint of the words around crossing `c`: every word read
    /// away from `c` is prefixed by `u`. Closed-path words are conjugated, so
    /// homology and triviality are unchanged.
    pub fn regauge(&mut self, c: usize, u: &BoundaryWord) {
        if u.is_empty() {
            return;
        }
        let ui = u.inverse();
        for e in &mut self.edges {
            if e.ends[0].crossing == c {
                e.word = u.concat(&e.word);
            }
            if e.ends[1].crossing == c {
                e.word = e.word.concat(&ui);
            }
        }
    }
}

/// Navigation tables: `att[d]` is the edge end at dart `d`, `other[d]` the dart
/// at the far end of that edge.
#[derive(Clone, Debug)]
pub struct DartTable {
    pub att: Vec<Attachment>,
    pub other: Vec<usize>,
}

impl DartTable {
    pub fn edge_of(&self, d: usize) -> usize {
        self.att[d].edge
    }
}

/// Word read along the edge leaving dart `d`.
pub(crate) fn word_leaving(diagram: &SurfaceDiagram, darts: &DartTable, d: usize) -> BoundaryWord {
    let a = darts.att[d];
    diagram.edges[a.edge].word_from(a.end)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Alternating plain weave on a 2x2 torus cell. Crossing `c = 2i + j`
    /// sits at column `j`, row `i`; slot 0 east, 1 north, 2 west, 3 south.
    /// Horizontal threads are over where `i + j` is even.
    pub fn plain_weave_2x2() -> SurfaceDiagram {
        plain_weave(2, 2, |i, j| (i + j) % 2 == 0)
    }

    pub fn plain_weave(rows: usize, cols: usize, h_over: impl Fn(usize, usize) -> bool) -> SurfaceDiagram {
        let mut d = SurfaceDiagram::new(1);
        let id = |i: usize, j: usize| i * cols + j;
        for i in 0..rows {
            for j in 0..cols {
                d.crossings.push(Crossing::new(if h_over(i, j) { Axis::Axis02 } else { Axis::Axis13 }));
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                let jn = (j + 1) % cols;
                let word = if jn == 0 { BoundaryWord::from_wrap((1, 0)) } else { BoundaryWord::empty() };
                d.edges.push(Edge::new(SlotRef::new(id(i, j), 0), SlotRef::new(id(i, jn), 2), word));
                let inext = (i + 1) % rows;
                let word = if inext == 0 { BoundaryWord::from_wrap((0, 1)) } else { BoundaryWord::empty() };
                d.edges.push(Edge::new(SlotRef::new(id(i, j), 1), SlotRef::new(id(inext, j), 3), word));
            }
        }
        d
    }

    /// One crossing whose two strands wrap the torus in the `a` and `b` directions.
    pub fn torus_curl() -> SurfaceDiagram {
        let mut d = SurfaceDiagram::new(1);
        d.crossings.push(Crossing::new(Axis::Axis13));
        d.edges.push(Edge::new(SlotRef::new(0, 0), SlotRef::new(0, 2), BoundaryWord::from_wrap((1, 0))));
        d.edges.push(Edge::new(SlotRef::new(0, 1), SlotRef::new(0, 3), BoundaryWord::from_wrap((0, 1))));
        d
    }
}
