//! Smoothings of crossings and the loop census of a state.

use std::fmt;

use crate::diagram::wiring::rejoin;
use crate::diagram::{normalize_sign, DiagramError, SurfaceDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Split {
    A,
    B,
}

/// Slot pairs joined by a smoothing. The A-smoothing keeps the two corners
/// swept counterclockwise by the over-strand apart and joins across them.
pub fn split_pairs(over_parity: u8, kind: Split) -> [[u8; 2]; 2] {
    let p = over_parity % 2;
    match kind {
        Split::A => [[p + 1, (p + 2) % 4], [(p + 3) % 4, p]],
        Split::B => [[p, p + 1], [p + 2, (p + 3) % 4]],
    }
}

/// Sorted multiset of nonzero winding vectors, each with its first nonzero
/// entry positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindingKey(pub Vec<(Vec<i32>, u32)>);

impl WindingKey {
    pub fn from_vectors(mut vs: Vec<Vec<i32>>) -> Self {
        for v in &mut vs {
            *v = normalize_sign(v);
        }
        vs.sort();
        let mut out: Vec<(Vec<i32>, u32)> = Vec::new();
        for v in vs {
            match out.last_mut() {
                Some((w, m)) if *w == v => *m += 1,
                _ => out.push((v, 1)),
            }
        }
        WindingKey(out)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every vector, repeated by multiplicity.
    pub fn vectors(&self) -> impl Iterator<Item = &Vec<i32>> {
        self.0.iter().flat_map(|(v, m)| std::iter::repeat_n(v, *m as usize))
    }

    pub fn map(&self, f: impl Fn(&[i32]) -> Vec<i32>) -> WindingKey {
        WindingKey::from_vectors(self.vectors().map(|v| f(v)).collect())
    }
}

impl fmt::Display for WindingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, (v, m)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            write!(f, "({})^{m}", parts.join(","))?;
        }
        write!(f, ">")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub assignment: Vec<Split>,
    pub trivial_loops: usize,
    pub windings: WindingKey,
}

/// Removes crossing `c`, joining its slots by the chosen smoothing.
pub fn split(d: &SurfaceDiagram, c: usize, kind: Split) -> Result<SurfaceDiagram, DiagramError> {
    let x = d.crossings.get(c).ok_or(DiagramError::UnknownCrossing(c))?;
    Ok(rejoin(d, &[(c, split_pairs(x.over.parity(), kind))])?.0)
}

/// A resolved loop: every dart it passes, and its homology.
#[derive(Clone, Debug)]
pub struct StateLoop {
    pub darts: Vec<usize>,
    pub homology: Vec<i32>,
}

/// Precomputed tables for tracing the loops of many states.
#[derive(Clone, Debug)]
pub struct StateTracer {
    pub crossings: usize,
    genus: usize,
    other: Vec<usize>,
    hol: Vec<Vec<i32>>,
    pair: [Vec<usize>; 2],
    base_trivial: usize,
    base_windings: Vec<Vec<i32>>,
}

impl StateTracer {
    pub fn new(d: &SurfaceDiagram) -> Result<Self, DiagramError> {
        let t = d.darts()?;
        let n = t.other.len();
        let hol = (0..n)
            .map(|x| {
                let a = t.att[x];
                d.edges[a.edge].word_from(a.end).abelianize(d.genus)
            })
            .collect();
        let mut pair = [vec![0; n], vec![0; n]];
        for (c, x) in d.crossings.iter().enumerate() {
            for (k, kind) in [Split::A, Split::B].into_iter().enumerate() {
                for [s, t] in split_pairs(x.over.parity(), kind) {
                    pair[k][4 * c + s as usize] = 4 * c + t as usize;
                    pair[k][4 * c + t as usize] = 4 * c + s as usize;
                }
            }
        }
        let mut base_trivial = 0;
        let mut base_windings = Vec::new();
        for w in &d.loops {
            let h = w.abelianize(d.genus);
            if h.iter().all(|&x| x == 0) {
                base_trivial += 1;
            } else {
                base_windings.push(h);
            }
        }
        Ok(StateTracer {
            crossings: d.crossings.len(),
            genus: d.genus,
            other: t.other,
            hol,
            pair,
            base_trivial,
            base_windings,
        })
    }

    /// Loops of the state where crossing `c` is B-split iff `is_b(c)`.
    /// Crossingless loops of the diagram are not included.
    pub fn loops(&self, is_b: impl Fn(usize) -> bool) -> Vec<StateLoop> {
        let n = self.other.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut l = StateLoop {
                darts: Vec::new(),
                homology: vec![0; 2 * self.genus],
            };
            let mut d = start;
            loop {
                seen[d] = true;
                l.darts.push(d);
                for (h, x) in l.homology.iter_mut().zip(&self.hol[d]) {
                    *h += x;
                }
                let e = self.other[d];
                seen[e] = true;
                l.darts.push(e);
                d = self.pair[is_b(e / 4) as usize][e];
                if d == start {
                    break;
                }
            }
            out.push(l);
        }
        out
    }

    /// Counts loops of the state given as a bitmask (bit set = B).
    /// Returns the trivial-loop count and the winding vectors.
    pub fn census_mask(&self, mask: u64, seen: &mut Vec<bool>, windings: &mut Vec<Vec<i32>>) -> usize {
        let n = self.other.len();
        seen.clear();
        seen.resize(n, false);
        windings.clear();
        windings.extend(self.base_windings.iter().cloned());
        let mut trivial = self.base_trivial;
        let mut h = vec![0i32; 2 * self.genus];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            h.iter_mut().for_each(|x| *x = 0);
            let mut d = start;
            loop {
                seen[d] = true;
                for (a, b) in h.iter_mut().zip(&self.hol[d]) {
                    *a += b;
                }
                let e = self.other[d];
                seen[e] = true;
                d = self.pair[((mask >> (e / 4)) & 1) as usize][e];
                if d == start {
                    break;
                }
            }
            if h.iter().all(|&x| x == 0) {
                trivial += 1;
            } else {
                windings.push(h.clone());
            }
        }
        trivial
    }

    pub fn resolve(&self, assignment: &[Split]) -> State {
        let mut trivial = self.base_trivial;
        let mut w = self.base_windings.clone();
        for l in self.loops(|c| assignment[c] == Split::B) {
            if l.homology.iter().all(|&x| x == 0) {
                trivial += 1;
            } else {
                w.push(l.homology);
            }
        }
        State {
            assignment: assignment.to_vec(),
            trivial_loops: trivial,
            windings: WindingKey::from_vectors(w),
        }
    }
}

pub fn resolve_state(d: &SurfaceDiagram, assignment: &[Split]) -> Result<State, DiagramError> {
    if assignment.len() != d.crossings.len() {
        return Err(DiagramError::Malformed(format!(
            "state has {} entries for {} crossings",
            assignment.len(),
            d.crossings.len()
        )));
    }
    Ok(StateTracer::new(d)?.resolve(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Axis, BoundaryWord, Crossing, Edge, SlotRef};

    fn torus_curl() -> SurfaceDiagram {
        let mut d = SurfaceDiagram::new(1);
        d.crossings.push(Crossing::new(Axis::Axis13));
        d.edges.push(Edge::new(SlotRef::new(0, 0), SlotRef::new(0, 2), BoundaryWord::from_wrap((1, 0))));
        d.edges.push(Edge::new(SlotRef::new(0, 1), SlotRef::new(0, 3), BoundaryWord::from_wrap((0, 1))));
        d
    }

    #[test]
    fn torus_curl_smoothings_wind_diagonally() {
        // both smoothings of the a/b crossing give one loop of class a +- b
        let d = torus_curl();
        let a = split(&d, 0, Split::A).unwrap();
        let b = split(&d, 0, Split::B).unwrap();
        assert!(a.crossings.is_empty() && b.crossings.is_empty());
        assert_eq!(a.loops.len(), 1);
        assert_eq!(b.loops.len(), 1);
        let mut got = vec![
            normalize_sign(&a.loops[0].abelianize(1)),
            normalize_sign(&b.loops[0].abelianize(1)),
        ];
        got.sort();
        assert_eq!(got, vec![vec![1, -1], vec![1, 1]]);
        let sa = resolve_state(&d, &[Split::A]).unwrap();
        assert_eq!(sa.trivial_loops, 0);
        assert_eq!(sa.windings, WindingKey::from_vectors(vec![a.loops[0].abelianize(1)]));
    }

    #[test]
    fn free_winding_loop_state() {
        let mut d = SurfaceDiagram::new(1);
        d.loops.push(BoundaryWord::parse("a", 1).unwrap());
        let s = resolve_state(&d, &[]).unwrap();
        assert_eq!(s.trivial_loops, 0);
        assert_eq!(s.windings.to_string(), "<(1,0)^1>");
    }

    #[test]
    fn key_display_and_order() {
        let k = WindingKey::from_vectors(vec![vec![0, -2], vec![1, 0], vec![0, 2]]);
        assert_eq!(k.to_string(), "<(0,2)^2 (1,0)^1>");
        assert_eq!(WindingKey::default().to_string(), "<>");
    }

    #[test]
    fn splits_are_complementary() {
        for p in 0..2 {
            let a = split_pairs(p, Split::A);
            let b = split_pairs(p, Split::B);
            let mut all: Vec<[u8; 2]> = a.iter().chain(b.iter()).map(|x| { let mut y = *x; y.sort(); y }).collect();
            all.sort();
            assert_eq!(all, vec![[0, 1], [0, 3], [1, 2], [2, 3]]);
        }
    }
}
