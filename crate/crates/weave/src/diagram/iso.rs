use std::collections::VecDeque;

use super::threads::normalize_sign;
use super::{DartTable, SlotRef, SurfaceDiagram};

/// A map of diagrams: crossing `c` goes to `crossing_map[c]`, and its slot `s`
/// to slot `s + rotation[c]` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub crossing_map: Vec<usize>,
    pub rotation: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordCheck {
    Ignore,
    /// Edge homologies must agree up to a change of basepoint at each crossing.
    Homology,
}

struct Side<'a> {
    d: &'a SurfaceDiagram,
    t: DartTable,
}

fn try_extend(a: &Side, b: &Side, start: usize, target: usize, rot: u8, over: bool, words: WordCheck) -> Option<Isomorphism> {
    let n = a.d.crossings.len();
    let mut map = vec![usize::MAX; n];
    let mut rotation = vec![0u8; n];
    let mut used = vec![false; n];
    let over_ok = |c: usize, t: usize, r: u8| -> bool {
        !over || (a.d.crossings[c].over.parity() + r) % 2 == b.d.crossings[t].over.parity()
    };
    if !over_ok(start, target, rot) {
        return None;
    }
    map[start] = target;
    rotation[start] = rot;
    used[target] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for s in 0..4u8 {
            let da = SlotRef::new(c, s).dart();
            let fa = SlotRef::from_dart(a.t.other[da]);
            let db = SlotRef::new(map[c], s + rotation[c]).dart();
            let fb = SlotRef::from_dart(b.t.other[db]);
            let r = (4 + fb.slot - fa.slot) % 4;
            if map[fa.crossing] == usize::MAX {
                if used[fb.crossing] || !over_ok(fa.crossing, fb.crossing, r) {
                    return None;
                }
                map[fa.crossing] = fb.crossing;
                rotation[fa.crossing] = r;
                used[fb.crossing] = true;
                queue.push_back(fa.crossing);
            } else if map[fa.crossing] != fb.crossing || rotation[fa.crossing] != r {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    if words == WordCheck::Homology && !homology_gauge_ok(a, b, &map, &rotation) {
        return None;
    }
    Some(Isomorphism {
        crossing_map: map,
        rotation,
    })
}

/// Checks that the homology change on every edge is a coboundary.
fn homology_gauge_ok(a: &Side, b: &Side, map: &[usize], rotation: &[u8]) -> bool {
    let g = a.d.genus;
    let n = a.d.crossings.len();
    // adjacency: (neighbour, delta) with p(neighbour) = p(c) + delta
    let mut adj: Vec<Vec<(usize, Vec<i32>)>> = vec![Vec::new(); n];
    for e in &a.d.edges {
        let [u, v] = e.ends;
        let db = SlotRef::new(map[u.crossing], u.slot + rotation[u.crossing]).dart();
        let att = b.t.att[db];
        let wb = b.d.edges[att.edge].word_from(att.end).abelianize(g);
        let wa = e.word.abelianize(g);
        let delta: Vec<i32> = wb.iter().zip(&wa).map(|(x, y)| x - y).collect();
        let neg: Vec<i32> = delta.iter().map(|x| -x).collect();
        adj[u.crossing].push((v.crossing, delta));
        adj[v.crossing].push((u.crossing, neg));
    }
    let mut pot: Vec<Option<Vec<i32>>> = vec![None; n];
    for root in 0..n {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some(vec![0; 2 * g]);
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            let pc = pot[c].clone().unwrap();
            for (nb, delta) in &adj[c] {
                let want: Vec<i32> = pc.iter().zip(delta).map(|(x, y)| x + y).collect();
                match &pot[*nb] {
                    None => {
                        pot[*nb] = Some(want);
                        queue.push_back(*nb);
                    }
                    Some(p) if *p != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn loop_census(d: &SurfaceDiagram) -> Vec<Vec<i32>> {
    let mut v: Vec<Vec<i32>> = d.loops.iter().map(|w| normalize_sign(&w.abelianize(d.genus))).collect();
    v.sort();
    v
}

/// Finds an orientation-preserving isomorphism between two connected
/// diagrams, optionally requiring over/under data and edge homology to match.
pub fn find_isomorphism(a: &SurfaceDiagram, b: &SurfaceDiagram, over: bool, words: WordCheck) -> Option<Isomorphism> {
    if a.genus != b.genus || a.crossings.len() != b.crossings.len() || a.edges.len() != b.edges.len() {
        return None;
    }
    if words == WordCheck::Homology && loop_census(a) != loop_census(b) {
        return None;
    }
    if a.crossings.is_empty() {
        return Some(Isomorphism {
            crossing_map: vec![],
            rotation: vec![],
        });
    }
    let sa = Side { d: a, t: a.darts().ok()? };
    let sb = Side { d: b, t: b.darts().ok()? };
    for t in 0..b.crossings.len() {
        for r in 0..4 {
            if let Some(iso) = try_extend(&sa, &sb, 0, t, r, over, words) {
                return Some(iso);
            }
        }
    }
    None
}

/// Nontrivial automorphisms that preserve over/under data, act trivially on
/// homology and move every crossing. Each one exhibits the cell as a cover of
/// a smaller cell.
pub fn translation_symmetries(d: &SurfaceDiagram) -> Vec<Isomorphism> {
    let Ok(t) = d.darts() else {
        return Vec::new();
    };
    if d.crossings.is_empty() {
        return Vec::new();
    }
    let s = Side { d, t };
    let mut out = Vec::new();
    for target in 1..d.crossings.len() {
        for r in 0..4 {
            if let Some(iso) = try_extend(&s, &s, 0, target, r, true, WordCheck::Homology) {
                if iso.crossing_map.iter().enumerate().all(|(c, &m)| c != m) {
                    out.push(iso);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn relabelled_diagram_is_isomorphic() {
        let d = plain_weave_2x2();
        let o = d.orient_crossings();
        assert!(find_isomorphism(&d, &o, true, WordCheck::Homology).is_some());
        let mut flipped = d.clone();
        flipped.crossings[0].over = flipped.crossings[0].over.flipped();
        assert!(find_isomorphism(&d, &flipped, true, WordCheck::Ignore).is_none());
        assert!(find_isomorphism(&d, &flipped, false, WordCheck::Homology).is_some());
    }

    #[test]
    fn plain_weave_has_diagonal_translation_only() {
        let d = plain_weave_2x2();
        let syms = translation_symmetries(&d);
        assert!(!syms.is_empty());
        // the diagonal shift sends (i, j) to (i + 1, j + 1)
        assert!(syms.iter().all(|s| s.crossing_map[0] == 3));
        assert!(translation_symmetries(&plain_weave(2, 2, |i, _| i == 0)).iter().any(|s| s.crossing_map[0] == 1));
    }

    #[test]
    fn torus_curl_has_no_symmetry() {
        assert!(translation_symmetries(&torus_curl()).is_empty());
    }
}
