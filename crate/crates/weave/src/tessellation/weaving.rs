//! Over/under assignment from crossing sequences. Thread sets are numbered
//! in the order of [`SurfaceDiagram::thread_sets`]. Sequence `(p, q)` for
//! sets `(i, j)` means a thread of set `i` passes cyclically `p` times over
//! and `q` times under the threads of set `j`; the threads of `j` then read
//! `(q, p)`.

use std::collections::BTreeMap;
use std::str::FromStr;

use super::{classify, Classification, TessellationError};
use crate::diagram::{Axis, SurfaceDiagram, Thread};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeavingMap {
    /// Every thread alternates over and under, whatever set it meets.
    Alternating,
    /// Keyed by zero-based set indices `(i, j)` with `i < j`.
    Sequences(BTreeMap<(usize, usize), (usize, usize)>),
}

impl FromStr for WeavingMap {
    type Err = TessellationError;

    /// `alt`, or `i,j:p,q` entries separated by `;`, with sets numbered
    /// from 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "alt" {
            return Ok(WeavingMap::Alternating);
        }
        let bad = || TessellationError::Syntax(format!("bad crossing sequence '{s}'"));
        let pair = |t: &str| -> Result<(usize, usize), TessellationError> {
            let (a, b) = t.split_once(',').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        };
        let mut map = BTreeMap::new();
        for entry in s.split(';').filter(|e| !e.trim().is_empty()) {
            let (sets, seq) = entry.split_once(':').ok_or_else(bad)?;
            let (i, j) = pair(sets)?;
            let (p, q) = pair(seq)?;
            if i == j || i == 0 || j == 0 || p == 0 || q == 0 {
                return Err(bad());
            }
            let (i, j) = (i - 1, j - 1);
            let (key, val) = if i < j { ((i, j), (p, q)) } else { ((j, i), (q, p)) };
            if map.insert(key, val).is_some() {
                return Err(bad());
            }
        }
        Ok(WeavingMap::Sequences(map))
    }
}

struct Context {
    threads: Vec<Thread>,
    set_of: Vec<usize>,
    /// Per crossing: `[thread on axis 02, thread on axis 13]`.
    strands: Vec<[usize; 2]>,
}

fn context(d: &SurfaceDiagram) -> Result<Context, TessellationError> {
    let class = classify(d)?;
    if class != Classification::Weave {
        return Err(TessellationError::NotAWeave(class));
    }
    let threads = d.threads()?;
    let sets = d.thread_sets()?;
    let mut set_of = vec![0; threads.len()];
    for (si, s) in sets.iter().enumerate() {
        for &t in s {
            set_of[t] = si;
        }
    }
    let strands = crate::diagram::strand_threads(&threads, d.crossings.len());
    if let Some(c) = strands.iter().position(|s| set_of[s[0]] == set_of[s[1]]) {
        return Err(TessellationError::MixedSetCrossing(c));
    }
    Ok(Context {
        threads,
        set_of,
        strands,
    })
}

/// Returns a copy of `d` whose over/under data follows `map`.
pub fn assign_weaving_map(d: &SurfaceDiagram, map: &WeavingMap) -> Result<SurfaceDiagram, TessellationError> {
    let cx = context(d)?;
    let over = match map {
        WeavingMap::Alternating => alternating(d, &cx)?,
        WeavingMap::Sequences(seqs) => sequences(d, &cx, seqs)?,
    };
    let mut out = d.clone();
    for (c, p) in over.into_iter().enumerate() {
        out.crossings[c].over = Axis::from_parity(p);
    }
    Ok(out)
}

/// Parity union-find: consecutive visits along a thread must differ.
fn alternating(d: &SurfaceDiagram, cx: &Context) -> Result<Vec<u8>, TessellationError> {
    let n = d.crossings.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut rel = vec![0u8; n];
    fn find(parent: &mut [usize], rel: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (r, p) = find(parent, rel, parent[x]);
        parent[x] = r;
        rel[x] ^= p;
        (r, rel[x])
    }
    for t in &cx.threads {
        let k = t.route.len();
        for i in 0..k {
            let a = t.route[i];
            let b = t.route[(i + 1) % k];
            // over parity of a xor over parity of b
            let want = 1 ^ (a.entry % 2) ^ (b.entry % 2);
            let (ra, pa) = find(&mut parent, &mut rel, a.crossing);
            let (rb, pb) = find(&mut parent, &mut rel, b.crossing);
            if ra == rb {
                if pa ^ pb != want {
                    let (i, j) = (cx.set_of[cx.strands[a.crossing][0]], cx.set_of[cx.strands[a.crossing][1]]);
                    return Err(TessellationError::InconsistentSequence(i.min(j), i.max(j)));
                }
            } else {
                parent[ra] = rb;
                rel[ra] = pa ^ pb ^ want;
            }
        }
    }
    Ok((0..n).map(|c| find(&mut parent, &mut rel, c).1).collect())
}

/// For each thread of set `i`, its visits to crossings with set `j`, as
/// `(crossing, axis parity of this thread)`.
fn visits_against(cx: &Context, t: usize, j: usize) -> Vec<(usize, u8)> {
    cx.threads[t]
        .route
        .iter()
        .filter(|v| {
            let other = cx.strands[v.crossing][1 - (v.entry % 2) as usize];
            cx.set_of[other] == j
        })
        .map(|v| (v.crossing, v.entry % 2))
        .collect()
}

fn pattern(p: usize, q: usize, phase: usize, k: usize) -> bool {
    (k + phase) % (p + q) < p
}

/// Whether some phase of `(p, q)` agrees with every decided visit.
fn fits(visits: &[(usize, u8)], over: &[Option<u8>], p: usize, q: usize) -> bool {
    (0..p + q).any(|ph| {
        visits.iter().enumerate().all(|(k, &(c, axis))| match over[c] {
            Some(o) => (o == axis) == pattern(p, q, ph, k),
            None => true,
        })
    })
}

fn sequences(
    d: &SurfaceDiagram,
    cx: &Context,
    seqs: &BTreeMap<(usize, usize), (usize, usize)>,
) -> Result<Vec<u8>, TessellationError> {
    let mut over: Vec<Option<u8>> = vec![None; d.crossings.len()];
    let nsets = cx.set_of.iter().max().map_or(0, |m| m + 1);
    for i in 0..nsets {
        for j in i + 1..nsets {
            let mine: Vec<usize> = (0..cx.threads.len()).filter(|&t| cx.set_of[t] == i).collect();
            let theirs: Vec<usize> = (0..cx.threads.len()).filter(|&t| cx.set_of[t] == j).collect();
            let vi: Vec<Vec<(usize, u8)>> = mine.iter().map(|&t| visits_against(cx, t, j)).collect();
            let vj: Vec<Vec<(usize, u8)>> = theirs.iter().map(|&t| visits_against(cx, t, i)).collect();
            if vi.iter().all(|v| v.is_empty()) {
                continue;
            }
            let &(p, q) = seqs.get(&(i, j)).ok_or(TessellationError::MissingSequence(i, j))?;
            let period = p + q;
            if vi.iter().chain(vj.iter()).any(|v| v.len() % period != 0) {
                return Err(TessellationError::InconsistentSequence(i, j));
            }
            if !search(&vi, &vj, &mut over, p, q, 0) {
                return Err(TessellationError::InconsistentSequence(i, j));
            }
        }
    }
    Ok(over
        .into_iter()
        .enumerate()
        .map(|(c, o)| o.unwrap_or(d.crossings[c].over.parity()))
        .collect())
}

/// Backtracking over the phase of each thread of set `i`, pruned by the
/// threads of set `j`.
fn search(vi: &[Vec<(usize, u8)>], vj: &[Vec<(usize, u8)>], over: &mut Vec<Option<u8>>, p: usize, q: usize, k: usize) -> bool {
    if k == vi.len() {
        return vj.iter().all(|v| fits(v, over, q, p));
    }
    for ph in 0..p + q {
        let saved = over.clone();
        for (idx, &(c, axis)) in vi[k].iter().enumerate() {
            over[c] = Some(if pattern(p, q, ph, idx) { axis } else { 1 - axis });
        }
        if vj.iter().all(|v| fits(v, over, q, p)) && search(vi, vj, over, p, q, k + 1) {
            return true;
        }
        *over = saved;
    }
    false
}

/// Reads the sequence threads of set `i` follow against set `j`, if every
/// such thread shows the same `p` overs then `q` unders cyclically.
pub fn read_sequence(d: &SurfaceDiagram, i: usize, j: usize) -> Result<Option<(usize, usize)>, TessellationError> {
    let cx = context(d)?;
    let mut found: Option<(usize, usize)> = None;
    for t in (0..cx.threads.len()).filter(|&t| cx.set_of[t] == i) {
        let bits: Vec<bool> = visits_against(&cx, t, j)
            .iter()
            .map(|&(c, axis)| d.crossings[c].over.parity() == axis)
            .collect();
        if bits.is_empty() {
            continue;
        }
        let Some(start) = (0..bits.len()).find(|&k| bits[k] && !bits[(k + bits.len() - 1) % bits.len()]) else {
            return Ok(None);
        };
        let mut runs = Vec::new();
        let mut k = 0;
        while k < bits.len() {
            let b = bits[(start + k) % bits.len()];
            let mut len = 0;
            while k < bits.len() && bits[(start + k) % bits.len()] == b {
                len += 1;
                k += 1;
            }
            runs.push((b, len));
        }
        let p = runs[0].1;
        let q = runs.get(1).map_or(0, |r| r.1);
        if runs.iter().any(|&(b, len)| len != if b { p } else { q }) {
            return Ok(None);
        }
        match found {
            None => found = Some((p, q)),
            Some(f) if f != (p, q) => return Ok(None),
            _ => {}
        }
    }
    Ok(found)
}
