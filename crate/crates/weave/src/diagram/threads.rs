use super::{BoundaryWord, DiagramError, SlotRef, SurfaceDiagram};

/// Passage of a thread through a crossing, entering at `entry` and leaving
/// at `entry + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreadVisit {
    pub crossing: usize,
    pub entry: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thread {
    pub route: Vec<ThreadVisit>,
    /// Edges in traversal order with their direction (true = end 0 to end 1).
    pub edges: Vec<(usize, bool)>,
    pub word: BoundaryWord,
    pub homology: Vec<i32>,
    /// Index into `loops` for a crossingless component.
    pub free_loop: Option<usize>,
}

impl Thread {
    /// Whether the traversal agrees with every edge direction.
    pub fn is_oriented(&self) -> bool {
        self.edges.iter().all(|&(_, f)| f)
    }
}

/// Primitive direction of a homology class: divided by the gcd of its
/// entries, with the first nonzero entry positive. `None` for zero.
pub fn primitive_direction(v: &[i32]) -> Option<Vec<i32>> {
    let g = v.iter().fold(0i32, |g, &x| gcd(g, x.abs()));
    if g == 0 {
        return None;
    }
    let first = v.iter().copied().find(|&x| x != 0)?;
    let s = if first < 0 { -1 } else { 1 };
    Some(v.iter().map(|&x| s * x / g).collect())
}

/// Sign normalization without dividing: first nonzero entry positive.
pub fn normalize_sign(v: &[i32]) -> Vec<i32> {
    match v.iter().copied().find(|&x| x != 0) {
        Some(x) if x < 0 => v.iter().map(|&y| -y).collect(),
        _ => v.to_vec(),
    }
}

pub(crate) fn gcd(a: i32, b: i32) -> i32 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl SurfaceDiagram {
    /// Straight-through traversal. Each thread starts on its lowest-numbered
    /// edge, read from end 0; crossingless loops come last.
    pub fn threads(&self) -> Result<Vec<Thread>, DiagramError> {
        let darts = self.darts()?;
        let mut seen = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            let mut t = Thread {
                route: Vec::new(),
                edges: Vec::new(),
                word: BoundaryWord::empty(),
                homology: Vec::new(),
                free_loop: None,
            };
            let (mut e, mut forward) = (start, true);
            loop {
                seen[e] = true;
                let edge = &self.edges[e];
                t.edges.push((e, forward));
                t.word.extend(&edge.word_from(if forward { 0 } else { 1 }));
                let arrive = edge.ends[if forward { 1 } else { 0 }];
                t.route.push(ThreadVisit {
                    crossing: arrive.crossing,
                    entry: arrive.slot,
                });
                let next = darts.att[SlotRef::opposite(arrive).dart()];
                e = next.edge;
                forward = next.end == 0;
                if e == start && forward {
                    break;
                }
            }
            t.homology = t.word.abelianize(self.genus);
            out.push(t);
        }
        for (i, w) in self.loops.iter().enumerate() {
            out.push(Thread {
                route: Vec::new(),
                edges: Vec::new(),
                word: w.clone(),
                homology: w.abelianize(self.genus),
                free_loop: Some(i),
            });
        }
        Ok(out)
    }

    /// Thread sets by primitive homology direction, ordered by direction.
    pub fn thread_sets(&self) -> Result<Vec<Vec<usize>>, DiagramError> {
        let threads = self.threads()?;
        group_thread_sets(&threads)
    }
}

pub(crate) fn group_thread_sets(threads: &[Thread]) -> Result<Vec<Vec<usize>>, DiagramError> {
    let mut keyed: Vec<(Vec<i32>, usize)> = Vec::new();
    for (i, t) in threads.iter().enumerate() {
        let dir = primitive_direction(&t.homology).ok_or(DiagramError::ZeroHomologyThread(i))?;
        keyed.push((dir, i));
    }
    keyed.sort();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<Vec<i32>> = None;
    for (dir, i) in keyed {
        if last.as_ref() == Some(&dir) {
            sets.last_mut().unwrap().push(i);
        } else {
            sets.push(vec![i]);
            last = Some(dir);
        }
    }
    Ok(sets)
}

/// For each crossing, the thread carrying its axis-02 strand and its axis-13
/// strand.
pub fn strand_threads(threads: &[Thread], crossings: usize) -> Vec<[usize; 2]> {
    let mut out = vec![[usize::MAX; 2]; crossings];
    for (ti, t) in threads.iter().enumerate() {
        for v in &t.route {
            out[v.crossing][(v.entry % 2) as usize] = ti;
        }
    }
    out
}
