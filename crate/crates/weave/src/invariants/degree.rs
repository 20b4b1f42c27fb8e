//! Degree bookkeeping: checkerboard counts, adequacy and the extreme-state
//! bounds on the bracket.

use serde::Serialize;

use super::bracket::BracketValue;
use super::state::StateTracer;
use super::InvariantError;
use crate::diagram::SurfaceDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub maxdeg: i32,
    pub mindeg: i32,
    pub span: i32,
    /// Faces bounded by loops of the all-A state.
    pub white: usize,
    /// Faces bounded by loops of the all-B state.
    pub black: usize,
}

/// Colors each face by the type of its corners. A corner is of type B when
/// its parity differs from the over-axis parity; the all-A smoothing runs
/// along exactly those corners.
pub fn checkerboard(d: &SurfaceDiagram) -> Result<(usize, usize), InvariantError> {
    let faces = d.faces()?;
    let mut white = 0;
    let mut black = 0;
    for f in &faces {
        let mut types = f
            .boundary
            .iter()
            .map(|s| d.crossings[s.corner.crossing].over.parity() != s.corner.slot % 2);
        let first = types.next().unwrap_or(true);
        if !types.all(|t| t == first) {
            return Err(InvariantError::NotCheckerboardColorable);
        }
        if first {
            white += 1;
        } else {
            black += 1;
        }
    }
    Ok((white, black))
}

pub fn degree_stats(d: &SurfaceDiagram, b: &BracketValue) -> Result<DegreeStats, InvariantError> {
    let (white, black) = checkerboard(d)?;
    let maxdeg = b.max_degree().unwrap_or(0);
    let mindeg = b.min_degree().unwrap_or(0);
    Ok(DegreeStats {
        maxdeg,
        mindeg,
        span: maxdeg - mindeg,
        white,
        black,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Adequacy {
    pub plus: bool,
    pub minus: bool,
}

impl Adequacy {
    pub fn adequate(&self) -> bool {
        self.plus && self.minus
    }
}

fn trivial_count(tr: &StateTracer, is_b: impl Fn(usize) -> bool) -> usize {
    tr.loops(is_b)
        .iter()
        .filter(|l| l.homology.iter().all(|&x| x == 0))
        .count()
}

/// Trivial-loop counts of the all-A and all-B states.
pub fn extreme_counts(d: &SurfaceDiagram) -> Result<(usize, usize), InvariantError> {
    let tr = StateTracer::new(d)?;
    let base = d
        .loops
        .iter()
        .filter(|w| w.abelianize(d.genus).iter().all(|&x| x == 0))
        .count();
    Ok((base + trivial_count(&tr, |_| false), base + trivial_count(&tr, |_| true)))
}

/// Plus-adequate: switching any single smoothing of the all-A state lowers
/// the number of trivial loops. Minus-adequate: the same for all-B.
pub fn adequacy(d: &SurfaceDiagram) -> Result<Adequacy, InvariantError> {
    let tr = StateTracer::new(d)?;
    let n = d.crossings.len();
    let ca = trivial_count(&tr, |_| false);
    let cb = trivial_count(&tr, |_| true);
    let plus = (0..n).all(|c| trivial_count(&tr, |x| x == c) < ca);
    let minus = (0..n).all(|c| trivial_count(&tr, |x| x != c) < cb);
    Ok(Adequacy { plus, minus })
}

/// The combinatorial test: no loop of the all-A (resp. all-B) state passes
/// along both smoothing arcs of the same crossing.
pub fn self_touch_free(d: &SurfaceDiagram) -> Result<Adequacy, InvariantError> {
    let tr = StateTracer::new(d)?;
    let check = |all_b: bool| {
        let loops = tr.loops(|_| all_b);
        let mut owner = vec![usize::MAX; 4 * d.crossings.len()];
        for (i, l) in loops.iter().enumerate() {
            for &x in &l.darts {
                owner[x] = i;
            }
        }
        (0..d.crossings.len()).all(|c| {
            let mut o: Vec<usize> = (0..4).map(|k| owner[4 * c + k]).collect();
            o.sort();
            o.dedup();
            o.len() == 2
        })
    };
    Ok(Adequacy {
        plus: check(false),
        minus: check(true),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    pub maxdeg: i32,
    pub mindeg: i32,
    pub c_sa: usize,
    pub c_sb: usize,
    pub upper: i32,
    pub lower: i32,
    pub max_within: bool,
    pub min_within: bool,
    pub max_tight: bool,
    pub min_tight: bool,
    pub adequacy: Adequacy,
}

impl DegreeBounds {
    /// Both inequalities hold, and each is tight on the adequate side.
    pub fn consistent(&self) -> bool {
        self.max_within
            && self.min_within
            && (!self.adequacy.plus || self.max_tight)
            && (!self.adequacy.minus || self.min_tight)
    }
}

pub fn degree_bounds_check(d: &SurfaceDiagram, b: &BracketValue) -> Result<DegreeBounds, InvariantError> {
    let (c_sa, c_sb) = extreme_counts(d)?;
    let c = d.crossings.len() as i32;
    let upper = c + 2 * c_sa as i32 - 2;
    let lower = -c - 2 * c_sb as i32 + 2;
    let maxdeg = b.max_degree().unwrap_or(i32::MIN);
    let mindeg = b.min_degree().unwrap_or(i32::MAX);
    Ok(DegreeBounds {
        maxdeg,
        mindeg,
        c_sa,
        c_sb,
        upper,
        lower,
        max_within: maxdeg <= upper,
        min_within: mindeg >= lower,
        max_tight: maxdeg == upper,
        min_tight: mindeg == lower,
        adequacy: adequacy(d)?,
    })
}
