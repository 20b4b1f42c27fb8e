//! Periodic tilings as scaffolds for weaving diagrams: vertex symbols, the
//! curated Euclidean tilings on a torus cell, the polygonal-link transforms
//! and the weaving map that assigns over/under data.

mod tiling;
mod transform;
mod weaving;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{primitive_direction, DiagramError, SurfaceDiagram};

pub use tiling::{build_tiling, PeriodicTiling, TilingEdge};
pub use transform::{transform, Method, TransformSpec};
pub use weaving::{assign_weaving_map, read_sequence, WeavingMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TessellationError {
    #[error("syntax: {0}")]
    Syntax(String),
    #[error("no curated tiling for {0}{}", if .0.is_euclidean() { "" } else { " (angle sum is not 2 pi)" })]
    UnsupportedTiling(VertexSymbol),
    #[error("scale must be at least 1")]
    InvalidScale,
    #[error("Cr needs even valency, found {0}")]
    OddValencyForCr(usize),
    #[error("{0:?} needs m = 1")]
    BadTwistCount(Method),
    #[error("diagram is {0:?}, not a weave")]
    NotAWeave(Classification),
    #[error("crossing {0} joins two threads of one set")]
    MixedSetCrossing(usize),
    #[error("sequence for sets {},{} does not close up on this cell", .0 + 1, .1 + 1)]
    InconsistentSequence(usize, usize),
    #[error("no crossing sequence given for sets {},{}", .0 + 1, .1 + 1)]
    MissingSequence(usize, usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Cyclic list of polygon sizes around a vertex, stored as its
/// lexicographically least rotation or reflection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexSymbol {
    pub polygons: Vec<u32>,
}

impl VertexSymbol {
    pub fn new(polygons: Vec<u32>) -> Self {
        let n = polygons.len();
        let mut best = polygons.clone();
        for rev in [false, true] {
            let mut p = polygons.clone();
            if rev {
                p.reverse();
            }
            for r in 0..n {
                let mut q = p.clone();
                q.rotate_left(r);
                best = best.min(q);
            }
        }
        VertexSymbol { polygons: best }
    }

    pub fn valency(&self) -> usize {
        self.polygons.len()
    }

    /// Angle sum exactly `2 pi`: `sum (k - 2) / k = 2`.
    pub fn is_euclidean(&self) -> bool {
        let prod: i128 = self.polygons.iter().map(|&k| k as i128).product();
        let sum: i128 = self.polygons.iter().map(|&k| (k as i128 - 2) * (prod / k as i128)).sum();
        sum == 2 * prod
    }
}

impl fmt::Display for VertexSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.polygons.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for VertexSymbol {
    type Err = TessellationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_vertex_symbol(s)
    }
}

/// Parses `(k1,k2,...)` with every entry at least 3.
pub fn parse_vertex_symbol(text: &str) -> Result<VertexSymbol, TessellationError> {
    let bad = |m: &str| TessellationError::Syntax(format!("{m} in '{text}'"));
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad("expected parentheses"))?;
    let mut ks = Vec::new();
    for part in inner.split(',') {
        let k: u32 = part.trim().parse().map_err(|_| bad("expected integers"))?;
        if k < 3 {
            return Err(bad("polygon sizes must be at least 3"));
        }
        ks.push(k);
    }
    if ks.len() < 3 {
        return Err(bad("a vertex meets at least three polygons"));
    }
    Ok(VertexSymbol::new(ks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    Weave,
    Polycatenane,
    Mixed,
}

/// Weave when every component wraps the surface in at least two distinct
/// directions overall, polycatenane when none wraps, mixed otherwise.
pub fn classify(d: &SurfaceDiagram) -> Result<Classification, TessellationError> {
    let threads = d.threads()?;
    let dirs: Vec<Option<Vec<i32>>> = threads.iter().map(|t| primitive_direction(&t.homology)).collect();
    if dirs.iter().all(|x| x.is_none()) {
        return Ok(Classification::Polycatenane);
    }
    if dirs.iter().any(|x| x.is_none()) {
        return Ok(Classification::Mixed);
    }
    let mut distinct: Vec<Vec<i32>> = dirs.into_iter().flatten().collect();
    distinct.sort();
    distinct.dedup();
    Ok(if distinct.len() >= 2 {
        Classification::Weave
    } else {
        Classification::Mixed
    })
}

#[cfg(test)]
mod tests;
