//! Winding-set canonicalization under the symplectic group, Dehn twists of
//! torus cells, and cell size.
//!
//! Windings are row vectors `(m_1..m_g, n_1..n_g)` and a matrix acts on the
//! right. Loop windings have no preferred sign, so a [`WindingSet`] keeps
//! every vector with its first nonzero entry positive.

mod reduce;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{
    translation_symmetries, BoundaryWord, DiagramError, Letter, SurfaceDiagram,
};
use crate::invariants::BracketValue;

pub use reduce::{canonical_form, CanonicalForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("matrix is not symplectic")]
    NonSymplectic,
    #[error("expected {expected} columns, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("diagram Dehn twists need genus 1, got {0}")]
    UnsupportedGenus(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Sorted multiset of sign-normalized winding vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WindingSet {
    vectors: Vec<Vec<i64>>,
}

impl WindingSet {
    pub fn new(vs: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let mut vectors: Vec<Vec<i64>> = vs
            .into_iter()
            .map(|v| match v.iter().find(|&&x| x != 0) {
                Some(&x) if x < 0 => v.iter().map(|y| -y).collect(),
                _ => v,
            })
            .collect();
        vectors.sort();
        WindingSet { vectors }
    }

    /// Every winding vector of every key with a nonzero coefficient.
    pub fn from_bracket(b: &BracketValue) -> Self {
        WindingSet::new(
            b.scaled()
                .iter()
                .filter(|(_, p)| !p.is_zero())
                .flat_map(|(k, _)| k.vectors().map(|v| v.iter().map(|&x| x as i64).collect::<Vec<_>>()).collect::<Vec<_>>()),
        )
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }
}

impl fmt::Display for WindingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vectors
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// Square integer matrix acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymplecticMatrix {
    rows: Vec<Vec<i64>>,
}

impl SymplecticMatrix {
    pub fn identity(dim: usize) -> Self {
        SymplecticMatrix {
            rows: (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect(),
        }
    }

    /// Checks `U J U^T = J` for the standard form `J = [[0, I], [-I, 0]]`.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, CanonicalError> {
        let m = SymplecticMatrix { rows };
        if m.is_symplectic() {
            Ok(m)
        } else {
            Err(CanonicalError::NonSymplectic)
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn is_symplectic(&self) -> bool {
        let n = self.rows.len();
        if !n.is_multiple_of(2) || self.rows.iter().any(|r| r.len() != n) {
            return false;
        }
        let g = n / 2;
        let form = |x: &[i64], y: &[i64]| (0..g).map(|i| x[i] * y[g + i] - x[g + i] * y[i]).sum::<i64>();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let want = if j == i + g && i < g {
                    1
                } else if i == j + g && j < g {
                    -1
                } else {
                    0
                };
                form(&self.rows[i], &self.rows[j]) == want
            })
        })
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rows.len();
        (0..n).map(|j| (0..n).map(|i| v[i] * self.rows[i][j]).sum()).collect()
    }

    pub fn mul(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix {
            rows: self.rows.iter().map(|r| other.apply(r)).collect(),
        }
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Sum of squared norms.
pub fn q_functional(v: &WindingSet) -> i64 {
    v.vectors.iter().flat_map(|x| x.iter()).map(|x| x * x).sum()
}

pub fn apply_twist(v: &WindingSet, u: &SymplecticMatrix) -> Result<WindingSet, CanonicalError> {
    if !u.is_symplectic() {
        return Err(CanonicalError::NonSymplectic);
    }
    if let Some(x) = v.vectors.iter().find(|x| x.len() != u.dim()) {
        return Err(CanonicalError::Dimension {
            expected: u.dim(),
            got: x.len(),
        });
    }
    Ok(WindingSet::new(v.vectors.iter().map(|x| u.apply(x))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TwistCurve {
    Alpha,
    Beta,
}

/// Action on torus homology of a twist along `curve`.
pub fn twist_matrix(curve: TwistCurve, direction: i8) -> SymplecticMatrix {
    let s = direction.signum() as i64;
    let rows = match curve {
        TwistCurve::Alpha => vec![vec![1, 0], vec![s, 1]],
        TwistCurve::Beta => vec![vec![1, s], vec![0, 1]],
    };
    SymplecticMatrix { rows }
}

/// Re-cuts a torus cell: every edge and loop word is rewritten by
/// `b -> b a^s` for an alpha twist and `a -> a b^s` for a beta twist.
pub fn dehn_twist_diagram(d: &SurfaceDiagram, curve: TwistCurve, direction: i8) -> Result<SurfaceDiagram, CanonicalError> {
    if d.genus != 1 {
        return Err(CanonicalError::UnsupportedGenus(d.genus));
    }
    let s = direction < 0;
    let image = |g: u16| {
        let l = Letter::new(g, false);
        match (curve, g) {
            (TwistCurve::Alpha, 1) => BoundaryWord::from_letters([l, Letter::new(0, s)]),
            (TwistCurve::Beta, 0) => BoundaryWord::from_letters([l, Letter::new(1, s)]),
            _ => BoundaryWord::from_letters([l]),
        }
    };
    let mut out = d.clone();
    for e in &mut out.edges {
        e.word = e.word.substitute(image);
    }
    for l in &mut out.loops {
        *l = l.substitute(image);
    }
    Ok(out)
}

/// Number of faces that touch a crossing.
pub fn size(d: &SurfaceDiagram) -> Result<usize, CanonicalError> {
    Ok(d.faces()?.iter().filter(|f| !f.is_empty()).count())
}

/// True when no fixed-point-free translation symmetry exists, so the cell
/// does not cover a smaller one.
pub fn is_minimal_size(d: &SurfaceDiagram) -> bool {
    translation_symmetries(d).is_empty()
}
