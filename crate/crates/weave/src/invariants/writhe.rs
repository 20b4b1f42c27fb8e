//! Signs, writhe, linking numbers and the oriented invariants built on them.

use std::fmt;

use super::bracket::{bracket_with, BracketOptions, BracketValue};
use super::laurent::LaurentPoly;
use super::state::{split, Split};
use super::InvariantError;
use crate::diagram::{strand_threads, SurfaceDiagram};

/// Crossing signs under the right-hand rule.
pub fn crossing_signs(d: &SurfaceDiagram) -> Result<Vec<i8>, InvariantError> {
    let t = d.darts()?;
    (0..d.crossings.len())
        .map(|c| d.crossing_sign(&t, c).ok_or(InvariantError::Unoriented))
        .collect()
}

pub fn writhe(d: &SurfaceDiagram) -> Result<i64, InvariantError> {
    Ok(crossing_signs(d)?.iter().map(|&s| s as i64).sum())
}

/// Writhe of each thread (indexed as in `threads()`), counting only the
/// crossings of a thread with itself.
pub fn writhe_per_component(d: &SurfaceDiagram) -> Result<Vec<i64>, InvariantError> {
    let signs = crossing_signs(d)?;
    let threads = d.threads()?;
    let owner = strand_threads(&threads, d.crossings.len());
    let mut w = vec![0i64; threads.len()];
    for (c, [a, b]) in owner.into_iter().enumerate() {
        if a == b {
            w[a] += signs[c] as i64;
        }
    }
    Ok(w)
}

/// Signed count of the crossings between threads `i` and `j`. The sum is not
/// halved; see [`halved`].
pub fn linking_number(d: &SurfaceDiagram, i: usize, j: usize) -> Result<i64, InvariantError> {
    if i == j {
        return Err(InvariantError::SameThread(i));
    }
    let m = linking_matrix(d)?;
    if i >= m.len() || j >= m.len() {
        return Err(InvariantError::UnknownThread(i.max(j)));
    }
    Ok(m[i][j])
}

/// The classical normalization of a literal linking sum.
pub fn halved(literal: i64) -> f64 {
    literal as f64 / 2.0
}

/// Literal linking sums for every pair of threads; the diagonal holds the
/// per-thread writhe.
pub fn linking_matrix(d: &SurfaceDiagram) -> Result<Vec<Vec<i64>>, InvariantError> {
    let signs = crossing_signs(d)?;
    let threads = d.threads()?;
    let owner = strand_threads(&threads, d.crossings.len());
    let n = threads.len();
    let mut m = vec![vec![0i64; n]; n];
    for (c, [a, b]) in owner.into_iter().enumerate() {
        let s = signs[c] as i64;
        m[a][b] += s;
        if a != b {
            m[b][a] += s;
        }
    }
    Ok(m)
}

/// `(-A)^(-3w) <D>`.
pub fn kauffman_f_with(d: &SurfaceDiagram, opts: BracketOptions) -> Result<BracketValue, InvariantError> {
    let w = writhe(d)?;
    let b = bracket_with(d, opts)?;
    Ok(b.mul_poly(&normalizer(w)))
}

pub fn kauffman_f(d: &SurfaceDiagram) -> Result<BracketValue, InvariantError> {
    kauffman_f_with(d, BracketOptions::default())
}

fn normalizer(w: i64) -> LaurentPoly {
    let sign = if w % 2 == 0 { 1 } else { -1 };
    LaurentPoly::monomial(sign, (-3 * w) as i32)
}

/// The Jones value: `f` with `A = t^(-1/4)`, written in `q = t^(1/4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesValue(pub BracketValue);

impl fmt::Display for JonesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string().replace('A', "q"))
    }
}

pub fn jones_from_f(f: &BracketValue) -> JonesValue {
    JonesValue(f.substitute_power(-1))
}

pub fn jones(d: &SurfaceDiagram) -> Result<JonesValue, InvariantError> {
    Ok(jones_from_f(&kauffman_f(d)?))
}

/// Checks `A^4 f(L+) - A^-4 f(L-) = (A^-2 - A^2) f(L0)` at crossing `c`,
/// where `L0` is the oriented smoothing.
pub fn skein_identity_holds(d: &SurfaceDiagram, c: usize, opts: BracketOptions) -> Result<bool, InvariantError> {
    let t = d.darts()?;
    let sign = d.crossing_sign(&t, c).ok_or(InvariantError::Unoriented)?;
    let flipped = d.with_crossing_flipped(c);
    let (plus, minus) = if sign > 0 { (d.clone(), flipped) } else { (flipped, d.clone()) };
    // for a positive crossing the oriented smoothing is the A-smoothing
    let zero = split(&plus, c, Split::A)?;
    let lhs = kauffman_f_with(&plus, opts)?
        .mul_poly(&LaurentPoly::monomial(1, 4))
        .sub(&kauffman_f_with(&minus, opts)?.mul_poly(&LaurentPoly::monomial(1, -4)));
    let rhs = kauffman_f_with(&zero, opts)?.mul_poly(&LaurentPoly::from_terms([(1, -2), (-1, 2)]));
    Ok(lhs == rhs)
}
