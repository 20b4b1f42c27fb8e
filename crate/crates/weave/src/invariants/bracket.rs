//! The bracket with winding multipliers.
//!
//! Each state contributes `A^(i-j) d^(c_S - 1)` times a formal multiplier for
//! its multiset of winding loops. A state whose loops all wind has `c_S = 0`,
//! so coefficients live in `Z[A, A^-1] * d^-1`. We store `d * <D>` for every
//! winding key, which is an honest Laurent polynomial, and normalize so that a
//! single trivial loop has bracket 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use super::laurent::LaurentPoly;
use super::state::{split, Split, StateTracer, WindingKey};
use super::InvariantError;
use crate::diagram::SurfaceDiagram;

pub const DEFAULT_CROSSING_BUDGET: usize = 24;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BracketValue {
    /// `d` times the coefficient of each winding key; zero entries are dropped.
    scaled: BTreeMap<WindingKey, LaurentPoly>,
}

impl BracketValue {
    pub fn zero() -> Self {
        BracketValue::default()
    }

    /// Bracket of one trivial loop.
    pub fn one() -> Self {
        BracketValue::from_scaled([(WindingKey::default(), LaurentPoly::loop_value())])
    }

    pub fn from_scaled(entries: impl IntoIterator<Item = (WindingKey, LaurentPoly)>) -> Self {
        let mut b = BracketValue::zero();
        for (k, p) in entries {
            b.add_scaled(k, &p);
        }
        b
    }

    pub fn add_scaled(&mut self, key: WindingKey, p: &LaurentPoly) {
        let e = self.scaled.entry(key.clone()).or_default();
        *e += p;
        if e.is_zero() {
            self.scaled.remove(&key);
        }
    }

    /// Entries as stored, `d` times the true coefficient.
    pub fn scaled(&self) -> &BTreeMap<WindingKey, LaurentPoly> {
        &self.scaled
    }

    /// The coefficient of `key` when it lies in `Z[A, A^-1]`.
    pub fn coefficient(&self, key: &WindingKey) -> Option<LaurentPoly> {
        match self.scaled.get(key) {
            None => Some(LaurentPoly::zero()),
            Some(p) => p.div_exact(&LaurentPoly::loop_value()),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &WindingKey> {
        self.scaled.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.scaled.is_empty()
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> BracketValue {
        BracketValue::from_scaled(self.scaled.iter().map(|(k, q)| (k.clone(), q * p)))
    }

    pub fn add(&self, other: &BracketValue) -> BracketValue {
        let mut r = self.clone();
        for (k, p) in &other.scaled {
            r.add_scaled(k.clone(), p);
        }
        r
    }

    pub fn sub(&self, other: &BracketValue) -> BracketValue {
        self.add(&other.mul_poly(&LaurentPoly::monomial(-1, 0)))
    }

    pub fn map_keys(&self, f: impl Fn(&WindingKey) -> WindingKey) -> BracketValue {
        BracketValue::from_scaled(self.scaled.iter().map(|(k, p)| (f(k), p.clone())))
    }

    /// Applies `A -> A^k` to every coefficient. The loop value is symmetric,
    /// so this commutes with the `d` scaling for `k = -1`.
    pub fn substitute_power(&self, k: i32) -> BracketValue {
        BracketValue::from_scaled(self.scaled.iter().map(|(key, p)| (key.clone(), p.substitute_power(k))))
    }

    /// Highest power of `A`, reading `1/d` as `-A^-2 (1 + A^-4)^-1`.
    pub fn max_degree(&self) -> Option<i32> {
        self.scaled.values().filter_map(|p| p.max_degree()).max().map(|x| x - 2)
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.scaled.values().filter_map(|p| p.min_degree()).min().map(|x| x + 2)
    }

    pub fn span(&self) -> Option<i32> {
        Some(self.max_degree()? - self.min_degree()?)
    }

    /// Winding vectors of every key, repeated by multiplicity.
    pub fn winding_vectors(&self) -> Vec<Vec<i32>> {
        self.scaled.keys().flat_map(|k| k.vectors().cloned().collect::<Vec<_>>()).collect()
    }
}

impl fmt::Display for BracketValue {
    /// One `key coefficient` entry per line, keys in ascending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scaled.is_empty() {
            return write!(f, "<> 0A^0");
        }
        let lines: Vec<String> = self
            .scaled
            .iter()
            .map(|(k, p)| match p.div_exact(&LaurentPoly::loop_value()) {
                Some(q) => format!("{k} {q}"),
                None => format!("{k} ({p})/d"),
            })
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BracketOptions {
    pub budget: usize,
    pub threads: usize,
}

impl Default for BracketOptions {
    fn default() -> Self {
        BracketOptions {
            budget: DEFAULT_CROSSING_BUDGET,
            threads: 1,
        }
    }
}

type Tally = HashMap<WindingKey, HashMap<(i32, usize), i64>>;

fn tally_range(tr: &StateTracer, range: std::ops::Range<u64>) -> Tally {
    let c = tr.crossings as i32;
    let mut tally: Tally = HashMap::new();
    let mut seen = Vec::new();
    let mut windings = Vec::new();
    for mask in range {
        let trivial = tr.census_mask(mask, &mut seen, &mut windings);
        let exp = c - 2 * mask.count_ones() as i32;
        let key = if windings.is_empty() {
            WindingKey::default()
        } else {
            WindingKey::from_vectors(windings.clone())
        };
        *tally.entry(key).or_default().entry((exp, trivial)).or_insert(0) += 1;
    }
    tally
}

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (k, m) in b {
        let t = a.entry(k).or_default();
        for (e, n) in m {
            *t.entry(e).or_insert(0) += n;
        }
    }
    a
}

/// State-sum bracket over all `2^C` states.
pub fn bracket_with(d: &SurfaceDiagram, opts: BracketOptions) -> Result<BracketValue, InvariantError> {
    let c = d.crossings.len();
    if c > opts.budget || c > 62 {
        return Err(InvariantError::TooManyCrossings {
            crossings: c,
            budget: opts.budget,
        });
    }
    let tr = StateTracer::new(d)?;
    let total = 1u64 << c;
    let tally = if opts.threads <= 1 || c < 10 {
        tally_range(&tr, 0..total)
    } else {
        let chunks = (opts.threads as u64 * 8).min(total);
        let step = total.div_ceil(chunks);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| InvariantError::Worker(e.to_string()))?;
        pool.install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|i| tally_range(&tr, i * step..((i + 1) * step).min(total)))
                .reduce(Tally::new, merge)
        })
    };
    let dpow = {
        let mut v = vec![LaurentPoly::one()];
        let dl = LaurentPoly::loop_value();
        for i in 1..=(2 * c + d.loops.len() + 1) {
            let next = &v[i - 1] * &dl;
            v.push(next);
        }
        v
    };
    let mut out = BracketValue::zero();
    for (key, m) in tally {
        let mut p = LaurentPoly::zero();
        for ((exp, trivial), n) in m {
            p += &dpow[trivial].shift(exp).scale(n);
        }
        out.add_scaled(key, &p);
    }
    Ok(out)
}

pub fn bracket(d: &SurfaceDiagram) -> Result<BracketValue, InvariantError> {
    bracket_with(d, BracketOptions::default())
}

/// Bracket by recursive smoothing of the last crossing. Slow; used as an
/// independent check of the state sum.
pub fn bracket_skein(d: &SurfaceDiagram) -> Result<BracketValue, InvariantError> {
    if d.crossings.is_empty() {
        let mut trivial = 0;
        let mut windings = Vec::new();
        for w in &d.loops {
            let h = w.abelianize(d.genus);
            if h.iter().all(|&x| x == 0) {
                trivial += 1;
            } else {
                windings.push(h);
            }
        }
        return Ok(BracketValue::from_scaled([(
            WindingKey::from_vectors(windings),
            LaurentPoly::loop_value().pow(trivial),
        )]));
    }
    let c = d.crossings.len() - 1;
    let a = bracket_skein(&split(d, c, Split::A)?)?;
    let b = bracket_skein(&split(d, c, Split::B)?)?;
    Ok(a
        .mul_poly(&LaurentPoly::monomial(1, 1))
        .add(&b.mul_poly(&LaurentPoly::monomial(1, -1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BoundaryWord;

    #[test]
    fn single_trivial_loop_is_one() {
        let mut d = SurfaceDiagram::new(1);
        d.loops.push(BoundaryWord::empty());
        let b = bracket(&d).unwrap();
        assert_eq!(b, BracketValue::one());
        assert_eq!(b.coefficient(&WindingKey::default()), Some(LaurentPoly::one()));
        assert_eq!(b.to_string(), "<> 1A^0");
        assert_eq!((b.max_degree(), b.min_degree()), (Some(0), Some(0)));
    }

    #[test]
    fn extra_trivial_circle_multiplies_by_d() {
        let mut d = SurfaceDiagram::new(1);
        d.loops.push(BoundaryWord::empty());
        d.loops.push(BoundaryWord::empty());
        let b = bracket(&d).unwrap();
        assert_eq!(b, BracketValue::one().mul_poly(&LaurentPoly::loop_value()));
    }

    #[test]
    fn winding_only_loop_displays_over_d() {
        let mut d = SurfaceDiagram::new(1);
        d.loops.push(BoundaryWord::parse("a", 1).unwrap());
        let b = bracket(&d).unwrap();
        assert_eq!(b.to_string(), "<(1,0)^1> (1A^0)/d");
        assert_eq!(b.winding_vectors(), vec![vec![1, 0]]);
    }
}
