//! Bracket, Kauffman and Jones polynomials with winding classes, and the
//! degree, adequacy and linking data around them.

mod bracket;
mod degree;
pub mod laurent;
mod parallel;
mod state;
mod writhe;

pub use bracket::{bracket, bracket_skein, bracket_with, BracketOptions, BracketValue, DEFAULT_CROSSING_BUDGET};
pub use degree::{
    adequacy, checkerboard, degree_bounds_check, degree_stats, extreme_counts, self_touch_free, Adequacy,
    DegreeBounds, DegreeStats,
};
pub use laurent::LaurentPoly;
pub use parallel::r_parallel;
pub use state::{resolve_state, split, split_pairs, Split, State, StateLoop, StateTracer, WindingKey};
pub use writhe::{
    crossing_signs, halved, jones, jones_from_f, kauffman_f, kauffman_f_with, linking_matrix, linking_number,
    skein_identity_holds, writhe, writhe_per_component, JonesValue,
};

use thiserror::Error;

use crate::diagram::DiagramError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("{crossings} crossings exceed the budget of {budget}")]
    TooManyCrossings { crossings: usize, budget: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram is not coherently oriented")]
    Unoriented,
    #[error("linking number of thread {0} with itself")]
    SameThread(usize),
    #[error("no thread {0}")]
    UnknownThread(usize),
    #[error("faces cannot be checkerboard colored by corner type")]
    NotCheckerboardColorable,
    #[error("parallel count must be at least 1, got {0}")]
    InvalidParallel(usize),
    #[error("worker pool: {0}")]
    Worker(String),
}
