//! Reidemeister moves on surface diagrams, a seeded random walk over them,
//! and crossing-number bounds.
//!
//! Sites are named by edge or face index of the diagram the move is applied
//! to, so a trace replays only from its exact start diagram. Text form, one
//! move per line:
//!
//! ```text
//! R1_add e7 sign=+ side=right
//! R1_remove f2
//! R2_add f3 i0 j2 over=first
//! R2_remove f5
//! R3 f4
//! ```

mod apply;
mod fuzz;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::DiagramError;

pub use apply::{apply_move, enumerate_moves, enumerate_simplifying};
pub use fuzz::{crossing_number_bounds, fuzz, replay, CrossingBounds, FuzzStep, MoveTrace, SearchBudget};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("illegal move {0}: {1}")]
    IllegalMove(Move, String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("bad move line '{0}'")]
    Syntax(String),
}

/// Which side of the traversed edge a new curl lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Which of the two strands of an R2 finger passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Over {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Curl on `edge` with crossing sign `sign`.
    R1Add { edge: usize, sign: i8, side: Side },
    /// Remove the curl bounding monogon `face`.
    R1Remove { face: usize },
    /// Push boundary step `i` of `face` across step `j`.
    R2Add { face: usize, i: usize, j: usize, over: Over },
    /// Remove the two crossings of bigon `face`.
    R2Remove { face: usize },
    /// Slide a strand across triangle `face`.
    R3 { face: usize },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::R1Add { .. } => "R1_add",
            Move::R1Remove { .. } => "R1_remove",
            Move::R2Add { .. } => "R2_add",
            Move::R2Remove { .. } => "R2_remove",
            Move::R3 { .. } => "R3",
        }
    }

    /// Crossing count change.
    pub fn delta(&self) -> i64 {
        match self {
            Move::R1Add { .. } => 1,
            Move::R1Remove { .. } => -1,
            Move::R2Add { .. } => 2,
            Move::R2Remove { .. } => -2,
            Move::R3 { .. } => 0,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::R1Add { edge, sign, side } => write!(
                f,
                "R1_add e{edge} sign={} side={}",
                if sign > 0 { "+" } else { "-" },
                if side == Side::Left { "left" } else { "right" }
            ),
            Move::R1Remove { face } => write!(f, "R1_remove f{face}"),
            Move::R2Add { face, i, j, over } => write!(
                f,
                "R2_add f{face} i{i} j{j} over={}",
                if over == Over::First { "first" } else { "second" }
            ),
            Move::R2Remove { face } => write!(f, "R2_remove f{face}"),
            Move::R3 { face } => write!(f, "R3 f{face}"),
        }
    }
}

fn index(tok: Option<&&str>, prefix: &str) -> Option<usize> {
    tok?.strip_prefix(prefix)?.parse().ok()
}

impl FromStr for Move {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MoveError::Syntax(s.to_string());
        let t: Vec<&str> = s.split_whitespace().collect();
        let m = match t.first().copied() {
            Some("R1_add") if t.len() == 4 => Move::R1Add {
                edge: index(t.get(1), "e").ok_or_else(bad)?,
                sign: match t[2] {
                    "sign=+" => 1,
                    "sign=-" => -1,
                    _ => return Err(bad()),
                },
                side: match t[3] {
                    "side=left" => Side::Left,
                    "side=right" => Side::Right,
                    _ => return Err(bad()),
                },
            },
            Some("R1_remove") if t.len() == 2 => Move::R1Remove {
                face: index(t.get(1), "f").ok_or_else(bad)?,
            },
            Some("R2_add") if t.len() == 5 => Move::R2Add {
                face: index(t.get(1), "f").ok_or_else(bad)?,
                i: index(t.get(2), "i").ok_or_else(bad)?,
                j: index(t.get(3), "j").ok_or_else(bad)?,
                over: match t[4] {
                    "over=first" => Over::First,
                    "over=second" => Over::Second,
                    _ => return Err(bad()),
                },
            },
            Some("R2_remove") if t.len() == 2 => Move::R2Remove {
                face: index(t.get(1), "f").ok_or_else(bad)?,
            },
            Some("R3") if t.len() == 2 => Move::R3 {
                face: index(t.get(1), "f").ok_or_else(bad)?,
            },
            _ => return Err(bad()),
        };
        Ok(m)
    }
}

#[cfg(test)]
mod tests;
