use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{apply_move, enumerate_moves, enumerate_simplifying, Move, MoveError};
use crate::diagram::SurfaceDiagram;
use crate::invariants::{bracket_with, BracketOptions, InvariantError, WindingKey};

/// A replayable random walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub seed: u64,
    pub moves: Vec<Move>,
}

impl MoveTrace {
    pub fn to_text(&self) -> String {
        let mut s = format!("# seed {}\n", self.seed);
        for m in &self.moves {
            s.push_str(&m.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<MoveTrace, MoveError> {
        let mut seed = 0;
        let mut moves = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("# seed ") {
                seed = rest.trim().parse().map_err(|_| MoveError::Syntax(line.to_string()))?;
            } else if line.is_empty() || line.starts_with('#') {
                continue;
            } else {
                moves.push(line.parse()?);
            }
        }
        Ok(MoveTrace { seed, moves })
    }
}

/// One step of a walk with the diagram it produced.
#[derive(Clone, Debug)]
pub struct FuzzStep {
    pub mv: Move,
    pub after: SurfaceDiagram,
}

fn is_remove(m: &Move) -> bool {
    matches!(m, Move::R1Remove { .. } | Move::R2Remove { .. })
}

/// Seeded random walk of `steps` moves. Adds that would exceed
/// `max_crossings` are skipped, and removes are preferred once the diagram
/// is above three quarters of the cap.
pub fn fuzz(d: &SurfaceDiagram, steps: usize, seed: u64, max_crossings: usize) -> Result<(MoveTrace, Vec<FuzzStep>), MoveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut trace = MoveTrace { seed, moves: Vec::new() };
    let mut out = Vec::new();
    for _ in 0..steps {
        let c = cur.crossings.len() as i64;
        let all: Vec<Move> = enumerate_moves(&cur)
            .into_iter()
            .filter(|m| c + m.delta() <= max_crossings as i64)
            .collect();
        let removes: Vec<Move> = all.iter().copied().filter(is_remove).collect();
        let pick = if 4 * c > 3 * max_crossings as i64 && !removes.is_empty() {
            *removes.choose(&mut rng).unwrap()
        } else {
            let groups: Vec<Vec<Move>> = ["R1_remove", "R2_remove", "R3", "R1_add", "R2_add"]
                .iter()
                .map(|k| all.iter().copied().filter(|m| m.kind() == *k).collect::<Vec<_>>())
                .filter(|g| !g.is_empty())
                .collect();
            if groups.is_empty() {
                break;
            }
            let g = &groups[rng.gen_range(0..groups.len())];
            *g.choose(&mut rng).unwrap()
        };
        cur = apply_move(&cur, pick)?;
        trace.moves.push(pick);
        out.push(FuzzStep {
            mv: pick,
            after: cur.clone(),
        });
    }
    Ok((trace, out))
}

/// Applies every move of a trace in order.
pub fn replay(d: &SurfaceDiagram, trace: &MoveTrace) -> Result<SurfaceDiagram, MoveError> {
    let mut cur = d.clone();
    for &m in &trace.moves {
        cur = apply_move(&cur, m)?;
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub restarts: usize,
    pub steps: usize,
    pub seed: u64,
    pub crossing_budget: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            restarts: 8,
            steps: 64,
            seed: 0,
            crossing_budget: crate::invariants::DEFAULT_CROSSING_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingBounds {
    /// `None` when the bracket has no trivial-loop part to read a span from.
    pub lower: Option<usize>,
    pub upper: usize,
}

/// Lower bound from the bracket span, upper bound from a seeded search that
/// applies removes greedily and R3 moves at random.
pub fn crossing_number_bounds(d: &SurfaceDiagram, budget: SearchBudget) -> Result<CrossingBounds, InvariantError> {
    let lower = if d.crossings.is_empty() {
        Some(0)
    } else {
        let b = bracket_with(
            d,
            BracketOptions {
                budget: budget.crossing_budget,
                threads: 1,
            },
        )?;
        match (b.scaled().contains_key(&WindingKey::default()), b.span()) {
            (true, Some(span)) => Some(((span.max(0) + 3) / 4) as usize + d.genus),
            _ => None,
        }
    };
    let mut upper = d.crossings.len();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for restart in 0..budget.restarts.max(1) {
        let mut cur = d.clone();
        for _ in 0..budget.steps {
            let moves = enumerate_simplifying(&cur);
            let removes: Vec<Move> = moves.iter().copied().filter(is_remove).collect();
            let m = if !removes.is_empty() {
                if restart == 0 {
                    removes[0]
                } else {
                    *removes.choose(&mut rng).unwrap()
                }
            } else if let Some(&m) = moves.choose(&mut rng) {
                m
            } else {
                break;
            };
            match apply_move(&cur, m) {
                Ok(next) => cur = next,
                Err(_) => break,
            }
            upper = upper.min(cur.crossings.len());
        }
    }
    Ok(CrossingBounds { lower, upper })
}
