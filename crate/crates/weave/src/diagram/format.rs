//! Line-oriented text interchange format.
//!
//! ```text
//! genus 1
//! crossing c0 over=13
//! edge c0.0 c0.2 word=a
//! edge c0.1 c0.3 word=b
//! loop word=ab
//! ```
//!
//! `#` starts a comment. `loop` declares a crossingless closed component.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Axis, BoundaryWord, Crossing, Edge, SlotRef, SurfaceDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_crossing_id(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.strip_prefix('c')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| err(line, format!("bad crossing id '{tok}'")))
}

fn parse_slot(tok: &str, line: usize) -> Result<SlotRef, ParseError> {
    let (c, s) = tok
        .split_once('.')
        .ok_or_else(|| err(line, format!("bad slot '{tok}'")))?;
    let crossing = parse_crossing_id(c, line)?;
    let slot: u8 = s.parse().map_err(|_| err(line, format!("bad slot index in '{tok}'")))?;
    if slot > 3 {
        return Err(err(line, format!("slot index {slot} out of range")));
    }
    Ok(SlotRef { crossing, slot })
}

fn parse_word(tok: &str, genus: usize, line: usize) -> Result<BoundaryWord, ParseError> {
    let w = tok
        .strip_prefix("word=")
        .ok_or_else(|| err(line, format!("expected word=..., got '{tok}'")))?;
    BoundaryWord::parse(w, genus).map_err(|m| err(line, m))
}

pub fn parse_diagram(text: &str) -> Result<SurfaceDiagram, ParseError> {
    let mut genus: Option<usize> = None;
    let mut crossings: BTreeMap<usize, Crossing> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "genus" => {
                if genus.is_some() {
                    return Err(err(line, "genus declared twice"));
                }
                let g: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .filter(|&g| g >= 1)
                    .ok_or_else(|| err(line, "genus must be a positive integer"))?;
                if toks.len() > 2 {
                    return Err(err(line, "trailing tokens"));
                }
                genus = Some(g);
            }
            "crossing" => {
                if toks.len() != 3 {
                    return Err(err(line, "expected: crossing cN over=02|13"));
                }
                let id = parse_crossing_id(toks[1], line)?;
                let over = match toks[2] {
                    "over=02" => Axis::Axis02,
                    "over=13" => Axis::Axis13,
                    t => return Err(err(line, format!("bad over axis '{t}'"))),
                };
                if crossings.insert(id, Crossing::new(over)).is_some() {
                    return Err(err(line, format!("crossing c{id} declared twice")));
                }
            }
            "edge" => {
                let g = genus.ok_or_else(|| err(line, "genus must come first"))?;
                if toks.len() != 4 {
                    return Err(err(line, "expected: edge cA.s cB.t word=..."));
                }
                let a = parse_slot(toks[1], line)?;
                let b = parse_slot(toks[2], line)?;
                edges.push((line, Edge::new(a, b, parse_word(toks[3], g, line)?)));
            }
            "loop" => {
                let g = genus.ok_or_else(|| err(line, "genus must come first"))?;
                if toks.len() != 2 {
                    return Err(err(line, "expected: loop word=..."));
                }
                loops.push(parse_word(toks[1], g, line)?);
            }
            t => return Err(err(line, format!("unknown declaration '{t}'"))),
        }
    }
    let genus = genus.ok_or_else(|| err(0, "missing genus declaration"))?;
    for (k, (&id, _)) in crossings.iter().enumerate() {
        if id != k {
            return Err(err(0, format!("crossing ids must be c0..c{}; c{k} is missing", crossings.len() - 1)));
        }
    }
    for (line, e) in &edges {
        for s in e.ends {
            if s.crossing >= crossings.len() {
                return Err(err(*line, format!("undeclared crossing c{}", s.crossing)));
            }
        }
    }
    Ok(SurfaceDiagram {
        genus,
        crossings: crossings.into_values().collect(),
        edges: edges.into_iter().map(|(_, e)| e).collect(),
        loops,
    })
}

pub fn write_diagram(d: &SurfaceDiagram) -> String {
    let mut s = String::new();
    writeln!(s, "genus {}", d.genus).unwrap();
    for (i, c) in d.crossings.iter().enumerate() {
        let axis = match c.over {
            Axis::Axis02 => "02",
            Axis::Axis13 => "13",
        };
        writeln!(s, "crossing c{i} over={axis}").unwrap();
    }
    for e in &d.edges {
        let [a, b] = e.ends;
        writeln!(
            s,
            "edge c{}.{} c{}.{} word={}",
            a.crossing,
            a.slot,
            b.crossing,
            b.slot,
            e.word.render(d.genus)
        )
        .unwrap();
    }
    for w in &d.loops {
        writeln!(s, "loop word={}", w.render(d.genus)).unwrap();
    }
    s
}
