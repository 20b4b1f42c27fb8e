use std::fmt;

use super::{SlotRef, SurfaceDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    NoCrossings,
    ZeroGenus,
    MissingSlot { edge: usize, crossing: usize, slot: u8 },
    SlotDoubleUse { crossing: usize, slot: u8 },
    UnattachedSlot { crossing: usize, slot: u8 },
    Disconnected { components: usize },
    EulerMismatch { faces: usize, expected: i64 },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::NoCrossings => write!(f, "no crossings"),
            ValidationIssue::ZeroGenus => write!(f, "genus must be at least 1"),
            ValidationIssue::MissingSlot { edge, crossing, slot } => {
                write!(f, "edge {edge} references missing slot c{crossing}.{slot}")
            }
            ValidationIssue::SlotDoubleUse { crossing, slot } => {
                write!(f, "slot double-use at c{crossing}.{slot}")
            }
            ValidationIssue::UnattachedSlot { crossing, slot } => {
                write!(f, "slot c{crossing}.{slot} is unattached")
            }
            ValidationIssue::Disconnected { components } => {
                write!(f, "diagram has {components} connected components")
            }
            ValidationIssue::EulerMismatch { faces, expected } => {
                write!(f, "Euler count: {faces} faces, expected {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<ValidationIssue>,
    pub advisories: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_well_formed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SurfaceDiagram {
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        if self.genus == 0 {
            r.violations.push(ValidationIssue::ZeroGenus);
        }
        let c = self.crossings.len();
        if c == 0 {
            r.advisories.push(ValidationIssue::NoCrossings);
        }
        let mut used = vec![0u32; 4 * c];
        for (ei, e) in self.edges.iter().enumerate() {
            for s in e.ends {
                if s.crossing >= c || s.slot > 3 {
                    r.violations.push(ValidationIssue::MissingSlot {
                        edge: ei,
                        crossing: s.crossing,
                        slot: s.slot,
                    });
                } else {
                    used[s.dart()] += 1;
                }
            }
        }
        for (d, &n) in used.iter().enumerate() {
            let s = SlotRef::from_dart(d);
            if n == 0 {
                r.violations.push(ValidationIssue::UnattachedSlot {
                    crossing: s.crossing,
                    slot: s.slot,
                });
            } else if n > 1 {
                r.violations.push(ValidationIssue::SlotDoubleUse {
                    crossing: s.crossing,
                    slot: s.slot,
                });
            }
        }
        if !r.violations.is_empty() || c == 0 {
            return r;
        }
        let comps = self.component_count();
        if comps != 1 {
            r.violations.push(ValidationIssue::Disconnected { components: comps });
        }
        let faces = self.faces().map(|f| f.len()).unwrap_or(0);
        let expected = c as i64 + 2 - 2 * self.genus as i64;
        if faces as i64 != expected {
            r.violations.push(ValidationIssue::EulerMismatch { faces, expected });
        }
        r
    }

    /// Connected components of the underlying graph, counting each
    /// crossingless loop as its own component.
    pub fn component_count(&self) -> usize {
        let c = self.crossings.len();
        let mut parent: Vec<usize> = (0..c).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.ends[0].crossing);
            let b = find(&mut parent, e.ends[1].crossing);
            parent[a] = b;
        }
        (0..c).filter(|&x| find(&mut parent, x) == x).count() + self.loops.len()
    }

    /// Whether over and under passages alternate along every thread.
    pub fn is_alternating(&self) -> bool {
        let Ok(threads) = self.threads() else {
            return false;
        };
        threads.iter().all(|t| {
            let n = t.route.len();
            (0..n).all(|i| {
                let a = t.route[i];
                let b = t.route[(i + 1) % n];
                self.crossings[a.crossing].is_over(a.entry) != self.crossings[b.crossing].is_over(b.entry)
            })
        })
    }

    /// Crossings whose four corners do not lie in four distinct faces.
    pub fn improper_crossings(&self) -> Vec<usize> {
        let Ok(faces) = self.faces() else {
            return (0..self.crossings.len()).collect();
        };
        let cf = SurfaceDiagram::corner_faces(&faces, self.crossings.len());
        (0..self.crossings.len())
            .filter(|&c| {
                let mut f: Vec<usize> = (0..4).map(|k| cf[4 * c + k].0).collect();
                f.sort();
                f.dedup();
                f.len() < 4
            })
            .collect()
    }

    pub fn is_proper(&self) -> (bool, Vec<usize>) {
        let bad = self.improper_crossings();
        (bad.is_empty(), bad)
    }

    /// Crossings where two opposite corners lie in the same region of the
    /// universal cover: same face, and the boundary between the two visits
    /// closes up on the surface.
    pub fn isthmuses(&self) -> Vec<usize> {
        let Ok(faces) = self.faces() else {
            return Vec::new();
        };
        let cf = SurfaceDiagram::corner_faces(&faces, self.crossings.len());
        (0..self.crossings.len())
            .filter(|&c| {
                (0..2).any(|k| {
                    let (f1, i) = cf[4 * c + k];
                    let (f2, j) = cf[4 * c + k + 2];
                    if f1 != f2 {
                        return false;
                    }
                    let face = &faces[f1];
                    face.segment_word(i, j).is_trivial(self.genus)
                        || face.segment_word(j, i).is_trivial(self.genus)
                })
            })
            .collect()
    }

    pub fn is_reduced(&self) -> (bool, Vec<usize>) {
        let bad = self.isthmuses();
        (bad.is_empty(), bad)
    }
}
