use super::{word_leaving, BoundaryWord, DiagramError, SlotRef, SurfaceDiagram};

/// The corner of a crossing between `slot` and `slot + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub crossing: usize,
    pub slot: u8,
}

/// One boundary step: an edge traversed (forward means from end 0 to end 1)
/// followed by the corner turned at its far crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceStep {
    pub edge: usize,
    pub forward: bool,
    pub corner: Corner,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<FaceStep>,
    pub holonomy: BoundaryWord,
    /// Word picked up on each step, aligned with `boundary`.
    pub step_words: Vec<BoundaryWord>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Word read from just after step `i` up to and including step `j`,
    /// going around the face.
    pub fn segment_word(&self, i: usize, j: usize) -> BoundaryWord {
        let n = self.boundary.len();
        let mut w = BoundaryWord::empty();
        let mut k = (i + 1) % n;
        loop {
            w.extend(&self.step_words[k]);
            if k == j {
                break;
            }
            k = (k + 1) % n;
        }
        w
    }
}

impl SurfaceDiagram {
    /// Faces traced by leaving each crossing along an edge, arriving at a slot
    /// and turning to the next slot counterclockwise. Crossingless loops are
    /// not part of the face structure.
    pub fn faces(&self) -> Result<Vec<Face>, DiagramError> {
        let darts = self.darts()?;
        let n = darts.other.len();
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut boundary = Vec::new();
            let mut step_words = Vec::new();
            let mut holonomy = BoundaryWord::empty();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let att = darts.att[d];
                let arrive = SlotRef::from_dart(darts.other[d]);
                let w = word_leaving(self, &darts, d);
                holonomy.extend(&w);
                step_words.push(w);
                boundary.push(FaceStep {
                    edge: att.edge,
                    forward: att.end == 0,
                    corner: Corner {
                        crossing: arrive.crossing,
                        slot: arrive.slot,
                    },
                });
                d = arrive.rotated(1).dart();
            }
            faces.push(Face {
                boundary,
                holonomy,
                step_words,
            });
        }
        Ok(faces)
    }

    /// `face_of[4c + k]` is the face containing corner `(c, k)`, with the
    /// step index at which it is visited.
    pub fn corner_faces(faces: &[Face], crossings: usize) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, 0); 4 * crossings];
        for (fi, f) in faces.iter().enumerate() {
            for (si, st) in f.boundary.iter().enumerate() {
                out[4 * st.corner.crossing + st.corner.slot as usize] = (fi, si);
            }
        }
        out
    }
}
