//! Words in the side-identification alphabet of a genus-`g` unit cell.
//!
//! Generator `i < g` is `a_{i+1}`, generator `g + i` is `b_{i+1}`. A word
//! records which identified sides an arc crosses, in order. Words are kept
//! freely reduced.

use std::fmt;

/// One letter: a generator index and whether it is inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u16, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryWord {
    letters: Vec<Letter>,
}

impl BoundaryWord {
    pub fn empty() -> Self {
        BoundaryWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = BoundaryWord::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// `x^count` followed by `y^count` in the abelian sense, as a word `a^x b^y`.
    /// Used for torus wrap vectors.
    pub fn from_wrap(wrap: (i32, i32)) -> Self {
        let mut w = BoundaryWord::empty();
        for _ in 0..wrap.0.unsigned_abs() {
            w.push(Letter::new(0, wrap.0 < 0));
        }
        for _ in 0..wrap.1.unsigned_abs() {
            w.push(Letter::new(1, wrap.1 < 0));
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter, cancelling against the last one if they are inverse.
    pub fn push(&mut self, l: Letter) {
        if let Some(&last) = self.letters.last() {
            if last == l.inverted() {
                self.letters.pop();
                return;
            }
        }
        self.letters.push(l);
    }

    pub fn concat(&self, other: &BoundaryWord) -> BoundaryWord {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    pub fn extend(&mut self, other: &BoundaryWord) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn inverse(&self) -> BoundaryWord {
        BoundaryWord {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Exponent sums per generator: `(m^1..m^g, n^1..n^g)`.
    pub fn abelianize(&self, genus: usize) -> Vec<i32> {
        let mut v = vec![0; 2 * genus];
        for l in &self.letters {
            let g = l.generator as usize;
            if g < v.len() {
                v[g] += if l.inverse { -1 } else { 1 };
            }
        }
        v
    }

    /// Cyclic reduction: strips matching inverse letters from both ends.
    pub fn cyclically_reduced(&self) -> BoundaryWord {
        let mut l = self.letters.as_slice();
        while l.len() >= 2 && l[0] == l[l.len() - 1].inverted() {
            l = &l[1..l.len() - 1];
        }
        BoundaryWord { letters: l.to_vec() }
    }

    /// Whether this closed-path word is null-homotopic on the surface.
    ///
    /// On the torus the fundamental group is abelian, so exponent sums decide
    /// it. For higher genus the surface group with relator
    /// `[a1,b1]...[ag,bg]` is small cancellation, so Dehn's algorithm is exact.
    pub fn is_trivial(&self, genus: usize) -> bool {
        if genus <= 1 {
            self.abelianize(1).iter().all(|&x| x == 0)
        } else {
            dehn_reduce(&self.letters, genus).is_empty()
        }
    }

    /// Applies a substitution to every generator.
    pub fn substitute(&self, image: impl Fn(u16) -> BoundaryWord) -> BoundaryWord {
        let mut out = BoundaryWord::empty();
        for l in &self.letters {
            let img = image(l.generator);
            if l.inverse {
                out.extend(&img.inverse());
            } else {
                out.extend(&img);
            }
        }
        out
    }

    /// Renders with `a`/`b` for genus 1 and `a1`, `b2`, ... otherwise.
    /// Uppercase marks an inverse letter.
    pub fn render(&self, genus: usize) -> String {
        let mut s = String::new();
        for l in &self.letters {
            let g = l.generator as usize;
            let (base, idx) = if g < genus { ('a', g + 1) } else { ('b', g - genus + 1) };
            let c = if l.inverse { base.to_ascii_uppercase() } else { base };
            s.push(c);
            if genus > 1 {
                s.push_str(&idx.to_string());
            }
        }
        s
    }

    /// Parses the rendering produced by [`BoundaryWord::render`]. For genus 1
    /// the index may be omitted or written as `1`.
    pub fn parse(text: &str, genus: usize) -> Result<BoundaryWord, String> {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        let mut w = BoundaryWord::empty();
        while i < chars.len() {
            let c = chars[i];
            let (is_b, inverse) = match c {
                'a' => (false, false),
                'A' => (false, true),
                'b' => (true, false),
                'B' => (true, true),
                _ => return Err(format!("unknown letter '{c}' in word \"{text}\"")),
            };
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let idx: usize = if start == i {
                if genus != 1 {
                    return Err(format!("letter '{c}' needs an index for genus {genus}"));
                }
                1
            } else {
                chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| format!("bad index in word \"{text}\""))?
            };
            if idx == 0 || idx > genus {
                return Err(format!("letter '{c}{idx}' is not defined for genus {genus}"));
            }
            let generator = if is_b { genus + idx - 1 } else { idx - 1 };
            w.push(Letter::new(generator as u16, inverse));
        }
        Ok(w)
    }
}

fn surface_relators(genus: usize) -> Vec<Vec<Letter>> {
    let mut r = Vec::with_capacity(4 * genus);
    for i in 0..genus {
        let a = i as u16;
        let b = (genus + i) as u16;
        r.extend([
            Letter::new(a, false),
            Letter::new(b, false),
            Letter::new(a, true),
            Letter::new(b, true),
        ]);
    }
    let rinv: Vec<Letter> = r.iter().rev().map(|l| l.inverted()).collect();
    let mut out = Vec::new();
    for base in [r, rinv] {
        for k in 0..base.len() {
            let mut rot = base[k..].to_vec();
            rot.extend_from_slice(&base[..k]);
            out.push(rot);
        }
    }
    out
}

fn cyclic_reduce(mut w: Vec<Letter>) -> Vec<Letter> {
    let mut fresh = BoundaryWord::from_letters(w.drain(..));
    fresh = fresh.cyclically_reduced();
    fresh.letters
}

/// Dehn's algorithm on the cyclic word `w`.
fn dehn_reduce(w: &[Letter], genus: usize) -> Vec<Letter> {
    let rels = surface_relators(genus);
    let half = 2 * genus;
    let mut w = cyclic_reduce(w.to_vec());
    'outer: loop {
        let n = w.len();
        if n == 0 {
            return w;
        }
        for p in 0..n {
            for rel in &rels {
                let mut len = 0;
                while len < n && len < rel.len() && w[(p + len) % n] == rel[len] {
                    len += 1;
                }
                if len > half {
                    let mut next: Vec<Letter> = rel[len..].iter().rev().map(|l| l.inverted()).collect();
                    for k in len..n {
                        next.push(w[(p + k) % n]);
                    }
                    w = cyclic_reduce(next);
                    continue 'outer;
                }
            }
        }
        return w;
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // genus is unknown here; index form is unambiguous
        for l in &self.letters {
            write!(f, "{}{}", if l.inverse { "~" } else { "" }, l.generator)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_abelianizes_to_zero() {
        assert_eq!(BoundaryWord::empty().abelianize(2), vec![0, 0, 0, 0]);
    }

    #[test]
    fn free_reduction_on_push() {
        let w = BoundaryWord::parse("abBA", 1).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn concatenation_is_additive_after_abelianizing() {
        let u = BoundaryWord::parse("a1b2A2", 2).unwrap();
        let v = BoundaryWord::parse("b1b1a2", 2).unwrap();
        let sum: Vec<i32> = u
            .abelianize(2)
            .iter()
            .zip(v.abelianize(2))
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(u.concat(&v).abelianize(2), sum);
    }

    #[test]
    fn inverse_inverts() {
        let w = BoundaryWord::parse("aabB", 1).unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.inverse().render(1), "A".repeat(2));
    }

    #[test]
    fn rejects_letters_outside_genus() {
        assert!(BoundaryWord::parse("a3", 2).is_err());
        assert!(BoundaryWord::parse("c", 1).is_err());
        assert!(BoundaryWord::parse("a", 2).is_err());
    }

    #[test]
    fn render_round_trip_genus_two() {
        let w = BoundaryWord::parse("a1B2b1", 2).unwrap();
        assert_eq!(w.render(2), "a1B2b1");
        assert_eq!(BoundaryWord::parse(&w.render(2), 2).unwrap(), w);
    }

    #[test]
    fn torus_triviality_is_abelian() {
        let commutator = BoundaryWord::parse("abAB", 1).unwrap();
        assert!(commutator.is_trivial(1));
        let c2 = BoundaryWord::parse("a1b1A1B1", 2).unwrap();
        assert!(!c2.is_trivial(2));
        assert_eq!(c2.abelianize(2), vec![0; 4]);
    }

    #[test]
    fn surface_relator_is_trivial_in_genus_two() {
        let r = BoundaryWord::parse("a1b1A1B1a2b2A2B2", 2).unwrap();
        assert!(r.is_trivial(2));
        assert!(r.inverse().is_trivial(2));
        // conjugates and rotations too
        let u = BoundaryWord::parse("b2a1", 2).unwrap();
        assert!(u.concat(&r).concat(&u.inverse()).is_trivial(2));
        let rot = BoundaryWord::parse("A2B2a1b1A1B1a2b2", 2).unwrap();
        assert!(rot.is_trivial(2));
        assert!(!BoundaryWord::parse("a1b1A1B1a2b2A2", 2).unwrap().is_trivial(2));
    }
}
