//! Reduced words in the free group on `A`, `B` and double-coset
//! representatives for arcs in a pair of pants.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A letter: `±1` for `A^{±1}`, `±2` for `B^{±1}`.
pub type Letter = i8;

/// Freely reduced word over `{A, a, B, b}`, lowercase meaning inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

fn rank(l: Letter) -> u8 {
    match l {
        1 => 0,
        2 => 1,
        -1 => 2,
        -2 => 3,
        _ => unreachable!(),
    }
}

fn letter_char(l: Letter) -> char {
    match l {
        1 => 'A',
        2 => 'B',
        -1 => 'a',
        -2 => 'b',
        _ => unreachable!(),
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Parses a word over `{A, a, B, b}`; `-` is the empty word. Rejects
    /// words that are not freely reduced.
    pub fn parse(s: &str) -> Result<Word> {
        if s == "-" || s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'A' => Ok(1),
                'a' => Ok(-1),
                'B' => Ok(2),
                'b' => Ok(-2),
                _ => Err(Error::MalformedWord(s.to_string())),
            })
            .collect::<Result<Vec<Letter>>>()?;
        let w = Word::reduce(letters.iter().copied());
        if w.0.len() != letters.len() {
            return Err(Error::MalformedWord(s.to_string()));
        }
        Ok(w)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        Word::reduce((0..k.unsigned_abs()).flat_map(|_| base.0.iter().copied()))
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Writes the word, using `-` for the empty word.
    pub fn to_token(&self) -> String {
        if self.is_empty() {
            "-".into()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{}", letter_char(l))?;
        }
        Ok(())
    }
}

/// Shortlex order with letters ranked `A < B < a < b`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            self.0
                .iter()
                .map(|&l| rank(l))
                .cmp(other.0.iter().map(|&l| rank(l)))
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Boundary word of boundary `i` of the pants: `x1 = A`, `x2 = B`,
/// `x3 = (AB)^-1`.
pub fn boundary_word(i: u8) -> Word {
    match i {
        1 => Word(vec![1]),
        2 => Word(vec![2]),
        3 => Word(vec![-2, -1]),
        _ => panic!("boundary index {i} out of range"),
    }
}

/// Arc class in a pair of pants: endpoints on boundaries `i <= j` and a
/// double-coset representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcClass {
    pub i: u8,
    pub j: u8,
    pub word: Word,
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.word.to_token())
    }
}

fn strip_prefix(w: &Word, x: &Word) -> Option<Word> {
    for p in [x.clone(), x.inverse()] {
        if w.0.starts_with(&p.0) {
            return Some(Word(w.0[p.len()..].to_vec()));
        }
    }
    None
}

fn strip_suffix(w: &Word, x: &Word) -> Option<Word> {
    for p in [x.clone(), x.inverse()] {
        if w.0.ends_with(&p.0) {
            return Some(Word(w.0[..w.len() - p.len()].to_vec()));
        }
    }
    None
}

/// Shortlex-minimal element of `<x_i> w <x_j>`.
///
/// Whole powers of the boundary words are stripped first; the result is then
/// improved over a window `x_i^m w x_j^n`, `|m|, |n| <= R`, which grows until
/// two consecutive rings of the window contain nothing at or below the current
/// minimum.
pub fn double_coset_min(w: &Word, i: u8, j: u8) -> Word {
    let (xi, xj) = (boundary_word(i), boundary_word(j));
    let mut w = w.clone();
    loop {
        if let Some(s) = strip_prefix(&w, &xi) {
            w = s;
        } else if let Some(s) = strip_suffix(&w, &xj) {
            w = s;
        } else {
            break;
        }
    }
    if w.is_empty() {
        return w;
    }

    let at = |m: i64, n: i64| xi.pow(m).mul(&w).mul(&xj.pow(n));
    let mut best = w.clone();
    let mut quiet = 0;
    let mut r: i64 = 1;
    while quiet < 2 {
        let mut ring_min: Option<Word> = None;
        for m in -r..=r {
            for n in -r..=r {
                if m.abs() != r && n.abs() != r {
                    continue;
                }
                let cand = at(m, n);
                if ring_min.as_ref().is_none_or(|b| cand < *b) {
                    ring_min = Some(cand);
                }
            }
        }
        let ring_min = ring_min.unwrap();
        if ring_min < best {
            best = ring_min;
            quiet = 0;
        } else {
            quiet += 1;
        }
        r += 1;
    }
    best
}

/// Canonical representative of the arc class of `word` from boundary `i` to
/// boundary `j`. Arcs are unoriented, so the endpoints are ordered and, for
/// `i = j`, the smaller of the two orientations is kept.
pub fn canonical_arc_class(word: &Word, i: u8, j: u8) -> Result<ArcClass> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::MalformedWord(format!("boundary pair ({i},{j})")));
    }
    if Word::reduce(word.0.iter().copied()) != *word {
        return Err(Error::MalformedWord(word.to_string()));
    }
    let (i, j, word) = if i > j { (j, i, word.inverse()) } else { (i, j, word.clone()) };
    let mut rep = double_coset_min(&word, i, j);
    if i == j {
        rep = rep.min(double_coset_min(&word.inverse(), i, j));
    }
    Ok(ArcClass { i, j, word: rep })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("ABab").to_string(), "ABab");
        assert_eq!(w("-"), Word::empty());
        assert!(matches!(Word::parse("Aa"), Err(Error::MalformedWord(_))));
        assert!(matches!(Word::parse("AxB"), Err(Error::MalformedWord(_))));
    }

    #[test]
    fn shortlex_order() {
        assert!(w("B") < w("a"));
        assert!(w("b") < w("AA"));
        assert!(w("AB") < w("Ab"));
    }

    #[test]
    fn boundary_words_multiply_to_one() {
        let prod = boundary_word(1).mul(&boundary_word(2)).mul(&boundary_word(3));
        assert!(prod.is_empty());
    }

    #[test]
    fn reference_representatives() {
        assert_eq!(canonical_arc_class(&w("ABA"), 1, 1).unwrap().word, w("B"));
        assert_eq!(canonical_arc_class(&Word::empty(), 1, 2).unwrap().word, Word::empty());
        assert_eq!(canonical_arc_class(&w("AAAAA"), 1, 1).unwrap().word, Word::empty());
    }

    #[test]
    fn reversed_arc_is_same_class() {
        let a = canonical_arc_class(&w("AB"), 1, 3).unwrap();
        let b = canonical_arc_class(&w("ba"), 3, 1).unwrap();
        assert_eq!(a, b);
        let c = canonical_arc_class(&w("b"), 1, 1).unwrap();
        assert_eq!(c.word, w("B"));
    }

    #[test]
    fn boundary_three_power_is_trivial() {
        let x3 = boundary_word(3);
        assert!(canonical_arc_class(&x3.pow(3), 3, 3).unwrap().word.is_empty());
    }
}
