//! Edge alphabets with formal inverses, reduced words, and roses.
//!
//! Edges of a rank-`r` rose are written `a..z` with their inverses `A..Z`.
//! The empty word prints as `1`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// An oriented edge of a rose. `index` picks the petal, the low bit the
/// orientation. Since a rose has a single vertex, oriented edges are in
/// bijection with directions at that vertex, so this type doubles as the
/// direction type.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel(u8);

/// A direction at the vertex of a rose, identified with the oriented edge
/// leaving in that direction.
pub type Direction = EdgeLabel;

impl EdgeLabel {
    pub fn positive(index: usize) -> Self {
        assert!(index < 26, "edge index out of range");
        EdgeLabel((index as u8) << 1)
    }

    pub fn negative(index: usize) -> Self {
        assert!(index < 26, "edge index out of range");
        EdgeLabel(((index as u8) << 1) | 1)
    }

    /// Petal index, `0..r`.
    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// The oppositely oriented edge. An involution without fixed points.
    pub fn inverse(self) -> Self {
        EdgeLabel(self.0 ^ 1)
    }

    /// Dense code in `0..2r`, ordered `a, A, b, B, ...`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Self {
        assert!(code < 52, "direction code out of range");
        EdgeLabel(code as u8)
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            'a'..='z' => Some(EdgeLabel::positive(ch as usize - 'a' as usize)),
            'A'..='Z' => Some(EdgeLabel::negative(ch as usize - 'A' as usize)),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        let base = if self.is_positive() { b'a' } else { b'A' };
        (base + self.index() as u8) as char
    }
}

impl fmt::Debug for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// An unordered pair of directions. Normalized so the smaller code comes
/// first; a degenerate pair (both directions equal) is representable but
/// counts as illegal wherever legality matters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Turn(Direction, Direction);

impl Turn {
    pub fn new(d1: Direction, d2: Direction) -> Self {
        if d1 <= d2 {
            Turn(d1, d2)
        } else {
            Turn(d2, d1)
        }
    }

    pub fn first(self) -> Direction {
        self.0
    }

    pub fn second(self) -> Direction {
        self.1
    }

    pub fn is_degenerate(self) -> bool {
        self.0 == self.1
    }

    pub fn contains(self, d: Direction) -> bool {
        self.0 == d || self.1 == d
    }

    /// The other endpoint, if `d` is one of the two.
    pub fn other(self, d: Direction) -> Option<Direction> {
        if self.0 == d {
            Some(self.1)
        } else if self.1 == d {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn map(self, f: impl Fn(Direction) -> Direction) -> Turn {
        Turn::new(f(self.0), f(self.1))
    }

    /// True for the turn `{x, x̄}` joining an edge pair.
    pub fn is_edge_pair(self) -> bool {
        self.0 == self.1.inverse()
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// The `r`-petaled rose. Indices, not object identity, carry meaning: two
/// roses of the same rank share an alphabet, and words over roses of
/// different ranks never mix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rose {
    rank: usize,
}

impl Rose {
    pub fn new(rank: usize) -> Self {
        assert!((1..=26).contains(&rank), "rose rank must be in 1..=26");
        Rose { rank }
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// All `2r` directions in code order `a, A, b, B, ...`.
    pub fn directions(self) -> impl Iterator<Item = Direction> {
        (0..2 * self.rank).map(EdgeLabel::from_code)
    }

    pub fn positive_edges(self) -> impl Iterator<Item = EdgeLabel> {
        (0..self.rank).map(EdgeLabel::positive)
    }

    /// The `r` black edge pairs `{x, x̄}` as turns.
    pub fn edge_pairs(self) -> impl Iterator<Item = Turn> {
        (0..self.rank).map(|i| Turn::new(EdgeLabel::positive(i), EdgeLabel::negative(i)))
    }

    pub fn contains(self, label: EdgeLabel) -> bool {
        label.index() < self.rank
    }
}

/// A freely reduced word over an edge alphabet. The representation is
/// always reduced; constructors cancel adjacent inverse pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<EdgeLabel>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn single(letter: EdgeLabel) -> Self {
        Word { letters: vec![letter] }
    }

    /// Free reduction of a raw letter sequence. Idempotent: reducing a
    /// reduced word returns it unchanged.
    pub fn reduced(raw: impl IntoIterator<Item = EdgeLabel>) -> Self {
        let mut stack: Vec<EdgeLabel> = Vec::new();
        for x in raw {
            if stack.last().is_some_and(|&y| y == x.inverse()) {
                stack.pop();
            } else {
                stack.push(x);
            }
        }
        Word { letters: stack }
    }

    /// Wraps a sequence that is already reduced; returns `None` otherwise.
    pub fn from_reduced(raw: Vec<EdgeLabel>) -> Option<Self> {
        let ok = raw.windows(2).all(|w| w[0] != w[1].inverse());
        ok.then_some(Word { letters: raw })
    }

    pub fn letters(&self) -> &[EdgeLabel] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<EdgeLabel> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<EdgeLabel> {
        self.letters.last().copied()
    }

    /// Reversed, letter-inverted word. An involution.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenate and reduce at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut stack = self.letters.clone();
        for &x in &other.letters {
            if stack.last().is_some_and(|&y| y == x.inverse()) {
                stack.pop();
            } else {
                stack.push(x);
            }
        }
        Word { letters: stack }
    }

    /// The turns `{w̄_i, w_{i+1}}` traversed by this word, empty for words
    /// of length below 2. Reducedness makes every traversed turn
    /// nondegenerate.
    pub fn traversed_turns(&self) -> std::collections::BTreeSet<Turn> {
        self.letters
            .windows(2)
            .map(|w| Turn::new(w[0].inverse(), w[1]))
            .collect()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.index()).max()
    }

    pub fn fits(&self, rose: Rose) -> bool {
        self.max_index().is_none_or(|m| m < rose.rank())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a raw letter sequence without reducing, so callers can detect
/// unreduced input.
pub fn parse_letters(s: &str) -> Result<Vec<EdgeLabel>, Error> {
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(s.len());
    for (i, ch) in s.chars().enumerate() {
        let l = EdgeLabel::from_char(ch).ok_or(Error::BadLetter { ch, column: i + 1 })?;
        out.push(l);
    }
    Ok(out)
}

impl FromStr for Word {
    type Err = Error;

    /// Parses the compact word syntax, e.g. `acBca`; `1` is the empty
    /// word. Errors on unreduced input rather than silently cancelling.
    fn from_str(s: &str) -> Result<Self, Error> {
        let raw = parse_letters(s)?;
        Word::from_reduced(raw).ok_or_else(|| Error::UnreducedWord { word: s.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn raw(s: &str) -> Vec<EdgeLabel> {
        parse_letters(s).unwrap()
    }

    /// Independent oracle: repeated single-pass cancellation until fixpoint.
    fn reduce_oracle(mut v: Vec<EdgeLabel>) -> Vec<EdgeLabel> {
        loop {
            let mut out: Vec<EdgeLabel> = Vec::with_capacity(v.len());
            let mut i = 0;
            let mut changed = false;
            while i < v.len() {
                if i + 1 < v.len() && v[i + 1] == v[i].inverse() {
                    i += 2;
                    changed = true;
                } else {
                    out.push(v[i]);
                    i += 1;
                }
            }
            v = out;
            if !changed {
                return v;
            }
        }
    }

    fn random_raw(rng: &mut StdRng, rank: usize, max_len: usize) -> Vec<EdgeLabel> {
        let len = rng.random_range(0..=max_len);
        (0..len)
            .map(|_| EdgeLabel::from_code(rng.random_range(0..2 * rank)))
            .collect()
    }

    #[test]
    fn inversion_is_involution_without_fixed_points() {
        for code in 0..6 {
            let l = EdgeLabel::from_code(code);
            assert_eq!(l.inverse().inverse(), l);
            assert_ne!(l.inverse(), l);
        }
    }

    #[test]
    fn reduce_cancels() {
        assert_eq!(Word::reduced(raw("aA")), Word::empty());
        assert_eq!(Word::reduced(raw("abBc")), w("ac"));
    }

    #[test]
    fn reduce_matches_oracle_and_is_idempotent() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let v = random_raw(&mut rng, 3, 64);
            let reduced = Word::reduced(v.clone());
            assert_eq!(reduced.letters(), reduce_oracle(v).as_slice());
            assert_eq!(Word::reduced(reduced.letters().to_vec()), reduced);
        }
    }

    #[test]
    fn invert_word() {
        assert_eq!(w("aB").inverse(), w("bA"));
        assert_eq!(Word::empty().inverse(), Word::empty());
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let v = Word::reduced(random_raw(&mut rng, 3, 32));
            assert_eq!(v.inverse().inverse(), v);
            assert_eq!(v.concat(&v.inverse()), Word::empty());
        }
    }

    #[test]
    fn concat_associative_up_to_free_equality() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..200 {
            let a = Word::reduced(random_raw(&mut rng, 3, 24));
            let b = Word::reduced(random_raw(&mut rng, 3, 24));
            let c = Word::reduced(random_raw(&mut rng, 3, 24));
            assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        }
    }

    #[test]
    fn traversed_turns_basic() {
        let turns = w("ac").traversed_turns();
        assert_eq!(turns.len(), 1);
        assert!(turns.contains(&Turn::new(w("A").first().unwrap(), w("c").first().unwrap())));

        let turns = w("abC").traversed_turns();
        let t = |s: &str| {
            let v = raw(s);
            Turn::new(v[0], v[1])
        };
        assert_eq!(turns, [t("Ab"), t("BC")].into_iter().collect());

        assert!(w("a").traversed_turns().is_empty());
        assert!(Word::empty().traversed_turns().is_empty());
    }

    #[test]
    fn graph_xx_edge_a_image_turns() {
        // a ↦ abCCbbcb traverses {b̄, c̄} and {c, b} among others.
        let image = w("abCCbbcb");
        let turns = image.traversed_turns();
        let v = raw("BC");
        assert!(turns.contains(&Turn::new(v[0], v[1])));
        let v = raw("cb");
        assert!(turns.contains(&Turn::new(v[0], v[1])));
    }

    #[test]
    fn traversed_turns_inversion_invariant() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..300 {
            let v = Word::reduced(random_raw(&mut rng, 3, 32));
            // Brute-force scan of the inverted word.
            let inv = v.inverse();
            let mut brute = std::collections::BTreeSet::new();
            let ls = inv.letters();
            for i in 0..ls.len().saturating_sub(1) {
                brute.insert(Turn::new(ls[i].inverse(), ls[i + 1]));
            }
            assert_eq!(inv.traversed_turns(), brute);
            assert_eq!(inv.traversed_turns(), v.traversed_turns());
        }
    }

    #[test]
    fn word_text_round_trip() {
        for s in ["1", "a", "acBca", "AbC"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("a-".parse::<Word>().is_err());
        assert!("aA".parse::<Word>().is_err());
    }
}
