//! Self-maps and between-rose maps of roses: direction and turn dynamics,
//! legality, and the train-track test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::words::{parse_letters, Direction, EdgeLabel, Rose, Turn, Word};

/// A map of roses sending each positively oriented edge to a nonempty
/// reduced word over the target.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphMap {
    source: Rose,
    target: Rose,
    images: Vec<Word>,
}

impl GraphMap {
    pub fn new(source: Rose, target: Rose, images: Vec<Word>) -> Result<Self, Error> {
        if images.len() != source.rank() {
            return Err(Error::RoseMismatch {
                expected: source.rank(),
                got: images.len(),
            });
        }
        for (i, w) in images.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::BadImage {
                    edge: EdgeLabel::positive(i).to_char(),
                });
            }
            if !w.fits(target) {
                return Err(Error::AlphabetMismatch { rank: target.rank() });
            }
        }
        Ok(GraphMap { source, target, images })
    }

    pub fn self_map(rose: Rose, images: Vec<Word>) -> Result<Self, Error> {
        GraphMap::new(rose, rose, images)
    }

    pub fn identity(rose: Rose) -> Self {
        let images = rose
            .positive_edges()
            .map(Word::single)
            .collect();
        GraphMap { source: rose, target: rose, images }
    }

    pub fn source(&self) -> Rose {
        self.source
    }

    pub fn target(&self) -> Rose {
        self.target
    }

    pub fn rank(&self) -> usize {
        self.source.rank()
    }

    pub fn is_self_map(&self) -> bool {
        self.source == self.target
    }

    fn require_self_map(&self) -> Result<(), Error> {
        if self.is_self_map() {
            Ok(())
        } else {
            Err(Error::NotSelfMap)
        }
    }

    /// Image of an oriented edge; negatives get the inverted image.
    pub fn image_of(&self, label: EdgeLabel) -> Word {
        let w = &self.images[label.index()];
        if label.is_positive() {
            w.clone()
        } else {
            w.inverse()
        }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Applies the map to a path and tightens. Linear in the size of the
    /// unreduced image.
    pub fn apply(&self, w: &Word) -> Result<Word, Error> {
        if !w.fits(self.source) {
            return Err(Error::AlphabetMismatch { rank: self.source.rank() });
        }
        let total: usize = w.letters().iter().map(|l| self.images[l.index()].len()).sum();
        let mut raw: Vec<EdgeLabel> = Vec::with_capacity(total);
        for &l in w.letters() {
            let img = self.images[l.index()].letters();
            if l.is_positive() {
                raw.extend_from_slice(img);
            } else {
                raw.extend(img.iter().rev().map(|x| x.inverse()));
            }
        }
        Ok(Word::reduced(raw))
    }

    /// `compose(g2, g1) = g2 ∘ g1`, defined edgewise with tightening.
    pub fn compose(outer: &GraphMap, inner: &GraphMap) -> Result<GraphMap, Error> {
        if inner.target != outer.source {
            return Err(Error::RoseMismatch {
                expected: inner.target.rank(),
                got: outer.source.rank(),
            });
        }
        let images = inner
            .images
            .iter()
            .map(|w| outer.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        GraphMap::new(inner.source, outer.target, images)
    }

    /// Iterated composition `g^k` of a self-map.
    pub fn power(&self, k: usize) -> Result<GraphMap, Error> {
        self.require_self_map()?;
        let mut acc = GraphMap::identity(self.source);
        for _ in 0..k {
            acc = GraphMap::compose(self, &acc)?;
        }
        Ok(acc)
    }

    /// The induced map on directions: `Dg(d)` is the initial direction of
    /// the image of the edge leaving in direction `d`.
    pub fn direction_map(&self) -> DirectionMap {
        let map = self
            .source
            .directions()
            .map(|d| self.image_of(d).first().expect("images are nonempty"))
            .collect();
        DirectionMap {
            source: self.source,
            target: self.target,
            map,
        }
    }

    /// Exact orbit analysis of the direction map of a self-map.
    pub fn periodic_directions(&self) -> Result<PeriodicDirections, Error> {
        self.require_self_map()?;
        Ok(self.direction_map().periodic_directions())
    }

    /// All nondegenerate unordered direction pairs eventually identified by
    /// the iterated direction map. Degenerate turns are illegal by
    /// definition and not listed.
    pub fn illegal_turns(&self) -> Result<BTreeSet<Turn>, Error> {
        self.require_self_map()?;
        let dm = self.direction_map();
        let mut out = BTreeSet::new();
        let dirs: Vec<Direction> = self.source.directions().collect();
        for (i, &d1) in dirs.iter().enumerate() {
            for &d2 in &dirs[i + 1..] {
                if !self.is_legal_turn(Turn::new(d1, d2), &dm) {
                    out.insert(Turn::new(d1, d2));
                }
            }
        }
        Ok(out)
    }

    fn is_legal_turn(&self, t: Turn, dm: &DirectionMap) -> bool {
        // The pair map lives on at most (2r)^2 states, so it must cycle by
        // then; a degenerate iterate means illegal.
        if t.is_degenerate() {
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut cur = t;
        loop {
            if cur.is_degenerate() {
                return false;
            }
            if !seen.insert(cur) {
                return true;
            }
            cur = dm.turn(cur);
        }
    }

    /// True when the turn is legal for this self-map; degenerate turns are
    /// illegal.
    pub fn turn_is_legal(&self, t: Turn) -> Result<bool, Error> {
        self.require_self_map()?;
        Ok(self.is_legal_turn(t, &self.direction_map()))
    }

    /// The train-track test: images reduced (by construction) and every
    /// turn traversed by an edge image legal. This implies `g^k(E)` stays
    /// reduced for all `k`.
    pub fn is_train_track(&self) -> Result<bool, Error> {
        self.require_self_map()?;
        let dm = self.direction_map();
        for w in &self.images {
            for t in w.traversed_turns() {
                if !self.is_legal_turn(t, &dm) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// One line per positive edge: `a -> acBca`.
    pub fn parse(text: &str) -> Result<GraphMap, Error> {
        let mut images: BTreeMap<usize, Word> = BTreeMap::new();
        let mut max_index = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = trimmed.split_once("->").ok_or(Error::Parse {
                line: line_no,
                column: 1,
                message: "expected `edge -> word`".into(),
            })?;
            let lhs = lhs.trim();
            let mut chars = lhs.chars();
            let edge = match (chars.next(), chars.next()) {
                (Some(c), None) => EdgeLabel::from_char(c).filter(|l| l.is_positive()).ok_or(
                    Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("'{lhs}' is not a positive edge"),
                    },
                )?,
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("'{lhs}' is not a single edge"),
                    })
                }
            };
            let word_text = rhs.trim();
            let col = line.find(word_text).map_or(1, |p| p + 1);
            let raw = parse_letters(word_text).map_err(|e| match e {
                Error::BadLetter { ch, column } => Error::Parse {
                    line: line_no,
                    column: col + column - 1,
                    message: format!("invalid letter '{ch}'"),
                },
                other => other,
            })?;
            let word = Word::from_reduced(raw).ok_or(Error::Parse {
                line: line_no,
                column: col,
                message: format!("image '{word_text}' is not freely reduced"),
            })?;
            if word.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    column: col,
                    message: "image must be nonempty".into(),
                });
            }
            if images.insert(edge.index(), word).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    message: format!("duplicate image for edge '{}'", edge.to_char()),
                });
            }
            max_index = max_index.max(edge.index());
        }
        if images.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "no edge images".into(),
            });
        }
        let rank = max_index + 1;
        let mut image_vec = Vec::with_capacity(rank);
        for i in 0..rank {
            let w = images.remove(&i).ok_or(Error::Parse {
                line: 1,
                column: 1,
                message: format!("missing image for edge '{}'", EdgeLabel::positive(i).to_char()),
            })?;
            image_vec.push(w);
        }
        let rose = Rose::new(rank);
        GraphMap::new(rose, rose, image_vec)
    }
}

impl fmt::Display for GraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            writeln!(f, "{} -> {}", EdgeLabel::positive(i).to_char(), w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphMap[")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", EdgeLabel::positive(i).to_char(), w)?;
        }
        write!(f, "]")
    }
}

impl FromStr for GraphMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        GraphMap::parse(s)
    }
}

/// The finite map `Dg` on the `2r` directions of the source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectionMap {
    source: Rose,
    target: Rose,
    map: Vec<Direction>,
}

impl DirectionMap {
    pub fn apply(&self, d: Direction) -> Direction {
        self.map[d.code()]
    }

    pub fn turn(&self, t: Turn) -> Turn {
        t.map(|d| self.apply(d))
    }

    pub fn compose(outer: &DirectionMap, inner: &DirectionMap) -> DirectionMap {
        DirectionMap {
            source: inner.source,
            target: outer.target,
            map: inner.map.iter().map(|&d| outer.apply(d)).collect(),
        }
    }

    /// Orbit analysis of a self-map on directions: which directions lie on
    /// cycles, and with which minimal period.
    pub fn periodic_directions(&self) -> PeriodicDirections {
        assert_eq!(self.source, self.target, "periodicity needs a self-map");
        let n = self.map.len();
        let mut periods: BTreeMap<Direction, usize> = BTreeMap::new();
        for code in 0..n {
            let start = EdgeLabel::from_code(code);
            // Walk until revisiting a state; `start` is periodic iff the
            // walk returns to it.
            let mut seen = vec![false; n];
            let mut cur = start;
            let mut steps = 0usize;
            loop {
                if seen[cur.code()] {
                    break;
                }
                seen[cur.code()] = true;
                cur = self.apply(cur);
                steps += 1;
                if cur == start {
                    periods.insert(start, steps);
                    break;
                }
            }
        }
        PeriodicDirections {
            rose: self.source,
            periods,
        }
    }
}

/// Classification of directions as periodic (with minimal period) or
/// preperiodic.
#[derive(Clone, Debug)]
pub struct PeriodicDirections {
    rose: Rose,
    periods: BTreeMap<Direction, usize>,
}

impl PeriodicDirections {
    pub fn periodic(&self) -> impl Iterator<Item = Direction> + '_ {
        self.periods.keys().copied()
    }

    pub fn periodic_set(&self) -> BTreeSet<Direction> {
        self.periods.keys().copied().collect()
    }

    pub fn preperiodic(&self) -> impl Iterator<Item = Direction> + '_ {
        self.rose
            .directions()
            .filter(move |d| !self.periods.contains_key(d))
    }

    pub fn period_of(&self, d: Direction) -> Option<usize> {
        self.periods.get(&d).copied()
    }

    pub fn count(&self) -> usize {
        self.periods.len()
    }

    pub fn fixed_count(&self) -> usize {
        self.periods.values().filter(|&&p| p == 1).count()
    }

    /// Least common multiple of all periods; a power by this fixes every
    /// periodic direction.
    pub fn lcm_of_periods(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.periods.values().fold(1, |acc, &p| acc / gcd(acc, p) * p)
    }
}
