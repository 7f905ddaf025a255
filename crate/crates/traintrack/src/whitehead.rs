//! Local, stable, and ideal Whitehead graphs; the small-graph catalog; and
//! component indices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::canon;
use crate::error::Error;
use crate::exec::{map_vec, ExecMode};
use crate::maps::GraphMap;
use crate::words::{Direction, Turn};

/// An undirected simplicial graph (no loops, no multi-edges) with
/// single-character vertex names.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleGraph {
    labels: Vec<char>,
    adj: Vec<u16>,
}

impl SimpleGraph {
    pub fn new(labels: Vec<char>) -> Self {
        assert!(labels.len() <= 16, "too many vertices");
        let n = labels.len();
        SimpleGraph { labels, adj: vec![0; n] }
    }

    /// Vertices named `a`, `b`, ... with the given edge pairs by position.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let labels = (0..n).map(|i| (b'a' + i as u8) as char).collect();
        let mut g = SimpleGraph::new(labels);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[char] {
        &self.labels
    }

    pub fn index_of(&self, label: char) -> Option<usize> {
        self.labels.iter().position(|&c| c == label)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no loops in a simplicial graph");
        assert!(u < self.vertex_count() && v < self.vertex_count());
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u] & (1 << v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn adjacency(&self) -> &[u16] {
        &self.adj
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in 0..n {
                    if !seen[u] && self.has_edge(v, u) {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }

    /// Exact isomorphism decision with a vertex bijection witness
    /// (`result[i]` is the vertex of `other` matching vertex `i`).
    pub fn isomorphism(&self, other: &SimpleGraph) -> Option<Vec<usize>> {
        assert!(
            self.vertex_count() <= 12 && other.vertex_count() <= 12,
            "isomorphism supports at most 12 vertices"
        );
        canon::isomorphism(
            self.vertex_count(),
            &self.adj,
            other.vertex_count(),
            &other.adj,
        )
    }

    pub fn is_isomorphic(&self, other: &SimpleGraph) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Canonical certificate; equal certificates mean isomorphic graphs.
    pub fn certificate(&self) -> Vec<u8> {
        canon::canonical_form(self.vertex_count(), &self.adj).0
    }

    /// The same graph with vertices renamed to canonical order.
    pub fn canonicalized(&self) -> SimpleGraph {
        let (_, perm) = canon::canonical_form(self.vertex_count(), &self.adj);
        let n = self.vertex_count();
        let labels = (0..n).map(|i| (b'a' + i as u8) as char).collect();
        let mut g = SimpleGraph::new(labels);
        let mut pos = vec![0usize; n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        for (u, v) in self.edges() {
            g.add_edge(pos[u], pos[v]);
        }
        g
    }
}

impl fmt::Display for SimpleGraph {
    /// `V=5; E=ab,bc,cd,de` with default names, `V=aAbBc; E=...` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let default_names = self
            .labels
            .iter()
            .enumerate()
            .all(|(i, &c)| c == (b'a' + i as u8) as char);
        if default_names {
            write!(f, "V={}", self.vertex_count())?;
        } else {
            write!(f, "V=")?;
            for &c in &self.labels {
                write!(f, "{c}")?;
            }
        }
        write!(f, "; E=")?;
        let edges = self.edges();
        for (k, (u, v)) in edges.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", self.labels[*u], self.labels[*v])?;
        }
        Ok(())
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SimpleGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = |message: &str| Error::Parse {
            line: 1,
            column: 1,
            message: message.to_string(),
        };
        let (vpart, epart) = s.split_once(';').ok_or_else(|| err("expected `V=..; E=..`"))?;
        let vpart = vpart.trim().strip_prefix("V=").ok_or_else(|| err("missing V="))?;
        let labels: Vec<char> = if vpart.chars().all(|c| c.is_ascii_digit()) {
            let n: usize = vpart.parse().map_err(|_| err("bad vertex count"))?;
            if n > 16 {
                return Err(err("too many vertices"));
            }
            (0..n).map(|i| (b'a' + i as u8) as char).collect()
        } else {
            vpart.chars().collect()
        };
        let mut g = SimpleGraph::new(labels);
        let epart = epart.trim().strip_prefix("E=").ok_or_else(|| err("missing E="))?;
        if !epart.trim().is_empty() {
            for item in epart.split(',') {
                let item = item.trim();
                let mut it = item.chars();
                match (it.next(), it.next(), it.next()) {
                    (Some(x), Some(y), None) => {
                        let u = g.index_of(x).ok_or_else(|| err("unknown vertex"))?;
                        let v = g.index_of(y).ok_or_else(|| err("unknown vertex"))?;
                        if u == v {
                            return Err(err("loop edge"));
                        }
                        g.add_edge(u, v);
                    }
                    _ => return Err(err("edges are two-character vertex pairs")),
                }
            }
        }
        Ok(g)
    }
}

/// All turns ever taken by iterated edge images: the closure of the turns
/// traversed by the images themselves under the induced turn map. Exact,
/// since the turn set is finite. Requires a train track map so that no
/// turn degenerates along the way.
pub fn taken_turns(g: &GraphMap) -> Result<BTreeSet<Turn>, Error> {
    if !g.is_self_map() {
        return Err(Error::NotSelfMap);
    }
    let dm = g.direction_map();
    let mut turns: BTreeSet<Turn> = BTreeSet::new();
    for w in g.images() {
        turns.extend(w.traversed_turns());
    }
    let mut frontier: Vec<Turn> = turns.iter().copied().collect();
    while let Some(t) = frontier.pop() {
        let img = dm.turn(t);
        if img.is_degenerate() {
            return Err(Error::NotTrainTrack);
        }
        if turns.insert(img) {
            frontier.push(img);
        }
    }
    Ok(turns)
}

/// The local Whitehead graph on all `2r` directions together with its
/// stable restriction to periodic directions.
#[derive(Clone, Debug)]
pub struct WhiteheadGraphs {
    pub lw: SimpleGraph,
    pub sw: SimpleGraph,
}

/// Computes `LW(g)` (vertices all directions, edges the taken turns) and
/// `SW(g)` (induced on periodic directions). For a pNp-free train track
/// map on a rose, `SW` is the ideal Whitehead graph.
pub fn whitehead_graphs(g: &GraphMap) -> Result<WhiteheadGraphs, Error> {
    let turns = taken_turns(g)?;
    let periodic = g.periodic_directions()?.periodic_set();
    let dirs: Vec<Direction> = g.source().directions().collect();
    let mut lw = SimpleGraph::new(dirs.iter().map(|d| d.to_char()).collect());
    for &t in &turns {
        lw.add_edge(t.first().code(), t.second().code());
    }
    let periodic_sorted: Vec<Direction> = dirs
        .iter()
        .copied()
        .filter(|d| periodic.contains(d))
        .collect();
    let mut sw = SimpleGraph::new(periodic_sorted.iter().map(|d| d.to_char()).collect());
    for &t in &turns {
        let (a, b) = (t.first(), t.second());
        if let (Some(u), Some(v)) = (
            periodic_sorted.iter().position(|&d| d == a),
            periodic_sorted.iter().position(|&d| d == b),
        ) {
            sw.add_edge(u, v);
        }
    }
    Ok(WhiteheadGraphs { lw, sw })
}

/// All connected simplicial graphs on `n` vertices, one per isomorphism
/// class, in canonical order (edge count, then certificate bytes).
pub fn enumerate_catalog(n: usize) -> Vec<SimpleGraph> {
    enumerate_catalog_with(n, ExecMode::default())
}

pub fn enumerate_catalog_with(n: usize, mode: ExecMode) -> Vec<SimpleGraph> {
    assert!((1..=8).contains(&n), "catalog enumeration supports 1..=8 vertices");
    // Grow all graphs (connected or not) one vertex at a time, keeping one
    // canonical representative per class; connectivity is filtered at the
    // end since deleting the last vertex may disconnect a connected graph.
    let mut reps: Vec<Vec<u16>> = vec![vec![0u16]];
    for k in 2..=n {
        let items: Vec<(Vec<u16>, u32)> = reps
            .iter()
            .flat_map(|g| (0..(1u32 << (k - 1))).map(move |mask| (g.clone(), mask)))
            .collect();
        let grown: Vec<(Vec<u8>, Vec<u16>)> = map_vec(mode, &items, |(g, mask)| {
            let mut adj = g.clone();
            adj.push(0);
            for v in 0..k - 1 {
                if mask & (1 << v) != 0 {
                    adj[v] |= 1 << (k - 1);
                    adj[k - 1] |= 1 << v;
                }
            }
            let (cert, perm) = canon::canonical_form(k, &adj);
            let mut pos = vec![0usize; k];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            let mut canon_adj = vec![0u16; k];
            for u in 0..k {
                for v in 0..k {
                    if adj[u] & (1 << v) != 0 {
                        canon_adj[pos[u]] |= 1 << pos[v];
                    }
                }
            }
            (cert, canon_adj)
        });
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut next: Vec<Vec<u16>> = Vec::new();
        for (cert, adj) in grown {
            if seen.insert(cert) {
                next.push(adj);
            }
        }
        reps = next;
    }
    let mut graphs: Vec<SimpleGraph> = reps
        .into_iter()
        .map(|adj| {
            let labels = (0..n).map(|i| (b'a' + i as u8) as char).collect();
            let mut g = SimpleGraph::new(labels);
            for u in 0..n {
                for v in u + 1..n {
                    if adj[u] & (1 << v) != 0 {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
        .filter(SimpleGraph::is_connected)
        .collect();
    graphs.sort_by_key(|g| (g.edge_count(), g.certificate()));
    graphs
}

/// An exact half-integer, as produced by the index formula `1 - k/2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub fn index_of_component(k: usize) -> Self {
        HalfInteger { twice: 2 - k as i64 }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn add(self, other: HalfInteger) -> HalfInteger {
        HalfInteger { twice: self.twice + other.twice }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndexEntry {
    pub vertices: usize,
    pub index: HalfInteger,
    /// False for components with fewer than 3 vertices, which are not
    /// singularities.
    pub singularity: bool,
}

#[derive(Clone, Debug)]
pub struct IndexList {
    pub entries: Vec<IndexEntry>,
    pub sum: HalfInteger,
}

/// Per-component `1 - k/2` over a disjoint union, with the total.
pub fn index_list(graph: &SimpleGraph) -> IndexList {
    let mut entries = Vec::new();
    let mut sum = HalfInteger::from_twice(0);
    for comp in graph.components() {
        let k = comp.len();
        let index = HalfInteger::index_of_component(k);
        sum = sum.add(index);
        entries.push(IndexEntry {
            vertices: k,
            index,
            singularity: k >= 3,
        });
    }
    IndexList { entries, sum }
}
