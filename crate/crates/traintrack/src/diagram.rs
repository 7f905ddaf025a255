//! Ideal decomposition diagrams: node enumeration over labelings of a
//! catalog graph, directed edges from generating triples, restriction to
//! strongly connected parts, the Irreducibility Potential Test, extension
//! subdiagrams, and loop search strategies.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::Error;
use crate::exec::{map_vec, ExecMode};
use crate::ltt::LttStructure;
use crate::maps::GraphMap;
use crate::moves::{
    assemble_ideal_decomposition, check_graph_built, extensions_from, switches_from,
    DirectionCensus, GeneratingTriple, IdealDecomposition, TripleKind,
};
use crate::scc::tarjan_scc;
use crate::verifier::{check_red_vertex_coverage, verify_representative, VerificationReport};
use crate::whitehead::SimpleGraph;
use crate::words::{Direction, Rose, Turn};

#[derive(Clone, Debug)]
pub struct DiagramEdge {
    pub src: usize,
    pub dst: usize,
    pub triple: GeneratingTriple,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildStats {
    pub labelings: usize,
    pub preadmissible: usize,
    pub candidates: usize,
    pub birecurrent: usize,
    pub pruned_nodes: usize,
}

/// The ideal decomposition diagram for a catalog graph: admissible indexed
/// pair-labeled structures as nodes, generating triples as directed edges,
/// restricted to the strongly connected parts.
#[derive(Clone, Debug)]
pub struct IdDiagram {
    shape: SimpleGraph,
    rank: usize,
    nodes: Vec<LttStructure>,
    edges: Vec<DiagramEdge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    components: Vec<Vec<usize>>,
    stats: BuildStats,
}

impl IdDiagram {
    pub fn shape(&self) -> &SimpleGraph {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> &[LttStructure] {
        &self.nodes
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.out_edges[node]
    }

    pub fn in_edges(&self, node: usize) -> &[usize] {
        &self.in_edges[node]
    }

    /// Strongly connected components containing at least one edge, as
    /// sorted node lists.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn stats(&self) -> BuildStats {
        self.stats
    }

    pub fn node_index(&self, s: &LttStructure) -> Option<usize> {
        self.nodes.binary_search(s).ok()
    }

    pub fn edge_between(&self, triple: &GeneratingTriple) -> Option<usize> {
        let src = self.node_index(triple.source())?;
        self.out_edges[src]
            .iter()
            .copied()
            .find(|&e| &self.edges[e].triple == triple)
    }

    /// Whether a cyclic decomposition embeds edge by edge.
    pub fn contains_decomposition(&self, dec: &IdealDecomposition) -> bool {
        dec.triples().iter().all(|t| self.edge_between(t).is_some())
    }
}

/// Builds the diagram: enumerate all ways to pick the unachieved label,
/// assign the rest to the graph's vertices (labelings equal as labeled
/// edge sets are enumerated once), and attach the red edge; keep
/// preadmissible labelings and birecurrent structures; draw extension and
/// switch edges; restrict to strongly connected subgraphs.
pub fn build_id_diagram(shape: &SimpleGraph, rank: usize) -> Result<IdDiagram, Error> {
    build_id_diagram_with(shape, rank, ExecMode::default())
}

pub fn build_id_diagram_with(
    shape: &SimpleGraph,
    rank: usize,
    mode: ExecMode,
) -> Result<IdDiagram, Error> {
    let n_vertices = 2 * rank - 1;
    if shape.vertex_count() != n_vertices {
        return Err(Error::BadStructure(format!(
            "diagram shape needs {n_vertices} vertices"
        )));
    }
    if !shape.is_connected() {
        return Err(Error::BadStructure("diagram shape must be connected".into()));
    }
    let rose = Rose::new(rank);
    let mut stats = BuildStats::default();

    // Distinct labeled purple graphs per choice of unachieved label.
    let mut labeled: BTreeSet<(Direction, BTreeSet<Turn>)> = BTreeSet::new();
    for d_u in rose.directions() {
        let labels: Vec<Direction> = rose.directions().filter(|&d| d != d_u).collect();
        let mut perm: Vec<usize> = (0..n_vertices).collect();
        loop {
            let edge_set: BTreeSet<Turn> = shape
                .edges()
                .iter()
                .map(|&(u, v)| Turn::new(labels[perm[u]], labels[perm[v]]))
                .collect();
            stats.labelings += 1;
            labeled.insert((d_u, edge_set));
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }

    // Prefilter before the birecurrency check: two or more valence-one
    // edge-pair edges can never be repaired by any red edge attachment, so
    // those labelings are skipped wholesale. (The stricter count of all
    // edge-pair edges would wrongly discard every labeling of the complete
    // graph, which is achieved.)
    let mut candidates: Vec<LttStructure> = Vec::new();
    for (d_u, purple) in &labeled {
        let valence = |d: Direction| purple.iter().filter(|t| t.contains(d)).count();
        let weak_pairs = purple
            .iter()
            .filter(|t| t.is_edge_pair() && (valence(t.first()) == 1 || valence(t.second()) == 1))
            .count();
        if weak_pairs > 1 {
            continue;
        }
        stats.preadmissible += 1;
        for attach in rose.directions().filter(|&d| d != *d_u) {
            let s = LttStructure::starred(rank, *d_u, attach, purple)?;
            candidates.push(s);
        }
    }
    stats.candidates = candidates.len();
    let keep: Vec<bool> = map_vec(mode, &candidates, LttStructure::is_birecurrent);
    let mut nodes: Vec<LttStructure> = candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect();
    nodes.sort();
    stats.birecurrent = nodes.len();

    // Edges: generate triples per destination and keep those whose source
    // is a node.
    let index: HashMap<&LttStructure, usize> =
        nodes.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let triple_lists: Vec<Vec<GeneratingTriple>> = map_vec(mode, &nodes, |dest| {
        let mut ts = extensions_from(dest);
        ts.extend(switches_from(dest));
        ts
    });
    let mut edges: Vec<DiagramEdge> = Vec::new();
    for (dst, ts) in triple_lists.into_iter().enumerate() {
        for triple in ts {
            if let Some(&src) = index.get(triple.source()) {
                edges.push(DiagramEdge { src, dst, triple });
            }
        }
    }

    // Restrict to strongly connected subgraphs with at least one edge.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for e in &edges {
        adj[e.src].push(e.dst);
    }
    let sccs = tarjan_scc(&adj);
    let mut comp_of = vec![usize::MAX; nodes.len()];
    for (c, comp) in sccs.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let mut comp_has_edge = vec![false; sccs.len()];
    for e in &edges {
        if comp_of[e.src] == comp_of[e.dst] {
            comp_has_edge[comp_of[e.src]] = true;
        }
    }
    let keep_node: Vec<bool> = (0..nodes.len())
        .map(|v| comp_has_edge[comp_of[v]])
        .collect();
    stats.pruned_nodes = keep_node.iter().filter(|&&k| !k).count();
    let mut remap = vec![usize::MAX; nodes.len()];
    let mut kept_nodes = Vec::new();
    for (v, node) in nodes.into_iter().enumerate() {
        if keep_node[v] {
            remap[v] = kept_nodes.len();
            kept_nodes.push(node);
        }
    }
    let kept_edges: Vec<DiagramEdge> = edges
        .into_iter()
        .filter(|e| {
            keep_node[e.src] && keep_node[e.dst] && comp_of[e.src] == comp_of[e.dst]
        })
        .map(|e| DiagramEdge {
            src: remap[e.src],
            dst: remap[e.dst],
            triple: e.triple,
        })
        .collect();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); kept_nodes.len()];
    let mut in_edges: Vec<Vec<usize>> = vec![Vec::new(); kept_nodes.len()];
    for (i, e) in kept_edges.iter().enumerate() {
        out_edges[e.src].push(i);
        in_edges[e.dst].push(i);
    }
    let mut components: Vec<Vec<usize>> = sccs
        .iter()
        .enumerate()
        .filter(|(c, _)| comp_has_edge[*c])
        .map(|(_, comp)| {
            let mut c: Vec<usize> = comp.iter().map(|&v| remap[v]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    components.sort();
    Ok(IdDiagram {
        shape: shape.clone(),
        rank,
        nodes: kept_nodes,
        edges: kept_edges,
        out_edges,
        in_edges,
        components,
        stats,
    })
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Per-component result of the Irreducibility Potential Test.
#[derive(Clone, Debug)]
pub struct PotentialTestReport {
    pub per_component: Vec<bool>,
    /// No component passes: the graph is unachieved.
    pub unachieved: bool,
}

/// For each component: every edge pair must label the red vertex of some
/// node, in one of its two orientations.
pub fn irreducibility_potential_test(d: &IdDiagram) -> PotentialTestReport {
    let rose = Rose::new(d.rank);
    let per_component: Vec<bool> = d
        .components
        .iter()
        .map(|comp| {
            rose.edge_pairs().all(|pair| {
                comp.iter().any(|&v| {
                    d.nodes[v]
                        .d_u()
                        .is_some_and(|r| pair.contains(r))
                })
            })
        })
        .collect();
    let unachieved = !per_component.iter().any(|&p| p);
    PotentialTestReport {
        per_component,
        unachieved,
    }
}

/// The extension subdiagram: extension edges only, with its weakly
/// connected components and their shared purple subgraphs.
#[derive(Clone, Debug)]
pub struct ExtensionSubdiagram {
    /// Edge indices into the parent diagram.
    pub edges: Vec<usize>,
    /// Components as sorted node lists (nodes incident to extension
    /// edges).
    pub components: Vec<Vec<usize>>,
    /// Per component, the purple labeled subgraph shared by every member
    /// structure.
    pub pi_subgraphs: Vec<BTreeSet<Turn>>,
}

pub fn extension_subdiagram(d: &IdDiagram) -> ExtensionSubdiagram {
    let edges: Vec<usize> = (0..d.edges.len())
        .filter(|&e| d.edges[e].triple.kind() == TripleKind::Extension)
        .collect();
    // Weak connectivity over nodes touched by extension edges.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &e in &edges {
        let DiagramEdge { src, dst, .. } = d.edges[e];
        adj.entry(src).or_default().push(dst);
        adj.entry(dst).or_default().push(src);
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut components = Vec::new();
    for &start in adj.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components.sort();
    let pi_subgraphs = components
        .iter()
        .map(|comp| {
            let mut it = comp.iter();
            let first = d.nodes[*it.next().unwrap()].purple_edges();
            it.fold(first, |acc, &v| {
                acc.intersection(&d.nodes[v].purple_edges()).copied().collect()
            })
        })
        .collect();
    ExtensionSubdiagram {
        edges,
        components,
        pi_subgraphs,
    }
}

/// The potential composition subgraph of a component: its shared purple
/// subgraph with black edges added between edge-pair vertices, then
/// valence-1 edges removed recursively (keeping the larger-valence
/// vertex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSubgraph {
    pub colored: BTreeSet<Turn>,
    pub black: BTreeSet<Turn>,
}

pub fn potential_composition_subgraph(pi: &BTreeSet<Turn>) -> CompositionSubgraph {
    let vertices: BTreeSet<Direction> = pi
        .iter()
        .flat_map(|t| [t.first(), t.second()])
        .collect();
    let mut colored = pi.clone();
    let mut black: BTreeSet<Turn> = vertices
        .iter()
        .filter(|d| d.is_positive() && vertices.contains(&d.inverse()))
        .map(|&d| Turn::new(d, d.inverse()))
        .collect();
    loop {
        let mut valence: BTreeMap<Direction, usize> = BTreeMap::new();
        for t in colored.iter().chain(black.iter()) {
            *valence.entry(t.first()).or_insert(0) += 1;
            *valence.entry(t.second()).or_insert(0) += 1;
        }
        let is_valence1 =
            |d: Direction| valence.get(&d).copied().unwrap_or(0) == 1;
        let doomed: Vec<Turn> = colored
            .iter()
            .chain(black.iter())
            .copied()
            .filter(|t| is_valence1(t.first()) || is_valence1(t.second()))
            .collect();
        if doomed.is_empty() {
            return CompositionSubgraph { colored, black };
        }
        for t in doomed {
            colored.remove(&t);
            black.remove(&t);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Ia,
    Ib,
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Maximum loop length in diagram edges.
    pub max_len: usize,
    /// Maximum number of augmenting loops spliced in.
    pub max_aug: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_len: 24,
            max_aug: 8,
        }
    }
}

/// A candidate representative loop with its verification flags.
#[derive(Clone, Debug)]
pub struct LoopCandidate {
    pub edges: Vec<usize>,
    pub decomposition: IdealDecomposition,
    pub map: GraphMap,
    pub census: DirectionCensus,
    pub red_coverage: bool,
    pub graph_built: bool,
    pub train_track: bool,
    /// Whether the red-coverage part of the loop is a pure switch
    /// sequence.
    pub pure_switches: bool,
    pub report: VerificationReport,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchStats {
    pub states_explored: usize,
    pub components_searched: usize,
    pub loops_considered: usize,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub candidates: Vec<LoopCandidate>,
    pub stats: SearchStats,
}

/// Searches a diagram for representative loops. Strategy Ib finds closed
/// walks whose red vertices cover every edge pair and augments them with
/// short cycles until the whole graph is built; Strategy Ia seeds loops
/// from realized construction compositions in extension components and
/// closes them through the diagram, then augments the same way.
pub fn search_loops(d: &IdDiagram, strategy: Strategy, budget: Budget) -> SearchOutcome {
    let mut stats = SearchStats::default();
    let mut candidates = Vec::new();
    if budget.max_len == 0 {
        return SearchOutcome { candidates, stats };
    }
    let seeds: Vec<Vec<usize>> = match strategy {
        Strategy::Ib => pretest_loops(d, budget, &mut stats),
        Strategy::Ia => construction_seeded_loops(d, budget, &mut stats),
    };
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mut walk in seeds {
        stats.loops_considered += 1;
        walk = augment_until_built(d, walk, budget);
        if !seen.insert(walk.clone()) {
            continue;
        }
        if let Some(c) = evaluate_loop(d, &walk) {
            candidates.push(c);
        }
    }
    candidates.sort_by_key(|c| (c.edges.len(), c.edges.clone()));
    SearchOutcome { candidates, stats }
}

/// Closed walks covering every edge pair with a red vertex, found by BFS
/// over (node, coverage) states from several seeds per component.
fn pretest_loops(d: &IdDiagram, budget: Budget, stats: &mut SearchStats) -> Vec<Vec<usize>> {
    let rank = d.rank;
    let pair_mask = |s: &LttStructure| -> u32 { s.d_u().map_or(0, |r| 1 << r.index()) };
    let full: u32 = (1 << rank) - 1;
    let mut out = Vec::new();
    for comp in &d.components {
        stats.components_searched += 1;
        // One seed per distinct red data keeps the walk pool diverse
        // without scanning every node of large components.
        let mut seeds: Vec<usize> = Vec::new();
        let mut seen_red: BTreeSet<(Option<Direction>, Option<Direction>)> = BTreeSet::new();
        for &v in comp {
            let node = &d.nodes[v];
            if seen_red.insert((node.d_u(), node.d_bar_a())) {
                seeds.push(v);
            }
            if seeds.len() >= 16 {
                break;
            }
        }
        for seed in seeds {
            // BFS over (node, mask); closing edges back into the seed are
            // checked as they appear so covering closed walks of any
            // intermediate state are found.
            let mut dist: HashMap<(usize, u32), (usize, Option<(usize, u32, usize)>)> =
                HashMap::new();
            let start = (seed, pair_mask(&d.nodes[seed]));
            dist.insert(start, (0, None));
            let mut queue = VecDeque::from([start]);
            let mut found = false;
            while let Some((v, mask)) = queue.pop_front() {
                let (steps, _) = dist[&(v, mask)];
                if steps >= budget.max_len {
                    continue;
                }
                for &e in &d.out_edges[v] {
                    let w = d.edges[e].dst;
                    let nmask = mask | pair_mask(&d.nodes[w]);
                    stats.states_explored += 1;
                    if w == seed && nmask == full {
                        let mut walk = reconstruct(&dist, (v, mask));
                        walk.push(e);
                        out.push(walk);
                        found = true;
                        break;
                    }
                    let key = (w, nmask);
                    if !dist.contains_key(&key) {
                        dist.insert(key, (steps + 1, Some((v, mask, e))));
                        queue.push_back(key);
                    }
                }
                if found {
                    break;
                }
            }
        }
    }
    out
}

fn reconstruct(
    dist: &HashMap<(usize, u32), (usize, Option<(usize, u32, usize)>)>,
    mut state: (usize, u32),
) -> Vec<usize> {
    let mut edges = Vec::new();
    while let Some((pv, pm, e)) = dist[&state].1 {
        edges.push(e);
        state = (pv, pm);
    }
    edges.reverse();
    edges
}

/// Strategy Ia seeds: potential composition paths realized in the diagram
/// and closed through it.
fn construction_seeded_loops(
    d: &IdDiagram,
    budget: Budget,
    stats: &mut SearchStats,
) -> Vec<Vec<usize>> {
    let sub = extension_subdiagram(d);
    let mut out = Vec::new();
    for (comp, pi) in sub.components.iter().zip(&sub.pi_subgraphs) {
        stats.components_searched += 1;
        let comp_sub = potential_composition_subgraph(pi);
        for &v in comp {
            let node = &d.nodes[v];
            let Ok(paths) = node.potential_construction_paths(budget.max_len.min(8)) else {
                continue;
            };
            for path in paths {
                if path.colored_len() < 2 {
                    continue;
                }
                // The path must live in the component's composition
                // subgraph past the red prefix.
                let in_subgraph = path.purple_edges().iter().all(|t| {
                    comp_sub.colored.contains(t)
                }) && path.attachments().iter().all(|x| {
                    comp_sub
                        .black
                        .contains(&Turn::new(*x, x.inverse()))
                });
                if !in_subgraph {
                    continue;
                }
                // Realize with each admissible switch choice and check the
                // edges all exist in the diagram.
                let Ok(purified) =
                    crate::moves::realize_construction(&path, node, None)
                else {
                    continue;
                };
                let innermost = purified
                    .triples()
                    .first()
                    .map(|t| t.source().clone())
                    .unwrap_or_else(|| node.clone());
                for sw in switches_from(&innermost) {
                    let mut triples = vec![sw];
                    triples.extend(purified.triples().iter().cloned());
                    let Some(edge_ids) = triples
                        .iter()
                        .map(|t| d.edge_between(t))
                        .collect::<Option<Vec<usize>>>()
                    else {
                        continue;
                    };
                    // Close the loop: shortest diagram path from the
                    // composition's destination back to its source.
                    let to = d.edges[edge_ids[0]].src;
                    let from = d.edges[*edge_ids.last().unwrap()].dst;
                    if let Some(mut closure) = shortest_path(d, from, to, budget.max_len) {
                        let mut walk = edge_ids;
                        walk.append(&mut closure);
                        if walk.len() <= budget.max_len + budget.max_aug {
                            out.push(walk);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn shortest_path(d: &IdDiagram, from: usize, to: usize, cap: usize) -> Option<Vec<usize>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([(from, 0usize)]);
    let mut seen: BTreeSet<usize> = [from].into();
    while let Some((v, steps)) = queue.pop_front() {
        if steps >= cap {
            continue;
        }
        for &e in &d.out_edges[v] {
            let w = d.edges[e].dst;
            if seen.insert(w) {
                prev.insert(w, e);
                if w == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    while cur != from {
                        let e = prev[&cur];
                        path.push(e);
                        cur = d.edges[e].src;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back((w, steps + 1));
            }
        }
    }
    None
}

/// Splices short cycles into the walk until the graph-built check passes
/// or the augmentation budget runs out.
fn augment_until_built(d: &IdDiagram, walk: Vec<usize>, budget: Budget) -> Vec<usize> {
    let mut walk = walk;
    for _ in 0..budget.max_aug {
        let Some((built, missing)) = built_status(d, &walk) else {
            return walk;
        };
        if built {
            return walk;
        }
        let missing_count = missing.len();
        // Try inserting the shortest cycle at each position; keep the
        // first insertion that strictly reduces the missing set.
        let mut improved = false;
        'positions: for pos in 0..walk.len() {
            let at = d.edges[walk[pos]].src;
            for len in 1..=6usize {
                let cycles = cycles_at(d, at, len);
                for cycle in cycles {
                    let mut candidate = walk.clone();
                    candidate.splice(pos..pos, cycle);
                    if let Some((cand_built, cand_missing)) = built_status(d, &candidate) {
                        if cand_built || cand_missing.len() < missing_count {
                            walk = candidate;
                            improved = true;
                            break 'positions;
                        }
                    }
                }
            }
        }
        if !improved {
            return walk;
        }
    }
    walk
}

fn built_status(d: &IdDiagram, walk: &[usize]) -> Option<(bool, Vec<Turn>)> {
    let triples: Vec<GeneratingTriple> =
        walk.iter().map(|&e| d.edges[e].triple.clone()).collect();
    // No map composition here: splice candidates are churned through this
    // check and composing degenerate cycles grows words exponentially.
    let dec = IdealDecomposition::from_triples(triples).ok()?;
    let (built, missing) = check_graph_built(&dec);
    Some((built, missing))
}

/// All cycles of exactly `len` edges through `at`, in deterministic order,
/// capped to keep augmentation cheap.
fn cycles_at(d: &IdDiagram, at: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn go(
        d: &IdDiagram,
        at: usize,
        len: usize,
        v: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= 64 {
            return;
        }
        if stack.len() == len {
            if v == at {
                out.push(stack.clone());
            }
            return;
        }
        for &e in &d.out_edges[v] {
            stack.push(e);
            go(d, at, len, d.edges[e].dst, stack, out);
            stack.pop();
        }
    }
    go(d, at, len, at, &mut stack, &mut out);
    out
}

/// Total image length cap for candidate maps; loops composing past this
/// are useless as representatives and their verification would be
/// unboundedly expensive.
const CANDIDATE_SIZE_CAP: usize = 1024;

/// Assembles a closed walk into a candidate and evaluates all flags.
fn evaluate_loop(d: &IdDiagram, walk: &[usize]) -> Option<LoopCandidate> {
    if walk.is_empty() {
        return None;
    }
    let triples: Vec<GeneratingTriple> =
        walk.iter().map(|&e| d.edges[e].triple.clone()).collect();
    let pure_switches = triples.iter().all(|t| t.kind() == TripleKind::Switch);
    {
        // Compose incrementally with a size cap before building the real
        // thing.
        let mut total = 2 * d.rank;
        let mut acc = GraphMap::identity(Rose::new(d.rank));
        for t in &triples {
            acc = GraphMap::compose(&t.fold().to_graph_map(), &acc).ok()?;
            total = acc.images().iter().map(crate::words::Word::len).sum();
            if total > CANDIDATE_SIZE_CAP {
                return None;
            }
        }
        let _ = total;
    }
    let (dec, map, census) = assemble_ideal_decomposition(triples).ok()?;
    let (red_coverage, _) = check_red_vertex_coverage(&dec);
    let (graph_built, _) = check_graph_built(&dec);
    let train_track = map.is_train_track().ok()?;
    // Candidates whose rotationless power is deep or whose power blows up
    // in size cannot be the small representatives the search is after;
    // the remaining ones get bounded verification with the bounds visible
    // in the report.
    let k = map.periodic_directions().ok()?.lcm_of_periods();
    if k > 4 {
        return None;
    }
    let rotationless = map.power(k).ok()?;
    let power_total: usize = rotationless.images().iter().map(crate::words::Word::len).sum();
    if power_total > 64 * CANDIDATE_SIZE_CAP {
        return None;
    }
    let defaults = crate::verifier::PnpBounds::defaults_for(&rotationless);
    let bounds = crate::verifier::PnpBounds {
        len_bound: defaults.len_bound.min(512),
        iter_bound: defaults.iter_bound,
    };
    let report = verify_representative(&map, d.shape(), Some(bounds)).ok()?;
    Some(LoopCandidate {
        edges: walk.to_vec(),
        decomposition: dec,
        map,
        census,
        red_coverage,
        graph_built,
        train_track,
        pure_switches,
        report,
    })
}
