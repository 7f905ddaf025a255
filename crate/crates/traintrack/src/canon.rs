//! Canonical labeling for small simple graphs by backtracking over
//! refinement-compatible orderings. Intended for graphs of at most a dozen
//! vertices; everything here is exact.

/// Adjacency as bitmask rows over `n ≤ 16` vertices.
pub type Adj = Vec<u16>;

/// Iterated neighborhood-color refinement. Returns a color per vertex;
/// equal colors are indistinguishable by the refinement.
fn refine(n: usize, adj: &[u16], seed: &[usize]) -> Vec<usize> {
    let mut color: Vec<usize> = seed.to_vec();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut neigh: Vec<usize> = (0..n)
                .filter(|&u| adj[v] & (1 << u) != 0)
                .map(|u| color[u])
                .collect();
            neigh.sort_unstable();
            sigs.push((color[v], neigh));
        }
        let mut sorted: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let new_color: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap())
            .collect();
        if new_color == color {
            return color;
        }
        color = new_color;
    }
}

/// Certificate of the graph under `perm` (perm[i] = vertex placed at
/// position i): upper-triangle adjacency bits.
fn certificate(n: usize, adj: &[u16], perm: &[usize]) -> Vec<u8> {
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            bits.push(u8::from(adj[perm[i]] & (1 << perm[j]) != 0));
        }
    }
    bits
}

fn descend(
    n: usize,
    adj: &[u16],
    color: &[usize],
    prefix: &mut Vec<usize>,
    best: &mut Option<(Vec<u8>, Vec<usize>)>,
) {
    if prefix.len() == n {
        let cert = certificate(n, adj, prefix);
        if best.as_ref().is_none_or(|(b, _)| cert < *b) {
            *best = Some((cert, prefix.clone()));
        }
        return;
    }
    let placed: u16 = prefix.iter().fold(0, |m, &v| m | (1 << v));
    let min_color = (0..n)
        .filter(|&v| placed & (1 << v) == 0)
        .map(|v| color[v])
        .min()
        .unwrap();
    let mut tried: Vec<usize> = Vec::new();
    for v in 0..n {
        if placed & (1 << v) != 0 || color[v] != min_color {
            continue;
        }
        // Twin pruning: if a previously tried u has the same neighbors as v
        // apart from one another, the transposition (u v) is an
        // automorphism and this branch repeats that one.
        let twin = tried.iter().any(|&u| {
            let mask = !(1u16 << u) & !(1u16 << v);
            adj[u] & mask == adj[v] & mask
        });
        if twin {
            continue;
        }
        tried.push(v);
        // Individualize v and re-refine.
        let seed: Vec<usize> = {
            let mut s: Vec<usize> = color.iter().map(|&c| c * 2 + 1).collect();
            s[v] = 0;
            s
        };
        let refined = refine(n, adj, &seed);
        prefix.push(v);
        descend(n, adj, &refined, prefix, best);
        prefix.pop();
    }
}

/// Canonical form: the lexicographically smallest certificate over all
/// refinement-compatible orderings, with one ordering achieving it.
pub fn canonical_form(n: usize, adj: &[u16]) -> (Vec<u8>, Vec<usize>) {
    assert!(n <= 16, "canonical labeling supports at most 16 vertices");
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let base_color = refine(n, adj, &vec![0; n]);
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let mut prefix: Vec<usize> = Vec::with_capacity(n);
    descend(n, adj, &base_color, &mut prefix, &mut best);
    best.expect("at least one ordering")
}

/// Isomorphism test with witness: when isomorphic, vertex `i` of `a`
/// corresponds to vertex `result[i]` of `b`.
pub fn isomorphism(n1: usize, a: &[u16], n2: usize, b: &[u16]) -> Option<Vec<usize>> {
    if n1 != n2 {
        return None;
    }
    let (ca, pa) = canonical_form(n1, a);
    let (cb, pb) = canonical_form(n2, b);
    if ca != cb {
        return None;
    }
    let mut pos_in_a = vec![0usize; n1];
    for (pos, &v) in pa.iter().enumerate() {
        pos_in_a[v] = pos;
    }
    Some((0..n1).map(|v| pb[pos_in_a[v]]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Adj {
        let mut adj = vec![0u16; n];
        for &(u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    #[test]
    fn path_relabelled_is_isomorphic() {
        let a = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let b = graph(5, &[(2, 0), (0, 4), (4, 1), (1, 3)]);
        let w = isomorphism(5, &a, 5, &b).expect("isomorphic");
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a[i] & (1 << j) != 0, b[w[i]] & (1 << w[j]) != 0);
            }
        }
    }

    #[test]
    fn path_vs_star_not_isomorphic() {
        let a = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert!(isomorphism(5, &a, 5, &star).is_none());
    }

    #[test]
    fn complete_graph_is_fast_and_self_isomorphic() {
        let n = 8;
        let adj: Adj = (0..n)
            .map(|v| (((1u32 << n) - 1) as u16) & !(1 << v))
            .collect();
        let w = isomorphism(n, &adj, n, &adj).unwrap();
        assert_eq!(w.len(), n);
    }

    #[test]
    fn cycle6_vs_two_triangles() {
        let c6 = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let tt = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(isomorphism(6, &c6, 6, &tt).is_none());
    }
}
