//! Transition matrices of rose self-maps and exact Perron-Frobenius
//! (primitivity) and irreducibility checks over the integers.

use std::fmt;

use crate::error::Error;
use crate::maps::GraphMap;
use crate::scc::{is_strongly_connected, tarjan_scc};

/// Nonnegative integer r×r matrix; entry `(i, j)` counts how many times the
/// image of edge `j` traverses edge `i` in either orientation, so column
/// sums equal image word lengths.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl TransitionMatrix {
    pub fn from_entries(n: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n);
        TransitionMatrix { n, entries }
    }

    pub fn from_map(g: &GraphMap) -> Result<Self, Error> {
        if !g.is_self_map() {
            return Err(Error::NotSelfMap);
        }
        let n = g.rank();
        let mut entries = vec![0u64; n * n];
        for (j, w) in g.images().iter().enumerate() {
            for &l in w.letters() {
                entries[l.index() * n + j] += 1;
            }
        }
        Ok(TransitionMatrix { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }

    /// Exact integer product, for cross-checking against recounts.
    pub fn multiply(&self, other: &TransitionMatrix) -> TransitionMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        TransitionMatrix { n, entries }
    }

    fn support(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        let mut rows = vec![0u64; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) > 0 {
                    rows[i] |= 1 << j;
                }
            }
        }
        rows
    }

    /// Primitivity: some power is entrywise positive. Checked exactly on
    /// the boolean support with the cutoff (n-1)·n + 1, past which no new
    /// power can become positive.
    pub fn is_perron_frobenius(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let base = self.support();
        let mut acc = base.clone();
        let bound = (n - 1) * n + 1;
        for _ in 0..bound {
            if acc.iter().all(|&row| row == full) {
                return true;
            }
            // Boolean product acc ← acc · base.
            let mut next = vec![0u64; n];
            for i in 0..n {
                let mut row = 0u64;
                let mut bits = acc[i];
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    row |= base[k];
                }
                next[i] = row;
            }
            if next == acc {
                break;
            }
            acc = next;
        }
        acc.iter().all(|&row| row == full)
    }

    /// Irreducibility: the transition digraph (edge `j → i` when entry
    /// `(i, j)` is positive) is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for j in 0..n {
            for i in 0..n {
                if self.get(i, j) > 0 {
                    adj[j].push(i);
                }
            }
        }
        is_strongly_connected(&adj)
    }

    /// Brute-force primitivity oracle on the digraph: strong connectivity
    /// plus gcd of cycle lengths equal to 1.
    pub fn is_primitive_digraph_oracle(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for j in 0..n {
            for i in 0..n {
                if self.get(i, j) > 0 {
                    adj[j].push(i);
                }
            }
        }
        if tarjan_scc(&adj).len() != 1 {
            return false;
        }
        // BFS levels from node 0; the period divides level[u] + 1 - level[v]
        // for every edge u → v.
        let mut level = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        level[0] = 0;
        queue.push_back(0);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let mut g = 0i64;
        for u in 0..n {
            for &v in &adj[u] {
                g = gcd(g, level[u] as i64 + 1 - level[v] as i64);
            }
        }
        g == 1
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::EdgeLabel;

    fn gm(text: &str) -> GraphMap {
        GraphMap::parse(text).unwrap()
    }

    #[test]
    fn counts_unoriented_traversals() {
        let g = gm("a -> aC\nb -> b\nc -> c");
        let m = TransitionMatrix::from_map(&g).unwrap();
        assert_eq!(
            m,
            TransitionMatrix::from_entries(3, vec![1, 0, 0, 0, 1, 0, 1, 0, 1])
        );
        for j in 0..3 {
            assert_eq!(m.column_sum(j), g.images()[j].len() as u64);
        }
    }

    #[test]
    fn graph_xx_column_a() {
        let h = gm("a -> abCCbbcb\nb -> bcc\nc -> cabCCbbcbabCCbbcbCCBabCCbbcbbccabCCbbcb");
        let m = TransitionMatrix::from_map(&h).unwrap();
        assert_eq!(m.get(0, 0), 1);
        assert_eq!(m.get(1, 0), 4);
        assert_eq!(m.get(2, 0), 3);
    }

    #[test]
    fn power_matrix_matches_recount_for_positive_maps() {
        let g = gm("a -> ab\nb -> bc\nc -> ca");
        let m = TransitionMatrix::from_map(&g).unwrap();
        let g2 = g.power(2).unwrap();
        let m2 = TransitionMatrix::from_map(&g2).unwrap();
        assert_eq!(m.multiply(&m), m2);
    }

    #[test]
    fn primitivity_examples() {
        let id = TransitionMatrix::from_entries(2, vec![1, 0, 0, 1]);
        assert!(!id.is_perron_frobenius());

        let fib = TransitionMatrix::from_entries(2, vec![0, 1, 1, 1]);
        assert!(fib.is_perron_frobenius());
        // M³ > 0 indeed.
        let m3 = fib.multiply(&fib).multiply(&fib);
        assert!((0..2).all(|i| (0..2).all(|j| m3.get(i, j) > 0)));

        // Irreducible but imprimitive: a 2-cycle.
        let swap = TransitionMatrix::from_entries(2, vec![0, 1, 1, 0]);
        assert!(swap.is_irreducible());
        assert!(!swap.is_perron_frobenius());
    }

    #[test]
    fn reducible_map_fails_pf() {
        let g = gm("a -> ab\nb -> b\nc -> c");
        let m = TransitionMatrix::from_map(&g).unwrap();
        assert!(!m.is_perron_frobenius());
        assert!(!m.is_irreducible());
    }

    #[test]
    fn permuting_edges_conjugates_the_matrix() {
        let g = gm("a -> abc\nb -> ca\nc -> bA");
        let m = TransitionMatrix::from_map(&g).unwrap();
        // Relabel via the cycle a→b→c→a and compare entries.
        let perm = [1usize, 2, 0];
        let relabel = |w: &crate::words::Word| {
            crate::words::Word::reduced(w.letters().iter().map(|l| {
                let idx = perm[l.index()];
                if l.is_positive() {
                    EdgeLabel::positive(idx)
                } else {
                    EdgeLabel::negative(idx)
                }
            }))
        };
        let images_permuted: Vec<_> = (0..3)
            .map(|new_idx| {
                let old = perm.iter().position(|&p| p == new_idx).unwrap();
                relabel(&g.images()[old])
            })
            .collect();
        let gp = GraphMap::self_map(crate::words::Rose::new(3), images_permuted).unwrap();
        let mp = TransitionMatrix::from_map(&gp).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), mp.get(perm[i], perm[j]));
            }
        }
    }

    #[test]
    fn primitivity_agrees_with_digraph_oracle_on_all_3x3_01_matrices() {
        for bits in 0u32..512 {
            let entries: Vec<u64> = (0..9).map(|k| ((bits >> k) & 1) as u64).collect();
            let m = TransitionMatrix::from_entries(3, entries);
            assert_eq!(
                m.is_perron_frobenius(),
                m.is_primitive_digraph_oracle(),
                "disagreement on bits {bits:#011b}"
            );
        }
    }
}
