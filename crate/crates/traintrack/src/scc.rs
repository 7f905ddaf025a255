//! Tarjan's strongly connected components, iterative variant.

/// Returns the SCCs of the digraph given by adjacency lists, in reverse
/// topological order. Every vertex appears in exactly one component.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut sccs: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;

    // Explicit DFS stack of (vertex, next edge position).
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        lowlink[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    lowlink[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    sccs.push(comp);
                }
            }
        }
    }
    sccs
}

/// True when the digraph is strongly connected (and nonempty).
pub fn is_strongly_connected(adj: &[Vec<usize>]) -> bool {
    !adj.is_empty() && tarjan_scc(adj).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_singleton_components() {
        let adj = vec![vec![1], vec![2], vec![]];
        assert_eq!(tarjan_scc(&adj).len(), 3);
        assert!(!is_strongly_connected(&adj));
    }

    #[test]
    fn cycle_is_one_component() {
        let adj = vec![vec![1], vec![2], vec![0]];
        let sccs = tarjan_scc(&adj);
        assert_eq!(sccs.len(), 1);
        assert_eq!(sccs[0].len(), 3);
        assert!(is_strongly_connected(&adj));
    }

    #[test]
    fn two_cycles_with_bridge() {
        // 0 <-> 1, 2 <-> 3, bridge 1 -> 2.
        let adj = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        let sccs = tarjan_scc(&adj);
        assert_eq!(sccs.len(), 2);
    }
}
