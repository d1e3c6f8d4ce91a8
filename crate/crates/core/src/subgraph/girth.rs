//! Girth and short-cycle utilities.

use crate::graph::Graph;

/// Exact girth, `None` for forests.
pub fn girth(graph: &Graph) -> Option<usize> {
    girth_below(graph, usize::MAX)
}

/// The girth if it is smaller than `cap`, otherwise `None`.
///
/// Breadth-first search from every vertex: a non-tree edge `xy` met from
/// root `r` closes a walk of length `d(x) + d(y) + 1` containing a cycle, and
/// the root on a shortest cycle realizes the girth exactly. Each search stops
/// once no shorter closure than the incumbent is possible.
pub fn girth_below(graph: &Graph, cap: usize) -> Option<usize> {
    let n = graph.vertex_count();
    let mut best = cap;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n as u32 {
        if best <= 3 {
            break;
        }
        dist[root as usize] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize] as usize;
            // Any cycle closed from here has length >= 2 dx + 1.
            if 2 * dx + 1 >= best {
                break;
            }
            for inc in graph.incident(x as usize) {
                let y = inc.neighbor;
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dx as u32 + 1;
                    parent[y as usize] = x;
                    touched.push(y);
                    queue.push_back(y);
                } else if parent[x as usize] != y {
                    let len = dx + dist[y as usize] as usize + 1;
                    if len < best {
                        best = len;
                        if 2 * dx + 1 >= best {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        queue.clear();
        for v in touched.drain(..) {
            dist[v as usize] = u32::MAX;
            parent[v as usize] = u32::MAX;
        }
    }
    (best < cap).then_some(best)
}

/// Counts cycles of each length `3..=max_len` by brute force (each cycle is
/// counted once: rooted at its smallest vertex, one orientation).
/// Exponential in `max_len`; meant for small lengths on sparse graphs.
pub fn count_short_cycles(graph: &Graph, max_len: usize) -> Vec<u64> {
    let n = graph.vertex_count();
    let mut counts = vec![0u64; max_len + 1];
    let mut on_path = vec![false; n];
    let mut path: Vec<u32> = Vec::new();

    fn walk(
        graph: &Graph,
        root: u32,
        v: u32,
        max_len: usize,
        on_path: &mut [bool],
        path: &mut Vec<u32>,
        counts: &mut [u64],
    ) {
        for inc in graph.incident(v as usize) {
            let w = inc.neighbor;
            if w == root && path.len() >= 3 {
                // orientation: second vertex smaller than the last one
                if path[1] < path[path.len() - 1] {
                    counts[path.len()] += 1;
                }
                continue;
            }
            if w <= root || on_path[w as usize] || path.len() == max_len {
                continue;
            }
            on_path[w as usize] = true;
            path.push(w);
            walk(graph, root, w, max_len, on_path, path, counts);
            path.pop();
            on_path[w as usize] = false;
        }
    }

    for root in 0..n as u32 {
        on_path[root as usize] = true;
        path.push(root);
        walk(graph, root, root, max_len, &mut on_path, &mut path, &mut counts);
        path.pop();
        on_path[root as usize] = false;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::dary_tree;

    #[test]
    fn named_girths() {
        assert_eq!(girth(&Graph::cycle(5)), Some(5));
        assert_eq!(girth(&Graph::complete(4)), Some(3));
        assert_eq!(girth(&Graph::petersen()), Some(5));
        assert_eq!(girth(&Graph::cycle(8)), Some(8));
        assert_eq!(girth(&dary_tree(3, 3, 1000).unwrap().graph), None);
        assert_eq!(girth(&Graph::path(5)), None);
        assert_eq!(girth(&Graph::empty(0)), None);
    }

    #[test]
    fn capped() {
        assert_eq!(girth_below(&Graph::petersen(), 5), None);
        assert_eq!(girth_below(&Graph::petersen(), 6), Some(5));
    }

    #[test]
    fn short_cycle_counts() {
        let k4 = count_short_cycles(&Graph::complete(4), 4);
        assert_eq!((k4[3], k4[4]), (4, 3));
        let k5 = count_short_cycles(&Graph::complete(5), 5);
        // C(5,3) triangles, 5*3 four-cycles, 12 five-cycles
        assert_eq!((k5[3], k5[4], k5[5]), (10, 15, 12));
        assert_eq!(count_short_cycles(&Graph::petersen(), 5)[5], 12);
    }
}
