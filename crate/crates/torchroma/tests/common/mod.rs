//! Shared helpers for integration tests: a brute-force multigraph
//! isomorphism check, usable as an independent oracle for the lattice-based
//! canonical forms at small orders.

use torchroma::TorusGraph;

/// Edge multiplicity matrix: `m[u][v]` counts parallel edges between `u`
/// and `v`, with loops counted once on the diagonal.
pub fn multiplicity_matrix(g: &TorusGraph) -> Vec<Vec<u8>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0u8; n]; n];
    for (u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        m[u][v] += 1;
        if u != v {
            m[v][u] += 1;
        }
    }
    m
}

/// A vertex invariant: loop count plus the sorted multiset of incident edge
/// multiplicities. Isomorphisms preserve it, so mismatched signatures prune
/// the search.
fn signature(m: &[Vec<u8>], v: usize) -> (u8, Vec<u8>) {
    let mut mults: Vec<u8> = (0..m.len())
        .filter(|&w| w != v && m[v][w] > 0)
        .map(|w| m[v][w])
        .collect();
    mults.sort_unstable();
    (m[v][v], mults)
}

/// Breadth-first vertex order so that each vertex after the first touches an
/// already-placed one; keeps the backtracking tightly constrained.
fn bfs_order(m: &[Vec<u8>]) -> Vec<usize> {
    let n = m.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in 0..n {
                if m[u][w] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Decides multigraph isomorphism by backtracking over vertex bijections,
/// pruning with signatures and incremental adjacency consistency. Intended
/// for small orders (say n <= 14); exact and independent of the lattice
/// arithmetic used by `canonical_form`.
pub fn brute_isomorphic(a: &TorusGraph, b: &TorusGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    let ma = multiplicity_matrix(a);
    let mb = multiplicity_matrix(b);

    let sig_a: Vec<_> = (0..n).map(|v| signature(&ma, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| signature(&mb, v)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return false;
    }

    let order = bfs_order(&ma);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        depth: usize,
        order: &[usize],
        ma: &[Vec<u8>],
        mb: &[Vec<u8>],
        sig_a: &[(u8, Vec<u8>)],
        sig_b: &[(u8, Vec<u8>)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let u = order[depth];
        'candidates: for x in 0..mb.len() {
            if used[x] || sig_a[u] != sig_b[x] {
                continue;
            }
            for &w in &order[..depth] {
                if ma[u][w] != mb[x][image[w]] {
                    continue 'candidates;
                }
            }
            image[u] = x;
            used[x] = true;
            if extend(depth + 1, order, ma, mb, sig_a, sig_b, image, used) {
                return true;
            }
            image[u] = usize::MAX;
            used[x] = false;
        }
        false
    }

    extend(0, &order, &ma, &mb, &sig_a, &sig_b, &mut image, &mut used)
}
