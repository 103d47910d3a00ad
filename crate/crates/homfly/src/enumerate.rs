//! Exhaustive generation of 2-connected multigraphs by ear extension with
//! canonical-form dedupe, and an exact planarity test by searching for
//! subdivisions of the two Kuratowski obstructions.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{cycle, MultiGraph};

/// All 2-connected multigraphs with at most `max_vertices` vertices and at
/// most `max_edges` edges, one representative per isomorphism class, sorted
/// by (vertex count, edge count, canonical edge list).
///
/// With `simple_only` set, only simple graphs are produced. Otherwise
/// parallel edges are allowed with any multiplicity the edge budget admits
/// (loops never occur in 2-connected graphs); two-vertex dipoles count as
/// 2-connected.
///
/// Generation: every 2-connected multigraph arises from a cycle by
/// repeatedly adding ears (paths between two distinct existing vertices,
/// new vertices in between; a length-1 ear is a parallel edge or chord),
/// and every intermediate stage is itself 2-connected and no larger, so a
/// breadth-first closure over canonical forms within the bounds is
/// exhaustive.
pub fn enumerate_two_connected(
    max_vertices: usize,
    max_edges: usize,
    simple_only: bool,
) -> Vec<MultiGraph> {
    let mut seen: BTreeSet<(usize, Vec<(usize, usize)>)> = BTreeSet::new();
    let mut queue: VecDeque<MultiGraph> = VecDeque::new();
    let mut out: Vec<MultiGraph> = Vec::new();

    let smallest_cycle = if simple_only { 3 } else { 2 };
    for k in smallest_cycle..=max_vertices.min(max_edges) {
        let c = cycle(k);
        let key = c.canonical_form();
        if seen.insert(key.clone()) {
            let canon = MultiGraph::new(key.0, &key.1).expect("canonical form is valid");
            out.push(canon.clone());
            queue.push_back(canon);
        }
    }

    while let Some(g) = queue.pop_front() {
        let n = g.num_vertices();
        let m = g.num_edges();
        for u in 0..n {
            for v in u + 1..n {
                // maximal ear length: uses length-1 extra vertices
                let max_len = (max_edges - m).min(max_vertices - n + 1);
                for len in 1..=max_len {
                    if len == 1 && simple_only && g.multiplicity(u, v) >= 1 {
                        continue;
                    }
                    let mut edges = g.edges().to_vec();
                    let mut prev = u;
                    for i in 0..len - 1 {
                        let fresh = n + i;
                        edges.push((prev.min(fresh), prev.max(fresh)));
                        prev = fresh;
                    }
                    edges.push((prev.min(v), prev.max(v)));
                    let h = MultiGraph::new(n + len - 1, &edges).expect("valid ear extension");
                    let key = h.canonical_form();
                    if seen.insert(key.clone()) {
                        let canon =
                            MultiGraph::new(key.0, &key.1).expect("canonical form is valid");
                        out.push(canon.clone());
                        queue.push_back(canon);
                    }
                }
            }
        }
    }

    out.sort_by(|a, b| {
        (a.num_vertices(), a.num_edges(), a.edges()).cmp(&(
            b.num_vertices(),
            b.num_edges(),
            b.edges(),
        ))
    });
    out
}

/// Exact planarity test: loops and parallel edges are irrelevant, so the
/// graph is simplified first; then nonplanarity is equivalent to containing
/// a subdivision of K5 or of K3,3.
pub fn is_planar(g: &MultiGraph) -> bool {
    // simplify: one copy of each non-loop edge
    let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(u, v) in g.edges() {
        if u != v {
            set.insert((u, v));
        }
    }
    let n = g.num_vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &set {
        adj[u].push(v);
        adj[v].push(u);
    }
    if n < 5 {
        return true;
    }
    // Euler bound per connected component with >= 3 vertices
    {
        let mut dsu = crate::graph::Dsu::new(n);
        for &(u, v) in &set {
            dsu.union(u, v);
        }
        let mut verts = vec![0usize; n];
        let mut edges = vec![0usize; n];
        for v in 0..n {
            verts[dsu.find(v)] += 1;
        }
        for &(u, _) in &set {
            edges[dsu.find(u)] += 1;
        }
        for root in 0..n {
            if verts[root] >= 3 && edges[root] > 3 * verts[root] - 6 {
                return false;
            }
        }
    }
    !(has_k5_subdivision(&adj) || has_k33_subdivision(&adj))
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn has_k5_subdivision(adj: &[Vec<usize>]) -> bool {
    let candidates: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() >= 4).collect();
    if candidates.len() < 5 {
        return false;
    }
    for pick in choose(candidates.len(), 5) {
        let branches: Vec<usize> = pick.iter().map(|&i| candidates[i]).collect();
        let mut pairs = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                pairs.push((branches[i], branches[j]));
            }
        }
        if pack_paths(adj, &branches, &pairs) {
            return true;
        }
    }
    false
}

fn has_k33_subdivision(adj: &[Vec<usize>]) -> bool {
    let candidates: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() >= 3).collect();
    if candidates.len() < 6 {
        return false;
    }
    for pick in choose(candidates.len(), 6) {
        let six: Vec<usize> = pick.iter().map(|&i| candidates[i]).collect();
        // split into two sides of three; fixing six[0] on the first side
        // kills the side-swap symmetry
        for rest in choose(5, 2) {
            let mut side_a = vec![six[0]];
            for &i in &rest {
                side_a.push(six[i + 1]);
            }
            let side_b: Vec<usize> = six
                .iter()
                .copied()
                .filter(|v| !side_a.contains(v))
                .collect();
            let branches: Vec<usize> = side_a.iter().chain(&side_b).copied().collect();
            let mut pairs = Vec::new();
            for &a in &side_a {
                for &b in &side_b {
                    pairs.push((a, b));
                }
            }
            if pack_paths(adj, &branches, &pairs) {
                return true;
            }
        }
    }
    false
}

/// Try to route all required paths so they are internally disjoint from
/// each other and avoid all branch vertices.
fn pack_paths(adj: &[Vec<usize>], branches: &[usize], pairs: &[(usize, usize)]) -> bool {
    let n = adj.len();
    let mut is_branch = vec![false; n];
    for &b in branches {
        is_branch[b] = true;
    }
    let mut used = vec![false; n];
    route(adj, &is_branch, &mut used, pairs)
}

fn route(adj: &[Vec<usize>], is_branch: &[bool], used: &mut [bool], pairs: &[(usize, usize)]) -> bool {
    let Some(&(u, v)) = pairs.first() else {
        return true;
    };
    dfs_path(adj, is_branch, used, u, v, pairs)
}

fn dfs_path(
    adj: &[Vec<usize>],
    is_branch: &[bool],
    used: &mut [bool],
    cur: usize,
    target: usize,
    pairs: &[(usize, usize)],
) -> bool {
    for &w in &adj[cur] {
        if w == target {
            if route(adj, is_branch, used, &pairs[1..]) {
                return true;
            }
        } else if !is_branch[w] && !used[w] {
            used[w] = true;
            if dfs_path(adj, is_branch, used, w, target, pairs) {
                return true;
            }
            used[w] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, dipole, MultiGraph};

    fn wheel(rim: usize) -> MultiGraph {
        let mut edges: Vec<(usize, usize)> = (1..=rim).map(|i| (0, i)).collect();
        for i in 1..=rim {
            edges.push((i, if i == rim { 1 } else { i + 1 }));
        }
        MultiGraph::new(rim + 1, &edges).unwrap()
    }

    fn prism() -> MultiGraph {
        MultiGraph::new(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    fn petersen() -> MultiGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        MultiGraph::new(10, &edges).unwrap()
    }

    #[test]
    fn planarity_known_cases() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
        assert!(is_planar(&prism()));
        assert!(is_planar(&wheel(4)));
        // K5 minus an edge is planar
        let k5e = MultiGraph::new(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
        )
        .unwrap();
        assert!(is_planar(&k5e));
        assert!(!is_planar(&petersen()));
        // parallel edges and loops do not affect planarity
        let fat_k4 = MultiGraph::new(4, &[(0, 1), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 2)])
            .unwrap();
        assert!(is_planar(&fat_k4));
    }

    #[test]
    fn planarity_subdivided_obstructions() {
        // subdivide every edge of K5 once: still nonplanar
        let k5 = complete(5);
        let mut edges = Vec::new();
        let mut next = 5;
        for &(u, v) in k5.edges() {
            edges.push((u, next));
            edges.push((next, v));
            next += 1;
        }
        let sub = MultiGraph::new(next, &edges).unwrap();
        assert!(!is_planar(&sub));
        // K3,3 subdivided likewise
        let k33 = complete_bipartite(3, 3);
        let mut edges = Vec::new();
        let mut next = 6;
        for &(u, v) in k33.edges() {
            edges.push((u, next));
            edges.push((next, v));
            next += 1;
        }
        let sub = MultiGraph::new(next, &edges).unwrap();
        assert!(!is_planar(&sub));
    }

    #[test]
    fn enumeration_simple_counts() {
        // frozen counts of 2-connected simple graphs per (vertices, edges)
        let graphs = enumerate_two_connected(6, 8, true);
        let mut counts: std::collections::BTreeMap<(usize, usize), usize> =
            std::collections::BTreeMap::new();
        for g in &graphs {
            *counts.entry((g.num_vertices(), g.num_edges())).or_insert(0) += 1;
            assert!(g.is_two_connected());
        }
        let expected: Vec<((usize, usize), usize)> = vec![
            ((3, 3), 1),
            ((4, 4), 1),
            ((4, 5), 1),
            ((4, 6), 1),
            ((5, 5), 1),
            ((5, 6), 2),
            ((5, 7), 3),
            ((5, 8), 2),
            ((6, 6), 1),
            ((6, 7), 3),
            ((6, 8), 9),
        ];
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), expected);
        assert_eq!(graphs.len(), 25);
    }

    #[test]
    fn enumeration_with_multigraphs() {
        let graphs = enumerate_two_connected(2, 3, false);
        assert_eq!(graphs.len(), 2); // dipoles with 2 and 3 edges
        assert!(graphs.iter().any(|g| g.is_isomorphic(&dipole(2))));
        assert!(graphs.iter().any(|g| g.is_isomorphic(&dipole(3))));

        // n <= 3, m <= 4: dipole(2), dipole(3), dipole(4), triangle,
        // triangle with one doubled edge
        let graphs = enumerate_two_connected(3, 4, false);
        assert_eq!(graphs.len(), 5);
        for g in &graphs {
            assert!(g.is_two_connected());
        }

        // multiplicity is bounded only by the edge budget: the dipole with
        // k parallel edges appears for every k up to max_edges
        let graphs = enumerate_two_connected(2, 6, false);
        assert_eq!(graphs.len(), 5);
        for k in 2..=6 {
            assert!(graphs.iter().any(|g| g.is_isomorphic(&dipole(k))));
        }
    }

    #[test]
    fn enumeration_no_duplicates_and_sorted() {
        let graphs = enumerate_two_connected(5, 7, false);
        let mut keys: Vec<_> = graphs.iter().map(|g| g.canonical_form()).collect();
        let total = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), total, "duplicate isomorphism class emitted");
        // sorted by (n, m, edges)
        for w in graphs.windows(2) {
            let a = (w[0].num_vertices(), w[0].num_edges(), w[0].edges().to_vec());
            let b = (w[1].num_vertices(), w[1].num_edges(), w[1].edges().to_vec());
            assert!(a <= b, "output not sorted");
        }
    }

    #[test]
    fn enumeration_contains_expected_named_graphs() {
        let graphs = enumerate_two_connected(6, 9, true);
        for target in [complete(4), complete_bipartite(2, 3), complete_bipartite(3, 3), prism(), wheel(4)] {
            assert!(
                graphs.iter().any(|g| g.is_isomorphic(&target)),
                "missing a named 2-connected graph"
            );
        }
    }
}
