//! Undirected multigraphs (parallel edges and loops allowed), connectivity
//! and 2-connectivity tests, cycle rank, canonical labeling for isomorphism
//! dedupe, and a JSON-lines record format for graph input.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Undirected multigraph on vertices `0..n`. Each edge is stored with its
/// endpoints ordered; loops are `(v, v)`. The edge list is kept sorted, so
/// equal graphs have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut es: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Malformed {
                    detail: format!("edge ({u},{v}) out of range for {n} vertices"),
                });
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        Ok(MultiGraph { n, edges: es })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Multiplicity of the edge between u and v (loop count if u == v).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Degree counting loops twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Neighbor multiset as (neighbor, multiplicity), loops excluded.
    pub fn neighbor_counts(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in &self.edges {
            let w = if a == v && b != v {
                b
            } else if b == v && a != v {
                a
            } else {
                continue;
            };
            match out.iter_mut().find(|(u, _)| *u == w) {
                Some((_, m)) => *m += 1,
                None => out.push((w, 1)),
            }
        }
        out.sort_unstable();
        out
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    /// Number of connected components (isolated vertices count).
    pub fn components(&self) -> usize {
        let mut dsu = Dsu::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        dsu.count()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components() == 1
    }

    /// First Betti number |E| - |V| + #components: the number of
    /// independent cycles.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components() - self.n
    }

    /// 2-connectedness for multigraphs: connected, at least two vertices,
    /// no loops, no articulation vertex, and (for exactly two vertices) at
    /// least two parallel edges. A two-vertex graph joined by k >= 2
    /// parallel edges counts as 2-connected; a single edge does not.
    pub fn is_two_connected(&self) -> bool {
        if self.n < 2 || self.has_loops() || !self.is_connected() {
            return false;
        }
        if self.n == 2 {
            return self.edges.len() >= 2;
        }
        self.articulation_vertices().is_empty()
    }

    /// Articulation vertices via depth-first search with low-points,
    /// walking edge ids so parallel edges are honored.
    pub fn articulation_vertices(&self) -> Vec<usize> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n]; // (other, edge id)
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                continue; // loops never affect articulation
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut is_art = vec![false; self.n];
        let mut timer = 0usize;

        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            // iterative DFS: stack of (vertex, incoming edge id, child iter index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0usize;
            while let Some(&mut (v, in_edge, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let (w, id) = adj[v][*idx];
                    *idx += 1;
                    if id == in_edge {
                        continue; // do not reuse the tree edge itself
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, id, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_art[parent] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_art[root] = true;
            }
        }
        (0..self.n).filter(|&v| is_art[v]).collect()
    }

    /// Bridge edges (ids into the edge list), honoring parallel edges:
    /// a member of a parallel pair is never a bridge.
    pub fn bridges(&self) -> Vec<usize> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                continue;
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut out = Vec::new();
        let mut timer = 0usize;
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, in_edge, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let (w, id) = adj[v][*idx];
                    *idx += 1;
                    if id == in_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, id, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(in_edge);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Delete one edge by id.
    pub fn delete_edge(&self, id: usize) -> MultiGraph {
        let mut es = self.edges.clone();
        es.remove(id);
        MultiGraph { n: self.n, edges: es }
    }

    /// Contract one edge by id: its endpoints merge (the contracted copy
    /// disappears; other parallel copies become loops). Vertices are
    /// compacted to 0..n-1.
    pub fn contract_edge(&self, id: usize) -> MultiGraph {
        let (u, v) = self.edges[id];
        if u == v {
            // contracting a loop = deleting it
            return self.delete_edge(id);
        }
        let mut es = Vec::with_capacity(self.edges.len() - 1);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i == id {
                continue;
            }
            let map = |w: usize| {
                let w = if w == v { u } else { w };
                if w > v {
                    w - 1
                } else {
                    w
                }
            };
            let (a, b) = (map(a), map(b));
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        MultiGraph { n: self.n - 1, edges: es }
    }

    /// Drop isolated vertices, compacting labels; graph structure otherwise
    /// unchanged.
    pub fn without_isolated(&self) -> MultiGraph {
        let mut used = vec![false; self.n];
        for &(u, v) in &self.edges {
            used[u] = true;
            used[v] = true;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0usize;
        for v in 0..self.n {
            if used[v] {
                map[v] = next;
                next += 1;
            }
        }
        let es = self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect();
        MultiGraph { n: next, edges: es }
    }

    /// Apply a vertex relabeling (permutation of 0..n).
    pub fn relabel(&self, perm: &[usize]) -> MultiGraph {
        let mut es: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort_unstable();
        MultiGraph { n: self.n, edges: es }
    }

    /// Canonical form: the edge list of a canonically labeled copy, an
    /// isomorphism invariant that distinguishes non-isomorphic graphs.
    /// Computed by iterated color refinement with individualization.
    pub fn canonical_form(&self) -> (usize, Vec<(usize, usize)>) {
        if self.n == 0 {
            return (0, Vec::new());
        }
        let init = self.refine(&vec![0u32; self.n]);
        let mut best: Option<Vec<(usize, usize)>> = None;
        self.canon_search(&init, &mut best);
        (self.n, best.expect("search always yields a labeling"))
    }

    /// One pass of stable color refinement to a fixpoint: a vertex's new
    /// color is determined by (old color, loop count, multiset of neighbor
    /// colors with multiplicities).
    fn refine(&self, colors: &[u32]) -> Vec<u32> {
        let mut colors = colors.to_vec();
        loop {
            let mut sigs: Vec<(u32, usize, Vec<(u32, usize)>)> = Vec::with_capacity(self.n);
            for v in 0..self.n {
                let mut nb: Vec<(u32, usize)> = Vec::new();
                for (w, m) in self.neighbor_counts(v) {
                    nb.push((colors[w], m));
                }
                nb.sort_unstable();
                // merge same-color entries
                let mut merged: Vec<(u32, usize)> = Vec::new();
                for (c, m) in nb {
                    match merged.last_mut() {
                        Some((lc, lm)) if *lc == c => *lm += m,
                        _ => merged.push((c, m)),
                    }
                }
                sigs.push((colors[v], self.loop_count(v), merged));
            }
            let mut ranks: std::collections::BTreeMap<&(u32, usize, Vec<(u32, usize)>), u32> =
                std::collections::BTreeMap::new();
            for s in &sigs {
                let next = ranks.len() as u32;
                ranks.entry(s).or_insert(next);
            }
            // re-rank densely in signature order
            let mut sorted: Vec<&(u32, usize, Vec<(u32, usize)>)> =
                ranks.keys().copied().collect();
            sorted.sort();
            let dense: std::collections::BTreeMap<_, u32> = sorted
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, i as u32))
                .collect();
            let new_colors: Vec<u32> = sigs.iter().map(|s| dense[s]).collect();
            if new_colors == colors {
                return colors;
            }
            colors = new_colors;
        }
    }

    fn canon_search(&self, colors: &[u32], best: &mut Option<Vec<(usize, usize)>>) {
        // find the smallest non-singleton color class
        let mut class_of: std::collections::BTreeMap<u32, Vec<usize>> =
            std::collections::BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            class_of.entry(c).or_default().push(v);
        }
        let target = class_of.values().find(|vs| vs.len() > 1).cloned();
        match target {
            None => {
                // discrete: colors are a permutation rank
                let mut perm = vec![0usize; self.n];
                for (v, &c) in colors.iter().enumerate() {
                    perm[v] = c as usize;
                }
                let candidate = self.relabel(&perm).edges;
                if best.as_ref().map(|b| candidate < *b).unwrap_or(true) {
                    *best = Some(candidate);
                }
            }
            Some(cell) => {
                for &v in &cell {
                    let mut split = colors.to_vec();
                    split[v] = u32::MAX; // individualize, re-ranked by refine
                    let refined = self.refine(&split);
                    self.canon_search(&refined, best);
                }
            }
        }
    }

    /// Are two graphs isomorphic?
    pub fn is_isomorphic(&self, other: &MultiGraph) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self.canonical_form() == other.canonical_form()
    }
}

/// Union-find over 0..n.
pub struct Dsu {
    parent: Vec<usize>,
    comps: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), comps: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Union by attaching; returns true if the sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.comps -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.comps
    }
}

/// JSON-lines record: one graph per line.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphRecord {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphRecord {
    pub fn to_graph(&self) -> Result<MultiGraph, Error> {
        MultiGraph::new(self.vertices, &self.edges)
    }

    pub fn from_graph(name: &str, g: &MultiGraph) -> Self {
        GraphRecord {
            name: name.to_string(),
            vertices: g.num_vertices(),
            edges: g.edges().to_vec(),
        }
    }
}

/// Parse a JSON-lines stream of graph records (blank lines skipped).
pub fn parse_graph_jsonl(input: &str) -> Result<Vec<GraphRecord>, Error> {
    let mut out = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let rec: GraphRecord = serde_json::from_str(line).map_err(|e| Error::Malformed {
            detail: format!("line {}: {}", lineno + 1, e),
        })?;
        out.push(rec);
    }
    Ok(out)
}

// ---- common construction helpers (used widely in tests) ----

/// Cycle on n >= 2 vertices (n = 2 gives two parallel edges).
pub fn cycle(n: usize) -> MultiGraph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::new(n, &edges).expect("valid cycle")
}

/// Complete graph on n vertices.
pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    MultiGraph::new(n, &edges).expect("valid complete graph")
}

/// Complete bipartite graph K_{a,b}.
pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    MultiGraph::new(a + b, &edges).expect("valid bipartite graph")
}

/// Two vertices joined by k parallel edges.
pub fn dipole(k: usize) -> MultiGraph {
    MultiGraph::new(2, &vec![(0, 1); k]).expect("valid dipole")
}
