//! Simple digraphs on dense vertex ids `0..n`, their underlying undirected
//! graphs, terminal sets, and the structural transformations the rest of the
//! crate is built on.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// A simple digraph: no loops, no parallel arcs. A 2-cycle `{(u,v),(v,u)}` is
/// two distinct arcs.
///
/// Values are immutable once built; every transformation returns a new
/// digraph.
#[derive(Clone)]
pub struct Digraph {
    n: usize,
    /// Sorted, duplicate free.
    arcs: Vec<(usize, usize)>,
    arc_set: HashSet<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from an arc list. Duplicate arcs are collapsed; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_arc_list<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            list.push((u, v));
        }
        Ok(Self::from_valid(n, list))
    }

    /// Caller guarantees endpoints are in range and there are no loops.
    pub(crate) fn from_valid(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        debug_assert!(arcs.iter().all(|&(u, v)| u != v && u < n && v < n));
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in &mut in_adj {
            list.sort_unstable();
        }
        let arc_set = arcs.iter().copied().collect();
        Digraph {
            n,
            arcs,
            arc_set,
            out_adj,
            in_adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_valid(n, Vec::new())
    }

    /// The complete digraph on `n` vertices (every ordered pair is an arc).
    pub fn complete(n: usize) -> Self {
        let arcs = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        Self::from_valid(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc_set.contains(&(u, v))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// `(δ⁺, δ⁻)`; `(0, 0)` for the empty vertex set.
    pub fn min_degrees(&self) -> (usize, usize) {
        if self.n == 0 {
            return (0, 0);
        }
        let out = (0..self.n).map(|v| self.out_degree(v)).min().unwrap_or(0);
        let inn = (0..self.n).map(|v| self.in_degree(v)).min().unwrap_or(0);
        (out, inn)
    }

    /// `min(δ⁺, δ⁻)`, the trivial upper bound on every packing number.
    pub fn degree_cap(&self) -> usize {
        let (o, i) = self.min_degrees();
        o.min(i)
    }

    /// Strong components in Tarjan order (reverse topological). Each component
    /// is sorted.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        tarjan_scc(self.n, |v| self.out_adj[v].as_slice())
    }

    /// Every ordered pair of vertices is joined by a directed path. The
    /// digraphs of order 0 and 1 count as strong.
    pub fn is_strong(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let fwd = reach(self.n, 0, |v| self.out_adj[v].as_slice());
        if fwd.iter().any(|&seen| !seen) {
            return false;
        }
        let bwd = reach(self.n, 0, |v| self.in_adj[v].as_slice());
        bwd.iter().all(|&seen| seen)
    }

    pub fn reverse(&self) -> Digraph {
        Self::from_valid(self.n, self.arcs.iter().map(|&(u, v)| (v, u)).collect())
    }

    /// Arcs of the complete digraph that are not arcs of `self`.
    pub fn complement(&self) -> Digraph {
        let arcs = (0..self.n)
            .flat_map(|u| (0..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && !self.has_arc(u, v))
            .collect();
        Self::from_valid(self.n, arcs)
    }

    pub fn underlying(&self) -> UndirectedGraph {
        let edges = self
            .arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        UndirectedGraph::from_valid(self.n, edges)
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| self.has_arc(v, u))
    }

    pub fn is_semicomplete(&self) -> bool {
        (0..self.n).all(|u| ((u + 1)..self.n).all(|v| self.has_arc(u, v) || self.has_arc(v, u)))
    }

    /// The 2-cycles of a symmetric digraph whose removal disconnects it,
    /// reported as `(u, v)` with `u < v`, sorted.
    pub fn bridges(&self) -> Result<Vec<(usize, usize)>> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(self.underlying().bridges())
    }

    pub fn without_arc(&self, u: usize, v: usize) -> Result<Digraph> {
        if !self.has_arc(u, v) {
            return Err(Error::ArcAbsent(u, v));
        }
        let arcs = self.arcs.iter().copied().filter(|&a| a != (u, v)).collect();
        Ok(Self::from_valid(self.n, arcs))
    }

    /// Same vertex set, arc set filtered by `keep`.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut((usize, usize)) -> bool) -> Digraph {
        let arcs = self.arcs.iter().copied().filter(|&a| keep(a)).collect();
        Self::from_valid(self.n, arcs)
    }

    /// Replaces arc `(u, v)` by the path `u -> w -> v` through a fresh vertex
    /// `w = n`.
    pub fn subdivide(&self, u: usize, v: usize) -> Result<Digraph> {
        if !self.has_arc(u, v) {
            return Err(Error::ArcAbsent(u, v));
        }
        let w = self.n;
        let mut arcs: Vec<_> = self.arcs.iter().copied().filter(|&a| a != (u, v)).collect();
        arcs.push((u, w));
        arcs.push((w, v));
        Ok(Self::from_valid(self.n + 1, arcs))
    }

    /// Cartesian product `G □ H`. Vertex `(i, j)` is encoded as `i * |V(H)| + j`.
    pub fn cartesian_product(g: &Digraph, h: &Digraph) -> Digraph {
        let m = h.n;
        let mut arcs = Vec::with_capacity(g.arc_count() * h.n + g.n * h.arc_count());
        for &(x, y) in &g.arcs {
            for j in 0..m {
                arcs.push((x * m + j, y * m + j));
            }
        }
        for i in 0..g.n {
            for &(x, y) in &h.arcs {
                arcs.push((i * m + x, i * m + y));
            }
        }
        Self::from_valid(g.n * m, arcs)
    }

    /// Disjoint union: `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let off = self.n;
        let arcs = self
            .arcs
            .iter()
            .copied()
            .chain(other.arcs.iter().map(|&(u, v)| (u + off, v + off)))
            .collect();
        Self::from_valid(self.n + other.n, arcs)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must equal the order"
        );
        Self::from_valid(
            self.n,
            self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
        )
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs == other.arcs
    }
}

impl Eq for Digraph {}

impl Hash for Digraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.arcs.hash(state);
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs)
            .finish()
    }
}

/// A simple undirected graph on `0..n`. Edges are stored as `(u, v)` with
/// `u < v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl UndirectedGraph {
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        Ok(Self::from_valid(n, list))
    }

    pub(crate) fn from_valid(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        UndirectedGraph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1
            || reach(self.n, 0, |v| self.adj[v].as_slice())
                .iter()
                .all(|&s| s)
    }

    /// Each edge becomes the two opposite arcs.
    pub fn biorient(&self) -> Digraph {
        let arcs = self
            .edges
            .iter()
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .collect();
        Digraph::from_valid(self.n, arcs)
    }

    /// Bridges by DFS lowpoints, as sorted `(u, v)` pairs with `u < v`.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        const UNSEEN: usize = usize::MAX;
        let n = self.n;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, UNSEEN, 0usize)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let w = self.adj[v][*idx];
                    *idx += 1;
                    if disc[w] == UNSEEN {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != UNSEEN {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push((parent.min(v), parent.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// The terminal set `S`: sorted, distinct, `2 <= |S| <= n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidVertexSet(format!(
                "duplicate vertex in {members:?}"
            )));
        }
        if let Some(&v) = members.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if members.len() < 2 {
            return Err(Error::InvalidVertexSet(format!(
                "need at least 2 vertices, got {}",
                members.len()
            )));
        }
        Ok(VertexSet(members))
    }

    /// All vertices `0..n`.
    pub fn all(n: usize) -> Result<Self> {
        Self::new((0..n).collect(), n)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses a comma-separated vertex list such as `0,1,2`.
pub fn parse_vertex_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("not a vertex id: `{t}`")))
        })
        .collect()
}

pub(crate) fn reach<'a, F>(n: usize, start: usize, next: F) -> Vec<bool>
where
    F: Fn(usize) -> &'a [usize],
{
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in next(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Iterative Tarjan.
pub(crate) fn tarjan_scc<'a, F>(n: usize, next: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> &'a [usize],
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let succ = next(v);
            if *i < succ.len() {
                let w = succ[*i];
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}
