//! Immutable unlabeled trees with indexed edges.
//!
//! Every other module speaks [`EdgeId`]s of a [`Tree`]: numberings, edge
//! bijections and subtree pairs all refer to edges by their stable 0-based
//! index, never by endpoint pairs.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;

/// Index of an edge in [`Tree::edges`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("line {line}: expected \"u v\" with nonnegative integers, got {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("no edges and no \".\" marker in input")]
    Empty,
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: u64 },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: u64, v: u64 },
    #[error("edge {u} {v} closes a cycle")]
    CycleDetected { u: u64, v: u64 },
    #[error("edge list is disconnected")]
    Disconnected,
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("path between an edge and itself is undefined ({0})")]
    EqualEdges(EdgeId),
    #[error("invalid edge id {0}")]
    InvalidEdge(EdgeId),
}

/// A connected acyclic graph on vertices `0..vertex_count`.
///
/// Path queries use a fixed rooting at vertex 0 (parent pointers and depths)
/// computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    parent: Vec<Option<(VertexId, EdgeId)>>,
    depth: Vec<usize>,
}

impl Tree {
    /// Builds a tree from an explicit edge list, validating every invariant.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, TreeError> {
        if vertex_count == 0 {
            return Err(TreeError::Empty);
        }
        let mut uf = UnionFind::new(vertex_count);
        let mut seen = HashMap::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(TreeError::VertexOutOfRange { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop { vertex: u as u64 });
            }
            if seen.insert((u.min(v), u.max(v)), ()).is_some() {
                return Err(TreeError::DuplicateEdge { u: u as u64, v: v as u64 });
            }
            if !uf.union(u, v) {
                return Err(TreeError::CycleDetected { u: u as u64, v: v as u64 });
            }
        }
        if edges.len() + 1 != vertex_count {
            return Err(TreeError::Disconnected);
        }
        Ok(Self::build_unchecked(vertex_count, edges.to_vec()))
    }

    fn build_unchecked(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, EdgeId(i)));
            adjacency[v].push((u, EdgeId(i)));
        }
        let mut parent = vec![None; vertex_count];
        let mut depth = vec![0; vertex_count];
        let mut visited = vec![false; vertex_count];
        let mut queue = VecDeque::from([0]);
        visited[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &adjacency[u] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some((u, e));
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Tree { edges, adjacency, parent, depth }
    }

    pub fn single_vertex() -> Self {
        Self::build_unchecked(1, Vec::new())
    }

    /// Simple path `0 - 1 - ... - m`; edge `i` joins `i` and `i + 1`.
    pub fn path(edge_count: usize) -> Self {
        Self::build_unchecked(edge_count + 1, (0..edge_count).map(|i| (i, i + 1)).collect())
    }

    /// The n-star: center 0 joined to leaves `1..=n`.
    pub fn star(n: usize) -> Self {
        Self::build_unchecked(n + 1, (1..=n).map(|i| (0, i)).collect())
    }

    /// Tree whose vertex `i > 0` hangs from the closest earlier vertex one
    /// level up. `levels[0]` must be the unique 0.
    pub fn from_level_sequence(levels: &[usize]) -> Self {
        assert!(!levels.is_empty() && levels[0] == 0, "level sequence must start at the root");
        let mut last_at_level: Vec<VertexId> = vec![0];
        let mut edges = Vec::with_capacity(levels.len() - 1);
        for (i, &l) in levels.iter().enumerate().skip(1) {
            assert!(l >= 1 && l <= last_at_level.len(), "invalid level sequence");
            edges.push((last_at_level[l - 1], i));
            last_at_level.truncate(l);
            last_at_level.push(i);
        }
        Self::build_unchecked(levels.len(), edges)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.degree(v) == 1
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adjacency.get(u)?.iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    /// The other endpoint of `e`, seen from `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edges_adjacent(&self, a: EdgeId, b: EdgeId) -> bool {
        let (a0, a1) = self.endpoints(a);
        let (b0, b1) = self.endpoints(b);
        a != b && (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1)
    }

    fn lca(&self, mut u: VertexId, mut v: VertexId) -> VertexId {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].unwrap().0;
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].unwrap().0;
        }
        while u != v {
            u = self.parent[u].unwrap().0;
            v = self.parent[v].unwrap().0;
        }
        u
    }

    /// Number of edges on the unique `u`–`v` path.
    pub fn distance(&self, u: VertexId, v: VertexId) -> usize {
        let w = self.lca(u, v);
        self.depth[u] + self.depth[v] - 2 * self.depth[w]
    }

    /// Edges of the unique `u`–`v` path, in order from `u` to `v`.
    pub fn vertex_path(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        let w = self.lca(u, v);
        let mut head = Vec::new();
        let mut x = u;
        while x != w {
            let (p, e) = self.parent[x].unwrap();
            head.push(e);
            x = p;
        }
        let mut tail = Vec::new();
        let mut y = v;
        while y != w {
            let (p, e) = self.parent[y].unwrap();
            tail.push(e);
            y = p;
        }
        head.extend(tail.into_iter().rev());
        head
    }

    /// Vertices of the `u`–`v` path, `u` first.
    pub fn vertex_path_vertices(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let mut out = vec![u];
        let mut x = u;
        for e in self.vertex_path(u, v) {
            x = self.opposite(e, x);
            out.push(x);
        }
        out
    }

    /// The path joining the nearest endpoints of two distinct edges,
    /// excluding both edges. Empty when the edges share a vertex.
    pub fn path_between_edges(&self, e1: EdgeId, e2: EdgeId) -> Result<EdgeSet, TreeError> {
        for e in [e1, e2] {
            if e.0 >= self.edge_count() {
                return Err(TreeError::InvalidEdge(e));
            }
        }
        if e1 == e2 {
            return Err(TreeError::EqualEdges(e1));
        }
        let (a0, a1) = self.endpoints(e1);
        let (b0, b1) = self.endpoints(e2);
        let (u, v) =
            [(a0, b0), (a0, b1), (a1, b0), (a1, b1)].into_iter().min_by_key(|&(x, y)| self.distance(x, y)).unwrap();
        Ok(EdgeSet::from_iter(self.edge_count(), self.vertex_path(u, v)))
    }

    /// The coboundary of `v`: every edge incident to it.
    pub fn coboundary(&self, v: VertexId) -> EdgeSet {
        EdgeSet::from_iter(self.edge_count(), self.adjacency[v].iter().map(|&(_, e)| e))
    }

    /// Breadth-first distances from `source` to every vertex.
    pub fn distances_from(&self, source: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices of degree one. The single-vertex tree has none.
    pub fn leaf_vertices(&self) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Edges with at least one endpoint of degree one.
    pub fn leaf_edges(&self) -> EdgeSet {
        EdgeSet::from_iter(
            self.edge_count(),
            self.edge_ids().filter(|&e| {
                let (u, v) = self.endpoints(e);
                self.is_leaf(u) || self.is_leaf(v)
            }),
        )
    }

    /// Removes every leaf vertex and leaf edge.
    pub fn prune_leaves(&self) -> PruneResult {
        if self.vertex_count() == 1 {
            return PruneResult { pruned: self.clone(), edge_map: Vec::new(), vertex_map: Vec::new() };
        }
        if self.vertex_count() == 2 {
            let (u, v) = self.edges[0];
            return PruneResult { pruned: Tree::single_vertex(), edge_map: Vec::new(), vertex_map: vec![u.min(v)] };
        }
        let vertex_map: Vec<VertexId> = (0..self.vertex_count()).filter(|&v| !self.is_leaf(v)).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertex_map.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edge_map = Vec::new();
        let mut edges = Vec::new();
        for e in self.edge_ids() {
            let (u, v) = self.endpoints(e);
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                edge_map.push(e);
                edges.push((new_id[u], new_id[v]));
            }
        }
        let pruned = Tree::build_unchecked(vertex_map.len(), edges);
        PruneResult { pruned, edge_map, vertex_map }
    }

    /// A vertex at the same distance from every leaf, with that distance.
    /// Smallest id wins; the single-vertex tree yields `(0, 0)`.
    pub fn equidistant_center(&self) -> Option<(VertexId, usize)> {
        let leaves = self.leaf_vertices();
        if leaves.is_empty() {
            return Some((0, 0));
        }
        (0..self.vertex_count()).find_map(|c| {
            let dist = self.distances_from(c);
            let rho = dist[leaves[0]];
            leaves.iter().all(|&l| dist[l] == rho).then_some((c, rho))
        })
    }

    /// Longest distance between two vertices.
    pub fn diameter(&self) -> usize {
        let d0 = self.distances_from(0);
        let far = (0..self.vertex_count()).max_by_key(|&v| (d0[v], std::cmp::Reverse(v))).unwrap();
        *self.distances_from(far).iter().max().unwrap()
    }

    /// One or two centers (vertices minimising eccentricity), ascending.
    pub fn centers(&self) -> Vec<VertexId> {
        let n = self.vertex_count();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut layer: Vec<VertexId> = (0..n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &(w, _) in &self.adjacency[v] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// AHU encoding of the tree rooted at `root`.
    pub fn rooted_code(&self, root: VertexId) -> String {
        fn encode(t: &Tree, v: VertexId, parent: Option<VertexId>) -> String {
            let mut children: Vec<String> = t.adjacency[v]
                .iter()
                .filter(|&&(w, _)| Some(w) != parent)
                .map(|&(w, _)| encode(t, w, Some(v)))
                .collect();
            children.sort_unstable();
            let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
            s.push('(');
            children.iter().for_each(|c| s.push_str(c));
            s.push(')');
            s
        }
        encode(self, root, None)
    }

    /// Isomorphism-invariant code: the smallest rooted encoding over the centers.
    pub fn canonical_code(&self) -> String {
        self.centers().into_iter().map(|c| self.rooted_code(c)).min().unwrap()
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.vertex_count() == other.vertex_count() && self.canonical_code() == other.canonical_code()
    }

    /// Edge-list text with vertex ids as labels.
    pub fn to_text(&self) -> String {
        if self.edge_count() == 0 {
            return ".\n".to_string();
        }
        self.edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Tree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

/// Subset of the edges of one tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSet(FixedBitSet);

impl EdgeSet {
    pub fn empty(edge_count: usize) -> Self {
        EdgeSet(FixedBitSet::with_capacity(edge_count))
    }

    pub fn full(edge_count: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(edge_count);
        bits.insert_range(..);
        EdgeSet(bits)
    }

    pub fn from_iter(edge_count: usize, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut set = Self::empty(edge_count);
        for e in edges {
            set.insert(e);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, e: EdgeId) {
        self.0.insert(e.0);
    }

    pub fn remove(&mut self, e: EdgeId) {
        self.0.set(e.0, false);
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(e.0)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.ones().map(EdgeId)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersection_count(&self, other: &EdgeSet) -> usize {
        self.0.intersection_count(&other.0)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        self.0.union_with(&other.0)
    }

    pub fn difference_with(&mut self, other: &EdgeSet) {
        self.0.difference_with(&other.0)
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }
}

/// A tree together with the pruned tree G' and the maps back into it.
#[derive(Clone, Debug)]
pub struct PruneResult {
    pub pruned: Tree,
    /// Pruned edge id -> original edge id.
    pub edge_map: Vec<EdgeId>,
    /// Pruned vertex id -> original vertex id.
    pub vertex_map: Vec<VertexId>,
}

/// A parsed tree that remembers the vertex labels used in its source text.
#[derive(Clone, Debug)]
pub struct LabeledTree {
    pub tree: Tree,
    /// Dense vertex id -> label from the input.
    pub labels: Vec<u64>,
    index: HashMap<u64, VertexId>,
}

impl LabeledTree {
    pub fn unlabeled(tree: Tree) -> Self {
        let labels: Vec<u64> = (0..tree.vertex_count() as u64).collect();
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        LabeledTree { tree, labels, index }
    }

    pub fn vertex(&self, label: u64) -> Option<VertexId> {
        self.index.get(&label).copied()
    }

    pub fn edge_by_labels(&self, u: u64, v: u64) -> Option<EdgeId> {
        self.tree.edge_between(self.vertex(u)?, self.vertex(v)?)
    }

    pub fn edge_labels(&self, e: EdgeId) -> (u64, u64) {
        let (u, v) = self.tree.endpoints(e);
        (self.labels[u], self.labels[v])
    }

    pub fn to_text(&self) -> String {
        if self.tree.edge_count() == 0 {
            return ".\n".to_string();
        }
        self.tree
            .edge_ids()
            .map(|e| {
                let (u, v) = self.edge_labels(e);
                format!("{u} {v}\n")
            })
            .collect()
    }
}

/// Parses edge-list text into a tree, discarding the input labels.
pub fn parse_tree(text: &str) -> Result<Tree, TreeError> {
    parse_labeled_tree(text).map(|lt| lt.tree)
}

/// Parses edge-list text: one `u v` pair per line, `#` comments, or a lone
/// `.` for the single-vertex tree. Vertices are renumbered densely in order
/// of first appearance; edge order is line order.
pub fn parse_labeled_tree(text: &str) -> Result<LabeledTree, TreeError> {
    let mut labels: Vec<u64> = Vec::new();
    let mut index: HashMap<u64, VertexId> = HashMap::new();
    let mut edges = Vec::new();
    let mut raw_edges = Vec::new();
    let mut single = false;
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = || TreeError::MalformedLine { line: lineno + 1, content: line.to_string() };
        if trimmed == "." {
            if single || !edges.is_empty() {
                return Err(malformed());
            }
            single = true;
            continue;
        }
        if single {
            return Err(malformed());
        }
        let mut parts = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(malformed());
        };
        let (u, v): (u64, u64) = match (a.parse(), b.parse()) {
            (Ok(u), Ok(v)) => (u, v),
            _ => return Err(malformed()),
        };
        let mut id = |label: u64| {
            *index.entry(label).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            })
        };
        let (iu, iv) = (id(u), id(v));
        edges.push((iu, iv));
        raw_edges.push((u, v));
    }
    if single {
        return Ok(LabeledTree { tree: Tree::single_vertex(), labels: vec![0], index: HashMap::from([(0, 0)]) });
    }
    if edges.is_empty() {
        return Err(TreeError::Empty);
    }
    // Re-run validation with the original labels in the error messages.
    let tree = Tree::from_edges(labels.len(), &edges).map_err(|err| match err {
        TreeError::SelfLoop { vertex } => TreeError::SelfLoop { vertex: labels[vertex as usize] },
        TreeError::DuplicateEdge { u, v } => TreeError::DuplicateEdge { u: labels[u as usize], v: labels[v as usize] },
        TreeError::CycleDetected { u, v } => TreeError::CycleDetected { u: labels[u as usize], v: labels[v as usize] },
        other => other,
    })?;
    Ok(LabeledTree { tree, labels, index })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spider() -> Tree {
        // center 0, legs 0-1-2 and 0-3-4
        parse_tree("0 1\n1 2\n0 3\n3 4").unwrap()
    }

    #[test]
    fn parses_path_and_star() {
        let p = parse_tree("0 1\n1 2").unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 2));
        let s = parse_tree("0 1\n0 2\n0 3").unwrap();
        assert_eq!(s.degree(0), 3);
        assert_eq!(s.canonical_code(), Tree::star(3).canonical_code());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_tree("0 1\n1 0"), Err(TreeError::DuplicateEdge { .. })));
        assert!(matches!(parse_tree("0 0"), Err(TreeError::SelfLoop { vertex: 0 })));
        assert!(matches!(parse_tree("0 1\n1 2\n2 0"), Err(TreeError::CycleDetected { .. })));
        assert!(matches!(parse_tree("0 1\n2 3"), Err(TreeError::Disconnected)));
        assert!(matches!(parse_tree("0 1\n1 x"), Err(TreeError::MalformedLine { line: 2, .. })));
        assert!(matches!(parse_tree("0 1 2"), Err(TreeError::MalformedLine { .. })));
        assert!(matches!(parse_tree("# nothing"), Err(TreeError::Empty)));
    }

    #[test]
    fn parse_renumbers_by_first_appearance() {
        let lt = parse_labeled_tree("# comment\n10 7\n7 3\n").unwrap();
        assert_eq!(lt.labels, vec![10, 7, 3]);
        assert_eq!(lt.tree.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(lt.edge_by_labels(3, 7), Some(EdgeId(1)));
        assert_eq!(lt.to_text(), "10 7\n7 3\n");
    }

    #[test]
    fn single_vertex_tree() {
        let t = parse_tree(".").unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (1, 0));
        assert!(t.leaf_vertices().is_empty());
        assert_eq!(t.equidistant_center(), Some((0, 0)));
        let pr = t.prune_leaves();
        assert_eq!(pr.pruned, t);
        assert!(pr.edge_map.is_empty() && pr.vertex_map.is_empty());
        assert_eq!(t.to_text(), ".\n");
    }

    #[test]
    fn path_between_edges_examples() {
        let p = Tree::path(3);
        let set = p.path_between_edges(EdgeId(0), EdgeId(2)).unwrap();
        assert_eq!(set.to_vec(), vec![EdgeId(1)]);

        let s = Tree::star(4);
        assert!(s.path_between_edges(EdgeId(0), EdgeId(3)).unwrap().is_empty());

        let sp = spider();
        let e12 = sp.edge_between(1, 2).unwrap();
        let e34 = sp.edge_between(3, 4).unwrap();
        let got = sp.path_between_edges(e12, e34).unwrap();
        let want = EdgeSet::from_iter(4, [sp.edge_between(0, 1).unwrap(), sp.edge_between(0, 3).unwrap()]);
        assert_eq!(got, want);

        assert_eq!(p.path_between_edges(EdgeId(1), EdgeId(1)), Err(TreeError::EqualEdges(EdgeId(1))));
    }

    #[test]
    fn coboundary_and_distance() {
        let s = Tree::star(5);
        assert_eq!(s.coboundary(0).len(), 5);
        assert_eq!(s.coboundary(3).len(), 1);
        let p = Tree::path(4);
        assert_eq!(p.coboundary(2).to_vec(), vec![EdgeId(1), EdgeId(2)]);
        assert_eq!(p.distance(0, 4), 4);
        assert_eq!(p.distance(2, 2), 0);
        assert_eq!(spider().distance(2, 4), 4);
    }

    #[test]
    fn pruning() {
        assert_eq!(Tree::path(2).prune_leaves().pruned.vertex_count(), 1);
        assert_eq!(Tree::star(6).prune_leaves().vertex_map, vec![0]);
        let two = parse_tree("5 3").unwrap();
        assert_eq!(two.prune_leaves().vertex_map, vec![0]);

        let pr = spider().prune_leaves();
        assert_eq!(pr.pruned.edge_count(), 2);
        assert_eq!(pr.vertex_map, vec![0, 1, 3]);
        let sp = spider();
        let mapped: Vec<_> = pr.edge_map.iter().map(|&e| sp.endpoints(e)).collect();
        assert_eq!(mapped, vec![(0, 1), (0, 3)]);
    }

    #[test]
    fn leaves() {
        let p = Tree::path(3);
        assert_eq!(p.leaf_edges().to_vec(), vec![EdgeId(0), EdgeId(2)]);
        assert_eq!(Tree::star(4).leaf_edges().len(), 4);
        let e = Tree::path(1);
        assert_eq!(e.leaf_vertices(), vec![0, 1]);
        assert_eq!(e.leaf_edges().len(), 1);
    }

    #[test]
    fn equidistant_centers() {
        assert_eq!(Tree::star(4).equidistant_center(), Some((0, 1)));
        assert_eq!(Tree::path(2).equidistant_center(), Some((1, 1)));
        assert_eq!(Tree::path(3).equidistant_center(), None);
    }

    #[test]
    fn diameters() {
        assert_eq!(Tree::path(6).diameter(), 6);
        assert_eq!(Tree::star(4).diameter(), 2);
        assert_eq!(Tree::single_vertex().diameter(), 0);
    }

    #[test]
    fn canonical_codes() {
        let a = spider();
        let b = parse_tree("4 2\n2 0\n0 3\n3 1").unwrap();
        assert_eq!(a.canonical_code(), b.canonical_code());
        assert!(a.is_isomorphic(&b));
        assert_ne!(Tree::path(3).canonical_code(), Tree::star(3).canonical_code());
    }

    #[test]
    fn level_sequence() {
        let t = Tree::from_level_sequence(&[0, 1, 2, 1, 2]);
        assert_eq!(t.edges(), &[(0, 1), (1, 2), (0, 3), (3, 4)]);
    }
}
