//! Friendliness to `CB(n1, n2)`, the union of an `n1`-star and an `n2`-star
//! along one shared edge.
//!
//! `CB(n1, n2)` is friendly to a tree `G` exactly when `G` has
//! `n1 + n2 - 1` edges and splits into two connected edge sets of sizes
//! `n1` and `n2` meeting in a single edge. A splitting yields an explicit
//! friendly bijection; for `n2` in `{2, 3, 4}` a splitting always exists and
//! [`small_n_pair`] constructs it directly.

use rayon::prelude::*;
use thiserror::Error;

use crate::amity::EdgeBijection;
use crate::tree::{EdgeId, EdgeSet, Tree, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CbError {
    #[error("tree has {edges} edges but n1 + n2 - 1 = {expected}")]
    SizeMismatch { edges: usize, expected: usize },
    #[error("subtree pair sizes ({0}, {1}) do not match the CB shape")]
    ShapeMismatch(usize, usize),
    #[error("tree has {edges} edges, fewer than n = {n}")]
    TooSmall { edges: usize, n: usize },
    #[error("n must be 2, 3 or 4, got {0}")]
    UnsupportedN(usize),
    #[error("n1 and n2 must be positive")]
    ZeroStar,
}

#[derive(Clone, Debug)]
pub struct CbShape {
    pub n1: usize,
    pub n2: usize,
    pub tree: Tree,
    pub c1: VertexId,
    pub c2: VertexId,
}

impl CbShape {
    pub fn shared_edge(&self) -> EdgeId {
        EdgeId(0)
    }
}

/// `C1 = 0`, `C2 = 1`; edge 0 is `C1C2`, then the leaves of `C1`, then the
/// leaves of `C2`.
pub fn make_cb(n1: usize, n2: usize) -> Result<CbShape, CbError> {
    if n1 == 0 || n2 == 0 {
        return Err(CbError::ZeroStar);
    }
    let mut edges = vec![(0, 1)];
    let mut next = 2;
    for _ in 1..n1 {
        edges.push((0, next));
        next += 1;
    }
    for _ in 1..n2 {
        edges.push((1, next));
        next += 1;
    }
    let tree = Tree::from_edges(next, &edges).expect("CB construction is a tree");
    Ok(CbShape { n1, n2, tree, c1: 0, c2: 1 })
}

/// Two connected edge sets covering the tree and meeting in `shared`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreePair {
    pub e1: EdgeSet,
    pub e2: EdgeSet,
    pub shared: EdgeId,
}

impl SubtreePair {
    /// Checks every invariant against the host tree.
    pub fn is_valid_for(&self, g: &Tree) -> bool {
        let m = g.edge_count();
        if self.e1.capacity() != m || self.e2.capacity() != m {
            return false;
        }
        let mut both = self.e1.clone();
        both.union_with(&self.e2);
        self.e1.intersection_count(&self.e2) == 1
            && self.e1.contains(self.shared)
            && self.e2.contains(self.shared)
            && both.len() == m
            && self.e1.len() + self.e2.len() == m + 1
            && is_connected_edge_set(g, &self.e1)
            && is_connected_edge_set(g, &self.e2)
    }
}

/// Every path between two edges of `set` stays inside `set`.
pub fn is_connected_edge_set(g: &Tree, set: &EdgeSet) -> bool {
    let edges = set.to_vec();
    edges.iter().enumerate().all(|(i, &a)| {
        edges[i + 1..].iter().all(|&b| g.path_between_edges(a, b).expect("distinct edges").is_subset(set))
    })
}

/// Calls `visit` on every connected edge set of exactly `size` edges that
/// contains `root`. Stops early when `visit` returns `true`.
fn for_each_connected_superset(g: &Tree, root: EdgeId, size: usize, visit: &mut dyn FnMut(&EdgeSet) -> bool) {
    fn grow(
        g: &Tree,
        set: &mut EdgeSet,
        frontier: &mut Vec<EdgeId>,
        banned: &mut EdgeSet,
        size: usize,
        visit: &mut dyn FnMut(&EdgeSet) -> bool,
    ) -> bool {
        if set.len() == size {
            return visit(set);
        }
        let Some(f) = frontier.pop() else {
            return false;
        };
        // Include f.
        set.insert(f);
        let mut added = Vec::new();
        let (u, v) = g.endpoints(f);
        for w in [u, v] {
            for &(_, e) in g.neighbors(w) {
                if !set.contains(e) && !banned.contains(e) && !frontier.contains(&e) && !added.contains(&e) {
                    added.push(e);
                }
            }
        }
        frontier.extend(added.iter().copied());
        let stop = grow(g, set, frontier, banned, size, visit);
        frontier.truncate(frontier.len() - added.len());
        set.remove(f);
        if stop {
            frontier.push(f);
            return true;
        }
        // Exclude f.
        banned.insert(f);
        let stop = grow(g, set, frontier, banned, size, visit);
        banned.remove(f);
        frontier.push(f);
        stop
    }

    let m = g.edge_count();
    if size == 0 || size > m {
        return;
    }
    let mut set = EdgeSet::from_iter(m, [root]);
    let mut banned = EdgeSet::empty(m);
    let (u, v) = g.endpoints(root);
    let mut frontier: Vec<EdgeId> = Vec::new();
    for w in [u, v] {
        for &(_, e) in g.neighbors(w) {
            if e != root && !frontier.contains(&e) {
                frontier.push(e);
            }
        }
    }
    frontier.sort_unstable_by(|a, b| b.cmp(a));
    grow(g, &mut set, &mut frontier, &mut banned, size, visit);
}

/// All connected edge sets of `size` edges containing `root`.
pub fn connected_supersets(g: &Tree, root: EdgeId, size: usize) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    for_each_connected_superset(g, root, size, &mut |s| {
        out.push(s.clone());
        false
    });
    out
}

fn pair_through(g: &Tree, shared: EdgeId, n1: usize) -> Option<SubtreePair> {
    let m = g.edge_count();
    let mut found = None;
    for_each_connected_superset(g, shared, n1, &mut |e1| {
        let mut e2 = EdgeSet::full(m);
        e2.difference_with(e1);
        e2.insert(shared);
        if is_connected_edge_set(g, &e2) {
            found = Some(SubtreePair { e1: e1.clone(), e2, shared });
            true
        } else {
            false
        }
    });
    found
}

/// A subtree pair with `|E1| = n1`, `|E2| = n2`, trying shared edges in
/// parallel; the smallest successful shared edge wins.
pub fn find_subtree_pair(g: &Tree, n1: usize, n2: usize) -> Result<Option<SubtreePair>, CbError> {
    let m = g.edge_count();
    if n1 == 0 || n2 == 0 {
        return Err(CbError::ZeroStar);
    }
    if m + 1 != n1 + n2 {
        return Err(CbError::SizeMismatch { edges: m, expected: n1 + n2 - 1 });
    }
    Ok((0..m).into_par_iter().map(EdgeId).find_map_first(|e| pair_through(g, e, n1)))
}

/// The shared CB edge goes to the shared tree edge; the remaining edges at
/// `C1` (resp. `C2`) go to the remaining edges of `E1` (resp. `E2`), both in
/// ascending id order.
pub fn bijection_from_pair(g: &Tree, pair: &SubtreePair, cb: &CbShape) -> Result<EdgeBijection, CbError> {
    let (s1, s2) = (pair.e1.len(), pair.e2.len());
    if s1 != cb.n1 || s2 != cb.n2 || g.edge_count() != cb.tree.edge_count() {
        return Err(CbError::ShapeMismatch(s1, s2));
    }
    let shared = cb.shared_edge();
    let mut map = vec![EdgeId(0); cb.tree.edge_count()];
    map[shared.0] = pair.shared;
    for (center, set) in [(cb.c1, &pair.e1), (cb.c2, &pair.e2)] {
        let cob = cb.tree.coboundary(center);
        let from = cob.iter().filter(|&e| e != shared);
        let to = set.iter().filter(|&e| e != pair.shared);
        for (a, b) in from.zip(to) {
            map[a.0] = b;
        }
    }
    Ok(EdgeBijection::new(&cb.tree, g, map).expect("pair covers every edge once"))
}

pub fn is_friendly_to_cb(g: &Tree, n1: usize, n2: usize) -> bool {
    matches!(find_subtree_pair(g, n1, n2), Ok(Some(_)))
}

/// Walk state shared by the small cases: `P` a leaf, `Q` a farthest vertex,
/// and the vertices `Q', Q'', Q'''` stepping from `Q` back towards `P`.
struct FarWalk<'a> {
    g: &'a Tree,
    p: VertexId,
    q: VertexId,
    toward_p: Vec<VertexId>,
}

impl<'a> FarWalk<'a> {
    fn new(g: &'a Tree) -> Self {
        let p = g.leaf_vertices()[0];
        let dist = g.distances_from(p);
        let far = *dist.iter().max().unwrap();
        let q = (0..g.vertex_count()).find(|&v| dist[v] == far).unwrap();
        let toward_p = g.vertex_path_vertices(q, p);
        FarWalk { g, p, q, toward_p }
    }

    /// `Q` followed by `i` primes; `None` past `P`.
    fn step(&self, i: usize) -> Option<VertexId> {
        self.toward_p.get(i).copied()
    }

    fn edge(&self, a: VertexId, b: VertexId) -> EdgeId {
        self.g.edge_between(a, b).expect("adjacent vertices")
    }

    /// Smallest-id neighbors of `v` outside `exclude`.
    fn other_neighbors(&self, v: VertexId, exclude: &[VertexId]) -> Vec<VertexId> {
        let mut out: Vec<VertexId> =
            self.g.neighbors(v).iter().map(|&(w, _)| w).filter(|w| !exclude.contains(w)).collect();
        out.sort_unstable();
        out
    }
}

/// Builds `E1 = E \ removed` and `E2 = chosen`.
fn pair_from(g: &Tree, removed: &[EdgeId], chosen: &[EdgeId]) -> SubtreePair {
    let m = g.edge_count();
    let mut e1 = EdgeSet::full(m);
    for &e in removed {
        e1.remove(e);
    }
    let e2 = EdgeSet::from_iter(m, chosen.iter().copied());
    let shared = e2.iter().find(|&e| e1.contains(e)).expect("sets meet in one edge");
    SubtreePair { e1, e2, shared }
}

/// Constructive splitting with `|E2| = n` and `|E1| = m - n + 1` for
/// `n` in `{2, 3, 4}`, following the case analysis on the far end of a
/// longest path from a leaf.
pub fn small_n_pair(g: &Tree, n: usize) -> Result<SubtreePair, CbError> {
    if !(2..=4).contains(&n) {
        return Err(CbError::UnsupportedN(n));
    }
    let m = g.edge_count();
    if m < n {
        return Err(CbError::TooSmall { edges: m, n });
    }
    if n == 2 {
        let p = g.leaf_vertices()[0];
        let (inner, e) = g.neighbors(p)[0];
        let w = g
            .neighbors(inner)
            .iter()
            .map(|&(_, f)| f)
            .filter(|&f| f != e)
            .min()
            .expect("a tree with two edges has an edge next to every leaf edge");
        return Ok(pair_from(g, &[e], &[e, w]));
    }

    let walk = FarWalk::new(g);
    let (q, q1) = (walk.q, walk.step(1).unwrap());
    let q2 = walk.step(2).expect("Q' is not the leaf P");
    let qq1 = walk.edge(q, q1);
    let q1q2 = walk.edge(q1, q2);
    debug_assert_ne!(q1, walk.p);

    if n == 3 {
        if g.degree(q1) == 2 {
            let q3 = walk.step(3).expect("Q'' is not a leaf when m >= 3");
            let q2q3 = walk.edge(q2, q3);
            return Ok(pair_from(g, &[qq1, q1q2], &[qq1, q1q2, q2q3]));
        }
        let a = walk.other_neighbors(q1, &[q, q2])[0];
        let aq1 = walk.edge(a, q1);
        return Ok(pair_from(g, &[qq1, aq1], &[qq1, aq1, q1q2]));
    }

    // n == 4
    if g.degree(q1) > 3 {
        let others = walk.other_neighbors(q1, &[q, q2]);
        let (a1, a2) = (walk.edge(others[0], q1), walk.edge(others[1], q1));
        return Ok(pair_from(g, &[qq1, a1, a2], &[qq1, a1, a2, q1q2]));
    }
    let q3 = walk.step(3).expect("Q'' is not a leaf when m >= 4");
    let q2q3 = walk.edge(q2, q3);
    if g.degree(q1) == 3 {
        let a = walk.other_neighbors(q1, &[q, q2])[0];
        let aq1 = walk.edge(a, q1);
        return Ok(pair_from(g, &[qq1, aq1, q1q2], &[qq1, aq1, q1q2, q2q3]));
    }
    if g.degree(q2) == 2 {
        let e = g
            .neighbors(q3)
            .iter()
            .map(|&(_, f)| f)
            .filter(|&f| f != q2q3)
            .min()
            .expect("Q''' is not a leaf when m >= 4");
        return Ok(pair_from(g, &[qq1, q1q2, q2q3], &[qq1, q1q2, q2q3, e]));
    }
    let a = walk.other_neighbors(q2, &[q3, q1])[0];
    let aq2 = walk.edge(a, q2);
    if g.is_leaf(a) {
        return Ok(pair_from(g, &[qq1, q1q2, aq2], &[qq1, q1q2, aq2, q2q3]));
    }
    let b = walk.other_neighbors(a, &[q2])[0];
    let ba = walk.edge(b, a);
    Ok(pair_from(g, &[qq1, q1q2, ba], &[qq1, q1q2, ba, aq2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amity::check_friendly_bijection;
    use crate::tree::parse_tree;

    #[test]
    fn cb_shapes() {
        let cb = make_cb(5, 3).unwrap();
        assert_eq!(cb.tree.edge_count(), 7);
        assert_eq!((cb.tree.degree(cb.c1), cb.tree.degree(cb.c2)), (5, 3));
        assert_eq!(cb.tree.diameter(), 3);
        assert!(make_cb(4, 1).unwrap().tree.is_isomorphic(&Tree::star(4)));
        assert_eq!(make_cb(1, 1).unwrap().tree.edge_count(), 1);
        assert!(make_cb(0, 2).is_err());
    }

    #[test]
    fn connected_sets() {
        let p = Tree::path(4);
        assert!(is_connected_edge_set(&p, &EdgeSet::from_iter(4, [EdgeId(1), EdgeId(2)])));
        assert!(!is_connected_edge_set(&p, &EdgeSet::from_iter(4, [EdgeId(0), EdgeId(2)])));
        assert!(is_connected_edge_set(&p, &EdgeSet::empty(4)));
    }

    #[test]
    fn connected_superset_counts() {
        // On a path with 5 edges, connected 3-sets containing the middle edge
        // are the windows covering it: 3 of them.
        assert_eq!(connected_supersets(&Tree::path(5), EdgeId(2), 3).len(), 3);
        // In a 6-star every 3-subset is connected: C(5, 2) contain edge 0.
        assert_eq!(connected_supersets(&Tree::star(6), EdgeId(0), 3).len(), 10);
    }

    #[test]
    fn star_pairs() {
        let pair = find_subtree_pair(&Tree::star(3), 2, 2).unwrap().unwrap();
        assert!(pair.is_valid_for(&Tree::star(3)));
        assert_eq!(pair.shared, EdgeId(0));
        let star9 = Tree::star(9);
        let pair = find_subtree_pair(&star9, 5, 5).unwrap().unwrap();
        assert!(pair.is_valid_for(&star9));
        let b = bijection_from_pair(&star9, &pair, &make_cb(5, 5).unwrap()).unwrap();
        assert_eq!(check_friendly_bijection(&b), Ok(()));
    }

    #[test]
    fn three_leg_spider_has_no_five_five_pair() {
        let spider = parse_tree("0 1\n1 2\n2 3\n0 4\n4 5\n5 6\n0 7\n7 8\n8 9").unwrap();
        assert_eq!(find_subtree_pair(&spider, 5, 5), Ok(None));
        assert!(!is_friendly_to_cb(&spider, 5, 5));
    }

    #[test]
    fn criterion_sizes() {
        assert!(is_friendly_to_cb(&Tree::path(3), 2, 2));
        assert!(!is_friendly_to_cb(&Tree::path(4), 2, 2));
        assert!(matches!(find_subtree_pair(&Tree::path(4), 2, 2), Err(CbError::SizeMismatch { .. })));
    }

    #[test]
    fn identity_pair_on_cb() {
        let cb = make_cb(5, 3).unwrap();
        let pair = SubtreePair { e1: cb.tree.coboundary(0), e2: cb.tree.coboundary(1), shared: EdgeId(0) };
        assert!(pair.is_valid_for(&cb.tree));
        let b = bijection_from_pair(&cb.tree, &pair, &cb).unwrap();
        assert!(b.map().iter().enumerate().all(|(i, e)| e.0 == i));
        assert_eq!(check_friendly_bijection(&b), Ok(()));
        assert!(bijection_from_pair(&cb.tree, &pair, &make_cb(4, 4).unwrap()).is_err());
    }

    #[test]
    fn cb22_onto_star() {
        let star = Tree::star(3);
        let pair = find_subtree_pair(&star, 2, 2).unwrap().unwrap();
        let b = bijection_from_pair(&star, &pair, &make_cb(2, 2).unwrap()).unwrap();
        assert_eq!(check_friendly_bijection(&b), Ok(()));
    }

    #[test]
    fn small_n_two() {
        let t = Tree::path(4);
        let pair = small_n_pair(&t, 2).unwrap();
        assert_eq!(pair.e2.to_vec(), vec![EdgeId(0), EdgeId(1)]);
        assert_eq!(pair.shared, EdgeId(1));
        assert!(pair.is_valid_for(&t));
    }

    #[test]
    fn small_n_three_on_path() {
        let t = Tree::path(4);
        let pair = small_n_pair(&t, 3).unwrap();
        // P = 0, Q = 4; deg Q' = 2, so E2 = the last three edges.
        assert_eq!(pair.e2.to_vec(), vec![EdgeId(1), EdgeId(2), EdgeId(3)]);
        assert!(pair.is_valid_for(&t));
    }

    #[test]
    fn small_n_four_two_two() {
        // P = 0 on a path 0-1-2-3-4 with an extra leaf 5 at vertex 1:
        // Q = 4, Q' = 3, Q'' = 2 (both degree 2), Q''' = 1, e = 0-1.
        let t = parse_tree("0 1\n1 2\n2 3\n3 4\n1 5").unwrap();
        let pair = small_n_pair(&t, 4).unwrap();
        let e = |u, v| t.edge_between(u, v).unwrap();
        let want = EdgeSet::from_iter(5, [e(3, 4), e(2, 3), e(1, 2), e(0, 1)]);
        assert_eq!(pair.e2, want);
        assert_eq!(pair.shared, e(0, 1));
        assert!(pair.is_valid_for(&t));
    }

    #[test]
    fn small_n_errors() {
        assert!(matches!(small_n_pair(&Tree::path(2), 3), Err(CbError::TooSmall { .. })));
        assert!(matches!(small_n_pair(&Tree::path(6), 5), Err(CbError::UnsupportedN(5))));
    }
}
