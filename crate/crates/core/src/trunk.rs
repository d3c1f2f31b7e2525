//! Friendly numberings for trees whose branching vertices lie on one path.
//!
//! The tree is cut along a trunk (a path through every vertex of degree at
//! least three that ends in a leaf) into links. Link `m` is the `m`-th trunk
//! vertex, every branch hanging off it, and the trunk edge leading towards
//! the trunk's last vertex. Links receive consecutive number blocks; inside
//! a link, odd branches come first, then the trunk edge, then the even
//! branches in two passes.

use thiserror::Error;

use crate::amity::Numbering;
use crate::tree::{EdgeId, Tree, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrunkError {
    #[error("tree has no edges")]
    EmptyTree,
    #[error("invalid trunk: {0}")]
    InvalidTrunk(String),
    #[error("vertices of degree >= 3 do not lie on a common path")]
    PreconditionFailed,
}

/// A path from a trunk vertex to a leaf, edges listed trunk-first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub edges: Vec<EdgeId>,
}

impl Branch {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> EdgeId {
        self.edges[0]
    }

    pub fn last(&self) -> EdgeId {
        *self.edges.last().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    /// 1-based position along the trunk.
    pub index: usize,
    pub vertex: VertexId,
    pub trunk_edge: EdgeId,
    pub odd_branches: Vec<Branch>,
    pub even_branches: Vec<Branch>,
}

impl Link {
    pub fn edge_count(&self) -> usize {
        1 + self.odd_branches.iter().chain(&self.even_branches).map(Branch::len).sum::<usize>()
    }

    /// Edges of the link in numbering order.
    pub fn numbering_order(&self) -> Vec<EdgeId> {
        let mut order = Vec::with_capacity(self.edge_count());
        for branch in &self.odd_branches {
            order.extend_from_slice(&branch.edges);
        }
        order.push(self.trunk_edge);
        for branch in &self.even_branches {
            order.push(branch.first());
        }
        for branch in self.even_branches.iter().rev() {
            order.extend_from_slice(&branch.edges[1..]);
        }
        order
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrunkDecomposition {
    pub trunk: Vec<VertexId>,
    pub links: Vec<Link>,
}

impl TrunkDecomposition {
    /// Number of trunk edges.
    pub fn d(&self) -> usize {
        self.links.len()
    }
}

/// Finds a trunk, or `None` when the vertices of degree at least three do
/// not lie on a common path.
pub fn find_trunk(t: &Tree) -> Result<Option<Vec<VertexId>>, TrunkError> {
    if t.edge_count() == 0 {
        return Err(TrunkError::EmptyTree);
    }
    let n = t.vertex_count();
    let branching: Vec<VertexId> = (0..n).filter(|&v| t.degree(v) >= 3).collect();
    if branching.is_empty() {
        let leaves = t.leaf_vertices();
        return Ok(Some(t.vertex_path_vertices(leaves[0], leaves[1])));
    }

    // Minimal subtree spanning the branching vertices: strip non-branching
    // leaves until none remain.
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut stack: Vec<VertexId> = (0..n).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || t.degree(v) >= 3 || degree[v] > 1 {
            continue;
        }
        alive[v] = false;
        for &(w, _) in t.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    }
    if (0..n).any(|v| alive[v] && degree[v] > 2) {
        return Ok(None);
    }
    let ends: Vec<VertexId> = (0..n).filter(|&v| alive[v] && degree[v] <= 1).collect();
    let (start, end) = match ends[..] {
        [only] => (only, only),
        [a, b] => (a.min(b), a.max(b)),
        _ => unreachable!("a path has one or two ends"),
    };
    let mut trunk = t.vertex_path_vertices(start, end);

    // Walk from the larger end to a leaf, never stepping back onto the path.
    let mut prev = if trunk.len() >= 2 { Some(trunk[trunk.len() - 2]) } else { None };
    let mut cur = end;
    while !t.is_leaf(cur) {
        let next = t
            .neighbors(cur)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| Some(w) != prev)
            .min()
            .expect("non-leaf vertex has a forward neighbor");
        trunk.push(next);
        prev = Some(cur);
        cur = next;
    }
    Ok(Some(trunk))
}

/// Splits the tree into the links of `trunk`.
pub fn decompose(t: &Tree, trunk: &[VertexId]) -> Result<TrunkDecomposition, TrunkError> {
    let invalid = |msg: &str| Err(TrunkError::InvalidTrunk(msg.to_string()));
    let n = t.vertex_count();
    if trunk.len() < 2 {
        return invalid("trunk needs at least one edge");
    }
    let mut on_trunk = vec![false; n];
    for &v in trunk {
        if v >= n || std::mem::replace(&mut on_trunk[v], true) {
            return invalid("trunk vertices must be distinct vertices of the tree");
        }
    }
    if !t.is_leaf(*trunk.last().unwrap()) {
        return invalid("last trunk vertex must be a leaf");
    }
    if (0..n).any(|v| t.degree(v) >= 3 && !on_trunk[v]) {
        return invalid("a vertex of degree >= 3 is off the trunk");
    }
    let mut links = Vec::with_capacity(trunk.len() - 1);
    for (i, pair) in trunk.windows(2).enumerate() {
        let (v, next) = (pair[0], pair[1]);
        let Some(trunk_edge) = t.edge_between(v, next) else {
            return invalid("consecutive trunk vertices must be adjacent");
        };
        let mut odd_branches = Vec::new();
        let mut even_branches = Vec::new();
        for &(w, first) in t.neighbors(v) {
            if on_trunk[w] {
                continue;
            }
            let mut edges = vec![first];
            let (mut prev, mut cur) = (v, w);
            while !t.is_leaf(cur) {
                let &(nx, e) = t.neighbors(cur).iter().find(|&&(x, _)| x != prev).unwrap();
                edges.push(e);
                prev = cur;
                cur = nx;
            }
            let branch = Branch { edges };
            if branch.len() % 2 == 1 {
                odd_branches.push(branch);
            } else {
                even_branches.push(branch);
            }
        }
        odd_branches.sort_by_key(Branch::first);
        even_branches.sort_by_key(Branch::first);
        links.push(Link { index: i + 1, vertex: v, trunk_edge, odd_branches, even_branches });
    }
    Ok(TrunkDecomposition { trunk: trunk.to_vec(), links })
}

/// Numbers the edges link by link along the trunk.
pub fn number_decomposition(t: &Tree, dec: &TrunkDecomposition) -> Numbering {
    let order: Vec<EdgeId> = dec.links.iter().flat_map(Link::numbering_order).collect();
    Numbering::from_order(t, &order).expect("links partition the edge set")
}

/// Finds a trunk and numbers the tree along it.
pub fn number_by_trunk(t: &Tree) -> Result<Numbering, TrunkError> {
    let trunk = find_trunk(t)?.ok_or(TrunkError::PreconditionFailed)?;
    let dec = decompose(t, &trunk)?;
    Ok(number_decomposition(t, &dec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amity::check_friendly_numbering;
    use crate::tree::parse_tree;

    /// Caterpillar 0-1-2-3 with leaves 4, 5 on vertex 1 and leg 2-6-7.
    fn caterpillar() -> Tree {
        parse_tree("0 1\n1 2\n2 3\n1 4\n1 5\n2 6\n6 7").unwrap()
    }

    /// Center 0 joined to three degree-3 vertices, each with two leaves.
    pub(crate) fn double_y() -> Tree {
        parse_tree("0 1\n0 2\n0 3\n1 4\n1 5\n2 6\n2 7\n3 8\n3 9").unwrap()
    }

    #[test]
    fn trunk_of_path_is_whole_path() {
        let t = parse_tree("3 1\n1 0\n0 2").unwrap();
        // dense ids: 3->0, 1->1, 0->2, 2->3; endpoints 0 and 3
        assert_eq!(find_trunk(&t).unwrap(), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn trunk_of_star_is_one_edge() {
        assert_eq!(find_trunk(&Tree::star(4)).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn trunkless_tree() {
        assert_eq!(find_trunk(&double_y()).unwrap(), None);
        assert_eq!(number_by_trunk(&double_y()), Err(TrunkError::PreconditionFailed));
        assert_eq!(find_trunk(&Tree::single_vertex()), Err(TrunkError::EmptyTree));
    }

    #[test]
    fn decomposition_of_path_and_star() {
        let p = Tree::path(4);
        let dec = decompose(&p, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(dec.d(), 4);
        assert!(dec.links.iter().all(|l| l.odd_branches.is_empty() && l.even_branches.is_empty()));

        let s = Tree::star(5);
        let dec = decompose(&s, &find_trunk(&s).unwrap().unwrap()).unwrap();
        assert_eq!(dec.d(), 1);
        assert_eq!(dec.links[0].odd_branches.len(), 4);
        assert!(dec.links[0].even_branches.is_empty());
    }

    #[test]
    fn decomposition_of_caterpillar() {
        let t = caterpillar();
        let trunk = find_trunk(&t).unwrap().unwrap();
        // S = {1, 2}; extended from 2 towards its smallest off-path neighbor 3.
        assert_eq!(trunk, vec![1, 2, 3]);
        let dec = decompose(&t, &trunk).unwrap();
        assert_eq!(dec.d(), 2);
        let l1 = &dec.links[0];
        assert_eq!(l1.odd_branches.len(), 3);
        assert!(l1.even_branches.is_empty());
        let l2 = &dec.links[1];
        assert!(l2.odd_branches.is_empty());
        assert_eq!(l2.even_branches.len(), 1);
        assert_eq!(l2.even_branches[0].len(), 2);
        let total: usize = dec.links.iter().map(Link::edge_count).sum();
        assert_eq!(total, t.edge_count());
    }

    #[test]
    fn invalid_trunks_rejected() {
        let t = caterpillar();
        assert!(decompose(&t, &[1]).is_err());
        assert!(decompose(&t, &[1, 2]).is_err()); // 2 is not a leaf
        assert!(decompose(&t, &[2, 3]).is_err()); // vertex 1 off the trunk
        assert!(decompose(&t, &[1, 3]).is_err());
    }

    #[test]
    fn star_numbering() {
        let nu = number_by_trunk(&Tree::star(4)).unwrap();
        // trunk edge 0-1 goes last
        assert_eq!(nu.numbers(), &[4, 1, 2, 3]);
        assert_eq!(check_friendly_numbering(&nu), Ok(()));
    }

    #[test]
    fn path_numbering_is_consecutive() {
        let nu = number_by_trunk(&Tree::path(5)).unwrap();
        assert_eq!(nu.numbers(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn caterpillar_numbering_pairs_around_even_branch() {
        let t = caterpillar();
        let nu = number_by_trunk(&t).unwrap();
        let e = |u, v| t.edge_between(u, v).unwrap();
        // link 1: leaves 0, 4, 5 (ids 0, 3, 4) then trunk edge 1-2
        assert_eq!(nu.number(e(0, 1)), 1);
        assert_eq!(nu.number(e(1, 4)), 2);
        assert_eq!(nu.number(e(1, 5)), 3);
        assert_eq!(nu.number(e(1, 2)), 4);
        // link 2: trunk edge 2-3, then 2-6, then 6-7
        assert_eq!(nu.number(e(2, 3)), 5);
        assert_eq!(nu.number(e(2, 6)), 6);
        assert_eq!(nu.number(e(6, 7)), 7);
        assert_eq!(check_friendly_numbering(&nu), Ok(()));
    }

    #[test]
    fn two_even_branches_in_one_link() {
        // Spider with three legs of length 2; the trunk runs along one leg.
        let t = parse_tree("0 1\n1 2\n0 3\n3 4\n0 5\n5 6").unwrap();
        let nu = number_by_trunk(&t).unwrap();
        assert_eq!(nu.numbers(), &[1, 6, 2, 5, 3, 4]);
        assert_eq!(check_friendly_numbering(&nu), Ok(()));
    }
}
