//! Leaf-edge friendly numberings for trees with an equidistant center and
//! even internal degrees.
//!
//! The tree is peeled into a tower `G ⊃ G' ⊃ G'' ⊃ ...` by repeatedly
//! removing all leaves. The innermost level is a single vertex. Each level
//! keeps the numbering of the level below on its inner edges and appends
//! its own leaf edges in counter-run order: a leaf edge whose parent (the
//! adjacent leaf edge of the next level) carries a larger number receives a
//! smaller number.

use std::cmp::Reverse;

use thiserror::Error;

use crate::amity::Numbering;
use crate::tree::{EdgeId, PruneResult, Tree, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParityError {
    #[error("tree has no equidistant center or an internal vertex of odd degree")]
    PreconditionFailed,
    #[error("vertex roles do not hold: {0}")]
    Roles(&'static str),
}

/// The tower of pruned trees for a qualifying tree.
#[derive(Clone, Debug)]
pub struct ParityContext {
    pub tree: Tree,
    pub center: VertexId,
    pub radius: usize,
    /// `tower[i]` prunes level `i` (level 0 is the tree itself); there are
    /// exactly `radius` entries and the last one is a single vertex.
    pub tower: Vec<PruneResult>,
    /// `parent_maps[i][e]`: for a leaf edge `e` of level `i`, the adjacent
    /// leaf edge of level `i + 1`. `None` for inner edges, and for every edge
    /// when level `i + 1` has no edges.
    pub parent_maps: Vec<Vec<Option<EdgeId>>>,
}

impl ParityContext {
    /// The tree at depth `i` of the tower.
    pub fn level(&self, i: usize) -> &Tree {
        if i == 0 {
            &self.tree
        } else {
            &self.tower[i - 1].pruned
        }
    }
}

/// Adjacent leaf edge of `G'` for every leaf edge of `G`.
pub fn parent_map(t: &Tree, pr: &PruneResult) -> Vec<Option<EdgeId>> {
    let leaf_edges = t.leaf_edges();
    let pruned_leaf_edges = pr.pruned.leaf_edges();
    let mut pruned_leaf_id = vec![None; t.edge_count()];
    for e in pruned_leaf_edges.iter() {
        pruned_leaf_id[pr.edge_map[e.0].0] = Some(e);
    }
    t.edge_ids()
        .map(|e| {
            if !leaf_edges.contains(e) {
                return None;
            }
            let (u, v) = t.endpoints(e);
            let inner = if t.is_leaf(u) { v } else { u };
            t.neighbors(inner).iter().find_map(|&(_, f)| if f != e { pruned_leaf_id[f.0] } else { None })
        })
        .collect()
}

/// Builds the tower when the tree has an equidistant center and every
/// non-leaf vertex has even degree.
pub fn check_precondition(t: &Tree) -> Option<ParityContext> {
    let (center, radius) = t.equidistant_center()?;
    if (0..t.vertex_count()).any(|v| t.degree(v) > 1 && t.degree(v) % 2 == 1) {
        return None;
    }
    let mut tower = Vec::with_capacity(radius);
    let mut parent_maps = Vec::with_capacity(radius);
    let mut current = t.clone();
    for _ in 0..radius {
        let pr = current.prune_leaves();
        parent_maps.push(parent_map(&current, &pr));
        current = pr.pruned.clone();
        tower.push(pr);
    }
    debug_assert_eq!(current.vertex_count(), 1);
    Some(ParityContext { tree: t.clone(), center, radius, tower, parent_maps })
}

/// All inner edges numbered below all leaf edges.
pub fn leaf_edge_property(nu: &Numbering) -> bool {
    let t = nu.tree();
    let leaf = t.leaf_edges();
    let max_inner = t.edge_ids().filter(|&e| !leaf.contains(e)).map(|e| nu.number(e)).max();
    let min_leaf = leaf.iter().map(|e| nu.number(e)).min();
    match (max_inner, min_leaf) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    }
}

/// For leaf edges `e1, e2` of the tree: a smaller parent number forces a
/// larger own number. Vacuous when the pruned tree has no edges.
pub fn counter_run_property(nu: &Numbering) -> bool {
    let t = nu.tree();
    let pr = t.prune_leaves();
    let parents = parent_map(t, &pr);
    let leaf: Vec<EdgeId> = t.leaf_edges().to_vec();
    for &e1 in &leaf {
        for &e2 in &leaf {
            let (Some(p1), Some(p2)) = (parents[e1.0], parents[e2.0]) else {
                continue;
            };
            let (n1, n2) = (nu.number(pr.edge_map[p1.0]), nu.number(pr.edge_map[p2.0]));
            if n1 < n2 && nu.number(e1) <= nu.number(e2) {
                return false;
            }
        }
    }
    true
}

/// Restriction of `nu` to the edges of the pruned tree, relabeled densely.
pub fn restrict_to_pruned(nu: &Numbering, pr: &PruneResult) -> Numbering {
    let mut order: Vec<EdgeId> = (0..pr.edge_map.len()).map(EdgeId).collect();
    order.sort_by_key(|e| nu.number(pr.edge_map[e.0]));
    Numbering::from_order(&pr.pruned, &order).expect("restriction is a permutation")
}

/// Numbers every level of the tower from the inside out.
pub fn number_with_context(ctx: &ParityContext) -> Numbering {
    // numbers[e] for the current level, starting from the single vertex.
    let mut numbers: Vec<usize> = Vec::new();
    for level in (0..ctx.radius).rev() {
        let t = ctx.level(level);
        let pr = &ctx.tower[level];
        let parents = &ctx.parent_maps[level];
        let inner = pr.edge_map.len();
        let mut next = vec![0usize; t.edge_count()];
        for (pe, &orig) in pr.edge_map.iter().enumerate() {
            next[orig.0] = numbers[pe];
        }
        let mut leaf: Vec<EdgeId> = t.leaf_edges().to_vec();
        leaf.sort_by_key(|&e| (Reverse(parents[e.0].map_or(0, |p| numbers[p.0])), e));
        for (i, e) in leaf.into_iter().enumerate() {
            next[e.0] = inner + 1 + i;
        }
        numbers = next;
    }
    Numbering::new(&ctx.tree, numbers).expect("levels partition the edge set")
}

/// Leaf-edge friendly numbering of a qualifying tree.
pub fn number_parity_center(t: &Tree) -> Result<Numbering, ParityError> {
    let ctx = check_precondition(t).ok_or(ParityError::PreconditionFailed)?;
    Ok(number_with_context(&ctx))
}

/// Distance from `p` (adjacent to some leaf) to the leaf `q`, with its parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OddDistance {
    pub distance: usize,
    pub odd: bool,
}

pub fn odd_distance_witness(ctx: &ParityContext, p: VertexId, q: VertexId) -> Result<OddDistance, ParityError> {
    let t = &ctx.tree;
    if q >= t.vertex_count() || !t.is_leaf(q) {
        return Err(ParityError::Roles("Q must be a leaf"));
    }
    if p >= t.vertex_count() || !t.neighbors(p).iter().any(|&(w, _)| t.is_leaf(w)) {
        return Err(ParityError::Roles("P must be adjacent to a leaf"));
    }
    let distance = t.distance(p, q);
    Ok(OddDistance { distance, odd: distance % 2 == 1 })
}
