//! Hooking and linking predicates, and the two friendliness verifiers.
//!
//! A numbering of a tree's edges by `1..=m` is friendly to the simple path
//! when, for every consecutive pair `k, k + 1`, the numbers on the path
//! between those two edges split into aligned pairs `{k + 2s, k + 2s + 1}`.
//! An edge bijection `G1 -> G2` is friendly when the images of the
//! coboundaries of any two vertices at even distance are unlinked in `G2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{EdgeId, EdgeSet, LabeledTree, Tree, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmityError {
    #[error("numbering has {got} entries for a tree with {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("numbers must be a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("edge counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("edge map is not a bijection")]
    NotBijection,
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
}

/// Bijection from the edges of a tree onto `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numbering {
    tree: Tree,
    /// `numbers[e]` is the number of edge `e`.
    numbers: Vec<usize>,
    /// `edges[k - 1]` is the edge numbered `k`.
    edges: Vec<EdgeId>,
}

impl Numbering {
    pub fn new(tree: &Tree, numbers: Vec<usize>) -> Result<Self, AmityError> {
        let m = tree.edge_count();
        if numbers.len() != m {
            return Err(AmityError::LengthMismatch { expected: m, got: numbers.len() });
        }
        let mut edges = vec![None; m];
        for (e, &k) in numbers.iter().enumerate() {
            if k == 0 || k > m || edges[k - 1].is_some() {
                return Err(AmityError::NotPermutation(m));
            }
            edges[k - 1] = Some(EdgeId(e));
        }
        let edges = edges.into_iter().map(Option::unwrap).collect();
        Ok(Numbering { tree: tree.clone(), numbers, edges })
    }

    /// Numbering from the edge order: `order[k - 1]` receives number `k`.
    pub fn from_order(tree: &Tree, order: &[EdgeId]) -> Result<Self, AmityError> {
        let m = tree.edge_count();
        if order.len() != m {
            return Err(AmityError::LengthMismatch { expected: m, got: order.len() });
        }
        let mut numbers = vec![0; m];
        for (i, e) in order.iter().enumerate() {
            if e.0 >= m || numbers[e.0] != 0 {
                return Err(AmityError::NotPermutation(m));
            }
            numbers[e.0] = i + 1;
        }
        Numbering::new(tree, numbers)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    #[inline]
    pub fn number(&self, e: EdgeId) -> usize {
        self.numbers[e.0]
    }

    /// The edge carrying number `k` (1-based).
    #[inline]
    pub fn edge(&self, k: usize) -> EdgeId {
        self.edges[k - 1]
    }

    pub fn numbers(&self) -> &[usize] {
        &self.numbers
    }

    /// `u v k` lines using the labels of `lt`.
    pub fn to_text(&self, lt: &LabeledTree) -> String {
        (1..=self.len())
            .map(|k| {
                let (u, v) = lt.edge_labels(self.edge(k));
                format!("{u} {v} {k}\n")
            })
            .collect()
    }
}

/// Bijection between the edge sets of two trees of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBijection {
    source: Tree,
    target: Tree,
    map: Vec<EdgeId>,
}

impl EdgeBijection {
    pub fn new(source: &Tree, target: &Tree, map: Vec<EdgeId>) -> Result<Self, AmityError> {
        let (m1, m2) = (source.edge_count(), target.edge_count());
        if m1 != m2 {
            return Err(AmityError::SizeMismatch(m1, m2));
        }
        if map.len() != m1 {
            return Err(AmityError::LengthMismatch { expected: m1, got: map.len() });
        }
        let mut hit = vec![false; m2];
        for e in &map {
            if e.0 >= m2 || std::mem::replace(&mut hit[e.0], true) {
                return Err(AmityError::NotBijection);
            }
        }
        Ok(EdgeBijection { source: source.clone(), target: target.clone(), map })
    }

    pub fn source(&self) -> &Tree {
        &self.source
    }

    pub fn target(&self) -> &Tree {
        &self.target
    }

    #[inline]
    pub fn apply(&self, e: EdgeId) -> EdgeId {
        self.map[e.0]
    }

    pub fn map(&self) -> &[EdgeId] {
        &self.map
    }

    pub fn image(&self, set: &EdgeSet) -> EdgeSet {
        EdgeSet::from_iter(self.target.edge_count(), set.iter().map(|e| self.apply(e)))
    }

    pub fn inverse(&self) -> EdgeBijection {
        let mut inv = vec![EdgeId(0); self.map.len()];
        for (i, e) in self.map.iter().enumerate() {
            inv[e.0] = EdgeId(i);
        }
        EdgeBijection { source: self.target.clone(), target: self.source.clone(), map: inv }
    }

    /// `u1 v1 -> u2 v2` lines using the labels of the two trees.
    pub fn to_text(&self, source: &LabeledTree, target: &LabeledTree) -> String {
        self.source
            .edge_ids()
            .map(|e| {
                let (a, b) = source.edge_labels(e);
                let (c, d) = target.edge_labels(self.apply(e));
                format!("{a} {b} -> {c} {d}\n")
            })
            .collect()
    }
}

/// Why a set `p` hooks onto a set `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HookWitness {
    /// `p` and `q` share an edge.
    Overlap { edge: EdgeId },
    /// The path between two edges of `p` holds an odd number of `q` edges.
    OddCrossing { a: EdgeId, b: EdgeId, count: usize },
}

/// A replayable reason why a candidate is not friendly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Images of `δP` and `δQ` are linked; `p_hooks` tells which side hooks.
    Hook { p: VertexId, q: VertexId, p_hooks: bool, witness: HookWitness },
    /// Number `j` lies on the path between edges `k` and `k + 1` but its
    /// partner relative to `k` does not.
    NumberingPair { k: usize, j: usize, path: Vec<usize> },
}

impl Violation {
    /// Re-evaluates the witness against `b`; true when the failure recurs.
    pub fn reproduces_on_bijection(&self, b: &EdgeBijection) -> bool {
        let Violation::Hook { p, q, p_hooks, witness } = self else {
            return false;
        };
        let n = b.source.vertex_count();
        if *p >= n || *q >= n || p == q || !b.source.distance(*p, *q).is_multiple_of(2) {
            return false;
        }
        let ip = b.image(&b.source.coboundary(*p));
        let iq = b.image(&b.source.coboundary(*q));
        let (hooking, other) = if *p_hooks { (&ip, &iq) } else { (&iq, &ip) };
        match witness {
            HookWitness::Overlap { edge } => hooking.contains(*edge) && other.contains(*edge),
            HookWitness::OddCrossing { a, b: e2, count } => {
                a != e2
                    && hooking.contains(*a)
                    && hooking.contains(*e2)
                    && b.target.path_between_edges(*a, *e2).map(|path| path.intersection_count(other)) == Ok(*count)
                    && count % 2 == 1
            }
        }
    }

    /// Re-evaluates the witness against `nu`; true when the failure recurs.
    pub fn reproduces_on_numbering(&self, nu: &Numbering) -> bool {
        match self {
            Violation::NumberingPair { k, j, .. } => {
                *k >= 1 && *k < nu.len() && numbering_slice_violation(nu, *k) == Some(*j)
            }
            Violation::Hook { .. } => false,
        }
    }
}

/// First reason `p` hooks onto `q`, if any.
pub fn find_hook(t: &Tree, p: &EdgeSet, q: &EdgeSet) -> Option<HookWitness> {
    if let Some(edge) = p.iter().find(|&e| q.contains(e)) {
        return Some(HookWitness::Overlap { edge });
    }
    let edges = p.to_vec();
    for (i, &a) in edges.iter().enumerate() {
        for &b in &edges[i + 1..] {
            let count = t.path_between_edges(a, b).expect("distinct edges").intersection_count(q);
            if count % 2 == 1 {
                return Some(HookWitness::OddCrossing { a, b, count });
            }
        }
    }
    None
}

/// `p` does not hook onto `q`: disjoint, and every path between two edges
/// of `p` meets `q` an even number of times.
pub fn does_not_hook(t: &Tree, p: &EdgeSet, q: &EdgeSet) -> bool {
    find_hook(t, p, q).is_none()
}

/// Neither set hooks onto the other.
pub fn unlinked(t: &Tree, p: &EdgeSet, q: &EdgeSet) -> bool {
    does_not_hook(t, p, q) && does_not_hook(t, q, p)
}

/// Checks every pair of distinct source vertices at even distance.
/// Pairs are scanned with `P < Q`, both ascending.
pub fn check_friendly_bijection(b: &EdgeBijection) -> Result<(), Violation> {
    let src = &b.source;
    let n = src.vertex_count();
    let images: Vec<EdgeSet> = (0..n).map(|v| b.image(&src.coboundary(v))).collect();
    for p in 0..n {
        let dist = src.distances_from(p);
        for q in p + 1..n {
            if !dist[q].is_multiple_of(2) {
                continue;
            }
            if let Some(witness) = find_hook(&b.target, &images[p], &images[q]) {
                return Err(Violation::Hook { p, q, p_hooks: true, witness });
            }
            if let Some(witness) = find_hook(&b.target, &images[q], &images[p]) {
                return Err(Violation::Hook { p, q, p_hooks: false, witness });
            }
        }
    }
    Ok(())
}

/// Returns the smallest offending number `j` for the slice `k`.
fn numbering_slice_violation(nu: &Numbering, k: usize) -> Option<usize> {
    let m = nu.len();
    let path = nu.tree.path_between_edges(nu.edge(k), nu.edge(k + 1)).expect("distinct edges");
    let mut on_path = vec![false; m + 2];
    for e in path.iter() {
        on_path[nu.number(e)] = true;
    }
    (1..=m).filter(|&j| on_path[j]).find(|&j| {
        let partner = if j % 2 == k % 2 { j + 1 } else { j - 1 };
        partner == 0 || partner > m || !on_path[partner]
    })
}

fn numbers_on_path(nu: &Numbering, k: usize) -> Vec<usize> {
    let path = nu.tree.path_between_edges(nu.edge(k), nu.edge(k + 1)).expect("distinct edges");
    let mut nums: Vec<usize> = path.iter().map(|e| nu.number(e)).collect();
    nums.sort_unstable();
    nums
}

/// Whether number `k` satisfies the friendliness condition on its own.
pub fn is_self_standing(nu: &Numbering, k: usize) -> bool {
    assert!(k >= 1 && k < nu.len(), "k must lie in 1..m");
    numbering_slice_violation(nu, k).is_none()
}

pub fn check_friendly_numbering(nu: &Numbering) -> Result<(), Violation> {
    for k in 1..nu.len() {
        if let Some(j) = numbering_slice_violation(nu, k) {
            return Err(Violation::NumberingPair { k, j, path: numbers_on_path(nu, k) });
        }
    }
    Ok(())
}

/// The bijection from the simple path with `m` edges onto the numbered tree:
/// path edge `i - 1` (joining vertices `i - 1` and `i`) maps to edge number `i`.
pub fn numbering_to_path_bijection(nu: &Numbering) -> EdgeBijection {
    let path = Tree::path(nu.len());
    EdgeBijection { source: path, target: nu.tree.clone(), map: nu.edges.clone() }
}

/// Parses `u v k` lines against the labels of `lt`.
pub fn parse_numbering(lt: &LabeledTree, text: &str) -> Result<Numbering, AmityError> {
    let m = lt.tree.edge_count();
    let mut numbers = vec![0usize; m];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: &str| AmityError::Format { line: lineno + 1, reason: reason.to_string() };
        let fields: Vec<u64> =
            line.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| err("expected \"u v k\""))?;
        let [u, v, k] = fields[..] else {
            return Err(err("expected \"u v k\""));
        };
        let e = lt.edge_by_labels(u, v).ok_or_else(|| err("no such edge"))?;
        if numbers[e.0] != 0 {
            return Err(err("edge numbered twice"));
        }
        numbers[e.0] = k as usize;
    }
    Numbering::new(&lt.tree, numbers)
}

/// Parses `u1 v1 -> u2 v2` lines.
pub fn parse_bijection(source: &LabeledTree, target: &LabeledTree, text: &str) -> Result<EdgeBijection, AmityError> {
    let m = source.tree.edge_count();
    let mut map = vec![None; m];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: &str| AmityError::Format { line: lineno + 1, reason: reason.to_string() };
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected \"u1 v1 -> u2 v2\""))?;
        let pair = |s: &str| -> Option<(u64, u64)> {
            let mut it = s.split_whitespace().map(str::parse::<u64>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => Some((a, b)),
                _ => None,
            }
        };
        let ((a, b), (c, d)) = pair(lhs).zip(pair(rhs)).ok_or_else(|| err("expected \"u1 v1 -> u2 v2\""))?;
        let e1 = source.edge_by_labels(a, b).ok_or_else(|| err("no such source edge"))?;
        let e2 = target.edge_by_labels(c, d).ok_or_else(|| err("no such target edge"))?;
        if map[e1.0].replace(e2).is_some() {
            return Err(err("source edge mapped twice"));
        }
    }
    let map: Option<Vec<EdgeId>> = map.into_iter().collect();
    EdgeBijection::new(&source.tree, &target.tree, map.ok_or(AmityError::NotBijection)?)
}
