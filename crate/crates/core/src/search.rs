//! Backtracking search for friendly numberings and friendly bijections, and
//! the exhaustive symmetry audit.

use std::cmp::Reverse;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::amity::{check_friendly_bijection, check_friendly_numbering, EdgeBijection, Numbering};
use crate::enumerate::enumerate_free_trees;
use crate::tree::{EdgeId, EdgeSet, Tree, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("edge counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// Limits for one search instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
    /// Ignore both limits and run to completion.
    pub exhaustive: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 10_000_000, time_limit: Duration::from_secs(60), exhaustive: false }
    }
}

impl SearchBudget {
    pub fn exhaustive() -> Self {
        SearchBudget { exhaustive: true, ..Default::default() }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    ProvedNone,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    /// Same variant, ignoring the payload.
    pub fn same_kind<U>(&self, other: &SearchOutcome<U>) -> bool {
        matches!(
            (self, other),
            (SearchOutcome::Found(_), SearchOutcome::Found(_))
                | (SearchOutcome::ProvedNone, SearchOutcome::ProvedNone)
                | (SearchOutcome::BudgetExceeded, SearchOutcome::BudgetExceeded)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    Enabled,
    Disabled,
}

struct Meter {
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
}

impl Meter {
    fn new(budget: SearchBudget) -> Self {
        Meter { budget, start: Instant::now(), nodes: 0 }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.exhaustive {
            return true;
        }
        if self.nodes > self.budget.max_nodes {
            return false;
        }
        !self.nodes.is_multiple_of(4096) || self.start.elapsed() <= self.budget.time_limit
    }
}

enum Flow {
    Continue,
    Found,
    OutOfBudget,
}

/// `paths[a * m + b]`: edges strictly between edges `a` and `b`.
fn path_table(t: &Tree) -> Vec<EdgeSet> {
    let m = t.edge_count();
    let mut table = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            table.push(if a == b {
                EdgeSet::empty(m)
            } else {
                t.path_between_edges(EdgeId(a), EdgeId(b)).expect("distinct edges")
            });
        }
    }
    table
}

struct NumberingSearch<'a> {
    tree: &'a Tree,
    m: usize,
    paths: Vec<EdgeSet>,
    pruning: Pruning,
    /// `order[k - 1]`: edge holding number `k`.
    order: Vec<EdgeId>,
    used: Vec<bool>,
    meter: Meter,
    found: Option<Numbering>,
}

impl NumberingSearch<'_> {
    fn on_path(&self, k: usize, number: usize) -> bool {
        let (a, b) = (self.order[k - 1].0, self.order[k].0);
        self.paths[a * self.m + b].contains(self.order[number - 1])
    }

    /// Checks the aligned pair `{a, a + 1}` for slice `k` once every
    /// in-range member is placed (numbers `<= placed`).
    fn pair_ok(&self, k: usize, a: usize, placed: usize) -> bool {
        let members = [a, a + 1];
        let in_range = |j: usize| j >= 1 && j <= self.m;
        if members.iter().any(|&j| in_range(j) && j > placed) {
            return true;
        }
        let hits = members.iter().filter(|&&j| in_range(j) && self.on_path(k, j)).count();
        let size = members.iter().filter(|&&j| in_range(j)).count();
        hits == 0 || hits == size && size == 2
    }

    /// Constraints that became fully determined when number `t` was placed.
    fn consistent_after(&self, t: usize) -> bool {
        if t >= 2 {
            // New slice k = t - 1: every aligned pair.
            let k = t - 1;
            let mut a = k % 2;
            while a <= self.m {
                if a != k && !self.pair_ok(k, a, t) {
                    return false;
                }
                a += 2;
            }
        }
        for k in 1..t.saturating_sub(1) {
            let a = if t % 2 == k % 2 { t } else { t - 1 };
            if !self.pair_ok(k, a, t) {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, t: usize) -> Flow {
        if t > self.m {
            let nu = Numbering::from_order(self.tree, &self.order).expect("complete permutation");
            if check_friendly_numbering(&nu).is_ok() {
                self.found = Some(nu);
                return Flow::Found;
            }
            debug_assert!(self.pruning == Pruning::Disabled, "incremental checks admitted a bad numbering");
            return Flow::Continue;
        }
        for e in 0..self.m {
            if self.used[e] {
                continue;
            }
            if !self.meter.tick() {
                return Flow::OutOfBudget;
            }
            self.used[e] = true;
            self.order.push(EdgeId(e));
            let ok = self.pruning == Pruning::Disabled || self.consistent_after(t);
            let flow = if ok { self.dfs(t + 1) } else { Flow::Continue };
            self.order.pop();
            self.used[e] = false;
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        Flow::Continue
    }
}

/// Searches for a friendly numbering, placing numbers in increasing order.
pub fn search_numbering(t: &Tree, budget: SearchBudget) -> SearchOutcome<Numbering> {
    search_numbering_with(t, budget, Pruning::Enabled)
}

pub fn search_numbering_with(t: &Tree, budget: SearchBudget, pruning: Pruning) -> SearchOutcome<Numbering> {
    let m = t.edge_count();
    let mut search = NumberingSearch {
        tree: t,
        m,
        paths: path_table(t),
        pruning,
        order: Vec::with_capacity(m),
        used: vec![false; m],
        meter: Meter::new(budget),
        found: None,
    };
    match search.dfs(1) {
        Flow::Found => SearchOutcome::Found(search.found.take().unwrap()),
        Flow::Continue => SearchOutcome::ProvedNone,
        Flow::OutOfBudget => SearchOutcome::BudgetExceeded,
    }
}

/// Ordered vertex pair `(p, q)` at even positive distance in the source.
struct PairCheck {
    p_edges: Vec<EdgeId>,
    q_edges: Vec<EdgeId>,
}

struct BijectionSearch<'a> {
    source: &'a Tree,
    target: &'a Tree,
    m: usize,
    target_paths: Vec<EdgeSet>,
    order: Vec<EdgeId>,
    pos: Vec<usize>,
    checks: Vec<PairCheck>,
    /// Checks whose `δQ` completes at each position.
    completes_at: Vec<Vec<usize>>,
    /// Checks with the given source edge in `δP`.
    by_p_edge: Vec<Vec<usize>>,
    q_complete: Vec<usize>,
    image: Vec<Option<EdgeId>>,
    used: Vec<bool>,
    meter: Meter,
    found: Option<EdgeBijection>,
}

impl BijectionSearch<'_> {
    fn odd_crossing(&self, a: EdgeId, b: EdgeId, q_edges: &[EdgeId]) -> bool {
        let (ia, ib) = (self.image[a.0].unwrap(), self.image[b.0].unwrap());
        let path = &self.target_paths[ia.0 * self.m + ib.0];
        q_edges.iter().filter(|q| path.contains(self.image[q.0].unwrap())).count() % 2 == 1
    }

    fn consistent_after(&self, i: usize) -> bool {
        let x = self.order[i];
        for &c in &self.completes_at[i] {
            let check = &self.checks[c];
            let assigned: Vec<EdgeId> = check.p_edges.iter().copied().filter(|e| self.pos[e.0] <= i).collect();
            for (j, &a) in assigned.iter().enumerate() {
                for &b in &assigned[j + 1..] {
                    if self.odd_crossing(a, b, &check.q_edges) {
                        return false;
                    }
                }
            }
        }
        for &c in &self.by_p_edge[x.0] {
            if self.q_complete[c] >= i {
                continue;
            }
            let check = &self.checks[c];
            for &a in &check.p_edges {
                if a != x && self.pos[a.0] < i && self.odd_crossing(x, a, &check.q_edges) {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&mut self, i: usize) -> Flow {
        if i == self.m {
            let map = self.image.iter().map(|e| e.unwrap()).collect();
            let b = EdgeBijection::new(self.source, self.target, map).expect("complete bijection");
            if check_friendly_bijection(&b).is_ok() {
                self.found = Some(b);
                return Flow::Found;
            }
            debug_assert!(false, "incremental checks admitted an unfriendly bijection");
            return Flow::Continue;
        }
        let x = self.order[i];
        for y in 0..self.m {
            if self.used[y] {
                continue;
            }
            if !self.meter.tick() {
                return Flow::OutOfBudget;
            }
            self.used[y] = true;
            self.image[x.0] = Some(EdgeId(y));
            let flow = if self.consistent_after(i) { self.dfs(i + 1) } else { Flow::Continue };
            self.image[x.0] = None;
            self.used[y] = false;
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
        }
        Flow::Continue
    }
}

/// Ordered pairs of distinct vertices at even distance.
fn even_pairs(t: &Tree) -> Vec<(VertexId, VertexId)> {
    let n = t.vertex_count();
    let mut out = Vec::new();
    for p in 0..n {
        let dist = t.distances_from(p);
        out.extend((0..n).filter(|&q| q != p && dist[q].is_multiple_of(2)).map(|q| (p, q)));
    }
    out
}

/// Searches for a friendly bijection from `g1` onto `g2`.
pub fn search_bijection(
    g1: &Tree,
    g2: &Tree,
    budget: SearchBudget,
) -> Result<SearchOutcome<EdgeBijection>, SearchError> {
    let m = g1.edge_count();
    if m != g2.edge_count() {
        return Err(SearchError::SizeMismatch(m, g2.edge_count()));
    }
    let mut order: Vec<EdgeId> = g1.edge_ids().collect();
    order.sort_by_key(|&e| {
        let (u, v) = g1.endpoints(e);
        (Reverse(g1.degree(u) + g1.degree(v)), e)
    });
    let mut pos = vec![0; m];
    for (i, e) in order.iter().enumerate() {
        pos[e.0] = i;
    }
    let mut checks = Vec::new();
    let mut completes_at = vec![Vec::new(); m.max(1)];
    let mut by_p_edge = vec![Vec::new(); m];
    let mut q_complete = Vec::new();
    for (p, q) in even_pairs(g1) {
        let p_edges = g1.coboundary(p).to_vec();
        let q_edges = g1.coboundary(q).to_vec();
        let done = q_edges.iter().map(|e| pos[e.0]).max().unwrap();
        let id = checks.len();
        completes_at[done].push(id);
        for e in &p_edges {
            by_p_edge[e.0].push(id);
        }
        q_complete.push(done);
        checks.push(PairCheck { p_edges, q_edges });
    }
    let mut search = BijectionSearch {
        source: g1,
        target: g2,
        m,
        target_paths: path_table(g2),
        order,
        pos,
        checks,
        completes_at,
        by_p_edge,
        q_complete,
        image: vec![None; m],
        used: vec![false; m],
        meter: Meter::new(budget),
        found: None,
    };
    Ok(match search.dfs(0) {
        Flow::Found => SearchOutcome::Found(search.found.take().unwrap()),
        Flow::Continue => SearchOutcome::ProvedNone,
        Flow::OutOfBudget => SearchOutcome::BudgetExceeded,
    })
}

/// Rearranges `perm` into the next permutation in lexicographic order.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// A bijection whose friendliness differs from that of its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCounterexample {
    pub source: String,
    pub target: String,
    pub source_edges: Vec<(usize, usize)>,
    pub target_edges: Vec<(usize, usize)>,
    pub map: Vec<usize>,
    pub forward_friendly: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub max_edges: usize,
    pub tree_pairs: usize,
    pub bijections: u64,
    pub friendly: u64,
    pub counterexamples: Vec<SymmetryCounterexample>,
}

fn audit_pair(g1: &Tree, g2: &Tree) -> (u64, u64, Vec<SymmetryCounterexample>) {
    let m = g1.edge_count();
    let mut perm: Vec<usize> = (0..m).collect();
    let (mut total, mut friendly) = (0, 0);
    let mut bad = Vec::new();
    loop {
        let b = EdgeBijection::new(g1, g2, perm.iter().map(|&i| EdgeId(i)).collect()).unwrap();
        let forward = check_friendly_bijection(&b).is_ok();
        let backward = check_friendly_bijection(&b.inverse()).is_ok();
        total += 1;
        friendly += forward as u64;
        if forward != backward {
            bad.push(SymmetryCounterexample {
                source: g1.canonical_code(),
                target: g2.canonical_code(),
                source_edges: g1.edges().to_vec(),
                target_edges: g2.edges().to_vec(),
                map: perm.clone(),
                forward_friendly: forward,
            });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (total, friendly, bad)
}

/// Checks every bijection between every pair of trees with the same edge
/// count (at most `max_edges`): a bijection is friendly exactly when its
/// inverse is.
pub fn symmetry_audit(max_edges: usize) -> SymmetryReport {
    let mut pairs = Vec::new();
    for m in 1..=max_edges {
        let trees: Vec<Tree> = enumerate_free_trees(m).collect();
        for i in 0..trees.len() {
            for j in i..trees.len() {
                pairs.push((trees[i].clone(), trees[j].clone()));
            }
        }
    }
    let results: Vec<_> = pairs.par_iter().map(|(a, b)| audit_pair(a, b)).collect();
    let mut report = SymmetryReport { max_edges, tree_pairs: pairs.len(), ..Default::default() };
    for (total, friendly, bad) in results {
        report.bijections += total;
        report.friendly += friendly;
        report.counterexamples.extend(bad);
    }
    report
}
