//! Sweeps over all free trees up to a size, recording per-tree outcomes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amity::{check_friendly_bijection, check_friendly_numbering, EdgeBijection, Numbering};
use crate::cb::{bijection_from_pair, find_subtree_pair, make_cb};
use crate::enumerate::{enumerate_free_trees, free_trees_up_to};
use crate::parity::{check_precondition, number_with_context};
use crate::search::{search_bijection, search_numbering, SearchBudget, SearchOutcome};
use crate::tree::{EdgeId, Tree};
use crate::trunk::{find_trunk, number_by_trunk};

/// Empirical status banner carried by every numbering sweep.
pub const EMPIRICAL_STATUS: &str =
    "empirical: outcomes cover only the trees enumerated here; the general question remains open";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    QuestionPath,
    D4,
    Odd,
    Cb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    /// Diameter at most 4.
    D4,
    /// All degrees odd and an equidistant center.
    Odd,
}

impl Hypothesis {
    pub fn applies(self, t: &Tree) -> bool {
        match self {
            Hypothesis::D4 => t.diameter() <= 4,
            Hypothesis::Odd => (0..t.vertex_count()).all(|v| t.degree(v) % 2 == 1) && t.equidistant_center().is_some(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Trunk,
    ParityCenter,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RecordOutcome {
    FoundNumbering {
        method: Method,
        numbering: Vec<usize>,
    },
    FoundBijection {
        bijection: Vec<usize>,
    },
    ProvedNone,
    BudgetExceeded,
    /// Criterion failed and no confirming search was requested.
    NotSearched,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub canonical_code: String,
    pub edge_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub has_trunk: bool,
    pub parity_center: bool,
    pub diameter: usize,
    /// Subtree-pair criterion, for CB sweeps only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub criterion: Option<bool>,
    pub outcome: RecordOutcome,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl SweepRecord {
    fn base(t: &Tree) -> Self {
        SweepRecord {
            canonical_code: t.canonical_code(),
            edge_count: t.edge_count(),
            edges: t.edges().to_vec(),
            has_trunk: matches!(find_trunk(t), Ok(Some(_))),
            parity_center: check_precondition(t).is_some(),
            diameter: t.diameter(),
            criterion: None,
            outcome: RecordOutcome::NotSearched,
            notes: Vec::new(),
        }
    }

    pub fn tree(&self) -> Tree {
        Tree::from_edges(self.edge_count + 1, &self.edges).expect("record stores a valid tree")
    }

    /// Re-checks a stored witness; `None` when the record holds no witness.
    pub fn replay(&self, cb: Option<(usize, usize)>) -> Option<bool> {
        let t = self.tree();
        match &self.outcome {
            RecordOutcome::FoundNumbering { numbering, .. } => {
                let nu = Numbering::new(&t, numbering.clone()).ok()?;
                Some(check_friendly_numbering(&nu).is_ok())
            }
            RecordOutcome::FoundBijection { bijection } => {
                let (n1, n2) = cb?;
                let shape = make_cb(n1, n2).ok()?;
                let map = bijection.iter().map(|&i| EdgeId(i)).collect();
                let b = EdgeBijection::new(&shape.tree, &t, map).ok()?;
                Some(check_friendly_bijection(&b).is_ok())
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub records: usize,
    pub found: usize,
    pub proved_none: usize,
    pub budget_exceeded: usize,
    pub not_searched: usize,
    pub criterion_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub max_edges: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cb: Option<(usize, usize)>,
    pub status: String,
    /// Canonical codes of trees with a proved-absent witness.
    pub findings: Vec<String>,
    pub summary: SweepSummary,
    pub records: Vec<SweepRecord>,
}

impl SweepReport {
    fn assemble(kind: SweepKind, max_edges: usize, cb: Option<(usize, usize)>, records: Vec<SweepRecord>) -> Self {
        let mut summary = SweepSummary { records: records.len(), ..Default::default() };
        let mut findings = Vec::new();
        for r in &records {
            match r.outcome {
                RecordOutcome::FoundNumbering { .. } | RecordOutcome::FoundBijection { .. } => summary.found += 1,
                RecordOutcome::ProvedNone => {
                    summary.proved_none += 1;
                    findings.push(r.canonical_code.clone());
                }
                RecordOutcome::BudgetExceeded => summary.budget_exceeded += 1,
                RecordOutcome::NotSearched => summary.not_searched += 1,
            }
            if r.criterion == Some(false) {
                summary.criterion_failures += 1;
            }
        }
        let status = match kind {
            SweepKind::Cb => "exhaustive over the enumerated trees".to_string(),
            _ => EMPIRICAL_STATUS.to_string(),
        };
        SweepReport { kind, max_edges, cb, status, findings, summary, records }
    }

    /// Records whose subtree-pair criterion failed.
    pub fn criterion_failures(&self) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(|r| r.criterion == Some(false))
    }
}

fn searched(t: &Tree, budget: SearchBudget) -> RecordOutcome {
    match search_numbering(t, budget) {
        SearchOutcome::Found(nu) => {
            RecordOutcome::FoundNumbering { method: Method::Search, numbering: nu.numbers().to_vec() }
        }
        SearchOutcome::ProvedNone => RecordOutcome::ProvedNone,
        SearchOutcome::BudgetExceeded => RecordOutcome::BudgetExceeded,
    }
}

fn constructive(t: &Tree, record: &mut SweepRecord) -> Option<RecordOutcome> {
    let attempts: [(Method, Option<Numbering>); 2] = [
        (Method::Trunk, if record.has_trunk { number_by_trunk(t).ok() } else { None }),
        (Method::ParityCenter, check_precondition(t).map(|ctx| number_with_context(&ctx))),
    ];
    for (method, nu) in attempts {
        let Some(nu) = nu else { continue };
        if check_friendly_numbering(&nu).is_ok() {
            return Some(RecordOutcome::FoundNumbering { method, numbering: nu.numbers().to_vec() });
        }
        record.notes.push(format!("{method:?} numbering failed verification"));
    }
    None
}

/// Every free tree with 1..=max_edges edges: constructive numbering when one
/// applies, exhaustive search otherwise.
pub fn sweep_question_path(max_edges: usize, budget: SearchBudget) -> SweepReport {
    let trees = free_trees_up_to(max_edges);
    let records = trees
        .par_iter()
        .map(|t| {
            let mut record = SweepRecord::base(t);
            record.outcome = match constructive(t, &mut record) {
                Some(outcome) => outcome,
                None => searched(t, budget),
            };
            record
        })
        .collect();
    SweepReport::assemble(SweepKind::QuestionPath, max_edges, None, records)
}

/// Trees satisfying the hypothesis, each searched directly.
pub fn sweep_hypothesis(max_edges: usize, which: Hypothesis, budget: SearchBudget) -> SweepReport {
    let trees: Vec<Tree> = free_trees_up_to(max_edges).into_iter().filter(|t| which.applies(t)).collect();
    let records = trees
        .par_iter()
        .map(|t| {
            let mut record = SweepRecord::base(t);
            record.outcome = searched(t, budget);
            record
        })
        .collect();
    let kind = match which {
        Hypothesis::D4 => SweepKind::D4,
        Hypothesis::Odd => SweepKind::Odd,
    };
    SweepReport::assemble(kind, max_edges, None, records)
}

/// Every free tree with `n1 + n2 - 1` edges against `CB(n1, n2)`.
/// Criterion failures are confirmed by bijection search when `confirm`.
pub fn sweep_cb_universal(n1: usize, n2: usize, confirm: bool, budget: SearchBudget) -> SweepReport {
    let m = (n1 + n2).saturating_sub(1);
    let shape = make_cb(n1.max(1), n2.max(1)).expect("positive sizes");
    let trees: Vec<Tree> = if n1 == 0 || n2 == 0 { Vec::new() } else { enumerate_free_trees(m).collect() };
    let records = trees
        .par_iter()
        .map(|t| {
            let mut record = SweepRecord::base(t);
            let pair = find_subtree_pair(t, n1, n2).expect("sizes match by construction");
            record.criterion = Some(pair.is_some());
            record.outcome = match pair {
                Some(pair) => {
                    let b = bijection_from_pair(t, &pair, &shape).expect("pair sizes match");
                    if check_friendly_bijection(&b).is_err() {
                        record.notes.push("bijection from subtree pair failed verification".into());
                    }
                    RecordOutcome::FoundBijection { bijection: b.map().iter().map(|e| e.0).collect() }
                }
                None if confirm => match search_bijection(&shape.tree, t, budget).expect("sizes match") {
                    SearchOutcome::Found(b) => {
                        record.notes.push("criterion failed but search found a friendly bijection".into());
                        RecordOutcome::FoundBijection { bijection: b.map().iter().map(|e| e.0).collect() }
                    }
                    SearchOutcome::ProvedNone => RecordOutcome::ProvedNone,
                    SearchOutcome::BudgetExceeded => RecordOutcome::BudgetExceeded,
                },
                None => RecordOutcome::NotSearched,
            };
            record
        })
        .collect();
    SweepReport::assemble(SweepKind::Cb, m, Some((n1, n2)), records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn question_path_small() {
        let report = sweep_question_path(5, SearchBudget::default());
        assert_eq!(report.summary.records, 1 + 1 + 2 + 3 + 6);
        assert_eq!(report.summary.found, report.summary.records);
        assert!(report.findings.is_empty());
        assert!(report.records.iter().all(|r| r.replay(None) == Some(true)));
        assert!(report
            .records
            .iter()
            .filter(|r| r.has_trunk)
            .all(|r| matches!(r.outcome, RecordOutcome::FoundNumbering { method: Method::Trunk, .. })));
        assert_eq!(report.status, EMPIRICAL_STATUS);
    }

    #[test]
    fn empty_sweep() {
        let report = sweep_question_path(0, SearchBudget::default());
        assert!(report.records.is_empty());
    }

    #[test]
    fn d4_filter() {
        assert!(!Hypothesis::D4.applies(&Tree::path(6)));
        assert!(Hypothesis::Odd.applies(&Tree::star(3)));
        let report = sweep_hypothesis(6, Hypothesis::D4, SearchBudget::default());
        assert!(report.records.iter().all(|r| r.diameter <= 4));
        assert_eq!(report.summary.found, report.summary.records);
    }

    #[test]
    fn cb_small() {
        let report = sweep_cb_universal(1, 1, true, SearchBudget::default());
        assert_eq!(report.summary.records, 1);
        assert_eq!(report.summary.criterion_failures, 0);
        let report = sweep_cb_universal(4, 2, true, SearchBudget::default());
        assert_eq!(report.summary.criterion_failures, 0);
        assert!(report.records.iter().all(|r| r.replay(report.cb) == Some(true)));
    }

    #[test]
    fn report_roundtrips_through_json() {
        let report = sweep_cb_universal(3, 3, false, SearchBudget::default());
        let text = serde_json::to_string(&report).unwrap();
        let back: SweepReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
