//! Persisted run reports and their replayable witnesses.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::amity::{check_friendly_bijection, check_friendly_numbering, parse_bijection, parse_numbering, Violation};
use crate::cb::SubtreePair;
use crate::tree::{parse_labeled_tree, EdgeSet};

pub const SCHEMA: &str = "tree-amity/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

impl InputFile {
    pub fn new(path: &str, contents: &[u8]) -> Self {
        InputFile { path: path.to_string(), sha256: sha256_hex(contents) }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Evidence attached to a run. Trees, numberings and bijections are stored in
/// their text formats so a witness can be checked without the original files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Numbering { tree: String, numbering: String },
    Bijection { source: String, target: String, bijection: String },
    NumberingViolation { tree: String, numbering: String, violation: Violation },
    BijectionViolation { source: String, target: String, bijection: String, violation: Violation },
    SubtreePair { tree: String, e1: Vec<(u64, u64)>, e2: Vec<(u64, u64)>, shared: (u64, u64) },
}

impl Witness {
    /// Re-checks the witness from its stored text. `Ok(true)` means the
    /// claim it carries still holds.
    pub fn replay(&self) -> Result<bool, String> {
        let tree = |text: &str| parse_labeled_tree(text).map_err(|e| e.to_string());
        match self {
            Witness::Numbering { tree: t, numbering } => {
                let lt = tree(t)?;
                let nu = parse_numbering(&lt, numbering).map_err(|e| e.to_string())?;
                Ok(check_friendly_numbering(&nu).is_ok())
            }
            Witness::Bijection { source, target, bijection } => {
                let (s, t) = (tree(source)?, tree(target)?);
                let b = parse_bijection(&s, &t, bijection).map_err(|e| e.to_string())?;
                Ok(check_friendly_bijection(&b).is_ok())
            }
            Witness::NumberingViolation { tree: t, numbering, violation } => {
                let lt = tree(t)?;
                let nu = parse_numbering(&lt, numbering).map_err(|e| e.to_string())?;
                Ok(violation.reproduces_on_numbering(&nu))
            }
            Witness::BijectionViolation { source, target, bijection, violation } => {
                let (s, t) = (tree(source)?, tree(target)?);
                let b = parse_bijection(&s, &t, bijection).map_err(|e| e.to_string())?;
                Ok(violation.reproduces_on_bijection(&b))
            }
            Witness::SubtreePair { tree: t, e1, e2, shared } => {
                let lt = tree(t)?;
                let m = lt.tree.edge_count();
                let lookup = |&(u, v): &(u64, u64)| lt.edge_by_labels(u, v).ok_or(format!("no edge {u} {v}"));
                let set = |edges: &[(u64, u64)]| -> Result<EdgeSet, String> {
                    Ok(EdgeSet::from_iter(m, edges.iter().map(lookup).collect::<Result<Vec<_>, _>>()?))
                };
                let pair = SubtreePair { e1: set(e1)?, e2: set(e2)?, shared: lookup(shared)? };
                Ok(pair.is_valid_for(&lt.tree))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub inputs: Vec<InputFile>,
    pub outcome: String,
    pub exit_code: i32,
    pub witnesses: Vec<Witness>,
    #[serde(default)]
    pub details: serde_json::Value,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            inputs: Vec::new(),
            outcome: String::new(),
            exit_code: 0,
            witnesses: Vec::new(),
            details: serde_json::Value::Null,
            elapsed_ms: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn witnesses_replay() {
        let good = Witness::Numbering { tree: "0 1\n1 2\n".into(), numbering: "0 1 1\n1 2 2\n".into() };
        assert_eq!(good.replay(), Ok(true));
        let spider = "0 1\n1 2\n0 3\n3 4\n".to_string();
        let violation = Violation::NumberingPair { k: 2, j: 1, path: vec![1] };
        let bad =
            Witness::NumberingViolation { tree: spider, numbering: "0 1 1\n1 2 2\n0 3 3\n3 4 4\n".into(), violation };
        assert_eq!(bad.replay(), Ok(true));
        let pair = Witness::SubtreePair {
            tree: "0 1\n0 2\n0 3\n".into(),
            e1: vec![(0, 1), (0, 2)],
            e2: vec![(0, 2), (0, 3)],
            shared: (0, 2),
        };
        assert_eq!(pair.replay(), Ok(true));
    }

    #[test]
    fn report_json_has_schema() {
        let json = serde_json::to_value(RunReport::new("enumerate")).unwrap();
        assert_eq!(json["schema"], "tree-amity/1");
    }
}
