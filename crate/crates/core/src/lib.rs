//! Friendly edge numberings of trees and friendly bijections between trees.
//!
//! A numbering of the edges of a tree by `1..=m` is friendly when, for every
//! `k`, the path between edges `k` and `k + 1` holds both or neither edge of
//! each pair `{k + 2s, k + 2s + 1}`. More generally an edge bijection between
//! two trees is friendly when the images of the coboundaries of any two source
//! vertices at even distance are unlinked in the target.

pub mod amity;
pub mod cb;
pub mod cli;
pub mod enumerate;
pub mod parity;
pub mod report;
pub mod search;
pub mod sweep;
pub mod tree;
pub mod trunk;

pub use amity::{check_friendly_bijection, check_friendly_numbering, EdgeBijection, Numbering, Violation};
pub use tree::{parse_labeled_tree, parse_tree, EdgeId, EdgeSet, LabeledTree, Tree, TreeError, VertexId};
