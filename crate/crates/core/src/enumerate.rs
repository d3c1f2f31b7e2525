//! Free trees up to isomorphism, generated as rooted level sequences and
//! filtered down to one rooting per free tree.

use crate::tree::Tree;

/// Rooted level sequences in reverse lexicographic order, starting from the
/// path and ending at the star.
#[derive(Clone, Debug)]
pub struct LevelSequences {
    levels: Vec<usize>,
    done: bool,
}

impl LevelSequences {
    pub fn new(vertex_count: usize) -> Self {
        LevelSequences { levels: (0..vertex_count).collect(), done: vertex_count == 0 }
    }

    fn advance(&mut self) {
        let l = &mut self.levels;
        let Some(p) = (0..l.len()).rev().find(|&i| l[i] > 1) else {
            self.done = true;
            return;
        };
        let q = (0..p).rev().find(|&i| l[i] == l[p] - 1).unwrap();
        for i in p..l.len() {
            l[i] = l[i - (p - q)];
        }
    }
}

impl Iterator for LevelSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.levels.clone();
        self.advance();
        Some(out)
    }
}

/// Deterministic stream of all free trees with a fixed edge count.
#[derive(Clone, Debug)]
pub struct FreeTrees {
    edge_count: usize,
    inner: LevelSequences,
}

impl FreeTrees {
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        for levels in self.inner.by_ref() {
            let t = Tree::from_level_sequence(&levels);
            if t.rooted_code(0) == t.canonical_code() {
                return Some(t);
            }
        }
        None
    }
}

/// One representative per isomorphism class of trees with `m` edges.
pub fn enumerate_free_trees(m: usize) -> FreeTrees {
    FreeTrees { edge_count: m, inner: LevelSequences::new(m + 1) }
}

/// Free trees with 1..=max_edges edges, smallest first.
pub fn free_trees_up_to(max_edges: usize) -> Vec<Tree> {
    (1..=max_edges).flat_map(enumerate_free_trees).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn known_counts() {
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235];
        for (m, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_free_trees(m).count(), count, "m = {m}");
        }
    }

    #[test]
    fn rooted_counts() {
        // rooted trees on n vertices
        let expected = [1, 1, 2, 4, 9, 20, 48];
        for (i, &count) in expected.iter().enumerate() {
            assert_eq!(LevelSequences::new(i + 1).count(), count);
        }
    }

    #[test]
    fn distinct_and_valid() {
        for m in 0..=9 {
            let mut codes = HashSet::new();
            for t in enumerate_free_trees(m) {
                assert_eq!(t.edge_count(), m);
                assert!(codes.insert(t.canonical_code()));
            }
        }
    }

    #[test]
    fn includes_path_and_star() {
        let all: Vec<Tree> = enumerate_free_trees(5).collect();
        assert!(all.iter().any(|t| t.is_isomorphic(&Tree::path(5))));
        assert!(all.iter().any(|t| t.is_isomorphic(&Tree::star(5))));
    }
}
