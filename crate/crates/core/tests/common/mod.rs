//! Brute-force reference implementations shared by the integration tests.
//! None of these reuse the library's path, hook or canonical-form code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use tree_amity::Tree;

/// Edge list of the labeled tree encoded by a Prüfer sequence on `n` vertices.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Every labeled tree on `m + 1` vertices, via Prüfer sequences, in
/// sequence order.
pub fn labeled_trees(m: usize) -> impl Iterator<Item = Tree> {
    let n = m + 1;
    let len = n.saturating_sub(2);
    let total = if n <= 2 { 1 } else { n.pow(len as u32) };
    (0..total).map(move |mut code| match n {
        1 => Tree::single_vertex(),
        2 => Tree::path(1),
        _ => {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            Tree::from_edges(n, &prufer_decode(&seq, n)).unwrap()
        }
    })
}

pub fn all_labeled_trees(m: usize) -> Vec<Tree> {
    labeled_trees(m).collect()
}

/// Isomorphism classes among all labeled trees with `m` edges, as a set of
/// canonical codes.
pub fn prufer_classes(m: usize) -> HashSet<String> {
    labeled_trees(m).map(|t| t.canonical_code()).collect()
}

/// Isomorphism by trying every vertex permutation.
pub fn brute_isomorphic(a: &Tree, b: &Tree) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    let target: HashSet<(usize, usize)> = b.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges().iter().all(|&(u, v)| {
            let (x, y) = (perm[u], perm[v]);
            target.contains(&(x.min(y), x.max(y)))
        }) {
            return true;
        }
        if !tree_amity::search::next_permutation(&mut perm) {
            return false;
        }
    }
}

fn bfs_parents(t: &Tree, source: usize) -> Vec<Option<(usize, usize)>> {
    let n = t.vertex_count();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for (i, &(a, b)) in t.edges().iter().enumerate() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, i));
                queue.push_back(w);
            }
        }
    }
    parent
}

/// Edge indices on the vertex path from `u` to `v`, by BFS.
pub fn bfs_vertex_path(t: &Tree, u: usize, v: usize) -> Vec<usize> {
    let parent = bfs_parents(t, u);
    let mut out = Vec::new();
    let mut x = v;
    while x != u {
        let (p, e) = parent[x].unwrap();
        out.push(e);
        x = p;
    }
    out
}

/// Edges strictly between edges `a` and `b`: the shortest vertex path over
/// the four endpoint pairs.
pub fn bfs_edge_path(t: &Tree, a: usize, b: usize) -> BTreeSet<usize> {
    let (a0, a1) = t.edges()[a];
    let (b0, b1) = t.edges()[b];
    [(a0, b0), (a0, b1), (a1, b0), (a1, b1)]
        .iter()
        .map(|&(x, y)| bfs_vertex_path(t, x, y))
        .min_by_key(Vec::len)
        .unwrap()
        .into_iter()
        .collect()
}

/// Direct reading of the definition: for every `k`, every aligned pair
/// `{k + 2s, k + 2s + 1}` meets the path between edges `k` and `k + 1` in
/// both or neither of its members (a number outside `1..=m` is never on it).
/// `numbers[e]` is the number of edge `e`.
pub fn naive_friendly_numbering(t: &Tree, numbers: &[usize]) -> bool {
    let m = numbers.len();
    let mut edge_of = vec![0; m + 1];
    for (e, &k) in numbers.iter().enumerate() {
        edge_of[k] = e;
    }
    for k in 1..m {
        let path: BTreeSet<usize> = bfs_edge_path(t, edge_of[k], edge_of[k + 1]).iter().map(|&e| numbers[e]).collect();
        let lowest = if k % 2 == 0 { 0 } else { 1 };
        let mut a = lowest as i64;
        while a <= m as i64 {
            let on = |j: i64| j >= 1 && j <= m as i64 && path.contains(&(j as usize));
            if on(a) != on(a + 1) {
                return false;
            }
            a += 2;
        }
    }
    true
}

/// True when the path between some two edges of `p` carries an odd number
/// of `q` edges, or when the sets meet.
fn naive_hooks(t: &Tree, p: &BTreeSet<usize>, q: &BTreeSet<usize>) -> bool {
    if !p.is_disjoint(q) {
        return true;
    }
    let edges: Vec<usize> = p.iter().copied().collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if bfs_edge_path(t, edges[i], edges[j]).intersection(q).count() % 2 == 1 {
                return true;
            }
        }
    }
    false
}

/// Direct reading of the general definition; `map[e]` is the image of
/// source edge `e`.
pub fn naive_friendly_bijection(source: &Tree, target: &Tree, map: &[usize]) -> bool {
    let n = source.vertex_count();
    let image = |v: usize| -> BTreeSet<usize> {
        source.edges().iter().enumerate().filter(|(_, &(a, b))| a == v || b == v).map(|(e, _)| map[e]).collect()
    };
    for p in 0..n {
        for q in p + 1..n {
            if bfs_vertex_path(source, p, q).len() % 2 == 1 {
                continue;
            }
            let (ip, iq) = (image(p), image(q));
            if naive_hooks(target, &ip, &iq) || naive_hooks(target, &iq, &ip) {
                return false;
            }
        }
    }
    true
}

/// Degree-3+ vertices all lie on one path: their spanning subtree, obtained
/// by trimming leaves that are not required, has maximum degree at most 2.
pub fn branch_vertices_on_a_path(t: &Tree) -> bool {
    let n = t.vertex_count();
    let required: Vec<bool> = (0..n).map(|v| t.degree(v) >= 3).collect();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    while let Some(v) = (0..n).find(|&v| alive[v] && !required[v] && degree[v] <= 1) {
        alive[v] = false;
        for &(a, b) in t.edges() {
            if a == v && alive[b] {
                degree[b] -= 1;
            } else if b == v && alive[a] {
                degree[a] -= 1;
            }
        }
    }
    (0..n).all(|v| !alive[v] || degree[v] <= 2)
}

/// All permutations of `0..m` as numbering vectors `1..=m`.
pub fn all_numberings(m: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (1..=m).collect();
    let mut out = vec![perm.clone()];
    let mut idx: Vec<usize> = (0..m).collect();
    while tree_amity::search::next_permutation(&mut idx) {
        perm = idx.iter().map(|&i| i + 1).collect();
        out.push(perm.clone());
    }
    out
}
