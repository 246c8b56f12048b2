//! Independent reference implementations shared by the integration targets.
#![allow(dead_code)]

use std::collections::HashSet;

use proptest::prelude::*;
use steiner_kit::Tree;

/// Edges of the labeled tree with Prüfer sequence `seq` on `seq.len() + 2` vertices.
pub fn prufer_edges(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub fn prufer_tree(seq: &[usize]) -> Tree {
    Tree::from_edges(seq.len() + 2, &prufer_edges(seq)).unwrap()
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Binary encoding of the tree rooted at `root`: `1` + sorted children + `0`.
fn rooted_form(adj: &[Vec<usize>], root: usize, parent: usize) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> =
        adj[root].iter().filter(|&&c| c != parent).map(|&c| rooted_form(adj, c, root)).collect();
    kids.sort();
    let mut out = vec![1];
    for k in kids {
        out.extend(k);
    }
    out.push(0);
    out
}

/// Isomorphism invariant that does not rely on centroids: the least rooted
/// form over every possible root.
pub fn all_roots_form(n: usize, edges: &[(usize, usize)]) -> Vec<u8> {
    let adj = adjacency(n, edges);
    (0..n).map(|r| rooted_form(&adj, r, usize::MAX)).min().unwrap()
}

/// Number of isomorphism classes of trees on `n` vertices, found by decoding
/// every Prüfer sequence and deduplicating.
pub fn prufer_class_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut seen = HashSet::new();
    loop {
        seen.insert(all_roots_form(n, &prufer_edges(&seq)));
        let mut i = len;
        loop {
            if i == 0 {
                return seen.len();
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Random labeled tree of order `2..=max_n`.
pub fn arb_tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (2..=max_n).prop_flat_map(|n| proptest::collection::vec(0..n, n - 2).prop_map(|seq| prufer_tree(&seq)))
}

/// Random tree together with a random permutation of its vertices.
pub fn arb_tree_and_perm(max_n: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    arb_tree(max_n).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}
