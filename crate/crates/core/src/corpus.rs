//! Free-tree corpora: exhaustive generation, canonical codes and graph6 interchange.

use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::Tree;

pub const MAX_ENUMERATION_ORDER: usize = 16;

/// AHU parenthesis string of a tree rooted at a centroid (the smaller of the two
/// rootings for bicentroidal trees). Equal codes iff isomorphic trees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Rooted AHU encoding: `(` + sorted child codes + `)`.
fn rooted_code(tree: &Tree, root: usize) -> String {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in tree.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    let mut child_codes: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut code = vec![String::new(); n];
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[u]);
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        if u == root {
            code[u] = s;
        } else {
            child_codes[parent[u]].push(s);
        }
    }
    std::mem::take(&mut code[root])
}

/// Vertices whose removal leaves components of at most `n/2` vertices.
pub fn centroids(tree: &Tree) -> Vec<usize> {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in tree.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev() {
        if u != 0 {
            size[parent[u]] += size[u];
        }
    }
    (0..n)
        .filter(|&u| {
            let largest_child = tree
                .neighbors(u)
                .iter()
                .filter(|&&v| v != u && parent[v] == u)
                .map(|&v| size[v])
                .max()
                .unwrap_or(0);
            let above = n - size[u];
            2 * largest_child.max(above) <= n
        })
        .collect()
}

pub fn canonical_code(tree: &Tree) -> CanonicalCode {
    let code =
        centroids(tree).into_iter().map(|c| rooted_code(tree, c)).min().expect("every tree has a centroid");
    CanonicalCode(code)
}

/// Builds the tree whose preorder depths are `levels` (root at depth 0).
fn tree_from_levels(levels: &[usize]) -> Tree {
    let n = levels.len();
    let mut adj = vec![Vec::new(); n];
    let mut last_at_depth: Vec<usize> = Vec::with_capacity(n);
    for (i, &d) in levels.iter().enumerate() {
        last_at_depth.truncate(d);
        if d > 0 {
            let p = last_at_depth[d - 1];
            adj[p].push(i);
            adj[i].push(p);
        }
        last_at_depth.push(i);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Tree::from_sorted_adjacency(adj).expect("level sequences describe trees")
}

/// Every non-isomorphic free tree of one order, in a fixed order.
///
/// Rooted trees are walked in canonical level-sequence order (each successor
/// copies the subtree of the last non-leaf-depth position's parent forward);
/// a rooted tree is kept only when its root is a centroid and, for
/// bicentroidal trees, when its rooting yields the smaller code.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    levels: Option<Vec<usize>>,
}

impl FreeTrees {
    fn advance(levels: &mut [usize]) -> bool {
        let Some(p) = levels.iter().rposition(|&d| d > 1) else {
            return false;
        };
        let q = levels[..p]
            .iter()
            .rposition(|&d| d == levels[p] - 1)
            .expect("a deeper vertex has a parent before it");
        let gap = p - q;
        for i in p..levels.len() {
            levels[i] = levels[i - gap];
        }
        true
    }

    fn keep(tree: &Tree) -> bool {
        let cs = centroids(tree);
        if !cs.contains(&0) {
            return false;
        }
        match cs.iter().find(|&&c| c != 0) {
            None => true,
            Some(&other) => rooted_code(tree, 0) <= rooted_code(tree, other),
        }
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        loop {
            let current = self.levels.take()?;
            let mut succ = current.clone();
            if Self::advance(&mut succ) {
                self.levels = Some(succ);
            }
            let tree = tree_from_levels(&current);
            if Self::keep(&tree) {
                return Some(tree);
            }
        }
    }
}

/// Streams one representative per isomorphism class of trees on `n` vertices.
pub fn enumerate_trees(n: usize) -> Result<FreeTrees> {
    if n == 0 {
        return Err(Error::Precondition("tree order must be at least 1".into()));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge(format!(
            "enumeration limited to order {MAX_ENUMERATION_ORDER}, asked for {n}"
        )));
    }
    Ok(FreeTrees { levels: Some((0..n).collect()) })
}

/// All trees of order `1..=n_max`, smallest order first.
pub fn enumerate_up_to(n_max: usize) -> Result<Vec<Tree>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_trees(n)?);
    }
    Ok(out)
}

const GRAPH6_HEADER: &str = ">>graph6<<";

fn malformed(offset: usize, reason: impl Into<String>) -> Error {
    Error::MalformedGraph6 { offset, reason: reason.into() }
}

/// graph6 text for an `n`-vertex graph with the given edges.
pub fn encode_edges(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut adjacent = vec![false; n * n];
    for &(u, v) in edges {
        adjacent[u * n + v] = true;
        adjacent[v * n + u] = true;
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(adjacent[i * n + j]);
        }
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (pos, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - pos);
            }
        }
        out.push((byte + 63) as char);
    }
    out
}

pub fn graph6_encode(graph: &Graph) -> String {
    encode_edges(graph.order(), &graph.edges())
}

pub fn tree_to_graph6(tree: &Tree) -> String {
    encode_edges(tree.order(), &tree.edges())
}

/// Order and edge list of one graph6 line. A leading `>>graph6<<` and trailing
/// line terminators are ignored; non-canonical size fields and non-zero
/// padding bits are rejected.
pub fn decode_edges(line: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let trimmed = line.trim_end_matches(['\n', '\r']);
    let (start, body) = match trimmed.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if let Some(i) = body.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(malformed(start + i, format!("byte 0x{:02x} outside 63..=126", body[i])));
    }
    if body.is_empty() {
        return Err(malformed(start, "empty line"));
    }
    let field = |from: usize, count: usize| -> Result<usize> {
        if body.len() < from + count {
            return Err(malformed(start + body.len(), "truncated size field"));
        }
        Ok(body[from..from + count].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, mut pos) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else if body.get(1) != Some(&126) {
        let n = field(1, 3)?;
        if n <= 62 {
            return Err(malformed(start, format!("order {n} must use the one-byte size field")));
        }
        (n, 4)
    } else {
        let n = field(2, 6)?;
        if n <= 258_047 {
            return Err(malformed(start, format!("order {n} must use the four-byte size field")));
        }
        (n, 8)
    };
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    let data = &body[pos..];
    if data.len() != expected {
        let at = start + pos + data.len().min(expected);
        return Err(malformed(
            at,
            format!("expected {expected} adjacency bytes for order {n}, found {}", data.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - 63;
            if byte & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    if let Some(&last) = data.last() {
        let used = bit_count - (expected - 1) * 6;
        let pad_mask = (1u8 << (6 - used)) - 1;
        if (last - 63) & pad_mask != 0 {
            pos += data.len() - 1;
            return Err(malformed(start + pos, "non-zero padding bits"));
        }
    }
    Ok((n, edges))
}

/// Decodes a simple connected graph.
pub fn graph6_decode(line: &str) -> Result<Graph> {
    let (n, edges) = decode_edges(line)?;
    Graph::from_edges(n, &edges)
}

pub fn tree_from_graph6(line: &str) -> Result<Tree> {
    let (n, edges) = decode_edges(line)?;
    Tree::from_edges(n, &edges)
}

/// Non-empty lines of a graph6 stream, with their 1-based line numbers.
pub fn graph6_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(Ok((i + 1, l.trim_end().to_string()))),
        Err(e) => Some(Err(Error::Io(e))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::FamilySpec;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| enumerate_trees(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(enumerate_trees(0), Err(Error::Precondition(_))));
        assert!(matches!(enumerate_trees(17), Err(Error::TooLarge(_))));
    }

    #[test]
    fn enumeration_is_deterministic_and_distinct() {
        let a: Vec<String> = enumerate_trees(9).unwrap().map(|t| tree_to_graph6(&t)).collect();
        let b: Vec<String> = enumerate_trees(9).unwrap().map(|t| tree_to_graph6(&t)).collect();
        assert_eq!(a, b);
        let mut codes: Vec<_> = enumerate_trees(9).unwrap().map(|t| canonical_code(&t)).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 47);
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let p4 = FamilySpec::Path { n: 4 }.generate_tree().unwrap();
        let reference = canonical_code(&p4);
        let mut perm: Vec<usize> = (0..4).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..24 {
            perm.shuffle(&mut rng);
            assert_eq!(canonical_code(&p4.relabel(&perm).unwrap()), reference);
        }
        let star = FamilySpec::Star { m: 3 }.generate_tree().unwrap();
        assert_ne!(canonical_code(&star), reference);

        let spider = FamilySpec::Starlike { m: 3, l: 2 }.generate_tree().unwrap();
        let code = canonical_code(&spider);
        let mut perm: Vec<usize> = (0..7).collect();
        for _ in 0..20 {
            perm.shuffle(&mut rng);
            assert_eq!(canonical_code(&spider.relabel(&perm).unwrap()), code);
        }
    }

    #[test]
    fn graph6_examples() {
        let k4 = graph6_decode("C~").unwrap();
        assert_eq!(k4.order(), 4);
        assert_eq!(k4.edge_count(), 6);
        let p2 = FamilySpec::Path { n: 2 }.generate_tree().unwrap();
        assert_eq!(tree_to_graph6(&p2), "A_");
        assert_eq!(graph6_encode(&k4), "C~");
        assert_eq!(graph6_decode(">>graph6<<C~\n").unwrap(), k4);
    }

    #[test]
    fn graph6_large_order_header() {
        let p = FamilySpec::Path { n: 70 }.generate_tree().unwrap();
        let line = tree_to_graph6(&p);
        assert!(line.starts_with('~'));
        assert_eq!(tree_from_graph6(&line).unwrap(), p);
    }

    #[test]
    fn graph6_errors() {
        for (line, offset) in [("", 0), ("C~~", 2), ("C", 1), ("C\u{7f}", 1), ("A`", 1), ("~?@", 3)] {
            match decode_edges(line) {
                Err(Error::MalformedGraph6 { offset: o, .. }) => assert_eq!(o, offset, "{line:?}"),
                other => panic!("{line:?}: {other:?}"),
            }
        }
        // non-canonical long header for a small order
        assert!(matches!(decode_edges("~??D"), Err(Error::MalformedGraph6 { .. })));
        // disconnected: valid graph6, invalid Graph
        assert!(matches!(graph6_decode("C?"), Err(Error::InvalidGraph(_))));
        assert!(matches!(tree_from_graph6("C~"), Err(Error::NotATree(_))));
    }

    #[test]
    fn graph6_lines_skip_blanks() {
        let text = "A_\n\nC~\r\n";
        let lines: Vec<_> = graph6_lines(text.as_bytes()).map(Result::unwrap).collect();
        assert_eq!(lines, vec![(1, "A_".to_string()), (3, "C~".to_string())]);
    }
}
