//! Labeled trees and the metric queries every Steiner parameter is built on.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Fails with `BadVertex` on the first id that is not below `n`.
    pub fn check_bounds(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&v| v >= n) {
            Some(&vertex) => Err(Error::BadVertex { vertex, n }),
            None => Ok(()),
        }
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Immutable labeled tree on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

/// Diameter, one diametrical path, the center and the depth of every branch hanging off it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterProfile {
    pub diameter: usize,
    /// `u_0 .. u_d`.
    pub path: Vec<usize>,
    /// One center when the diameter is even, two adjacent centers otherwise. Sorted.
    pub centers: Vec<usize>,
    pub branches: Vec<CenterBranches>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterBranches {
    pub center: usize,
    pub branches: Vec<Branch>,
}

/// A component hanging off a center, identified by the center's neighbor `root`.
/// `depth` is the largest distance from the center to a vertex of the branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub root: usize,
    pub depth: usize,
}

impl CenterProfile {
    pub fn radius(&self) -> usize {
        self.diameter.div_ceil(2)
    }

    /// `u_{⌊d/2⌋ + offset}` for a signed offset, if it lies on the path.
    pub fn path_vertex(&self, offset: isize) -> Option<usize> {
        let idx = (self.diameter / 2) as isize + offset;
        if idx < 0 {
            return None;
        }
        self.path.get(idx as usize).copied()
    }
}

/// The minimal subtree spanning a terminal set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerWitness {
    pub value: usize,
    /// Sorted `(min, max)` pairs.
    pub edges: Vec<(usize, usize)>,
}

impl Tree {
    /// Builds a tree on `n` vertices, rejecting anything that is not a tree.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::NotATree("order must be at least 1".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::NotATree(format!("edge {u}-{v} has an id outside 0..{n}")));
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::NotATree(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree { adj };
        tree.validate()?;
        Ok(tree)
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Result<Tree> {
        let tree = Tree { adj };
        tree.validate()?;
        Ok(tree)
    }

    /// Checks every structural invariant: symmetric loop-free adjacency, `n - 1` edges, connected.
    pub fn validate(&self) -> Result<()> {
        let n = self.adj.len();
        if n == 0 {
            return Err(Error::NotATree("order must be at least 1".into()));
        }
        let mut degree_sum = 0;
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(Error::NotATree(format!("neighbor {v} of {u} out of range")));
                }
                if v == u {
                    return Err(Error::NotATree(format!("self-loop at {u}")));
                }
                if !self.adj[v].contains(&u) {
                    return Err(Error::NotATree(format!("asymmetric adjacency {u}->{v}")));
                }
            }
            degree_sum += list.len();
        }
        let dist = self.distances_from(0);
        if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(Error::NotATree(format!("disconnected: vertex {v} unreachable from 0")));
        }
        let edges = degree_sum / 2;
        if edges != n - 1 {
            return Err(Error::NotATree(format!("cycle: {edges} edges on {n} vertices")));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.len() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    /// Pendant vertices, ascending.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.order()).filter(|&v| self.is_leaf(v)).count()
    }

    /// Sorted `(min, max)` edge list.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.order().saturating_sub(1));
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    /// Applies `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree> {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(self.order(), &edges)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::BadVertex { vertex: v, n: self.order() })
        }
    }

    /// BFS distances; unreachable vertices get `usize::MAX` (only during validation).
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distances_from(u)[v])
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        self.distances_from(v).into_iter().max().unwrap_or(0)
    }

    /// Farthest vertex from `source`, smallest id on ties, with the BFS parent array.
    fn farthest_from(&self, source: usize) -> (usize, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.order()];
        let mut parent = vec![usize::MAX; self.order()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut best = source;
        for v in 0..self.order() {
            if dist[v] > dist[best] {
                best = v;
            }
        }
        (best, parent)
    }

    /// Double BFS from vertex 0; the diametrical path starts at its smaller endpoint.
    pub fn center_profile(&self) -> CenterProfile {
        let (start, _) = self.farthest_from(0);
        let (end, parent) = self.farthest_from(start);
        let mut path = vec![end];
        let mut cur = end;
        while cur != start {
            cur = parent[cur];
            path.push(cur);
        }
        if start < end {
            path.reverse();
        }
        let d = path.len() - 1;

        let mut centers = if d % 2 == 0 { vec![path[d / 2]] } else { vec![path[d / 2], path[d / 2 + 1]] };
        centers.sort_unstable();

        let branches = centers
            .iter()
            .map(|&c| {
                let other = centers.iter().copied().find(|&o| o != c);
                let branches = self.adj[c]
                    .iter()
                    .filter(|&&nb| Some(nb) != other)
                    .map(|&nb| Branch { root: nb, depth: 1 + self.height_away_from(nb, c) })
                    .collect();
                CenterBranches { center: c, branches }
            })
            .collect();

        CenterProfile { diameter: d, path, centers, branches }
    }

    /// Height of the component containing `root` once the edge to `blocked` is removed.
    fn height_away_from(&self, root: usize, blocked: usize) -> usize {
        self.branch_vertices(root, blocked).into_iter().map(|(_, depth)| depth).max().unwrap_or(0)
    }

    /// Vertices of the branch entered through `root` from `blocked`, with depth below `root`.
    pub(crate) fn branch_vertices(&self, root: usize, blocked: usize) -> Vec<(usize, usize)> {
        let mut out = vec![(root, 0)];
        let mut stack = vec![(root, blocked, 0)];
        while let Some((u, from, depth)) = stack.pop() {
            for &v in &self.adj[u] {
                if v != from {
                    out.push((v, depth + 1));
                    stack.push((v, u, depth + 1));
                }
            }
        }
        out
    }

    /// Marks the vertices of the minimal subtree spanning `terminals` by pruning non-terminal leaves.
    pub(crate) fn spanning_mask(&self, terminals: &[usize]) -> Vec<bool> {
        let n = self.order();
        let mut is_terminal = vec![false; n];
        for &t in terminals {
            is_terminal[t] = true;
        }
        let mut keep = vec![true; n];
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1 && !is_terminal[v]).collect();
        while let Some(v) = stack.pop() {
            keep[v] = false;
            for &u in &self.adj[v] {
                if keep[u] {
                    deg[u] -= 1;
                    if deg[u] == 1 && !is_terminal[u] {
                        stack.push(u);
                    }
                }
            }
        }
        keep
    }

    /// Steiner distance without bounds checks or witness construction. `terminals` non-empty.
    pub(crate) fn steiner_value(&self, terminals: &[usize]) -> usize {
        debug_assert!(!terminals.is_empty());
        self.spanning_mask(terminals).into_iter().filter(|&k| k).count() - 1
    }

    pub fn steiner_distance(&self, set: &VertexSet) -> Result<SteinerWitness> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        set.check_bounds(self.order())?;
        let keep = self.spanning_mask(set.as_slice());
        let edges: Vec<_> = self.edges().into_iter().filter(|&(u, v)| keep[u] && keep[v]).collect();
        Ok(SteinerWitness { value: edges.len(), edges })
    }

    /// Distance inside `T_S` from the leaf `v` to the nearest vertex of degree at least 3 in `T_S`.
    pub fn leaf_branch_length(&self, set: &VertexSet, v: usize) -> Result<usize> {
        set.check_bounds(self.order())?;
        self.check_vertex(v)?;
        if set.len() < 3 {
            return Err(Error::Precondition(format!(
                "leaf branch length needs at least 3 terminals, got {}",
                set.len()
            )));
        }
        if self.leaf_count() < 3 {
            return Err(Error::Precondition("tree has fewer than 3 pendant vertices".into()));
        }
        if let Some(bad) = set.iter().find(|&u| !self.is_leaf(u)) {
            return Err(Error::Precondition(format!("terminal {bad} is not a pendant vertex")));
        }
        if !set.contains(v) {
            return Err(Error::Precondition(format!("vertex {v} is not a terminal")));
        }
        let keep = self.spanning_mask(set.as_slice());
        let inner_degree = |u: usize| self.adj[u].iter().filter(|&&w| keep[w]).count();
        let (mut prev, mut cur, mut len) = (usize::MAX, v, 0);
        while inner_degree(cur) < 3 {
            let next = self.adj[cur]
                .iter()
                .copied()
                .find(|&w| keep[w] && w != prev)
                .expect("a spanning subtree of three or more leaves has a branching vertex");
            prev = cur;
            cur = next;
            len += 1;
        }
        Ok(len)
    }
}
