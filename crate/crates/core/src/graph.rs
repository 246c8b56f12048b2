//! General small graphs and the exact oracle used to cross-check everything tree-specific.
//!
//! Steiner distances come from the Dreyfus–Wagner dynamic program over
//! (terminal subset, root vertex) pairs with unit edge weights. All brute-force
//! parameters enumerate terminal sets on top of it and trip a hard guard rather
//! than approximate when an instance is too large.

use std::collections::{BTreeMap, HashMap, VecDeque};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::closed_forms::BoundName;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tree::{Tree, VertexSet};
use crate::verify::{Instance, Relation, Verdict};

pub const MAX_ORDER: usize = 20;
pub const MAX_TERMINALS: usize = 12;
pub const MAX_SUBSETS: u128 = 1_000_000;

/// Simple connected graph on `0..n` with unit edge weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let g = Graph::from_edges_unchecked(n, edges)?;
        if let Some(v) = g.bfs(0).iter().position(|&d| d == usize::MAX) {
            return Err(Error::InvalidGraph(format!("vertex {v} unreachable from 0")));
        }
        Ok(g)
    }

    /// Simplicity checks only; connectivity is left to the caller.
    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidGraph("order must be at least 1".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} outside 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn to_tree(&self) -> Result<Tree> {
        Tree::from_edges(self.order(), &self.edges())
    }

    fn bfs(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
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

    pub fn all_pairs_distances(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|v| self.bfs(v)).collect()
    }
}

impl From<&Tree> for Graph {
    fn from(t: &Tree) -> Self {
        Graph::from_edges(t.order(), &t.edges()).expect("trees are simple and connected")
    }
}

const INF: usize = usize::MAX / 4;

/// Dreyfus–Wagner over a precomputed distance matrix. The last terminal acts as root.
fn dreyfus_wagner(dist: &[Vec<usize>], terminals: &[usize]) -> usize {
    if terminals.len() <= 1 {
        return 0;
    }
    let n = dist.len();
    let (&root, rest) = terminals.split_last().expect("non-empty");
    let m = rest.len();
    let full = (1usize << m) - 1;
    let mut dp = vec![vec![INF; n]; full + 1];
    for (i, &t) in rest.iter().enumerate() {
        dp[1 << i].clone_from(&dist[t]);
    }
    let mut merged = vec![INF; n];
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        for (v, slot) in merged.iter_mut().enumerate() {
            let mut best = INF;
            // each unordered split once: the part holding the lowest bit
            let low = mask & mask.wrapping_neg();
            let mut sub = (mask - 1) & mask;
            while sub > 0 {
                if sub & low != 0 {
                    best = best.min(dp[sub][v] + dp[mask ^ sub][v]);
                }
                sub = (sub - 1) & mask;
            }
            *slot = best;
        }
        for v in 0..n {
            dp[mask][v] = (0..n).map(|u| merged[u] + dist[u][v]).min().unwrap_or(INF);
        }
    }
    dp[full][root]
}

/// Exact Steiner distance of `set` in `graph`.
pub fn dw_steiner(graph: &Graph, set: &VertexSet) -> Result<usize> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    set.check_bounds(graph.order())?;
    guard_order(graph)?;
    if set.len() > MAX_TERMINALS {
        return Err(Error::TooLarge(format!("{} terminals exceeds the limit of {MAX_TERMINALS}", set.len())));
    }
    Ok(dreyfus_wagner(&graph.all_pairs_distances(), set.as_slice()))
}

fn guard_order(graph: &Graph) -> Result<()> {
    if graph.order() > MAX_ORDER {
        return Err(Error::TooLarge(format!(
            "order {} exceeds the oracle limit of {MAX_ORDER}",
            graph.order()
        )));
    }
    Ok(())
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn guard_subsets(count: u128, what: &str) -> Result<()> {
    if count > MAX_SUBSETS {
        return Err(Error::TooLarge(format!("{what} needs {count} terminal sets, limit {MAX_SUBSETS}")));
    }
    Ok(())
}

/// Memoized Steiner distances on one graph, keyed by vertex bitmask.
struct SteinerTable {
    dist: Vec<Vec<usize>>,
    memo: HashMap<u32, usize>,
}

impl SteinerTable {
    fn new(graph: &Graph) -> Self {
        SteinerTable { dist: graph.all_pairs_distances(), memo: HashMap::new() }
    }

    fn value(&mut self, set: &[usize]) -> usize {
        let key = set.iter().fold(0u32, |m, &v| m | (1 << v));
        let dist = &self.dist;
        *self.memo.entry(key).or_insert_with(|| dreyfus_wagner(dist, set))
    }

    /// Maximum over `k`-supersets of `base`; first maximizer in lexicographic order.
    fn ecc(&mut self, base: &[usize], k: usize) -> (usize, Vec<usize>) {
        let n = self.dist.len();
        let rest: Vec<usize> = (0..n).filter(|v| !base.contains(v)).collect();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for extra in rest.into_iter().combinations(k - base.len()) {
            let mut set: Vec<usize> = base.iter().copied().chain(extra).collect();
            set.sort_unstable();
            let value = self.value(&set);
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, set));
            }
        }
        best.expect("k <= n")
    }
}

fn check_ranges(graph: &Graph, k: usize, kprime: usize) -> Result<()> {
    if k < 2 || k > graph.order() || kprime < 1 || kprime > k {
        return Err(Error::bad_k(format!(
            "need 2 <= k = {k} <= n = {} and 1 <= k' = {kprime} <= k",
            graph.order()
        )));
    }
    if k > MAX_TERMINALS {
        return Err(Error::TooLarge(format!("k = {k} exceeds the terminal limit {MAX_TERMINALS}")));
    }
    guard_order(graph)
}

/// Steiner k-diameter by enumerating every k-subset.
pub fn brute_sd_k(graph: &Graph, k: usize) -> Result<(usize, VertexSet)> {
    check_ranges(graph, k, 1)?;
    guard_subsets(binomial(graph.order(), k), "Sd_k")?;
    let mut table = SteinerTable::new(graph);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for set in (0..graph.order()).combinations(k) {
        let value = table.value(&set);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, set));
        }
    }
    let (v, s) = best.expect("k <= n");
    Ok((v, VertexSet::new(s)))
}

/// Steiner (k,k')-eccentricity of `base` by enumeration.
pub fn brute_ecc_kk(graph: &Graph, base: &VertexSet, k: usize) -> Result<(usize, VertexSet)> {
    base.check_bounds(graph.order())?;
    check_ranges(graph, k, base.len().max(1))?;
    if base.is_empty() {
        return Err(Error::EmptySet);
    }
    guard_subsets(binomial(graph.order() - base.len(), k - base.len()), "ecc_kk")?;
    let mut table = SteinerTable::new(graph);
    let (v, s) = table.ecc(base.as_slice(), k);
    Ok((v, VertexSet::new(s)))
}

/// Steiner (k,k')-radius by double enumeration; returns the first minimizing `k'`-set.
pub fn brute_sr_kk(graph: &Graph, k: usize, kprime: usize) -> Result<(usize, VertexSet)> {
    check_ranges(graph, k, kprime)?;
    let n = graph.order();
    guard_subsets(binomial(n, kprime) * binomial(n - kprime, k - kprime), "Sr_{k,k'}")?;
    let mut table = SteinerTable::new(graph);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for base in (0..n).combinations(kprime) {
        let (value, _) = table.ecc(&base, k);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, base));
        }
    }
    let (v, s) = best.expect("k' <= n");
    Ok((v, VertexSet::new(s)))
}

/// Checks `Sd_k <= c(k) Sr_k` for general graphs: the `2(k+1)/(2k-1)` form for
/// `k <= 4` and the `(k+3)/(k+1)` form from `k = 5` on.
pub fn check_general_bounds(graph: &Graph, k: usize) -> Result<Verdict> {
    let (sd, sd_set) = brute_sd_k(graph, k)?;
    let (sr, sr_set) = brute_sr_kk(graph, k, 1)?;
    let bound = if k <= 4 { BoundName::GeneralHos } else { BoundName::GeneralReiswig };
    let rhs = crate::closed_forms::bound_value(bound, k, 1, sr as i64)?;
    let mut witnesses = BTreeMap::new();
    witnesses.insert("sd_k".to_string(), sd_set);
    witnesses.insert("sr_k".to_string(), sr_set);
    Ok(Verdict::new(
        bound.name(),
        Instance::for_graph(graph, k, Some(1)),
        Relation::Le,
        Rational::from(sd),
        rhs,
        witnesses,
    ))
}

/// Random connected graph: a random recursive tree plus each other pair with probability `p`.
pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((labels[u], labels[v]));
    }
    for u in 0..n {
        for v in u + 1..n {
            let present = edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
            if !present && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("spanning tree keeps the graph connected")
}

/// Random connected spanning subgraph: a random spanning tree plus each remaining edge with probability 1/2.
pub fn random_spanning_subgraph<R: Rng>(graph: &Graph, rng: &mut R) -> Graph {
    let n = graph.order();
    let mut edges = graph.edges();
    edges.shuffle(rng);
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while comp[r] != r {
            r = comp[r];
        }
        comp[x] = r;
        r
    }
    let mut kept = Vec::new();
    for (u, v) in edges {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        if a != b {
            comp[a] = b;
            kept.push((u, v));
        } else if rng.gen_bool(0.5) {
            kept.push((u, v));
        }
    }
    Graph::from_edges(n, &kept).expect("contains a spanning tree")
}
