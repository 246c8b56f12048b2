//! Steiner eccentricity-family parameters on trees.
//!
//! Every maximization over k-sets has two routes: a greedy farthest-augmentation
//! that relies on the nesting property of optimal Steiner sets in trees, and an
//! exhaustive enumeration. The greedy route is only taken where the nesting
//! property is known to apply; everywhere else the exhaustive route runs.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{CenterProfile, Tree, VertexSet};

/// Pendant vertices at depth `⌊d/2⌋` below the center with edge-disjoint center paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ASet {
    pub members: VertexSet,
    /// `witness_paths[i]` runs from `members[i]` to its nearest center.
    pub witness_paths: Vec<Vec<usize>>,
    pub source_path: Vec<usize>,
}

impl ASet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMethod {
    /// `k' = 1`: the Steiner k-radius itself.
    Radius,
    FastK2,
    FastK3,
    Brute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamWitnesses {
    pub sd_k: VertexSet,
    pub sr_k: usize,
    pub sr_kk: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub n: usize,
    pub k: usize,
    pub kprime: usize,
    pub sd_k: usize,
    pub sr_k: usize,
    pub sr_kk: usize,
    pub diam: usize,
    pub a_size: usize,
    pub sr_kk_method: RadiusMethod,
    pub witnesses: ParamWitnesses,
}

fn check_k(tree: &Tree, k: usize) -> Result<()> {
    if k < 2 || k > tree.order() {
        return Err(Error::bad_k(format!(
            "k = {k} outside 2..={} for a tree of order {}",
            tree.order(),
            tree.order()
        )));
    }
    Ok(())
}

/// Subtree that grows by attaching the vertex farthest from it.
struct Grower<'a> {
    tree: &'a Tree,
    inside: Vec<bool>,
    members: VertexSet,
    value: usize,
}

impl<'a> Grower<'a> {
    fn new(tree: &'a Tree, terminals: &VertexSet) -> Self {
        let inside = tree.spanning_mask(terminals.as_slice());
        let value = inside.iter().filter(|&&b| b).count() - 1;
        Grower { tree, inside, members: terminals.clone(), value }
    }

    /// Adds the non-member farthest from the subtree (smallest id on ties).
    fn grow(&mut self) {
        let n = self.tree.order();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| self.inside[v]).collect();
        for &v in &queue {
            dist[v] = 0;
        }
        while let Some(u) = queue.pop_front() {
            for &w in self.tree.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let mut best: Option<usize> = None;
        for v in 0..n {
            if self.members.contains(v) {
                continue;
            }
            if best.is_none_or(|b| dist[v] > dist[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("grow called with every vertex already a member");
        self.value += dist[v];
        let mut cur = v;
        while !self.inside[cur] {
            self.inside[cur] = true;
            cur = parent[cur];
        }
        self.members.insert(v);
    }
}

/// Maximum Steiner distance over `k`-supersets of `base`, by enumeration.
pub fn ecc_kk_exhaustive(tree: &Tree, base: &VertexSet, k: usize) -> (usize, VertexSet) {
    let rest: Vec<usize> = (0..tree.order()).filter(|&v| !base.contains(v)).collect();
    let mut best: Option<(usize, VertexSet)> = None;
    for extra in rest.into_iter().combinations(k - base.len()) {
        let set: VertexSet = base.iter().chain(extra).collect();
        let value = tree.steiner_value(set.as_slice());
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, set));
        }
    }
    best.expect("at least one superset exists when |base| <= k <= n")
}

/// Maximum Steiner distance over all `k`-subsets, by enumeration.
pub fn sd_k_exhaustive(tree: &Tree, k: usize) -> (usize, VertexSet) {
    let mut best: Option<(usize, VertexSet)> = None;
    for set in (0..tree.order()).combinations(k) {
        let value = tree.steiner_value(&set);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, VertexSet::new(set)));
        }
    }
    best.expect("k <= n")
}

/// Steiner (k,k')-eccentricity of `base`, with a maximizing superset.
pub fn ecc_kk(tree: &Tree, base: &VertexSet, k: usize) -> Result<(usize, VertexSet)> {
    base.check_bounds(tree.order())?;
    if base.is_empty() || base.len() > k || k > tree.order() {
        return Err(Error::bad_k(format!(
            "need 1 <= |S'| = {} <= k = {k} <= n = {}",
            base.len(),
            tree.order()
        )));
    }
    if base.len() == k {
        return Ok((tree.steiner_value(base.as_slice()), base.clone()));
    }
    let free_leaves = tree.leaves().into_iter().filter(|&v| !base.contains(v)).count();
    if free_leaves < k - base.len() {
        return Ok(ecc_kk_exhaustive(tree, base, k));
    }
    let mut g = Grower::new(tree, base);
    for _ in base.len()..k {
        g.grow();
    }
    Ok((g.value, g.members))
}

/// Steiner k-eccentricity of `v`.
pub fn ecc_k(tree: &Tree, v: usize, k: usize) -> Result<(usize, VertexSet)> {
    check_k(tree, k)?;
    ecc_kk(tree, &VertexSet::singleton(v), k)
}

/// Steiner k-diameter with a maximizing set.
///
/// Once `k` reaches the number of pendant vertices the whole tree is spanned.
/// Below that, the optimal sets nest, so the greedy extension of a diametrical
/// pair is exact and returns a set of pendant vertices.
pub fn sd_k(tree: &Tree, k: usize) -> Result<(usize, VertexSet)> {
    check_k(tree, k)?;
    let leaves = tree.leaves();
    if k >= leaves.len() {
        let fill = (0..tree.order()).filter(|&v| !tree.is_leaf(v)).take(k - leaves.len());
        return Ok((tree.size(), leaves.iter().copied().chain(fill).collect()));
    }
    let profile = tree.center_profile();
    let ends = VertexSet::new([profile.path[0], profile.path[profile.diameter]]);
    let mut g = Grower::new(tree, &ends);
    for _ in 2..k {
        g.grow();
    }
    Ok((g.value, g.members))
}

/// Steiner k-radius and the smallest vertex attaining it.
pub fn sr_k(tree: &Tree, k: usize) -> Result<(usize, usize)> {
    check_k(tree, k)?;
    let mut best = (usize::MAX, 0);
    for v in 0..tree.order() {
        let (value, _) = ecc_k(tree, v, k)?;
        if value < best.0 {
            best = (value, v);
        }
    }
    Ok(best)
}

/// Steiner (k,k')-radius by enumerating every `k'`-subset.
pub fn sr_kk_brute(tree: &Tree, k: usize, kprime: usize) -> Result<(usize, VertexSet)> {
    if kprime < 1 || kprime > k || k > tree.order() || k < 2 {
        return Err(Error::bad_k(format!(
            "need 1 <= k' = {kprime} <= k = {k} <= n = {}, k >= 2",
            tree.order()
        )));
    }
    let mut best: Option<(usize, VertexSet)> = None;
    for base in (0..tree.order()).combinations(kprime) {
        let base = VertexSet::new(base);
        let (value, _) = ecc_kk(tree, &base, k)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, base));
        }
    }
    Ok(best.expect("k' <= n"))
}

/// The set `A(T, P)` for the profile's diametrical path.
///
/// Each branch hanging off a center contributes at most one pendant vertex at
/// depth `⌊d/2⌋`: the path end if it lies there, else the smallest id.
pub fn a_set(tree: &Tree, profile: &CenterProfile) -> Result<ASet> {
    if tree.order() < 2 {
        return Err(Error::Precondition("A(T,P) needs a tree of order at least 2".into()));
    }
    let d = profile.diameter;
    let ends = [profile.path[0], profile.path[d]];
    if d == 1 {
        return Ok(ASet {
            members: VertexSet::new(ends),
            witness_paths: vec![vec![ends[0].min(ends[1])], vec![ends[0].max(ends[1])]],
            source_path: profile.path.clone(),
        });
    }
    let half = d / 2;
    let mut chosen: Vec<(usize, usize)> = Vec::new(); // (member, center)
    for cb in &profile.branches {
        for branch in &cb.branches {
            let deep: Vec<usize> = tree
                .branch_vertices(branch.root, cb.center)
                .into_iter()
                .filter(|&(v, depth)| depth + 1 == half && tree.is_leaf(v))
                .map(|(v, _)| v)
                .collect();
            let pick = ends.iter().copied().find(|e| deep.contains(e)).or_else(|| deep.iter().copied().min());
            if let Some(w) = pick {
                chosen.push((w, cb.center));
            }
        }
    }
    chosen.sort_unstable();
    let witness_paths = chosen.iter().map(|&(w, c)| tree_path(tree, w, c)).collect();
    Ok(ASet {
        members: chosen.iter().map(|&(w, _)| w).collect(),
        witness_paths,
        source_path: profile.path.clone(),
    })
}

fn tree_path(tree: &Tree, from: usize, to: usize) -> Vec<usize> {
    let dist = tree.distances_from(to);
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = tree
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| dist[w] + 1 == dist[cur])
            .expect("distances decrease toward the target");
        path.push(cur);
    }
    path
}

/// `{u_{⌊d/2⌋}, u_{⌊d/2⌋+1}}`.
pub fn central_pair(profile: &CenterProfile) -> Option<VertexSet> {
    Some(VertexSet::new([profile.path_vertex(0)?, profile.path_vertex(1)?]))
}

/// `{u_{⌊d/2⌋-1}, u_{⌊d/2⌋}, u_{⌊d/2⌋+1}}`.
pub fn central_triple(profile: &CenterProfile) -> Option<VertexSet> {
    Some(VertexSet::new([profile.path_vertex(-1)?, profile.path_vertex(0)?, profile.path_vertex(1)?]))
}

/// Closed-form `Sr_{k,2}` when the tree is large enough for the characterization.
fn fast_k2_value(tree: &Tree, k: usize) -> Result<Option<usize>> {
    if tree.order() <= 4 {
        return Ok(None);
    }
    let profile = tree.center_profile();
    let half = profile.diameter / 2;
    let a = a_set(tree, &profile)?.len();
    if a + 2 <= k {
        // a >= 2, so k - 2 >= 2 here.
        Ok(Some(sd_k(tree, k - 2)?.0))
    } else {
        Ok(Some((k - 2) * half + 1))
    }
}

fn fast_k3_value(tree: &Tree, k: usize) -> Result<Option<usize>> {
    if tree.order() <= 4 {
        return Ok(None);
    }
    let profile = tree.center_profile();
    let d = profile.diameter;
    if d < 2 {
        return Ok(None);
    }
    let (floor, ceil) = (d / 2, d.div_ceil(2));
    let a = a_set(tree, &profile)?.len();
    Ok(Some(if a + 3 <= k {
        sd_k(tree, k - 3)?.0
    } else if a + 2 == k {
        (k - 4) * floor + ceil + 1
    } else {
        (k - 3) * floor + 2
    }))
}

/// Steiner (k,2)-radius via the central pair characterization.
pub fn sr_k2_fast(tree: &Tree, k: usize) -> Result<usize> {
    if k < 3 || k > tree.order() {
        return Err(Error::bad_k(format!("fast k'=2 path needs 3 <= k = {k} <= n = {}", tree.order())));
    }
    match fast_k2_value(tree, k)? {
        Some(v) => Ok(v),
        None => Ok(sr_kk_brute(tree, k, 2)?.0),
    }
}

/// Steiner (k,3)-radius via the central triple characterization.
pub fn sr_k3_fast(tree: &Tree, k: usize) -> Result<usize> {
    if k < 4 || k > tree.order() {
        return Err(Error::bad_k(format!("fast k'=3 path needs 4 <= k = {k} <= n = {}", tree.order())));
    }
    match fast_k3_value(tree, k)? {
        Some(v) => Ok(v),
        None => Ok(sr_kk_brute(tree, k, 3)?.0),
    }
}

/// All parameters for one `(T, k, k')`, taking fast paths where their hypotheses hold.
pub fn param_record(tree: &Tree, k: usize, kprime: usize) -> Result<ParamRecord> {
    check_k(tree, k)?;
    if kprime < 1 || kprime > k {
        return Err(Error::bad_k(format!("k' = {kprime} outside 1..={k}")));
    }
    let profile = tree.center_profile();
    let (sd, sd_witness) = sd_k(tree, k)?;
    let (sr, sr_vertex) = sr_k(tree, k)?;

    let fast = match kprime {
        2 if k >= 3 => fast_k2_value(tree, k)?.map(|v| (v, RadiusMethod::FastK2, central_pair(&profile))),
        3 if k >= 4 => fast_k3_value(tree, k)?.map(|v| (v, RadiusMethod::FastK3, central_triple(&profile))),
        _ => None,
    };
    let (sr_kk, method, sr_kk_witness) = match (kprime, fast) {
        (1, _) => (sr, RadiusMethod::Radius, VertexSet::singleton(sr_vertex)),
        (_, Some((v, m, Some(w)))) => (v, m, w),
        _ => {
            let (v, w) = sr_kk_brute(tree, k, kprime)?;
            (v, RadiusMethod::Brute, w)
        }
    };

    Ok(ParamRecord {
        n: tree.order(),
        k,
        kprime,
        sd_k: sd,
        sr_k: sr,
        sr_kk,
        diam: profile.diameter,
        a_size: a_set(tree, &profile)?.len(),
        sr_kk_method: method,
        witnesses: ParamWitnesses { sd_k: sd_witness, sr_k: sr_vertex, sr_kk: sr_kk_witness },
    })
}
