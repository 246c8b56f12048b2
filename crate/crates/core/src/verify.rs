//! Corpus-wide checking of the diameter/radius inequalities and identities.
//!
//! Every suite maps each tree to a list of verdicts through a pure function and
//! merges per-tree outcomes in corpus order, so a report depends only on the
//! corpus and the ranges, never on the worker count.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{bound_value, BoundName};
use crate::corpus::{canonical_code, encode_edges, enumerate_up_to, tree_to_graph6, MAX_ENUMERATION_ORDER};
use crate::error::{Error, Result};
use crate::graph::{check_general_bounds, random_connected_graph, Graph};
use crate::params::{central_pair, central_triple, ecc_kk, sd_k, sr_k2_fast, sr_k3_fast, sr_kk_brute};
use crate::rational::Rational;
use crate::tree::{Tree, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

/// One checked object: a graph plus the `(k, k')` it was checked at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    /// Canonical code for trees; absent for general graphs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    pub graph6: String,
    pub n: usize,
    pub k: usize,
    pub kprime: Option<usize>,
}

impl Instance {
    pub fn for_tree(tree: &Tree, k: usize, kprime: Option<usize>) -> Instance {
        Instance {
            code: Some(canonical_code(tree).to_string()),
            graph6: tree_to_graph6(tree),
            n: tree.order(),
            k,
            kprime,
        }
    }

    pub fn for_graph(graph: &Graph, k: usize, kprime: Option<usize>) -> Instance {
        Instance {
            code: None,
            graph6: encode_edges(graph.order(), &graph.edges()),
            n: graph.order(),
            k,
            kprime,
        }
    }
}

/// `holds` iff `lhs` relates to `rhs` as `relation` says; `equality` iff `lhs == rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub suite: String,
    pub claim: String,
    pub instance: Instance,
    pub relation: Relation,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
    pub witnesses: BTreeMap<String, VertexSet>,
}

impl Verdict {
    pub fn new(
        suite: &str,
        instance: Instance,
        relation: Relation,
        lhs: Rational,
        rhs: Rational,
        witnesses: BTreeMap<String, VertexSet>,
    ) -> Verdict {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        };
        Verdict {
            suite: suite.to_string(),
            claim: String::new(),
            instance,
            relation,
            lhs,
            equality: lhs == rhs,
            rhs,
            holds,
            witnesses,
        }
    }

    pub fn with_claim(mut self, claim: &str) -> Verdict {
        self.claim = claim.to_string();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Thm32,
    Thm33,
    Thm34,
    ThmK1,
    ThmK2,
    ThmK3,
    FastPath,
    Chain,
    Lemma31,
    Conjecture,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Thm32,
        Suite::Thm33,
        Suite::Thm34,
        Suite::ThmK1,
        Suite::ThmK2,
        Suite::ThmK3,
        Suite::FastPath,
        Suite::Chain,
        Suite::Lemma31,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm32 => "thm32",
            Suite::Thm33 => "thm33",
            Suite::Thm34 => "thm34",
            Suite::ThmK1 => "thm_k1",
            Suite::ThmK2 => "thm_k2",
            Suite::ThmK3 => "thm_k3",
            Suite::FastPath => "fastpath",
            Suite::Chain => "chain",
            Suite::Lemma31 => "lemma31",
            Suite::Conjecture => "conjecture",
        }
    }

    pub fn claim(self) -> &'static str {
        match self {
            Suite::Thm32 => "Sd_k <= k/(k-k') Sd_{k-k'}",
            Suite::Thm33 => "Sd_{k-k'} <= Sr_{k,k'}",
            Suite::Thm34 => "Sd_k <= k/(k-k') Sr_{k,k'}",
            Suite::ThmK1 => "Sd_k <= k/(k-1) Sr_k",
            Suite::ThmK2 => "Sd_k <= k/(k-2) Sr_{k,2} - 2/(k-2)",
            Suite::ThmK3 => "Sd_k <= k/(k-3) Sr_{k,3} - 6/(k-3)",
            Suite::FastPath => "closed form and central-set eccentricity = Sr_{k,k'}",
            Suite::Chain => "Sr_{k,k'+1} <= Sr_{k,k'}",
            Suite::Lemma31 => "d(S) = d(S - v) + l_v(S)",
            Suite::Conjecture => "Sd_k <= k/(k-k') Sr_{k,k'} - k'(k'-1)/(k-k')",
        }
    }

    /// Identity suites report counts of equalities only, since every passing
    /// instance is one.
    pub fn relation(self) -> Relation {
        match self {
            Suite::FastPath | Suite::Lemma31 => Relation::Eq,
            _ => Relation::Le,
        }
    }

    /// The `(k, k')` pairs visited for one `k`; `None` when `k'` plays no role.
    fn kprimes(self, kprime_range: KRange) -> Vec<Option<usize>> {
        match self {
            Suite::ThmK1 => vec![Some(1)],
            Suite::ThmK2 => vec![Some(2)],
            Suite::ThmK3 => vec![Some(3)],
            Suite::FastPath => vec![Some(2), Some(3)],
            Suite::Lemma31 => vec![None],
            _ => kprime_range.iter().map(Some).collect(),
        }
    }

    /// `Ok` when `(n, k, k')` satisfies the suite's hypotheses, else the reason for skipping.
    fn hypothesis(
        self,
        tree: &Tree,
        k: usize,
        kprime: Option<usize>,
    ) -> std::result::Result<(), &'static str> {
        let n = tree.order();
        let kp = kprime.unwrap_or(0);
        let check = |ok: bool, reason: &'static str| if ok { Ok(()) } else { Err(reason) };
        check(k <= n, "k > n")?;
        match self {
            Suite::Thm34 | Suite::Conjecture => {
                check(k >= 3, "k < 3")?;
                check(kp >= 1 && kp < k, "k' outside 1..k")
            }
            Suite::Thm32 | Suite::Thm33 => {
                check(k >= 3, "k < 3")?;
                check(kp >= 1, "k' < 1")?;
                check(kp + 2 <= k, "k - k' < 2")
            }
            Suite::ThmK1 => check(k >= 2, "k < 2"),
            Suite::ThmK2 => check(k >= 3, "k < 3"),
            Suite::ThmK3 => check(k >= 4, "k < 4"),
            Suite::FastPath => {
                check(k > kp, if kp == 2 { "k < 3" } else { "k < 4" })?;
                check(n >= 5, "n < 5")
            }
            Suite::Chain => {
                check(k >= 2, "k < 2")?;
                check(kp >= 1 && kp < k, "k' outside 1..k")
            }
            Suite::Lemma31 => {
                check(k >= 3, "k < 3")?;
                check(tree.leaf_count() >= 3, "fewer than 3 pendant vertices")?;
                check(tree.leaf_count() >= k, "fewer than k pendant vertices")
            }
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Inclusive integer range written `lo:hi` or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRange {
    pub lo: usize,
    pub hi: usize,
}

impl KRange {
    pub fn new(lo: usize, hi: usize) -> KRange {
        KRange { lo, hi }
    }

    pub fn single(v: usize) -> KRange {
        KRange { lo: v, hi: v }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for KRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<KRange> {
        let parse = |t: &str| {
            t.trim().parse::<usize>().map_err(|_| Error::bad_k(format!("`{s}` is not a range like 3:6")))
        };
        let range = match s.split_once(':') {
            Some((lo, hi)) => KRange::new(parse(lo)?, parse(hi)?),
            None => KRange::single(parse(s)?),
        };
        if range.lo > range.hi {
            return Err(Error::bad_k(format!("empty range {s}")));
        }
        Ok(range)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusInfo {
    pub description: String,
    pub trees: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: Option<u64>,
}

/// An ordered list of trees and where it came from.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub trees: Vec<Tree>,
    pub info: CorpusInfo,
}

impl Corpus {
    /// Every free tree of order `1..=n_max`.
    pub fn enumerated(n_max: usize) -> Result<Corpus> {
        let trees = enumerate_up_to(n_max)?;
        Ok(Corpus::new(trees, format!("all free trees of order 1..={n_max}")))
    }

    pub fn new(trees: Vec<Tree>, description: impl Into<String>) -> Corpus {
        let n_min = trees.iter().map(Tree::order).min().unwrap_or(0);
        let n_max = trees.iter().map(Tree::order).max().unwrap_or(0);
        let info =
            CorpusInfo { description: description.into(), trees: trees.len(), n_min, n_max, seed: None };
        Corpus { trees, info }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub n_min: usize,
    pub n_max: usize,
    pub k_range: KRange,
    pub kprime_range: KRange,
}

/// Number of trees of order `n` skipped at `(k, k')` for one reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipRecord {
    pub n: usize,
    pub k: usize,
    pub kprime: Option<usize>,
    pub reason: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityCount {
    pub k: usize,
    pub kprime: Option<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one run. `status` is `pass` iff `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub claim: String,
    pub params: SuiteParams,
    pub corpus: CorpusInfo,
    pub total_instances: usize,
    pub skipped_instances: usize,
    pub skipped: Vec<SkipRecord>,
    pub violations: Vec<Verdict>,
    pub equalities: Vec<Verdict>,
    pub equality_counts: Vec<EqualityCount>,
    pub status: Status,
    pub version: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Per-tree partial result, merged in corpus order.
#[derive(Debug, Default)]
struct Outcome {
    checked: usize,
    violations: Vec<Verdict>,
    equalities: Vec<Verdict>,
    equality_counts: BTreeMap<(usize, Option<usize>), usize>,
    skips: BTreeMap<(usize, usize, Option<usize>, &'static str), usize>,
}

impl Outcome {
    fn record(&mut self, verdict: Verdict, list_equalities: bool) {
        self.checked += 1;
        if verdict.equality {
            *self.equality_counts.entry((verdict.instance.k, verdict.instance.kprime)).or_default() += 1;
        }
        if !verdict.holds {
            self.violations.push(verdict);
        } else if verdict.equality && list_equalities {
            self.equalities.push(verdict);
        }
    }

    fn merge(&mut self, other: Outcome) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.equalities.extend(other.equalities);
        for (key, c) in other.equality_counts {
            *self.equality_counts.entry(key).or_default() += c;
        }
        for (key, c) in other.skips {
            *self.skips.entry(key).or_default() += c;
        }
    }
}

/// Memoized parameters of one tree.
struct Params<'a> {
    tree: &'a Tree,
    instance_base: Instance,
    sd: HashMap<usize, (usize, VertexSet)>,
    sr: HashMap<(usize, usize), (usize, VertexSet)>,
}

impl<'a> Params<'a> {
    fn new(tree: &'a Tree) -> Params<'a> {
        Params {
            tree,
            instance_base: Instance::for_tree(tree, 0, None),
            sd: HashMap::new(),
            sr: HashMap::new(),
        }
    }

    fn instance(&self, k: usize, kprime: Option<usize>) -> Instance {
        Instance { k, kprime, ..self.instance_base.clone() }
    }

    fn sd(&mut self, k: usize) -> Result<(usize, VertexSet)> {
        if let Some(hit) = self.sd.get(&k) {
            return Ok(hit.clone());
        }
        let value = sd_k(self.tree, k)?;
        self.sd.insert(k, value.clone());
        Ok(value)
    }

    fn sr(&mut self, k: usize, kprime: usize) -> Result<(usize, VertexSet)> {
        if let Some(hit) = self.sr.get(&(k, kprime)) {
            return Ok(hit.clone());
        }
        let value = sr_kk_brute(self.tree, k, kprime)?;
        self.sr.insert((k, kprime), value.clone());
        Ok(value)
    }
}

fn witnesses<const N: usize>(pairs: [(&str, VertexSet); N]) -> BTreeMap<String, VertexSet> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn int(v: usize) -> Rational {
    Rational::from(v)
}

fn bounded(p: &mut Params<'_>, suite: Suite, bound: BoundName, k: usize, kp: usize) -> Result<Verdict> {
    let (sd, sd_set) = p.sd(k)?;
    let (sr, sr_set) = p.sr(k, kp)?;
    let rhs = bound_value(bound, k, kp, sr as i64)?;
    Ok(Verdict::new(
        suite.name(),
        p.instance(k, Some(kp)),
        Relation::Le,
        int(sd),
        rhs,
        witnesses([("sd_k", sd_set), ("sr_kk", sr_set)]),
    )
    .with_claim(suite.claim()))
}

/// Every verdict of `suite` for one tree at one `(k, k')` inside the hypotheses.
fn verdicts(p: &mut Params<'_>, suite: Suite, k: usize, kprime: Option<usize>) -> Result<Vec<Verdict>> {
    let kp = kprime.unwrap_or(0);
    let tree = p.tree;
    let out = match suite {
        Suite::Thm34 => vec![bounded(p, suite, BoundName::Thm34, k, kp)?],
        Suite::Conjecture => vec![bounded(p, suite, BoundName::Conjecture, k, kp)?],
        Suite::ThmK1 => vec![bounded(p, suite, BoundName::TreeK1, k, 1)?],
        Suite::ThmK2 => vec![bounded(p, suite, BoundName::ThmK2, k, 2)?],
        Suite::ThmK3 => vec![bounded(p, suite, BoundName::ThmK3, k, 3)?],
        Suite::Thm32 => {
            let (sd, sd_set) = p.sd(k)?;
            let (low, low_set) = p.sd(k - kp)?;
            let rhs = bound_value(BoundName::Thm34, k, kp, low as i64)?;
            vec![Verdict::new(
                suite.name(),
                p.instance(k, kprime),
                Relation::Le,
                int(sd),
                rhs,
                witnesses([("sd_k", sd_set), ("sd_k_minus_kprime", low_set)]),
            )]
        }
        Suite::Thm33 => {
            let (low, low_set) = p.sd(k - kp)?;
            let (sr, sr_set) = p.sr(k, kp)?;
            vec![Verdict::new(
                suite.name(),
                p.instance(k, kprime),
                Relation::Le,
                int(low),
                int(sr),
                witnesses([("sd_k_minus_kprime", low_set), ("sr_kk", sr_set)]),
            )]
        }
        Suite::Chain => {
            let (upper, upper_set) = p.sr(k, kp + 1)?;
            let (lower, lower_set) = p.sr(k, kp)?;
            vec![Verdict::new(
                suite.name(),
                p.instance(k, kprime),
                Relation::Le,
                int(upper),
                int(lower),
                witnesses([("sr_k_kprime_plus_1", upper_set), ("sr_kk", lower_set)]),
            )]
        }
        Suite::FastPath => {
            let (brute, brute_set) = p.sr(k, kp)?;
            let profile = tree.center_profile();
            let (fast, central) = if kp == 2 {
                (sr_k2_fast(tree, k)?, central_pair(&profile))
            } else {
                (sr_k3_fast(tree, k)?, central_triple(&profile))
            };
            let central = central
                .ok_or_else(|| Error::Precondition(format!("diametrical path too short for k' = {kp}")))?;
            let (ecc, ecc_set) = ecc_kk(tree, &central, k)?;
            vec![
                Verdict::new(
                    suite.name(),
                    p.instance(k, kprime),
                    Relation::Eq,
                    int(fast),
                    int(brute),
                    witnesses([("sr_kk", brute_set.clone())]),
                )
                .with_claim("closed form = Sr_{k,k'}"),
                Verdict::new(
                    suite.name(),
                    p.instance(k, kprime),
                    Relation::Eq,
                    int(ecc),
                    int(brute),
                    witnesses([("central", central), ("ecc_superset", ecc_set), ("sr_kk", brute_set)]),
                )
                .with_claim("ecc_{k,k'}(central set) = Sr_{k,k'}"),
            ]
        }
        Suite::Lemma31 => {
            let mut out = Vec::new();
            for subset in tree.leaves().into_iter().combinations(k) {
                let set = VertexSet::new(subset);
                let whole = tree.steiner_distance(&set)?.value;
                for v in set.iter() {
                    let rest = tree.steiner_distance(&set.without(v))?.value;
                    let branch = tree.leaf_branch_length(&set, v)?;
                    out.push(Verdict::new(
                        suite.name(),
                        p.instance(k, None),
                        Relation::Eq,
                        int(whole),
                        int(rest + branch),
                        witnesses([("s", set.clone()), ("v", VertexSet::singleton(v))]),
                    ));
                }
            }
            out
        }
    };
    Ok(out.into_iter().map(|v| if v.claim.is_empty() { v.with_claim(suite.claim()) } else { v }).collect())
}

fn evaluate_tree(tree: &Tree, suite: Suite, k_range: KRange, kprime_range: KRange) -> Result<Outcome> {
    let mut p = Params::new(tree);
    let mut outcome = Outcome::default();
    let list_equalities = suite.relation() == Relation::Le;
    for k in k_range.iter() {
        for kprime in suite.kprimes(kprime_range) {
            if let Err(reason) = suite.hypothesis(tree, k, kprime) {
                *outcome.skips.entry((tree.order(), k, kprime, reason)).or_default() += 1;
                continue;
            }
            for verdict in verdicts(&mut p, suite, k, kprime)? {
                outcome.record(verdict, list_equalities);
            }
        }
    }
    Ok(outcome)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))
}

fn assemble(suite: &str, claim: &str, params: SuiteParams, corpus: CorpusInfo, outcome: Outcome) -> Report {
    let status = if outcome.violations.is_empty() { Status::Pass } else { Status::Fail };
    let skipped: Vec<SkipRecord> = outcome
        .skips
        .into_iter()
        .map(|((n, k, kprime, reason), count)| SkipRecord { n, k, kprime, reason: reason.to_string(), count })
        .collect();
    Report {
        suite: suite.to_string(),
        claim: claim.to_string(),
        params,
        corpus,
        total_instances: outcome.checked,
        skipped_instances: skipped.iter().map(|s| s.count).sum(),
        skipped,
        violations: outcome.violations,
        equalities: outcome.equalities,
        equality_counts: outcome
            .equality_counts
            .into_iter()
            .map(|((k, kprime), count)| EqualityCount { k, kprime, count })
            .collect(),
        status,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

/// Checks `suite` on every tree of `corpus` for `k` in `k_range` and, where the
/// suite is parametrized by it, `k'` in `kprime_range`. Out-of-hypothesis pairs
/// are counted under `skipped`.
pub fn run_suite(
    suite: Suite,
    corpus: &Corpus,
    k_range: KRange,
    kprime_range: KRange,
    jobs: usize,
) -> Result<Report> {
    let outcomes: Vec<Outcome> = pool(jobs)?.install(|| {
        corpus
            .trees
            .par_iter()
            .map(|tree| evaluate_tree(tree, suite, k_range, kprime_range))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut total = Outcome::default();
    for o in outcomes {
        total.merge(o);
    }
    let params = SuiteParams { n_min: corpus.info.n_min, n_max: corpus.info.n_max, k_range, kprime_range };
    Ok(assemble(suite.name(), suite.claim(), params, corpus.info.clone(), total))
}

/// Exhaustive check of the shifted conjectured bound on all trees up to `n_max`.
pub fn hunt_conjecture(n_max: usize, k_range: KRange, kprime_range: KRange, jobs: usize) -> Result<Report> {
    if n_max > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge(format!(
            "hunt limited to order {MAX_ENUMERATION_ORDER}, asked for {n_max}"
        )));
    }
    run_suite(Suite::Conjecture, &Corpus::enumerated(n_max)?, k_range, kprime_range, jobs)
}

/// Checks the general-graph `Sd_k`/`Sr_k` bounds on `count` seeded random
/// connected graphs of order `n`.
pub fn spot_check_general(
    n: usize,
    count: usize,
    edge_probability: f64,
    k_range: KRange,
    seed: u64,
    jobs: usize,
) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> =
        (0..count).map(|_| random_connected_graph(n, edge_probability, &mut rng)).collect();
    let outcomes: Vec<Outcome> = pool(jobs)?.install(|| {
        graphs
            .par_iter()
            .map(|g| {
                let mut o = Outcome::default();
                for k in k_range.iter() {
                    if k < 2 || k > g.order() {
                        *o.skips.entry((g.order(), k, Some(1), "k outside 2..=n")).or_default() += 1;
                        continue;
                    }
                    o.record(check_general_bounds(g, k)?, true);
                }
                Ok(o)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut total = Outcome::default();
    for o in outcomes {
        total.merge(o);
    }
    let corpus = CorpusInfo {
        description: format!(
            "{count} random connected graphs of order {n}, edge probability {edge_probability}"
        ),
        trees: 0,
        n_min: n,
        n_max: n,
        seed: Some(seed),
    };
    let params = SuiteParams { n_min: n, n_max: n, k_range, kprime_range: KRange::single(1) };
    Ok(assemble("general", "Sd_k <= c(k) Sr_k", params, corpus, total))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReportFormat> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Serialization(format!("unknown report format `{other}`"))),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    kind: &'static str,
    suite: &'a str,
    claim: &'a str,
    code: &'a str,
    graph6: &'a str,
    n: usize,
    k: usize,
    kprime: Option<usize>,
    relation: Relation,
    lhs: &'a Rational,
    rhs: &'a Rational,
    holds: bool,
    equality: bool,
    witnesses: String,
}

/// Writes `report` as pretty JSON or as CSV with one verdict (violation or
/// listed equality) per row.
pub fn emit_report<W: Write>(report: &Report, format: ReportFormat, mut out: W) -> Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            out.write_all(b"\n")?;
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let rows = report
                .violations
                .iter()
                .map(|v| ("violation", v))
                .chain(report.equalities.iter().map(|v| ("equality", v)));
            let mut any = false;
            for (kind, v) in rows {
                any = true;
                w.serialize(CsvRow {
                    kind,
                    suite: &v.suite,
                    claim: &v.claim,
                    code: v.instance.code.as_deref().unwrap_or(""),
                    graph6: &v.instance.graph6,
                    n: v.instance.n,
                    k: v.instance.k,
                    kprime: v.instance.kprime,
                    relation: v.relation,
                    lhs: &v.lhs,
                    rhs: &v.rhs,
                    holds: v.holds,
                    equality: v.equality,
                    witnesses: v.witnesses.iter().map(|(k, s)| format!("{k}={s}")).join(";"),
                })?;
            }
            if !any {
                w.write_record([
                    "kind",
                    "suite",
                    "claim",
                    "code",
                    "graph6",
                    "n",
                    "k",
                    "kprime",
                    "relation",
                    "lhs",
                    "rhs",
                    "holds",
                    "equality",
                    "witnesses",
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
