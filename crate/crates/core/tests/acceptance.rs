//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails. Pass criterion numbers as arguments to run a subset.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;

use steiner_kit::closed_forms::{sd_k_formula, sr_kk_formula, FamilySpec};
use steiner_kit::corpus::{enumerate_trees, tree_from_graph6, tree_to_graph6};
use steiner_kit::graph::{brute_sd_k, brute_sr_kk, dw_steiner, Graph};
use steiner_kit::params::{sd_k, sr_k, sr_k2_fast, sr_k3_fast, sr_kk_brute};
use steiner_kit::verify::{hunt_conjecture, run_suite, Corpus, KRange, Report, Suite};
use steiner_kit::{Rational, Tree, VertexSet};

/// Every criterion demands exact agreement.
const MAX_MISMATCHES: usize = 0;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(120);
const HUNT_TIME_LIMIT: Duration = Duration::from_secs(600);
const HUNT_JOBS: usize = 8;
const BIN: &str = env!("CARGO_BIN_EXE_steiner-kit");

type Check = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Check);

fn trees_up_to(n_max: usize) -> Vec<Tree> {
    (1..=n_max).flat_map(|n| enumerate_trees(n).unwrap()).collect()
}

fn jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn mismatch_check(what: &str, checked: usize, mismatches: Vec<String>) -> Check {
    let detail = format!("{checked} {what}, {} mismatches", mismatches.len());
    if mismatches.len() == MAX_MISMATCHES {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {}", mismatches[0]))
    }
}

fn oracle_equivalence() -> Check {
    let started = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for tree in trees_up_to(9) {
        let graph = Graph::from(&tree);
        for size in 1..=tree.order().min(4) {
            for set in (0..tree.order()).combinations(size) {
                let set = VertexSet::new(set);
                let pruned = tree.steiner_distance(&set).unwrap().value;
                let exact = dw_steiner(&graph, &set).unwrap();
                checked += 1;
                if pruned != exact {
                    bad.push(format!("{} S={set}: {pruned} vs {exact}", tree_to_graph6(&tree)));
                }
            }
        }
    }
    let elapsed = started.elapsed();
    let detail = mismatch_check("(tree, S) pairs", checked, bad)?;
    let detail = format!(
        "{detail}, {:.1}s single-threaded (limit {}s)",
        elapsed.as_secs_f64(),
        ORACLE_TIME_LIMIT.as_secs()
    );
    if elapsed <= ORACLE_TIME_LIMIT {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn greedy_correctness() -> Check {
    let mut checked = 0;
    let mut bad = Vec::new();
    for tree in trees_up_to(10) {
        let graph = Graph::from(&tree);
        for k in 2..=tree.order().min(6) {
            let greedy = sd_k(&tree, k).unwrap().0;
            let brute = brute_sd_k(&graph, k).unwrap().0;
            checked += 1;
            if greedy != brute {
                bad.push(format!("{} k={k}: {greedy} vs {brute}", tree_to_graph6(&tree)));
            }
        }
    }
    mismatch_check("(tree, k) pairs", checked, bad)
}

fn fast_path_correctness() -> Check {
    let mut checked = 0;
    let mut bad = Vec::new();
    for tree in trees_up_to(10) {
        let n = tree.order();
        let g6 = tree_to_graph6(&tree);
        for k in 3..=n.min(6) {
            let (fast, brute) = (sr_k2_fast(&tree, k).unwrap(), sr_kk_brute(&tree, k, 2).unwrap().0);
            checked += 1;
            if fast != brute {
                bad.push(format!("{g6} k={k} k'=2: {fast} vs {brute}"));
            }
        }
        for k in 4..=n.min(6) {
            let (fast, brute) = (sr_k3_fast(&tree, k).unwrap(), sr_kk_brute(&tree, k, 3).unwrap().0);
            checked += 1;
            if fast != brute {
                bad.push(format!("{g6} k={k} k'=3: {fast} vs {brute}"));
            }
        }
        // the tree-side brute force itself against the general-graph oracle
        if n <= 8 {
            let graph = Graph::from(&tree);
            for k in 3..=n.min(6) {
                for kp in [2, 3].into_iter().filter(|&kp| kp < k) {
                    let (tree_side, graph_side) =
                        (sr_kk_brute(&tree, k, kp).unwrap().0, brute_sr_kk(&graph, k, kp).unwrap().0);
                    checked += 1;
                    if tree_side != graph_side {
                        bad.push(format!("{g6} k={k} k'={kp}: brute {tree_side} vs oracle {graph_side}"));
                    }
                }
            }
        }
    }
    let corpus = Corpus::enumerated(10).unwrap();
    let lemmas = run_suite(Suite::FastPath, &corpus, KRange::new(3, 6), KRange::new(2, 3), jobs()).unwrap();
    bad.extend(
        lemmas.violations.iter().map(|v| {
            format!("{} k={} {:?}: {} vs {}", v.instance.graph6, v.instance.k, v.claim, v.lhs, v.rhs)
        }),
    );
    let detail = mismatch_check("value comparisons", checked, bad)?;
    Ok(format!("{detail}; central-set lemmas: {} instances, 0 violations", lemmas.total_instances))
}

fn inequality_suites() -> Check {
    let corpus = Corpus::enumerated(10).unwrap();
    let suites = [
        Suite::Thm32,
        Suite::Thm33,
        Suite::Thm34,
        Suite::ThmK1,
        Suite::ThmK2,
        Suite::ThmK3,
        Suite::Chain,
        Suite::Lemma31,
    ];
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for suite in suites {
        let r = run_suite(suite, &corpus, KRange::new(2, 6), KRange::new(1, 5), jobs()).unwrap();
        parts.push(format!("{suite}={}", r.total_instances));
        if r.total_instances == 0 {
            failures.push(format!("{suite}: nothing checked"));
        }
        if let Some(v) = r.violations.first() {
            failures.push(format!(
                "{suite}: {} violations, first {} k={} k'={:?}: {} vs {}",
                r.violations.len(),
                v.instance.graph6,
                v.instance.k,
                v.instance.kprime,
                v.lhs,
                v.rhs
            ));
        }
    }
    let detail = format!("instances {}", parts.join(" "));
    if failures.is_empty() {
        Ok(format!("{detail}, 0 violations"))
    } else {
        Err(format!("{detail}; {}", failures.join("; ")))
    }
}

fn tree_of(spec: &str) -> Tree {
    spec.parse::<FamilySpec>().unwrap().generate_tree().unwrap()
}

fn single_equality(spec: &str, suite: Suite, k: usize, value: i64) -> Result<Report, String> {
    let corpus = Corpus::new(vec![tree_of(spec)], spec);
    let r = run_suite(suite, &corpus, KRange::single(k), KRange::single(1), 1).map_err(|e| e.to_string())?;
    match r.equalities.as_slice() {
        [v] if v.equality
            && v.holds
            && v.lhs == Rational::integer(value)
            && v.rhs == Rational::integer(value) =>
        {
            Ok(r)
        }
        other => Err(format!("{spec} {suite} k={k}: expected one equality at {value}, got {other:?}")),
    }
}

fn equality_reproduction() -> Check {
    let radius = |spec: &str, k: usize, kp: usize| sr_kk_brute(&tree_of(spec), k, kp).unwrap().0;
    let expect = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };

    let star = tree_of("star:m=5");
    expect(sd_k(&star, 3).unwrap().0 == 3 && sr_k(&star, 3).unwrap().0 == 2, "K_{1,5}: Sd_3 = 3, Sr_3 = 2")?;
    single_equality("star:m=5", Suite::ThmK1, 3, 3)?;

    expect(radius("starlike:m=3,l=2", 3, 1) == 4, "starlike(3,2): Sr_3 = 4")?;
    single_equality("starlike:m=3,l=2", Suite::ThmK1, 3, 6)?;

    expect(radius("p2ab:l=2,a=2,b=2,x=3", 4, 2) == 7, "P_2(2,2;3): Sr_{4,2} = 7")?;
    single_equality("p2ab:l=2,a=2,b=2,x=3", Suite::ThmK2, 4, 13)?;

    expect(radius("p3ab:l=3,a=2,b=2,x=2", 4, 3) == 4, "P_3(2,2;2): Sr_{4,3} = 4")?;
    single_equality("p3ab:l=3,a=2,b=2,x=2", Suite::ThmK3, 4, 10)?;

    Ok("3 = (3/2)2, 6 = (3/2)4, 13 = (4/2)7 - 1, 10 = 4*4 - 6; all four flagged".into())
}

/// Non-decreasing part vectors with at least two parts and total at most `max_total`.
fn part_vectors(max_total: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, remaining: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        let min = prefix.last().copied().unwrap_or(1);
        for p in min..=remaining {
            prefix.push(p);
            extend(prefix, remaining - p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_total, &mut out);
    out
}

fn formula_oracle_agreement() -> Check {
    let mut specs: Vec<FamilySpec> = Vec::new();
    specs.extend((2..=7).map(|n| FamilySpec::Complete { n }));
    specs.extend((2..=10).map(|n| FamilySpec::Path { n }));
    specs.extend(part_vectors(8).into_iter().map(|parts| FamilySpec::Multipartite { parts }));
    let mut checked = 0;
    let mut bad = Vec::new();
    for spec in &specs {
        let graph = spec.generate().unwrap().to_graph();
        for k in 2..=spec.order() {
            let (formula, brute) = (sd_k_formula(spec, k).unwrap(), brute_sd_k(&graph, k).unwrap().0);
            checked += 1;
            if formula != brute {
                bad.push(format!("{spec} Sd_{k}: {formula} vs {brute}"));
            }
            for kp in 1..=k {
                let (formula, brute) =
                    (sr_kk_formula(spec, k, kp).unwrap(), brute_sr_kk(&graph, k, kp).unwrap().0);
                checked += 1;
                if formula != brute {
                    bad.push(format!("{spec} Sr_{{{k},{kp}}}: {formula} vs {brute}"));
                }
            }
        }
    }
    let detail = mismatch_check("closed-form values", checked, bad)?;
    Ok(format!("{detail} over {} graphs", specs.len()))
}

fn conjecture_hunt() -> Check {
    let started = Instant::now();
    let report =
        hunt_conjecture(11, KRange::new(3, 6), KRange::new(1, 5), HUNT_JOBS).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("hunt-n11.json");
    let mut file = std::fs::File::create(&out).map_err(|e| e.to_string())?;
    steiner_kit::verify::emit_report(&report, Default::default(), &mut file).map_err(|e| e.to_string())?;

    let proved: Vec<_> =
        report.violations.iter().filter(|v| v.instance.kprime.is_some_and(|kp| kp <= 3)).collect();
    let open: Vec<_> =
        report.violations.iter().filter(|v| v.instance.kprime.is_some_and(|kp| kp >= 4)).collect();
    let complete = report.violations.iter().all(|v| !v.instance.graph6.is_empty() && v.witnesses.len() == 2);
    for v in &open {
        println!("      finding: {}", serde_json::to_string(v).unwrap());
    }
    let detail = format!(
        "{} instances, {} violations with k' <= 3, {} findings with k' >= 4, {:.1}s at {HUNT_JOBS} workers (limit {}s), report {}",
        report.total_instances,
        proved.len(),
        open.len(),
        elapsed.as_secs_f64(),
        HUNT_TIME_LIMIT.as_secs(),
        out.display()
    );
    if proved.len() == MAX_MISMATCHES && complete && elapsed <= HUNT_TIME_LIMIT {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn corpus_integrity() -> Check {
    let mut counts = Vec::new();
    for n in 1..=9 {
        let trees: Vec<Tree> = enumerate_trees(n).unwrap().collect();
        let distinct = trees.iter().map(|t| common::all_roots_form(n, &t.edges())).unique().count();
        let oracle = common::prufer_class_count(n);
        if trees.len() != oracle || distinct != trees.len() {
            return Err(format!("n={n}: enumerated {}, distinct {distinct}, oracle {oracle}", trees.len()));
        }
        counts.push(oracle.to_string());
    }
    let mut round_trips = 0;
    for tree in trees_up_to(10) {
        let line = tree_to_graph6(&tree);
        let back = tree_from_graph6(&line).map_err(|e| e.to_string())?;
        if back != tree || tree_to_graph6(&back) != line {
            return Err(format!("graph6 round trip failed for {line}"));
        }
        round_trips += 1;
    }
    Ok(format!("classes n=1..9: {} (match oracle); {round_trips} graph6 round trips", counts.join(",")))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(BIN).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn determinism() -> Check {
    let mut runs = 0;
    let mut compare = |args: Vec<String>| -> Result<(), String> {
        let with_jobs = |j: &str| {
            let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
            a.extend(["--jobs", j]);
            run_cli(&a)
        };
        let (one, many) = (with_jobs("1")?, with_jobs("5")?);
        runs += 1;
        if one == many {
            Ok(())
        } else {
            Err(format!("{args:?}: reports differ between 1 and 5 workers"))
        }
    };
    for suite in Suite::ALL {
        for format in ["json", "csv"] {
            let args = [
                "verify",
                "--suite",
                suite.name(),
                "--n-max",
                "8",
                "--k",
                "2:5",
                "--kprime",
                "1:4",
                "--format",
                format,
            ];
            compare(args.iter().map(|s| s.to_string()).collect())?;
        }
    }
    let hunt = ["hunt", "--n-max", "9", "--k", "3:5", "--kprime", "1:4"];
    compare(hunt.iter().map(|s| s.to_string()).collect())?;
    Ok(format!("{runs} report pairs byte-identical across --jobs 1 and 5"))
}

fn main() {
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [Criterion; 9] = [
        (1, "oracle equivalence", oracle_equivalence),
        (2, "greedy correctness", greedy_correctness),
        (3, "fast-path correctness", fast_path_correctness),
        (4, "inequality and identity suites", inequality_suites),
        (5, "equality reproduction", equality_reproduction),
        (6, "formula-oracle agreement", formula_oracle_agreement),
        (7, "conjecture hunt", conjecture_hunt),
        (8, "corpus integrity", corpus_integrity),
        (9, "determinism", determinism),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let started = Instant::now();
        let (tag, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {id} {name}: {detail} [{:.1}s]", started.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
