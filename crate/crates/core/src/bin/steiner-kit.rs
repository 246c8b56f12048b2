use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use steiner_kit::closed_forms::{bound_value, sd_k_formula, sr_kk_formula, BoundName, FamilySpec, Generated};
use steiner_kit::corpus::{self, enumerate_trees, graph6_decode, graph6_lines, tree_from_graph6};
use steiner_kit::graph::dw_steiner;
use steiner_kit::params::{param_record, ParamRecord};
use steiner_kit::verify::{
    emit_report, hunt_conjecture, run_suite, spot_check_general, Corpus, KRange, Report, ReportFormat, Suite,
};
use steiner_kit::{Error, Rational, Tree, VertexSet};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "steiner-kit", version, about = "Steiner k-diameter and (k,k')-radius toolkit for trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters of every tree in a graph6 file.
    Compute {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        kprime: Option<usize>,
        /// Sweep every legal (k, k') with k up to K.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All non-isomorphic trees of one order, as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Include every order from 1 to N.
        #[arg(long)]
        up_to: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One member of a named family, as graph6.
    Family {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one suite over a corpus.
    Verify {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        source: CorpusSource,
        #[arg(long)]
        k: KRange,
        /// Defaults to 1:K2.
        #[arg(long)]
        kprime: Option<KRange>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Exhaustive search for violations of the shifted conjectured bound.
    Hunt {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k: KRange,
        #[arg(long)]
        kprime: KRange,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Closed-form value for a family, or a bound's right-hand side.
    Formula {
        #[arg(long, required_unless_present = "bound")]
        spec: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        kprime: Option<usize>,
        #[arg(long, requires = "sr", conflicts_with = "spec")]
        bound: Option<BoundName>,
        #[arg(long)]
        sr: Option<i64>,
    },
    /// Exact Steiner distance of a vertex set in each graph of a graph6 file.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
    },
    /// Check the general-graph diameter/radius bounds on seeded random graphs.
    SpotCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long)]
        k: KRange,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CorpusSource {
    /// Every tree of order 1..=N.
    #[arg(long)]
    n_max: Option<usize>,
    /// Trees read from a graph6 file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct RunOpts {
    /// Worker threads; never changes the report.
    #[arg(long, env = "STEINER_KIT_JOBS")]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: ReportFormat,
}

impl RunOpts {
    fn jobs(&self) -> usize {
        self.jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
    }
}

fn open_input(path: &Path) -> io::Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(Box::new(BufWriter::new(File::create(p)?))),
        _ => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

fn read_trees(path: &Path) -> Result<Vec<(usize, Tree)>, Error> {
    graph6_lines(open_input(path)?)
        .map(|line| {
            let (no, text) = line?;
            Ok((no, tree_from_graph6(&text).map_err(|e| at_line(e, no))?))
        })
        .collect()
}

fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::MalformedGraph6 { offset, reason } => {
            Error::MalformedGraph6 { offset, reason: format!("{reason} (line {line})") }
        }
        Error::NotATree(m) => Error::NotATree(format!("{m} (line {line})")),
        Error::InvalidGraph(m) => Error::InvalidGraph(format!("{m} (line {line})")),
        other => other,
    }
}

#[derive(Serialize)]
struct ComputeEntry {
    line: usize,
    graph6: String,
    records: Vec<ParamRecord>,
}

fn compute(
    input: &Path,
    k: usize,
    kprime: Option<usize>,
    all: bool,
    out: Option<&Path>,
) -> Result<u8, Error> {
    let mut entries = Vec::new();
    for (line, tree) in read_trees(input)? {
        let pairs: Vec<(usize, usize)> = if all {
            (2..=k.min(tree.order())).flat_map(|k| (1..=k).map(move |kp| (k, kp))).collect()
        } else {
            vec![(k, kprime.unwrap_or(1))]
        };
        let records = pairs
            .into_iter()
            .map(|(k, kp)| param_record(&tree, k, kp))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| at_line(e, line))?;
        entries.push(ComputeEntry { line, graph6: corpus::tree_to_graph6(&tree), records });
    }
    let mut w = open_output(out)?;
    serde_json::to_writer_pretty(&mut w, &entries)?;
    writeln!(w)?;
    w.flush()?;
    Ok(0)
}

fn write_lines(lines: impl Iterator<Item = String>, out: Option<&Path>) -> Result<u8, Error> {
    let mut w = open_output(out)?;
    for line in lines {
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(0)
}

fn finish(report: &Report, run: &RunOpts, started: Instant) -> Result<u8, Error> {
    let mut w = open_output(run.out.as_deref())?;
    emit_report(report, run.format, &mut w)?;
    w.flush()?;
    eprintln!(
        "{}: {} checked, {} skipped, {} violations, {} equalities, {:.2}s",
        report.suite,
        report.total_instances,
        report.skipped_instances,
        report.violations.len(),
        report.equality_counts.iter().map(|c| c.count).sum::<usize>(),
        started.elapsed().as_secs_f64()
    );
    Ok(if report.passed() { 0 } else { EXIT_VIOLATION })
}

fn print_rational(r: Rational) {
    if r.is_integer() {
        println!("{}", r.numer());
    } else {
        println!("{r}");
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Compute { input, k, kprime, all, out } => compute(&input, k, kprime, all, out.as_deref()),
        Command::Enumerate { n, up_to, out } => {
            let orders = if up_to { 1..=n } else { n..=n };
            let mut lines = Vec::new();
            for order in orders {
                lines.extend(enumerate_trees(order)?.map(|t| corpus::tree_to_graph6(&t)));
            }
            write_lines(lines.into_iter(), out.as_deref())
        }
        Command::Family { spec, out } => {
            let line = match spec.parse::<FamilySpec>()?.generate()? {
                Generated::Tree(t) => corpus::tree_to_graph6(&t),
                Generated::Graph(g) => corpus::graph6_encode(&g),
            };
            write_lines(std::iter::once(line), out.as_deref())
        }
        Command::Verify { suite, source, k, kprime, run } => {
            let started = Instant::now();
            let suite: Suite = suite.parse()?;
            let corpus = match (source.n_max, source.input) {
                (Some(n), _) => Corpus::enumerated(n)?,
                (None, Some(path)) => {
                    let trees = read_trees(&path)?.into_iter().map(|(_, t)| t).collect();
                    Corpus::new(trees, format!("graph6 file {}", path.display()))
                }
                (None, None) => unreachable!("clap enforces one corpus source"),
            };
            let kprime = kprime.unwrap_or(KRange::new(1, k.hi));
            let report = run_suite(suite, &corpus, k, kprime, run.jobs())?;
            finish(&report, &run, started)
        }
        Command::Hunt { n_max, k, kprime, run } => {
            let started = Instant::now();
            let report = hunt_conjecture(n_max, k, kprime, run.jobs())?;
            finish(&report, &run, started)
        }
        Command::Formula { spec, k, kprime, bound, sr } => {
            if let Some(bound) = bound {
                let sr = sr.expect("clap enforces --sr with --bound");
                print_rational(bound_value(bound, k, kprime.unwrap_or(1), sr)?);
                return Ok(0);
            }
            let spec: FamilySpec = spec.expect("clap enforces --spec").parse()?;
            let value = match kprime {
                Some(kp) => sr_kk_formula(&spec, k, kp)?,
                None => sd_k_formula(&spec, k)?,
            };
            println!("{value}");
            Ok(0)
        }
        Command::Oracle { input, set } => {
            let set = VertexSet::new(set);
            for line in graph6_lines(open_input(&input)?) {
                let (no, text) = line?;
                let graph = graph6_decode(&text).map_err(|e| at_line(e, no))?;
                println!("{}", dw_steiner(&graph, &set)?);
            }
            Ok(0)
        }
        Command::SpotCheck { n, count, p, k, seed, run } => {
            let started = Instant::now();
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Precondition(format!("edge probability {p} outside [0, 1]")));
            }
            let report = spot_check_general(n, count, p, k, seed, run.jobs())?;
            finish(&report, &run, started)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::TooLarge(_) => EXIT_GUARD,
                _ => EXIT_USAGE,
            })
        }
    }
}
