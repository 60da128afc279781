//! `patlab`: command-line front end.
//!
//! Exit codes: 0 success or "contains", 1 negative result or failed
//! verification, 2 input error, 3 budget refusal.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use patlab::bigraph::{census_avoiding_graphs, fiber_bound_sum, graph_of_pattern, CensusOptions};
use patlab::enumeration::{count_multiset_avoiders_with, sequence_with, CountOptions};
use patlab::matrix::{extremal_table, ExtremalLimits};
use patlab::report;
use patlab::verify::{manifest_for, RunManifest, Suite, DEFAULT_SEED};
use patlab::word::find_embedding;
use patlab::{
    bounds, contract, ordered_contains, perm_to_matrix, BinaryMatrix, ContractionPlan, Count,
    Error, MultisetSpec, Slope, Word,
};

#[derive(Parser)]
#[command(name = "patlab", version, about = "Exact pattern-avoidance laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a word contains a pattern.
    Contains {
        #[arg(long)]
        word: String,
        #[arg(long)]
        pattern: String,
    },
    /// Count pattern-avoiding arrangements of [n]_m.
    Count {
        #[arg(long)]
        pattern: String,
        /// Single ground-set size.
        #[arg(long, conflicts_with = "n_max", required_unless_present_any = ["n_max", "multiplicities"])]
        n: Option<usize>,
        /// Tabulate every n from 1 to this value.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Irregular multiplicities, e.g. "2,1,3"; overrides --n and --m.
        #[arg(long, conflicts_with_all = ["n", "n_max"])]
        multiplicities: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Exact extremal function f(n, Q) for n = 1..n-max.
    Extremal {
        /// File with one 0/1 row per line.
        #[arg(long, required_unless_present = "pattern")]
        matrix_file: Option<PathBuf>,
        /// Permutation whose matrix is the forbidden pattern.
        #[arg(long, conflicts_with = "matrix_file")]
        pattern: Option<String>,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Raise the size guard for this pattern to the given n.
        #[arg(long)]
        allow_n: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count bipartite graphs on ([nm],[n]) avoiding the graph of a permutation.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Evaluate the graph-count bounds for a slope d (e.g. "9/5").
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        d: String,
    },
    /// Show the block contraction of the graph of a word.
    Contract {
        #[arg(long)]
        word: String,
    },
    /// Report the 1212 / 111 contraction counterexample.
    Counterexample,
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Contains { word, pattern } => cmd_contains(&word, &pattern),
        Command::Count {
            pattern,
            n,
            n_max,
            m,
            multiplicities,
            format,
            workers,
        } => cmd_count(
            &pattern,
            n,
            n_max,
            m,
            multiplicities.as_deref(),
            format,
            workers,
        ),
        Command::Extremal {
            matrix_file,
            pattern,
            n_max,
            format,
            workers,
            allow_n,
        } => cmd_extremal(
            matrix_file,
            pattern.as_deref(),
            n_max,
            format,
            workers,
            allow_n,
        ),
        Command::Verify {
            suite,
            seed,
            workers,
            format,
        } => cmd_verify(&suite, seed, workers, format),
        Command::Census {
            n,
            m,
            pattern,
            workers,
        } => cmd_census(n, m, &pattern, workers),
        Command::Bounds { n, m, d } => cmd_bounds(n, m, &d),
        Command::Contract { word } => cmd_contract(&word),
        Command::Counterexample => cmd_counterexample(),
    }
}

fn parse_word(text: &str) -> Result<Word, Failure> {
    text.parse::<Word>().map_err(Failure::from)
}

fn cmd_contains(word: &str, pattern: &str) -> Outcome {
    let w = parse_word(word)?;
    let q = parse_word(pattern)?;
    match find_embedding(&w, &q)? {
        Some(positions) => {
            let values: Vec<String> = positions
                .iter()
                .map(|&i| w.entries()[i].to_string())
                .collect();
            let pos: Vec<String> = positions.iter().map(|i| (i + 1).to_string()).collect();
            println!("contains");
            println!("positions: {}", pos.join(" "));
            println!("values: {}", values.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("avoids");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_count(
    pattern: &str,
    n: Option<usize>,
    n_max: Option<usize>,
    m: usize,
    multiplicities: Option<&str>,
    format: Format,
    workers: usize,
) -> Outcome {
    let q = parse_word(pattern)?;
    let options = CountOptions::default().with_workers(workers);
    let records = if let Some(list) = multiplicities {
        let parsed = list
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::Input(format!("bad multiplicity list {list:?}")))?;
        let spec = MultisetSpec::new(parsed)?;
        vec![count_multiset_avoiders_with(&spec, &q, &options)?]
    } else if let Some(n) = n {
        if n == 0 || m == 0 {
            return Err(Failure::Input("--n and --m must be at least 1".into()));
        }
        vec![count_multiset_avoiders_with(
            &MultisetSpec::regular(n, m)?,
            &q,
            &options,
        )?]
    } else {
        let n_max = n_max.expect("clap enforces --n or --n-max");
        if m == 0 {
            return Err(Failure::Input("--m must be at least 1".into()));
        }
        sequence_with(&q, n_max, m, &options)?
    };
    match format {
        Format::Json => println!("{}", report::counts_to_json(&records)),
        Format::Csv | Format::Text => print!("{}", report::counts_to_csv(&records)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_extremal(
    matrix_file: Option<PathBuf>,
    pattern: Option<&str>,
    n_max: usize,
    format: Format,
    workers: usize,
    allow_n: Option<usize>,
) -> Outcome {
    let q: BinaryMatrix = match (matrix_file, pattern) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            text.parse()?
        }
        (None, Some(p)) => perm_to_matrix(&parse_word(p)?)?,
        (None, None) => return Err(Failure::Input("a pattern matrix is required".into())),
    };
    if n_max == 0 {
        return Err(Failure::Input("--n-max must be at least 1".into()));
    }
    let mut limits = ExtremalLimits {
        workers,
        ..Default::default()
    };
    if let Some(allow) = allow_n {
        let k = q.rows().max(q.cols());
        limits.max_n.resize(
            k.max(limits.max_n.len()),
            *limits.max_n.last().unwrap_or(&0),
        );
        limits.max_n[k - 1] = allow;
    }
    let records = extremal_table(&q, n_max, &limits)?;
    match format {
        Format::Json => println!("{}", report::extremal_to_json(&records)),
        Format::Csv => print!("{}", report::extremal_to_csv(&records)),
        Format::Text => {
            println!("{:>3} {:>6} {:>8}", "n", "f(n,Q)", "slope");
            for r in &records {
                println!("{:>3} {:>6} {:>8}", r.n, r.value, r.slope.to_string());
            }
            for r in &records {
                println!("\nwitness n={}:", r.n);
                print!("{}", r.witness);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: &str, seed: u64, workers: usize, format: Format) -> Outcome {
    let suite: Suite = suite.parse()?;
    let manifest: RunManifest = manifest_for(suite, seed, workers.max(1));
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&manifest).expect("serializable")
        ),
        Format::Csv | Format::Text => {
            for check in &manifest.checks {
                let mark = if check.passed { "PASS" } else { "FAIL" };
                if check.detail.is_empty() {
                    println!("{mark} {}", check.name);
                } else {
                    println!("{mark} {} [{}]", check.name, check.detail);
                }
            }
            println!("suite {} seed {}: {}", suite, seed, manifest.outcome);
        }
    }
    Ok(if manifest.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_census(n: usize, m: usize, pattern: &str, workers: usize) -> Outcome {
    let q = parse_word(pattern)?;
    if n == 0 || m == 0 {
        return Err(Failure::Input("--n and --m must be at least 1".into()));
    }
    let options = CensusOptions {
        workers,
        ..Default::default()
    };
    let census: Count = census_avoiding_graphs(n, m, &q, &options)?;
    let fibers: Count = fiber_bound_sum(n, m, &q, &options)?;
    let mut out = BTreeMap::new();
    out.insert("n", n.to_string());
    out.insert("m", m.to_string());
    out.insert("pattern", q.to_string());
    out.insert("avoiding_graphs", census.to_string());
    out.insert("fiber_bound", fibers.to_string());
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("serializable")
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(n: usize, m: usize, d: &str) -> Outcome {
    let d: Slope = d
        .parse()
        .map_err(|_| Failure::Input(format!("bad slope {d:?}; expected p or p/q")))?;
    let record = bounds(n, m, d)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&record).expect("serializable")
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_contract(word: &str) -> Outcome {
    let w = parse_word(word)?;
    let spec = w.spec()?;
    let g = graph_of_pattern(&w)?;
    let plan = ContractionPlan::new(&spec);
    let c = contract(&g, &plan)?;
    println!(
        "graph of {w} on ([{}],[{}]):",
        g.left_size(),
        g.right_size()
    );
    print!("{}", g.to_text());
    let blocks: Vec<String> = plan
        .blocks()
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    println!("blocks: {}", blocks.join(" "));
    println!("contracted on ([{}],[{}]):", c.left_size(), c.right_size());
    print!("{}", c.to_text());
    Ok(ExitCode::SUCCESS)
}

fn cmd_counterexample() -> Outcome {
    let p: Word = "1212".parse()?;
    let q: Word = "111".parse()?;
    let gp = graph_of_pattern(&p)?;
    let gq = graph_of_pattern(&q)?;
    let cp = contract(&gp, &ContractionPlan::new(&p.spec()?))?;
    let cq = contract(&gq, &ContractionPlan::new(&q.spec()?))?;
    let before = ordered_contains(&gp, &gq);
    let after = ordered_contains(&cp, &cq);
    println!("before contraction: G_1212 {} G_111", verb(before));
    print!("G_1212:\n{}G_111:\n{}", gp.to_text(), gq.to_text());
    println!("after contraction: G'_1212 {} G'_111", verb(after));
    print!("G'_1212:\n{}G'_111:\n{}", cp.to_text(), cq.to_text());
    Ok(if !before && after {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verb(contains: bool) -> &'static str {
    if contains {
        "contains"
    } else {
        "avoids"
    }
}
