use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use codemat::code::Code;
use codemat::error::{Error, Result};
use codemat::matrix::{row_string, BitMatrix};
use codemat::{covering, galois, ideal, morphism, poset, rank, text, verify};

/// Seed used by the randomized suites unless the caller overrides it.
const DEFAULT_SEED: u64 = 0xC0DE_C0DE;

/// Like `println!`, but propagates write failures so a closed pipe ends the
/// run quietly instead of panicking.
macro_rules! out {
    ($w:expr) => { writeln!($w)? };
    ($w:expr, $($arg:tt)*) => { writeln!($w, $($arg)*)? };
}

#[derive(Parser)]
#[command(name = "codemat")]
#[command(about = "Exact tools for combinatorial codes: canonical forms, covering maps, Boolean rank")]
#[command(version)]
struct Cli {
    /// Cap on worker threads (the current pipeline is single-threaded)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Canonical form of a code's vanishing ideal
    Cf {
        /// Path to the .code file
        code: PathBuf,

        /// Emit JSON instead of one pseudomonomial per line
        #[arg(long)]
        json: bool,
    },

    /// Intersection completion of a code (or union completion with --union)
    Complete {
        /// Path to the .code file
        code: PathBuf,

        /// Complete under unions instead of intersections
        #[arg(long)]
        union: bool,

        /// Emit JSON instead of one codeword row per line
        #[arg(long)]
        json: bool,
    },

    /// Delete trivial and redundant neurons until the code is reduced
    Reduce {
        /// Path to the .code file
        code: PathBuf,

        /// Emit JSON instead of rows plus a deletion log
        #[arg(long)]
        json: bool,
    },

    /// All distinct nonempty trunks, each with its root
    Trunks {
        /// Path to the .code file
        code: PathBuf,

        /// Emit JSON instead of one "root: words" line per trunk
        #[arg(long)]
        json: bool,
    },

    /// Trunk count, word count, and their difference
    Defect {
        /// Path to the .code file
        code: PathBuf,

        /// Emit JSON instead of key/value lines
        #[arg(long)]
        json: bool,
    },

    /// Covering maps of a reduced code, one table row per neuron
    Covering {
        /// Path to the .code file (must be reduced)
        code: PathBuf,

        /// Only this neuron (1-based); all neurons when omitted
        neuron: Option<usize>,

        /// Emit JSON instead of the table
        #[arg(long)]
        json: bool,
    },

    /// Free neurons of a reduced code
    Free {
        /// Path to the .code file (must be reduced)
        code: PathBuf,

        /// Emit JSON instead of one index per line
        #[arg(long)]
        json: bool,
    },

    /// Boolean rank of a matrix: exact, bounds, or covering-chain bound
    Brank {
        /// Path to the .bmat file
        matrix: PathBuf,

        /// Branch-and-bound exact rank with a certificate factorization
        #[arg(long, conflicts_with_all = ["bounds", "chain"])]
        exact: bool,

        /// Named lower and upper bounds only (never expensive)
        #[arg(long, conflicts_with = "chain")]
        bounds: bool,

        /// Upper bound by walking certified covering steps
        #[arg(long)]
        chain: bool,

        /// Node budget for the chain search
        #[arg(long, default_value_t = 10_000)]
        budget: usize,

        /// Emit JSON (includes certificate matrices where available)
        #[arg(long)]
        json: bool,
    },

    /// Monomial rank of a matrix
    Mrank {
        /// Path to the .bmat file
        matrix: PathBuf,

        /// Emit JSON instead of the bare number
        #[arg(long)]
        json: bool,
    },

    /// Largest V with V * H equal to the code matrix, if one exists
    Factorize {
        /// Path to the .code file
        code: PathBuf,

        /// Path to the .bmat file holding the right factor H
        #[arg(long, value_name = "H.bmat")]
        via: PathBuf,

        /// Emit JSON instead of V's rows
        #[arg(long)]
        json: bool,
    },

    /// Downset of the covering order from all reduced codes of a given width
    Poset {
        /// Seed the walk with every reduced code on exactly this many neurons
        #[arg(long, value_name = "K")]
        seed_lambda: usize,

        /// Write the graph as DOT to this file
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,

        /// Write the graph as JSON to this file
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,

        /// Stop creating new nodes beyond this count
        #[arg(long, value_name = "N", default_value_t = 100_000)]
        limit: usize,
    },

    /// Whether two codes are isomorphic
    Iso {
        /// Path to the first .code file
        a: PathBuf,

        /// Path to the second .code file
        b: PathBuf,

        /// Emit JSON instead of a single verdict line
        #[arg(long)]
        json: bool,
    },

    /// Run every structural law check and print a pass/fail table
    Verify {
        /// Seed for the randomized instances
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        /// Emit JSON instead of the table
        #[arg(long)]
        json: bool,
    },

    /// Sample widened codes and test rank additivity over redundant neurons
    ConjectureScan {
        /// Number of sampled codes
        #[arg(long, value_name = "N", default_value_t = 200)]
        samples: usize,

        /// Ambient width cap for the widened samples
        #[arg(long, value_name = "K", default_value_t = 5)]
        nmax: usize,

        /// Seed for the sampler
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        /// Emit the full JSON report instead of a summary
        #[arg(long)]
        json: bool,
    },
}

fn read_code(path: &PathBuf) -> Result<Code> {
    text::parse_code(&fs::read_to_string(path)?)
}

fn read_matrix(path: &PathBuf) -> Result<BitMatrix> {
    text::parse_matrix(&fs::read_to_string(path)?)
}

fn matrix_lines(m: &BitMatrix) -> Vec<String> {
    (0..m.rows()).map(|i| row_string(m.row(i), m.cols())).collect()
}

fn print_code(out: &mut impl Write, c: &Code) -> Result<()> {
    for line in matrix_lines(&c.to_matrix()) {
        out!(out, "{line}");
    }
    Ok(())
}

fn rep_tuple(rep: &morphism::MorphismRep) -> String {
    let parts: Vec<String> = rep.taus().iter().map(|t| t.compact()).collect();
    format!("({})", parts.join(", "))
}

fn print_json(out: &mut impl Write, value: &serde_json::Value) -> Result<()> {
    out!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"));
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    if cli.threads == 0 {
        return Err(Error::domain("at least one worker thread is required"));
    }
    match cli.command {
        Commands::Cf { code, json } => {
            let c = read_code(&code)?;
            let cf = ideal::canonical_form(&c)?;
            if json {
                print_json(out, &json!({ "n": cf.n(), "elements": cf.lines() }))?;
            } else {
                for line in cf.lines() {
                    out!(out, "{line}");
                }
            }
        }
        Commands::Complete { code, union, json } => {
            let c = read_code(&code)?;
            let done = if union {
                ideal::union_completion(&c)?
            } else {
                ideal::intersection_completion(&c)?
            };
            if json {
                print_json(out, &json!({
                    "n": done.n(),
                    "rows": matrix_lines(&done.to_matrix()),
                }))?;
            } else {
                print_code(out, &done)?;
            }
        }
        Commands::Reduce { code, json } => {
            let c = read_code(&code)?;
            let red = c.reduce();
            if json {
                let steps: Vec<_> = red
                    .steps
                    .iter()
                    .map(|s| json!({ "neuron": s.index, "trivial": s.was_trivial }))
                    .collect();
                print_json(out, &json!({
                    "n": red.code.n(),
                    "rows": matrix_lines(&red.code.to_matrix()),
                    "kept": red.kept,
                    "steps": steps,
                }))?;
            } else {
                print_code(out, &red.code)?;
                for s in &red.steps {
                    let kind = if s.was_trivial { "trivial" } else { "redundant" };
                    out!(out, "# deleted neuron {} ({kind})", s.index);
                }
            }
        }
        Commands::Trunks { code, json } => {
            let c = read_code(&code)?;
            let n = c.n();
            let mut entries: Vec<(String, Vec<String>)> = c
                .enumerate_trunks()
                .into_iter()
                .map(|t| {
                    let root = codemat::code::family_root(&t, n).compact();
                    let words: Vec<String> = t.into_iter().map(|w| w.compact()).collect();
                    (root, words)
                })
                .collect();
            entries.sort();
            if json {
                let items: Vec<_> = entries
                    .iter()
                    .map(|(root, words)| json!({ "root": root, "words": words }))
                    .collect();
                print_json(out, &json!(items))?;
            } else {
                for (root, words) in entries {
                    out!(out, "{root}: {}", words.join(" "));
                }
            }
        }
        Commands::Defect { code, json } => {
            let c = read_code(&code)?;
            let t = c.trunk_count();
            let m = c.len();
            let d = covering::defect(&c);
            let complete = ideal::is_intersection_complete(&c);
            if json {
                print_json(out, &json!({
                    "trunks": t,
                    "words": m,
                    "defect": d,
                    "intersection_complete": complete,
                }))?;
            } else {
                out!(out, "trunks {t}");
                out!(out, "words {m}");
                out!(out, "defect {d}");
                out!(out, "intersection_complete {complete}");
            }
        }
        Commands::Covering { code, neuron, json } => {
            let c = read_code(&code)?;
            let neurons: Vec<usize> = match neuron {
                Some(i) => vec![i],
                None => (1..=c.n()).collect(),
            };
            let mut rows = Vec::new();
            for i in neurons {
                let step = covering::covering_map(&c, i)?;
                rows.push((i, c.is_free(i)?, step));
            }
            if json {
                let items: Vec<_> = rows
                    .iter()
                    .map(|(i, free, step)| {
                        json!({
                            "neuron": i,
                            "free": free,
                            "bmf": step.is_bmf_step,
                            "rep": rep_tuple(&step.rep),
                            "image_rows": matrix_lines(&step.image.to_matrix()),
                            "t": step.image.trunk_count(),
                            "d": covering::defect(&step.image),
                        })
                    })
                    .collect();
                print_json(out, &json!(items))?;
            } else {
                out!(out, "neuron free bmf |image| t d rep");
                for (i, free, step) in rows {
                    out!(out, 
                        "{i} {free} {} {} {} {} {}",
                        step.is_bmf_step,
                        step.image.len(),
                        step.image.trunk_count(),
                        covering::defect(&step.image),
                        rep_tuple(&step.rep),
                    );
                }
            }
        }
        Commands::Free { code, json } => {
            let c = read_code(&code)?;
            let free = covering::free_neurons(&c)?;
            if json {
                print_json(out, &json!(free))?;
            } else {
                for i in free {
                    out!(out, "{i}");
                }
            }
        }
        Commands::Brank { matrix, exact, bounds, chain, budget, json } => {
            let m = read_matrix(&matrix)?;
            if exact {
                let (r, v, h) = rank::brank_exact(&m)?;
                if json {
                    print_json(out, &json!({
                        "rank": r,
                        "v": matrix_lines(&v),
                        "h": matrix_lines(&h),
                    }))?;
                } else {
                    out!(out, "{r}");
                }
            } else if chain {
                let report = rank::brank_chain(&m, budget)?;
                let steps: Vec<_> = report
                    .steps
                    .iter()
                    .map(|s| json!({ "neuron": s.covering.neuron, "rep": rep_tuple(&s.slim) }))
                    .collect();
                if json {
                    print_json(out, &json!({
                        "bound": report.bound,
                        "reduced_bound": report.reduced_bound,
                        "appended_columns": report.appended_columns,
                        "steps": steps,
                        "nodes": report.nodes,
                        "complete": report.complete,
                        "v": matrix_lines(&report.factors.0),
                        "h": matrix_lines(&report.factors.1),
                    }))?;
                } else {
                    out!(out, "bound {}", report.bound);
                    out!(out, "nodes {}", report.nodes);
                    out!(out, "complete {}", report.complete);
                }
            } else {
                let _ = bounds;
                let report = rank::brank_bounds(&m);
                if json {
                    print_json(out, &serde_json::to_value(&report).expect("serializable"))?;
                } else {
                    for b in &report.lower {
                        out!(out, "lower {} {}", b.name, b.value);
                    }
                    for b in &report.upper {
                        out!(out, "upper {} {}", b.name, b.value);
                    }
                    out!(out, "best {} {}", report.best_lower, report.best_upper);
                    if let Some(r) = report.exact {
                        out!(out, "exact {r}");
                    }
                }
            }
        }
        Commands::Mrank { matrix, json } => {
            let m = read_matrix(&matrix)?;
            let r = rank::mrank_exact(&m)?;
            if json {
                print_json(out, &json!({ "mrank": r }))?;
            } else {
                out!(out, "{r}");
            }
        }
        Commands::Factorize { code, via, json } => {
            let c = read_code(&code)?;
            let m = c.to_matrix();
            let h = read_matrix(&via)?;
            let v = galois::residual(&m, &h)?;
            let product = galois::bool_mul(&v, &h)?;
            if product != m {
                return Err(Error::domain(
                    "no left factor over this H reproduces the code; the residual falls short",
                ));
            }
            if json {
                print_json(out, &json!({
                    "v": matrix_lines(&v),
                    "h": matrix_lines(&h),
                }))?;
            } else {
                for line in matrix_lines(&v) {
                    out!(out, "{line}");
                }
            }
        }
        Commands::Poset { seed_lambda, dot, json, limit } => {
            let seeds = codemat::code::enumerate_reduced_codes(seed_lambda)?;
            let graph = poset::downset(&seeds, limit)?;
            if let Some(path) = &dot {
                poset::export_dot(&graph, path)?;
            }
            if let Some(path) = &json {
                let body = serde_json::to_string_pretty(&graph).expect("serializable");
                fs::write(path, body + "\n")?;
            }
            out!(out, "nodes {}", graph.nodes.len());
            out!(out, "edges {}", graph.edges.len());
            out!(out, "truncated {}", graph.truncated);
            let mut by_lambda: std::collections::BTreeMap<usize, usize> = Default::default();
            for node in graph.nodes.values() {
                *by_lambda.entry(node.lambda).or_default() += 1;
            }
            for (lambda, count) in by_lambda {
                out!(out, "lambda {lambda}: {count}");
            }
            if let Some(w) = graph.max_width_increase {
                out!(out, "max_width_increase {w}");
            }
        }
        Commands::Iso { a, b, json } => {
            let ca = read_code(&a)?;
            let cb = read_code(&b)?;
            let iso = ca.is_isomorphic(&cb);
            if json {
                print_json(out, &json!({ "isomorphic": iso }))?;
            } else if iso {
                out!(out, "isomorphic");
            } else {
                out!(out, "not isomorphic");
            }
        }
        Commands::Verify { seed, json } => {
            let outcomes = verify::run_all(seed);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if json {
                print_json(out, &serde_json::to_value(&outcomes).expect("serializable"))?;
            } else {
                let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
                for o in &outcomes {
                    let mark = if o.passed { "pass" } else { "FAIL" };
                    out!(out, "{mark} {:width$} {}", o.name, o.details);
                }
                out!(out, 
                    "{} checks, {} passed, {failed} failed",
                    outcomes.len(),
                    outcomes.len() - failed,
                );
            }
            if failed > 0 {
                return Err(Error::domain(format!("{failed} law checks failed")));
            }
        }
        Commands::ConjectureScan { samples, nmax, seed, json } => {
            let report = rank::conjecture_scan(samples, nmax, seed)?;
            if json {
                print_json(out, &serde_json::to_value(&report).expect("serializable"))?;
            } else {
                out!(out, "samples {}", report.samples);
                out!(out, "n_max {}", report.n_max);
                out!(out, "seed {}", report.seed);
                out!(out, "agreements {}", report.agreements);
                out!(out, "disagreements {}", report.disagreements);
                for rec in report.records.iter().filter(|r| !r.agrees) {
                    out!(out);
                    for row in &rec.matrix {
                        out!(out, "{row}");
                    }
                    out!(out, 
                        "brank {} reduced {} predicted {}",
                        rec.brank_full, rec.brank_reduced, rec.predicted,
                    );
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
