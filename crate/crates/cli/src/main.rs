use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fktree_core::json::to_json;
use fktree_core::oracle::DEFAULT_CAP;
use fktree_core::{
    brute_force_minimizer, build_comet, build_relaxed_minimizer, build_slo_star_tree, build_td_minimizer,
    compare_sequences, first_eigenpair, majorize_normalize, normalize_to_slo_star, parse_tree,
    verify_theorem, ClassSpec, DegreeSequence, Theorem, TreeWithBoundary, VertexOrdering,
};
use serde::Serialize;

/// Dirichlet eigenvalues, rearrangements and extremal trees of trees with boundary.
#[derive(Debug, Parser)]
#[command(name = "fktree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format where both are defined.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit an extremal tree in the tree file format.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// First Dirichlet eigenpair of a tree.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Rearrange a tree into the SLO* tree of its own or a majorized sequence.
    Normalize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        target_pi: Option<String>,
    },
    /// Exhaustive check of a theorem on all small instances.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
    /// Majorization verdict and the eigenvalues of both SLO* trees.
    Compare {
        #[arg(long)]
        pi_a: String,
        #[arg(long)]
        pi_b: String,
    },
    /// Census of a degree-sequence class.
    Enumerate {
        #[arg(long)]
        pi: String,
    },
}

#[derive(Debug, Subcommand)]
enum Construct {
    SloStar {
        #[arg(long)]
        pi: String,
    },
    Comet(NK),
    TdMin {
        #[command(flatten)]
        nk: NK,
        #[arg(long)]
        d: usize,
    },
    Relaxed {
        #[arg(long, value_enum)]
        kind: Relaxed,
        /// Comma-separated `key=value` pairs, e.g. `n=9,d=3`.
        #[arg(long)]
        params: String,
    },
}

#[derive(Debug, Args)]
struct NK {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Relaxed {
    I,
    Ii,
    Iii,
    Iv,
}

fn sequence(flag: &str, text: &str) -> Result<DegreeSequence> {
    let pi: DegreeSequence = text.parse().with_context(|| format!("{flag}: cannot parse {text:?}"))?;
    if !pi.is_tree_sequence() {
        bail!("{flag}: ({pi}) is not a tree sequence");
    }
    Ok(pi)
}

fn read_tree(path: &Path) -> Result<TreeWithBoundary> {
    let text = fs::read_to_string(path).with_context(|| format!("--input: cannot read {}", path.display()))?;
    parse_tree(&text).with_context(|| format!("--input: {}", path.display()))
}

fn params(text: &str) -> Result<Vec<(String, usize)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| anyhow!("--params: expected key=value, found {kv:?}"))?;
            let v = v.trim().parse().with_context(|| format!("--params: bad value in {kv:?}"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn param(list: &[(String, usize)], key: &str) -> Result<usize> {
    list.iter()
        .find(|(k, _)| k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| anyhow!("--params: missing {key}"))
}

fn tree_file(tree: &TreeWithBoundary, ordering: Option<&VertexOrdering>) -> String {
    let mut out = tree.to_tree_file();
    if let Some(o) = ordering {
        let ranks: Vec<String> = o.order().iter().map(usize::to_string).collect();
        out.push_str(&format!("# order: {}\n", ranks.join(" ")));
    }
    out
}

fn construct(kind: &Construct) -> Result<String> {
    let tree = match kind {
        Construct::SloStar { pi } => {
            let built = build_slo_star_tree(&sequence("--pi", pi)?)?;
            return Ok(tree_file(&built.tree, Some(&built.ordering)));
        }
        Construct::Comet(NK { n, k }) => build_comet(*n, *k).context("--n/--k")?,
        Construct::TdMin { nk: NK { n, k }, d } => build_td_minimizer(*n, *k, *d).context("--n/--k/--d")?,
        Construct::Relaxed { kind, params: text } => {
            let p = params(text)?;
            let spec = match kind {
                Relaxed::I => ClassSpec::Order { n: param(&p, "n")? },
                Relaxed::Ii => ClassSpec::OrderMinDegree { n: param(&p, "n")?, d: param(&p, "d")? },
                Relaxed::Iii => ClassSpec::Interior { k: param(&p, "k")? },
                Relaxed::Iv => ClassSpec::InteriorMinDegree { k: param(&p, "k")?, d: param(&p, "d")? },
            };
            build_relaxed_minimizer(&spec).context("--params")?
        }
    };
    Ok(tree_file(&tree, None))
}

#[derive(Serialize)]
struct Normalized<'a> {
    tree: &'a [(usize, usize)],
    n: usize,
    ordering: &'a [usize],
    trace: fktree_core::rearrange::TraceReport<'a>,
}

#[derive(Serialize)]
struct Comparison {
    leq: bool,
    witness: Option<usize>,
    lambda_a: f64,
    lambda_b: f64,
}

/// Output text and whether every checked instance passed.
fn run(cli: &Cli) -> Result<(String, bool)> {
    let text = match &cli.command {
        Command::Construct { kind } => construct(kind)?,
        Command::Solve { input, tol } => {
            let tree = read_tree(input)?;
            to_json(&first_eigenpair(&tree, *tol).context("--tol")?)
        }
        Command::Normalize { input, target_pi } => {
            let tree = read_tree(input)?;
            let out = match target_pi {
                Some(pi) => majorize_normalize(&tree, &sequence("--target-pi", pi)?).context("--target-pi")?,
                None => normalize_to_slo_star(&tree)?,
            };
            to_json(&Normalized {
                tree: out.tree.edges(),
                n: out.tree.n(),
                ordering: out.ordering.order(),
                trace: out.trace.report(),
            })
        }
        Command::Verify { theorem, max_n } => {
            let t: Theorem = theorem.parse().context("--theorem")?;
            let report = verify_theorem(t, *max_n).context("--max-n")?;
            return Ok((to_json(&report), report.passed));
        }
        Command::Compare { pi_a, pi_b } => {
            let (a, b) = (sequence("--pi-a", pi_a)?, sequence("--pi-b", pi_b)?);
            let verdict = compare_sequences(&a, &b).context("--pi-a/--pi-b")?;
            let lambda = |pi: &DegreeSequence| -> Result<f64> {
                Ok(first_eigenpair(&build_slo_star_tree(pi)?.tree, 1e-12)?.lambda)
            };
            to_json(&Comparison { leq: verdict.leq, witness: verdict.witness, lambda_a: lambda(&a)?, lambda_b: lambda(&b)? })
        }
        Command::Enumerate { pi } => {
            let spec = ClassSpec::Sequence { pi: sequence("--pi", pi)? };
            let census = brute_force_minimizer(&spec, 1e-9, DEFAULT_CAP).context("--pi")?;
            match cli.format {
                Format::Csv => census.to_csv(),
                Format::Json => to_json(&census.rows()),
            }
        }
    };
    Ok((text, true))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("--out: cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("error: {}", msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    let result = run(&cli).and_then(|(text, passed)| {
        emit(&cli, &text)?;
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verification failed on at least one instance");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
