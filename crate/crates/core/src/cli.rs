//! Command-line front end.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::amity::{
    check_friendly_bijection, check_friendly_numbering, parse_bijection, parse_numbering, AmityError, EdgeBijection,
    Numbering, Violation,
};
use crate::cb::{find_subtree_pair, small_n_pair, CbError, SubtreePair};
use crate::enumerate::enumerate_free_trees;
use crate::parity::number_parity_center;
use crate::report::{InputFile, RunReport, Witness};
use crate::search::{search_bijection, search_numbering, symmetry_audit, SearchBudget, SearchError, SearchOutcome};
use crate::sweep::{sweep_cb_universal, sweep_hypothesis, sweep_question_path, Hypothesis};
use crate::tree::{parse_labeled_tree, EdgeSet, LabeledTree, TreeError};
use crate::trunk::number_by_trunk;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;

pub const JOBS_ENV: &str = "TREE_AMITY_JOBS";

#[derive(Debug, Parser)]
#[command(name = "tree-amity", version, about = "Friendly numberings and friendly bijections of trees")]
pub struct Cli {
    /// Worker threads for sweeps and audits (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write a JSON run report to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 10_000_000)]
    pub max_nodes: u64,
    /// Seconds per search instance.
    #[arg(long, default_value_t = 60)]
    pub time_limit: u64,
    /// Run searches to completion regardless of the limits.
    #[arg(long)]
    pub exhaustive: bool,
}

impl BudgetArgs {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.max_nodes,
            time_limit: Duration::from_secs(self.time_limit),
            exhaustive: self.exhaustive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Trunk,
    ParityCenter,
    Auto,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    QuestionPath,
    D4,
    Odd,
    Cb,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a numbering ("u v k" lines) of a tree.
    CheckNumbering { tree: PathBuf, numbering: PathBuf },
    /// Check a bijection ("u1 v1 -> u2 v2" lines) between two trees.
    CheckBijection { source: PathBuf, target: PathBuf, bijection: PathBuf },
    /// Print a friendly numbering of a tree.
    Number {
        tree: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Decide whether CB(n1, n2) is friendly to a tree.
    CbCriterion {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        tree: PathBuf,
    },
    /// Construct the subtree pair for CB(m - n + 1, n) with n in 2..=4.
    CbPair {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        n: u8,
        tree: PathBuf,
    },
    /// Search for a friendly numbering, or a friendly bijection onto --target.
    Search {
        tree: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sweep all free trees and write a JSON report.
    Sweep {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(short = 'm', long, default_value_t = 8)]
        max_edges: usize,
        #[arg(long, default_value_t = 5)]
        n1: usize,
        #[arg(long, default_value_t = 5)]
        n2: usize,
        /// Confirm CB criterion failures by bijection search.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        confirm: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check every bijection between small trees against its inverse.
    AuditSymmetry {
        #[arg(short = 'm', long, default_value_t = 5)]
        max_edges: usize,
    },
    /// Print all free trees with the given edge count.
    Enumerate {
        #[arg(short = 'm', long)]
        edges: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckNumbering { .. } => "check-numbering",
            Command::CheckBijection { .. } => "check-bijection",
            Command::Number { .. } => "number",
            Command::CbCriterion { .. } => "cb-criterion",
            Command::CbPair { .. } => "cb-pair",
            Command::Search { .. } => "search",
            Command::Sweep { .. } => "sweep",
            Command::AuditSymmetry { .. } => "audit-symmetry",
            Command::Enumerate { .. } => "enumerate",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Tree { path: String, source: TreeError },
    #[error("{path}: {source}")]
    Amity { path: String, source: AmityError },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Cb(#[from] CbError),
    #[error("writing JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Parses arguments from the process and runs; returns the exit code.
pub fn main_entry() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(err) => {
            let code = if err.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = err.print();
            code
        }
    }
}

fn configure_jobs(flag: Option<usize>) {
    let from_env = std::env::var(JOBS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok());
    if let Some(n) = from_env.or(flag).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub fn run(cli: Cli) -> i32 {
    configure_jobs(cli.jobs);
    let start = Instant::now();
    let mut report = RunReport::new(cli.command.name());
    let code = match execute(&cli.command, &mut report) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            report.outcome = "input-error".into();
            EXIT_INPUT
        }
    };
    report.exit_code = code;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    if let Some(path) = &cli.report {
        let written =
            serde_json::to_string_pretty(&report).map_err(CliError::from).and_then(|text| write_file(path, &text));
        if let Err(err) = written {
            eprintln!("error: {err}");
            return EXIT_INPUT;
        }
    }
    code
}

fn read_input(path: &Path, report: &mut RunReport) -> Result<String, CliError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: display.clone(), source })?;
    report.inputs.push(InputFile::new(&display, text.as_bytes()));
    Ok(text)
}

fn read_tree(path: &Path, report: &mut RunReport) -> Result<LabeledTree, CliError> {
    let text = read_input(path, report)?;
    parse_labeled_tree(&text).map_err(|source| CliError::Tree { path: path.display().to_string(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn describe_violation(v: &Violation, source: &LabeledTree) -> String {
    match v {
        Violation::NumberingPair { k, j, path } => {
            format!("not friendly: k={k} j={j} path={path:?}")
        }
        Violation::Hook { p, q, p_hooks, witness } => {
            let (p, q) = (source.labels[*p], source.labels[*q]);
            let (a, b) = if *p_hooks { (p, q) } else { (q, p) };
            format!("not friendly: image of the coboundary of {a} hooks onto that of {b} ({witness:?})")
        }
    }
}

fn labeled_edges(lt: &LabeledTree, set: &EdgeSet) -> Vec<(u64, u64)> {
    set.iter().map(|e| lt.edge_labels(e)).collect()
}

fn pair_witness(lt: &LabeledTree, pair: &SubtreePair) -> Witness {
    Witness::SubtreePair {
        tree: lt.to_text(),
        e1: labeled_edges(lt, &pair.e1),
        e2: labeled_edges(lt, &pair.e2),
        shared: lt.edge_labels(pair.shared),
    }
}

fn print_pair(lt: &LabeledTree, pair: &SubtreePair) {
    let fmt = |edges: Vec<(u64, u64)>| edges.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ");
    println!("E1: {}", fmt(labeled_edges(lt, &pair.e1)));
    println!("E2: {}", fmt(labeled_edges(lt, &pair.e2)));
    let (u, v) = lt.edge_labels(pair.shared);
    println!("shared: {u}-{v}");
}

fn numbering_witness(lt: &LabeledTree, nu: &Numbering) -> Witness {
    Witness::Numbering { tree: lt.to_text(), numbering: nu.to_text(lt) }
}

fn execute(command: &Command, report: &mut RunReport) -> Result<i32, CliError> {
    match command {
        Command::CheckNumbering { tree, numbering } => {
            let lt = read_tree(tree, report)?;
            let text = read_input(numbering, report)?;
            let nu = parse_numbering(&lt, &text)
                .map_err(|source| CliError::Amity { path: numbering.display().to_string(), source })?;
            match check_friendly_numbering(&nu) {
                Ok(()) => {
                    println!("friendly");
                    report.outcome = "friendly".into();
                    report.witnesses.push(numbering_witness(&lt, &nu));
                    Ok(EXIT_OK)
                }
                Err(v) => {
                    println!("{}", describe_violation(&v, &lt));
                    report.outcome = "violation".into();
                    report.witnesses.push(Witness::NumberingViolation {
                        tree: lt.to_text(),
                        numbering: nu.to_text(&lt),
                        violation: v,
                    });
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Command::CheckBijection { source, target, bijection } => {
            let s = read_tree(source, report)?;
            let t = read_tree(target, report)?;
            let text = read_input(bijection, report)?;
            let b = parse_bijection(&s, &t, &text)
                .map_err(|err| CliError::Amity { path: bijection.display().to_string(), source: err })?;
            let (source_text, target_text, map_text) = (s.to_text(), t.to_text(), b.to_text(&s, &t));
            match check_friendly_bijection(&b) {
                Ok(()) => {
                    println!("friendly");
                    report.outcome = "friendly".into();
                    report.witnesses.push(Witness::Bijection {
                        source: source_text,
                        target: target_text,
                        bijection: map_text,
                    });
                    Ok(EXIT_OK)
                }
                Err(v) => {
                    println!("{}", describe_violation(&v, &s));
                    report.outcome = "violation".into();
                    report.witnesses.push(Witness::BijectionViolation {
                        source: source_text,
                        target: target_text,
                        bijection: map_text,
                        violation: v,
                    });
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Command::Number { tree, method, budget } => {
            let lt = read_tree(tree, report)?;
            let t = &lt.tree;
            let mut attempts: Vec<MethodArg> = match method {
                MethodArg::Auto => vec![MethodArg::Trunk, MethodArg::ParityCenter, MethodArg::Search],
                other => vec![*other],
            };
            let mut budget_hit = false;
            for m in attempts.drain(..) {
                let nu = match m {
                    MethodArg::Trunk => number_by_trunk(t).ok(),
                    MethodArg::ParityCenter => number_parity_center(t).ok(),
                    MethodArg::Search => match search_numbering(t, budget.budget()) {
                        SearchOutcome::Found(nu) => Some(nu),
                        SearchOutcome::ProvedNone => None,
                        SearchOutcome::BudgetExceeded => {
                            budget_hit = true;
                            None
                        }
                    },
                    MethodArg::Auto => unreachable!(),
                };
                let Some(nu) = nu else { continue };
                if check_friendly_numbering(&nu).is_err() {
                    eprintln!("warning: {m:?} produced a numbering that failed verification");
                    continue;
                }
                let name = m.to_possible_value().unwrap().get_name().to_string();
                eprintln!("method: {name}");
                print!("{}", nu.to_text(&lt));
                report.outcome = "found".into();
                report.details = json!({ "method": name });
                report.witnesses.push(numbering_witness(&lt, &nu));
                return Ok(EXIT_OK);
            }
            let why = if budget_hit { "budget-exceeded" } else { "inapplicable" };
            eprintln!("no numbering: {why}");
            report.outcome = why.into();
            Ok(EXIT_INAPPLICABLE)
        }
        Command::CbCriterion { n1, n2, tree } => {
            let lt = read_tree(tree, report)?;
            let m = lt.tree.edge_count();
            if *n1 == 0 || *n2 == 0 {
                return Err(CbError::ZeroStar.into());
            }
            if m + 1 != n1 + n2 {
                println!("not friendly: the tree has {m} edges, CB({n1}, {n2}) has {}", n1 + n2 - 1);
                report.outcome = "criterion-fails".into();
                return Ok(EXIT_VIOLATION);
            }
            match find_subtree_pair(&lt.tree, *n1, *n2)? {
                Some(pair) => {
                    println!("friendly");
                    print_pair(&lt, &pair);
                    report.outcome = "criterion-holds".into();
                    report.witnesses.push(pair_witness(&lt, &pair));
                    Ok(EXIT_OK)
                }
                None => {
                    println!("not friendly: no pair of subtrees with {n1} and {n2} edges meeting in one edge");
                    report.outcome = "criterion-fails".into();
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Command::CbPair { n, tree } => {
            let lt = read_tree(tree, report)?;
            match small_n_pair(&lt.tree, *n as usize) {
                Ok(pair) => {
                    print_pair(&lt, &pair);
                    report.outcome = "found".into();
                    report.witnesses.push(pair_witness(&lt, &pair));
                    Ok(EXIT_OK)
                }
                Err(err @ CbError::TooSmall { .. }) => {
                    eprintln!("inapplicable: {err}");
                    report.outcome = "inapplicable".into();
                    Ok(EXIT_INAPPLICABLE)
                }
                Err(err) => Err(err.into()),
            }
        }
        Command::Search { tree, target, budget } => {
            let lt = read_tree(tree, report)?;
            let outcome = match target {
                None => match search_numbering(&lt.tree, budget.budget()) {
                    SearchOutcome::Found(nu) => {
                        print!("{}", nu.to_text(&lt));
                        report.witnesses.push(numbering_witness(&lt, &nu));
                        SearchOutcome::Found(())
                    }
                    SearchOutcome::ProvedNone => SearchOutcome::ProvedNone,
                    SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
                },
                Some(path) => {
                    let lt2 = read_tree(path, report)?;
                    match search_bijection(&lt.tree, &lt2.tree, budget.budget())? {
                        SearchOutcome::Found(b) => {
                            print_bijection(&b, &lt, &lt2, report);
                            SearchOutcome::Found(())
                        }
                        SearchOutcome::ProvedNone => SearchOutcome::ProvedNone,
                        SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
                    }
                }
            };
            let (label, code) = match outcome {
                SearchOutcome::Found(()) => ("found", EXIT_OK),
                SearchOutcome::ProvedNone => ("proved-none", EXIT_VIOLATION),
                SearchOutcome::BudgetExceeded => ("budget-exceeded", EXIT_INAPPLICABLE),
            };
            eprintln!("{label}");
            report.outcome = label.into();
            Ok(code)
        }
        Command::Sweep { kind, max_edges, n1, n2, confirm, out, budget } => {
            let b = budget.budget();
            let sweep = match kind {
                KindArg::QuestionPath => sweep_question_path(*max_edges, b),
                KindArg::D4 => sweep_hypothesis(*max_edges, Hypothesis::D4, b),
                KindArg::Odd => sweep_hypothesis(*max_edges, Hypothesis::Odd, b),
                KindArg::Cb => {
                    if *n1 == 0 || *n2 == 0 {
                        return Err(CbError::ZeroStar.into());
                    }
                    sweep_cb_universal(*n1, *n2, *confirm, b)
                }
            };
            let text = serde_json::to_string_pretty(&json!({ "schema": crate::report::SCHEMA, "sweep": sweep }))?;
            match out {
                Some(path) => write_file(path, &text)?,
                None => println!("{text}"),
            }
            let s = &sweep.summary;
            eprintln!(
                "{} records: {} found, {} proved none, {} over budget, {} criterion failures",
                s.records, s.found, s.proved_none, s.budget_exceeded, s.criterion_failures
            );
            for code in &sweep.findings {
                eprintln!("finding: no witness exists for {code}");
            }
            report.outcome = "completed".into();
            report.details = serde_json::to_value(s)?;
            Ok(EXIT_OK)
        }
        Command::AuditSymmetry { max_edges } => {
            let audit = symmetry_audit(*max_edges);
            println!("{}", serde_json::to_string_pretty(&audit)?);
            let clean = audit.counterexamples.is_empty();
            report.outcome = if clean { "holds" } else { "violation" }.into();
            report.details = serde_json::to_value(&audit)?;
            Ok(if clean { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Enumerate { edges } => {
            let texts: Vec<String> = enumerate_free_trees(*edges).map(|t| t.to_text()).collect();
            print!("{}", texts.join("\n"));
            report.outcome = "completed".into();
            report.details = json!({ "count": texts.len() });
            Ok(EXIT_OK)
        }
    }
}

fn print_bijection(b: &EdgeBijection, source: &LabeledTree, target: &LabeledTree, report: &mut RunReport) {
    let text = b.to_text(source, target);
    print!("{text}");
    report.witnesses.push(Witness::Bijection { source: source.to_text(), target: target.to_text(), bijection: text });
}
