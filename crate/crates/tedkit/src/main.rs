//! Command-line front end: distances, edit scripts, step reports,
//! enumeration dumps and bound-check tables.
//!
//! Exit codes: 0 ok, 1 input parse error, 2 configuration error
//! (unreadable files, bad flags, oracle size guard), 3 internal
//! invariant failure.

use std::fmt::Write as _;
use std::panic;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tedkit::corpus;
use tedkit::cost::CostModel;
use tedkit::engines::{recover_mapping, run_engine, validate_mapping, Engine};
use tedkit::enumerate::{enumerate, Scheme};
use tedkit::instrument::{check_collapsed_depths, check_engine_steps, check_halving, BoundCheck};
use tedkit::oracle::{self, DEFAULT_SIZE_GUARD};
use tedkit::strategy::{count_steps, plan, PathKind, Strategy};
use tedkit::subforest::{Dir, ForestIndex};
use tedkit::tree::{node_ref, StructuralIndex, Tree};

#[derive(Parser)]
#[command(name = "tedkit", version, about = "Ordered labeled tree edit distance toolkit")]
struct Cli {
    /// Output mode: human text or one JSON record per result line.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Edit distance between two trees.
    Dist {
        #[arg(long, value_enum, default_value_t = EngineArg::Combined)]
        engine: EngineArg,
        /// `unit`, `paper`, or a cost-table file path.
        #[arg(long, default_value = "unit")]
        cost: String,
        /// Inline tree (starting with `{`) or a file path.
        tree1: String,
        tree2: String,
    },
    /// Distance plus an optimal edit script.
    Mapping {
        #[arg(long, value_enum, default_value_t = EngineArg::Combined)]
        engine: EngineArg,
        #[arg(long, default_value = "unit")]
        cost: String,
        tree1: String,
        tree2: String,
    },
    /// Relaxation-count report and, for the combined strategy, the
    /// decision table.
    Steps {
        #[arg(long, value_enum, default_value_t = StrategyArg::Combined)]
        strategy: StrategyArg,
        tree1: String,
        tree2: String,
    },
    /// Dump one subforest enumeration sequence.
    Enum {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        tree: String,
    },
    /// Bound-check table over the standard tree families.
    Bench {
        /// Largest tree size exercised.
        #[arg(long, default_value_t = 512)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Naive,
    Zs,
    Klein,
    Demaine,
    Combined,
    Oracle,
}

impl EngineArg {
    fn engine(self) -> Option<Engine> {
        match self {
            EngineArg::Naive => Some(Engine::Naive(Scheme::Lr)),
            EngineArg::Zs => Some(Engine::ZhangShasha),
            EngineArg::Klein => Some(Engine::Klein),
            EngineArg::Demaine => Some(Engine::Demaine),
            EngineArg::Combined => Some(Engine::Combined),
            EngineArg::Oracle => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            EngineArg::Naive => "naive",
            EngineArg::Zs => "zs",
            EngineArg::Klein => "klein",
            EngineArg::Demaine => "demaine",
            EngineArg::Combined => "combined",
            EngineArg::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
    Heavy,
    Combined,
}

impl StrategyArg {
    fn strategy(self) -> Strategy {
        match self {
            StrategyArg::Leftmost => Strategy::PureLeftmost,
            StrategyArg::Rightmost => Strategy::PureRightmost,
            StrategyArg::Heavy => Strategy::PureHeavy,
            StrategyArg::Combined => Strategy::Combined,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Lr,
    Rl,
    PrefixSuffix,
    SuffixPrefix,
    LrKeyroot,
    HKeyroot,
}

impl SchemeArg {
    fn scheme(self) -> Scheme {
        match self {
            SchemeArg::Lr => Scheme::Lr,
            SchemeArg::Rl => Scheme::Rl,
            SchemeArg::PrefixSuffix => Scheme::PrefixSuffix,
            SchemeArg::SuffixPrefix => Scheme::SuffixPrefix,
            SchemeArg::LrKeyroot => Scheme::LrKeyroot,
            SchemeArg::HKeyroot => Scheme::HKeyroot,
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn config(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

fn load_tree(arg: &str) -> Result<Tree, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::config(format!("cannot read tree file {arg}: {e}")))?
    };
    Tree::parse(text.trim()).map_err(|e| CliError::parse(format!("tree {arg}: {e}")))
}

fn load_cost(arg: &str) -> Result<CostModel, CliError> {
    match arg {
        "unit" => Ok(CostModel::builtin_unit()),
        "paper" => Ok(CostModel::builtin_paper()),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("cannot read cost table {path}: {e}")))?;
            CostModel::from_table(&text)
                .map_err(|e| CliError::parse(format!("cost table {path}: {e}")))
        }
    }
}

fn size_guard() -> Result<usize, CliError> {
    match std::env::var("TEDKIT_SIZE_GUARD") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::config(format!("TEDKIT_SIZE_GUARD is not a size: {v:?}"))),
        Err(_) => Ok(DEFAULT_SIZE_GUARD),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let json = cli.output == OutputMode::JsonLines;
    match cli.cmd {
        Cmd::Dist {
            engine,
            cost,
            tree1,
            tree2,
        } => {
            let t1 = load_tree(&tree1)?;
            let t2 = load_tree(&tree2)?;
            let model = load_cost(&cost)?;
            let distance = match engine.engine() {
                Some(e) => run_engine(e, &t1, &t2, &model).distance,
                None => oracle::brute_force_distance(&t1, &t2, &model, size_guard()?)
                    .map_err(|e| CliError::config(e.to_string()))?,
            };
            if json {
                println!(
                    "{}",
                    json!({"v": 1, "cmd": "dist", "engine": engine.name(),
                           "distance": model.display(distance)})
                );
            } else {
                println!("{}", model.display(distance));
            }
        }
        Cmd::Mapping {
            engine,
            cost,
            tree1,
            tree2,
        } => {
            let t1 = load_tree(&tree1)?;
            let t2 = load_tree(&tree2)?;
            let model = load_cost(&cost)?;
            let (mapping, distance) = match engine.engine() {
                Some(e) => recover_mapping(&t1, &t2, &model, e),
                None => oracle::brute_force_mapping(&t1, &t2, &model, size_guard()?)
                    .map_err(|e| CliError::config(e.to_string()))?,
            };
            if let Err(msg) = validate_mapping(&mapping, &t1, &t2) {
                panic!("recovered mapping is invalid: {msg}");
            }
            if json {
                println!(
                    "{}",
                    json!({"v": 1, "cmd": "mapping", "engine": engine.name(),
                           "distance": model.display(distance)})
                );
                for &(a, b) in &mapping.pairs {
                    println!(
                        "{}",
                        json!({"v": 1, "op": "sub", "from": node_ref(&t1, a),
                               "to": node_ref(&t2, b)})
                    );
                }
                for &a in &mapping.deleted {
                    println!("{}", json!({"v": 1, "op": "del", "from": node_ref(&t1, a)}));
                }
                for &b in &mapping.inserted {
                    println!("{}", json!({"v": 1, "op": "ins", "to": node_ref(&t2, b)}));
                }
            } else {
                println!("distance {}", model.display(distance));
                for &(a, b) in &mapping.pairs {
                    println!("sub {} {}", node_ref(&t1, a), node_ref(&t2, b));
                }
                for &a in &mapping.deleted {
                    println!("del {}", node_ref(&t1, a));
                }
                for &b in &mapping.inserted {
                    println!("ins {}", node_ref(&t2, b));
                }
            }
        }
        Cmd::Steps {
            strategy,
            tree1,
            tree2,
        } => {
            let t1 = load_tree(&tree1)?;
            let t2 = load_tree(&tree2)?;
            let report = count_steps(&t1, &t2, strategy.strategy());
            if json {
                println!(
                    "{}",
                    json!({"v": 1, "cmd": "steps", "total": report.total,
                           "large_vs_larger": report.large_vs_larger,
                           "large_small": report.large_small,
                           "small_small": report.small_small})
                );
            } else {
                println!(
                    "total {} (large-vs-larger {}, large-small {}, small-small {})",
                    report.total, report.large_vs_larger, report.large_small, report.small_small
                );
            }
            if strategy == StrategyArg::Combined {
                let plan = plan(&t1, &t2);
                for e in &plan.entries {
                    let a = node_ref(&t1, t1.by_lr(e.lr1));
                    let b = node_ref(&t2, t2.by_lr(e.lr2));
                    let role = if e.kind == PathKind::Heavy {
                        if e.decompose_first {
                            " decompose-first"
                        } else {
                            " decompose-second"
                        }
                    } else {
                        ""
                    };
                    if json {
                        println!(
                            "{}",
                            json!({"v": 1, "pair": [a.clone(), b.clone()],
                                   "path": e.kind.name(),
                                   "decompose_first": e.decompose_first,
                                   "local_steps": e.local_steps})
                        );
                    } else {
                        println!("{a} {b} {}{role} {}", e.kind.name(), e.local_steps);
                    }
                }
                if !json {
                    println!("planned {}", plan.planned_steps);
                }
            }
        }
        Cmd::Enum { scheme, tree } => {
            let t = load_tree(&tree)?;
            let fi = ForestIndex::build(&t);
            let idx = StructuralIndex::build(&t);
            let seq = enumerate(&t, &fi, &idx, scheme.scheme());
            for &(f, dir) in &seq.items {
                let lm = t.label(t.by_rl(f.lm_rl()));
                let rm = t.label(t.by_lr(f.rm_lr()));
                if json {
                    println!(
                        "{}",
                        json!({"v": 1, "lm": lm, "rm": rm,
                               "lm_rl": f.lm_rl(), "rm_lr": f.rm_lr(),
                               "dir": if dir == Dir::Left { "left" } else { "right" }})
                    );
                } else {
                    println!("[{lm}..{rm}]");
                }
            }
        }
        Cmd::Bench { max_size } => {
            run_bench(max_size, json)?;
        }
    }
    Ok(())
}

fn bench_trees(max_size: usize) -> Vec<(String, Tree)> {
    let mut out = Vec::new();
    let mut sizes = vec![16, 64];
    let mut s = 256;
    while s <= max_size {
        sizes.push(s);
        s *= 4;
    }
    sizes.retain(|&s| s <= max_size);
    for &n in &sizes {
        out.push((format!("path-{n}"), corpus::path(n)));
        out.push((format!("star-{n}"), corpus::star(n)));
        out.push((format!("left-comb-{n}"), corpus::left_comb(n)));
        out.push((format!("right-comb-{n}"), corpus::right_comb(n)));
        let levels = (n as f64).log2() as u32;
        out.push((
            format!("full-binary-{}", (1usize << levels) - 1),
            corpus::full_binary(levels),
        ));
    }
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

fn emit_check(family: &str, c: &BoundCheck, json: bool, failures: &mut u64) {
    if !c.pass {
        *failures += 1;
    }
    if json {
        println!(
            "{}",
            json!({"v": 1, "family": family, "name": c.name,
                   "observed": c.observed, "bound": c.bound, "pass": c.pass})
        );
    } else {
        let mut line = String::new();
        write!(line, "{family:<28} {}", c).unwrap();
        println!("{line}");
    }
}

fn run_bench(max_size: usize, json: bool) -> Result<(), CliError> {
    let trees = bench_trees(max_size);
    let mut failures = 0u64;
    for (name, tree) in &trees {
        for c in check_collapsed_depths(tree) {
            emit_check(name, &c, json, &mut failures);
        }
        if tree.len() <= 512 {
            for c in check_halving(tree) {
                emit_check(name, &c, json, &mut failures);
            }
        }
    }
    // engine step ceilings on cross-family pairs with a small and a large side
    for (n1, t1) in &trees {
        for (n2, t2) in &trees {
            if t1.len() > t2.len() || (t1.len() == t2.len() && n1 > n2) {
                continue;
            }
            let family = format!("{n1} x {n2}");
            for c in check_engine_steps(t1, t2) {
                emit_check(&family, &c, json, &mut failures);
            }
        }
    }
    if failures > 0 {
        panic!("{failures} bound checks failed");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match panic::catch_unwind(panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
