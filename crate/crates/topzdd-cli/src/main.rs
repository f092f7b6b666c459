//! `tzdd`: build, inspect, and exercise top-tree compressed ZDD containers.
//!
//! Exit codes: 0 success, 2 bad usage or unbuildable input, 3 verification
//! mismatch, 4 malformed container.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use topzdd::families::{family_to_text, FamilySpec};
use topzdd::zdd::PreorderNode;
use topzdd::{build_top_zdd, Error, TopZdd};
use topzdd_cli::{
    render_size_json, render_size_table, render_traverse_json, render_traverse_table, traverse,
};

#[derive(Parser)]
#[command(name = "tzdd", version, about = "Top-tree compressed ZDD toolkit")]
struct Cli {
    /// Print only machine-readable JSON lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a family, compress it, and write a container file.
    Build {
        /// Family spec such as `powerset:A=64` or `knapsack:A=100,W=100,C=500,seed=7`.
        spec: String,
        /// Output container path.
        out: PathBuf,
    },
    /// Print the size breakdown of an existing container.
    Stats { file: PathBuf },
    /// Rebuild the family from its spec and check the container against it.
    Verify {
        /// A family spec, or a container file when --spec names the family.
        target: String,
        /// Family spec to rebuild when TARGET is a container file.
        #[arg(long)]
        spec: Option<String>,
    },
    /// Time random edge walks, compressed versus decompressed.
    Bench {
        file: PathBuf,
        /// Edge choices per timed walk.
        #[arg(long, default_value_t = traverse::DEFAULT_STEPS)]
        steps: u64,
        /// RNG seed for the choice sequence.
        #[arg(long, default_value_t = traverse::DEFAULT_SEED)]
        seed: u64,
    },
    /// Check whether a set (strictly ascending elements) is in the family.
    Member {
        file: PathBuf,
        /// Elements of the probed set, e.g. `2 5 11`.
        elements: Vec<u32>,
    },
    /// Enumerate a family as text, one set per line.
    Export {
        spec: String,
        /// Refuse families with more sets than this.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tzdd: {e}");
            ExitCode::from(exit_code_of(&e))
        }
    }
}

fn exit_code_of(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Unsupported(_)
        | Error::OutOfRange(_)
        | Error::EnumerationLimit(_)
        | Error::Io(_) => 2,
        Error::Format(_) | Error::Corruption(_) => 4,
        Error::Invariant(_) => 1,
    }
}

fn log_enabled() -> bool {
    std::env::var_os("TZDD_LOG").is_some_and(|v| !v.is_empty() && v != "0")
}

fn log_line(msg: &str) {
    if log_enabled() {
        eprintln!("tzdd: {msg}");
    }
}

fn run(cli: Cli) -> topzdd::Result<ExitCode> {
    match cli.cmd {
        Cmd::Build { spec, out } => cmd_build(&spec, &out, cli.json),
        Cmd::Stats { file } => cmd_stats(&file, cli.json),
        Cmd::Verify { target, spec } => cmd_verify(&target, spec.as_deref(), cli.json),
        Cmd::Bench { file, steps, seed } => cmd_bench(&file, steps, seed, cli.json),
        Cmd::Member { file, elements } => cmd_member(&file, &elements, cli.json),
        Cmd::Export { spec, limit, out } => cmd_export(&spec, limit, out.as_deref(), cli.json),
    }
}

fn cmd_build(spec_str: &str, out: &std::path::Path, json: bool) -> topzdd::Result<ExitCode> {
    let spec: FamilySpec = spec_str.parse()?;
    log_line(&format!("generating {spec}"));
    let clock = Instant::now();
    let (store, root) = spec.generate()?;
    log_line(&format!("zdd ready: {} reachable nodes", store.node_count(root)));
    let (tz, build) = build_top_zdd(&store, root)?;
    let build_ms = clock.elapsed().as_secs_f64() * 1e3;
    log_line(&format!(
        "top tree height {}, {} rounds, {} expansion vertices ({} dummies)",
        build.top_tree_height, build.rounds, build.t_prime_vertices, build.dummy_vertices
    ));
    tz.write_file(out)?;
    let report = tz.size_report(spec_str, build_ms);
    log_line(&format!("wrote {} ({} bytes)", out.display(), report.topzdd_bytes));
    if !json {
        print!("{}", render_size_table(&report));
    }
    println!("{}", render_size_json(&report));
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(file: &std::path::Path, json: bool) -> topzdd::Result<ExitCode> {
    let tz = TopZdd::read_file(file)?;
    let report = tz.size_report(&file.display().to_string(), 0.0);
    if !json {
        print!("{}", render_size_table(&report));
    }
    println!("{}", render_size_json(&report));
    Ok(ExitCode::SUCCESS)
}

/// First preorder position (1-based) where the two edge lists disagree.
fn first_difference(want: &[PreorderNode], got: &[PreorderNode]) -> Option<usize> {
    if let Some(i) = (0..want.len().min(got.len())).find(|&i| want[i] != got[i]) {
        return Some(i + 1);
    }
    if want.len() != got.len() {
        return Some(want.len().min(got.len()) + 1);
    }
    None
}

fn cmd_verify(target: &str, spec_flag: Option<&str>, json: bool) -> topzdd::Result<ExitCode> {
    let (spec_str, tz) = match spec_flag {
        Some(s) => (s.to_string(), TopZdd::read_file(target)?),
        None => {
            let spec: FamilySpec = target.parse()?;
            let (store, root) = spec.generate()?;
            let (tz, _) = build_top_zdd(&store, root)?;
            // Round-trip through bytes so verify covers the codec too.
            let tz = TopZdd::deserialize(&tz.serialize())?;
            (target.to_string(), tz)
        }
    };
    let spec: FamilySpec = spec_str.parse()?;
    let (store, root) = spec.generate()?;
    let want = store.preorder_edge_list(root);
    let got = tz.decompress_all()?;
    match first_difference(&want, &got) {
        None => {
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "record": "verify", "pass": true,
                        "spec": spec_str, "n": want.len(),
                    })
                );
            } else {
                println!("verify PASS {spec_str} (n={})", want.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(at) => {
            let show = |list: &[PreorderNode]| match list.get(at - 1) {
                Some(&(label, zero, one)) => {
                    format!("label {label}, zero {zero:?}, one {one:?}")
                }
                None => format!("only {} nodes", list.len()),
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "record": "verify", "pass": false,
                        "spec": spec_str, "first_difference": at,
                    })
                );
            } else {
                println!("verify FAIL {spec_str}: first difference at preorder node {at}");
                println!("  expected: {}", show(&want));
                println!("  actual:   {}", show(&got));
            }
            Ok(ExitCode::from(3))
        }
    }
}

fn cmd_bench(file: &std::path::Path, steps: u64, seed: u64, json: bool) -> topzdd::Result<ExitCode> {
    let tz = TopZdd::read_file(file)?;
    log_line(&format!("walking {steps} steps, seed {seed}"));
    let report = traverse::run(&tz, steps, seed)?;
    if json {
        println!("{}", render_traverse_json(&report));
    } else {
        print!("{}", render_traverse_table(&report));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_member(file: &std::path::Path, elements: &[u32], json: bool) -> topzdd::Result<ExitCode> {
    let tz = TopZdd::read_file(file)?;
    let inside = tz.member(elements)?;
    if json {
        println!(
            "{}",
            serde_json::json!({ "record": "member", "set": elements, "member": inside })
        );
    } else {
        println!("{inside}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(
    spec_str: &str,
    limit: usize,
    out: Option<&std::path::Path>,
    json: bool,
) -> topzdd::Result<ExitCode> {
    let spec: FamilySpec = spec_str.parse()?;
    let (store, root) = spec.generate()?;
    let sets = store.enumerate(root, limit)?;
    let text = family_to_text(store.c(), &sets);
    match out {
        Some(path) => {
            std::fs::write(path, &text)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "record": "export", "spec": spec_str,
                        "sets": sets.len(), "universe": store.c(),
                        "file": path.display().to_string(),
                    })
                );
            } else {
                println!("exported {} sets to {}", sets.len(), path.display());
            }
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
