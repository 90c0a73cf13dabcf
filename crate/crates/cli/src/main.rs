//! Command-line front end: run scripts, check single rings, run the
//! harness and export spectra.
//!
//! Exit codes: 0 when every check holds, 1 when a check fails, 2 on input
//! or validation errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use biamalg::classify::theorems::Ablation;
use biamalg::dsl::exec::{code_table, eval_ring_expr, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK};
use biamalg::dsl::{parse, run_script, Outcome, RunOptions};
use biamalg::harness::{
    counterexample_search, full_selection, generate_catalog, run_suite, Caps, SearchOutcome,
};
use biamalg::Exec;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "biamalg",
    version,
    about = "Finite bi-amalgamated algebras: checks, harness and spectra"
)]
struct Cli {
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a script.
    Run {
        script: PathBuf,
        /// Print the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Check one property of one ring expression.
    Check {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        property: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the theorem suite over the generated catalog.
    Harness {
        #[arg(long, default_value_t = Caps::default().max_ring)]
        max_ring: usize,
        #[arg(long, default_value_t = Caps::default().max_instance)]
        max_instance: usize,
        #[arg(long, default_value_t = Caps::default().max_poly)]
        max_poly: usize,
        #[arg(long, default_value_t = Caps::default().random_instances)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Search for a counterexample to THEOREM with the listed clauses
        /// dropped, as `theorem:clause[:clause...]`.
        #[arg(long)]
        ablate: Option<String>,
    },
    /// Execute a script and write the spectrum of one object as DOT.
    ExportSpec {
        script: PathBuf,
        #[arg(long)]
        dot: PathBuf,
        /// Object to export; defaults to the last biamalg, else the last ring.
        #[arg(long)]
        name: Option<String>,
    },
    /// Print the element code table of a ring expression.
    Names {
        #[arg(long)]
        ring: String,
    },
}

fn apply_env_cap() -> Result<()> {
    if let Ok(v) = std::env::var("BIAMALG_MAX_ORDER") {
        let cap: usize =
            v.trim().parse().ok().filter(|&c| c > 0).ok_or_else(|| {
                anyhow!("BIAMALG_MAX_ORDER must be a positive integer, got `{v}`")
            })?;
        biamalg::ring::set_max_order(cap);
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn report(src: &str, out: &Outcome, json: bool) -> i32 {
    if json {
        println!("{}", out.to_json());
    } else {
        print!("{}", out.text());
        if let Some(d) = &out.error {
            eprintln!("{}", d.render(src));
        }
    }
    out.exit_code()
}

fn options(exec: Exec, script: Option<&Path>) -> RunOptions {
    RunOptions {
        exec,
        write_exports: true,
        base_dir: script.and_then(Path::parent).map(Path::to_path_buf),
    }
}

fn run(cli: Cli) -> Result<i32> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match cli.command {
        Command::Run { script, json } => {
            let src = read(&script)?;
            let out = run_script(&src, &options(exec, Some(&script)));
            Ok(report(&src, &out, json))
        }
        Command::Check {
            ring,
            property,
            json,
        } => {
            let src = format!("ring R = {ring};\ncheck R {property};\n");
            let out = run_script(&src, &options(exec, None));
            Ok(report(&src, &out, json))
        }
        Command::Harness {
            max_ring,
            max_instance,
            max_poly,
            random,
            seed,
            json,
            ablate,
        } => {
            let caps = Caps {
                max_ring,
                max_instance,
                max_poly,
                random_instances: random,
            };
            let catalog = generate_catalog(caps, seed).map_err(|e| anyhow!("{e}"))?;
            let (text, code) = match ablate {
                Some(spec) => {
                    let (thm, ab) = Ablation::parse(&spec).map_err(|e| anyhow!("{e}"))?;
                    let outcome = counterexample_search(&catalog, thm, &ab, exec);
                    match &outcome {
                        SearchOutcome::Found(f) => {
                            println!(
                                "{spec}: counterexample {} (order {})\nfailed: {}\nreplay:\n{}",
                                f.subject,
                                f.order,
                                f.failed.join(", "),
                                f.replay
                            );
                        }
                        SearchOutcome::Exhausted { searched } => {
                            println!(
                                "{spec}: exhausted {searched} subjects without a counterexample"
                            );
                        }
                    }
                    let code = match outcome {
                        SearchOutcome::Found(_) => EXIT_CHECK_FAILED,
                        SearchOutcome::Exhausted { .. } => EXIT_OK,
                    };
                    (serde_json::to_string_pretty(&outcome)?, code)
                }
                None => {
                    let rep = run_suite(&catalog, &full_selection(), exec);
                    for r in &rep.results {
                        println!(
                            "{:<26} {} subjects={} applicable={} violations={}",
                            r.theorem,
                            if r.passed() { "pass" } else { "FAIL" },
                            r.instances,
                            r.applicable,
                            r.violations
                        );
                    }
                    println!("total {} ms", rep.timing.total_ms);
                    let code = if rep.passed() {
                        EXIT_OK
                    } else {
                        EXIT_CHECK_FAILED
                    };
                    (rep.to_json(), code)
                }
            };
            if let Some(path) = json {
                std::fs::write(&path, text)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(code)
        }
        Command::ExportSpec { script, dot, name } => {
            let src = read(&script)?;
            let parsed = match parse(&src) {
                Ok(s) => s,
                Err(d) => {
                    eprintln!("{}", d.render(&src));
                    return Ok(EXIT_INVALID);
                }
            };
            let target = match name {
                Some(n) => n,
                None => last_object(&parsed)
                    .ok_or_else(|| anyhow!("the script declares no ring or biamalg"))?,
            };
            let path = dot
                .to_string_lossy()
                .replace('\\', "\\\\")
                .replace('"', "\\\"");
            let src = format!("{src}\nexport spec {target} dot \"{path}\";\n");
            let out = run_script(&src, &options(exec, None));
            Ok(report(&src, &out, false))
        }
        Command::Names { ring } => match eval_ring_expr(&ring) {
            Ok(r) => {
                print!("{}", code_table(&r));
                Ok(EXIT_OK)
            }
            Err(d) => {
                eprintln!("{}", d.render(&format!("ring R = {ring};")));
                Ok(EXIT_INVALID)
            }
        },
    }
}

fn last_object(script: &biamalg::dsl::Script) -> Option<String> {
    use biamalg::dsl::ast::StmtKind;
    let last = |want_bia: bool| {
        script.stmts.iter().rev().find_map(|s| match &s.kind {
            StmtKind::Biamalg { name, .. } if want_bia => Some(name.name.clone()),
            StmtKind::Ring { name, .. } if !want_bia => Some(name.name.clone()),
            _ => None,
        })
    };
    last(true).or_else(|| last(false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = apply_env_cap().and_then(|()| run(cli)).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        EXIT_INVALID
    });
    ExitCode::from(code as u8)
}
