use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lqel::clifford::{gamma_construction, gamma_relations_hold};
use lqel_cli::{analyze, catalog_list, emit_report, render_table, verify_all, Format, EXIT_BREACH, EXIT_OK};

#[derive(Parser)]
#[command(name = "lqel", version, about = "Second fundamental forms, secant invariants and Clifford modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog ids with n, a and the expected secant deficiency.
    Catalog,
    /// Run the pipeline on a catalog id or a raw chart file.
    Analyze {
        id: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Exit 0 when the Clifford stage rejects the input.
        #[arg(long)]
        expect_reject: bool,
        /// Print per-stage durations to stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Run every catalog entry over several seeds.
    Verify {
        #[arg(long, required = true)]
        all: bool,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
    },
    /// Print facts about the γ-matrix model of dimension l.
    Gamma {
        l: usize,
        /// Also print the matrices.
        #[arg(long)]
        show: bool,
    },
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Catalog => {
            println!("{:<16} {:>3} {:>3} {:>3}  secant", "id", "n", "a", "δ");
            for e in catalog_list() {
                let fills = if e.secant_fills { "fills" } else { "defective" };
                println!("{:<16} {:>3} {:>3} {:>3}  {fills}", e.id, e.n, e.a, e.expected_delta);
            }
            exit(EXIT_OK)
        }
        Command::Analyze {
            id,
            seed,
            format,
            expect_reject,
            timings,
        } => match analyze(&id, seed) {
            Ok(run) => {
                print!("{}", emit_report(&run, format));
                if timings {
                    for t in &run.timings {
                        eprintln!("{:<24} {:?}", t.stage, t.elapsed);
                    }
                }
                exit(run.exit_code(expect_reject))
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit(e.exit_code)
            }
        },
        Command::Verify { seeds, .. } => {
            let report = verify_all(seeds);
            let firsts: Vec<_> = report.entries.iter().filter_map(|e| e.runs.first()).collect();
            print!("{}", render_table(&firsts));
            println!();
            for e in &report.entries {
                if e.ok() {
                    println!("ok    {} ({} seeds)", e.entry.id, e.runs.len());
                } else {
                    println!("FAIL  {}", e.entry.id);
                    for p in &e.problems {
                        println!("      {p}");
                    }
                }
            }
            exit(if report.ok() { EXIT_OK } else { EXIT_BREACH })
        }
        Command::Gamma { l, show } => {
            let rep = gamma_construction(l);
            let holds = gamma_relations_hold(&rep);
            println!("l = {}, p = {}, matrices = {}", rep.l, rep.p, rep.gammas.len());
            println!("relations: {}", if holds { "ok" } else { "FAIL" });
            if show {
                for (k, g) in rep.gammas.iter().enumerate() {
                    println!("γ{}:", k + 1);
                    for r in 0..g.rows() {
                        let cells: Vec<String> = (0..g.cols()).map(|c| g[(r, c)].to_string()).collect();
                        println!("  [{}]", cells.join(", "));
                    }
                }
            }
            exit(if holds { EXIT_OK } else { EXIT_BREACH })
        }
    }
}
