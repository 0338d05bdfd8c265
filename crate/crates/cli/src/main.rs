use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use popular_roommates::election::{oracle_best_challenger, DEFAULT_ENUMERATION_BOUND};
use popular_roommates::experiment::{run_table, standard_cells, ExperimentOptions};
use popular_roommates::generator::{gen_instance, GenConfig, DEFAULT_REJECTION_CAP};
use popular_roommates::search::{
    check_u_traced, max_size_popular_traced, solve_traced, CheckOptions, SolveMode, SolveOptions,
    SolveResult, TraceRecord,
};
use popular_roommates::stable::find_stable;
use popular_roommates::verifier::{verify_popular, PopularityVerdict};
use popular_roommates::{Instance, Matching};

/// Popular and stable matchings in roommates instances.
#[derive(Parser)]
#[command(name = "roommates", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a stable matching, else a popular one.
    Solve {
        instance: PathBuf,
        /// Only try uncovered sets of at most this size.
        #[arg(long)]
        cap: Option<usize>,
        /// Defaults to odd-exact for odd vertex counts, nonperfect otherwise.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Return a popular matching of maximum size.
        #[arg(long)]
        max_size: bool,
        /// Print one line per (U, P_Z) attempt.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        oracle_bound: usize,
    },
    /// Decide whether a matching is popular.
    Verify {
        instance: PathBuf,
        matching: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Weighted)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        oracle_bound: usize,
    },
    /// Run the stable roommates algorithm.
    Stable { instance: PathBuf },
    /// Look for a popular matching leaving exactly the given vertices uncovered.
    CheckU {
        instance: PathBuf,
        /// Comma-separated vertex tokens.
        #[arg(long, value_delimiter = ',', required = true)]
        uncovered: Vec<String>,
        #[arg(long)]
        trace: bool,
    },
    /// Write random instances as inst_<index>.txt.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_REJECTION_CAP)]
        rejection_cap: u64,
    },
    /// Count instances without stable matchings, and those with popular ones.
    Experiment {
        /// Cells as n:c pairs, comma-separated; defaults to the 3x3 grid
        /// n in {7,9,11}, c in {3,4,5}.
        #[arg(long, value_delimiter = ',')]
        cells: Vec<String>,
        #[arg(long, default_value_t = 0.8)]
        p: f64,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Search every admissible uncovered set, not only |U| <= c.
        #[arg(long)]
        uncapped: bool,
        /// Write elapsed_ms=0 so output depends only on the parameters.
        #[arg(long)]
        no_timing: bool,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    OddExact,
    Nonperfect,
    Oracle,
}

#[derive(Copy, Clone, ValueEnum)]
enum Method {
    Weighted,
    Oracle,
}

/// Whether the command found what it looked for.
enum Found {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Found::Yes) => ExitCode::from(0),
        Ok(Found::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_result(inst: &Instance, result: &SolveResult) -> Found {
    match result {
        SolveResult::Stable(m) => {
            println!("STABLE {}", m.display(inst));
            Found::Yes
        }
        SolveResult::Popular {
            matching,
            uncovered,
        } => {
            println!(
                "POPULAR uncovered={} {}",
                inst.fmt_set(uncovered),
                matching.display(inst)
            );
            Found::Yes
        }
        SolveResult::None => {
            println!("NONE");
            Found::No
        }
    }
}

fn run(command: Command) -> anyhow::Result<Found> {
    match command {
        Command::Solve {
            instance,
            cap,
            mode,
            max_size,
            trace,
            oracle_bound,
        } => {
            let inst = read_instance(&instance)?;
            let mode = match mode {
                Some(Mode::OddExact) => SolveMode::OddExact,
                Some(Mode::Nonperfect) => SolveMode::Nonperfect,
                Some(Mode::Oracle) => SolveMode::Oracle,
                None if inst.n() % 2 == 1 => SolveMode::OddExact,
                None => SolveMode::Nonperfect,
            };
            let options = SolveOptions::new(mode)
                .with_cap(cap)
                .with_oracle_bound(oracle_bound);
            let mut sink = trace_sink(&inst, trace);
            let result = if max_size {
                max_size_popular_traced(&inst, &options, &mut sink)?
            } else {
                solve_traced(&inst, &options, &mut sink)?
            };
            Ok(print_result(&inst, &result))
        }
        Command::Verify {
            instance,
            matching,
            method,
            oracle_bound,
        } => {
            let inst = read_instance(&instance)?;
            let text = fs::read_to_string(&matching)
                .with_context(|| format!("reading {}", matching.display()))?;
            let m = Matching::parse(&inst, &text)
                .with_context(|| format!("parsing {}", matching.display()))?;
            let verdict = match method {
                Method::Weighted => verify_popular(&inst, &m)?,
                Method::Oracle => {
                    let (witness, margin) = oracle_best_challenger(&inst, &m, oracle_bound)?;
                    if margin > 0 {
                        PopularityVerdict::NotPopular { witness, margin }
                    } else {
                        PopularityVerdict::Popular
                    }
                }
            };
            match verdict {
                PopularityVerdict::Popular => {
                    println!("POPULAR");
                    Ok(Found::Yes)
                }
                PopularityVerdict::NotPopular { witness, margin } => {
                    println!(
                        "NOT_POPULAR margin={margin} witness={}",
                        witness.display(&inst)
                    );
                    Ok(Found::No)
                }
            }
        }
        Command::Stable { instance } => {
            let inst = read_instance(&instance)?;
            match find_stable(&inst) {
                Some(m) => {
                    println!("{}", m.display(&inst));
                    Ok(Found::Yes)
                }
                None => {
                    println!("NONE");
                    Ok(Found::No)
                }
            }
        }
        Command::CheckU {
            instance,
            uncovered,
            trace,
        } => {
            let inst = read_instance(&instance)?;
            let u = inst.vertex_set(&uncovered)?;
            let mut sink = trace_sink(&inst, trace);
            let result = match check_u_traced(&inst, &u, CheckOptions::default(), &mut sink)? {
                Some(matching) => SolveResult::Popular {
                    matching,
                    uncovered: u,
                },
                None => SolveResult::None,
            };
            Ok(print_result(&inst, &result))
        }
        Command::Generate {
            n,
            c,
            p,
            count,
            seed,
            out,
            rejection_cap,
        } => {
            let cfg = GenConfig::new(n, c, p, seed).with_rejection_cap(rejection_cap);
            cfg.validate()?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            for i in 0..count {
                let inst = gen_instance(&cfg, i)?;
                let path = out.join(format!("inst_{i}.txt"));
                fs::write(&path, inst.to_string())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(Found::Yes)
        }
        Command::Experiment {
            cells,
            p,
            samples,
            seed,
            threads,
            uncapped,
            no_timing,
            out,
        } => {
            let cells = if cells.is_empty() {
                standard_cells()
            } else {
                cells
                    .iter()
                    .map(|s| parse_cell(s))
                    .collect::<anyhow::Result<_>>()?
            };
            let options = ExperimentOptions {
                workers: threads,
                uncapped,
                timing: !no_timing,
                ..ExperimentOptions::default()
            };
            match out {
                Some(path) => {
                    let file = fs::File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    run_table(&cells, p, samples, seed, &options, file)?;
                }
                None => {
                    let stdout = std::io::stdout();
                    run_table(&cells, p, samples, seed, &options, stdout.lock())?;
                }
            }
            Ok(Found::Yes)
        }
    }
}

fn trace_sink(inst: &Instance, enabled: bool) -> impl FnMut(&TraceRecord) + '_ {
    move |record| {
        if enabled {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", record.render(inst));
        }
    }
}

fn parse_cell(text: &str) -> anyhow::Result<(usize, usize)> {
    let Some((n, c)) = text.split_once(':') else {
        bail!("cell `{text}` is not of the form n:c");
    };
    Ok((
        n.trim().parse().with_context(|| format!("cell `{text}`"))?,
        c.trim().parse().with_context(|| format!("cell `{text}`"))?,
    ))
}
