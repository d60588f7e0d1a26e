use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use biparrow_core::{SearchConfig, Target};
use clap::{Args, Parser, Subcommand};

use biparrow_cli::cache::Cache;
use biparrow_cli::commands::*;

#[derive(Parser)]
#[command(name = "biparrow", version, about = "Exact checks for bipartite Ramsey arrowing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchOpts {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Stop after this many search nodes and report undecided.
    #[arg(long)]
    budget: Option<u64>,
    /// Disable the twin-vertex symmetry cuts.
    #[arg(long)]
    no_symmetry: bool,
    /// Depth at which the search tree is split across workers.
    #[arg(long, default_value_t = 8)]
    split_depth: usize,
    /// Neither read nor write the results cache.
    #[arg(long)]
    no_cache: bool,
    /// Directory holding `results.jsonl`.
    #[arg(long, env = "BIPARROW_CACHE", default_value = ".biparrow")]
    cache_dir: PathBuf,
}

impl SearchOpts {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig {
            budget: self.budget,
            split_depth: self.split_depth,
            ..SearchConfig::default()
        };
        if let Some(j) = self.jobs {
            cfg.jobs = j.max(1);
        }
        cfg.symmetry = !self.no_symmetry;
        cfg
    }

    fn cache(&self) -> Result<Cache, Failure> {
        if self.no_cache {
            Ok(Cache::disabled())
        } else {
            Cache::open(&self.cache_dir).map_err(Failure::io)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether every 2-coloring of GRAPH has a red RED or a blue BLUE.
    Arrows {
        /// Graph file (`p bgraph` format).
        graph: PathBuf,
        /// Red target, `cm:K` or `cycle:L`.
        #[arg(long)]
        red: Target,
        /// Blue target, same syntax.
        #[arg(long)]
        blue: Target,
        /// Where to write a counterexample (default `GRAPH.witness.bcol`).
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Check a coloring file instead of searching.
        #[arg(long)]
        verify_witness: Option<PathBuf>,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Smallest N with K_{N,N} arrowing the pair, scanning N = 1..=max-n.
    Ramsey {
        #[arg(long)]
        red: Target,
        #[arg(long)]
        blue: Target,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
        /// Write the bad coloring of K_{N-1,N-1} here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Build an extremal coloring and check its stated parameters.
    VerifyConstructions {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Check that every bipartite graph on m+n-1 vertices per side with the
    /// minimum-degree bound arrows (cm:m, cm:n).
    Theorem1 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Test K random members instead of the whole family.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write every member and an index.json to this directory.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Even cycle lengths present in a graph or one color class of a coloring.
    Spectrum {
        /// Graph (`p bgraph`) or coloring (`p bcol`) file.
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "none")]
        color: SubgraphColor,
    },
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Arrows {
            graph,
            red,
            blue,
            witness,
            verify_witness,
            search,
        } => {
            let mut cache = if verify_witness.is_some() {
                Cache::disabled()
            } else {
                search.cache()?
            };
            arrows(
                ArrowsArgs {
                    graph: &graph,
                    red,
                    blue,
                    witness,
                    verify_witness,
                },
                &search.config(),
                &mut cache,
            )
        }
        Command::Ramsey {
            red,
            blue,
            max_n,
            format,
            witness_out,
            search,
        } => ramsey(
            red,
            blue,
            max_n,
            format,
            witness_out,
            &search.config(),
            &mut search.cache()?,
        ),
        Command::VerifyConstructions { m, n, which, out_dir } => verify_constructions(m, n, which, &out_dir),
        Command::Theorem1 {
            m,
            n,
            sample,
            seed,
            manifest,
            search,
        } => theorem1(
            FamilyArgs {
                m,
                n,
                sample,
                seed,
                manifest,
            },
            &search.config(),
            &mut search.cache()?,
        ),
        Command::Spectrum { file, max_len, color } => spectrum_cmd(&file, max_len, color),
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
    let start = Instant::now();
    match run(cli.command) {
        Ok(mut out) => {
            out.record.wall_time_ms = start.elapsed().as_millis() as u64;
            let text = out.text.take().unwrap_or_else(|| {
                let mut s = serde_json::to_string_pretty(&out.record).expect("records serialize");
                s.push('\n');
                s
            });
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_IO);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("biparrow: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
