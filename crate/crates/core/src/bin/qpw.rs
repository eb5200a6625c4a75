use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qary_pseudoweight::cli::{self, EXIT_INPUT_ERROR};
use qary_pseudoweight::search::SearchConfig;

#[derive(Parser)]
#[command(
    name = "qpw",
    version,
    about = "Pseudocodeword weights and tree-bound checks for q-ary LDPC codes"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Girth, tree bound and minimum distance of a parity-check matrix.
    Analyze {
        /// alist file, or the JSON graph format when the name ends in .json
        graph: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = cli::ANALYZE_LIMIT)]
        enumeration_limit: u64,
    },
    /// Weight of one pseudocodeword on one channel.
    Weight {
        #[arg(long)]
        pseudocodeword: PathBuf,
        #[arg(long, value_parser = ["qsc", "pam", "psk", "2d"])]
        channel: String,
        #[arg(long)]
        constellation: Option<PathBuf>,
    },
    /// Minimum pseudocodeword weight over random covers.
    Search {
        graph: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 16)]
        lifts: usize,
        /// Codewords per cover; 0 enumerates each cover's code when feasible.
        #[arg(long, default_value_t = 0)]
        codewords: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "qsc,pam,psk")]
        channels: String,
        #[arg(long)]
        constellation: Option<PathBuf>,
        /// Visit every cover of each degree.
        #[arg(long)]
        exhaustive_lifts: bool,
        #[arg(long)]
        exclude_codewords: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, env = "QPW_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Dump every sample's weights as CSV.
        #[arg(long)]
        samples_csv: Option<PathBuf>,
    },
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    match output {
        Some(path) => fs::write(path, text + "\n"),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(args: Args) -> Result<i32, String> {
    let output = args.output.as_deref();
    let out_name = output.map(|p| p.display().to_string());
    match args.command {
        Command::Analyze {
            graph,
            q,
            enumeration_limit,
        } => {
            let mut rep =
                cli::cmd_analyze(&graph, q, enumeration_limit).map_err(|e| e.to_string())?;
            rep.manifest.output = out_name;
            emit(&rep, output).map_err(|e| e.to_string())?;
            Ok(rep.exit_code())
        }
        Command::Weight {
            pseudocodeword,
            channel,
            constellation,
        } => {
            let mut rep = cli::cmd_weight(&pseudocodeword, &channel, constellation.as_deref())
                .map_err(|e| e.to_string())?;
            rep.manifest.output = out_name;
            emit(&rep, output).map_err(|e| e.to_string())?;
            Ok(cli::EXIT_OK)
        }
        Command::Search {
            graph,
            q,
            max_degree,
            lifts,
            codewords,
            seed,
            channels,
            constellation,
            exhaustive_lifts,
            exclude_codewords,
            jobs,
            samples_csv,
        } => {
            let cfg = SearchConfig {
                max_degree,
                lifts_per_degree: lifts,
                codewords_per_lift: codewords,
                seed,
                channels: cli::parse_channels(&channels, constellation.as_deref())
                    .map_err(|e| e.to_string())?,
                exclude_codeword_pseudocodewords: exclude_codewords,
                exhaustive_lifts,
                jobs,
                record_samples: samples_csv.is_some(),
                ..SearchConfig::default()
            };
            let mut rep = cli::cmd_search(&graph, q, &cfg).map_err(|e| e.to_string())?;
            rep.manifest.output = out_name;
            if let Some(path) = samples_csv {
                let file =
                    fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                rep.report
                    .write_samples_csv(std::io::BufWriter::new(file))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            emit(&rep, output).map_err(|e| e.to_string())?;
            Ok(rep.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("qpw: {msg}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
