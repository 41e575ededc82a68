//! Command-line frontend: trellis-module dumps, single decodes, BSC
//! simulation sweeps and state-likelihood tables.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use etrellis::analysis;
use etrellis::code::{load_code, partition, CheckMatrix, ErrorSeq, RowPartition};
use etrellis::decode::{self, Decoded};
use etrellis::former;
use etrellis::sim::{self, DecoderChoice, ExperimentConfig, Harness};
use etrellis::trellis;

#[derive(Parser)]
#[command(
    name = "etrellis",
    about = "Error-trellis construction and decoding for convolutional codes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderArg {
    Ml,
    Degenerate,
    #[value(name = "one-state")]
    OneState,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DumpFormat {
    Branch,
    Graph,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the error-trellis modules of a code (or of a row subset)
    Modules {
        /// Code-spec file
        #[arg(long)]
        code: PathBuf,
        /// Comma-separated 1-based rows of the submatrix (default: all rows)
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        /// Output file
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "branch")]
        format: DumpFormat,
    },
    /// Decode one error-sequence file and print path, weight and stats
    Decode {
        #[arg(long)]
        code: PathBuf,
        /// Error-sequence file: one time step per line, n binary digits
        #[arg(long)]
        errors: PathBuf,
        #[arg(long, value_enum)]
        decoder: DecoderArg,
        /// Trellis rows for the degenerate decoder (1-based, comma-separated)
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        /// Monomial row for the one-state decoder (1-based)
        #[arg(long)]
        row: Option<usize>,
        /// Survivor budget M for the one-state decoder
        #[arg(long, default_value_t = decode::DEFAULT_SURVIVORS)]
        m: usize,
    },
    /// Monte-Carlo decode trials over a BSC, CSV report
    Simulate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum)]
        decoder: DecoderArg,
        /// Comma-separated crossover probabilities
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<f64>,
        /// Block length N
        #[arg(long)]
        length: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        #[arg(long)]
        row: Option<usize>,
        #[arg(long, default_value_t = decode::DEFAULT_SURVIVORS)]
        m: usize,
        /// Output CSV file
        #[arg(long)]
        out: PathBuf,
    },
    /// State-likelihood concentration table for a monomial row, CSV
    Analyze {
        #[arg(long)]
        code: PathBuf,
        /// Monomial row (1-based)
        #[arg(long)]
        row: usize,
        /// Comma-separated crossover probabilities
        #[arg(long, value_delimiter = ',')]
        epsilons: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load(path: &PathBuf) -> Result<CheckMatrix> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading code spec {}", path.display()))?;
    let h = load_code(&text)?;
    for warning in h.column_factor_warnings() {
        eprintln!("warning: {warning}");
    }
    Ok(h)
}

/// CLI rows are 1-based.
fn to_zero_based(rows: &[usize]) -> Result<Vec<usize>> {
    rows.iter()
        .map(|&r| {
            if r == 0 {
                bail!("rows are 1-based");
            }
            Ok(r - 1)
        })
        .collect()
}

fn print_decoded(d: &Decoded) {
    if let Some(shifted) = &d.shifted_path {
        println!("shifted path: {shifted}");
    }
    println!("decoded path: {}", d.path);
    println!("weight: {}", d.weight);
    let s = &d.stats;
    println!(
        "stats: survivors={} compare_select_ops={} select_width={} pruned_by_zeta2={} steps={}",
        s.survivor_count, s.compare_select_ops, s.select_width, s.pruned_by_zeta2, s.steps
    );
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Modules {
            code,
            rows,
            out,
            format,
        } => {
            let h = load(&code)?;
            let (target, label_m) = match rows {
                Some(rows) if rows.len() < h.m() => {
                    let rows = to_zero_based(&rows)?;
                    let r = RowPartition::new(&rows, h.m())?;
                    let (h1, _) = partition(&h, &r)?;
                    let m1 = h1.m();
                    (h1, m1)
                }
                _ => {
                    let m = h.m();
                    (h, m)
                }
            };
            let modules = trellis::build_modules(&target)?;
            let dump = match format {
                DumpFormat::Branch => trellis::dump_branches(&modules, target.n(), label_m),
                DumpFormat::Graph => trellis::dump_graphs(&modules, target.n(), label_m),
            };
            fs::write(&out, dump).with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote {} modules ({} states each) to {}",
                modules.len(),
                1usize << target.nu(),
                out.display()
            );
        }
        Command::Decode {
            code,
            errors,
            decoder,
            rows,
            row,
            m,
        } => {
            let h = load(&code)?;
            let text = fs::read_to_string(&errors)
                .with_context(|| format!("reading error sequence {}", errors.display()))?;
            let e = ErrorSeq::parse(&text, h.n())?;
            let zseq = former::run(&h, &e)?;
            let d = match decoder {
                DecoderArg::Ml => {
                    let modules = trellis::build_modules(&h)?;
                    let t = trellis::build_trellis(&modules, &zseq, h.n())?;
                    decode::viterbi_ml(&t)?
                }
                DecoderArg::Degenerate => {
                    let rows = rows.context("--rows required for the degenerate decoder")?;
                    let r = RowPartition::new(&to_zero_based(&rows)?, h.m())?;
                    decode::decode_degenerate(&h, &r, &zseq)?
                }
                DecoderArg::OneState => {
                    let row = row.context("--row required for the one-state decoder")?;
                    let row = *to_zero_based(&[row])?.first().unwrap();
                    decode::decode_one_state(&h, row, &zseq, m)?
                }
            };
            print_decoded(&d);
        }
        Command::Simulate {
            code,
            decoder,
            epsilon,
            length,
            trials,
            seed,
            rows,
            row,
            m,
            out,
        } => {
            let h = load(&code)?;
            let cfg = ExperimentConfig {
                decoder: match decoder {
                    DecoderArg::Ml => DecoderChoice::Ml,
                    DecoderArg::Degenerate => DecoderChoice::Degenerate,
                    DecoderArg::OneState => DecoderChoice::OneState,
                },
                trellis_rows: rows.map(|r| to_zero_based(&r)).transpose()?,
                row: row
                    .map(|r| to_zero_based(&[r]).map(|v| v[0]))
                    .transpose()?,
                survivors: m,
                epsilons: epsilon,
                block_len: length,
                trials,
                seed,
            };
            let harness = Harness::new(&h, cfg)?;
            let csv = sim::records_csv(&harness.sweep());
            fs::write(&out, csv).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
        }
        Command::Analyze {
            code,
            row,
            epsilons,
            out,
        } => {
            let h = load(&code)?;
            let row = *to_zero_based(&[row])?.first().unwrap();
            let f = analysis::state_functionals(&h, row)?;
            let rows: Result<Vec<_>, _> = epsilons
                .iter()
                .map(|&e| analysis::concentration_from_distribution(&f, e))
                .collect();
            let csv = analysis::concentration_csv(&rows?);
            fs::write(&out, csv).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}
