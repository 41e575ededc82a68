//! Binary-symmetric-channel simulation harness.
//!
//! Simulation uses the all-zero codeword: for a linear code on a BSC the
//! received sequence equals the error pattern, and the decoders only ever
//! look at syndromes, so no encoder is needed. Blocks are terminated; the
//! former's final state is handed to the decoder along with the syndrome
//! sequence.
//!
//! Randomness is ChaCha8 (`rand_chacha`), which is platform-independent;
//! identical (config, seed) pairs produce byte-identical reports. Per-trial
//! sub-seeds are derived from the master seed with a SplitMix64 mix of the
//! epsilon index and trial index.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{CheckMatrix, ErrorSeq, RowPartition};
use crate::decode::{self, DecoderStats};
use crate::error::{Error, Result};
use crate::former::Former;
use crate::trellis::{self, TrellisModule};

/// Which decoder the harness drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecoderChoice {
    Ml,
    Degenerate,
    OneState,
}

/// Parameters of one experiment sweep.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub decoder: DecoderChoice,
    /// Trellis-row subset for the degenerate decoder (0-based).
    pub trellis_rows: Option<Vec<usize>>,
    /// Monomial row for the 1-state decoder (0-based).
    pub row: Option<usize>,
    /// Survivor budget M for the 1-state decoder.
    pub survivors: usize,
    pub epsilons: Vec<f64>,
    pub block_len: usize,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self, h: &CheckMatrix) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if self.block_len < 1 {
            return Err(Error::InvalidConfig("block length must be >= 1".into()));
        }
        if self.epsilons.iter().any(|&e| !(0.0..=0.5).contains(&e)) {
            return Err(Error::InvalidConfig(
                "crossover probabilities must lie in [0, 0.5]".into(),
            ));
        }
        match self.decoder {
            DecoderChoice::Degenerate => {
                let rows = self
                    .trellis_rows
                    .as_ref()
                    .ok_or_else(|| Error::InvalidConfig("degenerate decoder needs rows".into()))?;
                RowPartition::new(rows, h.m())?;
            }
            DecoderChoice::OneState => {
                let row = self
                    .row
                    .ok_or_else(|| Error::InvalidConfig("one-state decoder needs a row".into()))?;
                if row >= h.m() {
                    return Err(Error::InvalidConfig(format!("row {row} out of range")));
                }
                if self.survivors < 1 {
                    return Err(Error::InvalidConfig("survivor budget must be >= 1".into()));
                }
            }
            DecoderChoice::Ml => {}
        }
        Ok(())
    }
}

/// Aggregated results for one crossover probability.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub epsilon: f64,
    pub trials: u64,
    /// Trials where the returned path differs from the true error pattern
    /// (or the decoder reported an error).
    pub decode_failures: u64,
    /// Total bits by which decoded paths differ from the true patterns; a
    /// decoder error counts the full weight of the true pattern.
    pub bit_errors_after_decode: u64,
    pub avg_decoded_weight: f64,
    pub avg_true_weight: f64,
    /// Fraction of trials whose decoded weight equals the ML weight. By
    /// construction 1 for the ml and degenerate decoders.
    pub ml_match_rate: f64,
}

/// Outcome of a single decode trial.
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub decoded: Option<ErrorSeq>,
    pub decoded_weight: Option<u32>,
    pub true_weight: u32,
    pub success: bool,
    pub bit_errors: u32,
    pub ml_match: bool,
    pub stats: Option<DecoderStats>,
}

/// Deterministic i.i.d. Bernoulli(`eps`) error sequence, time-major.
pub fn sample_bsc(n: usize, len: usize, eps: f64, seed: u64) -> ErrorSeq {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols = (0..len)
        .map(|_| {
            let mut s = 0u32;
            for j in 0..n {
                if rng.gen::<f64>() < eps {
                    s |= 1 << (n - 1 - j);
                }
            }
            s
        })
        .collect();
    ErrorSeq::from_symbols(n, symbols)
}

/// SplitMix64-style sub-seed for (master seed, epsilon index, trial index).
pub fn trial_seed(master: u64, eps_idx: u64, trial: u64) -> u64 {
    let mut z = master
        .wrapping_add(eps_idx.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(trial.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A configured experiment bound to a code; prebuilds whatever the chosen
/// decoder needs across trials.
pub struct Harness<'a> {
    h: &'a CheckMatrix,
    cfg: ExperimentConfig,
    former: Former,
    modules: Option<BTreeMap<u32, TrellisModule>>,
    partition: Option<RowPartition>,
    ml_budget: Option<usize>,
}

impl<'a> Harness<'a> {
    pub fn new(h: &'a CheckMatrix, cfg: ExperimentConfig) -> Result<Self> {
        cfg.validate(h)?;
        let former = Former::new(h)?;
        let modules = match cfg.decoder {
            DecoderChoice::Ml => Some(trellis::build_modules(h)?),
            _ => None,
        };
        let partition = match cfg.decoder {
            DecoderChoice::Degenerate => Some(RowPartition::new(
                cfg.trellis_rows.as_ref().unwrap(),
                h.m(),
            )?),
            _ => None,
        };
        let ml_budget = match cfg.decoder {
            DecoderChoice::OneState => Some(decode::ml_survivor_budget(h, cfg.row.unwrap())?),
            _ => None,
        };
        Ok(Self {
            h,
            cfg,
            former,
            modules,
            partition,
            ml_budget,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.cfg
    }

    /// Decodes one true error pattern: syndromes are computed from it (the
    /// received data under the all-zero codeword) and the decoder output is
    /// compared back against it.
    pub fn run_trial(&self, e: &ErrorSeq) -> TrialOutcome {
        let zseq = self.former.run(e);
        let true_weight = e.weight();
        let decoded = match self.cfg.decoder {
            DecoderChoice::Ml => trellis::build_trellis(self.modules.as_ref().unwrap(), &zseq, e.n())
                .and_then(|t| decode::viterbi_ml(&t)),
            DecoderChoice::Degenerate => {
                decode::decode_degenerate(self.h, self.partition.as_ref().unwrap(), &zseq)
            }
            DecoderChoice::OneState => {
                decode::decode_one_state(self.h, self.cfg.row.unwrap(), &zseq, self.cfg.survivors)
            }
        };
        match decoded {
            Ok(d) => {
                let success = d.path == *e;
                let bit_errors: u32 = (0..e.len())
                    .map(|k| (d.path.symbol(k) ^ e.symbol(k)).count_ones())
                    .sum();
                let ml_match = match self.cfg.decoder {
                    DecoderChoice::OneState => {
                        let budget = self.ml_budget.unwrap();
                        if self.cfg.survivors >= budget {
                            true
                        } else {
                            decode::decode_one_state(self.h, self.cfg.row.unwrap(), &zseq, budget)
                                .map(|ml| ml.weight == d.weight)
                                .unwrap_or(false)
                        }
                    }
                    _ => true,
                };
                TrialOutcome {
                    decoded: Some(d.path),
                    decoded_weight: Some(d.weight),
                    true_weight,
                    success,
                    bit_errors,
                    ml_match,
                    stats: Some(d.stats),
                }
            }
            Err(_) => TrialOutcome {
                decoded: None,
                decoded_weight: None,
                true_weight,
                success: false,
                bit_errors: true_weight,
                ml_match: false,
                stats: None,
            },
        }
    }

    /// Runs `trials` independent trials per crossover probability and
    /// aggregates them. Deterministic per (config, seed).
    pub fn sweep(&self) -> Vec<TrialRecord> {
        let n = self.h.n();
        self.cfg
            .epsilons
            .iter()
            .enumerate()
            .map(|(ei, &eps)| {
                let mut failures = 0u64;
                let mut bit_errors = 0u64;
                let mut decoded_weight_sum = 0u64;
                let mut true_weight_sum = 0u64;
                let mut matches = 0u64;
                for t in 0..self.cfg.trials {
                    let seed = trial_seed(self.cfg.seed, ei as u64, t);
                    let e = sample_bsc(n, self.cfg.block_len, eps, seed);
                    let outcome = self.run_trial(&e);
                    if !outcome.success {
                        failures += 1;
                    }
                    bit_errors += outcome.bit_errors as u64;
                    decoded_weight_sum += outcome.decoded_weight.unwrap_or(0) as u64;
                    true_weight_sum += outcome.true_weight as u64;
                    if outcome.ml_match {
                        matches += 1;
                    }
                }
                let trials = self.cfg.trials;
                TrialRecord {
                    epsilon: eps,
                    trials,
                    decode_failures: failures,
                    bit_errors_after_decode: bit_errors,
                    avg_decoded_weight: decoded_weight_sum as f64 / trials as f64,
                    avg_true_weight: true_weight_sum as f64 / trials as f64,
                    ml_match_rate: matches as f64 / trials as f64,
                }
            })
            .collect()
    }
}

/// CSV report: one row per crossover probability, `\n` line endings.
pub fn records_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(
        "epsilon,trials,decode_failures,bit_errors_after_decode,avg_decoded_weight,avg_true_weight,ml_match_rate\n",
    );
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{:.6},{:.6},{:.6}\n",
            r.epsilon,
            r.trials,
            r.decode_failures,
            r.bit_errors_after_decode,
            r.avg_decoded_weight,
            r.avg_true_weight,
            r.ml_match_rate
        ));
    }
    out
}
