//! State-likelihood analysis of 1-state-transform side trellises.
//!
//! After the monomial-row transform, each side-former state bit is a GF(2)
//! sum of finitely many error bits. Under i.i.d. BSC errors the exact state
//! distribution follows by enumerating the contributing bits; for small
//! crossover probability the mass concentrates on the all-zero and
//! near-zero states, which is what makes small survivor budgets viable.

use std::collections::{BTreeMap, BTreeSet};

use crate::code::{one_state_form, CheckMatrix};
use crate::error::{Error, Result};
use crate::former::causalize;

/// Largest supported window of contributing error bits for exact
/// enumeration.
pub const MAX_WINDOW_BITS: usize = 24;

/// Symbolic expression of each side-trellis state bit as a GF(2) sum of
/// error bits, identified by (component index, time offset) relative to the
/// reference step. Bit 0 of the list is the most significant bit of the
/// state index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateFunctional {
    bits: Vec<Vec<(usize, i32)>>,
}

impl StateFunctional {
    pub fn num_bits(&self) -> usize {
        self.bits.len()
    }

    pub fn terms(&self, i: usize) -> &[(usize, i32)] {
        &self.bits[i]
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// All distinct contributing error bits.
    pub fn window(&self) -> BTreeSet<(usize, i32)> {
        self.bits.iter().flatten().copied().collect()
    }
}

/// Expands the side-former state of the monomial-row transform of (`h`, `r`)
/// over the original error bits.
///
/// State bits are listed in the same interleaved (position, row) order used
/// for state indices, so the functional's state values line up with
/// [`crate::former::FormerState::index`].
pub fn state_functionals(h: &CheckMatrix, r: usize) -> Result<StateFunctional> {
    let (hp, l) = one_state_form(h, r)?;
    let side_rows: Vec<usize> = (0..h.m()).filter(|&q| q != r).collect();
    if side_rows.is_empty() {
        return Ok(StateFunctional { bits: Vec::new() });
    }
    let hs = CheckMatrix::new(hp.mat().select_rows(&side_rows))?;
    let (hsc, deltas) = causalize(&hs);
    let mem: Vec<usize> = (0..hsc.m()).map(|q| hsc.row_max_deg(q) as usize).collect();
    let l_max = mem.iter().copied().max().unwrap_or(0);
    let mut bits = Vec::new();
    for p in 1..=l_max {
        for (i, &m_i) in mem.iter().enumerate() {
            if p > m_i {
                continue;
            }
            let mut terms: BTreeSet<(usize, i32)> = BTreeSet::new();
            for j in 0..hsc.n() {
                for s in hsc.entry(i, j).exps() {
                    if s >= p as i32 {
                        let offset = p as i32 - s - l.get(j) as i32 + deltas[i] as i32;
                        let term = (j, offset);
                        if !terms.remove(&term) {
                            terms.insert(term);
                        }
                    }
                }
            }
            bits.push(terms.into_iter().collect());
        }
    }
    Ok(StateFunctional { bits })
}

/// Exact state distribution under i.i.d. Bernoulli(`eps`) error bits,
/// obtained by summing over all patterns of the contributing window.
/// Probabilities sum to 1 up to floating-point rounding.
pub fn state_distribution_exact(
    f: &StateFunctional,
    eps: f64,
) -> Result<BTreeMap<u64, f64>> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidEpsilon(eps));
    }
    let window: Vec<(usize, i32)> = f.window().into_iter().collect();
    let w = window.len();
    if w > MAX_WINDOW_BITS {
        return Err(Error::WindowTooLarge {
            bits: w,
            limit: MAX_WINDOW_BITS,
        });
    }
    let num_bits = f.num_bits();
    // per state bit, the window positions it sums
    let masks: Vec<u64> = f
        .bits
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|t| 1u64 << window.iter().position(|x| x == t).unwrap())
                .fold(0u64, |a, b| a | b)
        })
        .collect();
    let mut dist: BTreeMap<u64, f64> = BTreeMap::new();
    for pattern in 0u64..(1u64 << w) {
        let ones = pattern.count_ones();
        let prob = eps.powi(ones as i32) * (1.0 - eps).powi((w as u32 - ones) as i32);
        let mut state = 0u64;
        for (i, mask) in masks.iter().enumerate() {
            let bit = ((pattern & mask).count_ones() & 1) as u64;
            state |= bit << (num_bits - 1 - i);
        }
        *dist.entry(state).or_insert(0.0) += prob;
    }
    Ok(dist)
}

/// One row of the concentration table: the all-zero-state probability, the
/// per-state probabilities of the single-one states grouped by whether the
/// position is a multi-bit or a single-bit sum, and the total mass on the
/// all-zero and single-one states.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcentrationRow {
    pub epsilon: f64,
    pub q0: f64,
    pub q1to4: f64,
    pub q5to6: f64,
    pub sum: f64,
}

/// Closed-form concentration values for the circulant-derived example whose
/// side state consists of four two-bit sums and two single bits, all over
/// distinct error bits.
pub fn closed_form_q(eps: f64) -> Result<ConcentrationRow> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidEpsilon(eps));
    }
    // P(two-bit sum = 0) and the complementary single-bit probabilities
    let pair0 = 1.0 - 2.0 * eps + 2.0 * eps * eps;
    let q0 = pair0.powi(4) * (1.0 - eps).powi(2);
    let q1to4 = 2.0 * eps * pair0.powi(3) * (1.0 - eps).powi(3);
    let q5to6 = eps * pair0.powi(4) * (1.0 - eps);
    Ok(ConcentrationRow {
        epsilon: eps,
        q0,
        q1to4,
        q5to6,
        sum: q0 + 4.0 * q1to4 + 2.0 * q5to6,
    })
}

/// Concentration row computed from an exact distribution, for arbitrary
/// functionals: group means over the single-one states.
pub fn concentration_from_distribution(
    f: &StateFunctional,
    eps: f64,
) -> Result<ConcentrationRow> {
    let dist = state_distribution_exact(f, eps)?;
    let num_bits = f.num_bits();
    let q0 = dist.get(&0).copied().unwrap_or(0.0);
    let mut multi = Vec::new();
    let mut single = Vec::new();
    let mut sum = q0;
    for i in 0..num_bits {
        let state = 1u64 << (num_bits - 1 - i);
        let p = dist.get(&state).copied().unwrap_or(0.0);
        sum += p;
        if f.terms(i).len() >= 2 {
            multi.push(p);
        } else {
            single.push(p);
        }
    }
    let mean = |v: &[f64]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    Ok(ConcentrationRow {
        epsilon: eps,
        q0,
        q1to4: mean(&multi),
        q5to6: mean(&single),
        sum,
    })
}

/// Maps [`closed_form_q`] over a list of crossover probabilities.
pub fn concentration_table(eps_list: &[f64]) -> Result<Vec<ConcentrationRow>> {
    eps_list.iter().map(|&e| closed_form_q(e)).collect()
}

/// CSV with header `epsilon,q0,q1to4,q5to6,sum`, six decimal places.
pub fn concentration_csv(rows: &[ConcentrationRow]) -> String {
    let mut out = String::from("epsilon,q0,q1to4,q5to6,sum\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{:.6}\n",
            r.epsilon, r.q0, r.q1to4, r.q5to6, r.sum
        ));
    }
    out
}
