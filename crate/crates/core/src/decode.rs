//! The three decoders: full-trellis Viterbi, degenerate-trellis list
//! decoding with an auxiliary syndrome stream, and 1-state M-algorithm
//! decoding for monomial rows.
//!
//! All of them use the same metric (Hamming weight, hard-decision BSC) and
//! the same total order on paths: weight first, then lexicographic symbol
//! order. The shared order makes results comparable across decoders and
//! fixes every tie deterministically.

use std::collections::HashMap;

use crate::code::{
    one_state_form, partition, shift_errors, CheckMatrix, ErrorSeq, RowPartition,
    ShiftDirection,
};
use crate::error::{Error, Result};
use crate::former::{causalize, Former, FormerState, SyndromeSeq};
use crate::trellis::ErrorTrellis;

/// Default survivor budget for the M-algorithm.
pub const DEFAULT_SURVIVORS: usize = 16;

/// Instrumentation counters for one decode call.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecoderStats {
    /// Maximum number of concurrent survivor slots.
    pub survivor_count: usize,
    /// Total number of best-of-`select_width` selections.
    pub compare_select_ops: u64,
    /// Candidates per selection.
    pub select_width: usize,
    /// Extensions discarded because the side former disagreed with the
    /// auxiliary syndrome stream.
    pub pruned_by_zeta2: u64,
    /// Time steps processed.
    pub steps: usize,
}

/// A decoding result: the error path, its weight, and counters. For the
/// 1-state decoder `shifted_path` additionally holds the path in the
/// shifted-error domain.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub path: ErrorSeq,
    pub weight: u32,
    pub shifted_path: Option<ErrorSeq>,
    pub stats: DecoderStats,
}

type Survivor = (u32, Vec<u32>);

fn better(a: &Survivor, b: &Survivor) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Minimum-weight path search on a full error trellis. Ties are broken by
/// lexicographic symbol order, so the result equals the first minimum of
/// [`crate::trellis::enumerate_paths`].
pub fn viterbi_ml(t: &ErrorTrellis) -> Result<Decoded> {
    let mut survivors: HashMap<FormerState, Survivor> = HashMap::new();
    survivors.insert(t.final_state.zeroed(), (0, Vec::new()));
    let mut stats = DecoderStats {
        steps: t.steps.len(),
        ..Default::default()
    };
    for module in &t.steps {
        let mut next: HashMap<FormerState, Survivor> = HashMap::new();
        for b in &module.branches {
            let Some((w, path)) = survivors.get(&b.from) else {
                continue;
            };
            let cand = (w + b.symbol.count_ones(), {
                let mut p = path.clone();
                p.push(b.symbol);
                p
            });
            stats.compare_select_ops += 1;
            match next.get_mut(&b.to) {
                Some(best) => {
                    if better(&cand, best) {
                        *best = cand;
                    }
                }
                None => {
                    next.insert(b.to.clone(), cand);
                }
            }
        }
        stats.survivor_count = stats.survivor_count.max(next.len());
        survivors = next;
    }
    let (weight, path) = survivors
        .remove(&t.final_state)
        .ok_or(Error::NoAdmissiblePath)?;
    Ok(Decoded {
        path: ErrorSeq::from_symbols(t.n, path),
        weight,
        shifted_path: None,
        stats,
    })
}

/// List decoding on the degenerate trellis of the rows in `r`, with the
/// side rows' syndrome stream as auxiliary information.
///
/// Per degenerate state, one survivor is kept for each of the `2^{nu2}` side
/// former states; extensions are pruned when the side former disagrees with
/// the observed side syndrome, and the per-(state, side-state) best is kept.
/// The result equals [`viterbi_ml`] on the full trellis, path included,
/// because both use the same total order.
pub fn decode_degenerate(
    h: &CheckMatrix,
    r: &RowPartition,
    zseq: &SyndromeSeq,
) -> Result<Decoded> {
    let (h1, h2) = partition(h, r)?;
    let f1 = Former::new(&h1)?;
    let f2 = Former::new(&h2)?;
    let z1 = zseq.select_rows(r.trellis_rows());
    let z2 = zseq.select_rows(r.side_rows());
    let n = h.n();
    let slots = 1usize << (f1.nu() + f2.nu());

    let mut survivors: HashMap<(FormerState, FormerState), Survivor> = HashMap::new();
    survivors.insert((FormerState::zero(&h1), FormerState::zero(&h2)), (0, Vec::new()));
    let mut stats = DecoderStats {
        survivor_count: slots,
        select_width: 1 << (n - h.m()),
        steps: zseq.len(),
        ..Default::default()
    };
    for k in 0..zseq.len() {
        let mut next: HashMap<(FormerState, FormerState), Survivor> = HashMap::new();
        for ((s1, s2), (w, path)) in &survivors {
            for symbol in 0..(1u32 << n) {
                let (s1n, z1k) = f1.step(s1, symbol);
                if z1k != z1.zetas[k] {
                    continue;
                }
                let (s2n, z2k) = f2.step(s2, symbol);
                if z2k != z2.zetas[k] {
                    stats.pruned_by_zeta2 += 1;
                    continue;
                }
                let cand = (w + symbol.count_ones(), {
                    let mut p = path.clone();
                    p.push(symbol);
                    p
                });
                match next.get_mut(&(s1n.clone(), s2n.clone())) {
                    Some(best) => {
                        if better(&cand, best) {
                            *best = cand;
                        }
                    }
                    None => {
                        next.insert((s1n, s2n), cand);
                    }
                }
            }
        }
        // one best-of-2^{n-m} selection per (degenerate state, side pattern)
        // slot, whether or not the slot is reachable yet
        stats.compare_select_ops += slots as u64;
        survivors = next;
        if survivors.is_empty() {
            return Err(Error::SurvivorsExhausted { step: k + 1 });
        }
    }
    let key = (
        zseq.final_state.project(r.trellis_rows()),
        zseq.final_state.project(r.side_rows()),
    );
    let (weight, path) = survivors.remove(&key).ok_or(Error::NoAdmissiblePath)?;
    Ok(Decoded {
        path: ErrorSeq::from_symbols(n, path),
        weight,
        shifted_path: None,
        stats,
    })
}

/// Survivor budget at which [`decode_one_state`] is maximum likelihood:
/// `2^{nu'}`, where `nu'` is the span-based constraint length of the side
/// rows after the monomial-row transform.
pub fn ml_survivor_budget(h: &CheckMatrix, r: usize) -> Result<usize> {
    let (hp, _) = one_state_form(h, r)?;
    let nu: usize = (0..h.m()).filter(|&q| q != r).map(|q| hp.row_span(q)).sum();
    Ok(1 << nu)
}

/// M-algorithm decoding on the 1-state error trellis of monomial row `r`.
///
/// The block is transformed into the shifted-error domain where row `r` is
/// all ones (its trellis has a single state); each step extends the
/// survivors with the symbols matching the row-`r` syndrome bit, prunes
/// extensions against the causalized side rows' delayed syndrome streams,
/// and keeps the `m_budget` best paths under the shared total order, one
/// per side-former state. A termination window of the side rows' memory
/// depth pins the zero tail, and the winner is mapped back through the
/// inverse shift.
pub fn decode_one_state(
    h: &CheckMatrix,
    r: usize,
    zseq: &SyndromeSeq,
    m_budget: usize,
) -> Result<Decoded> {
    assert!(m_budget >= 1, "survivor budget must be at least 1");
    let (hp, l) = one_state_form(h, r)?;
    let full = Former::new(h)?;
    let n = h.n();
    let block_len = zseq.len();
    let lmax = l.max() as usize;

    // causalized side rows with their delays; `None` when m == 1
    let side_rows: Vec<usize> = (0..h.m()).filter(|&q| q != r).collect();
    let side = if side_rows.is_empty() {
        None
    } else {
        let hs = CheckMatrix::new(hp.mat().select_rows(&side_rows))?;
        let (hsc, deltas) = causalize(&hs);
        let former = Former::new(&hsc)?;
        Some((hsc, deltas, former))
    };
    let window = side
        .as_ref()
        .map(|(hsc, _, _)| hsc.l_max().max(0) as usize)
        .unwrap_or(0);

    // observed syndrome words extended past the block end by stepping the
    // full former from the final state with zero input
    let tail = full.tail(&zseq.final_state, lmax + window);
    let observed = |t: isize, q: usize| -> u8 {
        if t < 0 {
            0
        } else if (t as usize) < block_len {
            zseq.bit(t, q)
        } else {
            let i = t as usize - block_len;
            ((tail[i] >> (h.m() - 1 - q)) & 1) as u8
        }
    };

    let shifted_len = block_len + lmax;
    let mut survivors: Vec<(Option<FormerState>, Survivor)> = vec![(
        side.as_ref().map(|(hsc, _, _)| FormerState::zero(hsc)),
        (0, Vec::new()),
    )];
    let mut stats = DecoderStats {
        select_width: 1 << (n - h.m()),
        steps: shifted_len,
        ..Default::default()
    };

    for k in 0..shifted_len {
        // components whose shifted subsequence can be nonzero at this step
        let mut mask = 0u32;
        for j in 0..n {
            let lj = l.get(j) as usize;
            if k >= lj && k < block_len + lj {
                mask |= 1 << (n - 1 - j);
            }
        }
        let target = observed(k as isize, r);
        let mut best_per_state: HashMap<u64, (Option<FormerState>, Survivor)> = HashMap::new();
        for (state, (w, path)) in &survivors {
            for symbol in 0..(1u32 << n) {
                if symbol & !mask != 0 || (symbol.count_ones() & 1) as u8 != target {
                    continue;
                }
                let (next_state, ok) = match (state, &side) {
                    (Some(s), Some((_, deltas, former))) => {
                        let (sn, emitted) = former.step(s, symbol);
                        let ok = side_rows.iter().enumerate().all(|(i, &q)| {
                            let bit = ((emitted >> (side_rows.len() - 1 - i)) & 1) as u8;
                            bit == observed(k as isize - deltas[i] as isize, q)
                        });
                        (Some(sn), ok)
                    }
                    _ => (None, true),
                };
                if !ok {
                    stats.pruned_by_zeta2 += 1;
                    continue;
                }
                let cand = (w + symbol.count_ones(), {
                    let mut p = path.clone();
                    p.push(symbol);
                    p
                });
                stats.compare_select_ops += 1;
                let key = next_state.as_ref().map(|s| s.index()).unwrap_or(0);
                match best_per_state.get_mut(&key) {
                    Some((_, best)) => {
                        if better(&cand, best) {
                            *best = cand;
                        }
                    }
                    None => {
                        best_per_state.insert(key, (next_state, cand));
                    }
                }
            }
        }
        if best_per_state.is_empty() {
            return Err(Error::SurvivorsExhausted { step: k + 1 });
        }
        let mut ranked: Vec<(Option<FormerState>, Survivor)> =
            best_per_state.into_values().collect();
        ranked.sort_by(|(_, a), (_, b)| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        ranked.truncate(m_budget);
        stats.survivor_count = stats.survivor_count.max(ranked.len());
        survivors = ranked;
    }

    // termination window: future symbols are pinned to the zero tail; the
    // side former must keep matching the delayed observed stream, which
    // pins its final state
    for t in 0..window {
        let k = (shifted_len + t) as isize;
        if observed(k, r) != 0 {
            return Err(Error::NoAdmissiblePath);
        }
        survivors.retain_mut(|(state, _)| {
            let (_, deltas, former) = side.as_ref().expect("window implies side rows");
            let s = state.as_ref().expect("side state present");
            let (sn, emitted) = former.step(s, 0);
            let ok = side_rows.iter().enumerate().all(|(i, &q)| {
                let bit = ((emitted >> (side_rows.len() - 1 - i)) & 1) as u8;
                bit == observed(k - deltas[i] as isize, q)
            });
            *state = Some(sn);
            ok
        });
        if survivors.is_empty() {
            return Err(Error::SurvivorsExhausted {
                step: shifted_len + t + 1,
            });
        }
    }

    let (_, (weight, path)) = survivors
        .into_iter()
        .min_by(|(_, a), (_, b)| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .expect("survivor list nonempty");
    let shifted = ErrorSeq::from_symbols(n, path);
    let path = shift_errors(&shifted, &l, ShiftDirection::Invert);
    Ok(Decoded {
        path,
        weight,
        shifted_path: Some(shifted),
        stats,
    })
}
