//! The syndrome former `H^T(D)` realized in observer canonical form.
//!
//! Each row of the check matrix gets its own delay chain feeding the
//! corresponding syndrome bit; rows operate independently of one another,
//! which is what makes trellis-module degeneration onto a row subset work.
//! A direct polynomial-convolution evaluation is provided as an independent
//! oracle for the stepping recurrence.

use std::fmt;

use crate::code::{CheckMatrix, ErrorSeq};
use crate::error::{Error, Result};
use crate::gf2poly::PolyMatrix;

/// The state of a syndrome former: one delay chain per row, chain `q`
/// holding the row's `nu^(q)` memory bits with position 1 closest to the
/// syndrome output.
///
/// The integer index of a state is the big-endian reading of the memory
/// bits ordered by chain position first and row second (position 1 of every
/// row, then position 2 of every row, and so on); index 0 is the all-zero
/// state. Positions beyond a row's chain length have no memory element and
/// read as zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormerState {
    chains: Vec<Vec<u8>>,
}

impl FormerState {
    pub fn zero(h: &CheckMatrix) -> Self {
        Self {
            chains: (0..h.m())
                .map(|q| vec![0; h.row_max_deg(q) as usize])
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.chains.iter().all(|c| c.iter().all(|&b| b == 0))
    }

    /// Chain bit at `pos` (1-based); zero beyond the chain length.
    pub fn bit(&self, row: usize, pos: usize) -> u8 {
        self.chains[row].get(pos - 1).copied().unwrap_or(0)
    }

    /// An all-zero state with the same chain layout.
    pub fn zeroed(&self) -> Self {
        Self {
            chains: self.chains.iter().map(|c| vec![0; c.len()]).collect(),
        }
    }

    /// State of the submatrix made of `rows`, in the given row order.
    pub fn project(&self, rows: &[usize]) -> Self {
        Self {
            chains: rows.iter().map(|&q| self.chains[q].clone()).collect(),
        }
    }

    /// Big-endian state index in the interleaved (position, row) order.
    pub fn index(&self) -> u64 {
        let l = self.chains.iter().map(Vec::len).max().unwrap_or(0);
        let mut idx = 0u64;
        for p in 0..l {
            for chain in &self.chains {
                if p < chain.len() {
                    idx = (idx << 1) | chain[p] as u64;
                }
            }
        }
        idx
    }

    /// Inverse of [`FormerState::index`] for the layout of `h`.
    pub fn from_index(h: &CheckMatrix, mut idx: u64) -> Self {
        let mut s = Self::zero(h);
        let l = h.l_max().max(0) as usize;
        // positions in reverse order: the last free position is the LSB
        for p in (0..l).rev() {
            for q in (0..h.m()).rev() {
                if p < s.chains[q].len() {
                    s.chains[q][p] = (idx & 1) as u8;
                    idx >>= 1;
                }
            }
        }
        s
    }
}

impl fmt::Debug for FormerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .chains
            .iter()
            .map(|c| c.iter().map(|b| b.to_string()).collect::<String>())
            .collect();
        write!(f, "({})", parts.join("|"))
    }
}

/// A syndrome sequence: one m-bit word per time step (row 1 is the most
/// significant bit) plus the former state after the last step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeSeq {
    pub m: usize,
    pub zetas: Vec<u32>,
    pub final_state: FormerState,
}

impl SyndromeSeq {
    pub fn len(&self) -> usize {
        self.zetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zetas.is_empty()
    }

    /// Bit of row `q` (0-based) at time `k` (0-based); zero outside range.
    pub fn bit(&self, k: isize, q: usize) -> u8 {
        if k < 0 || k as usize >= self.zetas.len() {
            return 0;
        }
        ((self.zetas[k as usize] >> (self.m - 1 - q)) & 1) as u8
    }

    /// The rows-in-`rows` substream, with the final state projected
    /// accordingly.
    pub fn select_rows(&self, rows: &[usize]) -> SyndromeSeq {
        let zetas = self
            .zetas
            .iter()
            .map(|&z| {
                let mut w = 0u32;
                for (i, &q) in rows.iter().enumerate() {
                    let bit = (z >> (self.m - 1 - q)) & 1;
                    w |= bit << (rows.len() - 1 - i);
                }
                w
            })
            .collect();
        SyndromeSeq {
            m: rows.len(),
            zetas,
            final_state: self.final_state.project(rows),
        }
    }
}

/// Precomputed observer-form realization of `H^T(D)` for a causal matrix.
///
/// `masks[q][p]` selects the error components `j` whose row-`q` entry has a
/// `D^p` term, so a tap value is the parity of `symbol & mask`.
pub struct Former {
    n: usize,
    m: usize,
    mem: Vec<usize>,
    masks: Vec<Vec<u32>>,
}

impl Former {
    pub fn new(h: &CheckMatrix) -> Result<Self> {
        if !h.is_causal() {
            return Err(Error::NonCausal);
        }
        let n = h.n();
        let m = h.m();
        let mem: Vec<usize> = (0..m).map(|q| h.row_max_deg(q) as usize).collect();
        let masks = (0..m)
            .map(|q| {
                (0..=mem[q])
                    .map(|p| {
                        let mut mask = 0u32;
                        for j in 0..n {
                            if h.entry(q, j).contains(p as i32) {
                                mask |= 1 << (n - 1 - j);
                            }
                        }
                        mask
                    })
                    .collect()
            })
            .collect();
        Ok(Self { n, m, mem, masks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Total memory; the former has `2^nu` states.
    pub fn nu(&self) -> usize {
        self.mem.iter().sum()
    }

    /// One step of the observer-form recurrence: the syndrome bit of row `q`
    /// is its direct tap plus chain position 1, and the chain shifts down
    /// with the row's taps added in.
    pub fn step(&self, s: &FormerState, symbol: u32) -> (FormerState, u32) {
        debug_assert!(symbol < (1u32 << self.n));
        let mut next = s.clone();
        let mut zeta = 0u32;
        for q in 0..self.m {
            let tap = |p: usize| (symbol & self.masks[q][p]).count_ones() as u8 & 1;
            let out = tap(0) ^ s.bit(q, 1);
            zeta |= (out as u32) << (self.m - 1 - q);
            for p in 1..=self.mem[q] {
                next.chains[q][p - 1] = tap(p) ^ s.bit(q, p + 1);
            }
        }
        (next, zeta)
    }

    /// Folds [`Former::step`] over a whole sequence from the all-zero state.
    pub fn run(&self, e: &ErrorSeq) -> SyndromeSeq {
        assert_eq!(e.n(), self.n);
        let mut state = FormerState {
            chains: self.mem.iter().map(|&len| vec![0; len]).collect(),
        };
        let mut zetas = Vec::with_capacity(e.len());
        for k in 0..e.len() {
            let (next, z) = self.step(&state, e.symbol(k));
            state = next;
            zetas.push(z);
        }
        SyndromeSeq {
            m: self.m,
            zetas,
            final_state: state,
        }
    }

    /// Continues the former from `final_state` with zero input, returning
    /// the next `extra` syndrome words (the termination tail).
    pub fn tail(&self, final_state: &FormerState, extra: usize) -> Vec<u32> {
        let mut state = final_state.clone();
        let mut out = Vec::with_capacity(extra);
        for _ in 0..extra {
            let (next, z) = self.step(&state, 0);
            state = next;
            out.push(z);
        }
        out
    }
}

/// [`Former::step`] without holding on to a realization.
pub fn step(h: &CheckMatrix, s: &FormerState, symbol: u32) -> Result<(FormerState, u32)> {
    Ok(Former::new(h)?.step(s, symbol))
}

/// Runs the whole sequence through the observer-form former from the
/// all-zero state.
pub fn run(h: &CheckMatrix, e: &ErrorSeq) -> Result<SyndromeSeq> {
    Ok(Former::new(h)?.run(e))
}

/// Direct polynomial evaluation of `e H^T(D)`, used as an oracle for the
/// stepping recurrence. Laurent entries are allowed. The final state is
/// computed in closed form from the causalized rows.
pub fn syndrome_by_convolution(h: &CheckMatrix, e: &ErrorSeq) -> SyndromeSeq {
    let m = h.m();
    let n = h.n();
    let zetas = (0..e.len())
        .map(|k| {
            let mut z = 0u32;
            for q in 0..m {
                let mut bit = 0u8;
                for j in 0..n {
                    for p in h.entry(q, j).exps() {
                        bit ^= e.bit(k as isize - p as isize, j);
                    }
                }
                z |= (bit as u32) << (m - 1 - q);
            }
            z
        })
        .collect();
    let (hc, _) = causalize(h);
    let len = e.len() as isize;
    let mut final_state = FormerState::zero(&hc);
    for q in 0..m {
        for p in 1..=(hc.row_max_deg(q) as usize) {
            let mut bit = 0u8;
            for j in 0..n {
                for s in hc.entry(q, j).exps() {
                    if s >= p as i32 {
                        bit ^= e.bit(len - 1 + p as isize - s as isize, j);
                    }
                }
            }
            final_state.chains[q][p - 1] = bit;
        }
    }
    SyndromeSeq {
        m,
        zetas,
        final_state,
    }
}

/// Shifts each Laurent row into causal form. Row `q` is multiplied by
/// `D^{delta_q}` with `delta_q = max(0, -mindeg)`, so the causal former
/// emits at step `k` the ideal row-`q` syndrome of step `k - delta_q`.
pub fn causalize(h: &CheckMatrix) -> (CheckMatrix, Vec<u32>) {
    let mut entries = Vec::with_capacity(h.m() * h.n());
    let mut delays = Vec::with_capacity(h.m());
    for q in 0..h.m() {
        let delta = (-h.row_min_deg(q)).max(0);
        delays.push(delta as u32);
        for j in 0..h.n() {
            entries.push(h.entry(q, j).shift(delta));
        }
    }
    let hc = CheckMatrix::new(PolyMatrix::new(h.m(), h.n(), entries))
        .expect("causalizing preserves validity");
    (hc, delays)
}
