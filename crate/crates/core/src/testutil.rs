//! Shared fixtures and generators for unit tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{load_code, CheckMatrix, ErrorSeq};
use crate::gf2poly::{LaurentPoly, PolyMatrix};

/// The (3,1) running-example code: rows `1+D D 1+D` and `D 1 1`.
pub const EXAMPLE_CODE: &str = "n=3 m=2\n1+D D 1+D\nD 1 1\n";

/// The monomial (circulant-derived) code: rows `1 D D^3` and `D^3 D^2 1`.
pub const MONOMIAL_CODE: &str = "n=3 m=2\n1 D D^3\nD^3 D^2 1\n";

pub fn example_code() -> CheckMatrix {
    load_code(EXAMPLE_CODE).unwrap()
}

pub fn monomial_code() -> CheckMatrix {
    load_code(MONOMIAL_CODE).unwrap()
}

/// The decoded-path fixture for the running example: weight-2 pattern with
/// ones in component 1 at times 2 and 4 (1-based).
pub fn example_ml_path() -> ErrorSeq {
    ErrorSeq::parse("000\n100\n000\n100\n000\n", 3).unwrap()
}

/// Rank over GF(2) of a list of n-bit row vectors.
fn gf2_rank(mut rows: Vec<u32>) -> usize {
    let mut rank = 0;
    for bit in (0..32).rev() {
        let Some(pos) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pos);
        for i in 0..rows.len() {
            if i != rank && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// Coefficient vector of `D^p` across row `q` of `h`, component 0 as MSB.
fn coeff_vector(h: &CheckMatrix, q: usize, p: i32) -> u32 {
    let n = h.n();
    (0..n)
        .filter(|&j| h.entry(q, j).contains(p))
        .fold(0, |acc, j| acc | 1 << (n - 1 - j))
}

/// Random canonical causal check matrix with every row maximum degree in
/// `1..=max_deg`. Each row carries memory, the delay-free coefficient
/// matrix has full rank (so every syndrome value has branches from every
/// state), and the highest-degree coefficient matrix has full rank (the
/// realization is minimal). The structural counting laws assume all three.
pub fn random_causal_matrix(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    max_deg: i32,
) -> CheckMatrix {
    loop {
        let mut entries = Vec::with_capacity(m * n);
        for _ in 0..m {
            let deg = rng.gen_range(1..=max_deg);
            let mut row: Vec<LaurentPoly> = (0..n)
                .map(|_| {
                    LaurentPoly::from_exps(
                        (0..=deg).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>(),
                    )
                })
                .collect();
            // make sure the row actually reaches degree `deg` and min degree 0
            let j = rng.gen_range(0..n);
            if !row[j].contains(deg) {
                row[j] = row[j].add(&LaurentPoly::monomial(deg));
            }
            let j = rng.gen_range(0..n);
            if !row[j].contains(0) {
                row[j] = row[j].add(&LaurentPoly::one());
            }
            entries.extend(row);
        }
        if let Ok(h) = CheckMatrix::new(PolyMatrix::new(m, n, entries)) {
            let degrees_ok = (0..m).all(|q| h.row_max_deg(q) >= 1 && h.row_min_deg(q) == 0);
            let low: Vec<u32> = (0..m).map(|q| coeff_vector(&h, q, 0)).collect();
            let high: Vec<u32> = (0..m)
                .map(|q| coeff_vector(&h, q, h.row_max_deg(q)))
                .collect();
            if degrees_ok && gf2_rank(low) == m && gf2_rank(high) == m {
                return h;
            }
        }
    }
}

/// Row-`q` syndrome bit of `e * H^T(D)` at any time `t` (0-based; `e` is
/// zero outside its stored range). Valid for Laurent matrices, including
/// times before the block where negative exponents see early symbols.
pub fn conv_bit(h: &CheckMatrix, e: &ErrorSeq, t: isize, q: usize) -> u8 {
    let mut bit = 0u8;
    for j in 0..h.n() {
        for p in h.entry(q, j).exps() {
            bit ^= e.bit(t - p as isize, j);
        }
    }
    bit
}

/// Random matrix whose row `r` is monomial with exponents in `0..=max_exp`.
pub fn random_monomial_row_matrix(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    r: usize,
    max_exp: i32,
) -> CheckMatrix {
    loop {
        let base = random_causal_matrix(rng, n, m, 2);
        let mut entries = Vec::with_capacity(m * n);
        for q in 0..m {
            for j in 0..n {
                if q == r {
                    entries.push(LaurentPoly::monomial(rng.gen_range(0..=max_exp)));
                } else {
                    entries.push(base.entry(q, j).clone());
                }
            }
        }
        if let Ok(h) = CheckMatrix::new(PolyMatrix::new(m, n, entries)) {
            return h;
        }
    }
}

pub fn random_error_seq(rng: &mut ChaCha8Rng, n: usize, len: usize, density: f64) -> ErrorSeq {
    let symbols = (0..len)
        .map(|_| {
            let mut s = 0u32;
            for j in 0..n {
                if rng.gen_bool(density) {
                    s |= 1 << (n - 1 - j);
                }
            }
            s
        })
        .collect();
    ErrorSeq::from_symbols(n, symbols)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
