//! Check-matrix model: loading, validation, row partitioning, row
//! normalization and the shifted-error transform that turns a monomial row
//! into an all-ones (memoryless) row.
//!
//! Row and column indices are 1-based in the CLI and file formats; the API
//! uses 0-based indices throughout.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2poly::{LaurentPoly, PolyMatrix};

/// An m x n polynomial check matrix together with per-row degree data.
///
/// For a causal matrix (all row minimum exponents >= 0) the overall
/// constraint length `nu` is the sum of the row maximum degrees. For Laurent
/// rows we extend the definition to the row span `maxdeg - min(0, mindeg)`;
/// the causal case reduces to the usual value.
#[derive(Clone, PartialEq, Eq)]
pub struct CheckMatrix {
    mat: PolyMatrix,
    row_max_deg: Vec<i32>,
    row_min_deg: Vec<i32>,
}

impl CheckMatrix {
    /// Validates and wraps a polynomial matrix. Every row must be nonzero
    /// and the matrix must have fewer rows than columns.
    pub fn new(mat: PolyMatrix) -> Result<Self> {
        if mat.rows() >= mat.cols() {
            return Err(Error::Dimensions {
                m: mat.rows(),
                n: mat.cols(),
            });
        }
        let mut row_max_deg = Vec::with_capacity(mat.rows());
        let mut row_min_deg = Vec::with_capacity(mat.rows());
        for q in 0..mat.rows() {
            let mut lo = i32::MAX;
            let mut hi = i32::MIN;
            for p in mat.row(q) {
                if let Ok((a, b)) = p.degree_bounds() {
                    lo = lo.min(a);
                    hi = hi.max(b);
                }
            }
            if hi == i32::MIN {
                return Err(Error::ZeroRow { row: q });
            }
            row_min_deg.push(lo);
            row_max_deg.push(hi);
        }
        Ok(Self {
            mat,
            row_max_deg,
            row_min_deg,
        })
    }

    pub fn n(&self) -> usize {
        self.mat.cols()
    }

    pub fn m(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &PolyMatrix {
        &self.mat
    }

    pub fn entry(&self, q: usize, j: usize) -> &LaurentPoly {
        self.mat.get(q, j)
    }

    /// Maximum degree among the polynomials of row `q`.
    pub fn row_max_deg(&self, q: usize) -> i32 {
        self.row_max_deg[q]
    }

    /// Minimum exponent in row `q` (may be negative for Laurent rows).
    pub fn row_min_deg(&self, q: usize) -> i32 {
        self.row_min_deg[q]
    }

    /// Span of row `q`: `maxdeg - min(0, mindeg)`. Equals the row constraint
    /// length for causal rows.
    pub fn row_span(&self, q: usize) -> usize {
        (self.row_max_deg[q] - self.row_min_deg[q].min(0)) as usize
    }

    /// Overall (span-based) constraint length.
    pub fn nu(&self) -> usize {
        (0..self.m()).map(|q| self.row_span(q)).sum()
    }

    /// Maximum row constraint length, i.e. the depth of the longest delay
    /// chain in the observer-form realization.
    pub fn l_max(&self) -> i32 {
        *self.row_max_deg.iter().max().unwrap()
    }

    pub fn is_causal(&self) -> bool {
        self.row_min_deg.iter().all(|&d| d >= 0)
    }

    /// One warning per column whose entries all share a factor `D^l`, l > 0.
    /// Such a matrix is not canonical; decoding still works but the state
    /// space is larger than necessary.
    pub fn column_factor_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for j in 0..self.n() {
            let mut col_min = i32::MAX;
            for q in 0..self.m() {
                match self.entry(q, j).degree_bounds() {
                    Ok((lo, _)) => col_min = col_min.min(lo),
                    Err(_) => col_min = col_min.min(0),
                }
            }
            if col_min > 0 {
                out.push(format!(
                    "column {} has common factor D^{}; the matrix is not canonical",
                    j + 1,
                    col_min
                ));
            }
        }
        out
    }
}

impl fmt::Debug for CheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.mat)
    }
}

/// Parses the code-spec document format:
///
/// ```text
/// n=3 m=2
/// 1+D D 1+D
/// D 1 1
/// ```
///
/// An entry is `0` or a `+`-joined list of `1`, `D`, `D^k` (k may be
/// negative).
pub fn load_code(text: &str) -> Result<CheckMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty document".into()))?;
    let mut n = None;
    let mut m = None;
    for field in header.split_whitespace() {
        if let Some(v) = field.strip_prefix("n=") {
            n = Some(
                v.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad n in `{header}`")))?,
            );
        } else if let Some(v) = field.strip_prefix("m=") {
            m = Some(
                v.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad m in `{header}`")))?,
            );
        } else {
            return Err(Error::Parse(format!("unexpected header field `{field}`")));
        }
    }
    let n = n.ok_or_else(|| Error::Parse("header missing n=".into()))?;
    let m = m.ok_or_else(|| Error::Parse("header missing m=".into()))?;
    if n == 0 || m == 0 {
        return Err(Error::Parse("n and m must be positive".into()));
    }
    let mut entries = Vec::with_capacity(m * n);
    for q in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {}", q + 1)))?;
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {}",
                q + 1,
                row.len(),
                n
            )));
        }
        for s in row {
            entries.push(LaurentPoly::parse(s)?);
        }
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after last row".into()));
    }
    CheckMatrix::new(PolyMatrix::new(m, n, entries))
}

/// A split of the row set into trellis rows (used to build the decoding
/// trellis) and side rows (used for the auxiliary syndrome stream).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowPartition {
    trellis_rows: Vec<usize>,
    side_rows: Vec<usize>,
}

impl RowPartition {
    /// `rows` is the trellis-row subset (0-based); it must be a nonempty
    /// proper subset of `0..m`.
    pub fn new(rows: &[usize], m: usize) -> Result<Self> {
        let mut trellis_rows: Vec<usize> = rows.to_vec();
        trellis_rows.sort_unstable();
        trellis_rows.dedup();
        if trellis_rows.is_empty()
            || trellis_rows.len() >= m
            || trellis_rows.iter().any(|&r| r >= m)
        {
            return Err(Error::InvalidPartition);
        }
        let side_rows = (0..m).filter(|r| !trellis_rows.contains(r)).collect();
        Ok(Self {
            trellis_rows,
            side_rows,
        })
    }

    pub fn trellis_rows(&self) -> &[usize] {
        &self.trellis_rows
    }

    pub fn side_rows(&self) -> &[usize] {
        &self.side_rows
    }
}

/// Splits `h` into the trellis submatrix H1 (rows in `r`) and the side
/// submatrix H2 (the remaining rows).
pub fn partition(h: &CheckMatrix, r: &RowPartition) -> Result<(CheckMatrix, CheckMatrix)> {
    if r.trellis_rows.iter().any(|&q| q >= h.m()) {
        return Err(Error::InvalidPartition);
    }
    let h1 = CheckMatrix::new(h.mat.select_rows(&r.trellis_rows))?;
    let h2 = CheckMatrix::new(h.mat.select_rows(&r.side_rows))?;
    Ok((h1, h2))
}

/// Multiplies each row by `D^-mindeg(row)` so every row has minimum exponent
/// zero. The syndrome stream of row `q` is advanced by `mindeg(row q)` steps.
pub fn normalize_rows(h: &CheckMatrix) -> CheckMatrix {
    let mut mat = h.mat.clone();
    for q in 0..h.m() {
        let shift = -h.row_min_deg(q);
        if shift != 0 {
            mat = mat.map_row(q, |p| p.shift(shift));
        }
    }
    CheckMatrix::new(mat).expect("normalization preserves validity")
}

/// Per-column delays `l_j` absorbed into shifted error subsequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftVector {
    l: Vec<u32>,
}

impl ShiftVector {
    pub fn new(l: Vec<u32>) -> Self {
        Self { l }
    }

    pub fn get(&self, j: usize) -> u32 {
        self.l[j]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.l
    }

    pub fn max(&self) -> u32 {
        self.l.iter().copied().max().unwrap_or(0)
    }
}

/// Factors the monomial entries `D^{l_j}` of row `r` out of every column:
/// the returned matrix has `H'[i][j] = H[i][j] * D^{-l_j}`, so row `r`
/// becomes all ones and its error trellis has a single state. Other rows may
/// acquire negative exponents.
pub fn one_state_form(h: &CheckMatrix, r: usize) -> Result<(CheckMatrix, ShiftVector)> {
    let mut l = Vec::with_capacity(h.n());
    for j in 0..h.n() {
        match h.entry(r, j).as_monomial() {
            Some(k) if k >= 0 => l.push(k as u32),
            _ => return Err(Error::NonMonomialRow { row: r }),
        }
    }
    let mut entries = Vec::with_capacity(h.m() * h.n());
    for q in 0..h.m() {
        for j in 0..h.n() {
            entries.push(h.entry(q, j).shift(-(l[j] as i32)));
        }
    }
    let hp = CheckMatrix::new(PolyMatrix::new(h.m(), h.n(), entries))?;
    Ok((hp, ShiftVector::new(l)))
}

/// An error sequence: one n-bit symbol per time step. Component 1 is the
/// most significant bit of a symbol, so comparing symbol words compares the
/// written bit strings lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ErrorSeq {
    n: usize,
    symbols: Vec<u32>,
}

impl ErrorSeq {
    pub fn zero(n: usize, len: usize) -> Self {
        Self {
            n,
            symbols: vec![0; len],
        }
    }

    pub fn from_symbols(n: usize, symbols: Vec<u32>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s < (1 << n)));
        Self { n, symbols }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, k: usize) -> u32 {
        self.symbols[k]
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Bit of component `j` (0-based) at time `k` (0-based); zero outside
    /// the stored range.
    pub fn bit(&self, k: isize, j: usize) -> u8 {
        if k < 0 || k as usize >= self.symbols.len() {
            return 0;
        }
        ((self.symbols[k as usize] >> (self.n - 1 - j)) & 1) as u8
    }

    pub fn weight(&self) -> u32 {
        self.symbols.iter().map(|s| s.count_ones()).sum()
    }

    /// Parses the error-sequence file format: one line per time step, `n`
    /// characters of `0`/`1`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut symbols = Vec::new();
        for (i, line) in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
        {
            if line.len() != n || !line.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::Parse(format!(
                    "line {}: expected {} binary digits, got `{}`",
                    i + 1,
                    n,
                    line
                )));
            }
            symbols.push(u32::from_str_radix(line, 2).unwrap());
        }
        Ok(Self { n, symbols })
    }
}

impl fmt::Display for ErrorSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .symbols
            .iter()
            .map(|s| format!("{:0width$b}", s, width = self.n))
            .collect();
        write!(f, "{}", words.join(" "))
    }
}

impl fmt::Debug for ErrorSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    /// `e'[j][k] = e[j][k - l_j]`; the sequence grows by `max l_j` steps.
    Apply,
    /// Exact inverse of `Apply` on the valid index range.
    Invert,
}

/// Applies (or inverts) the per-component delays of a [`ShiftVector`].
/// Sequences are treated as zero before the first and after the last step.
pub fn shift_errors(e: &ErrorSeq, l: &ShiftVector, direction: ShiftDirection) -> ErrorSeq {
    let n = e.n();
    let lmax = l.max() as usize;
    let out_len = match direction {
        ShiftDirection::Apply => e.len() + lmax,
        ShiftDirection::Invert => e.len().saturating_sub(lmax),
    };
    let mut symbols = vec![0u32; out_len];
    for (k, sym) in symbols.iter_mut().enumerate() {
        for j in 0..n {
            let src = match direction {
                ShiftDirection::Apply => k as isize - l.get(j) as isize,
                ShiftDirection::Invert => k as isize + l.get(j) as isize,
            };
            if e.bit(src, j) == 1 {
                *sym |= 1 << (n - 1 - j);
            }
        }
    }
    ErrorSeq::from_symbols(n, symbols)
}
