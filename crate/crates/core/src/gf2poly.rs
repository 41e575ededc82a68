//! GF(2) Laurent polynomials in the delay variable `D`, and matrices of them.
//!
//! A polynomial is a finite set of integer exponents with coefficient 1;
//! exponents may be negative (`D^-1` is the unit advance). Addition is the
//! symmetric difference of exponent sets, multiplication is carryless
//! convolution. Entries of LDPC check matrices are sparse, so the set
//! representation keeps arithmetic O(terms).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A GF(2) Laurent polynomial in `D`. The zero polynomial is the empty set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    exps: BTreeSet<i32>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The monomial `D^k`.
    pub fn monomial(k: i32) -> Self {
        let mut exps = BTreeSet::new();
        exps.insert(k);
        Self { exps }
    }

    /// Builds a polynomial from exponents; duplicate exponents cancel in pairs.
    pub fn from_exps<I: IntoIterator<Item = i32>>(iter: I) -> Self {
        let mut p = Self::zero();
        for k in iter {
            if !p.exps.remove(&k) {
                p.exps.insert(k);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    /// Returns `Some(k)` if the polynomial is exactly `D^k`.
    pub fn as_monomial(&self) -> Option<i32> {
        if self.exps.len() == 1 {
            self.exps.iter().next().copied()
        } else {
            None
        }
    }

    pub fn exps(&self) -> impl Iterator<Item = i32> + '_ {
        self.exps.iter().copied()
    }

    pub fn contains(&self, k: i32) -> bool {
        self.exps.contains(&k)
    }

    /// Minimum and maximum exponent with coefficient 1.
    pub fn degree_bounds(&self) -> Result<(i32, i32)> {
        let min = self.exps.iter().next().ok_or(Error::UndefinedDegree)?;
        let max = self.exps.iter().next_back().unwrap();
        Ok((*min, *max))
    }

    pub fn add(&self, other: &Self) -> Self {
        let exps = self
            .exps
            .symmetric_difference(&other.exps)
            .copied()
            .collect();
        Self { exps }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for a in &self.exps {
            for b in &other.exps {
                let k = a + b;
                if !p.exps.remove(&k) {
                    p.exps.insert(k);
                }
            }
        }
        p
    }

    /// Multiplies by `D^l`, shifting every exponent by `l`.
    pub fn shift(&self, l: i32) -> Self {
        Self {
            exps: self.exps.iter().map(|e| e + l).collect(),
        }
    }

    /// Parses an entry of the code-spec format: `0`, or a `+`-joined list of
    /// `1`, `D` and `D^k` (braces around `k` are tolerated).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in s.split('+') {
            let term = term.trim();
            let k = match term {
                "1" => 0,
                "D" => 1,
                _ => {
                    let rest = term
                        .strip_prefix("D^")
                        .ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?;
                    let rest = rest.trim_start_matches('{').trim_end_matches('}');
                    rest.parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
                }
            };
            if p.contains(k) {
                return Err(Error::Parse(format!("duplicate term `{term}` in `{s}`")));
            }
            p = p.add(&Self::monomial(k));
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exps
            .iter()
            .map(|&k| match k {
                0 => "1".to_string(),
                1 => "D".to_string(),
                _ => format!("D^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A fixed-size matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[LaurentPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map_row(&self, r: usize, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut entries = self.entries.clone();
        for c in 0..self.cols {
            entries[r * self.cols + c] = f(self.get(r, c));
        }
        Self::new(self.rows, self.cols, entries)
    }

    /// New matrix keeping only the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend_from_slice(self.row(r));
        }
        Self::new(rows.len(), self.cols, entries)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
