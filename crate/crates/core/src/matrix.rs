//! 0-1 matrices, submatrix pattern containment, and the exact extremal
//! function `f(n, Q)`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// Widest supported matrix; rows are stored as `u64` bitmasks.
pub const MAX_COLS: usize = 64;

/// A rectangular 0-1 matrix stored as one column bitmask per row.
///
/// Bit `c` of `rows[r]` is the entry in row `r`, column `c` (0-indexed).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix("dimensions must be at least 1".into()));
        }
        if cols > MAX_COLS {
            return Err(Error::InvalidMatrix(format!("at most {MAX_COLS} columns")));
        }
        Ok(BinaryMatrix {
            rows,
            cols,
            bits: vec![0; rows],
        })
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        let full = m.full_row();
        m.bits.iter_mut().for_each(|r| *r = full);
        Ok(m)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Rows given as bitmasks; bits at or above `cols` must be clear.
    pub fn from_row_masks(cols: usize, masks: Vec<u64>) -> Result<Self> {
        let mut m = Self::zeros(masks.len(), cols)?;
        let full = m.full_row();
        if masks.iter().any(|&r| r & !full != 0) {
            return Err(Error::InvalidMatrix(
                "bit set outside the column range".into(),
            ));
        }
        m.bits = masks;
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_mask(&self, r: usize) -> u64 {
        self.bits[r]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.bits
    }

    pub(crate) fn full_row(&self) -> u64 {
        if self.cols == 64 {
            u64::MAX
        } else {
            (1u64 << self.cols) - 1
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        if value {
            self.bits[r] |= 1 << c;
        } else {
            self.bits[r] &= !(1 << c);
        }
    }

    /// Number of 1-entries.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn reverse_rows(&self) -> BinaryMatrix {
        let mut out = self.clone();
        out.bits.reverse();
        out
    }

    pub fn reverse_cols(&self) -> BinaryMatrix {
        let mut out = self.clone();
        for r in 0..self.rows {
            out.bits[r] = self.bits[r].reverse_bits() >> (64 - self.cols);
        }
        out
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut out = Self::zeros(self.cols, self.rows).expect("nonzero dims");
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Square with exactly one 1 per row and column.
    pub fn is_permutation_matrix(&self) -> bool {
        self.rows == self.cols
            && self.bits.iter().all(|r| r.count_ones() == 1)
            && self.bits.iter().fold(0u64, |acc, r| acc | r) == self.full_row()
    }

    /// Row strings such as `"0110"`.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    /// Parses row strings; every row must have the same width.
    pub fn from_row_strings<S: AsRef<str>>(lines: &[S]) -> Result<Self> {
        let Some(first) = lines.first() else {
            return Err(Error::InvalidMatrix("no rows".into()));
        };
        let cols = first.as_ref().len();
        let mut m = Self::zeros(lines.len(), cols)?;
        for (r, line) in lines.iter().enumerate() {
            let line = line.as_ref();
            if line.len() != cols {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has width {}, expected {cols}",
                    r + 1,
                    line.len()
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    other => {
                        return Err(Error::InvalidMatrix(format!(
                            "unexpected character {other:?}"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Row-major bit string used to order witnesses.
    pub fn bit_string(&self) -> String {
        self.row_strings().concat()
    }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    /// One row per line; reading stops at the first blank line.
    fn from_str(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .skip_while(|l| l.is_empty())
            .take_while(|l| !l.is_empty())
            .collect();
        Self::from_row_strings(&lines)
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_strings() {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl Serialize for BinaryMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(d)?;
        BinaryMatrix::from_row_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// Permutation matrix of `p`: a 1 in row `p(i)`, column `i`.
pub fn perm_to_matrix(p: &Word) -> Result<BinaryMatrix> {
    if !p.is_permutation() {
        return Err(Error::NotAPermutation(p.to_string()));
    }
    let mut m = BinaryMatrix::zeros(p.len(), p.len())?;
    for (i, &v) in p.entries().iter().enumerate() {
        m.set(v as usize - 1, i, true);
    }
    Ok(m)
}

/// Whether deleting rows and columns of `p` can leave a matrix with a 1
/// wherever `q` has one.
pub fn matrix_contains(p: &BinaryMatrix, q: &BinaryMatrix) -> bool {
    if q.rows > p.rows || q.cols > p.cols {
        return false;
    }
    let mut chosen = Vec::with_capacity(q.rows);
    choose_rows(p, q, 0, &mut chosen)
}

fn choose_rows(p: &BinaryMatrix, q: &BinaryMatrix, start: usize, chosen: &mut Vec<usize>) -> bool {
    if !columns_fit(p, q, chosen) {
        return false;
    }
    if chosen.len() == q.rows {
        return true;
    }
    let need = q.rows - chosen.len();
    for r in start..=(p.rows - need) {
        chosen.push(r);
        if choose_rows(p, q, r + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Greedy left-to-right column matching for the rows of `q` assigned so far.
///
/// Taking the leftmost admissible column for each pattern column is optimal,
/// so a failure here rules out every completion of `chosen`.
fn columns_fit(p: &BinaryMatrix, q: &BinaryMatrix, chosen: &[usize]) -> bool {
    let mut next = 0usize;
    for c in 0..q.cols {
        let mut admissible = p.full_row();
        for (qi, &pr) in chosen.iter().enumerate() {
            if q.get(qi, c) {
                admissible &= p.bits[pr];
            }
        }
        let below = 1u64.checked_shl(next as u32).map_or(u64::MAX, |b| b - 1);
        admissible &= !below;
        if admissible == 0 {
            return false;
        }
        next = admissible.trailing_zeros() as usize + 1;
        if next > p.cols {
            return false;
        }
    }
    true
}

/// Size guards for [`extremal_f`].
#[derive(Debug, Clone)]
pub struct ExtremalLimits {
    /// Largest `n` accepted for a `k x k` pattern, indexed by `k - 1`; the last
    /// entry applies to every larger `k`.
    pub max_n: Vec<usize>,
    pub workers: usize,
}

impl Default for ExtremalLimits {
    fn default() -> Self {
        ExtremalLimits {
            max_n: vec![12, 6, 4],
            workers: 1,
        }
    }
}

impl ExtremalLimits {
    pub fn limit_for(&self, k: usize) -> usize {
        let idx = k.saturating_sub(1).min(self.max_n.len() - 1);
        self.max_n[idx]
    }
}

/// Exact value of `f(n, Q)` with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub pattern: BinaryMatrix,
    pub value: usize,
    pub witness: BinaryMatrix,
    #[serde(with = "crate::scalar::ratio_string")]
    pub slope: Ratio<u64>,
    /// Search nodes expanded before the maximum was certified.
    pub nodes: u64,
}

impl ExtremalRecord {
    /// Re-checks the witness independently of the search.
    pub fn witness_is_valid(&self) -> bool {
        self.witness.rows() == self.n
            && self.witness.cols() == self.n
            && self.witness.count_ones() == self.value
            && !matrix_contains(&self.witness, &self.pattern)
    }
}

/// Maximum number of 1-entries in an `n x n` matrix avoiding the permutation
/// matrix `q`.
///
/// Branch-and-bound over cells in row-major order, trying a 1 before a 0. A
/// branch is cut once its 1-count plus the undecided cells cannot beat the
/// incumbent. Among maximum matrices the witness is the one with the
/// lexicographically greatest row-major bit string.
pub fn extremal_f(n: usize, q: &BinaryMatrix, limits: &ExtremalLimits) -> Result<ExtremalRecord> {
    if !q.is_permutation_matrix() {
        return Err(Error::InvalidMatrix(
            "pattern must be a permutation matrix".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidMatrix("n must be at least 1".into()));
    }
    let limit = limits.limit_for(q.rows);
    if n > limit {
        return Err(Error::BudgetExceeded(format!(
            "exact search for a {k}x{k} pattern is limited to n <= {limit}",
            k = q.rows
        )));
    }
    let cells = n * n;
    // fixed prefixes of the first few cells are explored as independent tasks
    let split = cells.min(4);
    let prefixes: Vec<u64> = (0..1u64 << split).rev().collect();
    let shared_best = AtomicUsize::new(0);
    let run = |prefix: &u64| -> Option<(usize, BinaryMatrix, u64)> {
        let mut m = BinaryMatrix::zeros(n, n).expect("n >= 1");
        let mut ones = 0;
        for i in 0..split {
            if prefix >> (split - 1 - i) & 1 == 1 {
                m.set(i / n, i % n, true);
                ones += 1;
            }
        }
        if matrix_contains(&m, q) {
            return None;
        }
        let mut search = Search {
            q,
            n,
            cells,
            matrix: m,
            local_best: None,
            shared_best: &shared_best,
            nodes: 0,
        };
        search.descend(split, ones);
        search.local_best.map(|(v, w)| (v, w, search.nodes))
    };
    let results: Vec<Option<(usize, BinaryMatrix, u64)>> = if limits.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.workers)
            .build()
            .map_err(|e| Error::BudgetExceeded(format!("worker pool: {e}")))?;
        pool.install(|| prefixes.par_iter().map(run).collect())
    } else {
        prefixes.iter().map(run).collect()
    };
    let nodes = results.iter().flatten().map(|r| r.2).sum();
    // prefixes are in descending bit order, so the first maximum wins ties
    let mut best: Option<(usize, BinaryMatrix)> = None;
    for (value, witness, _) in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, witness));
        }
    }
    let (value, witness) = best.expect("the zero matrix always avoids a nonempty pattern");
    Ok(ExtremalRecord {
        n,
        pattern: q.clone(),
        value,
        witness,
        slope: Ratio::new(value as u64, n as u64),
        nodes,
    })
}

struct Search<'a> {
    q: &'a BinaryMatrix,
    n: usize,
    cells: usize,
    matrix: BinaryMatrix,
    local_best: Option<(usize, BinaryMatrix)>,
    shared_best: &'a AtomicUsize,
    nodes: u64,
}

impl Search<'_> {
    fn descend(&mut self, cell: usize, ones: usize) {
        self.nodes += 1;
        let bound = ones + (self.cells - cell);
        if let Some((best, _)) = &self.local_best {
            if bound <= *best {
                return;
            }
        }
        // other tasks may only cut strictly worse branches so ties survive
        if bound < self.shared_best.load(Ordering::Relaxed) {
            return;
        }
        if cell == self.cells {
            self.local_best = Some((ones, self.matrix.clone()));
            self.shared_best.fetch_max(ones, Ordering::Relaxed);
            return;
        }
        let (r, c) = (cell / self.n, cell % self.n);
        self.matrix.set(r, c, true);
        if !matrix_contains(&self.matrix, self.q) {
            self.descend(cell + 1, ones + 1);
        }
        self.matrix.set(r, c, false);
        self.descend(cell + 1, ones);
    }
}

/// Largest slope `f(n, Q) / n` over `1 <= n <= n_max`, a lower witness for any
/// valid linear constant.
pub fn dq_estimate(q: &BinaryMatrix, n_max: usize, limits: &ExtremalLimits) -> Result<Ratio<u64>> {
    let records = extremal_table(q, n_max, limits)?;
    Ok(records
        .iter()
        .map(|r| r.slope)
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0)))
}

/// `f(n, Q)` for `n = 1..=n_max`.
pub fn extremal_table(
    q: &BinaryMatrix,
    n_max: usize,
    limits: &ExtremalLimits,
) -> Result<Vec<ExtremalRecord>> {
    (1..=n_max).map(|n| extremal_f(n, q, limits)).collect()
}
