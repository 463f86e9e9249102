//! Sparse column reduction over prime fields.
//!
//! Columns are reduced in the persistence style: repeatedly cancel the lowest
//! entry (largest row index) against a stored column with the same low, until
//! the column is empty or claims a fresh low. The number of stored columns is
//! the rank of everything pushed so far, and pushing extra columns after a
//! boundary matrix measures rank growth, which is how induced-map ranks are
//! computed.
//!
//! Over Z/2 columns are bit sets against a dense reusable buffer; odd primes
//! (up to 251, byte coefficients) use the same algorithm with dense modular
//! arithmetic.

use crate::error::{usage, Result};

/// A prime coefficient field. Z/2 is the default everywhere.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Field(u32);

impl Field {
    pub const GF2: Field = Field(2);

    pub fn new(p: u32) -> Result<Field> {
        if p == 2 {
            return Ok(Field(2));
        }
        let prime = p > 2 && p % 2 == 1 && (3..p).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime || p > 251 {
            return Err(usage(format!(
                "field modulus {p} must be 2 or an odd prime at most 251"
            )));
        }
        Ok(Field(p))
    }

    pub fn modulus(&self) -> u32 {
        self.0
    }

    pub fn is_gf2(&self) -> bool {
        self.0 == 2
    }

    pub fn reduce_signed(&self, c: i64) -> u32 {
        c.rem_euclid(self.0 as i64) as u32
    }

    pub fn inv(&self, a: u32) -> u32 {
        // Fermat; the modulus is tiny.
        debug_assert!(a % self.0 != 0);
        let mut result = 1u64;
        let mut base = (a % self.0) as u64;
        let mut e = self.0 - 2;
        let p = self.0 as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result as u32
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z/{}", self.0)
    }
}

/// Incremental rank accumulator over Z/2.
struct Gf2Reducer {
    nrows: usize,
    words: Vec<u64>,
    touched: Vec<u32>,
    touched_mark: Vec<bool>,
    low_to_col: Vec<u32>, // stored column id + 1; 0 = free
    cols: Vec<Vec<u32>>,
    pivots: Vec<u32>,
}

impl Gf2Reducer {
    fn new(nrows: usize) -> Self {
        let nwords = nrows.div_ceil(64);
        Gf2Reducer {
            nrows,
            words: vec![0; nwords],
            touched: Vec::new(),
            touched_mark: vec![false; nwords],
            low_to_col: vec![0; nrows],
            cols: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn toggle(&mut self, row: u32) {
        let w = (row / 64) as usize;
        self.words[w] ^= 1u64 << (row % 64);
        if !self.touched_mark[w] {
            self.touched_mark[w] = true;
            self.touched.push(w as u32);
        }
    }

    /// Highest set bit at or below `bound`, if any.
    fn find_low(&self, bound: u32) -> Option<u32> {
        let mut w = (bound / 64) as usize;
        let mut mask = if bound % 64 == 63 { u64::MAX } else { (1u64 << (bound % 64 + 1)) - 1 };
        loop {
            let word = self.words[w] & mask;
            if word != 0 {
                return Some(w as u32 * 64 + 63 - word.leading_zeros());
            }
            if w == 0 {
                return None;
            }
            w -= 1;
            mask = u64::MAX;
        }
    }

    fn clear_work(&mut self) {
        for &w in &self.touched {
            self.words[w as usize] = 0;
            self.touched_mark[w as usize] = false;
        }
        self.touched.clear();
    }

    fn push(&mut self, rows: impl Iterator<Item = u32>) -> bool {
        let mut bound = 0u32;
        let mut any = false;
        for row in rows {
            debug_assert!((row as usize) < self.nrows);
            self.toggle(row);
            bound = bound.max(row);
            any = true;
        }
        if !any {
            return false;
        }
        loop {
            let Some(low) = self.find_low(bound) else {
                self.clear_work();
                return false;
            };
            let slot = self.low_to_col[low as usize];
            if slot == 0 {
                // Fresh pivot: freeze the reduced column.
                let mut stored = Vec::new();
                self.touched.sort_unstable();
                for &w in &self.touched {
                    let mut word = self.words[w as usize];
                    while word != 0 {
                        let b = word.trailing_zeros();
                        stored.push(w * 64 + b);
                        word &= word - 1;
                    }
                }
                self.clear_work();
                self.low_to_col[low as usize] = self.cols.len() as u32 + 1;
                self.cols.push(stored);
                self.pivots.push(low);
                return true;
            }
            let col = std::mem::take(&mut self.cols[(slot - 1) as usize]);
            for &row in &col {
                self.toggle(row);
            }
            self.cols[(slot - 1) as usize] = col;
            bound = low.saturating_sub(1);
        }
    }
}

/// Incremental rank accumulator over an odd prime field.
struct FpReducer {
    field: Field,
    nrows: usize,
    work: Vec<u32>,
    touched: Vec<u32>,
    touched_mark: Vec<bool>,
    low_to_col: Vec<u32>,
    cols: Vec<Vec<(u32, u32)>>, // normalized: coefficient at the low is 1
    pivots: Vec<u32>,
    heap: std::collections::BinaryHeap<u32>,
}

impl FpReducer {
    fn new(field: Field, nrows: usize) -> Self {
        FpReducer {
            field,
            nrows,
            work: vec![0; nrows],
            touched: Vec::new(),
            touched_mark: vec![false; nrows],
            low_to_col: vec![0; nrows],
            cols: Vec::new(),
            pivots: Vec::new(),
            heap: std::collections::BinaryHeap::new(),
        }
    }

    fn add(&mut self, row: u32, coeff: u32) {
        let r = row as usize;
        self.work[r] = (self.work[r] + coeff) % self.field.modulus();
        if !self.touched_mark[r] {
            self.touched_mark[r] = true;
            self.touched.push(row);
        }
        self.heap.push(row);
    }

    fn clear_work(&mut self) {
        for &row in &self.touched {
            self.work[row as usize] = 0;
            self.touched_mark[row as usize] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }

    fn push(&mut self, entries: &[(u32, u32)]) -> bool {
        let p = self.field.modulus();
        for &(row, coeff) in entries {
            debug_assert!((row as usize) < self.nrows);
            if coeff % p != 0 {
                self.add(row, coeff % p);
            }
        }
        loop {
            // Lazy-deletion max-heap: pop until a genuinely nonzero row.
            let low = loop {
                match self.heap.pop() {
                    None => {
                        self.clear_work();
                        return false;
                    }
                    Some(row) if self.work[row as usize] != 0 => break row,
                    Some(_) => {}
                }
            };
            let slot = self.low_to_col[low as usize];
            if slot == 0 {
                let inv = self.field.inv(self.work[low as usize]) as u64;
                self.touched.sort_unstable();
                let stored: Vec<(u32, u32)> = self
                    .touched
                    .iter()
                    .filter(|&&row| self.work[row as usize] != 0)
                    .map(|&row| (row, (self.work[row as usize] as u64 * inv % p as u64) as u32))
                    .collect();
                self.clear_work();
                self.low_to_col[low as usize] = self.cols.len() as u32 + 1;
                self.cols.push(stored);
                self.pivots.push(low);
                return true;
            }
            let factor = self.work[low as usize];
            let col = std::mem::take(&mut self.cols[(slot - 1) as usize]);
            let neg = p - factor;
            for &(row, coeff) in &col {
                self.add(row, (neg as u64 * coeff as u64 % p as u64) as u32);
            }
            self.cols[(slot - 1) as usize] = col;
            debug_assert_eq!(self.work[low as usize], 0);
        }
    }
}

/// Rank accumulator over any supported field. Push columns one at a time;
/// `rank()` is the rank of everything pushed so far.
pub struct Reducer(ReducerImpl);

enum ReducerImpl {
    Gf2(Gf2Reducer),
    Fp(FpReducer),
}

impl Reducer {
    pub fn new(field: Field, nrows: usize) -> Reducer {
        if field.is_gf2() {
            Reducer(ReducerImpl::Gf2(Gf2Reducer::new(nrows)))
        } else {
            Reducer(ReducerImpl::Fp(FpReducer::new(field, nrows)))
        }
    }

    /// Reduce one column (entries as signed coefficients) against everything
    /// stored; returns whether it contributed a new pivot.
    pub fn push(&mut self, field: Field, entries: &[(u32, i64)]) -> bool {
        match &mut self.0 {
            ReducerImpl::Gf2(g) => {
                g.push(entries.iter().filter(|(_, c)| c.rem_euclid(2) == 1).map(|&(r, _)| r))
            }
            ReducerImpl::Fp(f) => {
                let scaled: Vec<(u32, u32)> =
                    entries.iter().map(|&(r, c)| (r, field.reduce_signed(c))).collect();
                f.push(&scaled)
            }
        }
    }

    pub fn rank(&self) -> usize {
        match &self.0 {
            ReducerImpl::Gf2(g) => g.cols.len(),
            ReducerImpl::Fp(f) => f.cols.len(),
        }
    }

    /// Row indices holding pivots, in the order they were claimed.
    pub fn pivot_rows(&self) -> &[u32] {
        match &self.0 {
            ReducerImpl::Gf2(g) => &g.pivots,
            ReducerImpl::Fp(f) => &f.pivots,
        }
    }
}

/// Reduce the given columns and return, for every column whose reduction hits
/// zero, the combination of input columns that witnesses it (a kernel basis of
/// the column span, in input-column index space).
pub fn kernel_basis(
    field: Field,
    nrows: usize,
    columns: &[Vec<(u32, i64)>],
) -> Vec<Vec<(u32, u32)>> {
    let p = field.modulus() as u64;
    let ncols = columns.len();
    let mut r_work = vec![0u32; nrows];
    let mut v_work = vec![0u32; ncols];
    let mut r_touched: Vec<u32> = Vec::new();
    let mut v_touched: Vec<u32> = Vec::new();
    let mut low_to_col = vec![u32::MAX; nrows];
    let mut r_cols: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut v_cols: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut kernel: Vec<Vec<(u32, u32)>> = Vec::new();

    for (j, column) in columns.iter().enumerate() {
        for &(row, c) in column {
            let c = field.reduce_signed(c);
            if c != 0 {
                if r_work[row as usize] == 0 {
                    r_touched.push(row);
                }
                r_work[row as usize] = ((r_work[row as usize] as u64 + c as u64) % p) as u32;
            }
        }
        v_work[j] = 1;
        v_touched.push(j as u32);

        loop {
            let low = r_touched
                .iter()
                .copied()
                .filter(|&row| r_work[row as usize] != 0)
                .max();
            match low {
                None => {
                    // Zero column: v_work is a kernel vector.
                    v_touched.sort_unstable();
                    v_touched.dedup();
                    let vec: Vec<(u32, u32)> = v_touched
                        .iter()
                        .filter(|&&c| v_work[c as usize] != 0)
                        .map(|&c| (c, v_work[c as usize]))
                        .collect();
                    kernel.push(vec);
                    break;
                }
                Some(low) => {
                    let slot = low_to_col[low as usize];
                    if slot == u32::MAX {
                        // Store normalized (r, v) pair.
                        let inv = field.inv(r_work[low as usize]) as u64;
                        r_touched.sort_unstable();
                        r_touched.dedup();
                        let r_col: Vec<(u32, u32)> = r_touched
                            .iter()
                            .filter(|&&row| r_work[row as usize] != 0)
                            .map(|&row| (row, (r_work[row as usize] as u64 * inv % p) as u32))
                            .collect();
                        v_touched.sort_unstable();
                        v_touched.dedup();
                        let v_col: Vec<(u32, u32)> = v_touched
                            .iter()
                            .filter(|&&c| v_work[c as usize] != 0)
                            .map(|&c| (c, (v_work[c as usize] as u64 * inv % p) as u32))
                            .collect();
                        low_to_col[low as usize] = r_cols.len() as u32;
                        r_cols.push(r_col);
                        v_cols.push(v_col);
                        break;
                    }
                    let factor = r_work[low as usize] as u64;
                    let neg = p - factor;
                    for &(row, c) in &r_cols[slot as usize] {
                        if r_work[row as usize] == 0 {
                            r_touched.push(row);
                        }
                        r_work[row as usize] =
                            ((r_work[row as usize] as u64 + neg * c as u64) % p) as u32;
                    }
                    for &(c_idx, c) in &v_cols[slot as usize] {
                        if v_work[c_idx as usize] == 0 {
                            v_touched.push(c_idx);
                        }
                        v_work[c_idx as usize] =
                            ((v_work[c_idx as usize] as u64 + neg * c as u64) % p) as u32;
                    }
                }
            }
        }
        for &row in &r_touched {
            r_work[row as usize] = 0;
        }
        for &c in &v_touched {
            v_work[c as usize] = 0;
        }
        r_touched.clear();
        v_touched.clear();
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_of(field: Field, nrows: usize, cols: &[Vec<(u32, i64)>]) -> usize {
        let mut red = Reducer::new(field, nrows);
        for c in cols {
            red.push(field, c);
        }
        red.rank()
    }

    /// Dense Gaussian elimination oracle over F_p.
    fn dense_rank(p: u32, nrows: usize, cols: &[Vec<(u32, i64)>]) -> usize {
        let mut m: Vec<Vec<u32>> = cols
            .iter()
            .map(|c| {
                let mut row = vec![0u32; nrows];
                for &(r, coeff) in c {
                    row[r as usize] =
                        ((row[r as usize] as i64 + coeff).rem_euclid(p as i64)) as u32;
                }
                row
            })
            .collect();
        let mut rank = 0;
        for r in 0..nrows {
            if let Some(piv) = (rank..m.len()).find(|&i| m[i][r] != 0) {
                m.swap(rank, piv);
                let inv = Field::new(p).unwrap().inv(m[rank][r]) as u64;
                for x in m[rank].iter_mut() {
                    *x = (*x as u64 * inv % p as u64) as u32;
                }
                let pivot_row = m[rank].clone();
                for (i, row) in m.iter_mut().enumerate() {
                    if i != rank && row[r] != 0 {
                        let f = (p - row[r]) as u64;
                        for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                            *x = ((*x as u64 + f * pv as u64) % p as u64) as u32;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn cycle_graph_rank() {
        // Boundary of a 4-cycle: rank 3 (spanning tree).
        let cols: Vec<Vec<(u32, i64)>> = vec![
            vec![(0, -1), (1, 1)],
            vec![(1, -1), (2, 1)],
            vec![(2, -1), (3, 1)],
            vec![(3, -1), (0, 1)],
        ];
        for p in [2u32, 3, 251] {
            let f = Field::new(p).unwrap();
            assert_eq!(rank_of(f, 4, &cols), 3);
        }
    }

    #[test]
    fn random_matrices_match_dense_oracle() {
        // Deterministic LCG; no need for a real RNG here.
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for p in [2u32, 3, 7] {
            let f = Field::new(p).unwrap();
            for _ in 0..20 {
                let nrows = 1 + (next() % 12) as usize;
                let ncols = 1 + (next() % 12) as usize;
                let cols: Vec<Vec<(u32, i64)>> = (0..ncols)
                    .map(|_| {
                        (0..nrows)
                            .filter_map(|r| {
                                let c = (next() % (p as u64 + 2)) as i64 - 1;
                                (c != 0).then_some((r as u32, c))
                            })
                            .collect()
                    })
                    .collect();
                assert_eq!(rank_of(f, nrows, &cols), dense_rank(p, nrows, &cols));
            }
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for p in [2u32, 5] {
            let f = Field::new(p).unwrap();
            for _ in 0..10 {
                let nrows = 1 + (next() % 10) as usize;
                let ncols = 1 + (next() % 10) as usize;
                let cols: Vec<Vec<(u32, i64)>> = (0..ncols)
                    .map(|_| {
                        (0..nrows)
                            .filter_map(|r| {
                                let c = (next() % (p as u64 + 1)) as i64;
                                (c != 0).then_some((r as u32, c))
                            })
                            .collect()
                    })
                    .collect();
                let kernel = kernel_basis(f, nrows, &cols);
                assert_eq!(kernel.len(), ncols - rank_of(f, nrows, &cols));
                for combo in &kernel {
                    let mut acc = vec![0u64; nrows];
                    for &(cidx, coeff) in combo {
                        for &(r, c) in &cols[cidx as usize] {
                            acc[r as usize] += coeff as u64 * f.reduce_signed(c) as u64;
                        }
                    }
                    assert!(acc.iter().all(|&x| x % p as u64 == 0), "kernel vector fails");
                }
            }
        }
    }

    #[test]
    fn field_validation() {
        assert!(Field::new(2).is_ok());
        assert!(Field::new(3).is_ok());
        assert!(Field::new(251).is_ok());
        assert!(Field::new(4).is_err());
        assert!(Field::new(9).is_err());
        assert!(Field::new(257).is_err());
        assert!(Field::new(0).is_err());
        assert!(Field::new(1).is_err());
    }
}
