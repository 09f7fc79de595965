use std::fmt;

use super::{Fp, PrimeField};
use crate::par;

/// Whether elimination may spread row updates across the rayon pool. Without
/// the `parallel` feature both variants run sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    Sequential,
    #[default]
    Parallel,
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.field.modulus())?;
        for row in self.data.chunks(self.cols.max(1)).take(self.rows) {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from rows of integers, reducing each entry mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = field.from_i64(x).0;
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fp {
        assert!(i < self.rows && j < self.cols);
        Fp(self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fp) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = x.0;
    }

    /// Mutable raw access to all entries, row-major. Entries must stay `< p`.
    pub(crate) fn raw_rows_mut(&mut self) -> &mut [u32] {
        &mut self.data
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        Self {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (top, bottom) = self.data.split_at_mut(hi * self.cols);
        top[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut bottom[..self.cols]);
    }

    pub fn scale_row(&mut self, i: usize, c: Fp) {
        let f = self.field;
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = f.mul(Fp(*x), c).0;
        }
    }

    /// Rank over `F_p`, consuming the matrix. Uses the blocked kernel and the
    /// rayon pool when available.
    pub fn rank(self) -> usize {
        self.rank_with(Schedule::Parallel)
    }

    pub fn rank_with(mut self, schedule: Schedule) -> usize {
        let parallel = schedule == Schedule::Parallel && par::ENABLED;
        let (rows, cols) = (self.rows, self.cols);
        if self.field.is_mersenne31() {
            blocked_rank(&mut self.data, rows, cols, self.field, Mersenne31, parallel)
        } else {
            let red = Barrett(self.field);
            blocked_rank(&mut self.data, rows, cols, self.field, red, parallel)
        }
    }

    /// Textbook forward elimination, one pivot at a time. Kept as a reference
    /// for the blocked kernel.
    pub fn rank_unblocked(mut self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let f = self.field;
        let p = u64::from(f.modulus());
        let a = &mut self.data;
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if pr != rank {
                for j in c..cols {
                    a.swap(pr * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(Fp(a[rank * cols + c])).expect("nonzero pivot");
            for j in c..cols {
                a[rank * cols + j] = f.mul(Fp(a[rank * cols + j]), inv).0;
            }
            let (top, below) = a.split_at_mut((rank + 1) * cols);
            let pivot = &top[rank * cols..];
            for row in below.chunks_mut(cols) {
                let m = row[c];
                if m == 0 {
                    continue;
                }
                let m = p - u64::from(m);
                for j in c..cols {
                    row[j] = f.reduce(u64::from(row[j]) + m * u64::from(pivot[j]));
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Reduction of `x < 2^64` into `[0, p)`.
trait Reducer: Copy + Send + Sync {
    fn reduce(self, x: u64) -> u32;
}

#[derive(Clone, Copy)]
struct Mersenne31;

impl Reducer for Mersenne31 {
    #[inline(always)]
    fn reduce(self, x: u64) -> u32 {
        const P: u64 = (1 << 31) - 1;
        let r = (x & P) + (x >> 31);
        let r = (r & P) + (r >> 31);
        (if r >= P { r - P } else { r }) as u32
    }
}

#[derive(Clone, Copy)]
struct Barrett(PrimeField);

impl Reducer for Barrett {
    #[inline(always)]
    fn reduce(self, x: u64) -> u32 {
        self.0.reduce(x)
    }
}

/// Columns eliminated per panel before the deferred trailing update.
const PANEL_WIDTH: usize = 48;

/// Rows handed to one rayon task during the trailing update.
const MIN_ROWS_PER_TASK: usize = 8;

/// Blocked right-looking elimination returning the rank.
///
/// Columns are processed in panels. Inside a panel the usual first-nonzero
/// pivoting runs on the panel columns only; each eliminated row keeps its
/// multiplier in the (now logically zero) pivot column. The rest of every row
/// is then updated once per panel with all of the panel's pivots, adding up
/// to three products before each reduction.
fn blocked_rank<R: Reducer>(
    a: &mut [u32],
    rows: usize,
    cols: usize,
    field: PrimeField,
    red: R,
    parallel: bool,
) -> usize {
    let p = u64::from(field.modulus());
    let mut rank = 0;
    let mut c0 = 0;
    let mut pivot_cols: Vec<usize> = Vec::with_capacity(PANEL_WIDTH);
    let mut scales: Vec<u32> = Vec::with_capacity(PANEL_WIDTH);
    let mut u: Vec<u32> = Vec::new();

    while c0 < cols && rank < rows {
        let c1 = (c0 + PANEL_WIDTH).min(cols);
        let first = rank;
        pivot_cols.clear();
        scales.clear();

        for c in c0..c1 {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if pr != rank {
                let (top, bottom) = a.split_at_mut(pr * cols);
                top[rank * cols..(rank + 1) * cols].swap_with_slice(&mut bottom[..cols]);
            }
            let inv = field.inv(Fp(a[rank * cols + c])).expect("nonzero pivot").0;
            {
                let prow = &mut a[rank * cols + c..rank * cols + c1];
                for x in prow.iter_mut() {
                    *x = red.reduce(u64::from(*x) * u64::from(inv));
                }
            }
            let (top, below) = a.split_at_mut((rank + 1) * cols);
            let prow = &top[rank * cols + c + 1..rank * cols + c1];
            for row in below.chunks_mut(cols) {
                let m = row[c];
                if m == 0 {
                    continue;
                }
                let m = p - u64::from(m);
                for (x, &y) in row[c + 1..c1].iter_mut().zip(prow) {
                    *x = red.reduce(u64::from(*x) + m * u64::from(y));
                }
            }
            pivot_cols.push(c);
            scales.push(inv);
            rank += 1;
        }

        let b = pivot_cols.len();
        let width = cols - c1;
        if b > 0 && width > 0 {
            // Trailing parts of the panel's pivot rows, fully reduced and
            // normalised, packed contiguously.
            u.clear();
            u.resize(b * width, 0);
            for t in 0..b {
                let row = first + t;
                let (done, cur) = u.split_at_mut(t * width);
                let cur = &mut cur[..width];
                cur.copy_from_slice(&a[row * cols + c1..(row + 1) * cols]);
                let mults: Vec<u32> = pivot_cols[..t].iter().map(|&pc| a[row * cols + pc]).collect();
                apply_updates(cur, &mults, done, width, p, red);
                let s = u64::from(scales[t]);
                for x in cur.iter_mut() {
                    *x = red.reduce(u64::from(*x) * s);
                }
            }

            let below = &mut a[rank * cols..rows * cols];
            let pivot_cols = &pivot_cols;
            let u = &u;
            let update = |chunk: &mut [u32]| {
                let mut mults = Vec::with_capacity(b);
                for row in chunk.chunks_mut(cols) {
                    mults.clear();
                    mults.extend(pivot_cols.iter().map(|&pc| row[pc]));
                    if mults.iter().all(|&m| m == 0) {
                        continue;
                    }
                    apply_updates(&mut row[c1..], &mults, u, width, p, red);
                }
            };
            let remaining = rows - rank;
            let work = remaining * width * b;
            if parallel && work > (1 << 16) {
                let per_task = remaining
                    .div_ceil(par::current_num_threads() * 4)
                    .max(MIN_ROWS_PER_TASK);
                par::for_each_chunk_mut(below, per_task * cols, |_, chunk| update(chunk));
            } else {
                update(below);
            }
        }
        c0 = c1;
    }
    rank
}

/// `row -= sum_t mults[t] * u[t]` where `u[t]` is the `t`-th row of width
/// `width`. Products are grouped in threes before reduction.
#[inline]
fn apply_updates<R: Reducer>(row: &mut [u32], mults: &[u32], u: &[u32], width: usize, p: u64, red: R) {
    let neg = |m: u32| if m == 0 { 0 } else { p - u64::from(m) };
    let mut terms = mults
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 0)
        .map(|(t, &m)| (neg(m), &u[t * width..(t + 1) * width]));
    loop {
        match (terms.next(), terms.next(), terms.next()) {
            (Some((m0, u0)), Some((m1, u1)), Some((m2, u2))) => {
                for (((x, &y0), &y1), &y2) in row.iter_mut().zip(u0).zip(u1).zip(u2) {
                    let acc = u64::from(*x) + m0 * u64::from(y0) + m1 * u64::from(y1) + m2 * u64::from(y2);
                    *x = red.reduce(acc);
                }
            }
            (Some((m0, u0)), Some((m1, u1)), None) => {
                for ((x, &y0), &y1) in row.iter_mut().zip(u0).zip(u1) {
                    let acc = u64::from(*x) + m0 * u64::from(y0) + m1 * u64::from(y1);
                    *x = red.reduce(acc);
                }
                break;
            }
            (Some((m0, u0)), None, _) => {
                for (x, &y0) in row.iter_mut().zip(u0) {
                    *x = red.reduce(u64::from(*x) + m0 * u64::from(y0));
                }
                break;
            }
            _ => break,
        }
    }
}
