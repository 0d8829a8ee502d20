use std::time::Instant;

use rayon::prelude::*;

use crate::alg::{CayleyTable, Permutation};

use super::report::{Checksum, EnumerationReport, Mode};
use super::{pool, SearchError};

/// Largest order accepted by [`enumerate_latin`].
pub const MAX_LATIN_ORDER: usize = 6;

/// Cell-by-cell backtracking over an `n×n` grid with one availability
/// bitmask per row and per column.
struct Backtracker {
    n: usize,
    grid: Vec<u8>,
    row_used: [u32; MAX_LATIN_ORDER],
    col_used: [u32; MAX_LATIN_ORDER],
}

impl Backtracker {
    fn new(n: usize) -> Self {
        Backtracker { n, grid: vec![0; n * n], row_used: [0; MAX_LATIN_ORDER], col_used: [0; MAX_LATIN_ORDER] }
    }

    /// Fixes row 0 to `first_row` and enumerates all completions in
    /// lexicographic order.
    fn run(&mut self, first_row: &[u8], emit: &mut impl FnMut(&[u8])) {
        self.row_used = [0; MAX_LATIN_ORDER];
        self.col_used = [0; MAX_LATIN_ORDER];
        for (c, &v) in first_row.iter().enumerate() {
            self.grid[c] = v;
            self.row_used[0] |= 1 << v;
            self.col_used[c] |= 1 << v;
        }
        self.fill(self.n, emit);
    }

    fn fill(&mut self, pos: usize, emit: &mut impl FnMut(&[u8])) {
        let n = self.n;
        if pos == n * n {
            emit(&self.grid);
            return;
        }
        let (r, c) = (pos / n, pos % n);
        let full = (1u32 << n) - 1;
        let mut free = full & !(self.row_used[r] | self.col_used[c]);
        while free != 0 {
            let v = free.trailing_zeros();
            free &= free - 1;
            let bit = 1 << v;
            self.grid[pos] = v as u8;
            self.row_used[r] |= bit;
            self.col_used[c] |= bit;
            self.fill(pos + 1, emit);
            self.row_used[r] &= !bit;
            self.col_used[c] &= !bit;
        }
    }
}

fn check_order(n: usize) -> Result<(), SearchError> {
    if n == 0 || n > MAX_LATIN_ORDER {
        return Err(SearchError::OrderTooLarge { order: n, max: MAX_LATIN_ORDER });
    }
    Ok(())
}

fn first_rows(n: usize) -> Vec<Vec<u8>> {
    Permutation::all(n).iter().map(|p| p.images().map(|x| x as u8).collect()).collect()
}

/// Emits every Latin square of order `n` exactly once, in lexicographic
/// order of their row-major entries.
pub fn enumerate_latin(n: usize, mut consumer: impl FnMut(&CayleyTable)) -> Result<EnumerationReport, SearchError> {
    check_order(n)?;
    let start = Instant::now();
    let mut count = 0u64;
    let mut checksum = Checksum::default();
    let mut bt = Backtracker::new(n);
    for row in first_rows(n) {
        bt.run(&row, &mut |grid| {
            count += 1;
            checksum.add(grid);
            consumer(&CayleyTable::latin_unchecked(n, grid.to_vec()));
        });
    }
    Ok(EnumerationReport { order: n, mode: Mode::Brute, count, generated: count, checksum, elapsed: start.elapsed() })
}

/// Parallel [`enumerate_latin`]: one task per first row, on `jobs` threads.
/// Emission order is unspecified; count and checksum match the sequential run.
pub fn enumerate_latin_par(
    n: usize,
    jobs: usize,
    consumer: impl Fn(&CayleyTable) + Sync,
) -> Result<EnumerationReport, SearchError> {
    check_order(n)?;
    let start = Instant::now();
    let (count, checksum) = pool(jobs)?.install(|| {
        first_rows(n)
            .par_iter()
            .map(|row| {
                let mut bt = Backtracker::new(n);
                let mut count = 0u64;
                let mut checksum = Checksum::default();
                bt.run(row, &mut |grid| {
                    count += 1;
                    checksum.add(grid);
                    consumer(&CayleyTable::latin_unchecked(n, grid.to_vec()));
                });
                (count, checksum)
            })
            .reduce(|| (0, Checksum::default()), |a, b| (a.0 + b.0, a.1.merge(b.1)))
    });
    Ok(EnumerationReport { order: n, mode: Mode::Brute, count, generated: count, checksum, elapsed: start.elapsed() })
}

/// All Latin squares of order `n`, in lexicographic order.
pub fn latin_squares(n: usize) -> Result<Vec<CayleyTable>, SearchError> {
    let mut out = Vec::new();
    enumerate_latin(n, |t| out.push(t.clone()))?;
    Ok(out)
}
