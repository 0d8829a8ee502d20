use std::fmt;

use super::{AlgebraError, MAX_ORDER};

/// A binary operation on `{0..n-1}` given by its multiplication table.
///
/// Row index is the left operand and column index the right operand. The
/// Latin property is computed once at construction, so quasigroup checks
/// on an existing table are free.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<u8>,
    latin: bool,
}

/// Where a table first fails to be a Latin square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatinDefect {
    /// `value` appears more than once in row `row`.
    Row { row: usize, value: usize },
    /// `value` appears more than once in column `column`.
    Column { column: usize, value: usize },
}

impl fmt::Display for LatinDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinDefect::Row { row, value } => write!(f, "row {row} repeats {value}"),
            LatinDefect::Column { column, value } => write!(f, "column {column} repeats {value}"),
        }
    }
}

impl CayleyTable {
    /// Builds a table from `n*n` row-major entries.
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self, AlgebraError> {
        if n == 0 || n > MAX_ORDER {
            return Err(AlgebraError::InvalidTable(format!("order {n} out of range 1..={MAX_ORDER}")));
        }
        if entries.len() != n * n {
            return Err(AlgebraError::InvalidTable(format!("expected {} entries, found {}", n * n, entries.len())));
        }
        if let Some(pos) = entries.iter().position(|&x| x >= n) {
            return Err(AlgebraError::InvalidTable(format!(
                "entry ({}, {}) = {} is not below {n}",
                pos / n,
                pos % n,
                entries[pos]
            )));
        }
        Ok(Self::from_bytes(n, entries.into_iter().map(|x| x as u8).collect()))
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(AlgebraError::InvalidTable(format!("row {i} has {} entries, expected {n}", r.len())));
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, AlgebraError> {
        Self::new(n, (0..n * n).map(|i| f(i / n, i % n)).collect())
    }

    /// Trusted constructor for entries already known to lie below `n`.
    pub(crate) fn from_bytes(n: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        debug_assert!(entries.iter().all(|&x| (x as usize) < n));
        let latin = latin_defect(n, &entries).is_none();
        CayleyTable { n, entries, latin }
    }

    /// Trusted constructor for entries already known to form a Latin square.
    pub(crate) fn latin_unchecked(n: usize, entries: Vec<u8>) -> Self {
        debug_assert!(latin_defect(n, &entries).is_none());
        CayleyTable { n, entries, latin: true }
    }

    /// Tabulates `f` without range checks beyond a debug assertion.
    pub(crate) fn tabulate(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        Self::from_bytes(n, (0..n * n).map(|i| f(i / n, i % n) as u8).collect())
    }

    /// Addition modulo `n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("valid order")
    }

    /// Subtraction modulo `n`.
    pub fn cyclic_subtraction(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + n - b) % n).expect("valid order")
    }

    /// The Klein four-group as bitwise xor on `{0,1,2,3}`.
    pub fn klein_four() -> Self {
        Self::from_fn(4, |a, b| a ^ b).expect("valid order")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.n + b] as usize
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.entries[a * self.n..(a + 1) * self.n].iter().map(|&x| x as usize)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| self.row(a).collect()).collect()
    }

    /// Raw row-major entries, one byte per element.
    pub fn as_bytes(&self) -> &[u8] {
        &self.entries
    }

    /// Every row and every column is a permutation of the symbols.
    #[inline]
    pub fn is_latin(&self) -> bool {
        self.latin
    }

    pub fn latin_defect(&self) -> Option<LatinDefect> {
        latin_defect(self.n, &self.entries)
    }

    /// The unique `o` with `a·o = a` for all `a`, if one exists.
    pub fn right_identity(&self) -> Option<usize> {
        (0..self.n).find(|&o| (0..self.n).all(|a| self.get(a, o) == a))
    }

    pub fn left_identity(&self) -> Option<usize> {
        (0..self.n).find(|&o| (0..self.n).all(|a| self.get(o, a) == a))
    }

    pub fn two_sided_identity(&self) -> Option<usize> {
        self.right_identity().filter(|&e| (0..self.n).all(|a| self.get(e, a) == a))
    }

    /// The lexicographically first `(a, b, c)` with `(ab)c != a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Unique `x` with `a·x = b`. Caller guarantees the table is Latin.
    #[inline]
    pub(crate) fn solve_right(&self, a: usize, b: usize) -> usize {
        let row = &self.entries[a * self.n..(a + 1) * self.n];
        row.iter().position(|&v| v as usize == b).expect("Latin row contains every symbol")
    }

    /// Unique `y` with `y·a = b`. Caller guarantees the table is Latin.
    #[inline]
    pub(crate) fn solve_left(&self, a: usize, b: usize) -> usize {
        (0..self.n).find(|&y| self.get(y, a) == b).expect("Latin column contains every symbol")
    }

    /// Right translation `x -> x·a` as a permutation. Requires a Latin table.
    pub(crate) fn right_translation(&self, a: usize) -> super::Permutation {
        debug_assert!(self.latin);
        super::Permutation::from_images_unchecked((0..self.n).map(|x| self.entries[x * self.n + a]).collect())
    }

    /// Left translation `x -> a·x` as a permutation. Requires a Latin table.
    pub(crate) fn left_translation(&self, a: usize) -> super::Permutation {
        debug_assert!(self.latin);
        super::Permutation::from_images_unchecked(self.entries[a * self.n..(a + 1) * self.n].to_vec())
    }
}

fn latin_defect(n: usize, entries: &[u8]) -> Option<LatinDefect> {
    for row in 0..n {
        let mut seen = 0u128;
        let mut seen_hi = vec![false; if n > 128 { n } else { 0 }];
        for &v in &entries[row * n..(row + 1) * n] {
            if mark(&mut seen, &mut seen_hi, v as usize) {
                return Some(LatinDefect::Row { row, value: v as usize });
            }
        }
    }
    for column in 0..n {
        let mut seen = 0u128;
        let mut seen_hi = vec![false; if n > 128 { n } else { 0 }];
        for row in 0..n {
            let v = entries[row * n + column] as usize;
            if mark(&mut seen, &mut seen_hi, v) {
                return Some(LatinDefect::Column { column, value: v });
            }
        }
    }
    None
}

/// Marks `v` as seen; returns true if it was already marked.
#[inline]
fn mark(bits: &mut u128, wide: &mut [bool], v: usize) -> bool {
    if wide.is_empty() {
        let bit = 1u128 << v;
        let dup = *bits & bit != 0;
        *bits |= bit;
        dup
    } else {
        std::mem::replace(&mut wide[v], true)
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for a in 0..self.n {
            let row: Vec<String> = self.row(a).map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable({}: ", self.n)?;
        for a in 0..self.n {
            if a > 0 {
                f.write_str(" / ")?;
            }
            let row: Vec<String> = self.row(a).map(|x| x.to_string()).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str(")")
    }
}
