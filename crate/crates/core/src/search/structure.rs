use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use crate::design::{dev_equality, Block, BlockFamily, DevEquality};
use crate::dfbq::{backup, breakdown, general_construct, general_decompose, Dfbq};

use super::dfbq_enum::{all_dfbqs, MAX_BRUTE_DFBQ_ORDER};
use super::sampling::{binomial, case_rng, random_family};
use super::{pool, SearchError};

/// Outcome of checking every DFBQ of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub order: usize,
    pub total: usize,
    pub passed: usize,
    /// Families tested for development equality, summed over all DFBQs.
    pub families_checked: usize,
    /// The first failing DFBQ (in enumeration order) and what failed.
    pub first_violation: Option<String>,
    pub elapsed: Duration,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total && self.first_violation.is_none()
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} pass", self.passed, self.total)?;
        if let Some(v) = &self.first_violation {
            write!(f, "\nviolation: {v}")?;
        }
        Ok(())
    }
}

/// The fixed development battery: each 2-subset as a one-block family, plus
/// one random family of 2-subsets seeded by `(seed, index)`.
pub fn block_battery(n: usize, seed: u64, index: u64) -> Vec<BlockFamily> {
    let mut out: Vec<BlockFamily> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| BlockFamily::new(n, vec![Block::new(vec![a, b]).expect("pair")]).expect("in range"))
        .collect();
    if n >= 2 {
        let mut rng = case_rng(seed, index);
        let size = rng.random_range(1..=binomial(n, 2));
        out.push(random_family(n, 2, size, &mut rng));
    }
    out
}

/// Runs every structure-theorem check on `d`; returns the number of block
/// families tested, or a description of the first failure.
pub fn check_dfbq(d: &Dfbq, battery: &[BlockFamily]) -> Result<usize, String> {
    let dec = general_decompose(d).map_err(|e| format!("decompose: {e}"))?;
    let rebuilt = general_construct(&dec.group, &dec.alpha, &dec.beta).map_err(|e| format!("construct: {e}"))?;
    if rebuilt != *d {
        return Err("reconstruction differs".into());
    }
    let (nf, phi, alpha) = breakdown(d).map_err(|e| format!("breakdown: {e}"))?;
    let back = backup(&nf, &phi, &alpha).map_err(|e| format!("backup: {e}"))?;
    if back != *d {
        return Err("backup(breakdown(d)) differs from d".into());
    }
    for fam in battery {
        match dev_equality(d, fam).map_err(|e| format!("dev_equality: {e}"))? {
            DevEquality::Equal => {}
            DevEquality::Mismatch(b) => return Err(format!("developments differ at block {{{b}}} for {fam:?}")),
        }
    }
    Ok(battery.len())
}

/// Enumerates every DFBQ of order `n` by brute force and checks that each
/// decomposes over a group with exact reconstruction, survives the
/// breakdown/backup round trip, and develops the block battery exactly as
/// its group does.
pub fn exhaustive_structure_check(n: usize, seed: u64, jobs: usize) -> Result<StructureReport, SearchError> {
    if n == 0 || n > MAX_BRUTE_DFBQ_ORDER {
        return Err(SearchError::OrderTooLarge { order: n, max: MAX_BRUTE_DFBQ_ORDER });
    }
    let start = Instant::now();
    let dfbqs = all_dfbqs(n)?;
    let run = |(i, d): (usize, &Dfbq)| check_dfbq(d, &block_battery(n, seed, i as u64));
    let results: Vec<Result<usize, String>> = if jobs > 1 {
        pool(jobs)?.install(|| dfbqs.par_iter().enumerate().map(run).collect())
    } else {
        dfbqs.iter().enumerate().map(run).collect()
    };

    let passed = results.iter().filter(|r| r.is_ok()).count();
    let families_checked = results.iter().filter_map(|r| r.as_ref().ok()).sum();
    let first_violation = results
        .iter()
        .enumerate()
        .find_map(|(i, r)| r.as_ref().err().map(|e| format!("dfbq #{i} {:?}: {e}", dfbqs[i])));
    Ok(StructureReport {
        order: n,
        total: dfbqs.len(),
        passed,
        families_checked,
        first_violation,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_pass() {
        for (n, total) in [(1, 1), (2, 4), (3, 36)] {
            let r = exhaustive_structure_check(n, 0, 1).unwrap();
            assert_eq!((r.total, r.passed), (total, total));
            assert!(r.all_passed());
            assert_eq!(r.to_string(), format!("{total}/{total} pass"));
        }
    }

    #[test]
    fn battery_shape() {
        let b = block_battery(4, 0, 3);
        assert_eq!(b.len(), 7);
        assert!(b.iter().all(|f| f.uniform_size() == Some(2)));
        assert_eq!(block_battery(1, 0, 0).len(), 0);
        assert_eq!(block_battery(4, 0, 3), block_battery(4, 0, 3));
    }

    #[test]
    fn parallel_report_matches() {
        let a = exhaustive_structure_check(3, 11, 1).unwrap();
        let b = exhaustive_structure_check(3, 11, 3).unwrap();
        assert_eq!((a.total, a.passed, a.families_checked), (b.total, b.passed, b.families_checked));
    }
}
