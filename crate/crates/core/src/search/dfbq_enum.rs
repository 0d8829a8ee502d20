use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use crate::alg::{classify, AlgebraClass, Permutation};
use crate::dfbq::{general_construct, verify_dfbq, Dfbq, GroupPresentation};

use super::latin::latin_squares;
use super::report::{Checksum, EnumerationReport, Mode};
use super::{pool, SearchError};

pub const MAX_BRUTE_DFBQ_ORDER: usize = 4;
pub const MAX_CONSTRUCTIVE_DFBQ_ORDER: usize = 5;

fn check_order(n: usize, mode: Mode) -> Result<(), SearchError> {
    let max = match mode {
        Mode::Brute => MAX_BRUTE_DFBQ_ORDER,
        Mode::Constructive => MAX_CONSTRUCTIVE_DFBQ_ORDER,
    };
    if n == 0 || n > max {
        return Err(SearchError::OrderTooLarge { order: n, max });
    }
    Ok(())
}

/// Every group table on `{0..n-1}` (labelled, any identity), found by
/// filtering Latin squares for an identity and associativity.
pub fn labeled_groups(n: usize) -> Result<Vec<GroupPresentation>, SearchError> {
    Ok(latin_squares(n)?
        .into_iter()
        .filter_map(|t| match classify(&t) {
            AlgebraClass::Group { identity } => Some(GroupPresentation::from_group_unchecked(t, identity)),
            _ => None,
        })
        .collect())
}

pub(crate) fn dfbq_hash_key(d: &Dfbq) -> (&[u8], &[u8]) {
    (d.add_table().as_bytes(), d.sub_table().as_bytes())
}

/// All DFBQs of order `n` via `mode`, each emitted exactly once.
///
/// Brute mode tests every pair of Latin squares against the axioms, in
/// lexicographic order of `(add, sub)`. Constructive mode builds
/// `general_construct(group, alpha, beta)` over all labelled groups, all
/// `alpha` fixing the identity and all `beta`, dropping repeats.
pub fn enumerate_dfbq(n: usize, mode: Mode, mut consumer: impl FnMut(&Dfbq)) -> Result<EnumerationReport, SearchError> {
    check_order(n, mode)?;
    let start = Instant::now();
    let mut count = 0u64;
    let mut generated = 0u64;
    let mut checksum = Checksum::default();
    match mode {
        Mode::Brute => {
            let squares = latin_squares(n)?;
            for add in &squares {
                for sub in &squares {
                    if let Ok(d) = verify_dfbq(add.clone(), sub.clone()) {
                        count += 1;
                        checksum.add(&dfbq_hash_key(&d));
                        consumer(&d);
                    }
                }
            }
            generated = count;
        }
        Mode::Constructive => {
            let betas = Permutation::all(n);
            let mut seen = HashSet::new();
            for g in labeled_groups(n)? {
                for alpha in betas.iter().filter(|p| p.apply(g.identity()) == g.identity()) {
                    for beta in &betas {
                        generated += 1;
                        let d = general_construct(&g, alpha, beta)?;
                        if seen.insert(d.clone()) {
                            count += 1;
                            checksum.add(&dfbq_hash_key(&d));
                            consumer(&d);
                        }
                    }
                }
            }
        }
    }
    Ok(EnumerationReport { order: n, mode, count, generated, checksum, elapsed: start.elapsed() })
}

/// Parallel [`enumerate_dfbq`] on `jobs` threads; emission order is unspecified.
pub fn enumerate_dfbq_par(
    n: usize,
    mode: Mode,
    jobs: usize,
    consumer: impl Fn(&Dfbq) + Sync,
) -> Result<EnumerationReport, SearchError> {
    check_order(n, mode)?;
    let start = Instant::now();
    let pool = pool(jobs)?;
    let (count, generated, checksum) = match mode {
        Mode::Brute => {
            let squares = latin_squares(n)?;
            let (count, checksum) = pool.install(|| {
                squares
                    .par_iter()
                    .map(|add| {
                        let mut count = 0u64;
                        let mut checksum = Checksum::default();
                        for sub in &squares {
                            if let Ok(d) = verify_dfbq(add.clone(), sub.clone()) {
                                count += 1;
                                checksum.add(&dfbq_hash_key(&d));
                                consumer(&d);
                            }
                        }
                        (count, checksum)
                    })
                    .reduce(|| (0, Checksum::default()), |a, b| (a.0 + b.0, a.1.merge(b.1)))
            });
            (count, count, checksum)
        }
        Mode::Constructive => {
            let betas = Permutation::all(n);
            let groups = labeled_groups(n)?;
            let tasks: Vec<(&GroupPresentation, &Permutation)> = groups
                .iter()
                .flat_map(|g| betas.iter().filter(|p| p.apply(g.identity()) == g.identity()).map(move |a| (g, a)))
                .collect();
            let built: Vec<Vec<Dfbq>> = pool.install(|| {
                tasks
                    .par_iter()
                    .map(|&(g, alpha)| betas.iter().map(|beta| general_construct(g, alpha, beta)).collect())
                    .collect::<Result<_, _>>()
            })?;
            let generated = built.iter().map(|v| v.len() as u64).sum();
            let unique: HashSet<Dfbq> = built.into_iter().flatten().collect();
            let checksum = pool.install(|| {
                unique
                    .par_iter()
                    .map(|d| {
                        consumer(d);
                        let mut c = Checksum::default();
                        c.add(&dfbq_hash_key(d));
                        c
                    })
                    .reduce(Checksum::default, Checksum::merge)
            });
            (unique.len() as u64, generated, checksum)
        }
    };
    Ok(EnumerationReport { order: n, mode, count, generated, checksum, elapsed: start.elapsed() })
}

/// All DFBQs of order `n`, in brute-mode (lexicographic) order.
pub fn all_dfbqs(n: usize) -> Result<Vec<Dfbq>, SearchError> {
    let mut out = Vec::new();
    enumerate_dfbq(n, Mode::Brute, |d| out.push(d.clone()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_group_counts() {
        // n! / |Aut(G)| summed over isomorphism types
        assert_eq!(labeled_groups(1).unwrap().len(), 1);
        assert_eq!(labeled_groups(2).unwrap().len(), 2);
        assert_eq!(labeled_groups(3).unwrap().len(), 3);
        assert_eq!(labeled_groups(4).unwrap().len(), 12 + 4);
    }

    #[test]
    fn small_orders_agree() {
        for (n, expected) in [(1, 1), (2, 4), (3, 36)] {
            let brute = enumerate_dfbq(n, Mode::Brute, |_| {}).unwrap();
            let cons = enumerate_dfbq(n, Mode::Constructive, |_| {}).unwrap();
            assert_eq!(brute.count, expected);
            assert_eq!(cons.count, expected);
            assert_eq!(cons.generated, expected);
            assert_eq!(brute.checksum, cons.checksum);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        for mode in [Mode::Brute, Mode::Constructive] {
            let seq = enumerate_dfbq(3, mode, |_| {}).unwrap();
            let par = enumerate_dfbq_par(3, mode, 2, |_| {}).unwrap();
            assert_eq!((seq.count, seq.generated, seq.checksum), (par.count, par.generated, par.checksum));
        }
    }

    #[test]
    fn order_caps() {
        assert!(matches!(enumerate_dfbq(5, Mode::Brute, |_| {}), Err(SearchError::OrderTooLarge { .. })));
        assert!(matches!(enumerate_dfbq(6, Mode::Constructive, |_| {}), Err(SearchError::OrderTooLarge { .. })));
    }
}
