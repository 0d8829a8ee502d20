//! Shared fixtures for the criterion benches.

use qdf_core::dfbq::{general_construct, Dfbq, GroupPresentation};
use qdf_core::{BlockFamily, CayleyTable, Permutation};

/// `general_construct` over `Z_n` with `alpha = x -> -x` and `beta = x -> x + 1`.
pub fn twisted_cyclic(n: usize) -> Dfbq {
    let g = GroupPresentation::new(CayleyTable::cyclic(n)).expect("cyclic group");
    let alpha = Permutation::from_fn(n, |x| (n - x) % n).expect("negation");
    let beta = Permutation::from_fn(n, |x| (x + 1) % n).expect("shift");
    general_construct(&g, &alpha, &beta).expect("alpha fixes 0")
}

/// The quadratic-residue difference set of order 13.
pub fn planar_13() -> BlockFamily {
    BlockFamily::from_sets(13, &[&[0, 1, 3, 9]]).expect("in range")
}
