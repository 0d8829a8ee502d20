//! Seeded random inputs for the randomized test batteries.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alg::Permutation;
use crate::design::{Block, BlockFamily};
use crate::dfbq::{general_construct, Dfbq, GroupPresentation};

/// A deterministic generator for case `index` of a battery seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle of 0..n")
}

/// A uniformly random permutation fixing `point`.
pub fn random_permutation_fixing(n: usize, point: usize, rng: &mut impl Rng) -> Permutation {
    let mut rest: Vec<usize> = (0..n).filter(|&x| x != point).collect();
    rest.shuffle(rng);
    let mut images = Vec::with_capacity(n);
    let mut it = rest.into_iter();
    for x in 0..n {
        images.push(if x == point { point } else { it.next().expect("n - 1 images") });
    }
    Permutation::new(images).expect("bijection")
}

/// `general_construct` on a random group from `groups` with random `alpha`, `beta`.
pub fn random_dfbq(groups: &[GroupPresentation], rng: &mut impl Rng) -> Dfbq {
    let g = &groups[rng.random_range(0..groups.len())];
    let alpha = random_permutation_fixing(g.order(), g.identity(), rng);
    let beta = random_permutation(g.order(), rng);
    general_construct(g, &alpha, &beta).expect("alpha fixes the identity")
}

/// `count` distinct random `k`-subsets of `{0..n-1}` (fewer if not that many exist).
pub fn random_family(n: usize, k: usize, count: usize, rng: &mut impl Rng) -> BlockFamily {
    assert!(k >= 1 && k <= n);
    let available = binomial(n, k);
    let target = count.min(available);
    let mut chosen: BTreeSet<Block> = BTreeSet::new();
    let mut order = Vec::new();
    while chosen.len() < target {
        let block = Block::new(index::sample(rng, n, k).into_vec()).expect("distinct sample");
        if chosen.insert(block.clone()) {
            order.push(block);
        }
    }
    BlockFamily::new(n, order).expect("distinct in-range blocks")
}

/// Case `index` of a seeded battery: a random DFBQ built from `groups` and a
/// random family of 1 to 3 blocks of a random size `k >= 2`.
pub fn random_case(groups: &[GroupPresentation], seed: u64, index: u64) -> (Dfbq, BlockFamily) {
    let mut rng = case_rng(seed, index);
    let d = random_dfbq(groups, &mut rng);
    let n = d.order();
    let k = if n >= 2 { rng.random_range(2..=n) } else { 1 };
    let count = rng.random_range(1..=3);
    (d, random_family(n, k, count, &mut rng))
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
