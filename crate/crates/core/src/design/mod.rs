//! Base blocks, their developments, and 2-design certificates.

mod develop;
mod generalized;

pub use develop::{delta, dev_equality, develop, is_2design, verify_qdf, DevEquality};
pub use generalized::{generalized_develop, GeneralizedDevelopment};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::alg::AlgebraError;
use crate::dfbq::DfbqError;

/// A nonempty set of carrier elements, stored strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<u8>);

impl Block {
    /// Sorts `elements`; rejects empty input, duplicates and elements past the byte range.
    pub fn new(mut elements: Vec<usize>) -> Result<Self, DesignError> {
        if elements.is_empty() {
            return Err(DesignError::InvalidBlock("empty block".into()));
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::InvalidBlock(format!("element {} repeated", w[0])));
        }
        if let Some(&x) = elements.last().filter(|&&x| x >= crate::alg::MAX_ORDER) {
            return Err(DesignError::InvalidBlock(format!("element {x} too large")));
        }
        Ok(Block(elements.into_iter().map(|x| x as u8).collect()))
    }

    /// The image of `elements` under an injective map; used for translates.
    pub(crate) fn from_image(elements: impl Iterator<Item = usize>) -> Self {
        let mut v: Vec<u8> = elements.map(|x| x as u8).collect();
        v.sort_unstable();
        v.dedup();
        Block(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn contains(&self, x: usize) -> bool {
        x < 256 && self.0.binary_search(&(x as u8)).is_ok()
    }

    pub fn largest(&self) -> usize {
        *self.0.last().expect("blocks are nonempty") as usize
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Pairwise distinct base blocks over `{0..order-1}`.
///
/// Equal block sizes are not enforced here; [`verify_qdf`] and
/// [`generalized_develop`] report unequal sizes as a violation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockFamily {
    order: usize,
    blocks: Vec<Block>,
}

impl BlockFamily {
    pub fn new(order: usize, blocks: Vec<Block>) -> Result<Self, DesignError> {
        for (i, b) in blocks.iter().enumerate() {
            if b.largest() >= order {
                return Err(DesignError::InvalidBlock(format!("block {i} ({b}) has an element not below {order}")));
            }
            if let Some(j) = blocks[..i].iter().position(|c| c == b) {
                return Err(DesignError::InvalidBlock(format!("blocks {j} and {i} are equal")));
            }
        }
        Ok(BlockFamily { order, blocks })
    }

    pub fn from_sets(order: usize, sets: &[&[usize]]) -> Result<Self, DesignError> {
        let blocks = sets.iter().map(|s| Block::new(s.to_vec())).collect::<Result<_, _>>()?;
        Self::new(order, blocks)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The common block size, if all blocks agree.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == k).then_some(k)
    }
}

/// A point count with a deduplicated, sorted block set and the multiplicity
/// with which each block arose.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Design {
    points: usize,
    blocks: BTreeMap<Block, usize>,
}

impl Design {
    pub fn new(points: usize) -> Self {
        Design { points, blocks: BTreeMap::new() }
    }

    pub(crate) fn insert(&mut self, block: Block) {
        *self.blocks.entry(block).or_insert(0) += 1;
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Distinct blocks in lexicographic order.
    pub fn blocks(&self) -> impl Iterator<Item = &Block> + '_ {
        self.blocks.keys()
    }

    pub fn block_vec(&self) -> Vec<Block> {
        self.blocks.keys().cloned().collect()
    }

    pub fn with_multiplicities(&self) -> impl Iterator<Item = (&Block, usize)> + '_ {
        self.blocks.iter().map(|(b, &m)| (b, m))
    }

    pub fn multiplicity(&self, block: &Block) -> usize {
        self.blocks.get(block).copied().unwrap_or(0)
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Same block set, ignoring multiplicities.
    pub fn same_blocks(&self, other: &Design) -> bool {
        self.points == other.points && self.blocks.keys().eq(other.blocks.keys())
    }
}

/// Per-difference counts of ordered in-block pairs, all equal to `lambda`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferenceCertificate {
    pub k: usize,
    pub lambda: usize,
    pub per_difference: BTreeMap<usize, usize>,
}

/// One failed hypothesis, with its first witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DesignViolation {
    /// Blocks `first` and `other` (indices) differ in size.
    UnequalBlockSizes {
        first: usize,
        other: usize,
    },
    /// Blocks of size below 2 have no in-block differences.
    BlockTooSmall {
        k: usize,
    },
    NonConstantLambda {
        d1: usize,
        count1: usize,
        d2: usize,
        count2: usize,
    },
    /// Translate of block `block` by `by` equals the translate of `other` by `other_by`.
    TranslateCollision {
        block: usize,
        by: usize,
        other: usize,
        other_by: usize,
    },
    NonConstantPairCount {
        pair1: (usize, usize),
        count1: usize,
        pair2: (usize, usize),
        count2: usize,
    },
    /// `count` translations map `a` to `b` (exactly one is required).
    NotSharplyTransitive {
        a: usize,
        b: usize,
        count: usize,
    },
    /// `a - x = b` has `count` solutions (exactly one is required).
    DifferenceNotSolvable {
        a: usize,
        b: usize,
        count: usize,
    },
    /// `t(a) - t(b) != a - b` for translation index `t`.
    NotInvariant {
        t: usize,
        a: usize,
        b: usize,
    },
    /// `|t(B)|` differs from the size of the first base block.
    TranslateSizeMismatch {
        t: usize,
        block: usize,
    },
    NoIdentityTranslation,
}

impl fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DesignViolation::*;
        match self {
            UnequalBlockSizes { first, other } => write!(f, "blocks {first} and {other} differ in size"),
            BlockTooSmall { k } => write!(f, "block size {k} is below 2"),
            NonConstantLambda { d1, count1, d2, count2 } => {
                write!(f, "difference {d1} occurs {count1} times but {d2} occurs {count2} times")
            }
            TranslateCollision { block, by, other, other_by } => {
                write!(f, "translate of block {block} by {by} equals translate of block {other} by {other_by}")
            }
            NonConstantPairCount { pair1, count1, pair2, count2 } => write!(
                f,
                "pair ({},{}) lies in {count1} blocks but ({},{}) lies in {count2}",
                pair1.0, pair1.1, pair2.0, pair2.1
            ),
            NotSharplyTransitive { a, b, count } => write!(f, "{count} translations map {a} to {b}"),
            DifferenceNotSolvable { a, b, count } => write!(f, "{a} - x = {b} has {count} solutions"),
            NotInvariant { t, a, b } => write!(f, "translation {t} changes the difference of ({a},{b})"),
            TranslateSizeMismatch { t, block } => write!(f, "translation {t} changes the size of block {block}"),
            NoIdentityTranslation => f.write_str("no translation is the identity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("no blocks given")]
    NoBlocks,
    #[error("{}", join(.0))]
    Violations(Vec<DesignViolation>),
    #[error("development theorem violated: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dfbq(#[from] DfbqError),
}

impl DesignError {
    pub fn violations(&self) -> &[DesignViolation] {
        match self {
            DesignError::Violations(v) => v,
            _ => &[],
        }
    }
}

fn join(v: &[DesignViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub(crate) fn require_order(expected: usize, found: usize) -> Result<(), DesignError> {
    if expected == found {
        Ok(())
    } else {
        Err(DesignError::OrderMismatch { expected, found })
    }
}
