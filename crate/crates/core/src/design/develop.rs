use std::collections::{BTreeMap, HashMap};

use crate::alg::{self, CayleyTable};
use crate::dfbq::{general_decompose, Dfbq};

use super::{require_order, Block, BlockFamily, Design, DesignError, DesignViolation, DifferenceCertificate};

/// All `(block index, a, b)` with `a, b` in the block, `a != b` and `a - b = d`,
/// in lexicographic order.
pub fn delta(fam: &BlockFamily, sub: &CayleyTable, d: usize) -> Result<Vec<(usize, usize, usize)>, DesignError> {
    require_order(fam.order(), sub.order())?;
    alg::require_quasigroup(sub)?;
    let mut out = Vec::new();
    for (i, block) in fam.blocks().iter().enumerate() {
        for a in block.elements() {
            for b in block.elements() {
                if a != b && sub.get(a, b) == d {
                    out.push((i, a, b));
                }
            }
        }
    }
    Ok(out)
}

/// `|Δ(d)|` for every `d`, indexed by `d`.
pub(crate) fn difference_counts(fam: &BlockFamily, sub: &CayleyTable) -> Vec<usize> {
    let mut counts = vec![0; sub.order()];
    for block in fam.blocks() {
        for a in block.elements() {
            for b in block.elements() {
                if a != b {
                    counts[sub.get(a, b)] += 1;
                }
            }
        }
    }
    counts
}

/// First pair of differences in `domain` with unequal counts.
pub(crate) fn lambda_witness(counts: &[usize], domain: &[usize]) -> Option<DesignViolation> {
    let (&d1, rest) = domain.split_first()?;
    rest.iter().find(|&&d| counts[d] != counts[d1]).map(|&d2| DesignViolation::NonConstantLambda {
        d1,
        count1: counts[d1],
        d2,
        count2: counts[d2],
    })
}

pub(crate) fn first_unequal_size(fam: &BlockFamily) -> Option<DesignViolation> {
    let k = fam.blocks().first()?.len();
    fam.blocks().iter().position(|b| b.len() != k).map(|other| DesignViolation::UnequalBlockSizes { first: 0, other })
}

/// Checks that `fam` is a quasigroup difference family over `d`.
///
/// Three conditions: equal block sizes `k >= 2`; the number of ordered
/// in-block pairs `(a, b)`, `a != b`, with `a - b = x` is the same `lambda` for
/// every `x != e`; and all `add`-translates `B + b` are distinct. A classical
/// group difference family is the case `d = (G, *, a * b⁻¹)`.
pub fn verify_qdf(d: &Dfbq, fam: &BlockFamily) -> Result<DifferenceCertificate, DesignError> {
    require_order(d.order(), fam.order())?;
    if fam.is_empty() {
        return Err(DesignError::NoBlocks);
    }
    let mut violations = Vec::new();
    violations.extend(first_unequal_size(fam));
    let k = fam.blocks()[0].len();
    if k < 2 {
        violations.push(DesignViolation::BlockTooSmall { k });
    }

    let counts = difference_counts(fam, d.sub_table());
    let domain: Vec<usize> = (0..d.order()).filter(|&x| x != d.e()).collect();
    violations.extend(lambda_witness(&counts, &domain));

    let mut seen: HashMap<Block, (usize, usize)> = HashMap::new();
    'translates: for (i, block) in fam.blocks().iter().enumerate() {
        for by in 0..d.order() {
            let image = Block::from_image(block.elements().map(|x| d.add(x, by)));
            if let Some(&(other, other_by)) = seen.get(&image) {
                violations.push(DesignViolation::TranslateCollision {
                    block: other,
                    by: other_by,
                    other: i,
                    other_by: by,
                });
                break 'translates;
            }
            seen.insert(image, (i, by));
        }
    }

    if !violations.is_empty() {
        return Err(DesignError::Violations(violations));
    }
    let lambda = domain.first().map_or(0, |&x| counts[x]);
    let per_difference: BTreeMap<usize, usize> = domain.iter().map(|&x| (x, counts[x])).collect();
    Ok(DifferenceCertificate { k, lambda, per_difference })
}

/// The development `{B + n}` through `add`, deduplicated with multiplicities.
pub fn develop(fam: &BlockFamily, add: &CayleyTable) -> Result<Design, DesignError> {
    require_order(fam.order(), add.order())?;
    alg::require_quasigroup(add)?;
    let mut design = Design::new(add.order());
    for block in fam.blocks() {
        for n in 0..add.order() {
            design.insert(Block::from_image(block.elements().map(|x| add.get(x, n))));
        }
    }
    Ok(design)
}

/// Checks that `blocks` on `v` points all have size `k` and that every pair of
/// distinct points lies in the same number `lambda` of blocks.
pub fn is_2design(v: usize, blocks: &[Block]) -> Result<(usize, usize), DesignError> {
    let first = blocks.first().ok_or(DesignError::NoBlocks)?;
    if let Some(b) = blocks.iter().find(|b| b.largest() >= v) {
        return Err(DesignError::InvalidBlock(format!("block {b} has an element not below {v}")));
    }
    let k = first.len();
    let mut violations = Vec::new();
    if let Some(other) = blocks.iter().position(|b| b.len() != k) {
        violations.push(DesignViolation::UnequalBlockSizes { first: 0, other });
    }

    let mut counts = vec![0usize; v * v];
    for block in blocks {
        let elems: Vec<usize> = block.elements().collect();
        for (i, &a) in elems.iter().enumerate() {
            for &b in &elems[i + 1..] {
                counts[a * v + b] += 1;
            }
        }
    }
    let mut pairs = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b)));
    let lambda = match pairs.next() {
        None => 0,
        Some(p1) => {
            let c1 = counts[p1.0 * v + p1.1];
            if let Some(p2) = pairs.find(|&(a, b)| counts[a * v + b] != c1) {
                violations.push(DesignViolation::NonConstantPairCount {
                    pair1: p1,
                    count1: c1,
                    pair2: p2,
                    count2: counts[p2.0 * v + p2.1],
                });
            }
            c1
        }
    };
    if violations.is_empty() {
        Ok((k, lambda))
    } else {
        Err(DesignError::Violations(violations))
    }
}

/// Result of comparing the quasigroup and group developments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DevEquality {
    Equal,
    /// A block present in exactly one of the two developments.
    Mismatch(Block),
}

/// Compares the development of `fam` through `d`'s addition with its
/// development through the group recovered by [`general_decompose`].
pub fn dev_equality(d: &Dfbq, fam: &BlockFamily) -> Result<DevEquality, DesignError> {
    let dec = general_decompose(d)?;
    let via_add = develop(fam, d.add_table())?;
    let via_group = develop(fam, dec.group.table())?;
    if via_add.same_blocks(&via_group) {
        return Ok(DevEquality::Equal);
    }
    let odd = via_add
        .blocks()
        .find(|b| via_group.multiplicity(b) == 0)
        .or_else(|| via_group.blocks().find(|b| via_add.multiplicity(b) == 0))
        .cloned()
        .expect("unequal block sets differ somewhere");
    Ok(DevEquality::Mismatch(odd))
}
