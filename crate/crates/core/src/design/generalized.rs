use std::collections::HashMap;

use crate::alg::{CayleyTable, Permutation};

use super::develop::{difference_counts, first_unequal_size, is_2design, lambda_witness};
use super::{require_order, Block, BlockFamily, Design, DesignError, DesignViolation};

/// A design obtained from a translation set together with its parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneralizedDevelopment {
    pub design: Design,
    pub k: usize,
    pub lambda: usize,
    /// Index of the translation acting as the identity map.
    pub identity_translation: usize,
    /// Differences `a - b` with `a != b` over which lambda was required constant.
    pub lambda_domain: Vec<usize>,
    /// Values reached only as `a - a`; lambda is not required on these.
    pub diagonal_only: Vec<usize>,
}

/// Develops `fam` through an arbitrary set of translations and a difference
/// operation, checking every hypothesis under which `{t(B)}` is a 2-design:
///
/// 1. each ordered pair `(a, b)` is moved `a -> b` by exactly one translation;
/// 2. `a - x = b` has exactly one solution;
/// 3. `t(a) - t(b) = a - b` for every translation;
/// 4. `|Δ(d)|` is constant over the differences `a - b`, `a != b`;
/// 5. all translated blocks have the same size;
/// 6. `t_i(B) = t_j(C)` only when `i = j` and `B = C`.
///
/// On success the design is confirmed with [`is_2design`], and its pair count
/// must match the difference count.
pub fn generalized_develop(
    n: usize,
    translations: &[Permutation],
    sub: &CayleyTable,
    fam: &BlockFamily,
) -> Result<GeneralizedDevelopment, DesignError> {
    require_order(n, sub.order())?;
    require_order(n, fam.order())?;
    for t in translations {
        require_order(n, t.order())?;
    }
    if fam.is_empty() {
        return Err(DesignError::NoBlocks);
    }
    let mut violations = Vec::new();

    let mut movers = vec![0usize; n * n];
    for t in translations {
        for a in 0..n {
            movers[a * n + t.apply(a)] += 1;
        }
    }
    if let Some(i) = movers.iter().position(|&c| c != 1) {
        violations.push(DesignViolation::NotSharplyTransitive { a: i / n, b: i % n, count: movers[i] });
    }

    'solvable: for a in 0..n {
        let mut hits = vec![0usize; n];
        for x in 0..n {
            hits[sub.get(a, x)] += 1;
        }
        if let Some(b) = hits.iter().position(|&c| c != 1) {
            violations.push(DesignViolation::DifferenceNotSolvable { a, b, count: hits[b] });
            break 'solvable;
        }
    }

    'invariant: for (t, perm) in translations.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                if sub.get(perm.apply(a), perm.apply(b)) != sub.get(a, b) {
                    violations.push(DesignViolation::NotInvariant { t, a, b });
                    break 'invariant;
                }
            }
        }
    }

    let mut representable = vec![false; n];
    let mut on_diagonal = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                on_diagonal[sub.get(a, b)] = true;
            } else {
                representable[sub.get(a, b)] = true;
            }
        }
    }
    let lambda_domain: Vec<usize> = (0..n).filter(|&d| representable[d]).collect();
    let diagonal_only: Vec<usize> = (0..n).filter(|&d| on_diagonal[d] && !representable[d]).collect();
    let counts = difference_counts(fam, sub);
    violations.extend(lambda_witness(&counts, &lambda_domain));

    violations.extend(first_unequal_size(fam));
    let k = fam.blocks()[0].len();
    let mut translates: Vec<Block> = Vec::with_capacity(translations.len() * fam.len());
    let mut seen: HashMap<Block, (usize, usize)> = HashMap::new();
    let mut size_reported = false;
    let mut collision_reported = false;
    for (t, perm) in translations.iter().enumerate() {
        for (i, block) in fam.blocks().iter().enumerate() {
            let image = Block::from_image(block.elements().map(|x| perm.apply(x)));
            if image.len() != k && !size_reported {
                violations.push(DesignViolation::TranslateSizeMismatch { t, block: i });
                size_reported = true;
            }
            match seen.get(&image) {
                Some(&(other_t, other_i)) if !collision_reported => {
                    violations.push(DesignViolation::TranslateCollision {
                        block: other_i,
                        by: other_t,
                        other: i,
                        other_by: t,
                    });
                    collision_reported = true;
                }
                Some(_) => {}
                None => {
                    seen.insert(image.clone(), (t, i));
                }
            }
            translates.push(image);
        }
    }

    let identity_translation = translations.iter().position(|t| t.is_identity());
    if identity_translation.is_none() {
        violations.push(DesignViolation::NoIdentityTranslation);
    }

    if !violations.is_empty() {
        return Err(DesignError::Violations(violations));
    }

    let lambda = lambda_domain.first().map_or(0, |&d| counts[d]);
    let mut design = Design::new(n);
    for b in translates {
        design.insert(b);
    }
    let (design_k, design_lambda) = is_2design(n, &design.block_vec())
        .map_err(|err| DesignError::TheoremViolation(format!("developed blocks are not a 2-design: {err}")))?;
    if design_k != k || design_lambda != lambda {
        return Err(DesignError::TheoremViolation(format!(
            "design parameters (k={design_k}, lambda={design_lambda}) differ from difference count (k={k}, lambda={lambda})"
        )));
    }
    Ok(GeneralizedDevelopment {
        design,
        k,
        lambda,
        identity_translation: identity_translation.expect("checked above"),
        lambda_domain,
        diagonal_only,
    })
}
