use crate::alg::{CayleyTable, Permutation};

use super::{is_ward, require_order, verify_dfbq, ward_to_group, Dfbq, DfbqError, GroupPresentation, WardCheck};

/// A DFBQ written over a group: `a + b = a * beta(b)`, `a - b = alpha(a * b⁻¹)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Decomposition {
    pub group: GroupPresentation,
    pub alpha: Permutation,
    pub beta: Permutation,
}

/// Builds `a + b = a * beta(b)`, `a - b = alpha(a * b⁻¹)`, with
/// `o = beta⁻¹(1)` and `e = 1`. Requires `alpha(1) = 1`.
pub fn general_construct(g: &GroupPresentation, alpha: &Permutation, beta: &Permutation) -> Result<Dfbq, DfbqError> {
    let n = g.order();
    require_order(n, alpha.order())?;
    require_order(n, beta.order())?;
    let one = g.identity();
    if alpha.apply(one) != one {
        return Err(DfbqError::AlphaMovesIdentity { identity: one, image: alpha.apply(one) });
    }
    let add = CayleyTable::tabulate(n, |a, b| g.mul(a, beta.apply(b)));
    let sub = CayleyTable::tabulate(n, |a, b| alpha.apply(g.mul(a, g.inv(b))));
    let d = verify_dfbq(add, sub).map_err(|err| DfbqError::StructureTheoremViolation {
        step: "general_construct: result is a DFBQ",
        witness: err.to_string(),
    })?;
    let o = beta.inverse().apply(one);
    if d.o() != o || d.e() != one {
        return Err(DfbqError::StructureTheoremViolation {
            step: "general_construct: o = beta⁻¹(1), e = 1",
            witness: format!("o = {}, e = {}", d.o(), d.e()),
        });
    }
    Ok(d)
}

/// Writes any DFBQ over a group, using the canonical choice
/// `alpha(x) = x - e`, `beta(b) = e + b` and group identity `e`.
///
/// Every step is checked; a [`DfbqError::StructureTheoremViolation`] here
/// would be a counterexample to the decomposition theorem.
pub fn general_decompose(d: &Dfbq) -> Result<Decomposition, DfbqError> {
    let n = d.order();
    let e = d.e();
    let violation = |step: &'static str, witness: String| DfbqError::StructureTheoremViolation { step, witness };

    let alpha = d.sub_table().right_translation(e);
    let alpha_inv = alpha.inverse();
    let ominus = CayleyTable::tabulate(n, |a, b| alpha_inv.apply(d.sub(a, b)));

    if let WardCheck::Violated { a, b, c } = is_ward(&ominus)? {
        return Err(violation("decompose: normalized difference is Ward", format!("({a},{b},{c})")));
    }
    let group = ward_to_group(&ominus).map_err(|err| violation("decompose: Ward group", err.to_string()))?;
    if group.identity() != e {
        return Err(violation("decompose: group identity is e", format!("identity {}", group.identity())));
    }

    let beta = d.add_table().left_translation(e);
    for a in 0..n {
        for b in 0..n {
            if d.add(a, b) != group.mul(a, beta.apply(b)) {
                return Err(violation("decompose: a + b = a * beta(b)", format!("({a},{b})")));
            }
            if d.sub(a, b) != alpha.apply(group.mul(a, group.inv(b))) {
                return Err(violation("decompose: a - b = alpha(a * b⁻¹)", format!("({a},{b})")));
            }
        }
    }

    let rebuilt = general_construct(&group, &alpha, &beta)?;
    if rebuilt != *d {
        return Err(violation("decompose: exact reconstruction", format!("{rebuilt:?}")));
    }
    Ok(Decomposition { group, alpha, beta })
}
