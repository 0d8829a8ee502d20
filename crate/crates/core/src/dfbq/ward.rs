use crate::alg::{self, classify, AlgebraClass, AlgebraError, CayleyTable, Permutation};

use super::{difference_preservation_witness, require_order, verify_dfbq, DfbqError, NormalDfbq};

/// Outcome of a Ward-identity scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WardCheck {
    Ward,
    /// Lexicographically first `(a, b, c)` with `(a∘c)∘(b∘c) != a∘b`.
    Violated {
        a: usize,
        b: usize,
        c: usize,
    },
}

impl WardCheck {
    pub fn holds(&self) -> bool {
        matches!(self, WardCheck::Ward)
    }
}

/// Checks `(a∘c)∘(b∘c) = a∘b` over all triples.
pub fn is_ward(table: &CayleyTable) -> Result<WardCheck, AlgebraError> {
    alg::require_quasigroup(table)?;
    let n = table.order();
    for a in 0..n {
        for b in 0..n {
            let ab = table.get(a, b);
            for c in 0..n {
                if table.get(table.get(a, c), table.get(b, c)) != ab {
                    return Ok(WardCheck::Violated { a, b, c });
                }
            }
        }
    }
    Ok(WardCheck::Ward)
}

/// A group table together with its identity and inverse map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupPresentation {
    group: CayleyTable,
    identity: usize,
    inv: Permutation,
}

impl GroupPresentation {
    pub fn new(group: CayleyTable) -> Result<Self, AlgebraError> {
        let AlgebraClass::Group { identity } = classify(&group) else {
            return Err(AlgebraError::NotAGroup);
        };
        let inv = alg::group_inverse(&group, identity);
        Ok(GroupPresentation { group, identity, inv })
    }

    /// Trusted constructor for a table already known to be a group.
    pub(crate) fn from_group_unchecked(group: CayleyTable, identity: usize) -> Self {
        debug_assert_eq!(classify(&group), AlgebraClass::Group { identity });
        let inv = alg::group_inverse(&group, identity);
        GroupPresentation { group, identity, inv }
    }

    pub fn table(&self) -> &CayleyTable {
        &self.group
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse_map(&self) -> &Permutation {
        &self.inv
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.group.get(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv.apply(a)
    }

    /// The classical difference structure `(G, *, a * b⁻¹)`.
    pub fn subtraction_dfbq(&self) -> super::Dfbq {
        let n = self.order();
        let sub = CayleyTable::tabulate(n, |a, b| self.mul(a, self.inv(b)));
        verify_dfbq(self.group.clone(), sub).expect("a group with its subtraction is a DFBQ")
    }
}

/// Recovers the group of a Ward quasigroup: `e = x∘x`, `x̄ = e∘x`,
/// `x * y = x∘ȳ`, so that `x∘y = x * ȳ` and `x̄ = x⁻¹`.
pub fn ward_to_group(w: &CayleyTable) -> Result<GroupPresentation, DfbqError> {
    if let Some(defect) = w.latin_defect() {
        return Err(DfbqError::NotAQuasigroup(defect));
    }
    if let WardCheck::Violated { a, b, c } = is_ward(w)? {
        return Err(DfbqError::NotWard { a, b, c });
    }
    let n = w.order();
    let e = w.get(0, 0);
    if let Some(b) = (1..n).find(|&b| w.get(b, b) != e) {
        return Err(DfbqError::NonConstantDiagonal { a: 0, b });
    }
    let bar = w.left_translation(e);
    let group = CayleyTable::tabulate(n, |x, y| w.get(x, bar.apply(y)));

    if classify(&group) != (AlgebraClass::Group { identity: e }) {
        return Err(DfbqError::StructureTheoremViolation {
            step: "ward_to_group: x * y = x∘ȳ is a group with identity e",
            witness: format!("{group:?}"),
        });
    }
    let gp = GroupPresentation { group, identity: e, inv: bar };
    if gp.inv != alg::group_inverse(&gp.group, e) {
        return Err(DfbqError::StructureTheoremViolation {
            step: "ward_to_group: x̄ is the group inverse",
            witness: format!("{:?}", gp.inv),
        });
    }
    if let Some((x, y)) = pairs(n).find(|&(x, y)| w.get(x, y) != gp.mul(x, gp.inv(y))) {
        return Err(DfbqError::StructureTheoremViolation {
            step: "ward_to_group: x∘y = x * ȳ",
            witness: format!("({x},{y})"),
        });
    }
    Ok(gp)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// Reduces a normal DFBQ to a group.
///
/// Returns the group of the Ward quasigroup `(N, ⊖)` and the permutation `I`
/// with `a ⊕ I(a) = e`; then `a ⊖ b = a ⊕ I(b)` and `a ⊕ b = a * (I⁻¹ b)⁻¹`.
pub fn normal_to_group(nf: &NormalDfbq) -> Result<(GroupPresentation, Permutation), DfbqError> {
    let n = nf.order();
    let e = nf.e();
    let add = nf.dfbq().add_table();
    let i_map = Permutation::from_fn(n, |a| add.solve_right(a, e))?;

    if let Some((a, b)) = pairs(n).find(|&(a, b)| nf.ominus(a, b) != nf.oplus(a, i_map.apply(b))) {
        return Err(DfbqError::WardViolation(format!("a - b != a + I(b) at ({a},{b})")));
    }
    let sub = nf.dfbq().sub_table();
    if let WardCheck::Violated { a, b, c } = is_ward(sub)? {
        return Err(DfbqError::WardViolation(format!("difference is not Ward at ({a},{b},{c})")));
    }
    let group = ward_to_group(sub)?;
    let i_inv = i_map.inverse();
    if let Some((a, b)) = pairs(n).find(|&(a, b)| nf.oplus(a, b) != group.mul(a, group.inv(i_inv.apply(b)))) {
        return Err(DfbqError::StructureTheoremViolation {
            step: "normal_to_group: a + b = a * (I⁻¹ b)⁻¹",
            witness: format!("({a},{b})"),
        });
    }
    Ok((group, i_map))
}

/// Builds the normal DFBQ `a + b = a * (I b)⁻¹`, `a - b = a * b⁻¹` from a
/// group and a permutation fixing its identity.
///
/// The `I` here is the inverse of the one returned by [`normal_to_group`]:
/// `group_to_normal(g, i.inverse())` rebuilds the DFBQ that produced `(g, i)`.
pub fn group_to_normal(g: &GroupPresentation, i_map: &Permutation) -> Result<NormalDfbq, DfbqError> {
    let n = g.order();
    require_order(n, i_map.order())?;
    let one = g.identity();
    if i_map.apply(one) != one {
        return Err(DfbqError::IDoesNotFixIdentity { identity: one, image: i_map.apply(one) });
    }
    let add = CayleyTable::tabulate(n, |a, b| g.mul(a, g.inv(i_map.apply(b))));
    let sub = CayleyTable::tabulate(n, |a, b| g.mul(a, g.inv(b)));
    let d = verify_dfbq(add, sub).map_err(|err| DfbqError::StructureTheoremViolation {
        step: "group_to_normal: result is a DFBQ",
        witness: err.to_string(),
    })?;
    if d.o() != one || d.e() != one {
        return Err(DfbqError::StructureTheoremViolation {
            step: "group_to_normal: o = e = 1",
            witness: format!("o = {}, e = {}", d.o(), d.e()),
        });
    }
    NormalDfbq::new(d)
}

/// For a difference-preserving `phi`, returns `k` with `phi(a) = a * k`.
pub fn phi_form(nf: &NormalDfbq, phi: &Permutation) -> Result<usize, DfbqError> {
    require_order(nf.order(), phi.order())?;
    if let Some((a, b)) = difference_preservation_witness(nf, phi) {
        return Err(DfbqError::PhiNotDifferencePreserving { a, b });
    }
    let (group, _) = normal_to_group(nf)?;
    let k = phi.apply(group.identity());
    if let Some(a) = (0..nf.order()).find(|&a| phi.apply(a) != group.mul(a, k)) {
        return Err(DfbqError::StructureTheoremViolation {
            step: "phi_form: phi(a) = a * k",
            witness: format!("a = {a}, k = {k}"),
        });
    }
    Ok(k)
}

/// The right shift `a -> a * k`, which always preserves the normal difference.
pub fn phi_from_shift(nf: &NormalDfbq, k: usize) -> Result<Permutation, DfbqError> {
    alg::require_element(nf.dfbq().add_table(), k)?;
    let (group, _) = normal_to_group(nf)?;
    let phi = Permutation::from_fn(nf.order(), |a| group.mul(a, k))?;
    if let Some((a, b)) = difference_preservation_witness(nf, &phi) {
        return Err(DfbqError::StructureTheoremViolation {
            step: "phi_from_shift: a -> a * k preserves differences",
            witness: format!("({a},{b})"),
        });
    }
    Ok(phi)
}
