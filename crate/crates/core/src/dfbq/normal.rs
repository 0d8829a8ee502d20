use crate::alg::{CayleyTable, Permutation};

use super::{difference_preservation_witness, require_order, verify_dfbq, Dfbq, DfbqError, NormalDfbq};

/// Normalizes a DFBQ.
///
/// With `ē` the solution of `e + ē = o`, `phi(x) = x + ē` and
/// `alpha(x) = x - e`, the returned normal form has
/// `a ⊕ b = phi⁻¹(phi a + phi b)` and `a ⊖ b = alpha⁻¹(a - b)`.
pub fn breakdown(d: &Dfbq) -> Result<(NormalDfbq, Permutation, Permutation), DfbqError> {
    let n = d.order();
    let (o, e) = (d.o(), d.e());
    let e_bar = d.add_table().solve_right(e, o);
    let phi = d.add_table().right_translation(e_bar);
    let alpha = d.sub_table().right_translation(e);
    let phi_inv = phi.inverse();
    let alpha_inv = alpha.inverse();

    let oplus = CayleyTable::tabulate(n, |a, b| phi_inv.apply(d.add(phi.apply(a), phi.apply(b))));
    let ominus = CayleyTable::tabulate(n, |a, b| alpha_inv.apply(d.sub(a, b)));
    let nf = NormalDfbq::new(verify_dfbq(oplus, ominus)?)?;

    if let Some((a, b)) = difference_preservation_witness(&nf, &phi) {
        return Err(DfbqError::StructureTheoremViolation {
            step: "breakdown: phi preserves the normal difference",
            witness: format!("({a},{b})"),
        });
    }
    Ok((nf, phi, alpha))
}

/// Inverse of [`breakdown`]: `a + b = phi(phi⁻¹a ⊕ phi⁻¹b)`,
/// `a - b = alpha(phi⁻¹a ⊖ phi⁻¹b)`, `o = phi(e)`.
pub fn backup(nf: &NormalDfbq, phi: &Permutation, alpha: &Permutation) -> Result<Dfbq, DfbqError> {
    let n = nf.order();
    require_order(n, phi.order())?;
    require_order(n, alpha.order())?;
    if let Some((a, b)) = difference_preservation_witness(nf, phi) {
        return Err(DfbqError::PhiNotDifferencePreserving { a, b });
    }
    let e = nf.e();
    if alpha.apply(e) != e {
        return Err(DfbqError::AlphaMovesE { e, image: alpha.apply(e) });
    }

    let phi_inv = phi.inverse();
    let add = CayleyTable::tabulate(n, |a, b| phi.apply(nf.oplus(phi_inv.apply(a), phi_inv.apply(b))));
    let sub = CayleyTable::tabulate(n, |a, b| alpha.apply(nf.ominus(phi_inv.apply(a), phi_inv.apply(b))));
    let d = verify_dfbq(add, sub).map_err(|err| DfbqError::StructureTheoremViolation {
        step: "backup: result is a DFBQ",
        witness: err.to_string(),
    })?;

    let check = |ok: bool, what: &'static str| {
        if ok {
            Ok(())
        } else {
            Err(DfbqError::StructureTheoremViolation { step: what, witness: format!("{d:?}") })
        }
    };
    check(d.o() == phi.apply(e) && d.e() == e, "backup: constants o = phi(e), e unchanged")?;
    check((0..n).all(|x| d.sub(x, e) == alpha.apply(x)), "backup: alpha(x) = x - e")?;
    let e_bar = d.add_table().solve_right(e, d.o());
    check((0..n).all(|x| d.add(x, e_bar) == phi.apply(x)), "backup: phi(x) = x + ē")?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shifted_z3() -> Dfbq {
        verify_dfbq(CayleyTable::from_fn(3, |a, b| (a + b + 1) % 3).unwrap(), CayleyTable::cyclic_subtraction(3))
            .unwrap()
    }

    fn normal_z(n: usize) -> NormalDfbq {
        NormalDfbq::new(verify_dfbq(CayleyTable::cyclic(n), CayleyTable::cyclic_subtraction(n)).unwrap()).unwrap()
    }

    #[test]
    fn breakdown_shifted() {
        let (nf, phi, alpha) = breakdown(&shifted_z3()).unwrap();
        assert_eq!(nf, normal_z(3));
        assert_eq!(phi, Permutation::from_fn(3, |x| (x + 2) % 3).unwrap());
        assert!(alpha.is_identity());
    }

    #[test]
    fn breakdown_normal_is_fixed() {
        for n in 1..=5 {
            let nf = normal_z(n);
            let (nf2, phi, alpha) = breakdown(nf.dfbq()).unwrap();
            assert_eq!(nf2, nf);
            assert!(phi.is_identity() && alpha.is_identity());
        }
    }

    #[test]
    fn backup_examples() {
        let nf = normal_z(3);
        let id = Permutation::identity(3);
        assert_eq!(&backup(&nf, &id, &id).unwrap(), nf.dfbq());

        let shift = Permutation::from_fn(3, |x| (x + 2) % 3).unwrap();
        assert_eq!(backup(&nf, &shift, &id).unwrap(), shifted_z3());

        let swap = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(backup(&nf, &id, &swap), Err(DfbqError::AlphaMovesE { e: 0, image: 1 }));
        let swap12 = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert!(matches!(backup(&nf, &swap12, &id), Err(DfbqError::PhiNotDifferencePreserving { .. })));
    }

    #[test]
    fn roundtrip() {
        let d = shifted_z3();
        let (nf, phi, alpha) = breakdown(&d).unwrap();
        assert_eq!(backup(&nf, &phi, &alpha).unwrap(), d);
    }
}
