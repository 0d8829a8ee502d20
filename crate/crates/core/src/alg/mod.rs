//! Finite binary operations: Cayley tables, permutations, classification
//! into magma/quasigroup/loop/group, division, and isotopies.

mod perm;
mod table;

pub use perm::Permutation;
pub use table::{CayleyTable, LatinDefect};

use thiserror::Error;

/// Largest carrier size a table or permutation may have (elements are stored as bytes).
pub const MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operation is not a quasigroup: {0}")]
    NotAQuasigroup(LatinDefect),
    #[error("operation is not a group")]
    NotAGroup,
    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element {element} is not below {order}")]
    ElementOutOfRange { element: usize, order: usize },
}

/// Position of a table in the magma ⊂ quasigroup ⊂ loop ⊂ group chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraClass {
    Magma,
    Quasigroup,
    Loop { identity: usize },
    Group { identity: usize },
}

impl AlgebraClass {
    pub fn identity(&self) -> Option<usize> {
        match *self {
            AlgebraClass::Loop { identity } | AlgebraClass::Group { identity } => Some(identity),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            AlgebraClass::Magma => 0,
            AlgebraClass::Quasigroup => 1,
            AlgebraClass::Loop { .. } => 2,
            AlgebraClass::Group { .. } => 3,
        }
    }

    pub fn is_quasigroup(&self) -> bool {
        self.rank() >= 1
    }

    pub fn is_group(&self) -> bool {
        self.rank() == 3
    }

    pub fn name(&self) -> &'static str {
        match self {
            AlgebraClass::Magma => "magma",
            AlgebraClass::Quasigroup => "quasigroup",
            AlgebraClass::Loop { .. } => "loop",
            AlgebraClass::Group { .. } => "group",
        }
    }
}

/// Which unknown [`divide`] solves for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `y` in `y·a = b`.
    Left,
    /// `x` in `a·x = b`.
    Right,
}

pub fn classify(table: &CayleyTable) -> AlgebraClass {
    if !table.is_latin() {
        return AlgebraClass::Magma;
    }
    let Some(identity) = table.two_sided_identity() else {
        return AlgebraClass::Quasigroup;
    };
    if table.is_associative() {
        AlgebraClass::Group { identity }
    } else {
        AlgebraClass::Loop { identity }
    }
}

pub(crate) fn require_quasigroup(table: &CayleyTable) -> Result<(), AlgebraError> {
    match table.latin_defect() {
        None => Ok(()),
        Some(defect) => Err(AlgebraError::NotAQuasigroup(defect)),
    }
}

pub(crate) fn require_element(table: &CayleyTable, x: usize) -> Result<(), AlgebraError> {
    if x < table.order() {
        Ok(())
    } else {
        Err(AlgebraError::ElementOutOfRange { element: x, order: table.order() })
    }
}

fn require_order(expected: usize, found: usize) -> Result<(), AlgebraError> {
    if expected == found {
        Ok(())
    } else {
        Err(AlgebraError::OrderMismatch { expected, found })
    }
}

/// Solves `a·x = b` (`Side::Right`) or `y·a = b` (`Side::Left`).
pub fn divide(table: &CayleyTable, a: usize, b: usize, side: Side) -> Result<usize, AlgebraError> {
    require_quasigroup(table)?;
    require_element(table, a)?;
    require_element(table, b)?;
    Ok(match side {
        Side::Right => table.solve_right(a, b),
        Side::Left => table.solve_left(a, b),
    })
}

/// The table `T'(x, y) = alpha(T(beta⁻¹ x, gamma⁻¹ y))`, so that
/// `alpha(a·b) = beta(a) ∘ gamma(b)`.
pub fn apply_isotopy(
    table: &CayleyTable,
    alpha: &Permutation,
    beta: &Permutation,
    gamma: &Permutation,
) -> Result<CayleyTable, AlgebraError> {
    let n = table.order();
    for p in [alpha, beta, gamma] {
        require_order(n, p.order())?;
    }
    let beta_inv = beta.inverse();
    let gamma_inv = gamma.inverse();
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        let bx = beta_inv.apply(x);
        for y in 0..n {
            entries.push(alpha.apply(table.get(bx, gamma_inv.apply(y))) as u8);
        }
    }
    Ok(CayleyTable::from_bytes(n, entries))
}

/// The group inverse map, for a table already known to be a group with `identity`.
pub(crate) fn group_inverse(group: &CayleyTable, identity: usize) -> Permutation {
    let images = (0..group.order()).map(|x| group.solve_right(x, identity) as u8).collect();
    Permutation::from_images_unchecked(images)
}

/// `S(a, b) = a·b⁻¹` for a group table.
pub fn subtraction_quasigroup(group: &CayleyTable) -> Result<CayleyTable, AlgebraError> {
    let AlgebraClass::Group { identity } = classify(group) else {
        return Err(AlgebraError::NotAGroup);
    };
    let inv = group_inverse(group, identity);
    let n = group.order();
    let entries = (0..n * n).map(|i| group.get(i / n, inv.apply(i % n)) as u8).collect();
    Ok(CayleyTable::from_bytes(n, entries))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `a * b = k·a + (1 - k)·b` over the prime field `Z_p`.
pub fn field_twist(p: usize, k: usize) -> Result<CayleyTable, AlgebraError> {
    if !is_prime(p) || p > MAX_ORDER {
        return Err(AlgebraError::BadParameters(format!("{p} is not a prime up to {MAX_ORDER}")));
    }
    let k = k % p;
    if k == 0 || k == 1 {
        return Err(AlgebraError::BadParameters(format!("k = {k} mod {p} must not be 0 or 1")));
    }
    let one_minus_k = (1 + p - k) % p;
    CayleyTable::from_fn(p, |a, b| (k * a + one_minus_k * b) % p)
}

/// The principal loop isotope `x∘y = R₀⁻¹(x)·L₀⁻¹(y)`, where `R₀(z) = z·0`
/// and `L₀(z) = 0·z`. Its identity is `0·0`.
pub fn principal_isotope(table: &CayleyTable) -> Result<CayleyTable, AlgebraError> {
    require_quasigroup(table)?;
    let n = table.order();
    let r_inv = table.right_translation(0).inverse();
    let l_inv = table.left_translation(0).inverse();
    let entries = (0..n * n).map(|i| table.get(r_inv.apply(i / n), l_inv.apply(i % n)) as u8).collect();
    Ok(CayleyTable::from_bytes(n, entries))
}

/// Returns a group isotopic to `table`, or `None` if no such group exists.
///
/// A loop isotopic to a group is isomorphic to that group, so it suffices
/// to test one principal loop isotope for associativity.
pub fn isotopic_to_group(table: &CayleyTable) -> Result<Option<CayleyTable>, AlgebraError> {
    let loop_table = principal_isotope(table)?;
    Ok(classify(&loop_table).is_group().then_some(loop_table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_sub() -> CayleyTable {
        CayleyTable::from_rows(&[vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]]).unwrap()
    }

    fn is_cyclic_group(table: &CayleyTable) -> bool {
        let AlgebraClass::Group { identity } = classify(table) else { return false };
        let n = table.order();
        (0..n).any(|g| {
            let (mut x, mut k) = (g, 1);
            while x != identity {
                x = table.get(x, g);
                k += 1;
            }
            k == n
        })
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&CayleyTable::cyclic(4)), AlgebraClass::Group { identity: 0 });
        let sub = z3_sub();
        assert_eq!(sub, CayleyTable::cyclic_subtraction(3));
        assert_eq!(classify(&sub), AlgebraClass::Quasigroup);
        let bad = CayleyTable::from_rows(&[vec![0, 0, 1], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(classify(&bad), AlgebraClass::Magma);
    }

    #[test]
    fn classify_loop_not_group() {
        // smallest non-associative loop has order 5
        let t = CayleyTable::from_rows(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap();
        assert_eq!(classify(&t), AlgebraClass::Loop { identity: 0 });
    }

    #[test]
    fn divide_examples() {
        assert_eq!(divide(&CayleyTable::cyclic(3), 1, 0, Side::Right), Ok(2));
        assert_eq!(divide(&z3_sub(), 1, 2, Side::Right), Ok(2));
        assert_eq!(divide(&z3_sub(), 1, 2, Side::Left), Ok(0));
        let bad = CayleyTable::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(matches!(divide(&bad, 0, 0, Side::Right), Err(AlgebraError::NotAQuasigroup(_))));
        assert!(matches!(
            divide(&CayleyTable::cyclic(3), 3, 0, Side::Right),
            Err(AlgebraError::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn isotopy_examples() {
        let z3 = CayleyTable::cyclic(3);
        let id = Permutation::identity(3);
        assert_eq!(apply_isotopy(&z3, &id, &id, &id).unwrap(), z3);
        let neg = Permutation::from_fn(3, |x| (3 - x) % 3).unwrap();
        assert_eq!(apply_isotopy(&z3, &id, &id, &neg).unwrap(), z3_sub());
        let double = Permutation::from_fn(3, |x| 2 * x % 3).unwrap();
        assert_eq!(apply_isotopy(&z3, &double, &double, &double).unwrap(), z3);
        let short = Permutation::identity(2);
        assert_eq!(apply_isotopy(&z3, &id, &short, &id), Err(AlgebraError::OrderMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn subtraction_examples() {
        assert_eq!(subtraction_quasigroup(&CayleyTable::cyclic(3)).unwrap(), z3_sub());
        assert_eq!(subtraction_quasigroup(&CayleyTable::cyclic(2)).unwrap(), CayleyTable::cyclic(2));
        assert_eq!(subtraction_quasigroup(&z3_sub()), Err(AlgebraError::NotAGroup));
    }

    #[test]
    fn field_twist_examples() {
        let t = field_twist(5, 2).unwrap();
        assert_eq!(t.get(1, 2), 0);
        assert_eq!(classify(&t), AlgebraClass::Quasigroup);
        assert!(t.associativity_witness().is_some());
        assert!(matches!(field_twist(5, 1), Err(AlgebraError::BadParameters(_))));
        assert!(matches!(field_twist(5, 0), Err(AlgebraError::BadParameters(_))));
        assert!(matches!(field_twist(5, 6), Err(AlgebraError::BadParameters(_))));
        assert!(matches!(field_twist(6, 2), Err(AlgebraError::BadParameters(_))));
    }

    #[test]
    fn isotopic_to_group_examples() {
        let z4 = CayleyTable::cyclic(4);
        let g = isotopic_to_group(&z4).unwrap().unwrap();
        assert!(classify(&g).is_group());
        assert_eq!(g.order(), 4);

        let g = isotopic_to_group(&z3_sub()).unwrap().unwrap();
        assert!(is_cyclic_group(&g));
        assert_eq!(g, CayleyTable::cyclic(3));

        let g = isotopic_to_group(&field_twist(5, 2).unwrap()).unwrap().unwrap();
        assert_eq!(g.order(), 5);
        assert!(is_cyclic_group(&g));
    }

    #[test]
    fn non_group_isotope() {
        let t = CayleyTable::from_rows(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap();
        assert_eq!(isotopic_to_group(&t).unwrap(), None);
    }
}
