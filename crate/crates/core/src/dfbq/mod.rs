//! Difference-family biquasigroups.
//!
//! A DFBQ `(N, +, -, o, e)` is a pair of quasigroup operations on the same
//! carrier with translation-invariant differences,
//! `(a + c) - (b + c) = a - b`. Every such pair has a right additive
//! identity `o` and a constant diagonal `e = a - a`.
//!
//! This module checks the axioms, normalizes a DFBQ to one with `o = e`
//! and `a - e = a` ([`breakdown`]/[`backup`]), recovers the underlying group
//! from the normalized difference operation (a Ward quasigroup), and
//! decomposes any DFBQ as `a + b = a * beta(b)`, `a - b = alpha(a * b⁻¹)`
//! over a group `*` ([`general_decompose`]/[`general_construct`]).

mod general;
mod normal;
mod ward;

pub use general::{general_construct, general_decompose, Decomposition};
pub use normal::{backup, breakdown};
pub use ward::{
    group_to_normal, is_ward, normal_to_group, phi_form, phi_from_shift, ward_to_group, GroupPresentation, WardCheck,
};

use std::fmt;

use thiserror::Error;

use crate::alg::{AlgebraError, CayleyTable, LatinDefect, Permutation};

/// One failed DFBQ axiom, with the lexicographically first witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DfbqViolation {
    AddNotQuasigroup(LatinDefect),
    SubNotQuasigroup(LatinDefect),
    /// `(a + c) - (b + c) != a - b`.
    TranslationInvariance {
        a: usize,
        b: usize,
        c: usize,
    },
    /// `a - a != b - b`.
    NonConstantDiagonal {
        a: usize,
        b: usize,
    },
    NoRightIdentity,
}

impl fmt::Display for DfbqViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DfbqViolation::AddNotQuasigroup(d) => write!(f, "add is not a quasigroup: {d}"),
            DfbqViolation::SubNotQuasigroup(d) => write!(f, "sub is not a quasigroup: {d}"),
            DfbqViolation::TranslationInvariance { a, b, c } => {
                write!(f, "translation invariance fails at ({a},{b},{c})")
            }
            DfbqViolation::NonConstantDiagonal { a, b } => write!(f, "non-constant diagonal at ({a},{b})"),
            DfbqViolation::NoRightIdentity => f.write_str("add has no right identity"),
        }
    }
}

/// Every violated axiom, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationList(pub Vec<DfbqViolation>);

impl fmt::Display for ViolationList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DfbqError {
    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("not a DFBQ: {0}")]
    Axioms(ViolationList),
    #[error("not a normal DFBQ: {0}")]
    NotNormal(String),
    #[error("phi does not preserve differences at ({a},{b})")]
    PhiNotDifferencePreserving { a: usize, b: usize },
    #[error("alpha moves e = {e} to {image}")]
    AlphaMovesE { e: usize, image: usize },
    #[error("alpha moves the group identity {identity} to {image}")]
    AlphaMovesIdentity { identity: usize, image: usize },
    #[error("I moves the group identity {identity} to {image}")]
    IDoesNotFixIdentity { identity: usize, image: usize },
    #[error("operation is not a quasigroup: {0}")]
    NotAQuasigroup(LatinDefect),
    #[error("Ward identity fails at ({a},{b},{c})")]
    NotWard { a: usize, b: usize, c: usize },
    #[error("non-constant diagonal at ({a},{b})")]
    NonConstantDiagonal { a: usize, b: usize },
    #[error("Ward reduction failed: {0}")]
    WardViolation(String),
    #[error("structure theorem violated at {step}: {witness}")]
    StructureTheoremViolation { step: &'static str, witness: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub(crate) fn require_order(expected: usize, found: usize) -> Result<(), DfbqError> {
    if expected == found {
        Ok(())
    } else {
        Err(DfbqError::OrderMismatch { expected, found })
    }
}

/// A validated difference-family biquasigroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dfbq {
    add: CayleyTable,
    sub: CayleyTable,
    o: usize,
    e: usize,
}

impl Dfbq {
    #[inline]
    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn add_table(&self) -> &CayleyTable {
        &self.add
    }

    pub fn sub_table(&self) -> &CayleyTable {
        &self.sub
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.sub.get(a, b)
    }

    /// The right additive identity.
    pub fn o(&self) -> usize {
        self.o
    }

    /// The constant difference `a - a`.
    pub fn e(&self) -> usize {
        self.e
    }

    pub fn into_tables(self) -> (CayleyTable, CayleyTable) {
        (self.add, self.sub)
    }
}

impl fmt::Debug for Dfbq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dfbq")
            .field("add", &self.add)
            .field("sub", &self.sub)
            .field("o", &self.o)
            .field("e", &self.e)
            .finish()
    }
}

/// Checks the DFBQ axioms on `(add, sub)`.
///
/// All axioms are checked; the error lists each failed axiom with its
/// lexicographically first witness.
pub fn verify_dfbq(add: CayleyTable, sub: CayleyTable) -> Result<Dfbq, DfbqError> {
    require_order(add.order(), sub.order())?;
    let n = add.order();
    let mut violations = Vec::new();

    if let Some(defect) = add.latin_defect() {
        violations.push(DfbqViolation::AddNotQuasigroup(defect));
    }
    if let Some(defect) = sub.latin_defect() {
        violations.push(DfbqViolation::SubNotQuasigroup(defect));
    }

    'scan: for a in 0..n {
        for b in 0..n {
            let ab = sub.get(a, b);
            for c in 0..n {
                if sub.get(add.get(a, c), add.get(b, c)) != ab {
                    violations.push(DfbqViolation::TranslationInvariance { a, b, c });
                    break 'scan;
                }
            }
        }
    }

    let e = sub.get(0, 0);
    if let Some(b) = (1..n).find(|&b| sub.get(b, b) != e) {
        violations.push(DfbqViolation::NonConstantDiagonal { a: 0, b });
    }

    let o = add.right_identity();
    if o.is_none() {
        violations.push(DfbqViolation::NoRightIdentity);
    }

    match o {
        Some(o) if violations.is_empty() => Ok(Dfbq { add, sub, o, e }),
        _ => Err(DfbqError::Axioms(ViolationList(violations))),
    }
}

/// A DFBQ with `o = e` and `a - e = a` for every `a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalDfbq(Dfbq);

impl NormalDfbq {
    pub fn new(d: Dfbq) -> Result<Self, DfbqError> {
        if d.o != d.e {
            return Err(DfbqError::NotNormal(format!("o = {} differs from e = {}", d.o, d.e)));
        }
        if let Some(a) = (0..d.order()).find(|&a| d.sub(a, d.e) != a) {
            return Err(DfbqError::NotNormal(format!("{a} - e = {} != {a}", d.sub(a, d.e))));
        }
        Ok(NormalDfbq(d))
    }

    pub fn dfbq(&self) -> &Dfbq {
        &self.0
    }

    pub fn into_dfbq(self) -> Dfbq {
        self.0
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order()
    }

    /// The common value of `o` and `e`.
    pub fn e(&self) -> usize {
        self.0.e
    }

    #[inline]
    pub fn oplus(&self, a: usize, b: usize) -> usize {
        self.0.add(a, b)
    }

    #[inline]
    pub fn ominus(&self, a: usize, b: usize) -> usize {
        self.0.sub(a, b)
    }
}

/// First `(a, b)` with `ominus(phi a, phi b) != ominus(a, b)`.
pub(crate) fn difference_preservation_witness(nf: &NormalDfbq, phi: &Permutation) -> Option<(usize, usize)> {
    let n = nf.order();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| nf.ominus(phi.apply(a), phi.apply(b)) != nf.ominus(a, b))
}
