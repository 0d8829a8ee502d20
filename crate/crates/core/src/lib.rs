//! Finite-algebra workbench for generalized difference families.
//!
//! Cayley tables and quasigroups live in [`alg`]; difference-family
//! biquasigroups (DFBQs) and their reduction to groups in [`dfbq`]; block
//! development and 2-design checks in [`design`]; exhaustive enumeration
//! and difference-family search in [`search`]; text file formats in
//! [`format`].

pub mod alg;
pub mod design;
pub mod dfbq;
pub mod format;
pub mod search;

pub use alg::{AlgebraClass, AlgebraError, CayleyTable, Permutation, Side};
pub use design::{Block, BlockFamily, Design, DesignError};
pub use dfbq::{Dfbq, DfbqError, GroupPresentation, NormalDfbq};
pub use format::FormatError;
pub use search::{EnumerationReport, Mode, SearchError, StructureReport};
