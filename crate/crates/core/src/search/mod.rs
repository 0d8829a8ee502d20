//! Exhaustive enumeration, structure checks and difference-family search.

use thiserror::Error;

use crate::dfbq::DfbqError;

mod df_search;
mod dfbq_enum;
mod latin;
mod report;
pub mod sampling;
mod structure;

pub use df_search::{find_difference_families, Dedup, SearchOutcome, SearchParams};
pub use dfbq_enum::{
    all_dfbqs, enumerate_dfbq, enumerate_dfbq_par, labeled_groups, MAX_BRUTE_DFBQ_ORDER, MAX_CONSTRUCTIVE_DFBQ_ORDER,
};
pub use latin::{enumerate_latin, enumerate_latin_par, latin_squares, MAX_LATIN_ORDER};
pub use report::{Checksum, EnumerationReport, Mode};
pub use structure::{block_battery, check_dfbq, exhaustive_structure_check, StructureReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {order} is outside the supported range 1..={max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("cannot start thread pool: {0}")]
    ThreadPool(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Dfbq(#[from] DfbqError),
}

pub(crate) fn pool(jobs: usize) -> Result<rayon::ThreadPool, SearchError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| SearchError::ThreadPool(e.to_string()))
}
