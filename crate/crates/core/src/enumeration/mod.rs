//! Finite-index subgroup machinery: coset tables, enumeration, low-index
//! search, cores and order bounds in finite quotients.

mod claims;
mod low_index;
mod table;
mod todd_coxeter;

use thiserror::Error;

use crate::words::WordError;

pub use claims::{order_bound, ClaimKind, ClaimRecord, Evidence, EvidenceRecord, OrderClaim, QuotientRef};
pub use low_index::{low_index, low_index_visit, subgroup_counts, SubgroupRecord};
pub use table::{core, word_order_in_quotient, CosetTable, WitnessQuotient};
pub use todd_coxeter::{todd_coxeter, Enumeration};

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("coset table is incomplete at coset {coset}, column {column}")]
    Incomplete { coset: usize, column: usize },
    #[error("invalid coset table: {0}")]
    InvalidTable(String),
    #[error("relator {relator} does not close at coset {coset}")]
    RelatorFails { relator: usize, coset: usize },
    #[error("subgroup generator {0} does not fix coset 0")]
    SubgroupGeneratorFails(usize),
    #[error("element order overflows u64")]
    OrderOverflow,
    #[error("coset budget must be at least 1")]
    ZeroBudget,
    #[error("order claim: {0}")]
    Claim(String),
    #[error("witness file {path}: {msg}")]
    WitnessFile { path: String, msg: String },
}
