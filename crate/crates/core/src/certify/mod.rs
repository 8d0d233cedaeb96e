//! Gradient scans and theorem-gate checkers with replayable certificates.

mod certificate;
mod gradient;

use thiserror::Error;

use crate::presentations::PresentationError;
use crate::rewriting::RewriteError;

pub use certificate::{
    certify, certify_p_large, certify_pdef_one, certify_rg_positive, verify_certificate, Basis, Certificate,
    Conclusion, InflatedRecord, Mode, Outcome, Payload, Status,
};
pub use gradient::{
    check_supermultiplicativity, gradient_scan, Comparison, Family, GradientRecord, GradientScan,
    SupermultiplicativityReport,
};

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Enumeration(#[from] crate::enumeration::EnumerationError),
    #[error("def_p(Q) must be exactly 1, got {0}")]
    NotPdefOne(String),
    #[error("relator {relator}: {msg}")]
    IncompleteClaims { relator: usize, msg: String },
    #[error("malformed certificate: {0}")]
    Malformed(String),
}
