//! Order claims about the image of a word in the residual quotient, and the
//! finite-quotient scan that produces witnessed lower bounds.

use std::ops::ControlFlow;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{low_index_visit, word_order_in_quotient, CosetTable, EnumerationError, WitnessQuotient};
use crate::presentations::Presentation;
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    Exact,
    AtLeast,
    StrictlyLess,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// A finite quotient, as a coset table, in which the image of the word
    /// can be measured.
    Witness(CosetTable),
    /// Supplied by the user or by a construction; not machine-checked.
    Asserted { note: String },
}

/// An assertion about the order of the image of `word` in the residual
/// quotient `G/R_G`.
///
/// `cap`, when present, records that `word^cap` is trivial in `G` because it
/// is a cyclic permutation of a relator (or its inverse); the true order then
/// divides `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderClaim {
    pub word: Word,
    pub kind: ClaimKind,
    pub value: u64,
    pub cap: Option<u64>,
    pub evidence: Evidence,
}

impl OrderClaim {
    pub fn asserted(word: Word, kind: ClaimKind, value: u64, cap: Option<u64>, note: impl Into<String>) -> Self {
        OrderClaim { word, kind, value, cap, evidence: Evidence::Asserted { note: note.into() } }
    }

    pub fn is_witnessed(&self) -> bool {
        matches!(self.evidence, Evidence::Witness(_))
    }

    /// Checks internal consistency, the cap, and (for witnessed claims) the
    /// witness table against `q`.
    pub fn verify(&self, q: &Presentation) -> Result<(), EnumerationError> {
        let fail = |msg: String| Err(EnumerationError::Claim(msg));
        self.word.check_alphabet(q.generator_count())?;
        if self.value == 0 {
            return fail("claimed order must be positive".into());
        }
        if let Some(cap) = self.cap {
            if cap == 0 {
                return fail("cap must be positive".into());
            }
            let power = i64::try_from(cap).map_err(|_| EnumerationError::Claim("cap too large".into()))?;
            if !q.is_relator_conjugate(&self.word.pow(power)) {
                return fail(format!("word^{cap} is not a relator up to cyclic permutation"));
            }
            match self.kind {
                ClaimKind::Exact if cap % self.value != 0 => {
                    return fail(format!("exact order {} does not divide cap {cap}", self.value))
                }
                ClaimKind::AtLeast if self.value > cap => {
                    return fail(format!("lower bound {} exceeds cap {cap}", self.value))
                }
                _ => {}
            }
        }
        if self.kind == ClaimKind::StrictlyLess && self.value < 2 {
            return fail("no order is strictly less than 1".into());
        }
        let Evidence::Witness(t) = &self.evidence else {
            return Ok(());
        };
        t.validate(q)?;
        let order = word_order_in_quotient(t, &self.word)?;
        match self.kind {
            ClaimKind::AtLeast if order >= self.value => Ok(()),
            ClaimKind::AtLeast => fail(format!("witness gives order {order} < {}", self.value)),
            ClaimKind::Exact if self.cap != Some(self.value) => {
                fail("an exact witnessed claim needs a cap equal to its value".into())
            }
            ClaimKind::Exact if order == self.value => Ok(()),
            ClaimKind::Exact => fail(format!("witness gives order {order}, claimed {}", self.value)),
            ClaimKind::StrictlyLess => fail("an upper bound cannot be witnessed by one quotient".into()),
        }
    }

    pub fn to_record(&self, q: &Presentation) -> ClaimRecord {
        ClaimRecord {
            word: q.word_text(&self.word),
            kind: self.kind,
            value: self.value,
            cap: self.cap,
            evidence: match &self.evidence {
                Evidence::Witness(t) => {
                    EvidenceRecord::Witness { quotient: QuotientRef::Inline(t.to_witness(q.alphabet())) }
                }
                Evidence::Asserted { note } => EvidenceRecord::Asserted { note: note.clone() },
            },
        }
    }

    /// Rebuilds a claim; witness files are resolved relative to `base`.
    pub fn from_record(q: &Presentation, r: &ClaimRecord, base: Option<&Path>) -> Result<Self, EnumerationError> {
        let word = q.parse_word(&r.word)?;
        Ok(OrderClaim {
            word,
            kind: r.kind,
            value: r.value,
            cap: r.cap,
            evidence: r.evidence.resolve(q, base)?,
        })
    }
}

/// Serialized form of an [`OrderClaim`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimRecord {
    pub word: String,
    pub kind: ClaimKind,
    pub value: u64,
    #[serde(default)]
    pub cap: Option<u64>,
    pub evidence: EvidenceRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EvidenceRecord {
    Witness { quotient: QuotientRef },
    Asserted { note: String },
}

/// A witness quotient given inline or as a path to a witness file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuotientRef {
    Inline(WitnessQuotient),
    File(String),
}

impl EvidenceRecord {
    pub fn resolve(&self, q: &Presentation, base: Option<&Path>) -> Result<Evidence, EnumerationError> {
        match self {
            EvidenceRecord::Asserted { note } => Ok(Evidence::Asserted { note: note.clone() }),
            EvidenceRecord::Witness { quotient: QuotientRef::Inline(w) } => Ok(Evidence::Witness(w.load(q)?)),
            EvidenceRecord::Witness { quotient: QuotientRef::File(path) } => {
                let full = match base {
                    Some(b) => b.join(path),
                    None => Path::new(path).to_path_buf(),
                };
                let err = |msg: String| EnumerationError::WitnessFile { path: path.clone(), msg };
                let text = std::fs::read_to_string(&full).map_err(|e| err(e.to_string()))?;
                let w: WitnessQuotient = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
                Ok(Evidence::Witness(w.load(q)?))
            }
        }
    }
}

/// Scans the finite quotients given by subgroups of index at most
/// `max_index` for the largest order of the image of `w`.
///
/// The result is `AtLeast` with the first table attaining the best order, or
/// `Exact` when that order reaches `p_cap` and `w^p_cap` is a relator.
pub fn order_bound(
    q: &Presentation,
    w: &Word,
    p_cap: Option<u64>,
    max_index: usize,
) -> Result<OrderClaim, EnumerationError> {
    w.check_alphabet(q.generator_count())?;
    let cap = p_cap.filter(|&c| {
        c >= 1 && i64::try_from(c).is_ok_and(|k| q.is_relator_conjugate(&w.pow(k)))
    });
    let trivial = CosetTable::trivial(q.generator_count());
    if w.is_empty() || cap == Some(1) {
        return Ok(OrderClaim { word: w.clone(), kind: ClaimKind::Exact, value: 1, cap: Some(1), evidence: Evidence::Witness(trivial) });
    }
    let mut best = (1u64, trivial);
    let mut overflow = false;
    let _ = low_index_visit(q, max_index, |t| {
        match word_order_in_quotient(t, w) {
            Ok(o) if o > best.0 => best = (o, t.clone()),
            Ok(_) => {}
            Err(_) => overflow = true,
        }
        if Some(best.0) == cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if overflow {
        return Err(EnumerationError::OrderOverflow);
    }
    let (value, table) = best;
    let kind = if Some(value) == cap { ClaimKind::Exact } else { ClaimKind::AtLeast };
    Ok(OrderClaim { word: w.clone(), kind, value, cap, evidence: Evidence::Witness(table) })
}
