//! Finite presentations and their presentation-level deficiency invariants.

mod profile;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{Order, Prime};
use crate::enumeration::EnumerationError;
use crate::words::{Alphabet, Word, WordError};

pub use profile::{
    claims_to_json, classify, derive_p, inflate, load_claims, profile_relators, ClaimFileEntry,
    ClaimTarget, Classification, Inflation, RelatorClaim, RelatorClass, RelatorProfile,
};

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("relator {0} is the empty word")]
    EmptyRelator(usize),
    #[error("expected {expected} orders, one per relator, got {got}")]
    OrderCount { expected: usize, got: usize },
    #[error("order {order} for relator {relator} is not positive")]
    NonPositiveOrder { relator: usize, order: u64 },
    #[error("claim refers to relator {relator}, but the presentation has {count}")]
    ClaimIndex { relator: usize, count: usize },
    #[error("inconsistent claim on relator {relator}: {msg}")]
    InconsistentClaim { relator: usize, msg: String },
    #[error("relator {0} is a proper p-power but carries no decisive order claim for its p-root")]
    Unclassified(usize),
    #[error("inflation needs def_p(P) > 1, got {0}")]
    InflationGate(String),
    #[error("inflation needs at least one relator in S3")]
    NothingToInflate,
    #[error("claims file: {0}")]
    Claims(String),
}

/// `⟨X | R⟩`: an alphabet and an ordered multiset of relators. Relators are
/// kept exactly as given; nothing is deduplicated or simplified.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for r in &relators {
            r.check_alphabet(alphabet.len())?;
        }
        Ok(Presentation { alphabet, relators })
    }

    /// Convenience constructor from generator names and relator text.
    pub fn from_strs(gens: &[&str], relators: &[&str]) -> Result<Self, PresentationError> {
        let alphabet = Alphabet::new(gens.iter().copied())?;
        let relators = relators
            .iter()
            .map(|r| alphabet.parse(r))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, relators)
    }

    /// The free group on `names`.
    pub fn free(alphabet: Alphabet) -> Self {
        Presentation { alphabet, relators: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        self.alphabet.parse(text)
    }

    pub fn word_text(&self, w: &Word) -> String {
        w.display(&self.alphabet).to_string()
    }

    /// `def(Q) = n - |R|`
    pub fn deficiency(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.generator_count() as i64 - self.relators.len() as i64))
    }

    /// `def_p(Q) = n - Σ p^{-ν_p(r)}`
    pub fn p_deficiency(&self, p: Prime) -> Result<BigRational, PresentationError> {
        let mut sum = BigRational::zero();
        for (i, r) in self.relators.iter().enumerate() {
            let v = r.p_valuation(p).map_err(|_| PresentationError::EmptyRelator(i))?;
            sum += BigRational::new(BigInt::one(), p.power(v.exponent));
        }
        Ok(self.rank_rational() - sum)
    }

    /// `rdef(Q) = n - Σ 1/k_i`, one order per relator.
    pub fn residual_deficiency(&self, orders: &[Order]) -> Result<BigRational, PresentationError> {
        if orders.len() != self.relators.len() {
            return Err(PresentationError::OrderCount {
                expected: self.relators.len(),
                got: orders.len(),
            });
        }
        let mut sum = BigRational::zero();
        for (i, o) in orders.iter().enumerate() {
            if let Order::Finite(0) = o {
                return Err(PresentationError::NonPositiveOrder { relator: i, order: 0 });
            }
            sum += o.reciprocal();
        }
        Ok(self.rank_rational() - sum)
    }

    fn rank_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.generator_count()))
    }

    /// Same generators, relators restricted to the given indices (in order).
    pub fn with_relators(&self, keep: impl IntoIterator<Item = usize>) -> Presentation {
        Presentation {
            alphabet: self.alphabet.clone(),
            relators: keep.into_iter().map(|i| self.relators[i].clone()).collect(),
        }
    }

    pub fn replace_relators(&self, relators: Vec<Word>) -> Result<Presentation, PresentationError> {
        Presentation::new(self.alphabet.clone(), relators)
    }

    /// Is `w` a cyclic permutation of a relator or of a relator's inverse?
    /// Such words are trivial in the group.
    pub fn is_relator_conjugate(&self, w: &Word) -> bool {
        let (core, _) = w.cyclic_reduce();
        if core.is_empty() {
            return true;
        }
        self.relators.iter().any(|r| {
            let (rc, _) = r.cyclic_reduce();
            is_cyclic_permutation(&core, &rc) || is_cyclic_permutation(&core, &rc.inverse())
        })
    }

    /// The text format: `gens:` line, then one `rel:` line per relator.
    pub fn to_text(&self) -> String {
        self.to_text_with_header(&[])
    }

    pub fn to_text_with_header(&self, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            out.push_str("# ");
            out.push_str(h);
            out.push('\n');
        }
        out.push_str("gens:");
        for n in self.alphabet.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        for r in &self.relators {
            out.push_str("rel: ");
            out.push_str(&self.word_text(r));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |msg: &str| PresentationError::Syntax { line: line_no, msg: msg.to_string() };
            if let Some(rest) = line.strip_prefix("gens:") {
                if alphabet.is_some() {
                    return Err(syntax("duplicate gens line"));
                }
                alphabet = Some(Alphabet::new(rest.split_whitespace()).map_err(|e| syntax(&e.to_string()))?);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let a = alphabet.as_ref().ok_or_else(|| syntax("rel before gens"))?;
                relators.push(a.parse(rest).map_err(|e| syntax(&e.to_string()))?);
            } else {
                return Err(syntax("expected 'gens:', 'rel:' or a '#' comment"));
            }
        }
        let alphabet = alphabet.ok_or(PresentationError::Syntax { line: 0, msg: "missing gens line".into() })?;
        Presentation::new(alphabet, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.alphabet.names().join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        write!(f, "{} >", rels.join(", "))
    }
}

fn is_cyclic_permutation(a: &Word, b: &Word) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (a, b) = (a.letters(), b.letters());
    (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b.iter()))
}
