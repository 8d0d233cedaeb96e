//! Relator root data, order claims attached to it, the three-way relator
//! classification and the presentations derived from it.

use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Presentation, PresentationError};
use crate::arith::{fmt_fraction, Prime};
use crate::enumeration::{ClaimKind, CosetTable, Evidence, EvidenceRecord, OrderClaim};
use crate::words::Word;

/// Which root of a relator a claim is about: the minimal root `u` (order
/// `k`) or the minimal p-root `w` (order `l`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimTarget {
    Root,
    PRoot,
}

/// An order claim bound to one root of one relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorClaim {
    pub relator: usize,
    pub target: ClaimTarget,
    pub claim: OrderClaim,
}

/// One entry of a claims file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimFileEntry {
    pub relator: usize,
    pub target: ClaimTarget,
    pub kind: ClaimKind,
    pub value: u64,
    pub evidence: EvidenceRecord,
}

impl RelatorClaim {
    /// Builds a claim on the chosen root of relator `relator`; the word and
    /// its cap (`m` or `p^a`) come from the relator itself.
    pub fn new(
        q: &Presentation,
        p: Prime,
        relator: usize,
        target: ClaimTarget,
        kind: ClaimKind,
        value: u64,
        evidence: Evidence,
    ) -> Result<Self, PresentationError> {
        let r = q
            .relators()
            .get(relator)
            .ok_or(PresentationError::ClaimIndex { relator, count: q.relators().len() })?;
        let (word, cap) = root_and_cap(r, p, target).map_err(|_| PresentationError::EmptyRelator(relator))?;
        Ok(RelatorClaim { relator, target, claim: OrderClaim { word, kind, value, cap: Some(cap), evidence } })
    }

    pub fn asserted(
        q: &Presentation,
        p: Prime,
        relator: usize,
        target: ClaimTarget,
        kind: ClaimKind,
        value: u64,
        note: &str,
    ) -> Result<Self, PresentationError> {
        let evidence = Evidence::Asserted { note: note.to_string() };
        RelatorClaim::new(q, p, relator, target, kind, value, evidence)
    }

    pub fn to_entry(&self, q: &Presentation) -> ClaimFileEntry {
        let record = self.claim.to_record(q);
        ClaimFileEntry {
            relator: self.relator,
            target: self.target,
            kind: record.kind,
            value: record.value,
            evidence: record.evidence,
        }
    }
}

fn root_and_cap(r: &Word, p: Prime, target: ClaimTarget) -> Result<(Word, u64), crate::words::WordError> {
    let root = r.primitive_root()?;
    Ok(match target {
        ClaimTarget::Root => (root.root, root.multiplicity),
        ClaimTarget::PRoot => {
            let v = root.p_valuation(p);
            (v.p_root, root.multiplicity / p.split(root.multiplicity).1)
        }
    })
}

/// Parses a claims file (a JSON array). Witness files are resolved relative
/// to `base`.
pub fn load_claims(
    q: &Presentation,
    p: Prime,
    json: &str,
    base: Option<&Path>,
) -> Result<Vec<RelatorClaim>, PresentationError> {
    let entries: Vec<ClaimFileEntry> =
        serde_json::from_str(json).map_err(|e| PresentationError::Claims(e.to_string()))?;
    entries
        .iter()
        .map(|e| {
            let evidence = e.evidence.resolve(q, base)?;
            RelatorClaim::new(q, p, e.relator, e.target, e.kind, e.value, evidence)
        })
        .collect()
}

pub fn claims_to_json(q: &Presentation, claims: &[RelatorClaim]) -> String {
    let entries: Vec<ClaimFileEntry> = claims.iter().map(|c| c.to_entry(q)).collect();
    serde_json::to_string_pretty(&entries).expect("claims serialize")
}

/// Root data of one relator with its attached claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorProfile {
    pub relator: Word,
    pub root: Word,
    pub multiplicity: u64,
    pub p_root: Word,
    pub p_exponent: u32,
    /// Claim on the order `k` of the root.
    pub k: Option<OrderClaim>,
    /// Claim on the order `l` of the p-root.
    pub l: Option<OrderClaim>,
}

impl RelatorProfile {
    /// `p^a`
    pub fn p_part(&self, p: Prime) -> u64 {
        self.multiplicity / p.split(self.multiplicity).1
    }
}

/// Computes roots and valuations of every relator and attaches `claims`.
///
/// Claims whose cap is 1 are filled in automatically (a primitive relator's
/// root, or the p-root of a relator that is not a proper p-power), witnessed
/// by the one-coset table.
pub fn profile_relators(
    q: &Presentation,
    p: Prime,
    claims: &[RelatorClaim],
) -> Result<Vec<RelatorProfile>, PresentationError> {
    let mut profiles = Vec::with_capacity(q.relators().len());
    for (i, r) in q.relators().iter().enumerate() {
        let root = r.primitive_root().map_err(|_| PresentationError::EmptyRelator(i))?;
        let v = root.p_valuation(p);
        profiles.push(RelatorProfile {
            relator: r.clone(),
            root: root.root,
            multiplicity: root.multiplicity,
            p_root: v.p_root,
            p_exponent: v.exponent,
            k: None,
            l: None,
        });
    }
    for c in claims {
        let count = profiles.len();
        let prof = profiles
            .get_mut(c.relator)
            .ok_or(PresentationError::ClaimIndex { relator: c.relator, count })?;
        let inconsistent = |msg: String| PresentationError::InconsistentClaim { relator: c.relator, msg };
        let (expected, cap, slot) = match c.target {
            ClaimTarget::Root => (&prof.root, prof.multiplicity, &mut prof.k),
            ClaimTarget::PRoot => {
                let cap = prof.multiplicity / p.split(prof.multiplicity).1;
                (&prof.p_root, cap, &mut prof.l)
            }
        };
        if &c.claim.word != expected {
            return Err(inconsistent("claim word is not the relator's root".into()));
        }
        if slot.is_some() {
            return Err(inconsistent(format!("duplicate {:?} claim", c.target)));
        }
        match c.claim.kind {
            ClaimKind::Exact if cap % c.claim.value != 0 => {
                return Err(inconsistent(format!("order {} does not divide {cap}", c.claim.value)))
            }
            ClaimKind::AtLeast if c.claim.value > cap => {
                return Err(inconsistent(format!("order at least {} exceeds {cap}", c.claim.value)))
            }
            _ => {}
        }
        if c.claim.cap != Some(cap) {
            return Err(inconsistent(format!("claim cap should be {cap}")));
        }
        c.claim.verify(q).map_err(|e| inconsistent(e.to_string()))?;
        *slot = Some(c.claim.clone());
    }
    let trivial = CosetTable::trivial(q.generator_count());
    for (i, prof) in profiles.iter_mut().enumerate() {
        let unit = |word: &Word| OrderClaim {
            word: word.clone(),
            kind: ClaimKind::Exact,
            value: 1,
            cap: Some(1),
            evidence: Evidence::Witness(trivial.clone()),
        };
        if prof.k.is_none() && prof.multiplicity == 1 {
            prof.k = Some(unit(&prof.root));
        }
        if prof.l.is_none() && prof.p_exponent == 0 {
            prof.l = Some(unit(&prof.p_root));
        }
        // w = u^d, so o(w) = o(u) / gcd(o(u), d)
        if let (Some(k), Some(l)) = (&prof.k, &prof.l) {
            if k.kind == ClaimKind::Exact && l.kind == ClaimKind::Exact {
                let d = p.split(prof.multiplicity).1;
                if l.value != k.value / k.value.gcd(&d) {
                    return Err(PresentationError::InconsistentClaim {
                        relator: i,
                        msg: format!("k = {} forces l = {}, claimed {}", k.value, k.value / k.value.gcd(&d), l.value),
                    });
                }
            }
        }
    }
    Ok(profiles)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatorClass {
    /// Not a proper p-power.
    S1,
    /// A p^a-th power whose p-root has order exactly p^a.
    S2,
    /// A p^b-th power whose p-root has order less than p^b.
    S3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub prime: Prime,
    pub classes: Vec<RelatorClass>,
    /// The p-root claim each decision rests on (`None` for S1).
    pub evidence: Vec<Option<OrderClaim>>,
}

impl Classification {
    pub fn indices(&self, class: RelatorClass) -> Vec<usize> {
        (0..self.classes.len()).filter(|&i| self.classes[i] == class).collect()
    }

    pub fn s1(&self) -> Vec<usize> {
        self.indices(RelatorClass::S1)
    }

    pub fn s2(&self) -> Vec<usize> {
        self.indices(RelatorClass::S2)
    }

    pub fn s3(&self) -> Vec<usize> {
        self.indices(RelatorClass::S3)
    }

    /// The claims that were asserted rather than witnessed.
    pub fn assumptions(&self) -> Vec<(usize, &OrderClaim)> {
        self.evidence
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().filter(|c| !c.is_witnessed()).map(|c| (i, c)))
            .collect()
    }
}

/// Sorts relators into S1, S2 and S3 from their p-root claims.
pub fn classify(profiles: &[RelatorProfile], p: Prime) -> Result<Classification, PresentationError> {
    let mut classes = Vec::with_capacity(profiles.len());
    let mut evidence = Vec::with_capacity(profiles.len());
    for (i, prof) in profiles.iter().enumerate() {
        if prof.p_exponent == 0 {
            classes.push(RelatorClass::S1);
            evidence.push(None);
            continue;
        }
        let cap = prof.p_part(p);
        let l = prof.l.as_ref().ok_or(PresentationError::Unclassified(i))?;
        let class = match l.kind {
            ClaimKind::Exact if l.value == cap => RelatorClass::S2,
            ClaimKind::Exact => RelatorClass::S3,
            ClaimKind::StrictlyLess if l.value <= cap => RelatorClass::S3,
            ClaimKind::AtLeast if l.value == cap => RelatorClass::S2,
            _ => return Err(PresentationError::Unclassified(i)),
        };
        classes.push(class);
        evidence.push(Some(l.clone()));
    }
    Ok(Classification { prime: p, classes, evidence })
}

/// `P`: the relators in S1 and S2, in their original order.
pub fn derive_p(q: &Presentation, c: &Classification) -> Presentation {
    q.with_relators((0..q.relators().len()).filter(|&i| c.classes[i] != RelatorClass::S3))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inflation {
    pub presentation: Presentation,
    /// `def_p(P) - 1`
    pub epsilon: BigRational,
    /// Uniform exponent: every S3 relator becomes its p-root to the `p^b'`.
    pub b_prime: u32,
}

/// Replaces each S3 relator by its p-root raised to `p^b'`, with `b' >= 1`
/// minimal such that `|S3| / p^b' < def_p(P) - 1`.
pub fn inflate(q: &Presentation, c: &Classification, p: Prime) -> Result<Inflation, PresentationError> {
    let s3 = c.s3();
    if s3.is_empty() {
        return Err(PresentationError::NothingToInflate);
    }
    let epsilon = derive_p(q, c).p_deficiency(p)? - BigRational::one();
    if epsilon <= BigRational::zero() {
        return Err(PresentationError::InflationGate(fmt_fraction(&(epsilon + BigRational::one()))));
    }
    let count = BigInt::from(s3.len());
    let mut b_prime = 1u32;
    while BigRational::new(count.clone(), p.power(b_prime)) >= epsilon {
        b_prime += 1;
    }
    let exponent = p
        .checked_power(b_prime)
        .and_then(|e| i64::try_from(e).ok())
        .ok_or_else(|| PresentationError::InflationGate("inflation exponent overflows".into()))?;
    let mut relators = q.relators().to_vec();
    for &i in &s3 {
        let v = relators[i].p_valuation(p).map_err(|_| PresentationError::EmptyRelator(i))?;
        relators[i] = v.p_root.pow(exponent);
    }
    Ok(Inflation { presentation: q.replace_relators(relators)?, epsilon, b_prime })
}
