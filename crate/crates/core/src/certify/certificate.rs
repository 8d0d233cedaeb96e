//! Hypothesis checkers that emit replayable certificates.
//!
//! A certificate records the source presentation, the prime, every order
//! claim it rests on and the numbers the gate was decided by. Verification
//! re-runs the same checker from the recorded inputs and demands a
//! byte-identical result, so no field can be edited in isolation.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CertifyError;
use crate::arith::{fmt_fraction, Order, Prime};
use crate::enumeration::ClaimKind;
use crate::presentations::{
    classify, derive_p, inflate, profile_relators, ClaimFileEntry, ClaimTarget, Presentation, RelatorClaim,
    RelatorClass, RelatorProfile,
};

/// The conclusions a certificate can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conclusion {
    #[serde(rename = "RGPositive")]
    RgPositive,
    PLarge,
    Large,
    FiniteIndexZSurjection,
    FiniteIndexPLargeSubgroup,
    NoTau,
    NoT,
    NonAmenable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Unconditional,
    Conditional,
}

/// Which checker produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `def_p(P) > 1` gives positive rank gradient.
    Rg,
    /// `def_p(P) > 1` gives p-largeness.
    Plarge,
    /// The three cases of `def_p(Q) = 1`.
    PdefOne,
}

/// The rule a conclusion rests on: a short identifier and its formal
/// statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Basis {
    pub section: String,
    pub quote: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InflatedRecord {
    pub presentation: String,
    pub def_p: String,
    pub epsilon: String,
    pub b_prime: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Payload {
    /// The presentation `Q` in text format.
    pub presentation: String,
    /// `P = <X | S1 ∪ S2>` for the `def_p(P)` gates.
    pub derived_presentation: Option<String>,
    pub classes: Option<Vec<RelatorClass>>,
    /// `def_p(P)` for the `def_p(P)` gates, `def_p(Q)` for the `def_p(Q) = 1`
    /// cases.
    pub def_p: String,
    pub inflated: Option<InflatedRecord>,
    pub branch: Option<u8>,
    /// `n - Σ 1/k_i` from the root claims (a lower bound where a claim is
    /// only a lower bound on `k_i`).
    pub rdef: Option<String>,
    /// Claims backed by a finite quotient.
    pub witnesses: Vec<ClaimFileEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub claim: Conclusion,
    pub prime: u64,
    pub mode: Mode,
    pub status: Status,
    pub basis: Basis,
    /// Claims taken on trust.
    pub assumptions: Vec<ClaimFileEntry>,
    pub payload: Payload,
    /// SHA-256 of the canonical JSON of every other field.
    pub digest: String,
}

impl Certificate {
    fn sealed(mut self) -> Self {
        self.digest = String::new();
        let canonical = serde_json::to_value(&self).expect("certificate serializes").to_string();
        self.digest = hex::encode(Sha256::digest(canonical.as_bytes()));
        self
    }

    /// The canonical file form; [`verify_certificate`] accepts nothing else.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

/// Result of a checker: certificates, or the hypothesis that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Certified(Vec<Certificate>),
    NotCertified { failed: String, detail: String },
}

impl Outcome {
    pub fn certificates(&self) -> &[Certificate] {
        match self {
            Outcome::Certified(c) => c,
            Outcome::NotCertified { .. } => &[],
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Outcome::Certified(_))
    }
}

fn basis(c: Conclusion, mode: Mode) -> Basis {
    let (section, quote) = match (mode, c) {
        (Mode::Rg, _) => ("pdef-gate/rank-gradient", "P = <X | S1 u S2>, def_p(P) > 1  =>  RG(G) > 0"),
        (Mode::Plarge, Conclusion::PLarge) => (
            "pdef-gate/p-large",
            "G finitely presented, P = <X | S1 u S2>, def_p(P) > 1  =>  G is p-large",
        ),
        (Mode::Plarge, _) => ("corollary/p-large", "G p-large  =>  G large  =>  no (tau), no (T), non-amenable"),
        (Mode::PdefOne, Conclusion::PLarge) | (Mode::PdefOne, Conclusion::RgPositive) => (
            "pdef-one/case-1-or-2",
            "def_p(Q) = 1 and (l_i < p^a_i for some i, or l_i = p^a_i < k_i for some i)  =>  RG(G) > 0; in the first case G is p-large",
        ),
        (Mode::PdefOne, Conclusion::Large) | (Mode::PdefOne, Conclusion::FiniteIndexPLargeSubgroup) => (
            "pdef-one/case-2",
            "def_p(Q) = 1, l_i = p^a_i for all i, l_j < k_j for some j, rdef(Q) > 1  =>  some finite index normal H has def_p(H) > 1, so G is large",
        ),
        (Mode::PdefOne, Conclusion::FiniteIndexZSurjection) => (
            "pdef-one/case-3",
            "def_p(Q) = 1, k_i = l_i = p^a_i for all i  =>  some finite index subgroup of G maps onto Z",
        ),
        (Mode::PdefOne, Conclusion::NonAmenable) => (
            "pdef-one/corollary",
            "def_p(Q) = 1 outside the case k_i = l_i = p^a_i for all i  =>  G non-amenable",
        ),
        (Mode::PdefOne, _) => (
            "pdef-one/corollary",
            "def_p(Q) = 1  =>  G has neither (tau) nor (T)",
        ),
    };
    Basis { section: section.into(), quote: quote.into() }
}

struct Inputs<'a> {
    q: &'a Presentation,
    p: Prime,
    profiles: Vec<RelatorProfile>,
}

impl<'a> Inputs<'a> {
    fn new(q: &'a Presentation, p: Prime, claims: &[RelatorClaim]) -> Result<Self, CertifyError> {
        Ok(Inputs { q, p, profiles: profile_relators(q, p, claims)? })
    }

    /// Every claim attached to the profiles, split into witnessed and
    /// asserted, in relator order with the root claim first.
    fn claim_entries(&self, only_l: bool) -> (Vec<ClaimFileEntry>, Vec<ClaimFileEntry>) {
        let mut witnesses = Vec::new();
        let mut assumptions = Vec::new();
        for (i, prof) in self.profiles.iter().enumerate() {
            let pairs = [(ClaimTarget::Root, &prof.k), (ClaimTarget::PRoot, &prof.l)];
            for (target, claim) in pairs {
                if only_l && target == ClaimTarget::Root {
                    continue;
                }
                let Some(c) = claim else { continue };
                let rc = RelatorClaim { relator: i, target, claim: c.clone() };
                let entry = rc.to_entry(self.q);
                if c.is_witnessed() {
                    witnesses.push(entry);
                } else {
                    assumptions.push(entry);
                }
            }
        }
        (witnesses, assumptions)
    }

    fn emit(&self, mode: Mode, conclusions: &[Conclusion], payload: Payload, assumptions: Vec<ClaimFileEntry>) -> Outcome {
        let status = if assumptions.is_empty() { Status::Unconditional } else { Status::Conditional };
        Outcome::Certified(
            conclusions
                .iter()
                .map(|&c| {
                    Certificate {
                        claim: c,
                        prime: self.p.get(),
                        mode,
                        status,
                        basis: basis(c, mode),
                        assumptions: assumptions.clone(),
                        payload: payload.clone(),
                        digest: String::new(),
                    }
                    .sealed()
                })
                .collect(),
        )
    }
}

/// `def_p(P) > 1` gate for positive rank gradient.
pub fn certify_rg_positive(q: &Presentation, p: Prime, claims: &[RelatorClaim]) -> Result<Outcome, CertifyError> {
    certify_gate(q, p, claims, Mode::Rg)
}

/// `def_p(P) > 1` gate for p-largeness; the payload carries the inflated
/// presentation when S3 is nonempty.
pub fn certify_p_large(q: &Presentation, p: Prime, claims: &[RelatorClaim]) -> Result<Outcome, CertifyError> {
    certify_gate(q, p, claims, Mode::Plarge)
}

fn certify_gate(q: &Presentation, p: Prime, claims: &[RelatorClaim], mode: Mode) -> Result<Outcome, CertifyError> {
    let inputs = Inputs::new(q, p, claims)?;
    let c = classify(&inputs.profiles, p)?;
    let derived = derive_p(q, &c);
    let def_p = derived.p_deficiency(p)?;
    if def_p <= BigRational::one() {
        return Ok(Outcome::NotCertified {
            failed: "def_p(P) > 1".into(),
            detail: format!("def_p(P) = {}", fmt_fraction(&def_p)),
        });
    }
    let inflated = if mode == Mode::Plarge && !c.s3().is_empty() {
        let inf = inflate(q, &c, p)?;
        Some(InflatedRecord {
            def_p: fmt_fraction(&inf.presentation.p_deficiency(p)?),
            presentation: inf.presentation.to_text(),
            epsilon: fmt_fraction(&inf.epsilon),
            b_prime: inf.b_prime,
        })
    } else {
        None
    };
    let (witnesses, assumptions) = inputs.claim_entries(true);
    let payload = Payload {
        presentation: q.to_text(),
        derived_presentation: Some(derived.to_text()),
        classes: Some(c.classes.clone()),
        def_p: fmt_fraction(&def_p),
        inflated,
        branch: None,
        rdef: None,
        witnesses,
    };
    let conclusions: &[Conclusion] = match mode {
        Mode::Rg => &[Conclusion::RgPositive],
        _ => &[Conclusion::PLarge, Conclusion::NoTau, Conclusion::NoT, Conclusion::NonAmenable],
    };
    Ok(inputs.emit(mode, conclusions, payload, assumptions))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Less,
    Equal,
    Greater,
}

/// How a claimed order compares with `target`, if the claim decides it.
fn compare(kind: ClaimKind, value: u64, target: u64) -> Option<Cmp> {
    match kind {
        ClaimKind::Exact => Some(match value.cmp(&target) {
            std::cmp::Ordering::Less => Cmp::Less,
            std::cmp::Ordering::Equal => Cmp::Equal,
            std::cmp::Ordering::Greater => Cmp::Greater,
        }),
        ClaimKind::AtLeast if value > target => Some(Cmp::Greater),
        ClaimKind::StrictlyLess if value <= target => Some(Cmp::Less),
        _ => None,
    }
}

/// The three cases of `def_p(Q) = 1`, decided from the root (`k`) and
/// p-root (`l`) claims of every relator.
pub fn certify_pdef_one(q: &Presentation, p: Prime, claims: &[RelatorClaim]) -> Result<Outcome, CertifyError> {
    let def_p = q.p_deficiency(p)?;
    if def_p != BigRational::one() {
        return Err(CertifyError::NotPdefOne(fmt_fraction(&def_p)));
    }
    let inputs = Inputs::new(q, p, claims)?;
    let incomplete = |relator: usize, msg: &str| CertifyError::IncompleteClaims { relator, msg: msg.into() };
    let mut l_cmp = Vec::new();
    for (i, prof) in inputs.profiles.iter().enumerate() {
        let l = prof.l.as_ref().ok_or_else(|| incomplete(i, "no claim on the p-root order l"))?;
        let c = compare(l.kind, l.value, prof.p_part(p))
            .filter(|c| *c != Cmp::Greater)
            .ok_or_else(|| incomplete(i, "the l claim does not decide l < p^a or l = p^a"))?;
        l_cmp.push(c);
    }
    let mut k_cmp = Vec::new();
    let mut orders = Vec::new();
    for (i, prof) in inputs.profiles.iter().enumerate() {
        let k = prof.k.as_ref().ok_or_else(|| incomplete(i, "no claim on the root order k"))?;
        k_cmp.push(compare(k.kind, k.value, prof.p_part(p)));
        orders.push(match k.kind {
            ClaimKind::Exact | ClaimKind::AtLeast => Some(Order::Finite(k.value)),
            ClaimKind::StrictlyLess => None,
        });
    }
    let rdef = match orders.iter().copied().collect::<Option<Vec<_>>>() {
        Some(o) => Some(q.residual_deficiency(&o)?),
        None => None,
    };
    let (branch, conclusions): (u8, &[Conclusion]) = if l_cmp.contains(&Cmp::Less) {
        (1, &[Conclusion::PLarge, Conclusion::RgPositive, Conclusion::NoTau, Conclusion::NoT, Conclusion::NonAmenable])
    } else if k_cmp.contains(&Some(Cmp::Greater)) {
        let gate = rdef.as_ref().is_some_and(|r| *r > BigRational::one());
        if !gate {
            return Ok(Outcome::NotCertified {
                failed: "rdef(Q) > 1".into(),
                detail: match &rdef {
                    Some(r) => format!("rdef(Q) = {}", fmt_fraction(r)),
                    None => "rdef(Q) cannot be bounded from the k claims".into(),
                },
            });
        }
        (
            2,
            &[
                Conclusion::Large,
                Conclusion::RgPositive,
                Conclusion::FiniteIndexPLargeSubgroup,
                Conclusion::NoTau,
                Conclusion::NoT,
                Conclusion::NonAmenable,
            ],
        )
    } else if k_cmp.iter().all(|c| *c == Some(Cmp::Equal)) {
        (3, &[Conclusion::FiniteIndexZSurjection, Conclusion::NoTau, Conclusion::NoT])
    } else {
        let i = k_cmp.iter().position(|c| *c != Some(Cmp::Equal)).expect("some k undecided");
        return Err(incomplete(i, "the k claim does not decide k = p^a or k > p^a"));
    };
    let (witnesses, assumptions) = inputs.claim_entries(false);
    let payload = Payload {
        presentation: q.to_text(),
        derived_presentation: None,
        classes: None,
        def_p: fmt_fraction(&def_p),
        inflated: None,
        branch: Some(branch),
        rdef: rdef.as_ref().map(fmt_fraction),
        witnesses,
    };
    Ok(inputs.emit(Mode::PdefOne, conclusions, payload, assumptions))
}

/// Runs the checker named by `mode`.
pub fn certify(q: &Presentation, p: Prime, claims: &[RelatorClaim], mode: Mode) -> Result<Outcome, CertifyError> {
    match mode {
        Mode::Rg => certify_rg_positive(q, p, claims),
        Mode::Plarge => certify_p_large(q, p, claims),
        Mode::PdefOne => certify_pdef_one(q, p, claims),
    }
}

/// Replays a certificate file. Malformed JSON is an error; anything that
/// parses but does not replay byte for byte is `false`.
pub fn verify_certificate(text: &str) -> Result<bool, CertifyError> {
    let cert: Certificate = serde_json::from_str(text).map_err(|e| CertifyError::Malformed(e.to_string()))?;
    if cert.to_json() != text {
        return Ok(false);
    }
    if cert.clone().sealed().digest != cert.digest {
        return Ok(false);
    }
    Ok(replay(&cert).unwrap_or(false))
}

fn replay(cert: &Certificate) -> Result<bool, CertifyError> {
    let q = Presentation::parse(&cert.payload.presentation)?;
    let p = Prime::new(cert.prime).map_err(|e| CertifyError::Malformed(e.to_string()))?;
    let mut claims = Vec::new();
    for (entry, witnessed) in cert
        .payload
        .witnesses
        .iter()
        .map(|e| (e, true))
        .chain(cert.assumptions.iter().map(|e| (e, false)))
    {
        let evidence = entry.evidence.resolve(&q, None)?;
        let rc = RelatorClaim::new(&q, p, entry.relator, entry.target, entry.kind, entry.value, evidence)?;
        if rc.claim.is_witnessed() != witnessed {
            return Ok(false);
        }
        claims.push(rc);
    }
    let outcome = certify(&q, p, &claims, cert.mode)?;
    Ok(outcome.certificates().contains(cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn free_group_is_certified_unconditionally() {
        let q = Presentation::from_strs(&["a", "b", "t"], &[]).unwrap();
        for mode in [Mode::Rg, Mode::Plarge] {
            let out = certify(&q, p(2), &[], mode).unwrap();
            let certs = out.certificates();
            assert!(!certs.is_empty());
            assert!(certs.iter().all(|c| c.status == Status::Unconditional && c.payload.def_p == "3/1"));
            for c in certs {
                assert!(verify_certificate(&c.to_json()).unwrap());
            }
        }
    }

    #[test]
    fn dihedral_gate_fails() {
        let q = Presentation::from_strs(&["x1", "x2"], &["x1^2", "x2^2"]).unwrap();
        let claims: Vec<_> = (0..2)
            .map(|i| RelatorClaim::asserted(&q, p(2), i, ClaimTarget::PRoot, ClaimKind::Exact, 2, "C2 x C2").unwrap())
            .collect();
        let out = certify_rg_positive(&q, p(2), &claims).unwrap();
        assert_eq!(
            out,
            Outcome::NotCertified { failed: "def_p(P) > 1".into(), detail: "def_p(P) = 1/1".into() }
        );
    }

    #[test]
    fn pdef_one_requires_def_one() {
        let q = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        assert!(matches!(certify_pdef_one(&q, p(2), &[]), Err(CertifyError::NotPdefOne(_))));
    }

    #[test]
    fn tampering_is_detected() {
        let q = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        let cert = certify_rg_positive(&q, p(3), &[]).unwrap().certificates()[0].to_json();
        let tampered = cert.replace("\"2/1\"", "\"3/1\"");
        assert_ne!(tampered, cert);
        assert!(!verify_certificate(&tampered).unwrap());
        assert!(verify_certificate("{").is_err());
    }
}
