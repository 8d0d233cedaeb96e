//! Parametrized example families with their construction-provenance order
//! claims and golden invariants.
//!
//! Claims that rest on facts the library cannot check (membership in a
//! finite residual, residual finiteness of a family) are `Asserted`; claims
//! that a small abelian quotient already proves are `Witness`-backed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::abelian::abelian_invariants;
use crate::arith::{fmt_fraction, Order, Prime};
use crate::enumeration::{ClaimKind, CosetTable, Evidence};
use crate::presentations::{
    claims_to_json, classify, derive_p, profile_relators, ClaimTarget, Presentation, PresentationError,
    RelatorClaim,
};
use crate::words::{Alphabet, Word};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameter `{name}`: {msg}")]
    Param { name: String, msg: String },
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Word(#[from] crate::words::WordError),
    #[error("golden `{name}` expected {expected}, recomputed {actual}")]
    Golden { name: String, expected: String, actual: String },
}

/// Invariants pinned at construction from closed-form expressions; each is
/// recomputed from the presentation and claims by [`CorpusEntry::check`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Goldens {
    pub def_p: Option<BigRational>,
    /// `def_p(P)` for the classification induced by the entry's claims.
    pub derived_def_p: Option<BigRational>,
    pub rdef: Option<BigRational>,
    /// Torsion coefficients and Betti number of the abelianization.
    pub abelian: Option<(Vec<u64>, usize)>,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub presentation: Presentation,
    pub prime: Prime,
    pub claims: Vec<RelatorClaim>,
    /// Distinguished elements of the construction (e.g. residual words).
    pub words: Vec<(String, Word)>,
    pub goldens: Goldens,
    pub notes: Vec<String>,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, presentation: Presentation, prime: Prime) -> Self {
        CorpusEntry {
            name: name.into(),
            presentation,
            prime,
            claims: Vec::new(),
            words: Vec::new(),
            goldens: Goldens::default(),
            notes: Vec::new(),
        }
    }

    /// Presentation text with the notes and distinguished words as header.
    pub fn to_text(&self) -> String {
        let mut header = vec![format!("{} (p = {})", self.name, self.prime)];
        header.extend(self.notes.iter().cloned());
        for (name, w) in &self.words {
            header.push(format!("{name} = {}", self.presentation.word_text(w)));
        }
        self.presentation.to_text_with_header(&header)
    }

    pub fn claims_json(&self) -> String {
        claims_to_json(&self.presentation, &self.claims)
    }

    /// `rdef` from the root claims; a primitive relator counts with `k = 1`.
    pub fn rdef(&self) -> Result<Option<BigRational>, CorpusError> {
        let profiles = profile_relators(&self.presentation, self.prime, &self.claims)?;
        let orders: Option<Vec<Order>> = profiles
            .iter()
            .map(|p| match &p.k {
                Some(k) if k.kind != ClaimKind::StrictlyLess => Some(Order::Finite(k.value)),
                _ => None,
            })
            .collect();
        Ok(match orders {
            Some(o) => Some(self.presentation.residual_deficiency(&o)?),
            None => None,
        })
    }

    /// Recomputes every golden value.
    pub fn check(&self) -> Result<(), CorpusError> {
        let q = &self.presentation;
        let mismatch = |name: &str, expected: &BigRational, actual: &BigRational| {
            if expected == actual {
                Ok(())
            } else {
                Err(CorpusError::Golden {
                    name: name.into(),
                    expected: fmt_fraction(expected),
                    actual: fmt_fraction(actual),
                })
            }
        };
        if let Some(d) = &self.goldens.def_p {
            mismatch("def_p", d, &q.p_deficiency(self.prime)?)?;
        }
        if let Some(d) = &self.goldens.derived_def_p {
            let profiles = profile_relators(q, self.prime, &self.claims)?;
            let c = classify(&profiles, self.prime)?;
            mismatch("def_p(P)", d, &derive_p(q, &c).p_deficiency(self.prime)?)?;
        }
        if let Some(r) = &self.goldens.rdef {
            match self.rdef()? {
                Some(actual) => mismatch("rdef", r, &actual)?,
                None => {
                    return Err(CorpusError::Golden {
                        name: "rdef".into(),
                        expected: fmt_fraction(r),
                        actual: "undetermined".into(),
                    })
                }
            }
        }
        if let Some((torsion, betti)) = &self.goldens.abelian {
            let inv = abelian_invariants(q);
            let actual: Vec<BigInt> = inv.torsion.clone();
            let expected: Vec<BigInt> = torsion.iter().map(|&t| BigInt::from(t)).collect();
            if actual != expected || inv.betti != *betti {
                return Err(CorpusError::Golden {
                    name: "abelian".into(),
                    expected: format!("{torsion:?}, betti {betti}"),
                    actual: inv.to_string(),
                });
            }
        }
        Ok(())
    }
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn prime(p: u64) -> Result<Prime, CorpusError> {
    Prime::new(p).map_err(|e| CorpusError::Invalid(e.to_string()))
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, CorpusError> {
    Err(CorpusError::Invalid(msg.into()))
}

/// The regular coset table of the abelian group `⊕ C_{moduli[i]}`, where
/// generator `g` acts by adding `images[g]`. The images must generate.
pub fn abelian_witness(images: &[Vec<u64>], moduli: &[u64]) -> Option<CosetTable> {
    let size: u64 = moduli.iter().product();
    let size = usize::try_from(size).ok()?;
    let decode = |mut c: usize| -> Vec<u64> {
        moduli
            .iter()
            .map(|&m| {
                let m = m as usize;
                let x = c % m;
                c /= m;
                x as u64
            })
            .collect()
    };
    let encode = |v: &[u64]| -> usize {
        v.iter().zip(moduli).rev().fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    };
    let mut rows = Vec::with_capacity(size);
    for c in 0..size {
        let v = decode(c);
        let mut row = Vec::with_capacity(2 * images.len());
        for img in images {
            let plus: Vec<u64> = v.iter().zip(img).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
            let minus: Vec<u64> = v.iter().zip(img).zip(moduli).map(|((x, y), m)| (x + m - y % m) % m).collect();
            row.push(Some(encode(&plus)));
            row.push(Some(encode(&minus)));
        }
        rows.push(row);
    }
    CosetTable::from_rows(images.len(), Vec::new(), rows).ok()
}

fn witnessed(
    q: &Presentation,
    p: Prime,
    relator: usize,
    target: ClaimTarget,
    value: u64,
    table: &CosetTable,
) -> Result<RelatorClaim, CorpusError> {
    Ok(RelatorClaim::new(q, p, relator, target, ClaimKind::Exact, value, Evidence::Witness(table.clone()))?)
}

fn asserted(
    q: &Presentation,
    p: Prime,
    relator: usize,
    target: ClaimTarget,
    value: u64,
    note: &str,
) -> Result<RelatorClaim, CorpusError> {
    Ok(RelatorClaim::asserted(q, p, relator, target, ClaimKind::Exact, value, note)?)
}

/// Exact claims `k = m` and `l = p^a` for a relator `u^m` whose root is
/// known to have order exactly `m`.
fn exact_power_claims(
    q: &Presentation,
    p: Prime,
    relator: usize,
    note: &str,
) -> Result<Vec<RelatorClaim>, CorpusError> {
    let m = q.relators()[relator].primitive_root().expect("nonempty relator").multiplicity;
    let pa = m / p.split(m).1;
    let mut out = Vec::new();
    if m > 1 {
        out.push(asserted(q, p, relator, ClaimTarget::Root, m, note)?);
    }
    if pa > 1 {
        out.push(asserted(q, p, relator, ClaimTarget::PRoot, pa, note)?);
    }
    Ok(out)
}

fn is_primitive(w: &Word) -> bool {
    w.primitive_root().map(|r| r.multiplicity == 1).unwrap_or(false)
}

/// `⟨x | ∅⟩`
pub fn zee(p: Prime) -> CorpusEntry {
    let q = Presentation::from_strs(&["x"], &[]).expect("valid");
    let mut e = CorpusEntry::new("zee", q, p);
    e.goldens = Goldens {
        def_p: Some(BigRational::one()),
        derived_def_p: Some(BigRational::one()),
        rdef: Some(BigRational::one()),
        abelian: Some((vec![], 1)),
    };
    e.notes.push("p-deficiency one for every prime, yet neither large nor RG > 0".into());
    e
}

/// `⟨x1, ..., xn | ∅⟩`
pub fn free(n: usize, p: Prime) -> CorpusEntry {
    let q = Presentation::free(Alphabet::numbered("x", n).expect("valid names"));
    let mut e = CorpusEntry::new(format!("free{n}"), q, p);
    let n = BigRational::from_integer(BigInt::from(n));
    e.goldens = Goldens {
        def_p: Some(n.clone()),
        derived_def_p: Some(n.clone()),
        rdef: Some(n),
        abelian: Some((vec![], e.presentation.generator_count())),
    };
    e
}

/// `⟨x1, x2 | x1^2, x2^2⟩`, with `k = l = 2` witnessed in `C_2`.
pub fn dihedral_inf() -> CorpusEntry {
    let q = Presentation::from_strs(&["x1", "x2"], &["x1^2", "x2^2"]).expect("valid");
    let p = Prime::new(2).expect("prime");
    let c2 = abelian_witness(&[vec![1], vec![1]], &[2]).expect("generates");
    let mut claims = Vec::new();
    for i in 0..2 {
        for target in [ClaimTarget::Root, ClaimTarget::PRoot] {
            claims.push(witnessed(&q, p, i, target, 2, &c2).expect("valid witness"));
        }
    }
    let mut e = CorpusEntry::new("dihedral_inf", q, p);
    e.claims = claims;
    e.goldens = Goldens {
        def_p: Some(BigRational::one()),
        derived_def_p: Some(BigRational::one()),
        rdef: Some(BigRational::one()),
        abelian: Some((vec![2, 2], 0)),
    };
    e.notes.push("2-deficiency one; virtually Z".into());
    e
}

/// `⟨a, b | a^l, b^m, (ab)^n⟩`; for `(3, 3, 3)` all orders are witnessed in
/// `C_3`, otherwise asserted.
pub fn triangle(l: u64, m: u64, n: u64, p: Prime) -> Result<CorpusEntry, CorpusError> {
    if l < 2 || m < 2 || n < 2 {
        return invalid("triangle exponents must be at least 2");
    }
    let q = Presentation::from_strs(&["a", "b"], &[&format!("a^{l}"), &format!("b^{m}"), &format!("(a b)^{n}")])?;
    let mut claims = Vec::new();
    if (l, m, n) == (3, 3, 3) {
        let c3 = abelian_witness(&[vec![1], vec![1]], &[3]).expect("generates");
        for i in 0..3 {
            let pa = 3 / p.split(3).1;
            claims.push(witnessed(&q, p, i, ClaimTarget::Root, 3, &c3)?);
            if pa > 1 {
                claims.push(witnessed(&q, p, i, ClaimTarget::PRoot, pa, &c3)?);
            }
        }
    } else {
        for i in 0..3 {
            claims.extend(exact_power_claims(&q, p, i, "triangle groups are residually finite and a, b, ab have the orders in the presentation")?);
        }
    }
    let mut e = CorpusEntry::new(format!("triangle({l},{m},{n})"), q, p);
    e.claims = claims;
    let def_p = [l, m, n].iter().fold(BigRational::from_integer(2.into()), |acc, &x| {
        let pa = x / p.split(x).1;
        acc - r(1, pa as i64)
    });
    e.goldens.def_p = Some(def_p);
    e.goldens.rdef = Some(r(2, 1) - r(1, l as i64) - r(1, m as i64) - r(1, n as i64));
    if (l, m, n) == (3, 3, 3) {
        e.goldens.abelian = Some((vec![3, 3], 0));
        e.notes.push("contains Z x Z with index 3: not large, RG = 0".into());
    }
    Ok(e)
}

fn check_bs(m: i64, n: i64) -> Result<(), CorpusError> {
    if m == 0 || n == 0 {
        return invalid("B(m,n) needs nonzero m and n");
    }
    Ok(())
}

fn check_non_residually_finite(m: i64, n: i64) -> Result<(), CorpusError> {
    check_bs(m, n)?;
    if m.abs() == 1 {
        return invalid(format!("B({m},{n}) is residually finite (|m| = 1)"));
    }
    if n.abs() == 1 {
        return invalid(format!("B({m},{n}) is residually finite (|n| = 1)"));
    }
    if m.abs() == n.abs() {
        return invalid(format!("B({m},{n}) is residually finite (|m| = |n|)"));
    }
    Ok(())
}

/// `a^-1 b^m a b^-n` over generators `a = 0`, `b = 1`.
fn bs_relator(m: i64, n: i64) -> Word {
    let (a, b) = (Word::generator(0), Word::generator(1));
    Word::product([&a.inverse(), &b.pow(m), &a, &b.pow(-n)])
}

/// `⟨a, b | a^-1 b^m a = b^n⟩`
pub fn bs(m: i64, n: i64, p: Prime) -> Result<CorpusEntry, CorpusError> {
    check_bs(m, n)?;
    let alphabet = Alphabet::new(["a", "b"]).expect("valid");
    let q = Presentation::new(alphabet, vec![bs_relator(m, n)])?;
    let mut e = CorpusEntry::new(format!("bs({m},{n})"), q, p);
    e.goldens.def_p = Some(BigRational::one());
    e.goldens.rdef = Some(BigRational::one());
    let g = (m - n).unsigned_abs();
    e.goldens.abelian = Some(match g {
        0 => (vec![], 2),
        1 => (vec![], 1),
        g => (vec![g], 1),
    });
    Ok(e)
}

/// `w_k = [a^k b^d a^-k, b]` with `d = gcd(m, n)`, one of the normal
/// generators of the finite residual of a non-residually-finite `B(m,n)`.
pub fn moldavanskii_word(m: i64, n: i64, k: i64) -> Result<Word, CorpusError> {
    check_non_residually_finite(m, n)?;
    if k == 0 {
        return invalid("k = 0 gives the trivial commutator [b^d, b]");
    }
    let d = m.gcd(&n).abs();
    let (a, b) = (Word::generator(0), Word::generator(1));
    let x = Word::product([&a.pow(k), &b.pow(d), &a.pow(-k)]);
    Ok(x.commutator(&b))
}

/// Parameters of the Baumslag–Solitar quotient family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsQuotient {
    pub m: i64,
    pub n: i64,
    pub p: u64,
    pub indices: Vec<i64>,
    pub exponents: Vec<i64>,
}

impl BsQuotient {
    /// `I = {1..p}` and every exponent `p`, which gives `def_p = 1`.
    pub fn standard(m: i64, n: i64, p: u64) -> Self {
        BsQuotient { m, n, p, indices: (1..=p as i64).collect(), exponents: vec![p as i64; p as usize] }
    }
}

/// `⟨a, b, t | a^-1 b^m a = b^n, u_i^{n_i}⟩` with `u_i = t^-1 w_i t`.
///
/// Each `u_i` lies in the finite residual, so its image in `G/R_G` is
/// trivial: `k = l = 1` (asserted), placing every `u_i^{n_i}` in S3.
pub fn bs_quotient(params: &BsQuotient) -> Result<CorpusEntry, CorpusError> {
    let BsQuotient { m, n, p, indices, exponents } = params;
    let p = prime(*p)?;
    check_non_residually_finite(*m, *n)?;
    if indices.is_empty() || indices.len() != exponents.len() {
        return invalid("need one exponent per index, and at least one index");
    }
    let mut sorted = indices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != indices.len() {
        return invalid("indices must be distinct");
    }
    for &e in exponents {
        if e == 0 || e % p.get() as i64 != 0 {
            return invalid(format!("exponent {e} is not a nonzero multiple of p = {p}"));
        }
    }
    let t = Word::generator(2);
    let mut relators = vec![bs_relator(*m, *n)];
    let mut words = Vec::new();
    for (&k, &e) in indices.iter().zip(exponents) {
        let u = moldavanskii_word(*m, *n, k)?.conjugate(&t);
        if !is_primitive(&u) {
            return invalid(format!("u_{k} is a proper power"));
        }
        relators.push(u.pow(e));
        words.push((format!("u_{k}"), u));
    }
    let q = Presentation::new(Alphabet::new(["a", "b", "t"]).expect("valid"), relators)?;
    let note = "u_k is conjugate to a generator of the finite residual of B(m,n), so its image in G/R_G is trivial";
    let mut claims = Vec::new();
    for i in 1..q.relators().len() {
        claims.push(asserted(&q, p, i, ClaimTarget::Root, 1, note)?);
        claims.push(asserted(&q, p, i, ClaimTarget::PRoot, 1, note)?);
    }
    let mut e = CorpusEntry::new(format!("bs_quotient({m},{n},p={p})"), q, p);
    e.claims = claims;
    e.words = words;
    let mut def_p = r(2, 1);
    for &x in exponents {
        let a = p.valuation(x.unsigned_abs());
        def_p -= BigRational::new(BigInt::one(), p.power(a));
    }
    e.goldens.def_p = Some(def_p);
    e.goldens.derived_def_p = Some(r(2, 1));
    e.goldens.rdef = Some(r(2 - exponents.len() as i64, 1));
    e.notes.push("finite truncation of the index set I".into());
    e.notes.push("the residual claims fall under the l < p^a case of the p-deficiency-one theorem".into());
    Ok(e)
}

/// `⟨a, b, s, t | [a,b], a^s (ab)^-2, b^t (ab)^-2⟩` with `x^y = y^-1 x y`.
pub fn wise() -> CorpusEntry {
    let q = wise_presentation(&[]);
    let mut e = CorpusEntry::new("wise", q, Prime::new(2).expect("prime"));
    e.goldens.def_p = Some(BigRational::one());
    e.goldens.abelian = Some((vec![3], 2));
    e.notes.push("non-Hopfian: a -> a^2, b -> b^2 is onto with nontrivial kernel".into());
    e
}

fn wise_presentation(extra: &[Word]) -> Presentation {
    let (a, b, s, t) = (Word::generator(0), Word::generator(1), Word::generator(2), Word::generator(3));
    let ab2 = a.concat(&b).pow(2);
    let mut relators = vec![
        a.commutator(&b),
        a.conjugate(&s).concat(&ab2.inverse()),
        b.conjugate(&t).concat(&ab2.inverse()),
    ];
    relators.extend(extra.iter().cloned());
    let names: &[&str] = if extra.is_empty() { &["a", "b", "s", "t"] } else { &["a", "b", "s", "t", "z"] };
    Presentation::new(Alphabet::new(names.iter().copied()).expect("valid"), relators).expect("in range")
}

/// The kernel elements `w_i`: `w_0 = [(ab)^{s^-1}, (ab)^{t^-1}]` and, for
/// `w_{i-1} = [u1, u2]`, `w_i = [(u1 u2)^{s^-1}, (u1 u2)^{t^-1}]`.
pub fn wise_w(i: usize) -> Word {
    let (a, b, s, t) = (Word::generator(0), Word::generator(1), Word::generator(2), Word::generator(3));
    let ab = a.concat(&b);
    let mut u1 = ab.conjugate(&s.inverse());
    let mut u2 = ab.conjugate(&t.inverse());
    for _ in 0..i {
        let x = u1.concat(&u2);
        u1 = x.conjugate(&s.inverse());
        u2 = x.conjugate(&t.inverse());
    }
    u1.commutator(&u2)
}

/// `(G * ⟨z⟩) / ⟨⟨h_i^{p^{a_i}}⟩⟩` with `h_i = z w_i z^-1`.
pub fn wise_quotient(p: u64, indices: &[usize], exponents: &[u32]) -> Result<CorpusEntry, CorpusError> {
    let p = prime(p)?;
    if indices.is_empty() || indices.len() != exponents.len() {
        return invalid("need one exponent a_i per index, and at least one index");
    }
    if exponents.contains(&0) {
        return invalid("exponents a_i must be at least 1");
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != indices.len() {
        return invalid("indices must be distinct");
    }
    let z = Word::generator(4);
    let mut extra = Vec::new();
    let mut words = Vec::new();
    for (&i, &a) in indices.iter().zip(exponents) {
        let h = wise_w(i).conjugate(&z.inverse());
        if !is_primitive(&h) {
            return invalid(format!("h_{i} is a proper power"));
        }
        let e = p.checked_power(a).and_then(|x| i64::try_from(x).ok());
        let Some(e) = e else { return invalid("p^a_i overflows") };
        extra.push(h.pow(e));
        words.push((format!("h_{i}"), h));
    }
    let q = wise_presentation(&extra);
    let note = "h_i is conjugate to an element of the kernel of a power of the non-injective epimorphism, which lies in the finite residual";
    let mut claims = Vec::new();
    for i in 3..q.relators().len() {
        claims.push(asserted(&q, p, i, ClaimTarget::Root, 1, note)?);
        claims.push(asserted(&q, p, i, ClaimTarget::PRoot, 1, note)?);
    }
    let mut e = CorpusEntry::new(format!("wise_quotient(p={p})"), q, p);
    e.claims = claims;
    e.words = words;
    let mut def_p = r(2, 1);
    for &a in exponents {
        def_p -= BigRational::new(BigInt::one(), p.power(a));
    }
    e.goldens.def_p = Some(def_p);
    e.goldens.derived_def_p = Some(r(2, 1));
    e.notes.push("finite truncation of the index set I".into());
    Ok(e)
}

/// A symmetric Coxeter matrix; `None` off the diagonal is an infinite label.
pub type CoxeterMatrix = Vec<Vec<Option<u64>>>;

fn check_coxeter(m: &CoxeterMatrix) -> Result<usize, CorpusError> {
    let n = m.len();
    if n < 2 {
        return invalid("a Coxeter matrix needs at least 2 rows");
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return invalid("Coxeter matrix is not square");
        }
        for (j, &x) in row.iter().enumerate() {
            if x != m[j][i] {
                return invalid("Coxeter matrix is not symmetric");
            }
            if i != j && x.is_some_and(|v| v < 2) {
                return invalid(format!("label m_{}{} must be at least 2", i + 1, j + 1));
            }
        }
    }
    Ok(n)
}

/// The matrix with every off-diagonal label `label`.
pub fn uniform_coxeter(n: usize, label: u64) -> CoxeterMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Some(1) } else { Some(label) }).collect()).collect()
}

/// `⟨a_1, ..., a_n | a_i^2, (a_i a_j)^{m_ij}⟩`; infinite labels omit the
/// relator. Orders are asserted (Coxeter groups are residually finite and
/// realize their labels).
pub fn coxeter(m: &CoxeterMatrix, p: Prime) -> Result<CorpusEntry, CorpusError> {
    let n = check_coxeter(m)?;
    let mut relators = Vec::new();
    for i in 0..n {
        relators.push(Word::generator(i).pow(2));
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(mij) = m[i][j] {
                relators.push(Word::generator(i).concat(&Word::generator(j)).pow(mij as i64));
            }
        }
    }
    let q = Presentation::new(Alphabet::numbered("a", n).expect("valid"), relators)?;
    let note = "Coxeter groups are residually finite and a_i, a_i a_j have the orders in the presentation";
    let mut claims = Vec::new();
    for i in 0..q.relators().len() {
        claims.extend(exact_power_claims(&q, p, i, note)?);
    }
    let labels: Vec<u64> = (0..n).map(|_| 2).chain(upper_labels(m, 0)).collect();
    let mut e = CorpusEntry::new(format!("coxeter({n})"), q, p);
    e.claims = claims;
    e.goldens.def_p = Some(labels.iter().fold(r(n as i64, 1), |acc, &x| acc - r(1, (x / p.split(x).1) as i64)));
    e.goldens.rdef = Some(labels.iter().fold(r(n as i64, 1), |acc, &x| acc - r(1, x as i64)));
    Ok(e)
}

/// Finite labels `m_ij`, `from <= i < j`, in row-major order.
fn upper_labels(m: &CoxeterMatrix, from: usize) -> Vec<u64> {
    let n = m.len();
    (from..n).flat_map(|i| (i + 1..n).filter_map(move |j| m[i][j])).collect()
}

/// The p-Coxeter subgroup: the kernel of `a_i -> 1` in `C_2`, generated by
/// `x_1 = a_2 a_1` and `x_{j-1} = a_1 a_j` (`j >= 3`). Since
/// `a_i a_j = x_{i-1}^-1 x_{j-1}` for `i, j >= 3` and `a_2 a_j = x_1 x_{j-1}`,
/// the relators are `x_{j-1}^{m_1j}`, `(x_1 x_{j-1})^{m_2j}` and
/// `(x_{i-1}^-1 x_{j-1})^{m_ij}`.
pub fn p_coxeter(m: &CoxeterMatrix) -> Result<CorpusEntry, CorpusError> {
    let n = check_coxeter(m)?;
    let labels: Vec<u64> = upper_labels(m, 0);
    let mut p: Option<u64> = None;
    for &x in &labels {
        let f = smallest_prime_factor(x);
        if Prime::new(f).map(|q| q.split(x).1 != 1).unwrap_or(true) {
            return invalid(format!("label {x} is not a prime power"));
        }
        match p {
            Some(p0) if p0 != f => return invalid("labels are powers of different primes"),
            _ => p = Some(f),
        }
    }
    let Some(p) = p else { return invalid("all labels are infinite") };
    let p = prime(p)?;
    let x = |i: usize| Word::generator(i - 1);
    let mut relators = Vec::new();
    for j in 2..=n {
        if let Some(mj) = m[0][j - 1] {
            relators.push(x(j - 1).pow(mj as i64));
        }
    }
    for i in 2..=n {
        for j in i + 1..=n {
            if let Some(mij) = m[i - 1][j - 1] {
                let base = if i == 2 { x(1).concat(&x(j - 1)) } else { x(i - 1).inverse().concat(&x(j - 1)) };
                relators.push(base.pow(mij as i64));
            }
        }
    }
    let q = Presentation::new(Alphabet::numbered("x", n - 1).expect("valid"), relators)?;
    let note = "the p-Coxeter subgroup is residually finite and each root is a product a_i a_j of order m_ij";
    let mut claims = Vec::new();
    for i in 0..q.relators().len() {
        claims.extend(exact_power_claims(&q, p, i, note)?);
    }
    let mut e = CorpusEntry::new(format!("p_coxeter({n}, p={p})"), q, p);
    e.claims = claims;
    let sum = labels.iter().fold(BigRational::zero(), |acc, &x| acc + r(1, x as i64));
    e.goldens.def_p = Some(r(n as i64 - 1, 1) - &sum);
    e.goldens.derived_def_p = e.goldens.def_p.clone();
    e.goldens.rdef = Some(r(n as i64 - 1, 1) - sum);
    Ok(e)
}

fn smallest_prime_factor(x: u64) -> u64 {
    (2..).take_while(|d| d * d <= x).find(|d| x.is_multiple_of(*d)).unwrap_or(x)
}

/// `S_4(3)`: the 3-Coxeter subgroup of the all-3 Coxeter group on 4
/// generators.
pub fn s4_3() -> CorpusEntry {
    let mut e = p_coxeter(&uniform_coxeter(4, 3)).expect("valid matrix");
    e.name = "S4(3)".into();
    e.notes.push("def_3 = rdef = 1 with k = l = 3 throughout; 3-large by other means".into());
    e
}

/// `⟨a, b | a^3, b^3, w^{3n}⟩` for `w = a^{r_1} b^{s_1} ... a^{r_k} b^{s_k}`
/// with `1 <= r_i, s_i < 3` and `n > 1`.
///
/// Orders are asserted: `k = (3, 3, 3n)`, `l = (3, 3, 3^{a})`.
pub fn gen_triangle(w: &str, n: u64) -> Result<CorpusEntry, CorpusError> {
    if n < 2 {
        return invalid("n must be greater than 1");
    }
    let ab = Presentation::from_strs(&["a", "b"], &[])?;
    let word = ab.parse_word(w)?;
    check_triangle_word(&word)?;
    if !is_primitive(&word) {
        return invalid("w must not be a proper power");
    }
    let relators = vec![Word::generator(0).pow(3), Word::generator(1).pow(3), word.pow(3 * n as i64)];
    let q = Presentation::new(ab.alphabet().clone(), relators)?;
    let p = Prime::new(3).expect("prime");
    let note = "generalised triangle groups of this shape are residually finite and a, b, w have the orders in the presentation";
    let mut claims = Vec::new();
    for i in 0..3 {
        claims.extend(exact_power_claims(&q, p, i, note)?);
    }
    let mut e = CorpusEntry::new(format!("gen_triangle(n={n})"), q, p);
    e.claims = claims;
    e.words.push(("w".into(), word));
    let a = p.valuation(3 * n);
    e.goldens.def_p = Some(r(2, 1) - r(2, 3) - BigRational::new(BigInt::one(), p.power(a)));
    e.goldens.derived_def_p = e.goldens.def_p.clone();
    e.goldens.rdef = Some(r(2, 1) - r(2, 3) - r(1, 3 * n as i64));
    if n.is_multiple_of(3) {
        e.notes.push("3 divides n, so def_3 exceeds one".into());
    }
    Ok(e)
}

fn check_triangle_word(w: &Word) -> Result<(), CorpusError> {
    let letters = w.letters();
    if letters.is_empty() {
        return invalid("w must be nonempty");
    }
    // syllables alternate a, b, starting with a and ending with b
    let mut syllables: Vec<(usize, i64)> = Vec::new();
    for l in letters {
        match syllables.last_mut() {
            Some((g, e)) if *g == l.generator() => *e += l.sign(),
            _ => syllables.push((l.generator(), l.sign())),
        }
    }
    if syllables.first().map(|s| s.0) != Some(0) || syllables.last().map(|s| s.0) != Some(1) {
        return invalid("w must have the form a^r1 b^s1 ... a^rk b^sk");
    }
    if syllables.iter().any(|&(_, e)| !(1..3).contains(&e)) {
        return invalid("exponents r_i, s_i must satisfy 1 <= r_i, s_i < 3");
    }
    Ok(())
}

/// The default `v` words: `t^-j c t^j` for `c` in `x1, x2, x1 x2`,
/// `j = 0, 1, ...`, truncated to `2p - 1` words.
pub fn default_v_words(p: u64) -> Vec<String> {
    let base = ["x1", "x2", "x1 x2"];
    (0..2 * p as usize - 1)
        .map(|i| {
            let (j, c) = (i / 3, base[i % 3]);
            if j == 0 {
                c.to_string()
            } else {
                format!("t^-{j} {c} t^{j}")
            }
        })
        .collect()
}

/// `⟨x1, x2, t | v_1^p, ..., v_{2p-1}^p, w^{pq}⟩`.
///
/// The side conditions (`σ_t(v_i) = 0`, `σ_t(w) ≢ 0 mod q`, nonzero images
/// in `C_p × C_p`, no proper powers) are checked, and every order claim is
/// witnessed by the regular table of `C_p × C_p × C_q`.
pub fn cpcpcq(p: u64, q: u64, v: Option<&[String]>, w: Option<&str>) -> Result<CorpusEntry, CorpusError> {
    let pp = prime(p)?;
    prime(q)?;
    if p == q {
        return invalid("p and q must be distinct");
    }
    let free = Presentation::from_strs(&["x1", "x2", "t"], &[])?;
    let v_text: Vec<String> = match v {
        Some(v) => v.to_vec(),
        None => default_v_words(p),
    };
    if v_text.len() as u64 != 2 * p - 1 {
        return invalid(format!("need 2p - 1 = {} v-words, got {}", 2 * p - 1, v_text.len()));
    }
    let vs: Vec<Word> = v_text.iter().map(|s| free.parse_word(s)).collect::<Result<_, _>>()?;
    let w = free.parse_word(w.unwrap_or("x1 t"))?;
    let psi1 = |x: &Word| -> (u64, u64) {
        let m = p as i64;
        (x.exponent_sum(0).rem_euclid(m) as u64, x.exponent_sum(1).rem_euclid(m) as u64)
    };
    for (i, v) in vs.iter().enumerate() {
        if v.exponent_sum(2) != 0 {
            return invalid(format!("sigma_t(v_{}) must be zero", i + 1));
        }
        if psi1(v) == (0, 0) {
            return invalid(format!("psi_1(v_{}) must be nonzero", i + 1));
        }
        if !is_primitive(v) {
            return invalid(format!("v_{} is a proper power", i + 1));
        }
    }
    if w.exponent_sum(2).rem_euclid(q as i64) == 0 {
        return invalid("sigma_t(w) must be nonzero mod q");
    }
    if psi1(&w) == (0, 0) {
        return invalid("psi_1(w) must be nonzero");
    }
    if !is_primitive(&w) {
        return invalid("w is a proper power");
    }
    let mut relators: Vec<Word> = vs.iter().map(|v| v.pow(p as i64)).collect();
    relators.push(w.pow((p * q) as i64));
    let pres = Presentation::new(free.alphabet().clone(), relators)?;
    let table = abelian_witness(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[p, p, q]).expect("generates");
    // image orders through the abelianized map
    let image_order = |x: &Word| -> u64 {
        let (a, b) = psi1(x);
        let c = x.exponent_sum(2).rem_euclid(q as i64) as u64;
        let op = if (a, b) == (0, 0) { 1 } else { p };
        let oq = if c == 0 { 1 } else { q };
        op * oq
    };
    let mut claims = Vec::new();
    for i in 0..vs.len() {
        debug_assert_eq!(image_order(&vs[i]), p);
        claims.push(witnessed(&pres, pp, i, ClaimTarget::Root, p, &table)?);
        claims.push(witnessed(&pres, pp, i, ClaimTarget::PRoot, p, &table)?);
    }
    debug_assert_eq!(image_order(&w), p * q);
    let last = vs.len();
    claims.push(witnessed(&pres, pp, last, ClaimTarget::Root, p * q, &table)?);
    claims.push(witnessed(&pres, pp, last, ClaimTarget::PRoot, p, &table)?);
    let mut e = CorpusEntry::new(format!("cpcpcq({p},{q})"), pres, pp);
    e.claims = claims;
    e.words = vs.iter().enumerate().map(|(i, v)| (format!("v_{}", i + 1), v.clone())).collect();
    e.words.push(("w".into(), w));
    e.goldens.def_p = Some(BigRational::one());
    e.goldens.derived_def_p = Some(BigRational::one());
    e.goldens.rdef = Some(r(3, 1) - r(2 * p as i64 - 1, p as i64) - r(1, (p * q) as i64));
    Ok(e)
}

/// Family names with their parameters and defaults.
pub const FAMILIES: &[(&str, &str)] = &[
    ("zee", "p=2"),
    ("free", "n=2 p=2"),
    ("dihedral_inf", ""),
    ("triangle", "l=3 m=3 n=3 p=3"),
    ("bs", "m=2 n=3 p=2"),
    ("moldavanskii_word", "m=2 n=3 k=1"),
    ("bs_quotient", "m=2 n=3 p=2 I=1..p exponents=p,..,p"),
    ("wise", ""),
    ("wise_w", "i=0"),
    ("wise_quotient", "p=2 I=0,1,2 a=1,1,1"),
    ("coxeter", "matrix=<rows ';'-separated, entries ',' or inf> p=2"),
    ("p_coxeter", "matrix=3,3,3,3 uniform default (n=4 label=3)"),
    ("gen_triangle", "w=\"a b\" n=2"),
    ("cpcpcq", "p=2 q=3 v=<words ';'-separated> w=\"x1 t\""),
];

/// `key=value` parameters.
#[derive(Debug, Clone, Default)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn parse<S: AsRef<str>>(args: &[S]) -> Result<Self, CorpusError> {
        let mut map = BTreeMap::new();
        for a in args {
            let a = a.as_ref();
            let Some((k, v)) = a.split_once('=') else {
                return Err(CorpusError::Param { name: a.into(), msg: "expected key=value".into() });
            };
            if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(CorpusError::Param { name: k.into(), msg: "given twice".into() });
            }
        }
        Ok(Params(map))
    }

    fn err(name: &str, msg: impl Into<String>) -> CorpusError {
        CorpusError::Param { name: name.into(), msg: msg.into() }
    }

    fn take(&mut self, name: &str) -> Option<String> {
        self.0.remove(name)
    }

    fn int<T: std::str::FromStr>(&mut self, name: &str, default: T) -> Result<T, CorpusError> {
        match self.take(name) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| Self::err(name, format!("`{v}` is not an integer"))),
        }
    }

    fn list<T: std::str::FromStr>(&mut self, name: &str) -> Result<Option<Vec<T>>, CorpusError> {
        match self.take(name) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Self::err(name, format!("`{x}` is not an integer"))))
                .collect::<Result<Vec<T>, _>>()
                .map(Some),
        }
    }

    fn matrix(&mut self) -> Result<Option<CoxeterMatrix>, CorpusError> {
        let Some(v) = self.take("matrix") else { return Ok(None) };
        let rows = v
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| match x.trim() {
                        "inf" => Ok(None),
                        x => x.parse().map(Some).map_err(|_| Self::err("matrix", format!("bad entry `{x}`"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(rows))
    }

    fn done(self) -> Result<(), CorpusError> {
        match self.0.keys().next() {
            Some(k) => Err(Self::err(k, "unknown parameter")),
            None => Ok(()),
        }
    }
}

/// Builds an entry from a family name and `key=value` parameters. For
/// `moldavanskii_word` and `wise_w` the entry is the ambient group with the
/// word recorded under `words`.
pub fn make(family: &str, params: Params) -> Result<CorpusEntry, CorpusError> {
    let mut ps = params;
    let entry = match family {
        "zee" => zee(prime(ps.int("p", 2)?)?),
        "free" => free(ps.int("n", 2)?, prime(ps.int("p", 2)?)?),
        "dihedral_inf" => dihedral_inf(),
        "triangle" => triangle(ps.int("l", 3)?, ps.int("m", 3)?, ps.int("n", 3)?, prime(ps.int("p", 3)?)?)?,
        "bs" => bs(ps.int("m", 2)?, ps.int("n", 3)?, prime(ps.int("p", 2)?)?)?,
        "moldavanskii_word" => {
            let (m, n, k) = (ps.int("m", 2)?, ps.int("n", 3)?, ps.int("k", 1)?);
            let w = moldavanskii_word(m, n, k)?;
            let mut e = bs(m, n, Prime::new(2).expect("prime"))?;
            e.name = format!("moldavanskii_word({m},{n},{k})");
            e.notes.push(format!("d = gcd(m, n) = {}", m.gcd(&n).abs()));
            e.words.push((format!("w_{k}"), w));
            e
        }
        "bs_quotient" => {
            let (m, n, p) = (ps.int("m", 2)?, ps.int("n", 3)?, ps.int("p", 2)?);
            let mut params = BsQuotient::standard(m, n, p);
            if let Some(i) = ps.list("I")? {
                params.exponents = vec![p as i64; i.len()];
                params.indices = i;
            }
            if let Some(e) = ps.list("exponents")? {
                params.exponents = e;
            }
            bs_quotient(&params)?
        }
        "wise" => wise(),
        "wise_w" => {
            let i = ps.int("i", 0)?;
            let mut e = wise();
            e.name = format!("wise_w({i})");
            e.words.push((format!("w_{i}"), wise_w(i)));
            e
        }
        "wise_quotient" => {
            let p = ps.int("p", 2)?;
            let indices = ps.list("I")?.unwrap_or_else(|| vec![0, 1, 2]);
            let a = ps.list("a")?.unwrap_or_else(|| vec![1; indices.len()]);
            wise_quotient(p, &indices, &a)?
        }
        "coxeter" => {
            let m = ps.matrix()?.unwrap_or_else(|| uniform_coxeter(4, 3));
            coxeter(&m, prime(ps.int("p", 2)?)?)?
        }
        "p_coxeter" => {
            let m = match ps.matrix()? {
                Some(m) => m,
                None => uniform_coxeter(ps.int("n", 4)?, ps.int("label", 3)?),
            };
            p_coxeter(&m)?
        }
        "gen_triangle" => {
            let w = ps.take("w").unwrap_or_else(|| "a b".into());
            gen_triangle(&w, ps.int("n", 2)?)?
        }
        "cpcpcq" => {
            let (p, q) = (ps.int("p", 2)?, ps.int("q", 3)?);
            let v: Option<Vec<String>> = ps.take("v").map(|s| s.split(';').map(|x| x.trim().to_string()).collect());
            let w = ps.take("w");
            cpcpcq(p, q, v.as_deref(), w.as_deref())?
        }
        other => return Err(CorpusError::UnknownFamily(other.into())),
    };
    ps.done()?;
    Ok(entry)
}

/// The pinned instances used by the property suites.
pub fn standard() -> Vec<CorpusEntry> {
    let p2 = Prime::new(2).expect("prime");
    let p3 = Prime::new(3).expect("prime");
    vec![
        zee(p2),
        free(2, p2),
        dihedral_inf(),
        triangle(3, 3, 3, p3).expect("valid"),
        bs(2, 3, p2).expect("valid"),
        bs_quotient(&BsQuotient::standard(2, 3, 2)).expect("valid"),
        wise(),
        wise_quotient(2, &[0, 1], &[1, 1]).expect("valid"),
        coxeter(&uniform_coxeter(3, 3), p2).expect("valid"),
        s4_3(),
        gen_triangle("a b", 2).expect("valid"),
        cpcpcq(2, 3, None, None).expect("valid"),
        cpcpcq(3, 2, None, None).expect("valid"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn standard_goldens_recompute() {
        for e in standard() {
            e.check().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }

    #[test]
    fn s4_3_matches_printed_presentation() {
        let e = s4_3();
        let printed = Presentation::from_strs(
            &["x1", "x2", "x3"],
            &["x1^3", "x2^3", "x3^3", "(x1 x2)^3", "(x1 x3)^3", "(x2^-1 x3)^3"],
        )
        .unwrap();
        assert_eq!(e.presentation, printed);
        assert_eq!(e.presentation.p_deficiency(p(3)).unwrap(), BigRational::one());
        assert_eq!(e.rdef().unwrap(), Some(BigRational::one()));
    }

    #[test]
    fn moldavanskii_expansion() {
        let ab = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        let w = moldavanskii_word(2, 3, 1).unwrap();
        assert_eq!(w, ab.parse_word("a b a^-1 b a b^-1 a^-1 b^-1").unwrap());
        for (m, n) in [(2, 2), (1, 3), (3, -1), (-4, 4)] {
            assert!(moldavanskii_word(m, n, 1).is_err(), "({m},{n})");
        }
        let err = moldavanskii_word(2, 2, 1).unwrap_err().to_string();
        assert!(err.contains("|m| = |n|"), "{err}");
        assert!(moldavanskii_word(2, 3, 0).is_err());
        // d = gcd(4, 6) = 2
        let w = moldavanskii_word(4, 6, -1).unwrap();
        assert_eq!(w, ab.parse_word("a^-1 b^2 a b a^-1 b^-2 a b^-1").unwrap());
    }

    #[test]
    fn wise_words() {
        let q = wise().presentation;
        let w0 = wise_w(0);
        let expected = q.parse_word("s a b s^-1 t a b t^-1 s b^-1 a^-1 s^-1 t b^-1 a^-1 t^-1").unwrap();
        assert_eq!(w0, expected);
        let ws: Vec<Word> = (0..=4).map(wise_w).collect();
        for (i, w) in ws.iter().enumerate() {
            assert!(!w.is_empty());
            for v in &ws[..i] {
                assert_ne!(v, w);
            }
        }
    }

    #[test]
    fn wise_abelianization() {
        let e = wise();
        let m = crate::abelian::relation_matrix(&e.presentation);
        let rows: Vec<Vec<BigInt>> = (0..3).map(|i| (0..4).map(|j| m.get(i, j).clone()).collect()).collect();
        let expect = [[0, 0, 0, 0], [-1, -2, 0, 0], [-2, -1, 0, 0]];
        for (row, ex) in rows.iter().zip(expect) {
            assert_eq!(row, &ex.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn bs_quotient_deficiencies() {
        for prime_p in [2, 3, 5] {
            let e = bs_quotient(&BsQuotient::standard(2, 3, prime_p)).unwrap();
            e.check().unwrap();
            assert_eq!(e.goldens.def_p, Some(BigRational::one()));
            assert_eq!(e.goldens.derived_def_p, Some(r(2, 1)));
        }
        let bad = BsQuotient { m: 2, n: 3, p: 2, indices: vec![1], exponents: vec![3] };
        assert!(bs_quotient(&bad).is_err());
        let rf = BsQuotient { m: 1, n: 3, p: 2, indices: vec![1], exponents: vec![2] };
        assert!(bs_quotient(&rf).is_err());
    }

    #[test]
    fn gen_triangle_rdef_and_validation() {
        for n in [2, 3, 5] {
            let e = gen_triangle("a b^2 a^2 b", n).unwrap();
            e.check().unwrap();
            assert_eq!(e.rdef().unwrap(), Some(r(2, 1) - r(2, 3) - r(1, 3 * n as i64)));
        }
        assert!(gen_triangle("a b", 1).is_err());
        assert!(gen_triangle("b a", 2).is_err());
        assert!(gen_triangle("a^3 b", 2).is_err());
        assert!(gen_triangle("a^-1 b", 2).is_err());
        assert!(gen_triangle("a b a b", 2).is_err());
    }

    #[test]
    fn cpcpcq_side_conditions() {
        for (pp, qq) in [(2, 3), (3, 2), (3, 5)] {
            let e = cpcpcq(pp, qq, None, None).unwrap();
            e.check().unwrap();
            assert_eq!(e.presentation.relators().len() as u64, 2 * pp);
        }
        assert!(cpcpcq(2, 2, None, None).is_err());
        let bad_t = vec!["x1".to_string(), "x2 t".to_string(), "x1 x2".to_string()];
        assert!(cpcpcq(2, 3, Some(&bad_t), None).is_err());
        let bad_psi = vec!["x1".to_string(), "x1^2 t x2^2 t^-1".to_string(), "x1 x2".to_string()];
        assert!(cpcpcq(2, 3, Some(&bad_psi), None).is_err());
        assert!(cpcpcq(2, 3, None, Some("x1 t^3")).is_err());
        assert!(cpcpcq(2, 3, None, Some("x1^2 t")).is_err());
    }

    #[test]
    fn coxeter_matrices() {
        let e = coxeter(&uniform_coxeter(3, 3), p(2)).unwrap();
        assert_eq!(e.presentation.relators().len(), 6);
        let mut m = uniform_coxeter(3, 2);
        m[0][2] = None;
        m[2][0] = None;
        let e = coxeter(&m, p(2)).unwrap();
        assert_eq!(e.presentation.relators().len(), 5);
        e.check().unwrap();
        m[0][1] = Some(1);
        assert!(coxeter(&m, p(2)).is_err());
        let mixed = vec![vec![Some(1), Some(2), Some(3)], vec![Some(2), Some(1), Some(2)], vec![Some(3), Some(2), Some(1)]];
        assert!(p_coxeter(&mixed).is_err());
    }

    #[test]
    fn make_parses_parameters() {
        let e = make("p_coxeter", Params::default()).unwrap();
        assert_eq!(e.presentation.generator_count(), 3);
        let e = make("bs_quotient", Params::parse(&["p=3"]).unwrap()).unwrap();
        assert_eq!(e.presentation.relators().len(), 4);
        let e = make("coxeter", Params::parse(&["matrix=1,3,inf;3,1,2;inf,2,1"]).unwrap()).unwrap();
        assert_eq!(e.presentation.relators().len(), 5);
        assert!(make("bs", Params::parse(&["q=1"]).unwrap()).is_err());
        assert!(make("nope", Params::default()).is_err());
        let e = make("moldavanskii_word", Params::parse(&["m=2", "n=3", "k=1"]).unwrap()).unwrap();
        assert_eq!(e.words.len(), 1);
        assert!(make("moldavanskii_word", Params::parse(&["m=2", "n=2"]).unwrap()).is_err());
    }

    #[test]
    fn emitted_text_round_trips() {
        for e in standard() {
            let back = Presentation::parse(&e.to_text()).unwrap();
            assert_eq!(back, e.presentation, "{}", e.name);
            let claims = crate::presentations::load_claims(&back, e.prime, &e.claims_json(), None).unwrap();
            assert_eq!(claims, e.claims, "{}", e.name);
        }
    }
}
