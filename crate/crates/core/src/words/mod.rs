//! Free-group words over a finite alphabet.
//!
//! A [`Word`] is always freely reduced: every constructor cancels adjacent
//! inverse pairs, so downstream code can treat it as a normal form.

mod parse;

use std::fmt;

use thiserror::Error;

use crate::arith::Prime;

pub use parse::parse_word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet must contain at least one generator")]
    EmptyAlphabet,
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generator index {index} out of range for an alphabet of {len} letters")]
    OutOfRange { index: usize, len: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("the empty word has no root")]
    EmptyWord,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{op} expects {expected} argument(s), got {got}")]
    Arity { op: &'static str, expected: usize, got: usize },
}

/// Ordered list of distinct generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, WordError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(WordError::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(WordError::DuplicateName(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// `prefix1, prefix2, ..., prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Self, WordError> {
        Alphabet::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generator(&self, name: &str) -> Result<Word, WordError> {
        self.index_of(name)
            .map(Word::generator)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))
    }

    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        parse_word(text, self)
    }
}

/// A generator or its inverse. Encoded as `2 * generator + inverse`, which is
/// also the column index of the letter in a coset table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// The kinds of word composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composition {
    Concat,
    Invert,
    Power(i64),
    /// `conjugate(x, s) = s^-1 x s`
    Conjugate,
    /// `commutator(x, y) = x y x^-1 y^-1`
    Commutator,
}

/// Applies a [`Composition`] to its arguments.
pub fn compose(kind: Composition, args: &[Word]) -> Result<Word, WordError> {
    let arity = |op, expected| {
        if args.len() == expected {
            Ok(())
        } else {
            Err(WordError::Arity { op, expected, got: args.len() })
        }
    };
    match kind {
        Composition::Concat => Ok(Word::product(args.iter())),
        Composition::Invert => {
            arity("invert", 1)?;
            Ok(args[0].inverse())
        }
        Composition::Power(k) => {
            arity("power", 1)?;
            Ok(args[0].pow(k))
        }
        Composition::Conjugate => {
            arity("conjugate", 2)?;
            Ok(args[0].conjugate(&args[1]))
        }
        Composition::Commutator => {
            arity("commutator", 2)?;
            Ok(args[0].commutator(&args[1]))
        }
    }
}

/// Free reduction of a raw sequence of `(generator, sign)` pairs, checked
/// against an alphabet of `alphabet_len` letters.
pub fn reduce(raw: &[(usize, i8)], alphabet_len: usize) -> Result<Word, WordError> {
    let mut letters = Vec::with_capacity(raw.len());
    for &(g, sign) in raw {
        if g >= alphabet_len {
            return Err(WordError::OutOfRange { index: g, len: alphabet_len });
        }
        letters.push(Letter::new(g, sign < 0));
    }
    Ok(Word::from_letters(letters))
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![Letter::new(g, false)] }
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    /// Builds a word from arbitrary letters, freely reducing on the way.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        Word::from_letters(words.into_iter().flat_map(|w| w.letters.iter().copied()))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Errors if some letter does not belong to an alphabet of `len` letters.
    pub fn check_alphabet(&self, len: usize) -> Result<(), WordError> {
        match self.letters.iter().find(|l| l.generator() >= len) {
            Some(l) => Err(WordError::OutOfRange { index: l.generator(), len }),
            None => Ok(()),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::product([self, other])
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// `self^k`; negative `k` inverts first.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let (core, conj) = base.cyclic_reduce();
        // core^k is reduced whenever core is cyclically reduced
        let mut letters = Vec::with_capacity(core.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&core.letters);
        }
        Word::product([&conj, &Word { letters }, &conj.inverse()])
    }

    /// `s^-1 self s`
    pub fn conjugate(&self, s: &Word) -> Word {
        Word::product([&s.inverse(), self, s])
    }

    /// `self other self^-1 other^-1`
    pub fn commutator(&self, other: &Word) -> Word {
        Word::product([self, other, &self.inverse(), &other.inverse()])
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) => self.letters.len() == 1 || *a != b.inverse(),
            _ => true,
        }
    }

    /// Splits `self = conjugator · core · conjugator^-1` with `core`
    /// cyclically reduced and `conjugator` as short as possible.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut i = 0;
        while 2 * i + 1 < n && self.letters[i] == self.letters[n - 1 - i].inverse() {
            i += 1;
        }
        let core = Word { letters: self.letters[i..n - i].to_vec() };
        let conjugator = Word { letters: self.letters[..i].to_vec() };
        (core, conjugator)
    }

    /// The minimal root: `self = root^m` with `m` maximal.
    pub fn primitive_root(&self) -> Result<RootDecomposition, WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let (core, conjugator) = self.cyclic_reduce();
        let len = core.len();
        // smallest period first, so the first hit has the largest multiplicity
        for period in (1..=len).filter(|d| len % d == 0) {
            let block = &core.letters[..period];
            if core.letters.chunks(period).all(|c| c == block) {
                let cyclic_root = Word { letters: block.to_vec() };
                let root = Word::product([&conjugator, &cyclic_root, &conjugator.inverse()]);
                return Ok(RootDecomposition {
                    root,
                    multiplicity: (len / period) as u64,
                    conjugator,
                    cyclic_root,
                });
            }
        }
        unreachable!("a word is always a first power of itself")
    }

    /// `ν_p(self)` together with the minimal p-root.
    pub fn p_valuation(&self, p: Prime) -> Result<PValuation, WordError> {
        let root = self.primitive_root()?;
        Ok(root.p_valuation(p))
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters.iter().filter(|l| l.generator() == g).map(|l| l.sign()).sum()
    }

    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.letters {
            if l.generator() < n {
                v[l.generator()] += l.sign();
            }
        }
        v
    }

    /// Number of occurrences of generator `g` (either sign).
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.generator() == g).count()
    }

    /// Replaces every occurrence of generator `g` by `image` (and its inverse
    /// by `image^-1`).
    pub fn substitute(&self, g: usize, image: &Word) -> Word {
        let inv = image.inverse();
        Word::from_letters(self.letters.iter().flat_map(|&l| {
            let piece: Vec<Letter> = if l.generator() != g {
                vec![l]
            } else if l.is_inverse() {
                inv.letters.clone()
            } else {
                image.letters.clone()
            };
            piece
        }))
    }

    /// Applies `f` to every generator index.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_letters(self.letters.iter().map(|l| Letter::new(f(l.generator()), l.is_inverse())))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

/// Formats a word as `a b^4 a^-1`, or `1` for the identity.
pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = &self.word.letters;
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = self.alphabet.names.get(l.generator()).map(String::as_str).unwrap_or("?");
            let exp = run as i64 * l.sign();
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// `original = conjugator · cyclic_root^multiplicity · conjugator^-1` and
/// `root = conjugator · cyclic_root · conjugator^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    pub root: Word,
    pub multiplicity: u64,
    pub conjugator: Word,
    pub cyclic_root: Word,
}

impl RootDecomposition {
    pub fn p_valuation(&self, p: Prime) -> PValuation {
        let (exponent, d) = p.split(self.multiplicity);
        PValuation { prime: p, exponent, p_root: self.root.pow(d as i64) }
    }
}

/// `original = p_root^(p^exponent)`, with `exponent` maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PValuation {
    pub prime: Prime,
    pub exponent: u32,
    pub p_root: Word,
}
