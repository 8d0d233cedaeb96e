//! Word text syntax.
//!
//! ```text
//! word := "1" | term+
//! term := atom ("^" int)?
//! atom := name | "(" word ")"
//! ```
//!
//! Juxtaposition is the product. An identifier that is not itself a generator
//! name is split into generator names, so `abab` and `x1x2` parse when the
//! alphabet has single letters `a, b` or `x1, x2`.

use super::{Alphabet, Letter, Word, WordError};

pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, alphabet };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> WordError {
        WordError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut letters: Vec<Letter> = Vec::new();
        let mut terms = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == b'(' || c == b'1' => {
                    let t = self.term()?;
                    letters.extend_from_slice(t.letters());
                    terms += 1;
                }
                _ => break,
            }
        }
        if terms == 0 {
            return Err(self.err("expected a word"));
        }
        Ok(Word::from_letters(letters))
    }

    fn term(&mut self) -> Result<Word, WordError> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.int()?;
            // the exponent binds to the last generator of a split identifier
            return Ok(match atom {
                Atom::Names(mut parts) => {
                    let last = parts.pop().expect("nonempty identifier");
                    let head = Word::product(parts.iter());
                    head.concat(&last.pow(k))
                }
                Atom::Group(w) => w.pow(k),
            });
        }
        Ok(match atom {
            Atom::Names(parts) => Word::product(parts.iter()),
            Atom::Group(w) => w,
        })
    }

    fn atom(&mut self) -> Result<Atom, WordError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(Atom::Group(w))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Atom::Group(Word::identity()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let names = split_identifier(ident, self.alphabet)
                    .ok_or_else(|| WordError::UnknownGenerator(ident.to_string()))?;
                Ok(Atom::Names(names.into_iter().map(Word::generator).collect()))
            }
            _ => Err(self.err("expected a generator, '1' or '('")),
        }
    }

    fn int(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer exponent")
        })
    }
}

enum Atom {
    Names(Vec<Word>),
    Group(Word),
}

/// Splits an identifier into generator names, preferring an exact match and
/// otherwise the segmentation that takes the longest name first.
fn split_identifier(ident: &str, alphabet: &Alphabet) -> Option<Vec<usize>> {
    if let Some(g) = alphabet.index_of(ident) {
        return Some(vec![g]);
    }
    fn go(rest: &str, alphabet: &Alphabet, out: &mut Vec<usize>) -> bool {
        if rest.is_empty() {
            return true;
        }
        let mut cands: Vec<(usize, usize)> = alphabet
            .names()
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .map(|(g, n)| (n.len(), g))
            .collect();
        cands.sort_by(|a, b| b.cmp(a));
        for (len, g) in cands {
            out.push(g);
            if go(&rest[len..], alphabet, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let mut out = Vec::new();
    go(ident, alphabet, &mut out).then_some(out)
}
