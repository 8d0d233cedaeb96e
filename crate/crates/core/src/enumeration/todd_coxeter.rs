//! Felsch-style coset enumeration: cosets are defined one at a time at the
//! first empty slot, and every new entry is pushed on a deduction stack that
//! is drained by scanning the relator conjugates beginning with that letter.

use super::{CosetTable, EnumerationError};
use crate::presentations::Presentation;
use crate::words::Word;

const UNDEF: usize = usize::MAX;

/// Outcome of a bounded enumeration. Running out of cosets never implies
/// that the index is infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    Inconclusive { cosets_defined: usize },
}

impl Enumeration {
    pub fn table(self) -> Option<CosetTable> {
        match self {
            Enumeration::Complete(t) => Some(t),
            Enumeration::Inconclusive { .. } => None,
        }
    }
}

/// Enumerates the cosets of `⟨subgens⟩` in the group of `q`, defining at most
/// `max_cosets` cosets in total (including ones later found to coincide).
pub fn todd_coxeter(
    q: &Presentation,
    subgens: &[Word],
    max_cosets: usize,
) -> Result<Enumeration, EnumerationError> {
    for h in subgens {
        h.check_alphabet(q.generator_count())?;
    }
    if max_cosets == 0 {
        return Err(EnumerationError::ZeroBudget);
    }
    let mut e = Enumerator::new(q, subgens, max_cosets);
    Ok(match e.run() {
        Ok(()) => {
            let t = e.finish(subgens.to_vec());
            t.validate(q)?;
            Enumeration::Complete(t)
        }
        Err(Exhausted) => Enumeration::Inconclusive { cosets_defined: e.table.len() },
    })
}

struct Exhausted;

struct Enumerator {
    cols: usize,
    /// Cyclic conjugates of all relators and their inverses, grouped by
    /// first letter code.
    conjugates: Vec<Vec<Vec<usize>>>,
    subgens: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    deductions: Vec<(usize, usize)>,
    max_cosets: usize,
}

pub(super) fn relator_conjugates(q: &Presentation) -> Vec<Vec<Vec<usize>>> {
    let cols = 2 * q.generator_count();
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cols];
    for r in q.relators() {
        if r.is_empty() {
            continue;
        }
        let (core, _) = r.cyclic_reduce();
        for w in [core.clone(), core.inverse()] {
            let codes: Vec<usize> = w.letters().iter().map(|l| l.code()).collect();
            for s in 0..codes.len() {
                let rot: Vec<usize> = codes[s..].iter().chain(&codes[..s]).copied().collect();
                if !by_first[rot[0]].contains(&rot) {
                    by_first[rot[0]].push(rot);
                }
            }
        }
    }
    by_first
}

impl Enumerator {
    fn new(q: &Presentation, subgens: &[Word], max_cosets: usize) -> Self {
        let cols = 2 * q.generator_count();
        Enumerator {
            cols,
            conjugates: relator_conjugates(q),
            subgens: subgens
                .iter()
                .map(|w| w.letters().iter().map(|l| l.code()).collect())
                .collect(),
            table: vec![vec![UNDEF; cols]],
            parent: vec![0],
            deductions: Vec::new(),
            max_cosets,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, Exhausted> {
        if self.table.len() >= self.max_cosets {
            return Err(Exhausted);
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        self.deductions.push((c, x));
        Ok(d)
    }

    fn run(&mut self) -> Result<(), Exhausted> {
        for i in 0..self.subgens.len() {
            let h = self.subgens[i].clone();
            self.scan_and_fill(0, &h)?;
            self.process_deductions();
        }
        self.process_deductions();
        let mut c = 0;
        while c < self.table.len() {
            for x in 0..self.cols {
                if !self.live(c) {
                    break;
                }
                if self.table[c][x] == UNDEF {
                    self.define(c, x)?;
                    self.process_deductions();
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), Exhausted> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut i = 0;
        let mut b = c;
        let mut j = w.len();
        loop {
            while i < j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.table[b][w[j - 1] ^ 1] != UNDEF {
                b = self.table[b][w[j - 1] ^ 1];
                j -= 1;
            }
            if j < i {
                unreachable!("forward and backward scans crossed");
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                self.deductions.push((f, w[i]));
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scan without defining new cosets.
    fn scan(&mut self, c: usize, w: &[usize]) {
        let mut f = c;
        let mut i = 0;
        while i < w.len() && self.table[f][w[i]] != UNDEF {
            f = self.table[f][w[i]];
            i += 1;
        }
        if i == w.len() {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        let mut j = w.len();
        while j > i && self.table[b][w[j - 1] ^ 1] != UNDEF {
            b = self.table[b][w[j - 1] ^ 1];
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincidence(f, b);
            }
        } else if j == i + 1 {
            self.table[f][w[i]] = b;
            self.table[b][w[i] ^ 1] = f;
            self.deductions.push((f, w[i]));
        }
    }

    fn process_deductions(&mut self) {
        loop {
            while let Some((c, x)) = self.deductions.pop() {
                if !self.live(c) {
                    continue;
                }
                for k in 0..self.conjugates[x].len() {
                    if !self.live(c) {
                        break;
                    }
                    let w = self.conjugates[x][k].clone();
                    self.scan(c, &w);
                }
                if !self.live(c) {
                    continue;
                }
                let d = self.table[c][x];
                if d == UNDEF || !self.live(d) {
                    continue;
                }
                for k in 0..self.conjugates[x ^ 1].len() {
                    if !self.live(d) {
                        break;
                    }
                    let w = self.conjugates[x ^ 1][k].clone();
                    self.scan(d, &w);
                }
            }
            // subgroup generators only constrain coset 0
            let before = self.deductions.len();
            for i in 0..self.subgens.len() {
                let h = self.subgens[i].clone();
                if !h.is_empty() {
                    self.scan(0, &h);
                }
            }
            if self.deductions.len() == before {
                break;
            }
        }
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == UNDEF {
                    continue;
                }
                if self.table[d][x ^ 1] == g {
                    self.table[d][x ^ 1] = UNDEF;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != UNDEF {
                    let t = self.table[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][x ^ 1] != UNDEF {
                    let t = self.table[nu][x ^ 1];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                    self.deductions.push((mu, x));
                }
            }
        }
    }

    /// Compacts the live cosets into a standardized table.
    fn finish(&self, subgens: Vec<Word>) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.live(c)).collect();
        let mut new_of = vec![UNDEF; self.table.len()];
        for (i, &c) in live.iter().enumerate() {
            new_of[c] = i;
        }
        let rows = live
            .iter()
            .map(|&c| self.table[c].iter().map(|&t| new_of[t]).collect())
            .collect();
        let gens = self.cols / 2;
        CosetTable::from_complete(gens, Vec::new(), rows).standardize(0).with_subgens(subgens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_s3() {
        let q = Presentation::from_strs(&["a", "b"], &["a^2", "b^2", "(a b)^3"]).unwrap();
        let t = todd_coxeter(&q, &[], 64).unwrap().table().unwrap();
        assert_eq!(t.index(), 6);
        t.validate(&q).unwrap();
    }

    #[test]
    fn infinite_dihedral() {
        let q = Presentation::from_strs(&["x1", "x2"], &["x1^2", "x2^2"]).unwrap();
        let h = q.parse_word("x1 x2").unwrap();
        let t = todd_coxeter(&q, &[h], 64).unwrap().table().unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(
            todd_coxeter(&q, &[], 100).unwrap(),
            Enumeration::Inconclusive { cosets_defined: 100 }
        );
    }

    #[test]
    fn larger_finite_groups() {
        // A5 = <a, b | a^2, b^3, (ab)^5>
        let a5 = Presentation::from_strs(&["a", "b"], &["a^2", "b^3", "(a b)^5"]).unwrap();
        assert_eq!(todd_coxeter(&a5, &[], 1000).unwrap().table().unwrap().index(), 60);
        let b = a5.parse_word("b").unwrap();
        assert_eq!(todd_coxeter(&a5, &[b], 1000).unwrap().table().unwrap().index(), 20);
        let c6 = Presentation::from_strs(&["a"], &["a^6"]).unwrap();
        let a2 = c6.parse_word("a^2").unwrap();
        assert_eq!(todd_coxeter(&c6, &[a2], 50).unwrap().table().unwrap().index(), 2);
    }

    #[test]
    fn deterministic() {
        let q = Presentation::from_strs(&["a", "b"], &["a^3", "b^3", "(a b)^3"]).unwrap();
        let h = q.parse_word("a b").unwrap();
        let t1 = todd_coxeter(&q, std::slice::from_ref(&h), 500).unwrap();
        let t2 = todd_coxeter(&q, &[h], 500).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn malformed_subgroup_word() {
        let q = Presentation::from_strs(&["a"], &["a^2"]).unwrap();
        let bad = Word::generator(3);
        assert!(todd_coxeter(&q, &[bad], 10).is_err());
        assert!(todd_coxeter(&q, &[], 0).is_err());
    }
}
