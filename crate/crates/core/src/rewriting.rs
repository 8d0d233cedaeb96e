//! Reidemeister–Schreier presentations of finite-index subgroups.
//!
//! Schreier generators are indexed by pairs `(coset, generator)` whose edge
//! is not in the breadth-first spanning tree; the generator for `(c, g)` is
//! `t_c g t_{c·g}^-1`.

use std::collections::HashSet;

use thiserror::Error;

use crate::enumeration::{CosetTable, EnumerationError};
use crate::presentations::{Presentation, PresentationError};
use crate::words::{Alphabet, Letter, Word};

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RewriteMode {
    /// One relator per (relator, coset) pair.
    Full,
    /// One relator per cycle of the relator's root on the cosets.
    OrbitReduced,
}

/// A Schreier transversal of a coset table and the resulting generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierData {
    table: CosetTable,
    transversal: Vec<Word>,
    /// `label[c][g]` is the Schreier generator of edge `(c, g)`, or `None`
    /// for a tree edge.
    label: Vec<Vec<Option<usize>>>,
    edges: Vec<(usize, usize)>,
}

/// Breadth-first transversal from coset 0, trying columns in letter-code
/// order, so the result is prefix-closed and canonical.
pub fn schreier_transversal(t: &CosetTable) -> SchreierData {
    let n = t.index();
    let gens = t.generator_count();
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    let mut tree = vec![vec![false; gens]; n];
    transversal[0] = Some(Word::identity());
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for code in 0..2 * gens {
            let l = Letter::from_code(code);
            let d = t.act(c, l);
            if transversal[d].is_none() {
                let tc = transversal[c].as_ref().expect("visited").concat(&Word::letter(l));
                transversal[d] = Some(tc);
                if l.is_inverse() {
                    tree[d][l.generator()] = true;
                } else {
                    tree[c][l.generator()] = true;
                }
                queue.push_back(d);
            }
        }
    }
    let mut label = vec![vec![None; gens]; n];
    let mut edges = Vec::new();
    for c in 0..n {
        for g in 0..gens {
            if !tree[c][g] {
                label[c][g] = Some(edges.len());
                edges.push((c, g));
            }
        }
    }
    SchreierData {
        table: t.clone(),
        transversal: transversal.into_iter().map(|w| w.expect("transitive table")).collect(),
        label,
        edges,
    }
}

impl SchreierData {
    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn generator_count(&self) -> usize {
        self.edges.len()
    }

    /// The `(coset, generator)` edge behind each Schreier generator.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Each Schreier generator `t_c g t_{c·g}^-1` as a word in the ambient
    /// generators.
    pub fn generator_words(&self) -> Vec<Word> {
        self.edges
            .iter()
            .map(|&(c, g)| {
                let d = self.table.act(c, Letter::new(g, false));
                Word::product([&self.transversal[c], &Word::generator(g), &self.transversal[d].inverse()])
            })
            .collect()
    }

    /// Rewrites the path of `w` from coset `start` as a word in the Schreier
    /// generators. From `start = 0` along a closed path this is the image
    /// of `w` in the free basis of the subgroup.
    pub fn rewrite(&self, start: usize, w: &Word) -> Word {
        let mut c = start;
        let mut out = Vec::new();
        for &l in w.letters() {
            let g = l.generator();
            if l.is_inverse() {
                let d = self.table.act(c, l);
                if let Some(y) = self.label[d][g] {
                    out.push(Letter::new(y, true));
                }
                c = d;
            } else {
                if let Some(y) = self.label[c][g] {
                    out.push(Letter::new(y, false));
                }
                c = self.table.act(c, l);
            }
        }
        Word::from_letters(out)
    }

    /// Alphabet `y1, y2, ...` for the Schreier generators.
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::numbered("y", self.generator_count().max(1)).expect("valid names")
    }
}

/// The Reidemeister–Schreier presentation of the subgroup of `t`.
pub fn subgroup_presentation(
    q: &Presentation,
    t: &CosetTable,
    mode: RewriteMode,
) -> Result<Presentation, RewriteError> {
    Ok(rewrite_with_data(q, t, mode)?.0)
}

/// As [`subgroup_presentation`], serialized with a header that records the
/// transversal and the Schreier generators.
pub fn subgroup_presentation_text(
    q: &Presentation,
    t: &CosetTable,
    mode: RewriteMode,
) -> Result<String, RewriteError> {
    let (h, data) = rewrite_with_data(q, t, mode)?;
    let mut header = vec![format!("index {} subgroup, {:?} rewriting", t.index(), mode)];
    for (c, w) in data.transversal().iter().enumerate() {
        header.push(format!("transversal {c}: {}", q.word_text(w)));
    }
    for (y, w) in data.generator_words().iter().enumerate() {
        header.push(format!("{} = {}", h.alphabet().name(y), q.word_text(w)));
    }
    Ok(h.to_text_with_header(&header))
}

fn rewrite_with_data(
    q: &Presentation,
    t: &CosetTable,
    mode: RewriteMode,
) -> Result<(Presentation, SchreierData), RewriteError> {
    t.validate(q)?;
    let data = schreier_transversal(t);
    let mut relators = Vec::new();
    for r in q.relators() {
        match mode {
            RewriteMode::Full => {
                relators.extend((0..t.index()).map(|c| data.rewrite(c, r)));
            }
            RewriteMode::OrbitReduced => {
                if r.is_empty() {
                    continue;
                }
                let u = r.primitive_root().expect("nonempty").root;
                let perm = t.word_permutation(&u);
                let mut seen = vec![false; t.index()];
                for c in 0..t.index() {
                    if seen[c] {
                        continue;
                    }
                    let mut d = c;
                    while !seen[d] {
                        seen[d] = true;
                        d = perm[d];
                    }
                    // u^l closes at c, so this is (rewrite of u^l)^(m/l)
                    relators.push(data.rewrite(c, r));
                }
            }
        }
    }
    let h = Presentation::new(data.alphabet(), relators)?;
    Ok((h, data))
}

/// Elementary Tietze moves: cyclically reduce relators, drop empty and
/// repeated relators, and eliminate a generator occurring exactly once in
/// some relator. The last generator is never eliminated.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut names: Vec<String> = p.alphabet().names().to_vec();
    let mut relators: Vec<Word> = p.relators().to_vec();
    loop {
        relators = tidy(&relators);
        if names.len() <= 1 {
            break;
        }
        let Some((i, g)) = find_eliminable(&relators, names.len()) else {
            break;
        };
        let r = relators.remove(i);
        let image = solve_for(&r, g);
        relators = relators
            .iter()
            .map(|w| w.substitute(g, &image).map_generators(|h| if h > g { h - 1 } else { h }))
            .collect();
        names.remove(g);
    }
    let alphabet = Alphabet::new(names).expect("subset of valid names");
    Presentation::new(alphabet, relators).expect("generators reindexed")
}

fn tidy(relators: &[Word]) -> Vec<Word> {
    let mut seen = HashSet::new();
    relators
        .iter()
        .map(|r| r.cyclic_reduce().0)
        .filter(|r| !r.is_empty() && seen.insert(r.clone()))
        .collect()
}

fn find_eliminable(relators: &[Word], gens: usize) -> Option<(usize, usize)> {
    relators
        .iter()
        .enumerate()
        .find_map(|(i, r)| (0..gens).find(|&g| r.occurrences(g) == 1).map(|g| (i, g)))
}

/// For a relator with exactly one occurrence of `g`, the word that `g`
/// equals in the group.
fn solve_for(r: &Word, g: usize) -> Word {
    let letters = r.letters();
    let pos = letters.iter().position(|l| l.generator() == g).expect("occurs once");
    // r = A g^e B, so g^e = A^-1 B^-1
    let a = Word::from_letters(letters[..pos].iter().copied());
    let b = Word::from_letters(letters[pos + 1..].iter().copied());
    let rest = a.inverse().concat(&b.inverse());
    if letters[pos].is_inverse() {
        rest.inverse()
    } else {
        rest
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{low_index, todd_coxeter};

    fn free(n: usize) -> Presentation {
        Presentation::free(Alphabet::numbered("x", n).unwrap())
    }

    #[test]
    fn nielsen_schreier_counts() {
        let f2 = free(2);
        let whole = CosetTable::trivial(2);
        assert_eq!(schreier_transversal(&whole).generator_count(), 2);
        for rec in low_index(&f2, 3, false) {
            let h = subgroup_presentation(&f2, &rec.table, RewriteMode::Full).unwrap();
            assert_eq!(h.generator_count(), rec.index + 1);
            assert!(h.relators().is_empty());
        }
    }

    #[test]
    fn schreier_generators_lie_in_subgroup() {
        let f2 = free(2);
        for rec in low_index(&f2, 3, false) {
            let data = schreier_transversal(&rec.table);
            for (y, w) in data.generator_words().iter().enumerate() {
                assert_eq!(rec.table.trace(0, w), 0);
                assert_eq!(data.rewrite(0, w), Word::generator(y));
            }
        }
    }

    #[test]
    fn dihedral_translation_subgroup() {
        let q = Presentation::from_strs(&["x1", "x2"], &["x1^2", "x2^2"]).unwrap();
        let h = q.parse_word("x1 x2").unwrap();
        let t = todd_coxeter(&q, &[h], 16).unwrap().table().unwrap();
        let full = subgroup_presentation(&q, &t, RewriteMode::Full).unwrap();
        assert_eq!((full.generator_count(), full.relators().len()), (3, 4));
        let s = simplify(&full);
        assert_eq!((s.generator_count(), s.relators().len()), (1, 0));
        let orbit = subgroup_presentation(&q, &t, RewriteMode::OrbitReduced).unwrap();
        assert_eq!(orbit.relators().len(), 2);
    }

    #[test]
    fn triangle_kernel() {
        let q = Presentation::from_strs(&["a", "b"], &["a^3", "b^3", "(a b)^3"]).unwrap();
        let h: Vec<Word> =
            ["a b", "b a", "a^-1 b a^2"].iter().map(|w| q.parse_word(w).unwrap()).collect();
        let t = todd_coxeter(&q, &h, 64).unwrap().table().unwrap();
        assert_eq!(t.index(), 3);
        let full = subgroup_presentation(&q, &t, RewriteMode::Full).unwrap();
        assert_eq!((full.generator_count(), full.relators().len()), (4, 9));
    }

    #[test]
    fn simplify_examples() {
        let q = Presentation::from_strs(&["a", "b"], &["b"]).unwrap();
        let s = simplify(&q);
        assert_eq!(s.alphabet().names(), &["a".to_string()]);
        assert!(s.relators().is_empty());
        let q = Presentation::from_strs(&["a", "b"], &["a^2", "a^2", "1", "b a b^-1 a^-1"]).unwrap();
        let s = simplify(&q);
        assert_eq!(s.relators().len(), 2);
        let one = Presentation::from_strs(&["a"], &["a"]).unwrap();
        assert_eq!(simplify(&one).generator_count(), 1);
    }

    #[test]
    fn header_records_transversal() {
        let q = free(2);
        let rec = &low_index(&q, 2, false)[1];
        let text = subgroup_presentation_text(&q, &rec.table, RewriteMode::Full).unwrap();
        assert!(text.contains("# transversal 0: 1"));
        let back = Presentation::parse(&text).unwrap();
        assert_eq!(back.generator_count(), 3);
    }
}
