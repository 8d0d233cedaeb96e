use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::EnumerationError;
use crate::arith::lcm_u64;
use crate::presentations::Presentation;
use crate::words::{Alphabet, Letter, Word};

/// A complete coset table: the action of every signed generator on the
/// right cosets of a finite-index subgroup `H`. Coset `0` is `H` itself.
///
/// Column `2g` is generator `g`, column `2g + 1` its inverse, matching
/// [`Letter::code`]. Instances are always complete and their columns are
/// mutually inverse permutations; whether the relators of a particular
/// presentation close is checked by [`CosetTable::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetTable {
    gens: usize,
    subgens: Vec<Word>,
    rows: Vec<Vec<usize>>,
}

impl CosetTable {
    /// Checks completeness and the permutation property.
    pub fn from_rows(
        gens: usize,
        subgens: Vec<Word>,
        rows: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, EnumerationError> {
        let n = rows.len();
        if n == 0 {
            return Err(EnumerationError::InvalidTable("table has no cosets".into()));
        }
        let mut full = Vec::with_capacity(n);
        for (c, row) in rows.into_iter().enumerate() {
            if row.len() != 2 * gens {
                return Err(EnumerationError::InvalidTable(format!(
                    "row {c} has {} columns, expected {}",
                    row.len(),
                    2 * gens
                )));
            }
            let mut r = Vec::with_capacity(row.len());
            for (col, e) in row.into_iter().enumerate() {
                match e {
                    None => return Err(EnumerationError::Incomplete { coset: c, column: col }),
                    Some(t) if t >= n => {
                        return Err(EnumerationError::InvalidTable(format!(
                            "entry ({c}, {col}) = {t} is out of range"
                        )))
                    }
                    Some(t) => r.push(t),
                }
            }
            full.push(r);
        }
        for (c, row) in full.iter().enumerate() {
            for (col, &t) in row.iter().enumerate() {
                if full[t][col ^ 1] != c {
                    return Err(EnumerationError::InvalidTable(format!(
                        "columns {col} and {} are not inverse at coset {c}",
                        col ^ 1
                    )));
                }
            }
        }
        for w in &subgens {
            w.check_alphabet(gens)?;
        }
        let t = CosetTable { gens, subgens, rows: full };
        if t.standardize(0).index() != n {
            return Err(EnumerationError::InvalidTable("action is not transitive".into()));
        }
        Ok(t)
    }

    /// For tables built internally, already known to be complete.
    pub(crate) fn from_complete(gens: usize, subgens: Vec<Word>, rows: Vec<Vec<usize>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == 2 * gens));
        CosetTable { gens, subgens, rows }
    }

    /// The table of the whole group.
    pub fn trivial(gens: usize) -> Self {
        CosetTable { gens, subgens: Vec::new(), rows: vec![vec![0; 2 * gens]] }
    }

    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.gens
    }

    pub fn subgens(&self) -> &[Word] {
        &self.subgens
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub(crate) fn with_subgens(mut self, subgens: Vec<Word>) -> Self {
        self.subgens = subgens;
        self
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset][l.code()]
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.rows[c][l.code()])
    }

    /// The permutation of cosets induced by `w`.
    pub fn word_permutation(&self, w: &Word) -> Vec<usize> {
        (0..self.index()).map(|c| self.trace(c, w)).collect()
    }

    /// Checks that every relator closes at every coset and that every
    /// subgroup generator fixes coset 0.
    pub fn validate(&self, q: &Presentation) -> Result<(), EnumerationError> {
        if q.generator_count() != self.gens {
            return Err(EnumerationError::InvalidTable(format!(
                "table has {} generators, presentation has {}",
                self.gens,
                q.generator_count()
            )));
        }
        for (i, r) in q.relators().iter().enumerate() {
            for c in 0..self.index() {
                if self.trace(c, r) != c {
                    return Err(EnumerationError::RelatorFails { relator: i, coset: c });
                }
            }
        }
        for (i, h) in self.subgens.iter().enumerate() {
            if self.trace(0, h) != 0 {
                return Err(EnumerationError::SubgroupGeneratorFails(i));
            }
        }
        Ok(())
    }

    /// Renumbers cosets by first appearance, scanning from `base` row by row
    /// and column by column.
    pub fn standardize(&self, base: usize) -> CosetTable {
        let n = self.index();
        let mut new_of = vec![usize::MAX; n];
        let mut old_of = Vec::with_capacity(n);
        new_of[base] = 0;
        old_of.push(base);
        let mut i = 0;
        while i < old_of.len() {
            let old = old_of[i];
            for &t in &self.rows[old] {
                if new_of[t] == usize::MAX {
                    new_of[t] = old_of.len();
                    old_of.push(t);
                }
            }
            i += 1;
        }
        let rows = old_of
            .iter()
            .map(|&old| self.rows[old].iter().map(|&t| new_of[t]).collect())
            .collect();
        let subgens = if base == 0 { self.subgens.clone() } else { Vec::new() };
        CosetTable { gens: self.gens, subgens, rows }
    }

    /// `H` is normal iff every coset, taken as base point, yields the same
    /// standardized table.
    pub fn is_normal(&self) -> bool {
        let me = self.standardize(0);
        (1..self.index()).all(|b| self.standardize(b).rows == me.rows)
    }

    /// Number of distinct conjugates of `H`.
    pub fn conjugate_count(&self) -> usize {
        let me = self.standardize(0).rows;
        let stabilizing = (0..self.index()).filter(|&b| self.standardize(b).rows == me).count();
        self.index() / stabilizing
    }

    /// The distinct conjugates of `H`, each as a standardized table.
    pub fn conjugates(&self) -> Vec<CosetTable> {
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for b in 0..self.index() {
            let t = self.standardize(b);
            if seen.insert(t.rows.clone(), ()).is_none() {
                out.push(t);
            }
        }
        out
    }

    pub fn to_witness(&self, alphabet: &Alphabet) -> WitnessQuotient {
        WitnessQuotient {
            index: self.index(),
            table: self.rows.clone(),
            subgens: self.subgens.iter().map(|w| w.display(alphabet).to_string()).collect(),
        }
    }
}

/// Order of the image of `w` in the finite quotient acting on the cosets of
/// `t`: the lcm of the cycle lengths of its permutation.
pub fn word_order_in_quotient(t: &CosetTable, w: &Word) -> Result<u64, EnumerationError> {
    let perm = t.word_permutation(w);
    let mut seen = vec![false; perm.len()];
    let mut order = 1u64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            c = perm[c];
            len += 1;
        }
        order = lcm_u64(order, len).ok_or(EnumerationError::OrderOverflow)?;
    }
    Ok(order)
}

/// The coset table of the core of `H`: the regular action of the finite
/// permutation group generated by the columns of `t`.
pub fn core(t: &CosetTable) -> CosetTable {
    let n = t.index();
    let cols = 2 * t.generator_count();
    let col_perms: Vec<Vec<usize>> =
        (0..cols).map(|col| (0..n).map(|c| t.rows[c][col]).collect()).collect();
    let identity: Vec<usize> = (0..n).collect();
    let mut index_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index_of.insert(identity, 0);
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(cols);
        for perm in &col_perms {
            // right action: first the element, then the generator
            let next: Vec<usize> = elements[i].iter().map(|&c| perm[c]).collect();
            let idx = match index_of.get(&next) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    index_of.insert(next.clone(), j);
                    elements.push(next);
                    j
                }
            };
            row.push(idx);
        }
        rows.push(row);
        i += 1;
    }
    CosetTable::from_complete(t.generator_count(), Vec::new(), rows)
}

/// Witness quotient file: `{"index": N, "table": [[...]], "subgens": [...]}`.
/// Cosets are numbered from 0; columns follow the letter encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessQuotient {
    pub index: usize,
    pub table: Vec<Vec<usize>>,
    pub subgens: Vec<String>,
}

impl WitnessQuotient {
    /// Rebuilds the table and re-verifies it against `q`.
    pub fn load(&self, q: &Presentation) -> Result<CosetTable, EnumerationError> {
        if self.index != self.table.len() {
            return Err(EnumerationError::InvalidTable(format!(
                "index {} but {} rows",
                self.index,
                self.table.len()
            )));
        }
        let subgens = self
            .subgens
            .iter()
            .map(|s| q.parse_word(s))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = self.table.iter().map(|r| r.iter().map(|&t| Some(t)).collect()).collect();
        let t = CosetTable::from_rows(q.generator_count(), subgens, rows)?;
        t.validate(q)?;
        Ok(t)
    }
}
