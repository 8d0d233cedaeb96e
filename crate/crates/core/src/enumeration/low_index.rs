//! Low-index subgroups by backtracking over partial coset tables.
//!
//! The search always fills the first empty slot (row-major), so every table
//! it builds is already standard from coset 0. A branch is cut as soon as
//! renumbering from some other base coset is decidably smaller; the tables
//! that survive are the minimal representatives of their conjugacy classes.

use std::ops::ControlFlow;

use super::todd_coxeter::relator_conjugates;
use super::CosetTable;
use crate::presentations::Presentation;
use crate::rewriting::schreier_transversal;
use crate::words::Word;

const UNDEF: usize = usize::MAX;

/// One conjugacy class of finite-index subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub index: usize,
    /// Table of the class representative (minimal standardized table).
    pub table: CosetTable,
    pub is_normal: bool,
    /// Number of distinct subgroups in the class.
    pub conjugates: usize,
    /// Nontrivial Schreier generators, as words in the ambient generators.
    pub generators: Vec<Word>,
}

/// All conjugacy classes of subgroups of index at most `max_index`, each
/// with a verified complete table, sorted by index and then by table.
/// `normal_only` keeps the normal ones.
pub fn low_index(q: &Presentation, max_index: usize, normal_only: bool) -> Vec<SubgroupRecord> {
    let mut tables = Vec::new();
    let _ = search(q, max_index, normal_only, |t| {
        tables.push(t.clone());
        ControlFlow::Continue(())
    });
    let mut records: Vec<SubgroupRecord> = tables
        .into_iter()
        .filter_map(|t| {
            let is_normal = t.is_normal();
            if normal_only && !is_normal {
                return None;
            }
            let conjugates = if is_normal { 1 } else { t.conjugate_count() };
            let generators = schreier_transversal(&t).generator_words();
            let table = t.with_subgens(generators.clone());
            Some(SubgroupRecord { index: table.index(), table, is_normal, conjugates, generators })
        })
        .collect();
    records.sort_by(|a, b| a.index.cmp(&b.index).then_with(|| a.table.rows().cmp(b.table.rows())));
    records
}

/// Number of subgroups (not classes) of each index `1..=max_index`.
pub fn subgroup_counts(records: &[SubgroupRecord], max_index: usize) -> Vec<usize> {
    let mut counts = vec![0; max_index];
    for r in records {
        if r.index <= max_index {
            counts[r.index - 1] += r.conjugates;
        }
    }
    counts
}

/// Calls `visit` on the representative table of every conjugacy class of
/// subgroups of index at most `max_index`, in search order. The visitor can
/// stop the search early.
pub fn low_index_visit<F>(q: &Presentation, max_index: usize, visit: F) -> ControlFlow<()>
where
    F: FnMut(&CosetTable) -> ControlFlow<()>,
{
    search(q, max_index, false, visit)
}

fn search<F>(q: &Presentation, max_index: usize, normal_only: bool, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&CosetTable) -> ControlFlow<()>,
{
    if max_index == 0 {
        return ControlFlow::Continue(());
    }
    let cols = 2 * q.generator_count();
    let mut s = Search {
        q,
        cols,
        max: max_index,
        normal_only,
        conjugates: relator_conjugates(q),
        table: vec![UNDEF; max_index * cols],
        cosets: 1,
        trail: Vec::new(),
        queue: Vec::new(),
    };
    s.dfs(&mut visit)
}

struct Search<'a> {
    q: &'a Presentation,
    cols: usize,
    max: usize,
    /// Prune any branch where renumbering from another base coset already
    /// disagrees: a normal subgroup's table is the same from every base.
    normal_only: bool,
    conjugates: Vec<Vec<Vec<usize>>>,
    table: Vec<usize>,
    cosets: usize,
    trail: Vec<usize>,
    queue: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.cols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        let cols = self.cols;
        self.table[c * cols + x] = d;
        self.table[d * cols + (x ^ 1)] = c;
        self.trail.push(c * cols + x);
        self.trail.push(d * cols + (x ^ 1));
        self.queue.push((c, x));
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let pos = self.trail.pop().expect("trail");
            self.table[pos] = UNDEF;
        }
        self.queue.clear();
    }

    /// Scans `w` from `c`, filling a single gap if there is one.
    fn scan(&mut self, c: usize, w: &[usize]) -> bool {
        let mut f = c;
        let mut i = 0;
        while i < w.len() && self.get(f, w[i]) != UNDEF {
            f = self.get(f, w[i]);
            i += 1;
        }
        if i == w.len() {
            return f == c;
        }
        let mut b = c;
        let mut j = w.len();
        while j > i && self.get(b, w[j - 1] ^ 1) != UNDEF {
            b = self.get(b, w[j - 1] ^ 1);
            j -= 1;
        }
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            self.set(f, w[i], b);
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some((c, x)) = self.queue.pop() {
            for k in 0..self.conjugates[x].len() {
                let w = std::mem::take(&mut self.conjugates[x][k]);
                let ok = self.scan(c, &w);
                self.conjugates[x][k] = w;
                if !ok {
                    return false;
                }
            }
            let d = self.get(c, x);
            for k in 0..self.conjugates[x ^ 1].len() {
                let w = std::mem::take(&mut self.conjugates[x ^ 1][k]);
                let ok = self.scan(d, &w);
                self.conjugates[x ^ 1][k] = w;
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// False if renumbering from some other base coset gives a table that is
    /// decidably smaller in row-major order.
    fn canonical(&self) -> bool {
        let n = self.cosets;
        let mut new_of = vec![UNDEF; n];
        let mut old_of = Vec::with_capacity(n);
        'base: for alpha in 1..n {
            new_of.iter_mut().for_each(|v| *v = UNDEF);
            old_of.clear();
            new_of[alpha] = 0;
            old_of.push(alpha);
            for i in 0..n {
                if i >= old_of.len() {
                    continue 'base;
                }
                let old = old_of[i];
                for x in 0..self.cols {
                    let orig = self.get(i, x);
                    let img = self.get(old, x);
                    if orig == UNDEF || img == UNDEF {
                        continue 'base;
                    }
                    let mapped = if new_of[img] == UNDEF {
                        new_of[img] = old_of.len();
                        old_of.push(img);
                        new_of[img]
                    } else {
                        new_of[img]
                    };
                    if mapped < orig || (self.normal_only && mapped != orig) {
                        return false;
                    }
                    if mapped > orig {
                        continue 'base;
                    }
                }
            }
        }
        true
    }

    fn attempt<F>(&mut self, c: usize, x: usize, d: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&CosetTable) -> ControlFlow<()>,
    {
        let mark = self.trail.len();
        self.set(c, x, d);
        let flow = if self.propagate() && self.canonical() {
            self.dfs(visit)
        } else {
            ControlFlow::Continue(())
        };
        self.undo(mark);
        flow
    }

    fn dfs<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&CosetTable) -> ControlFlow<()>,
    {
        let n = self.cosets;
        let Some(pos) = self.table[..n * self.cols].iter().position(|&e| e == UNDEF) else {
            let rows = self.table[..n * self.cols].chunks(self.cols).map(|r| r.to_vec()).collect();
            let t = CosetTable::from_complete(self.cols / 2, Vec::new(), rows);
            debug_assert!(t.validate(self.q).is_ok());
            return visit(&t);
        };
        let (c, x) = (pos / self.cols, pos % self.cols);
        for d in 0..n {
            if self.get(d, x ^ 1) == UNDEF {
                self.attempt(c, x, d, visit)?;
            }
        }
        if n < self.max {
            self.cosets += 1;
            let flow = self.attempt(c, x, n, visit);
            self.cosets -= 1;
            flow?;
        }
        ControlFlow::Continue(())
    }
}
