//! Abelianization: relation matrices, Smith normal form, Betti numbers and
//! mod-p ranks.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::Prime;
use crate::presentations::Presentation;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("bad integer entry {0:?}")]
    BadEntry(String),
    #[error("dimension mismatch: {0}")]
    Dimensions(String),
}

/// A dense integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, entries: Vec<Vec<BigInt>>) -> Result<Self, MatrixError> {
        for (row, r) in entries.iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::Ragged { row, got: r.len(), expected: cols });
            }
        }
        Ok(IntMatrix { rows: entries.len(), cols, entries })
    }

    pub fn from_i64(cols: usize, entries: &[Vec<i64>]) -> Result<Self, MatrixError> {
        IntMatrix::from_rows(cols, entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimensions(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += &self.entries[i][k] * &other.entries[k][j];
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Dimensions("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    /// Rank over the field with `p` elements, by Gaussian elimination.
    pub fn rank_mod_p(&self, p: Prime) -> usize {
        let pm = BigInt::from(p.get());
        let p = p.get() as u128;
        let mut a: Vec<Vec<u128>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.mod_floor(&pm).to_u128().expect("reduced mod p")).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| a[i][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = mod_inverse(a[rank][col], p);
            for j in col..self.cols {
                a[rank][j] = a[rank][j] * inv % p;
            }
            for i in 0..self.rows {
                if i != rank && a[i][col] != 0 {
                    let f = a[i][col];
                    for j in col..self.cols {
                        a[i][j] = (a[i][j] + p * p - f * a[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.entries.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.entries {
            r.swap(i, j);
        }
    }

    /// `row_i += f · row_j`
    fn add_row(&mut self, i: usize, j: usize, f: &BigInt) {
        for c in 0..self.cols {
            let v = &self.entries[j][c] * f;
            self.entries[i][c] += v;
        }
    }

    /// `col_i += f · col_j`
    fn add_col(&mut self, i: usize, j: usize, f: &BigInt) {
        for r in &mut self.entries {
            let v = &r[j] * f;
            r[i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.entries[i] {
            *x = -&*x;
        }
    }
}

fn mod_inverse(a: u128, p: u128) -> u128 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u128);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.entries {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.parse::<BigInt>().map_err(|_| MatrixError::BadEntry(x.clone())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        IntMatrix::from_rows(cols, entries).map_err(serde::de::Error::custom)
    }
}

/// Rows are relators, columns generators, entries exponent sums.
pub fn relation_matrix(q: &Presentation) -> IntMatrix {
    let n = q.generator_count();
    let entries = q
        .relators()
        .iter()
        .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
        .collect();
    IntMatrix { rows: q.relators().len(), cols: n, entries }
}

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal, its diagonal
/// nonnegative and each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.entries[i][i].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &s.entries[i][j];
                    if !x.is_zero() && pivot.is_none_or(|(a, b)| x.abs() < s.entries[a][b].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(s, u, v, m);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = s.entries[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let f = -s.entries[i][t].div_floor(&p);
                if !f.is_zero() {
                    s.add_row(i, t, &f);
                    u.add_row(i, t, &f);
                }
                clean &= s.entries[i][t].is_zero();
            }
            for j in t + 1..cols {
                let f = -s.entries[t][j].div_floor(&p);
                if !f.is_zero() {
                    s.add_col(j, t, &f);
                    v.add_col(j, t, &f);
                }
                clean &= s.entries[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.entries[i][j].is_multiple_of(&p)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.entries[t][t].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(s, u, v, m)
}

fn finish(s: IntMatrix, u: IntMatrix, v: IntMatrix, m: &IntMatrix) -> Smith {
    debug_assert_eq!(u.mul(m).and_then(|um| um.mul(&v)).expect("dimensions"), s);
    Smith { s, u, v }
}

/// `Z^betti ⊕ ⊕ Z/torsion_i`, with `torsion_i | torsion_{i+1}` and each > 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    #[serde(serialize_with = "ser_bigs", deserialize_with = "de_bigs")]
    pub torsion: Vec<BigInt>,
    pub betti: usize,
}

fn ser_bigs<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

fn de_bigs<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    let v: Vec<String> = Vec::deserialize(d)?;
    v.iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect()
}

impl AbelianInvariants {
    /// `dim H_1(-; F_p)` read off the invariants.
    pub fn p_rank(&self, p: Prime) -> usize {
        let p = BigInt::from(p.get());
        self.betti + self.torsion.iter().filter(|d| d.is_multiple_of(&p)).count()
    }

    /// Lower bound on the rank: `betti` plus the number of cyclic factors.
    pub fn rank_lower_bound(&self) -> usize {
        self.betti + self.torsion.len()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { "Z".to_string() } else { format!("Z^{}", self.betti) });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn abelian_invariants(q: &Presentation) -> AbelianInvariants {
    invariants_of(&relation_matrix(q))
}

pub fn invariants_of(m: &IntMatrix) -> AbelianInvariants {
    let diag = smith_normal_form(m).diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    AbelianInvariants {
        torsion: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
        betti: m.cols - nonzero,
    }
}

/// `d_p`: generators minus the rank of the relation matrix mod `p`.
pub fn p_rank(q: &Presentation, p: Prime) -> usize {
    q.generator_count() - relation_matrix(q).rank_mod_p(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix) -> Smith {
        let sm = smith_normal_form(m);
        assert_eq!(sm.u.mul(m).unwrap().mul(&sm.v).unwrap(), sm.s);
        assert_eq!(sm.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(sm.v.determinant().unwrap().abs(), BigInt::one());
        for i in 0..sm.s.rows() {
            for j in 0..sm.s.cols() {
                if i != j {
                    assert!(sm.s.get(i, j).is_zero());
                }
            }
        }
        let d = sm.diagonal();
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            assert!(if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        }
        sm
    }

    #[test]
    fn goldens() {
        let tri = Presentation::from_strs(&["a", "b"], &["a^3", "b^3", "(a b)^3"]).unwrap();
        let m = relation_matrix(&tri);
        assert_eq!(m, IntMatrix::from_i64(2, &[vec![3, 0], vec![0, 3], vec![3, 3]]).unwrap());
        assert_eq!(check(&m).diagonal(), big(&[3, 3]));
        let inv = abelian_invariants(&tri);
        assert_eq!((inv.torsion.clone(), inv.betti), (big(&[3, 3]), 0));

        let dinf = Presentation::from_strs(&["x1", "x2"], &["x1^2", "x2^2"]).unwrap();
        assert_eq!(check(&relation_matrix(&dinf)).diagonal(), big(&[2, 2]));

        let diag = IntMatrix::from_i64(2, &[vec![1, 0], vec![0, 6]]).unwrap();
        let sm = check(&diag);
        assert_eq!((sm.s.clone(), sm.u.clone(), sm.v.clone()), (diag, IntMatrix::identity(2), IntMatrix::identity(2)));

        let zee = Presentation::from_strs(&["x"], &[]).unwrap();
        assert_eq!(abelian_invariants(&zee), AbelianInvariants { torsion: vec![], betti: 1 });
    }

    #[test]
    fn wise_group() {
        let w = Presentation::from_strs(
            &["a", "b", "s", "t"],
            &["a b a^-1 b^-1", "s^-1 a s (a b)^-2", "t^-1 b t (a b)^-2"],
        )
        .unwrap();
        let m = relation_matrix(&w);
        assert_eq!(m, IntMatrix::from_i64(4, &[vec![0; 4], vec![-1, -2, 0, 0], vec![-2, -1, 0, 0]]).unwrap());
        let inv = abelian_invariants(&w);
        assert_eq!((inv.torsion, inv.betti), (big(&[3]), 2));
    }

    #[test]
    fn p_ranks() {
        let p = |n| Prime::new(n).unwrap();
        let dinf = Presentation::from_strs(&["x1", "x2"], &["x1^2", "x2^2"]).unwrap();
        assert_eq!(p_rank(&dinf, p(2)), 2);
        let tri = Presentation::from_strs(&["a", "b"], &["a^3", "b^3", "(a b)^3"]).unwrap();
        assert_eq!(p_rank(&tri, p(3)), 2);
        assert_eq!(p_rank(&tri, p(2)), 0);
        let f2 = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        assert_eq!(p_rank(&f2, p(7)), 2);
    }

    #[test]
    fn serde_as_strings() {
        let m = IntMatrix::from_i64(2, &[vec![1, -2], vec![3, 4]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1","-2"],["3","4"]]"#);
        assert_eq!(serde_json::from_str::<IntMatrix>(&json).unwrap(), m);
        assert!(serde_json::from_str::<IntMatrix>(r#"[["1"],["2","3"]]"#).is_err());
    }

    fn matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r)
                .prop_map(move |rows| IntMatrix::from_i64(c, &rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn smith_is_verified(m in matrix()) {
            check(&m);
        }

        #[test]
        fn p_rank_agrees_with_smith(m in matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let p = Prime::new(p).unwrap();
            let inv = invariants_of(&m);
            prop_assert_eq!(m.cols() - m.rank_mod_p(p), inv.p_rank(p));
        }
    }
}
