//! Rank-gradient scans over finite-index subgroups and the presentation-level
//! supermultiplicativity comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::CertifyError;
use crate::abelian::{abelian_invariants, p_rank};
use crate::arith::{fmt_fraction, Prime};
use crate::enumeration::{low_index, SubgroupRecord};
use crate::presentations::Presentation;
use crate::rewriting::{simplify, subgroup_presentation, RewriteMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    All,
    Normal,
}

/// One subgroup of the scan. With a prime, `rank_lower == rank_upper == d_p`.
/// Without one, the rank `d(H)` is bracketed by the abelianization rank and
/// the generator count of the simplified subgroup presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientRecord {
    pub index: usize,
    pub table: Vec<Vec<usize>>,
    pub is_normal: bool,
    pub rank_lower: usize,
    pub rank_upper: usize,
    /// `(rank_lower - 1) / k`
    pub quotient: BigRational,
    /// `(rank_upper - 1) / k`
    pub upper_quotient: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientScan {
    pub prime: Option<Prime>,
    pub family: Family,
    pub max_index: usize,
    pub records: Vec<GradientRecord>,
    /// Minimum of `upper_quotient` over the records: an upper bound on the
    /// (p-)rank gradient restricted to the scanned family.
    pub infimum: BigRational,
}

impl GradientScan {
    pub fn label(&self) -> String {
        let fam = match self.family {
            Family::All => "all subgroups",
            Family::Normal => "normal subgroups",
        };
        let what = match self.prime {
            Some(p) => format!("RG_{p}"),
            None => "RG".to_string(),
        };
        format!("upper bound on {what} over scanned family ({fam} of index <= {})", self.max_index)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "prime": self.prime.map(|p| p.get()),
            "family": self.family,
            "max_index": self.max_index,
            "label": self.label(),
            "infimum": fmt_fraction(&self.infimum),
            "records": self.records.iter().map(|r| serde_json::json!({
                "index": r.index,
                "normal": r.is_normal,
                "rank_lower": r.rank_lower,
                "rank_upper": r.rank_upper,
                "quotient": fmt_fraction(&r.quotient),
                "upper_quotient": fmt_fraction(&r.upper_quotient),
                "table": r.table,
            })).collect::<Vec<_>>(),
        })
    }
}

fn ratio(num: i64, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gradient_scan(
    q: &Presentation,
    p: Option<Prime>,
    max_index: usize,
    family: Family,
) -> Result<GradientScan, CertifyError> {
    let subgroups = low_index(q, max_index, family == Family::Normal);
    let mut records = Vec::with_capacity(subgroups.len());
    for s in &subgroups {
        let h = subgroup_presentation(q, &s.table, RewriteMode::OrbitReduced)?;
        let (lower, upper) = match p {
            Some(p) => {
                let d = p_rank(&h, p);
                (d, d)
            }
            None => {
                let simple = simplify(&h);
                (abelian_invariants(&simple).rank_lower_bound(), simple.generator_count())
            }
        };
        records.push(GradientRecord {
            index: s.index,
            table: s.table.rows().to_vec(),
            is_normal: s.is_normal,
            rank_lower: lower,
            rank_upper: upper,
            quotient: ratio(lower as i64 - 1, s.index),
            upper_quotient: ratio(upper as i64 - 1, s.index),
        });
    }
    let infimum = records
        .iter()
        .map(|r| r.upper_quotient.clone())
        .min()
        .expect("the whole group is always scanned");
    Ok(GradientScan { prime: p, family, max_index, records, infimum })
}

/// One normal subgroup in the supermultiplicativity comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub index: usize,
    pub table: Vec<Vec<usize>>,
    /// `def_p(Q) - 1`
    pub lhs: BigRational,
    /// `(def_p(H) - 1) / k` for the orbit-reduced subgroup presentation.
    pub orbit: BigRational,
    /// `(def_p(H) - 1) / k` for the full subgroup presentation.
    pub full: BigRational,
    /// `(d_p(H) - 1) / k`
    pub p_rank: BigRational,
}

impl Comparison {
    pub fn orbit_holds(&self) -> bool {
        self.lhs <= self.orbit
    }

    pub fn full_holds(&self) -> bool {
        self.lhs <= self.full
    }

    pub fn p_rank_holds(&self) -> bool {
        self.lhs <= self.p_rank
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupermultiplicativityReport {
    pub prime: Prime,
    pub def_p: BigRational,
    pub comparisons: Vec<Comparison>,
}

impl SupermultiplicativityReport {
    /// Comparisons failing in orbit-reduced form or against `d_p`.
    pub fn violations(&self) -> Vec<&Comparison> {
        self.comparisons.iter().filter(|c| !c.orbit_holds() || !c.p_rank_holds()).collect()
    }

    /// Comparisons that fail only for the full rewriting.
    pub fn full_mode_divergences(&self) -> Vec<&Comparison> {
        self.comparisons.iter().filter(|c| !c.full_holds() && c.orbit_holds()).collect()
    }
}

/// Compares `def_p(Q) - 1` with the per-index p-deficiency and p-rank of
/// every normal subgroup of index at most `max_index`. Violations are
/// reported, not raised.
pub fn check_supermultiplicativity(
    q: &Presentation,
    p: Prime,
    max_index: usize,
) -> Result<SupermultiplicativityReport, CertifyError> {
    let def_p = q.p_deficiency(p)?;
    let lhs = &def_p - BigRational::one();
    let mut comparisons = Vec::new();
    for s in low_index(q, max_index, true) {
        comparisons.push(compare(q, p, &s, &lhs)?);
    }
    Ok(SupermultiplicativityReport { prime: p, def_p, comparisons })
}

fn compare(q: &Presentation, p: Prime, s: &SubgroupRecord, lhs: &BigRational) -> Result<Comparison, CertifyError> {
    let k = BigRational::from_integer(BigInt::from(s.index));
    let orbit = subgroup_presentation(q, &s.table, RewriteMode::OrbitReduced)?;
    let full = subgroup_presentation(q, &s.table, RewriteMode::Full)?;
    let per_index = |x: BigRational| (x - BigRational::one()) / &k;
    Ok(Comparison {
        index: s.index,
        table: s.table.rows().to_vec(),
        lhs: lhs.clone(),
        orbit: per_index(orbit.p_deficiency(p)?),
        full: per_index(full.p_deficiency(p)?),
        p_rank: ratio(p_rank(&orbit, p) as i64 - 1, s.index),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn free_group_gradient_is_one() {
        let f2 = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        let scan = gradient_scan(&f2, Some(p(2)), 3, Family::All).unwrap();
        assert_eq!(scan.records.len(), 11);
        assert!(scan.records.iter().all(|r| r.quotient == int(1)));
        assert_eq!(scan.infimum, int(1));
        let scan = gradient_scan(&f2, None, 3, Family::All).unwrap();
        assert!(scan.records.iter().all(|r| r.rank_lower == r.rank_upper && r.quotient == int(1)));
    }

    #[test]
    fn dihedral_translation_record() {
        let dinf = Presentation::from_strs(&["x1", "x2"], &["x1^2", "x2^2"]).unwrap();
        let scan = gradient_scan(&dinf, Some(p(2)), 2, Family::All).unwrap();
        assert!(scan.records.iter().any(|r| r.index == 2 && r.quotient == int(0)));
        assert_eq!(scan.infimum, int(0));
        assert!(scan.label().starts_with("upper bound on RG_2"));
    }

    #[test]
    fn index_one_only() {
        let tri = Presentation::from_strs(&["a", "b"], &["a^3", "b^3", "(a b)^3"]).unwrap();
        let scan = gradient_scan(&tri, Some(p(3)), 1, Family::All).unwrap();
        assert_eq!(scan.records.len(), 1);
        assert_eq!(scan.records[0].quotient, int(1));
    }

    #[test]
    fn supermultiplicativity_examples() {
        let f2 = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        let rep = check_supermultiplicativity(&f2, p(3), 3).unwrap();
        assert!(rep.comparisons.iter().all(|c| c.lhs == c.orbit && c.orbit == int(1)));

        let dinf = Presentation::from_strs(&["x1", "x2"], &["x1^2", "x2^2"]).unwrap();
        let rep = check_supermultiplicativity(&dinf, p(2), 2).unwrap();
        assert!(rep.violations().is_empty());
        assert!(rep.comparisons.iter().any(|c| c.index == 2 && c.p_rank == int(0)));

        let tri = Presentation::from_strs(&["a", "b"], &["a^3", "b^3", "(a b)^3"]).unwrap();
        let rep = check_supermultiplicativity(&tri, p(3), 3).unwrap();
        assert!(rep.violations().is_empty());
        assert_eq!(rep.def_p, int(1));
        assert!(rep.comparisons.iter().filter(|c| c.index == 3).all(|c| c.orbit >= int(0)));
    }
}
