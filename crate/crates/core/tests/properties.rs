use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use pdeficiency::abelian::{abelian_invariants, p_rank};
use pdeficiency::arith::Prime;
use pdeficiency::certify::{certify, gradient_scan, verify_certificate, CertifyError, Family, Mode, Outcome};
use pdeficiency::corpus::{self, BsQuotient, CorpusEntry};
use pdeficiency::enumeration::{core, low_index, subgroup_counts, ClaimKind, Evidence};
use pdeficiency::presentations::{classify, profile_relators, ClaimTarget, Presentation, RelatorClaim};
use pdeficiency::rewriting::{schreier_transversal, simplify, subgroup_presentation, RewriteMode};

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn corpus_entries() -> Vec<CorpusEntry> {
    let mut v = corpus::standard();
    v.push(corpus::free(3, p(3)));
    v.push(corpus::triangle(2, 4, 4, p(2)).unwrap());
    v.push(corpus::bs(1, 2, p(3)).unwrap());
    v
}

#[test]
fn corpus_goldens_recompute() {
    for e in corpus_entries() {
        e.check().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        for c in &e.claims {
            c.claim.verify(&e.presentation).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
        if let Some((torsion, betti)) = &e.goldens.abelian {
            let inv = abelian_invariants(&e.presentation);
            let t: Vec<BigInt> = torsion.iter().map(|&x| BigInt::from(x)).collect();
            assert_eq!((&inv.torsion, inv.betti), (&t, *betti), "{}", e.name);
        }
    }
}

#[test]
fn asserted_claims_carry_notes() {
    for e in corpus_entries() {
        for c in &e.claims {
            if let Evidence::Asserted { note } = &c.claim.evidence {
                assert!(!note.trim().is_empty(), "{}: relator {}", e.name, c.relator);
            }
        }
    }
}

#[test]
fn wise_words_distinct() {
    let words: Vec<_> = (0..=4).map(corpus::wise_w).collect();
    for (i, w) in words.iter().enumerate() {
        assert!(!w.is_empty(), "w_{i}");
        assert!(!words[..i].contains(w), "w_{i} repeats");
    }
}

#[test]
fn p_deficiency_bounded_by_p_rank() {
    for e in corpus_entries() {
        for prime in [2, 3, 5] {
            let def = e.presentation.p_deficiency(p(prime)).unwrap();
            let rank = p_rank(&e.presentation, p(prime));
            assert!(def <= r(rank as i64, 1), "{} p = {prime}", e.name);
        }
    }
}

#[test]
fn relator_classes_partition() {
    for e in corpus_entries() {
        let profiles = profile_relators(&e.presentation, e.prime, &e.claims).unwrap();
        let Ok(c) = classify(&profiles, e.prime) else { continue };
        let mut all: Vec<usize> = c.s1().into_iter().chain(c.s2()).chain(c.s3()).collect();
        all.sort();
        assert_eq!(all, (0..e.presentation.relators().len()).collect::<Vec<_>>(), "{}", e.name);
        for i in c.s1() {
            assert_eq!(profiles[i].p_exponent, 0, "{}", e.name);
        }
        for i in c.s2().into_iter().chain(c.s3()) {
            assert!(profiles[i].p_exponent >= 1, "{}", e.name);
        }
    }
}

/// Both rewriting modes present the same subgroup: compare abelian
/// invariants and the counts of subgroups of index at most 4.
#[test]
fn rewriting_modes_agree() {
    for e in corpus::standard() {
        for rec in low_index(&e.presentation, 3, false) {
            let full = subgroup_presentation(&e.presentation, &rec.table, RewriteMode::Full).unwrap();
            let orbit = subgroup_presentation(&e.presentation, &rec.table, RewriteMode::OrbitReduced).unwrap();
            assert_eq!(abelian_invariants(&full), abelian_invariants(&orbit), "{} index {}", e.name, rec.index);
            let (full, orbit) = (simplify(&full), simplify(&orbit));
            let depth = if full.generator_count() <= 3 { 4 } else { 2 };
            assert_eq!(
                subgroup_counts(&low_index(&full, depth, false), depth),
                subgroup_counts(&low_index(&orbit, depth, false), depth),
                "{} index {}",
                e.name,
                rec.index
            );
        }
    }
}

#[test]
fn coset_tables_are_valid() {
    for e in corpus::standard() {
        for rec in low_index(&e.presentation, 4, false) {
            rec.table.validate(&e.presentation).unwrap();
            assert_eq!(rec.is_normal, core(&rec.table).index() == rec.index, "{}", e.name);
            assert_eq!(rec.conjugates, rec.table.conjugates().len(), "{}", e.name);
            let sd = schreier_transversal(&rec.table);
            let t = sd.transversal();
            for (c, w) in t.iter().enumerate() {
                assert_eq!(rec.table.trace(0, w), c);
                if let Some(prefix) = w.letters().split_last().map(|(_, rest)| rest) {
                    let prefix = pdeficiency::words::Word::from_letters(prefix.to_vec());
                    assert!(t.contains(&prefix), "{}: transversal not prefix-closed", e.name);
                }
            }
        }
    }
}

/// `N = core(H)` has index `n` and `d_p(N) - 1 <= (d(H) - 1) |H:N|` by
/// Schreier, with `d(H)` bounded by a generator count.
#[test]
fn core_reduction_bound() {
    for e in corpus::standard() {
        for rec in low_index(&e.presentation, 4, false) {
            let h = simplify(&subgroup_presentation(&e.presentation, &rec.table, RewriteMode::OrbitReduced).unwrap());
            let n_table = core(&rec.table);
            let n = n_table.index();
            assert_eq!(n % rec.index, 0);
            let big_n = subgroup_presentation(&e.presentation, &n_table, RewriteMode::OrbitReduced).unwrap();
            let dp = p_rank(&big_n, e.prime) as i64;
            let lhs = r(dp - 1, n as i64);
            let rhs = r(h.generator_count() as i64 - 1, rec.index as i64);
            assert!(lhs <= rhs, "{} index {} core {}", e.name, rec.index, n);
        }
    }
}

#[test]
fn gradient_bound_is_monotone() {
    for e in corpus::standard() {
        let mut last: Option<BigRational> = None;
        for max in 1..=4 {
            let scan = gradient_scan(&e.presentation, Some(e.prime), max, Family::All).unwrap();
            let keys: Vec<_> = scan.records.iter().map(|r| (r.index, r.table.clone())).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted, "{}: records out of order", e.name);
            if let Some(prev) = &last {
                assert!(scan.infimum <= *prev, "{} at {max}", e.name);
            }
            last = Some(scan.infimum);
        }
    }
}

#[test]
fn certification_is_deterministic() {
    for e in corpus::standard() {
        for mode in [Mode::Rg, Mode::Plarge, Mode::PdefOne] {
            let a = certify(&e.presentation, e.prime, &e.claims, mode);
            let b = certify(&e.presentation, e.prime, &e.claims, mode);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    let ja: Vec<String> = a.certificates().iter().map(|c| c.to_json()).collect();
                    let jb: Vec<String> = b.certificates().iter().map(|c| c.to_json()).collect();
                    assert_eq!(ja, jb, "{} {mode:?}", e.name);
                    for (c, text) in a.certificates().iter().zip(&ja) {
                        assert!(verify_certificate(text).unwrap(), "{} {mode:?}", e.name);
                        assert_eq!(c.assumptions.is_empty(), c.status == pdeficiency::certify::Status::Unconditional);
                    }
                }
                (Err(a), Err(b)) => assert_eq!(a.to_string(), b.to_string()),
                _ => panic!("{} {mode:?}: nondeterministic outcome", e.name),
            }
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `(d, k)` for one relator `u^(3d)`: `k` divides `3d`.
fn relator_data() -> impl Strategy<Value = (u64, u64)> {
    (1u64..=2).prop_flat_map(|d| (Just(d), prop::sample::select(divisors(3 * d))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    /// Branch selection of the `def_p(Q) = 1` checker against a direct
    /// evaluation of its case split, on `<x1, x2 | x1^3d1, x2^3d2, (x1 x2)^3d3>`
    /// with `p = 3` and exact claims `k | 3d`, `l = k / k.gcd(&d)`.
    #[test]
    fn pdef_one_branch_table(data in prop::collection::vec(relator_data(), 3)) {
        let rels: Vec<String> = ["x1", "x2", "(x1 x2)"]
            .iter()
            .zip(&data)
            .map(|(u, (d, _))| format!("{u}^{}", 3 * d))
            .collect();
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        let q = Presentation::from_strs(&["x1", "x2"], &rels).unwrap();
        let three = p(3);
        prop_assert_eq!(q.p_deficiency(three).unwrap(), BigRational::one());
        let mut claims = Vec::new();
        for (i, &(d, k)) in data.iter().enumerate() {
            let l = k / k.gcd(&d);
            claims.push(RelatorClaim::asserted(&q, three, i, ClaimTarget::Root, ClaimKind::Exact, k, "chosen").unwrap());
            claims.push(RelatorClaim::asserted(&q, three, i, ClaimTarget::PRoot, ClaimKind::Exact, l, "chosen").unwrap());
        }
        let rdef = data.iter().fold(r(2, 1), |acc, &(_, k)| acc - r(1, k as i64));
        let expected = if data.iter().any(|&(d, k)| k / k.gcd(&d) < 3) {
            Some(1)
        } else if data.iter().any(|&(_, k)| k > 3) {
            (rdef > BigRational::one()).then_some(2)
        } else {
            Some(3)
        };
        let outcome = certify(&q, three, &claims, Mode::PdefOne).unwrap();
        match (expected, &outcome) {
            (Some(b), Outcome::Certified(certs)) => {
                prop_assert!(certs.iter().all(|c| c.payload.branch == Some(b)));
                prop_assert!(certs.iter().all(|c| verify_certificate(&c.to_json()).unwrap()));
            }
            (None, Outcome::NotCertified { failed, .. }) => prop_assert_eq!(failed.as_str(), "rdef(Q) > 1"),
            _ => prop_assert!(false, "expected branch {:?}, got {:?}", expected, outcome.is_certified()),
        }
    }

    #[test]
    fn bs_quotients_are_consistent(m in 2i64..=4, n in 2i64..=4, prime in prop::sample::select(vec![2u64, 3])) {
        prop_assume!(m != n);
        let e = corpus::bs_quotient(&BsQuotient::standard(m, n, prime)).unwrap();
        e.check().unwrap();
        let c = certify(&e.presentation, e.prime, &e.claims, Mode::PdefOne).unwrap();
        prop_assert!(c.certificates().iter().all(|c| c.payload.branch == Some(1)));
    }

    #[test]
    fn gen_triangle_rdef(n in 2u64..=12) {
        let e = corpus::gen_triangle("a b", n).unwrap();
        e.check().unwrap();
        prop_assert_eq!(e.rdef().unwrap().unwrap(), r(2, 1) - r(2, 3) - r(1, 3 * n as i64));
        let outcome = certify(&e.presentation, e.prime, &e.claims, Mode::PdefOne);
        if n % 3 == 0 {
            prop_assert!(matches!(outcome, Err(CertifyError::NotPdefOne(_))));
        } else {
            prop_assert!(outcome.unwrap().is_certified());
        }
    }

    #[test]
    fn moldavanskii_words_reject_degenerate(m in -4i64..=4, n in -4i64..=4, k in -3i64..=3) {
        let w = corpus::moldavanskii_word(m, n, k);
        if k == 0 || m.abs() == n.abs() || m == 0 || n == 0 {
            prop_assert!(w.is_err());
        } else if let Ok(w) = w {
            prop_assert!(!w.is_empty());
        }
    }

    #[test]
    fn free_group_rank_gradient(n in 1usize..=3, k in 1usize..=3) {
        let f = corpus::free(n, p(2)).presentation;
        let scan = gradient_scan(&f, None, k, Family::All).unwrap();
        for rec in &scan.records {
            prop_assert_eq!(rec.rank_upper, (n - 1) * rec.index + 1);
            prop_assert_eq!(rec.rank_lower, rec.rank_upper);
        }
        prop_assert_eq!(scan.infimum.is_zero(), n == 1);
    }
}
