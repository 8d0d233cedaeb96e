//! Acceptance suite: one PASS/FAIL line per criterion, each with its time
//! budget. Every criterion runs even if an earlier one fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

use pdeficiency::abelian::{abelian_invariants, invariants_of, relation_matrix, smith_normal_form, IntMatrix};
use pdeficiency::arith::{fmt_fraction, Prime};
use pdeficiency::certify::{certify, check_supermultiplicativity, gradient_scan, verify_certificate, Family, Mode};
use pdeficiency::corpus::{self, BsQuotient};
use pdeficiency::enumeration::{low_index, order_bound, subgroup_counts, ClaimKind};
use pdeficiency::presentations::{classify, derive_p, profile_relators, Presentation};
use pdeficiency::rewriting::{simplify, subgroup_presentation, RewriteMode};
use pdeficiency::words::Alphabet;

type Check = Result<String, String>;

type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn expect_eq(what: &str, actual: &BigRational, expected: &BigRational) -> Result<(), String> {
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{what}: got {}, expected {}", fmt_fraction(actual), fmt_fraction(expected)))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let dinf = corpus::dihedral_inf();
    expect_eq("def_2(D_inf)", &dinf.presentation.p_deficiency(p(2)).unwrap(), &q(1, 1))?;
    let z = Presentation::from_strs(&["x"], &[]).unwrap();
    for prime in [2, 3, 5] {
        expect_eq(&format!("def_{prime}(Z)"), &z.p_deficiency(p(prime)).unwrap(), &q(1, 1))?;
    }
    let s = corpus::s4_3();
    expect_eq("def_3(S4(3))", &s.presentation.p_deficiency(p(3)).unwrap(), &q(1, 1))?;
    ensure(s.claims.iter().all(|c| c.claim.value == 3), || "S4(3) claims are not all 3".into())?;
    expect_eq("rdef(S4(3))", &s.rdef().unwrap().unwrap(), &q(1, 1))?;
    for n in [2, 3, 5] {
        let e = corpus::gen_triangle("a b", n).unwrap();
        let expected = q(2, 1) - q(2, 3) - q(1, 3 * n as i64);
        expect_eq(&format!("rdef(gen_triangle, n = {n})"), &e.rdef().unwrap().unwrap(), &expected)?;
    }
    let bsq = corpus::bs_quotient(&BsQuotient::standard(2, 3, 2)).unwrap();
    expect_eq("def_2(BS quotient)", &bsq.presentation.p_deficiency(bsq.prime).unwrap(), &q(1, 1))?;
    let profiles = profile_relators(&bsq.presentation, bsq.prime, &bsq.claims).unwrap();
    let big_p = derive_p(&bsq.presentation, &classify(&profiles, bsq.prime).unwrap());
    expect_eq("def_2(P)", &big_p.p_deficiency(bsq.prime).unwrap(), &q(2, 1))?;
    for (pp, qq) in [(2u64, 3u64), (3, 2)] {
        let e = corpus::cpcpcq(pp, qq, None, None).unwrap();
        expect_eq(&format!("def_{pp}(cpcpcq({pp},{qq}))"), &e.presentation.p_deficiency(p(pp)).unwrap(), &q(1, 1))?;
        let bound = q(3, 1) - q(2 * pp as i64 - 1, pp as i64) - q(1, (pp * qq) as i64);
        let rdef = e.rdef().unwrap().unwrap();
        ensure(rdef >= bound, || format!("rdef(cpcpcq({pp},{qq})) = {} below {}", fmt_fraction(&rdef), fmt_fraction(&bound)))?;
    }
    Ok("all golden values exact".into())
}

fn criterion_2() -> Check {
    let f2 = Presentation::from_strs(&["a", "b"], &[]).unwrap();
    let scan = gradient_scan(&f2, Some(p(2)), 3, Family::All).unwrap();
    let f2_records = scan.records.len();
    ensure(scan.records.iter().all(|r| r.quotient.is_one()), || "F2 record with quotient != 1".into())?;
    expect_eq("RG_2 bound for F2", &scan.infimum, &q(1, 1))?;
    let dinf = corpus::dihedral_inf().presentation;
    let scan = gradient_scan(&dinf, Some(p(2)), 2, Family::All).unwrap();
    ensure(scan.records.iter().any(|r| r.index == 2 && r.quotient.is_zero()), || "no 0-quotient record for D_inf".into())?;
    Ok(format!("F2: {f2_records} classes at 1/1; D_inf has the index-2 record 0/1"))
}

/// Number of transitive pairs in `S_n`, by listing all of them.
fn transitive_pairs(n: usize) -> usize {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let all = perms(n);
    let mut count = 0;
    for a in &all {
        for b in &all {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for y in [a[x], b[x]] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            if seen.iter().all(|&s| s) {
                count += 1;
            }
        }
    }
    count
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn criterion_3() -> Check {
    let f2 = Presentation::from_strs(&["a", "b"], &[]).unwrap();
    let counts = subgroup_counts(&low_index(&f2, 3, false), 3);
    // index-n subgroups <-> transitive actions with 1 fixed as base point
    let brute: Vec<usize> = (1..=3).map(|n| transitive_pairs(n) / factorial(n - 1)).collect();
    // a_n = n (n!)^{r-1} - sum_{k<n} ((n-k)!)^{r-1} a_k, r = 2
    let mut hall = Vec::new();
    for n in 1..=3 {
        let mut a = n * factorial(n);
        for k in 1..n {
            a -= factorial(n - k) * hall[k - 1];
        }
        hall.push(a);
    }
    ensure(counts == vec![1, 3, 13], || format!("low_index counts {counts:?}"))?;
    ensure(brute == counts, || format!("permutation oracle {brute:?} vs {counts:?}"))?;
    ensure(hall == counts, || format!("Hall recursion {hall:?} vs {counts:?}"))?;
    Ok("1/3/13 from low_index, permutation pairs and Hall's recursion".into())
}

fn criterion_4() -> Check {
    let mut checked = 0;
    for n in [2usize, 3] {
        let f = Presentation::free(Alphabet::numbered("x", n).unwrap());
        for rec in low_index(&f, 4, false) {
            for t in rec.table.conjugates() {
                let k = t.index();
                let expected = (n - 1) * k + 1;
                let h = subgroup_presentation(&f, &t, RewriteMode::Full).unwrap();
                ensure(h.generator_count() == expected, || format!("F{n} index {k}: {} generators", h.generator_count()))?;
                let s = simplify(&h);
                ensure(s.relators().is_empty() && s.generator_count() == expected, || {
                    format!("F{n} index {k}: simplified to {} generators, {} relators", s.generator_count(), s.relators().len())
                })?;
                let inv = abelian_invariants(&h);
                ensure(inv.torsion.is_empty() && inv.betti == expected, || format!("F{n} index {k}: H_1 = {inv}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} subgroups of F2 and F3"))
}

fn criterion_5() -> Check {
    let mut comparisons = 0;
    let mut divergences = Vec::new();
    for e in corpus::standard() {
        let rep = check_supermultiplicativity(&e.presentation, e.prime, 6).map_err(|err| err.to_string())?;
        if let Some(v) = rep.violations().first() {
            return Err(format!(
                "{} index {}: def_p - 1 = {}, orbit {}, d_p {}",
                e.name,
                v.index,
                fmt_fraction(&v.lhs),
                fmt_fraction(&v.orbit),
                fmt_fraction(&v.p_rank)
            ));
        }
        comparisons += rep.comparisons.len();
        let d = rep.full_mode_divergences().len();
        if d > 0 {
            divergences.push(format!("{}: {d}", e.name));
        }
    }
    if !divergences.is_empty() {
        println!("    expected full-mode divergences (orbit-reduced holds): {}", divergences.join(", "));
    }
    Ok(format!("{comparisons} normal subgroups, no violations"))
}

fn is_diagonal_chain(s: &IntMatrix) -> bool {
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if i != j && !s.get(i, j).is_zero() {
                return false;
            }
        }
    }
    let d: Vec<BigInt> = (0..s.rows().min(s.cols())).map(|i| s.get(i, i).clone()).collect();
    let nonzero = d.iter().take_while(|x| !x.is_zero()).count();
    d[nonzero..].iter().all(|x| x.is_zero())
        && d.iter().all(|x| !x.is_negative())
        && d.windows(2).take(nonzero.saturating_sub(1)).all(|w| w[1].is_multiple_of(&w[0]))
}

fn snf_ok(m: &IntMatrix) -> Result<(), String> {
    let snf = smith_normal_form(m);
    let product = snf.u.mul(m).and_then(|um| um.mul(&snf.v)).map_err(|e| e.to_string())?;
    ensure(product == snf.s, || format!("U M V != S for\n{m}"))?;
    let unimodular = |x: &IntMatrix| x.determinant().map(|d| d.abs().is_one()).unwrap_or(false);
    ensure(unimodular(&snf.u) && unimodular(&snf.v), || format!("U or V not unimodular for\n{m}"))?;
    ensure(is_diagonal_chain(&snf.s), || format!("S is not a divisibility chain:\n{}", snf.s))
}

fn criterion_6() -> Check {
    let mut runner = TestRunner::deterministic();
    let strategy = (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| (Just(c), prop::collection::vec(prop::collection::vec(-20i64..=20, c), r)));
    for _ in 0..1000 {
        let (cols, rows) = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        snf_ok(&IntMatrix::from_i64(cols, &rows).unwrap())?;
    }
    let tri = IntMatrix::from_i64(2, &[vec![3, 0], vec![0, 3], vec![3, 3]]).unwrap();
    snf_ok(&tri)?;
    let d = smith_normal_form(&tri).diagonal();
    ensure(d == vec![BigInt::from(3), BigInt::from(3)], || format!("triangle diagonal {d:?}"))?;
    let dinf = relation_matrix(&corpus::dihedral_inf().presentation);
    let d = smith_normal_form(&dinf).diagonal();
    ensure(d == vec![BigInt::from(2), BigInt::from(2)], || format!("D_inf diagonal {d:?}"))?;
    let inv = invariants_of(&relation_matrix(&corpus::wise().presentation));
    ensure(inv.torsion == vec![BigInt::from(3)] && inv.betti == 2, || format!("Wise H_1 = {inv}"))?;
    Ok("1000 random matrices and 3 goldens".into())
}

fn criterion_7() -> Check {
    let cases = [
        (corpus::bs_quotient(&BsQuotient::standard(2, 3, 2)).unwrap(), 1u8),
        (corpus::gen_triangle("a b", 2).unwrap(), 2),
        (corpus::s4_3(), 3),
    ];
    let mut certs = 0;
    let mut mutations = 0;
    for (e, branch) in &cases {
        let out = certify(&e.presentation, e.prime, &e.claims, Mode::PdefOne).map_err(|err| err.to_string())?;
        ensure(out.is_certified(), || format!("{} not certified", e.name))?;
        for c in out.certificates() {
            ensure(c.payload.branch == Some(*branch), || format!("{}: branch {:?}, expected {branch}", e.name, c.payload.branch))?;
            let text = c.to_json();
            ensure(verify_certificate(&text).unwrap_or(false), || format!("{} {:?} does not verify", e.name, c.claim))?;
            certs += 1;
            let bytes = text.as_bytes();
            for i in 0..bytes.len() {
                let mut m = bytes.to_vec();
                m[i] ^= 0x01;
                let accepted = std::str::from_utf8(&m).map(|s| verify_certificate(s).unwrap_or(false)).unwrap_or(false);
                ensure(!accepted, || format!("{} {:?}: mutation at byte {i} still verifies", e.name, c.claim))?;
                mutations += 1;
            }
        }
    }
    Ok(format!("{certs} certificates verified, {mutations} single-byte mutations rejected"))
}

fn criterion_8() -> Check {
    let s = corpus::s4_3();
    let x1 = s.presentation.parse_word("x1").unwrap();
    let c = order_bound(&s.presentation, &x1, Some(3), 12).map_err(|e| e.to_string())?;
    ensure(c.kind == ClaimKind::Exact && c.value == 3 && c.is_witnessed(), || format!("S4(3) x1: {:?} {}", c.kind, c.value))?;
    c.verify(&s.presentation).map_err(|e| e.to_string())?;
    let dinf = corpus::dihedral_inf().presentation;
    let w = dinf.parse_word("x1 x2").unwrap();
    let mut values = Vec::new();
    for max in 2..=8 {
        let c = order_bound(&dinf, &w, None, max).map_err(|e| e.to_string())?;
        ensure(c.kind == ClaimKind::AtLeast, || format!("D_inf x1 x2 at {max}: {:?}", c.kind))?;
        c.verify(&dinf).map_err(|e| e.to_string())?;
        values.push(c.value);
    }
    ensure(values.windows(2).all(|w| w[0] < w[1]), || format!("not strictly increasing: {values:?}"))?;
    Ok(format!("x1 in S4(3): Exact 3; x1 x2 in D_inf: {values:?}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "exact goldens", Duration::from_secs(1), criterion_1),
        (2, "gradient goldens", Duration::from_secs(5), criterion_2),
        (3, "subgroup-count oracle", Duration::from_secs(10), criterion_3),
        (4, "Nielsen-Schreier suite", Duration::from_secs(30), criterion_4),
        (5, "supermultiplicativity suite", Duration::from_secs(120), criterion_5),
        (6, "SNF self-verification", Duration::from_secs(30), criterion_6),
        (7, "certificate round-trip", Duration::from_secs(10), criterion_7),
        (8, "order-bound witnesses", Duration::from_secs(60), criterion_8),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (verdict, detail) = match result {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        println!("criterion {id} [{name}]: {verdict} ({elapsed:.2?}) {detail}");
        if verdict == "FAIL" {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
