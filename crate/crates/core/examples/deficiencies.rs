//! Deficiency, p-deficiency and residual deficiency, then the S1/S2/S3
//! split, the derived presentation P and its inflation.
//!
//! `cargo run --example deficiencies`

use pdeficiency::arith::fmt_fraction;
use pdeficiency::corpus::{bs_quotient, BsQuotient};
use pdeficiency::presentations::{classify, derive_p, inflate, profile_relators};

fn main() {
    let e = bs_quotient(&BsQuotient::standard(2, 3, 2)).unwrap();
    let (q, p) = (&e.presentation, e.prime);
    println!("{}", e.to_text());
    println!("def   = {}", fmt_fraction(&q.deficiency()));
    println!("def_p = {}", fmt_fraction(&q.p_deficiency(p).unwrap()));
    println!("rdef  = {}", fmt_fraction(&e.rdef().unwrap().unwrap()));

    let profiles = profile_relators(q, p, &e.claims).unwrap();
    let c = classify(&profiles, p).unwrap();
    println!("classes: {:?}", c.classes);
    let big_p = derive_p(q, &c);
    println!("def_p(P) = {}", fmt_fraction(&big_p.p_deficiency(p).unwrap()));

    let inf = inflate(q, &c, p).unwrap();
    println!("epsilon = {}, b' = {}", fmt_fraction(&inf.epsilon), inf.b_prime);
    println!("def_p(Q') = {}", fmt_fraction(&inf.presentation.p_deficiency(p).unwrap()));
}
