//! The p-deficiency-one checker on its three cases, with verification.
//!
//! `cargo run --example certificates`

use pdeficiency::certify::{certify, verify_certificate, Mode, Outcome};
use pdeficiency::corpus::{bs_quotient, gen_triangle, s4_3, BsQuotient};

fn main() {
    let entries = [bs_quotient(&BsQuotient::standard(2, 3, 2)).unwrap(), gen_triangle("a b", 2).unwrap(), s4_3()];
    for e in &entries {
        match certify(&e.presentation, e.prime, &e.claims, Mode::PdefOne).unwrap() {
            Outcome::Certified(certs) => {
                for c in &certs {
                    let ok = verify_certificate(&c.to_json()).unwrap();
                    println!("{}: {:?} branch {:?} {:?} verified={ok}", e.name, c.claim, c.payload.branch, c.status);
                }
            }
            Outcome::NotCertified { failed, detail } => println!("{}: {failed} fails ({detail})", e.name),
        }
    }
    let e = &entries[0];
    let out = certify(&e.presentation, e.prime, &e.claims, Mode::Plarge).unwrap();
    print!("{}", out.certificates()[0].to_json());
}
