//! Rank-gradient scans and the per-subgroup supermultiplicativity check.
//!
//! `cargo run --example rank_gradient`

use pdeficiency::arith::{fmt_fraction, Prime};
use pdeficiency::certify::{check_supermultiplicativity, gradient_scan, Family};
use pdeficiency::corpus::{dihedral_inf, free};

fn main() {
    let p = Prime::new(2).unwrap();
    for e in [free(2, p), dihedral_inf()] {
        let scan = gradient_scan(&e.presentation, Some(p), 3, Family::All).unwrap();
        println!("{}: {} = {}", e.name, scan.label(), fmt_fraction(&scan.infimum));
        let rep = check_supermultiplicativity(&e.presentation, p, 4).unwrap();
        for c in &rep.comparisons {
            println!(
                "  index {}: def_p - 1 = {} <= orbit {} (full {}), d_p bound {}",
                c.index,
                fmt_fraction(&c.lhs),
                fmt_fraction(&c.orbit),
                fmt_fraction(&c.full),
                fmt_fraction(&c.p_rank)
            );
        }
    }
}
