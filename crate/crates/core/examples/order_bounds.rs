//! Witnessed order claims from finite quotients.
//!
//! `cargo run --example order_bounds`

use pdeficiency::corpus::{dihedral_inf, s4_3};
use pdeficiency::enumeration::order_bound;

fn main() {
    let s = s4_3();
    let x1 = s.presentation.parse_word("x1").unwrap();
    let c = order_bound(&s.presentation, &x1, Some(3), 12).unwrap();
    println!("S4(3): x1 has order {:?} {} (witnessed: {})", c.kind, c.value, c.is_witnessed());

    let d = dihedral_inf();
    let w = d.presentation.parse_word("x1 x2").unwrap();
    for max in 2..=8 {
        let c = order_bound(&d.presentation, &w, None, max).unwrap();
        println!("D_inf: x1 x2 order {:?} {} within index {max}", c.kind, c.value);
    }
}
