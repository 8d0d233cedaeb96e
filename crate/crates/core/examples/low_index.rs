//! Low-index subgroups: conjugacy classes, normality and subgroup counts.
//!
//! `cargo run --example low_index -- 4`

use pdeficiency::corpus::s4_3;
use pdeficiency::enumeration::{low_index, subgroup_counts};
use pdeficiency::presentations::Presentation;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let f2 = Presentation::from_strs(&["a", "b"], &[]).unwrap();
    let recs = low_index(&f2, max, false);
    println!("F2 subgroup counts to index {max}: {:?}", subgroup_counts(&recs, max));

    let s = s4_3();
    for r in low_index(&s.presentation, max, true) {
        let gens: Vec<String> = r.generators.iter().map(|w| s.presentation.word_text(w)).collect();
        println!("S4(3) normal subgroup of index {}: <{}>", r.index, gens.join(", "));
    }
}
