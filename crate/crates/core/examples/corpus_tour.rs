//! Every standard corpus entry with its recomputed goldens.
//!
//! `cargo run --example corpus_tour`

use pdeficiency::arith::fmt_fraction;
use pdeficiency::corpus::standard;

fn main() {
    for e in standard() {
        e.check().unwrap();
        let q = &e.presentation;
        let rdef = e.rdef().unwrap().map(|r| fmt_fraction(&r)).unwrap_or_else(|| "?".into());
        println!(
            "{:<22} p = {}  gens {}  rels {:<3} def_{} = {:<6} rdef = {}",
            e.name,
            e.prime,
            q.generator_count(),
            q.relators().len(),
            e.prime,
            fmt_fraction(&q.p_deficiency(e.prime).unwrap()),
            rdef
        );
    }
}
