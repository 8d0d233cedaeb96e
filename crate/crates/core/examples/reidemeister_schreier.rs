//! Subgroup presentations in full and orbit-reduced form.
//!
//! `cargo run --example reidemeister_schreier`

use pdeficiency::abelian::abelian_invariants;
use pdeficiency::enumeration::todd_coxeter;
use pdeficiency::presentations::Presentation;
use pdeficiency::rewriting::{simplify, subgroup_presentation, subgroup_presentation_text, RewriteMode};

fn main() {
    let q = Presentation::from_strs(&["a", "b"], &["a^3", "b^3", "(a b)^3"]).unwrap();
    let h: Vec<_> = ["a b", "b a", "a^-1 b a^2"].iter().map(|w| q.parse_word(w).unwrap()).collect();
    let t = todd_coxeter(&q, &h, 1000).unwrap().table().unwrap();
    print!("{}", subgroup_presentation_text(&q, &t, RewriteMode::Full).unwrap());
    for mode in [RewriteMode::Full, RewriteMode::OrbitReduced] {
        let sub = subgroup_presentation(&q, &t, mode).unwrap();
        let s = simplify(&sub);
        println!(
            "{mode:?}: {} gens, {} relators; simplified {} gens, {} relators; H_1 = {}",
            sub.generator_count(),
            sub.relators().len(),
            s.generator_count(),
            s.relators().len(),
            abelian_invariants(&s)
        );
    }
}
