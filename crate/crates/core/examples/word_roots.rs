//! Minimal roots and p-roots of relator words.
//!
//! `cargo run --example word_roots`

use pdeficiency::arith::Prime;
use pdeficiency::presentations::Presentation;

fn main() {
    let q = Presentation::from_strs(&["a", "b"], &[]).unwrap();
    let p = Prime::new(2).unwrap();
    for text in ["(a b)^12", "b^-1 (a b^2)^6 b", "a b a^-1 b^-1", "a^8"] {
        let w = q.parse_word(text).unwrap();
        let root = w.primitive_root().unwrap();
        let v = root.p_valuation(p);
        println!(
            "{text:>18}  root {:<12} m = {:<3} 2-root {:<16} nu_2 = {}",
            q.word_text(&root.root),
            root.multiplicity,
            q.word_text(&v.p_root),
            v.exponent
        );
    }
}
