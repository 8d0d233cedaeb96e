//! Relation matrices, Smith normal form and p-ranks.
//!
//! `cargo run --example abelianization`

use pdeficiency::abelian::{abelian_invariants, p_rank, relation_matrix, smith_normal_form};
use pdeficiency::arith::Prime;
use pdeficiency::corpus::wise;

fn main() {
    let q = wise().presentation;
    let m = relation_matrix(&q);
    println!("relation matrix:\n{m}");
    let snf = smith_normal_form(&m);
    println!("SNF diagonal: {:?}", snf.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>());
    println!("H_1 = {}", abelian_invariants(&q));
    for p in [2, 3, 5] {
        println!("d_{p} = {}", p_rank(&q, Prime::new(p).unwrap()));
    }
}
