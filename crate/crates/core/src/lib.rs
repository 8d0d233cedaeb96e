pub mod abelian;
pub mod arith;
pub mod certify;
pub mod cli;
pub mod corpus;
pub mod enumeration;
pub mod presentations;
pub mod rewriting;
pub mod words;
