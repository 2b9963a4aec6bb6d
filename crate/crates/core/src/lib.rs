pub mod arith;
pub mod sieve;
pub mod sum;
pub mod counting;
pub mod dickman;
pub mod survey;
pub mod cli;
