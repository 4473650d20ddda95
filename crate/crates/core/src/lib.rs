pub mod arith;
pub mod commalg;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod skewpoly;
pub mod phimod;
#[cfg(test)]
mod testutil;
pub mod counting;
pub mod splitting;
pub mod factorize;
pub mod parse;
pub mod cli;
