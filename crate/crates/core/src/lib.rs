pub mod equations;
pub mod error;
pub mod exactnum;
pub mod heisenberg;
pub mod ideals;
pub mod linalg;
pub mod polyring;
pub mod report;
pub mod simplicial;
pub mod theta;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/exact-numbers.md")]
    pub struct ExactNumbers;
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub struct Polynomials;
    #[doc = include_str!("../../../book/src/heisenberg.md")]
    pub struct Heisenberg;
    #[doc = include_str!("../../../book/src/matrices.md")]
    pub struct Matrices;
    #[doc = include_str!("../../../book/src/complexes.md")]
    pub struct Complexes;
    #[doc = include_str!("../../../book/src/ideals.md")]
    pub struct Ideals;
    #[doc = include_str!("../../../book/src/theta.md")]
    pub struct Theta;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
