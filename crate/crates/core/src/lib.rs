//! Exact symbolic computation of higher divergence maps on free algebras.

pub mod adjoint;
pub mod algebra;
pub mod bracket;
pub mod calculus;
pub mod ce;
pub mod connection;
pub mod error;
pub mod experiment;
pub mod forms;
pub mod io;
pub mod lincomb;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod ribbon;
pub mod sample;
pub mod suites;
pub mod syntax;
pub mod table1;

#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::{
    AlgebraElement, AlgebraKind, CyclicWord, Env, EnvElement, GeneratorSet, Poly, Trace, Trace2, Word,
};
pub use calculus::{Derivation, OneForm};
pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use rational::Q;
