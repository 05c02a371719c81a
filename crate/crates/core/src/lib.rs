pub mod alg;
pub mod birkhoff;
pub mod clone;
mod closure;
pub mod error;
pub mod term;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;

pub use alg::{FinOpTable, FiniteAlgebra, OmegaOp, PointSeq};
pub use term::{FinTerm, MetaTerm, QTerm, Signature};
