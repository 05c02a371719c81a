//! Finite algebras as dense operation tables, and finite-dimensional ω-ary
//! operations over their carriers.

mod algebra;
pub mod format;
mod omega;
mod table;

pub use algebra::{Assignment, FiniteAlgebra, ProductEncoding, DEFAULT_MAX_PRODUCT};
pub use format::parse_algebra;
pub use omega::{
    lemma_neu_check, omega_q, op_at, op_identity, op_seq, point_hom, semantic_dim, similar, OmegaOp,
    OmegaOpSeq, PointSeq,
};
pub use table::{table_len, FinOpTable, Tuples, MAX_TABLE};
