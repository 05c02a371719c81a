//! Term clones of finite algebras and checks against them.

mod central;
mod free;
mod identity;
mod level;

pub use central::{c2_sides, c3_sides, check_central, CentralViolation};
pub(crate) use free::pointwise_algebra;
pub use free::{downarrow_eval, free_algebra, rank_points, FreeAlgebra, TermOpIndex};
pub use identity::{
    check_hyperidentity_bounded, check_identity, check_meta_identity, interpret_metaterm, interpret_qterm, term_op,
    Counterexample, HyperCounterexample, PointCounterexample, DEFAULT_HYPER_BUDGET,
};
pub use level::{clone_gen, CloneLevel, DEFAULT_CLONE_BUDGET};
