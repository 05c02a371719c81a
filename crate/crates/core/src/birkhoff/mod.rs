//! Membership in varieties and pseudovarieties generated by a finite algebra.

mod alpha;
mod eps;
mod hspfin;
mod structural;

pub use alpha::{alpha_star, AlphaStar, ProductEmbedding};
pub use eps::{eps_map, greedy_generators, hsp_member, EpsMap, HspWitness, PairMember, Separation};
pub use hspfin::{hspfin_member, hspw_member, UcWitness, HSPW_RATIONALE};
pub use structural::{str_check, StrViolation};
