use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clonealg_core::alg::DEFAULT_MAX_PRODUCT;
use clonealg_core::clone::DEFAULT_CLONE_BUDGET;

/// Computation with finite algebras, their clones and their ω-ary clone algebras.
///
/// Exit status: 0 holds or success, 1 violated, 2 inconclusive, 3 engine or
/// input error, 4 usage error.
#[derive(Debug, Parser)]
#[command(name = "clonealg", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Step, closure and search budget shared by all engines.
    #[arg(long, global = true, default_value_t = DEFAULT_CLONE_BUDGET)]
    pub budget: usize,
    /// Largest product carrier any command may build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PRODUCT)]
    pub max_product: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    /// Finitary term to metaterm.
    Bullet,
    /// Metaterm to finitary term.
    Circle,
}

/// Where the signature for a term comes from.
#[derive(Debug, Args)]
pub struct SigSource {
    /// Signature such as `f/2, c/0`.
    #[arg(long, conflicts_with = "alg")]
    pub sig: Option<String>,
    /// Take the signature of this algebra file.
    #[arg(long)]
    pub alg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Pair {
    /// Source algebra `A`.
    #[arg(long)]
    pub from: PathBuf,
    /// Target algebra `B`.
    #[arg(long)]
    pub to: PathBuf,
}

#[derive(Debug, Args)]
pub struct FinSearch {
    #[command(flatten)]
    pub pair: Pair,
    /// Generators of `B`, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub gens: Vec<u32>,
    /// Largest number of witness points tried.
    #[arg(long)]
    pub n_bound: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rewrite a q-term to its canonical metaterm.
    Normalize {
        term: String,
        #[command(flatten)]
        sig: SigSource,
    },
    /// Translate between finitary terms and metaterms.
    Translate {
        #[arg(long, value_enum)]
        direction: Direction,
        term: String,
        #[command(flatten)]
        sig: SigSource,
    },
    /// Semantic dimension of each operation of an algebra.
    Dim {
        algebra: PathBuf,
        /// Report only this operation.
        #[arg(long)]
        op: Option<String>,
    },
    /// Whether two operations of an algebra have the same top extension.
    Similar { algebra: PathBuf, left: String, right: String },
    /// The k-ary term operations with witness terms.
    Clone {
        algebra: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// Check a finitary identity.
    CheckId { algebra: PathBuf, left: String, right: String },
    /// Check a closed metaterm identity in the top extension.
    CheckMetaId { algebra: PathBuf, left: String, right: String },
    /// Search for a counterexample to a hyperidentity among arity-bounded term operations.
    CheckHyper {
        algebra: PathBuf,
        left: String,
        right: String,
        #[arg(long)]
        bound: usize,
    },
    /// Check that the operation of a closed metaterm is central.
    Central { algebra: PathBuf, term: String },
    /// The free algebra of the given rank in the variety of an algebra.
    Free {
        algebra: PathBuf,
        #[arg(long)]
        rank: usize,
    },
    /// Build the map from term operations of `A` to those of `B`.
    Eps {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        arity: usize,
    },
    /// Decide whether `B` lies in the variety generated by `A`.
    Hsp {
        #[command(flatten)]
        pair: Pair,
        /// Generators of `B`, comma separated; chosen greedily if absent.
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<u32>>,
    },
    /// Search for a finite witness that `B` lies in the pseudovariety of `A`.
    HspFin(FinSearch),
    /// The countable-family variant of `hsp-fin`.
    HspW(FinSearch),
    /// Push an operation of `A`, given by a closed metaterm, along `α: A → B`.
    AlphaStar {
        #[command(flatten)]
        pair: Pair,
        /// File listing `α(0) α(1) …`.
        #[arg(long)]
        map: PathBuf,
        /// Closed metaterm over the signature of `A`.
        #[arg(long)]
        phi: String,
    },
    /// Check that tables of any arity present an algebra of the given signature.
    StrCheck {
        /// Algebra file whose tables are read as ω-ary operations.
        presentation: PathBuf,
        /// Declared signature such as `f/2, c/0`.
        #[arg(long)]
        sig: String,
    },
}
