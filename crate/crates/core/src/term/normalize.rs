use super::{Head, MetaSeq, MetaTerm, OmegaSeq, QSeq, QTerm, Tail};
use crate::error::{Error, Result};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// Rewrites q-terms to metaterms with the clone axioms oriented left to right.
///
/// Each `q` node visited costs one step. Termination of the rewrite system is
/// not known in general, so every run is budgeted.
#[derive(Debug, Clone)]
pub struct Normalizer {
    budget: u64,
    steps: u64,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer::new(DEFAULT_STEP_BUDGET)
    }
}

impl Normalizer {
    pub fn new(budget: u64) -> Self {
        Normalizer { budget, steps: 0 }
    }

    /// Steps spent so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::exhausted("rewrite steps", self.budget));
        }
        Ok(())
    }

    pub fn normalize(&mut self, t: &QTerm) -> Result<MetaTerm> {
        match t {
            QTerm::Proj(i) => Ok(MetaTerm::Proj(*i)),
            QTerm::SymConst(f) => Ok(MetaTerm::App(Head::Sym(f.clone()), OmegaSeq::identity())),
            QTerm::MetaVar(x) => Ok(MetaTerm::App(Head::Meta(x.clone()), OmegaSeq::identity())),
            QTerm::Q(fun, args) => self.rewrite_q(fun, args),
        }
    }

    pub fn normalize_seq(&mut self, s: &QSeq) -> Result<MetaSeq> {
        let prefix = s
            .prefix()
            .iter()
            .map(|t| self.normalize(t))
            .collect::<Result<Vec<_>>>()?;
        let tail = match s.tail() {
            Tail::Affine { a, b } => Tail::Affine { a: *a, b: *b },
            Tail::Const(c) => Tail::Const(Box::new(self.normalize(c)?)),
        };
        Ok(OmegaSeq::new(prefix, tail))
    }

    /// Normal form of `q(fun, args)`.
    fn rewrite_q(&mut self, fun: &QTerm, args: &QSeq) -> Result<MetaTerm> {
        self.tick()?;
        let args = args.clone().canonical();
        match fun {
            // q(e_i, x) = x_i
            QTerm::Proj(i) => self.normalize(&args.at(*i)),
            // q(x, e_0, e_1, …) = x
            _ if args.is_identity() => self.normalize(fun),
            // q(q(x, y), z) = q(x, q(y_0, z), q(y_1, z), …)
            QTerm::Q(g, v) => {
                let head: Vec<QTerm> = v
                    .prefix()
                    .iter()
                    .map(|vk| QTerm::q(vk.clone(), args.clone()))
                    .collect();
                let inner = match v.tail() {
                    Tail::Const(c) => OmegaSeq::constant(head, QTerm::q((**c).clone(), args.clone())),
                    // q(e_{a·k+b}, z) rewrites to z_{a·k+b} directly.
                    Tail::Affine { a, b } => OmegaSeq::splice(head, &args.reindex(*a, *b)),
                };
                self.rewrite_q(g, &inner)
            }
            QTerm::SymConst(f) => Ok(MetaTerm::App(Head::Sym(f.clone()), self.normalize_seq(&args)?)),
            QTerm::MetaVar(x) => Ok(MetaTerm::App(Head::Meta(x.clone()), self.normalize_seq(&args)?)),
        }
    }
}

/// Normalizes with the default step budget.
pub fn normalize(t: &QTerm) -> Result<MetaTerm> {
    Normalizer::default().normalize(t)
}

pub fn normalize_with_budget(t: &QTerm, budget: u64) -> Result<MetaTerm> {
    Normalizer::new(budget).normalize(t)
}

/// Reads a metaterm back as a q-term: `f(s)` becomes `q(f, s)`.
pub fn embed(t: &MetaTerm) -> QTerm {
    match t {
        MetaTerm::Proj(i) => QTerm::Proj(*i),
        MetaTerm::App(h, s) => {
            let c = match h {
                Head::Sym(f) => QTerm::SymConst(f.clone()),
                Head::Meta(x) => QTerm::MetaVar(x.clone()),
            };
            if s.is_identity() {
                c
            } else {
                QTerm::q(c, s.clone().map_owned(|t| embed(&t)))
            }
        }
    }
}
