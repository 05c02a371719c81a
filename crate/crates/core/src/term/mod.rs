//! Finitary terms, finitely representable ω-sequences, metaterms and q-terms.
//!
//! An ω-sequence is stored as a finite prefix followed by a tail rule: either an
//! affine projection pattern (position `k` holds `e_{a·k+b}`) or a constant
//! term. This fragment is closed under substitution, which is what makes
//! metaterm normalization computable.

mod normalize;
mod seq;
mod subst;
pub mod syntax;
mod translate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use normalize::{embed, normalize, normalize_with_budget, Normalizer, DEFAULT_STEP_BUDGET};
pub use seq::{OmegaSeq, ProjItem, SeqItem, Tail};
pub use subst::{subst, subst_seq};
pub use translate::{bullet, circle, str_identities, variable_support};

/// Finitary operation symbols with their arities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (name, arity) in symbols {
            let name = name.into();
            validate_symbol(&name)?;
            if map.insert(name.clone(), arity).is_some() {
                return Err(Error::InvalidSymbol(format!("{name} (declared twice)")));
            }
        }
        Ok(Signature { symbols: map })
    }

    /// Parses `f/2,c/0`-style declarations.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut out = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, arity) = item
                .rsplit_once('/')
                .ok_or_else(|| Error::InvalidSymbol(item.to_string()))?;
            let arity = arity
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidSymbol(item.to_string()))?;
            out.push((name.trim().to_string(), arity));
        }
        Signature::new(out)
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.symbols.get(symbol).copied()
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.symbols.contains_key(symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.symbols.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.values().copied().max().unwrap_or(0)
    }

    /// Arities keyed by symbol; under the homogeneous reading every symbol is
    /// ω-ary and this is its declared dimension.
    pub fn dims(&self) -> &BTreeMap<String, usize> {
        &self.symbols
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, arity) in &self.symbols {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{name}/{arity}")?;
        }
        Ok(())
    }
}

/// Rejects names that collide with `q`, projections `e<N>`, metavariables
/// `X<name>`, or the term syntax.
pub fn validate_symbol(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name == "q"
        || name.starts_with('X')
        || is_projection_name(name)
        || name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '|' | '#'));
    if bad {
        Err(Error::InvalidSymbol(name.to_string()))
    } else {
        Ok(())
    }
}

pub(crate) fn is_projection_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('e') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

/// A finitary term over variables `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinTerm {
    Var(usize),
    App(String, Vec<FinTerm>),
}

impl FinTerm {
    pub fn app(symbol: impl Into<String>, children: Vec<FinTerm>) -> Self {
        FinTerm::App(symbol.into(), children)
    }

    pub fn size(&self) -> usize {
        match self {
            FinTerm::Var(_) => 1,
            FinTerm::App(_, cs) => 1 + cs.iter().map(FinTerm::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            FinTerm::Var(_) => 0,
            FinTerm::App(_, cs) => 1 + cs.iter().map(FinTerm::depth).max().unwrap_or(0),
        }
    }

    /// Variable indices occurring in the term, ascending.
    pub fn variables(&self) -> Vec<usize> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_vars(&mut out);
        out.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<usize>) {
        match self {
            FinTerm::Var(i) => {
                out.insert(*i);
            }
            FinTerm::App(_, cs) => cs.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Checks every application against the signature.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            FinTerm::Var(_) => Ok(()),
            FinTerm::App(f, cs) => {
                let arity = sig
                    .arity(f)
                    .ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                if arity != cs.len() {
                    return Err(Error::ArityMismatch {
                        symbol: f.clone(),
                        expected: arity,
                        found: cs.len(),
                    });
                }
                cs.iter().try_for_each(|c| c.check(sig))
            }
        }
    }
}

/// Head of a metaterm application: a type symbol or a metavariable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head {
    Sym(String),
    Meta(String),
}

/// Normal forms of q-terms: projections and applications of a head to an
/// ω-sequence of metaterms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetaTerm {
    Proj(usize),
    App(Head, OmegaSeq<MetaTerm>),
}

pub type MetaSeq = OmegaSeq<MetaTerm>;

impl MetaTerm {
    pub fn sym(symbol: impl Into<String>, args: MetaSeq) -> Self {
        MetaTerm::App(Head::Sym(symbol.into()), args.canonical())
    }

    pub fn meta(name: impl Into<String>, args: MetaSeq) -> Self {
        MetaTerm::App(Head::Meta(name.into()), args.canonical())
    }

    /// `f(e_0, e_1, …)`: the constant `f` of the clone algebra of metaterms.
    pub fn constant(symbol: impl Into<String>) -> Self {
        MetaTerm::App(Head::Sym(symbol.into()), OmegaSeq::identity())
    }

    /// Deep canonical form.
    pub fn canonical(self) -> Self {
        match self {
            MetaTerm::Proj(i) => MetaTerm::Proj(i),
            MetaTerm::App(h, s) => MetaTerm::App(h, s.map_owned(MetaTerm::canonical).canonical()),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            MetaTerm::Proj(_) => true,
            MetaTerm::App(Head::Meta(_), _) => false,
            MetaTerm::App(Head::Sym(_), s) => s.items().all(MetaTerm::is_closed),
        }
    }

    /// Metavariable names, ascending.
    pub fn metavariables(&self) -> Vec<String> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_meta(&mut out);
        out.into_iter().collect()
    }

    fn collect_meta(&self, out: &mut std::collections::BTreeSet<String>) {
        if let MetaTerm::App(h, s) = self {
            if let Head::Meta(x) = h {
                out.insert(x.clone());
            }
            s.items().for_each(|t| t.collect_meta(out));
        }
    }

    /// Node count, counting each stored prefix entry and constant tail once.
    pub fn size(&self) -> usize {
        match self {
            MetaTerm::Proj(_) => 1,
            MetaTerm::App(_, s) => 1 + s.items().map(MetaTerm::size).sum::<usize>(),
        }
    }
}

impl SeqItem for MetaTerm {
    fn as_projection(&self) -> Option<usize> {
        match self {
            MetaTerm::Proj(i) => Some(*i),
            _ => None,
        }
    }
}

impl ProjItem for MetaTerm {
    fn projection(i: usize) -> Self {
        MetaTerm::Proj(i)
    }
}

/// Raw terms of the clone-algebra type: projections, type symbols and
/// metavariables as constants, and the ω-ary `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QTerm {
    Proj(usize),
    SymConst(String),
    MetaVar(String),
    Q(Box<QTerm>, OmegaSeq<QTerm>),
}

pub type QSeq = OmegaSeq<QTerm>;

impl QTerm {
    pub fn q(fun: QTerm, args: QSeq) -> Self {
        QTerm::Q(Box::new(fun), args)
    }

    pub fn size(&self) -> usize {
        match self {
            QTerm::Q(fun, s) => 1 + fun.size() + s.items().map(QTerm::size).sum::<usize>(),
            _ => 1,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            QTerm::MetaVar(_) => false,
            QTerm::Q(fun, s) => fun.is_closed() && s.items().all(QTerm::is_closed),
            _ => true,
        }
    }
}

impl SeqItem for QTerm {
    fn as_projection(&self) -> Option<usize> {
        match self {
            QTerm::Proj(i) => Some(*i),
            _ => None,
        }
    }
}

impl ProjItem for QTerm {
    fn projection(i: usize) -> Self {
        QTerm::Proj(i)
    }
}

macro_rules! serialize_as_text {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }
    )*};
}

serialize_as_text!(FinTerm, MetaTerm, QTerm, Signature);
