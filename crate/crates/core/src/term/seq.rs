use std::borrow::Cow;

/// Items that may denote a projection `e_i`; needed to compare prefix entries
/// against an affine tail.
pub trait SeqItem: Clone + PartialEq {
    fn as_projection(&self) -> Option<usize>;
}

/// Items that can build the projection `e_i` without further context.
pub trait ProjItem: SeqItem {
    fn projection(i: usize) -> Self;
}

/// Tail rule of an ω-sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail<T> {
    /// Position `k` holds `e_{a·k+b}`.
    Affine { a: usize, b: usize },
    /// Every tail position holds the same item.
    Const(Box<T>),
}

/// An ω-sequence given by a finite prefix and a tail rule.
///
/// Equality is structural, so compare canonical forms only. All constructors
/// except [`OmegaSeq::raw`] canonicalize.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaSeq<T> {
    prefix: Vec<T>,
    tail: Tail<T>,
}

impl<T> OmegaSeq<T> {
    /// Builds a sequence without canonicalizing.
    pub fn raw(prefix: Vec<T>, tail: Tail<T>) -> Self {
        OmegaSeq { prefix, tail }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail<T> {
        &self.tail
    }

    pub fn into_parts(self) -> (Vec<T>, Tail<T>) {
        (self.prefix, self.tail)
    }

    /// Stored items: the prefix followed by a constant tail, if any.
    pub fn items(&self) -> impl Iterator<Item = &T> + '_ {
        let tail = match &self.tail {
            Tail::Const(t) => Some(t.as_ref()),
            Tail::Affine { .. } => None,
        };
        self.prefix.iter().chain(tail)
    }

    /// Maps stored items; an affine tail is kept as is, so `f` must send
    /// projections to the same projections for the result to be meaningful.
    pub fn map_owned<U>(self, mut f: impl FnMut(T) -> U) -> OmegaSeq<U> {
        let prefix = self.prefix.into_iter().map(&mut f).collect();
        let tail = match self.tail {
            Tail::Affine { a, b } => Tail::Affine { a, b },
            Tail::Const(t) => Tail::Const(Box::new(f(*t))),
        };
        OmegaSeq { prefix, tail }
    }

    pub fn try_map<U, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<OmegaSeq<U>, E> {
        let prefix = self.prefix.iter().map(&mut f).collect::<Result<_, _>>()?;
        let tail = match &self.tail {
            Tail::Affine { a, b } => Tail::Affine { a: *a, b: *b },
            Tail::Const(t) => Tail::Const(Box::new(f(t)?)),
        };
        Ok(OmegaSeq { prefix, tail })
    }

    /// Entry at position `k`, building projections with `proj`.
    pub fn at_with(&self, k: usize, proj: impl FnOnce(usize) -> T) -> Cow<'_, T>
    where
        T: Clone,
    {
        match self.prefix.get(k) {
            Some(t) => Cow::Borrowed(t),
            None => match &self.tail {
                Tail::Affine { a, b } => Cow::Owned(proj(a * k + b)),
                Tail::Const(t) => Cow::Borrowed(t),
            },
        }
    }

    /// Whether this is the identity sequence `e_0, e_1, …` (canonical input).
    pub fn is_identity(&self) -> bool {
        self.prefix.is_empty() && matches!(self.tail, Tail::Affine { a: 1, b: 0 })
    }
}

impl<T: SeqItem> OmegaSeq<T> {
    pub fn identity() -> Self {
        OmegaSeq {
            prefix: Vec::new(),
            tail: Tail::Affine { a: 1, b: 0 },
        }
    }

    /// Canonicalization for item types that need context to build projections.
    pub fn canonicalize_with(mut self, proj: impl Fn(usize) -> T) -> Self {
        if let Tail::Affine { a: 0, b } = self.tail {
            self.tail = Tail::Const(Box::new(proj(b)));
        }
        while let Some(last) = self.prefix.last() {
            let k = self.prefix.len() - 1;
            let matches = match &self.tail {
                Tail::Affine { a, b } => last.as_projection() == Some(a * k + b),
                Tail::Const(t) => last == t.as_ref(),
            };
            if !matches {
                break;
            }
            self.prefix.pop();
        }
        self
    }

    pub fn is_canonical_with(&self, proj: impl Fn(usize) -> T) -> bool {
        self.clone().canonicalize_with(proj) == *self
    }

    /// The sequence `k ↦ self[a·k + b]`, built with `proj`.
    pub fn reindex_with(&self, a: usize, b: usize, proj: impl Fn(usize) -> T) -> Self {
        if a == 0 {
            let v = self.at_with(b, &proj).into_owned();
            return OmegaSeq::raw(Vec::new(), Tail::Const(Box::new(v)));
        }
        let len = self.prefix.len();
        let mut prefix = Vec::new();
        let mut k = 0;
        while a * k + b < len {
            prefix.push(self.prefix[a * k + b].clone());
            k += 1;
        }
        let tail = match &self.tail {
            Tail::Affine { a: c, b: d } => Tail::Affine {
                a: c * a,
                b: c * b + d,
            },
            Tail::Const(t) => Tail::Const(t.clone()),
        };
        OmegaSeq { prefix, tail }.canonicalize_with(proj)
    }

    /// `head` followed by `rest` from position `head.len()` onward.
    pub fn splice_with(head: Vec<T>, rest: &OmegaSeq<T>, proj: impl Fn(usize) -> T) -> Self {
        let mut prefix = head;
        if rest.prefix.len() > prefix.len() {
            prefix.extend_from_slice(&rest.prefix[prefix.len()..]);
        }
        OmegaSeq {
            prefix,
            tail: rest.tail.clone(),
        }
        .canonicalize_with(proj)
    }

    /// Length of the stored prefix after which the tail rule alone applies.
    pub fn support_len(&self) -> usize {
        self.prefix.len()
    }
}

impl<T: ProjItem> OmegaSeq<T> {
    pub fn new(prefix: Vec<T>, tail: Tail<T>) -> Self {
        OmegaSeq { prefix, tail }.canonical()
    }

    pub fn affine(prefix: Vec<T>, a: usize, b: usize) -> Self {
        OmegaSeq::new(prefix, Tail::Affine { a, b })
    }

    pub fn constant(prefix: Vec<T>, value: T) -> Self {
        OmegaSeq::new(prefix, Tail::Const(Box::new(value)))
    }

    /// Canonical representative: an affine tail with `a = 0` becomes a
    /// constant tail, and trailing prefix entries equal to the tail value at
    /// their position are dropped.
    pub fn canonical(self) -> Self {
        self.canonicalize_with(T::projection)
    }

    pub fn at(&self, k: usize) -> Cow<'_, T> {
        self.at_with(k, T::projection)
    }

    pub fn reindex(&self, a: usize, b: usize) -> Self {
        self.reindex_with(a, b, T::projection)
    }

    pub fn splice(head: Vec<T>, rest: &OmegaSeq<T>) -> Self {
        OmegaSeq::splice_with(head, rest, T::projection)
    }

    /// The first `n` entries.
    pub fn take(&self, n: usize) -> Vec<T> {
        (0..n).map(|k| self.at(k).into_owned()).collect()
    }
}
