use super::{MetaSeq, MetaTerm, OmegaSeq, Tail};

/// `q(t, u)` on metaterms: projections pick an entry of `u`, applications
/// substitute into every argument.
pub fn subst(t: &MetaTerm, u: &MetaSeq) -> MetaTerm {
    if u.is_identity() {
        return t.clone();
    }
    match t {
        MetaTerm::Proj(i) => u.at(*i).into_owned(),
        MetaTerm::App(h, s) => MetaTerm::App(h.clone(), subst_seq(s, u)),
    }
}

/// Pointwise substitution `k ↦ q(s_k, u)`.
///
/// An affine tail `e_{a·k+b}` becomes `u_{a·k+b}`, which is again a prefix
/// plus tail once `u` is reindexed.
pub fn subst_seq(s: &MetaSeq, u: &MetaSeq) -> MetaSeq {
    if u.is_identity() {
        return s.clone();
    }
    let head: Vec<MetaTerm> = s.prefix().iter().map(|t| subst(t, u)).collect();
    match s.tail() {
        Tail::Const(c) => OmegaSeq::constant(head, subst(c, u)),
        Tail::Affine { a, b } => OmegaSeq::splice(head, &u.reindex(*a, *b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::syntax::parse_meta;

    fn m(s: &str) -> MetaTerm {
        parse_meta(s, None).unwrap()
    }

    fn seq_of(prefix: &[&str], tail: Tail<MetaTerm>) -> MetaSeq {
        OmegaSeq::new(prefix.iter().map(|s| m(s)).collect(), tail)
    }

    #[test]
    fn projection_selects_entry() {
        let u = seq_of(&["(a)", "(b)", "(c)"], Tail::Affine { a: 1, b: 0 });
        assert_eq!(subst(&MetaTerm::Proj(2), &u), m("(c)"));
    }

    #[test]
    fn identity_is_unit() {
        let t = m("(f e3 (g e0 | const e1) | proj 2 1)");
        assert_eq!(subst(&t, &MetaSeq::identity()), t);
    }

    #[test]
    fn swapped_prefix_with_constant_tail() {
        let t = m("(f e1 e0)");
        let u = seq_of(&["(a)", "(b)"], Tail::Const(Box::new(m("(c)"))));
        assert_eq!(subst(&t, &u), m("(f (b) (a) | const (c))"));
    }

    #[test]
    fn affine_tail_reads_through_argument_tail() {
        let t = m("(f | proj 2 1)");
        let u = seq_of(&["(a)"], Tail::Affine { a: 3, b: 0 });
        let r = subst(&t, &u);
        let MetaTerm::App(_, s) = &r else { panic!() };
        for k in 0..6 {
            assert_eq!(*s.at(k), *u.at(2 * k + 1));
        }
    }
}
