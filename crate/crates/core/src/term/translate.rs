use std::collections::BTreeSet;

use super::{FinTerm, Head, MetaTerm, OmegaSeq, Signature};
use crate::error::{Error, Result};

/// Finitary to ω-ary: `f(t_0, …, t_{n-1})` becomes `f(t_0•, …, t_{n-1}•, e_n, e_{n+1}, …)`.
///
/// The argument sequence is canonical, so trailing entries that coincide with
/// the identity tail are absorbed into it.
pub fn bullet(v: &FinTerm) -> MetaTerm {
    match v {
        FinTerm::Var(i) => MetaTerm::Proj(*i),
        FinTerm::App(f, cs) => MetaTerm::App(
            Head::Sym(f.clone()),
            OmegaSeq::affine(cs.iter().map(bullet).collect(), 1, 0),
        ),
    }
}

/// ω-ary to finitary: truncates each application to the declared arity.
pub fn circle(t: &MetaTerm, sig: &Signature) -> Result<FinTerm> {
    match t {
        MetaTerm::Proj(i) => Ok(FinTerm::Var(*i)),
        MetaTerm::App(Head::Meta(x), _) => Err(Error::MetavariablePresent(x.clone())),
        MetaTerm::App(Head::Sym(f), s) => {
            let n = sig.arity(f).ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
            let children = (0..n)
                .map(|k| circle(&s.at(k), sig))
                .collect::<Result<Vec<_>>>()?;
            Ok(FinTerm::App(f.clone(), children))
        }
    }
}

/// Coordinates the top-extension semantics of `t` can read: only the first
/// `arity(f)` arguments of each `f`-node are visited.
pub fn variable_support(t: &MetaTerm, sig: &Signature) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    collect_support(t, sig, &mut out)?;
    Ok(out)
}

fn collect_support(t: &MetaTerm, sig: &Signature, out: &mut BTreeSet<usize>) -> Result<()> {
    match t {
        MetaTerm::Proj(i) => {
            out.insert(*i);
            Ok(())
        }
        MetaTerm::App(Head::Meta(x), _) => Err(Error::MetavariablePresent(x.clone())),
        MetaTerm::App(Head::Sym(f), s) => {
            let n = sig.arity(f).ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
            (0..n).try_for_each(|k| collect_support(&s.at(k), sig, out))
        }
    }
}

/// Identities bounding the dimension of each symbol by its arity.
///
/// For `f` of arity `n ≥ 1`: `f(e_0, …, e_{n-1}, e_0, e_0, …) = f(e_0, e_1, …)`.
/// For nullary `f`: `f(e_0, e_2, e_4, …) = f(e_0, e_1, …)` and
/// `f(e_1, e_3, e_5, …) = f(e_0, e_1, …)`.
pub fn str_identities(sig: &Signature) -> Vec<(MetaTerm, MetaTerm)> {
    let mut out = Vec::new();
    for (f, n) in sig.iter() {
        let rhs = MetaTerm::constant(f);
        if n >= 1 {
            let prefix = (0..n).map(MetaTerm::Proj).collect();
            let lhs = MetaTerm::sym(f, OmegaSeq::constant(prefix, MetaTerm::Proj(0)));
            out.push((lhs, rhs));
        } else {
            out.push((MetaTerm::sym(f, OmegaSeq::affine(vec![], 2, 0)), rhs.clone()));
            out.push((MetaTerm::sym(f, OmegaSeq::affine(vec![], 2, 1)), rhs));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::syntax::{parse_fin, parse_meta};

    fn sig() -> Signature {
        Signature::parse("f/2,c/0,g/3").unwrap()
    }

    #[test]
    fn bullet_pads_with_identity_tail() {
        assert_eq!(bullet(&FinTerm::Var(3)), MetaTerm::Proj(3));
        let v = parse_fin("(f e1 e0)", Some(&sig())).unwrap();
        assert_eq!(bullet(&v), parse_meta("(f e1 e0 | proj 1 0)", None).unwrap());
        let c = parse_fin("(c)", Some(&sig())).unwrap();
        assert_eq!(bullet(&c), MetaTerm::constant("c"));
    }

    #[test]
    fn circle_truncates() {
        let t = parse_meta("(f (c) e4 e7 | const e7)", None).unwrap();
        assert_eq!(circle(&t, &sig()).unwrap(), parse_fin("(f (c) e4)", Some(&sig())).unwrap());
        assert_eq!(circle(&MetaTerm::Proj(7), &sig()).unwrap(), FinTerm::Var(7));
        let bad = parse_meta("(h e0)", None).unwrap();
        assert_eq!(circle(&bad, &sig()), Err(Error::UnknownSymbol("h".into())));
        let open = parse_meta("(f (Xa) e0)", None).unwrap();
        assert_eq!(circle(&open, &sig()), Err(Error::MetavariablePresent("a".into())));
    }

    #[test]
    fn support_reads_declared_arity_only() {
        let t = parse_meta("(f e1 e0)", None).unwrap();
        assert_eq!(variable_support(&t, &sig()).unwrap(), BTreeSet::from([0, 1]));
        let t = parse_meta("(g | proj 2 1)", None).unwrap();
        assert_eq!(variable_support(&t, &sig()).unwrap(), BTreeSet::from([1, 3, 5]));
        assert_eq!(variable_support(&MetaTerm::Proj(4), &sig()).unwrap(), BTreeSet::from([4]));
    }

    #[test]
    fn structural_identities() {
        let ids = str_identities(&Signature::parse("f/2").unwrap());
        assert_eq!(
            ids,
            vec![(
                parse_meta("(f e0 e1 | const e0)", None).unwrap(),
                parse_meta("(f | proj 1 0)", None).unwrap()
            )]
        );
        let ids = str_identities(&Signature::parse("c/0").unwrap());
        assert_eq!(ids.len(), 2);
        assert_eq!(ids[0].0, parse_meta("(c | proj 2 0)", None).unwrap());
        assert_eq!(ids[1].0, parse_meta("(c | proj 2 1)", None).unwrap());
        assert!(str_identities(&Signature::default()).is_empty());
    }
}
