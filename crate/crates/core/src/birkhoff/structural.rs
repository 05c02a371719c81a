use std::collections::BTreeMap;

use serde::Serialize;

use crate::alg::{lemma_neu_check, FiniteAlgebra, OmegaOp, PointSeq, Tuples};
use crate::error::{Error, Result};
use crate::term::Signature;
use crate::verdict::Verdict;

/// A symbol whose presented operation reads past its declared arity.
///
/// `lhs` is the operation at `point`, `rhs` at `substituted`. For arity
/// `n ≥ 1`, `substituted` repeats entry 0 from position `n` on; for constants
/// it keeps the even or the odd positions of `point`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrViolation {
    pub symbol: String,
    pub arity: usize,
    pub dim: usize,
    pub point: PointSeq,
    pub substituted: PointSeq,
    pub lhs: u32,
    pub rhs: u32,
}

/// Checks that `presented` interprets each symbol of `sig` by an ω-ary
/// operation of dimension at most its arity. On success returns the finite
/// algebra `S` with `S⊤ = presented`.
pub fn str_check(
    sig: &Signature,
    carrier: usize,
    presented: &BTreeMap<String, OmegaOp>,
) -> Result<Verdict<FiniteAlgebra, StrViolation>> {
    if carrier == 0 {
        return Err(Error::EmptyCarrier);
    }
    for name in presented.keys() {
        if !sig.contains(name) {
            return Err(Error::UnknownSymbol(name.clone()));
        }
    }
    let mut ops = Vec::with_capacity(sig.len());
    for (name, n) in sig.iter() {
        let op = presented
            .get(name)
            .ok_or_else(|| Error::SignatureMismatch(format!("no operation presented for `{name}`")))?;
        if op.carrier() != carrier {
            return Err(Error::CarrierMismatch {
                expected: carrier,
                found: op.carrier(),
            });
        }
        if !lemma_neu_check(op, n)? {
            return Ok(Verdict::Violated(violation(name, n, op)));
        }
        ops.push((name.to_string(), op.table_at(n)?));
    }
    FiniteAlgebra::new(carrier, ops).map(Verdict::Holds)
}

fn violation(name: &str, n: usize, op: &OmegaOp) -> StrViolation {
    let d = op.dim();
    let found = Tuples::new(d, op.carrier()).find_map(|x| {
        let candidates: Vec<Vec<u32>> = if n >= 1 {
            vec![(0..d).map(|k| if k < n { x[k] } else { x[0] }).collect()]
        } else {
            vec![x.iter().step_by(2).copied().collect(), x.iter().skip(1).step_by(2).copied().collect()]
        };
        candidates.into_iter().find_map(|y| {
            let point = PointSeq::new(x.clone(), if n >= 1 { x[0] } else { 0 });
            let substituted = PointSeq::new(y, if n >= 1 { x[0] } else { 0 });
            let (lhs, rhs) = (op.apply(&point), op.apply(&substituted));
            (lhs != rhs).then_some((point, substituted, lhs, rhs))
        })
    });
    let (point, substituted, lhs, rhs) = found.expect("dimension exceeds arity");
    StrViolation {
        symbol: name.to_string(),
        arity: n,
        dim: d,
        point,
        substituted,
        lhs,
        rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = FiniteAlgebra::from_tables(3, &[("f", 2, (0..9).map(|i| (i * 7 % 3) as u32).collect()), ("c", 0, vec![2])])
            .unwrap();
        let back = str_check(&s.signature(), 3, &s.top_extensions()).unwrap().holds().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn empty_signature() {
        let sig = Signature::new(Vec::<(String, usize)>::new()).unwrap();
        assert!(str_check(&sig, 2, &BTreeMap::new()).unwrap().is_holds());
    }

    #[test]
    fn unary_reading_coordinate_one() {
        let sig = Signature::parse("f/1").unwrap();
        let op = OmegaOp::projection(2, 1);
        let presented = BTreeMap::from([("f".to_string(), op.clone())]);
        let v = str_check(&sig, 2, &presented).unwrap().violated().unwrap();
        assert_eq!(v.dim, 2);
        assert_eq!(op.apply(&v.point), v.lhs);
        assert_eq!(op.apply(&v.substituted), v.rhs);
        assert_ne!(v.lhs, v.rhs);
    }

    #[test]
    fn constant_reading_a_coordinate() {
        let sig = Signature::parse("c/0").unwrap();
        let presented = BTreeMap::from([("c".to_string(), OmegaOp::projection(3, 2))]);
        let v = str_check(&sig, 3, &presented).unwrap().violated().unwrap();
        assert_ne!(v.lhs, v.rhs);
    }
}
