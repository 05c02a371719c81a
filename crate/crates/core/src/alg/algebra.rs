use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::omega::{OmegaOp, PointSeq};
use super::table::{FinOpTable, Tuples};
use crate::error::{Error, Result};
use crate::term::{validate_symbol, FinTerm, Head, MetaTerm, Signature};

/// Default bound on the size of a product carrier.
pub const DEFAULT_MAX_PRODUCT: u64 = 1_000_000;

/// Values for the variables `e_i`.
pub trait Assignment {
    fn value(&self, var: usize) -> Option<u32>;
}

impl Assignment for BTreeMap<usize, u32> {
    fn value(&self, var: usize) -> Option<u32> {
        self.get(&var).copied()
    }
}

impl Assignment for [u32] {
    fn value(&self, var: usize) -> Option<u32> {
        self.get(var).copied()
    }
}

impl Assignment for Vec<u32> {
    fn value(&self, var: usize) -> Option<u32> {
        self.get(var).copied()
    }
}

impl Assignment for PointSeq {
    fn value(&self, var: usize) -> Option<u32> {
        Some(self.at(var))
    }
}

/// A finite algebra on `{0..m-1}` with named dense operation tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteAlgebra {
    carrier: usize,
    ops: BTreeMap<String, FinOpTable>,
}

impl FiniteAlgebra {
    pub fn new<I, S>(carrier: usize, ops: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, FinOpTable)>,
        S: Into<String>,
    {
        if carrier == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut map = BTreeMap::new();
        for (name, table) in ops {
            let name = name.into();
            validate_symbol(&name)?;
            if table.carrier() != carrier {
                return Err(Error::CarrierMismatch {
                    expected: carrier,
                    found: table.carrier(),
                });
            }
            if map.insert(name.clone(), table).is_some() {
                return Err(Error::InvalidSymbol(format!("{name} (declared twice)")));
            }
        }
        Ok(FiniteAlgebra { carrier, ops: map })
    }

    /// Convenience constructor from `(name, arity, values)` triples.
    pub fn from_tables(carrier: usize, ops: &[(&str, usize, Vec<u32>)]) -> Result<Self> {
        let tables = ops
            .iter()
            .map(|(n, a, v)| Ok((n.to_string(), FinOpTable::from_values(*a, carrier, v.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(carrier, tables)
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn ops(&self) -> &BTreeMap<String, FinOpTable> {
        &self.ops
    }

    pub fn op(&self, name: &str) -> Result<&FinOpTable> {
        self.ops
            .get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.ops.iter().map(|(n, t)| (n.clone(), t.arity())))
            .expect("names validated on construction")
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> Result<()> {
        let a = self.signature();
        let b = other.signature();
        if a != b {
            return Err(Error::SignatureMismatch(format!("{{{a}}} vs {{{b}}}")));
        }
        Ok(())
    }

    pub fn eval_finterm<S: Assignment + ?Sized>(&self, v: &FinTerm, asg: &S) -> Result<u32> {
        match v {
            FinTerm::Var(i) => asg
                .value(*i)
                .ok_or_else(|| Error::MissingAssignment(format!("e{i}"))),
            FinTerm::App(f, cs) => {
                let table = self.op(f)?;
                if table.arity() != cs.len() {
                    return Err(Error::ArityMismatch {
                        symbol: f.clone(),
                        expected: table.arity(),
                        found: cs.len(),
                    });
                }
                let args = cs
                    .iter()
                    .map(|c| self.eval_finterm(c, asg))
                    .collect::<Result<Vec<_>>>()?;
                Ok(table.get(&args))
            }
        }
    }

    /// Value of a closed metaterm in the top-extension algebra at `s`; each
    /// `f`-node reads only its first `arity(f)` arguments.
    pub fn eval_metaterm(&self, t: &MetaTerm, s: &PointSeq) -> Result<u32> {
        match t {
            MetaTerm::Proj(i) => Ok(s.at(*i)),
            MetaTerm::App(Head::Meta(x), _) => Err(Error::MetavariablePresent(x.clone())),
            MetaTerm::App(Head::Sym(f), seq) => {
                let table = self.op(f)?;
                let args = (0..table.arity())
                    .map(|k| self.eval_metaterm(&seq.at(k), s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(table.get(&args))
            }
        }
    }

    /// `f⊤` for every basic operation.
    pub fn top_extensions(&self) -> BTreeMap<String, OmegaOp> {
        self.ops
            .iter()
            .map(|(n, t)| (n.clone(), OmegaOp::top_extend(t)))
            .collect()
    }

    pub(crate) fn check_elements(&self, elems: impl IntoIterator<Item = u32>) -> Result<()> {
        for e in elems {
            if e as usize >= self.carrier {
                return Err(Error::CarrierMismatch {
                    expected: self.carrier,
                    found: e as usize + 1,
                });
            }
        }
        Ok(())
    }

    /// Least subuniverse containing `seed` and the values of nullary operations.
    pub fn subalgebra_gen(&self, seed: &BTreeSet<u32>) -> Result<BTreeSet<u32>> {
        self.check_elements(seed.iter().copied())?;
        let mut set = seed.clone();
        loop {
            let elems: Vec<u32> = set.iter().copied().collect();
            let mut new = Vec::new();
            for table in self.ops.values() {
                let n = table.arity();
                for idx in Tuples::new(n, elems.len()) {
                    let args: Vec<u32> = idx.iter().map(|&i| elems[i as usize]).collect();
                    let v = table.get(&args);
                    if !set.contains(&v) {
                        new.push(v);
                    }
                }
            }
            if new.is_empty() {
                return Ok(set);
            }
            set.extend(new);
        }
    }

    /// The subalgebra on a closed subset, renumbered in increasing order; the
    /// returned vector maps new elements to old ones.
    pub fn restrict(&self, subset: &BTreeSet<u32>) -> Result<(FiniteAlgebra, Vec<u32>)> {
        self.check_elements(subset.iter().copied())?;
        let elems: Vec<u32> = subset.iter().copied().collect();
        let index: BTreeMap<u32, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u32))
            .collect();
        let mut ops = Vec::new();
        for (name, table) in &self.ops {
            let mut failed = None;
            let t = FinOpTable::try_from_fn(table.arity(), elems.len().max(1), |x| {
                let args: Vec<u32> = x.iter().map(|&i| elems[i as usize]).collect();
                let v = table.get(&args);
                match index.get(&v) {
                    Some(&i) => i,
                    None => {
                        failed.get_or_insert(args.iter().map(|&a| a as usize).collect());
                        0
                    }
                }
            });
            if elems.is_empty() {
                return Err(Error::EmptyCarrier);
            }
            if let Some(args) = failed {
                return Err(Error::NotAHomomorphism {
                    op: name.clone(),
                    args,
                });
            }
            ops.push((name.clone(), t?));
        }
        Ok((FiniteAlgebra::new(elems.len(), ops)?, elems))
    }

    /// The quotient by the kernel of `labels`, which must map onto `0..k`.
    pub fn quotient(&self, labels: &[u32]) -> Result<FiniteAlgebra> {
        if labels.len() != self.carrier {
            return Err(Error::CarrierMismatch {
                expected: self.carrier,
                found: labels.len(),
            });
        }
        let k = labels.iter().copied().max().map_or(0, |x| x as usize + 1);
        if let Some(missing) = (0..k as u32).find(|c| !labels.contains(c)) {
            return Err(Error::NotSurjective {
                missing: missing as usize,
            });
        }
        let rep: Vec<u32> = (0..k as u32)
            .map(|c| labels.iter().position(|&l| l == c).unwrap() as u32)
            .collect();
        let mut ops = Vec::new();
        for (name, table) in &self.ops {
            let t = FinOpTable::try_from_fn(table.arity(), k, |x| {
                let args: Vec<u32> = x.iter().map(|&c| rep[c as usize]).collect();
                labels[table.get(&args) as usize]
            })?;
            ops.push((name.clone(), t));
        }
        let q = FiniteAlgebra::new(k, ops)?;
        self.hom_image(&q, labels)?;
        Ok(q)
    }

    /// Checks that `alpha` is a homomorphism into `target` and returns its
    /// image. Failures report the first tuple in operation-name then row-major
    /// order.
    pub fn hom_image(&self, target: &FiniteAlgebra, alpha: &[u32]) -> Result<BTreeSet<u32>> {
        self.same_signature(target)?;
        if alpha.len() != self.carrier {
            return Err(Error::CarrierMismatch {
                expected: self.carrier,
                found: alpha.len(),
            });
        }
        target.check_elements(alpha.iter().copied())?;
        for (name, fa) in &self.ops {
            let fb = &target.ops[name];
            let mut image_args = vec![0u32; fa.arity()];
            for x in Tuples::new(fa.arity(), self.carrier) {
                for (slot, &a) in image_args.iter_mut().zip(&x) {
                    *slot = alpha[a as usize];
                }
                if alpha[fa.get(&x) as usize] != fb.get(&image_args) {
                    return Err(Error::NotAHomomorphism {
                        op: name.clone(),
                        args: x.iter().map(|&a| a as usize).collect(),
                    });
                }
            }
        }
        Ok(alpha.iter().copied().collect())
    }

    /// Componentwise product with mixed-radix encoding, first factor most
    /// significant. The empty product is the one-element algebra.
    pub fn product(sig: &Signature, factors: &[FiniteAlgebra], max_carrier: u64) -> Result<(FiniteAlgebra, ProductEncoding)> {
        for f in factors {
            if f.signature() != *sig {
                return Err(Error::SignatureMismatch(format!("{{{}}} vs {{{sig}}}", f.signature())));
            }
        }
        let sizes: Vec<usize> = factors.iter().map(|f| f.carrier).collect();
        let mut total: u64 = 1;
        for &s in &sizes {
            total = total.saturating_mul(s as u64);
            if total > max_carrier {
                return Err(Error::exhausted("product carrier", max_carrier));
            }
        }
        let enc = ProductEncoding { sizes };
        let total = total as usize;
        let mut ops = Vec::new();
        for (name, arity) in sig.iter() {
            let comps: Vec<&FinOpTable> = factors.iter().map(|f| &f.ops[name]).collect();
            let t = FinOpTable::try_from_fn(arity, total, |x| {
                let decoded: Vec<Vec<u32>> = x.iter().map(|&e| enc.decode(e)).collect();
                let tuple: Vec<u32> = comps
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let args: Vec<u32> = decoded.iter().map(|d| d[i]).collect();
                        c.get(&args)
                    })
                    .collect();
                enc.encode(&tuple)
            })?;
            ops.push((name.to_string(), t));
        }
        Ok((FiniteAlgebra::new(total, ops)?, enc))
    }

    /// `A^n`.
    pub fn power(&self, n: usize, max_carrier: u64) -> Result<(FiniteAlgebra, ProductEncoding)> {
        let factors = vec![self.clone(); n];
        FiniteAlgebra::product(&self.signature(), &factors, max_carrier)
    }
}

/// Mixed-radix encoding of product tuples: `(a_0, …, a_{k-1})` over sizes
/// `(m_0, …, m_{k-1})` is `Σ a_i · Π_{j>i} m_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductEncoding {
    sizes: Vec<usize>,
}

impl ProductEncoding {
    pub fn new(sizes: Vec<usize>) -> Self {
        ProductEncoding { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn encode(&self, tuple: &[u32]) -> u32 {
        debug_assert_eq!(tuple.len(), self.sizes.len());
        tuple
            .iter()
            .zip(&self.sizes)
            .fold(0u64, |acc, (&a, &m)| acc * m as u64 + a as u64) as u32
    }

    pub fn decode(&self, mut code: u32) -> Vec<u32> {
        let mut out = vec![0; self.sizes.len()];
        for (slot, &m) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = code % m as u32;
            code /= m as u32;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::syntax::{parse_fin, parse_meta};
    use crate::term::bullet;

    fn zn(n: usize) -> FiniteAlgebra {
        let plus = FinOpTable::from_fn(2, n, |x| (x[0] + x[1]) % n as u32);
        let zero = FinOpTable::constant(0, 0, n);
        FiniteAlgebra::new(n, [("+", plus), ("zero", zero)]).unwrap()
    }

    fn meet() -> FiniteAlgebra {
        FiniteAlgebra::from_tables(2, &[("and", 2, vec![0, 0, 0, 1])]).unwrap()
    }

    #[test]
    fn finitary_evaluation() {
        let z2 = zn(2);
        let t = parse_fin("(+ e0 e0)", None).unwrap();
        assert_eq!(z2.eval_finterm(&t, &vec![1u32]).unwrap(), 0);
        let t = parse_fin("(and e0 (and e1 e0))", None).unwrap();
        assert_eq!(meet().eval_finterm(&t, &vec![1u32, 0]).unwrap(), 0);
        let t = parse_fin("e0", None).unwrap();
        assert_eq!(z2.eval_finterm(&t, &BTreeMap::from([(0, 1)])).unwrap(), 1);
        let t = parse_fin("e3", None).unwrap();
        assert_eq!(
            z2.eval_finterm(&t, &BTreeMap::new()),
            Err(Error::MissingAssignment("e3".into()))
        );
    }

    #[test]
    fn metaterm_evaluation() {
        let z2 = zn(2);
        let t = parse_meta("(+ e0 e1 | proj 1 0)", None).unwrap();
        assert_eq!(z2.eval_metaterm(&t, &PointSeq::constant(1)).unwrap(), 0);
        let s = PointSeq::new(vec![0, 1, 0, 1], 0);
        assert_eq!(z2.eval_metaterm(&MetaTerm::Proj(3), &s).unwrap(), 1);
        let v = parse_fin("(+ e2 (+ e0 (zero)))", None).unwrap();
        let s = PointSeq::new(vec![1, 0, 1], 0);
        assert_eq!(
            z2.eval_metaterm(&bullet(&v), &s).unwrap(),
            z2.eval_finterm(&v, &s).unwrap()
        );
    }

    #[test]
    fn subalgebras() {
        let z4 = zn(4);
        assert_eq!(z4.subalgebra_gen(&BTreeSet::from([2])).unwrap(), BTreeSet::from([0, 2]));
        let full: BTreeSet<u32> = (0..4).collect();
        assert_eq!(z4.subalgebra_gen(&full).unwrap(), full);
        assert_eq!(meet().subalgebra_gen(&BTreeSet::from([1])).unwrap(), BTreeSet::from([1]));
        let (sub, elems) = z4.restrict(&BTreeSet::from([0, 2])).unwrap();
        assert_eq!(elems, vec![0, 2]);
        assert_eq!(sub, zn(2));
        assert!(z4.restrict(&BTreeSet::from([0, 1])).is_err());
    }

    #[test]
    fn products() {
        let sig = zn(2).signature();
        let (one, _) = FiniteAlgebra::product(&sig, &[], DEFAULT_MAX_PRODUCT).unwrap();
        assert_eq!(one.carrier(), 1);
        let (single, _) = FiniteAlgebra::product(&sig, &[zn(3)], DEFAULT_MAX_PRODUCT).unwrap();
        assert_eq!(single, zn(3));
        let (klein, enc) = zn(2).power(2, DEFAULT_MAX_PRODUCT).unwrap();
        assert_eq!(klein.carrier(), 4);
        let plus = klein.op("+").unwrap();
        for x in 0..4u32 {
            for y in 0..4u32 {
                assert_eq!(plus.get(&[x, y]), x ^ y);
            }
        }
        assert_eq!(enc.encode(&[1, 0]), 2);
        assert_eq!(enc.decode(1), vec![0, 1]);
        assert!(matches!(
            zn(2).power(30, DEFAULT_MAX_PRODUCT),
            Err(Error::ResourceExhausted { .. })
        ));
        assert!(FiniteAlgebra::product(&sig, &[meet()], DEFAULT_MAX_PRODUCT).is_err());
    }

    #[test]
    fn homomorphic_images() {
        let z4 = zn(4);
        assert_eq!(z4.hom_image(&z4, &[0, 1, 2, 3]).unwrap().len(), 4);
        assert_eq!(z4.hom_image(&zn(2), &[0, 1, 0, 1]).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(
            z4.hom_image(&zn(2), &[0, 0, 1, 1]),
            Err(Error::NotAHomomorphism {
                op: "+".into(),
                args: vec![1, 1]
            })
        );
        assert_eq!(z4.quotient(&[0, 1, 0, 1]).unwrap(), zn(2));
    }
}
