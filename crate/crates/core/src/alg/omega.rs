
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::table::{FinOpTable, Tuples};
use crate::error::{Error, Result};
use crate::term::{OmegaSeq, SeqItem, Tail};

/// An eventually constant point of `A^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PointSeq {
    prefix: Vec<u32>,
    tail: u32,
}

impl PointSeq {
    pub fn new(mut prefix: Vec<u32>, tail: u32) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        PointSeq { prefix, tail }
    }

    pub fn constant(value: u32) -> Self {
        PointSeq {
            prefix: Vec::new(),
            tail: value,
        }
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    pub fn at(&self, k: usize) -> u32 {
        self.prefix.get(k).copied().unwrap_or(self.tail)
    }

    pub fn take(&self, n: usize) -> Vec<u32> {
        (0..n).map(|k| self.at(k)).collect()
    }

    /// Largest entry, used for carrier checks.
    pub fn max_entry(&self) -> u32 {
        self.prefix.iter().copied().fold(self.tail, u32::max)
    }
}

/// A finite-dimensional ω-ary operation, stored as the essentialized table
/// whose top extension it is.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaOp {
    table: FinOpTable,
}

pub type OmegaOpSeq = OmegaSeq<OmegaOp>;

impl OmegaOp {
    /// `f⊤`, with trailing inessential coordinates dropped.
    pub fn top_extend(table: &FinOpTable) -> Self {
        OmegaOp {
            table: table.essentialize(),
        }
    }

    /// `e_i⊤`. Over a one-element carrier this is the constant.
    ///
    /// Panics if the table would exceed [`MAX_TABLE`](super::MAX_TABLE)
    /// entries; see [`OmegaOp::try_projection`].
    pub fn projection(carrier: usize, i: usize) -> Self {
        Self::try_projection(carrier, i).expect("projection table too large")
    }

    pub fn try_projection(carrier: usize, i: usize) -> Result<Self> {
        if carrier == 1 {
            return Ok(OmegaOp::constant(1, 0));
        }
        Ok(OmegaOp {
            table: FinOpTable::try_from_fn(i + 1, carrier, |x| x[i])?,
        })
    }

    pub fn constant(carrier: usize, value: u32) -> Self {
        OmegaOp {
            table: FinOpTable::constant(0, value, carrier),
        }
    }

    pub fn dim(&self) -> usize {
        self.table.arity()
    }

    pub fn carrier(&self) -> usize {
        self.table.carrier()
    }

    /// The essential table of arity `dim`.
    pub fn table(&self) -> &FinOpTable {
        &self.table
    }

    /// The similar table of arity `n ≥ dim`.
    pub fn table_at(&self, n: usize) -> Result<FinOpTable> {
        self.table.pad_to(n)
    }

    /// Value at a tuple of length at least `dim`.
    pub fn apply_prefix(&self, x: &[u32]) -> u32 {
        self.table.get(&x[..self.dim()])
    }

    pub fn apply(&self, s: &PointSeq) -> u32 {
        let d = self.dim();
        if s.prefix.len() >= d {
            self.table.get(&s.prefix[..d])
        } else {
            self.table.get(&s.take(d))
        }
    }

    pub fn constant_value(&self) -> Option<u32> {
        (self.dim() == 0).then(|| self.table.values()[0])
    }
}

impl SeqItem for OmegaOp {
    fn as_projection(&self) -> Option<usize> {
        let d = self.dim();
        if d == 0 {
            return None;
        }
        let m = self.carrier();
        let is_proj = Tuples::new(d, m).all(|x| self.table.get(&x) == x[d - 1]);
        is_proj.then_some(d - 1)
    }
}

impl Serialize for OmegaOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("OmegaOp", 3)?;
        st.serialize_field("carrier", &self.carrier())?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("table", self.table.values())?;
        st.end()
    }
}

/// Canonical form of an operation sequence over a carrier of size `m`.
pub fn op_seq(carrier: usize, prefix: Vec<OmegaOp>, tail: Tail<OmegaOp>) -> OmegaOpSeq {
    let tail = match tail {
        // Over one element every projection is the constant.
        Tail::Affine { .. } if carrier == 1 => Tail::Const(Box::new(OmegaOp::constant(1, 0))),
        t => t,
    };
    OmegaSeq::raw(prefix, tail).canonicalize_with(|i| OmegaOp::projection(carrier, i))
}

/// The identity sequence `e_0⊤, e_1⊤, …`.
pub fn op_identity(carrier: usize) -> OmegaOpSeq {
    op_seq(carrier, Vec::new(), Tail::Affine { a: 1, b: 0 })
}

pub fn op_at(seq: &OmegaOpSeq, k: usize, carrier: usize) -> OmegaOp {
    seq.at_with(k, |i| OmegaOp::projection(carrier, i)).into_owned()
}

fn try_op_at(seq: &OmegaOpSeq, k: usize, carrier: usize) -> Result<OmegaOp> {
    match (seq.prefix().get(k), seq.tail()) {
        (Some(op), _) => Ok(op.clone()),
        (None, Tail::Affine { a, b }) => OmegaOp::try_projection(carrier, a * k + b),
        (None, Tail::Const(op)) => Ok((**op).clone()),
    }
}

/// `q(g0, gs)(s) = g0(gs_0(s), gs_1(s), …)`, essentialized.
///
/// Only the first `dim(g0)` entries of `gs` are read, so the composite has
/// finite dimension bounded by the largest of theirs.
pub fn omega_q(g0: &OmegaOp, gs: &OmegaOpSeq) -> Result<OmegaOp> {
    let m = g0.carrier();
    for g in gs.items() {
        if g.carrier() != m {
            return Err(Error::CarrierMismatch {
                expected: m,
                found: g.carrier(),
            });
        }
    }
    let args = (0..g0.dim()).map(|k| try_op_at(gs, k, m)).collect::<Result<Vec<_>>>()?;
    let d = args.iter().map(OmegaOp::dim).max().unwrap_or(0);
    let mut inner = vec![0u32; args.len()];
    let table = FinOpTable::try_from_fn(d, m, |x| {
        for (slot, a) in inner.iter_mut().zip(&args) {
            *slot = a.apply_prefix(x);
        }
        g0.table.get(&inner)
    })?;
    Ok(OmegaOp::top_extend(&table))
}

/// Whether two tables have the same top extension.
pub fn similar(f: &FinOpTable, g: &FinOpTable) -> Result<bool> {
    if f.carrier() != g.carrier() {
        return Err(Error::CarrierMismatch {
            expected: f.carrier(),
            found: g.carrier(),
        });
    }
    Ok(OmegaOp::top_extend(f) == OmegaOp::top_extend(g))
}

/// Least `n` such that the top extension of `t` depends only on its first `n`
/// coordinates, read off from the table layout.
pub fn semantic_dim(t: &FinOpTable) -> usize {
    // dim ≤ n iff the table is constant on each run of m^(arity - n) entries
    // sharing their first n arguments.
    let m = t.carrier();
    let values = t.values();
    (0..=t.arity())
        .find(|&n| {
            let run = m.pow((t.arity() - n) as u32);
            values.chunks(run).all(|c| c.iter().all(|&v| v == c[0]))
        })
        .unwrap_or(t.arity())
}

/// Evaluates the identity characterising `dim(op) ≤ n` inside the clone of
/// ω-ary operations: for `n ≥ 1`, `q(op, e_0, …, e_{n-1}, e_0, e_0, …) = op`;
/// for `n = 0`, `q(op, e_0, e_2, e_4, …) = q(op, e_1, e_3, e_5, …)`.
pub fn lemma_neu_check(op: &OmegaOp, n: usize) -> Result<bool> {
    let m = op.carrier();
    if n >= 1 {
        let prefix = (0..n).map(|i| OmegaOp::projection(m, i)).collect();
        let seq = op_seq(m, prefix, Tail::Const(Box::new(OmegaOp::projection(m, 0))));
        Ok(omega_q(op, &seq)? == *op)
    } else {
        let evens = op_seq(m, vec![], Tail::Affine { a: 2, b: 0 });
        let odds = op_seq(m, vec![], Tail::Affine { a: 2, b: 1 });
        Ok(omega_q(op, &evens)? == omega_q(op, &odds)?)
    }
}

/// Evaluation at a point, `φ ↦ φ(s)`.
pub fn point_hom(carrier: usize, s: &PointSeq, phi: &OmegaOp) -> Result<u32> {
    if phi.carrier() != carrier {
        return Err(Error::CarrierMismatch {
            expected: carrier,
            found: phi.carrier(),
        });
    }
    if s.max_entry() as usize >= carrier {
        return Err(Error::CarrierMismatch {
            expected: carrier,
            found: s.max_entry() as usize + 1,
        });
    }
    Ok(phi.apply(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meet() -> FinOpTable {
        FinOpTable::from_values(2, 2, vec![0, 0, 0, 1]).unwrap()
    }

    fn join() -> FinOpTable {
        FinOpTable::from_values(2, 2, vec![0, 1, 1, 1]).unwrap()
    }

    fn neg() -> FinOpTable {
        FinOpTable::from_values(1, 2, vec![1, 0]).unwrap()
    }

    #[test]
    fn top_extension_dims() {
        assert_eq!(OmegaOp::top_extend(&FinOpTable::projection(2, 0, 2)).dim(), 1);
        assert_eq!(OmegaOp::top_extend(&meet()).dim(), 2);
        assert_eq!(OmegaOp::top_extend(&FinOpTable::constant(0, 0, 2)).dim(), 0);
    }

    #[test]
    fn similarity() {
        assert!(similar(&FinOpTable::projection(1, 0, 2), &FinOpTable::projection(2, 0, 2)).unwrap());
        assert!(!similar(&meet(), &FinOpTable::projection(1, 0, 2)).unwrap());
        assert!(similar(&meet(), &meet()).unwrap());
        assert!(similar(&meet(), &FinOpTable::projection(1, 0, 3)).is_err());
    }

    #[test]
    fn composition() {
        let m = 2;
        let seq = op_seq(
            m,
            vec![OmegaOp::top_extend(&join()), OmegaOp::top_extend(&neg())],
            Tail::Affine { a: 1, b: 0 },
        );
        let r = omega_q(&OmegaOp::top_extend(&meet()), &seq).unwrap();
        assert_eq!(r.apply(&PointSeq::new(vec![0, 1], 0)), 1);
        let p = OmegaOp::projection(m, 1);
        assert_eq!(omega_q(&p, &seq).unwrap(), OmegaOp::top_extend(&neg()));
        let g = OmegaOp::top_extend(&meet());
        assert_eq!(omega_q(&g, &op_identity(m)).unwrap(), g);
    }

    #[test]
    fn dimension_tests_agree() {
        let and = OmegaOp::top_extend(&meet());
        assert_eq!(semantic_dim(and.table()), 2);
        assert!(lemma_neu_check(&and, 2).unwrap());
        assert!(!lemma_neu_check(&and, 1).unwrap());
        assert!(!lemma_neu_check(&and, 0).unwrap());
        let c = OmegaOp::constant(3, 2);
        assert_eq!(semantic_dim(c.table()), 0);
        assert!(lemma_neu_check(&c, 0).unwrap());
        assert_eq!(semantic_dim(OmegaOp::projection(3, 4).table()), 5);
    }

    #[test]
    fn point_evaluation() {
        let s = PointSeq::new(vec![1, 1], 0);
        assert_eq!(point_hom(2, &s, &OmegaOp::projection(2, 0)).unwrap(), 1);
        let plus = FinOpTable::from_values(2, 2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(point_hom(2, &s, &OmegaOp::top_extend(&plus)).unwrap(), 0);
        assert_eq!(point_hom(2, &s, &OmegaOp::constant(2, 1)).unwrap(), 1);
        assert!(point_hom(3, &s, &OmegaOp::constant(2, 1)).is_err());
    }

    #[test]
    fn point_seq_is_canonical() {
        assert_eq!(PointSeq::new(vec![0, 1, 1], 1), PointSeq::new(vec![0], 1));
        assert_eq!(PointSeq::new(vec![0, 1, 0, 1], 0).at(3), 1);
    }
}
