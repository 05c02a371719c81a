use std::collections::HashMap;

use serde::Serialize;

use crate::alg::{table_len, FinOpTable, FiniteAlgebra, OmegaOp, OmegaOpSeq, ProductEncoding, Tuples};
use crate::error::{Error, Result};
use crate::term::{OmegaSeq, Tail};

/// The result of pushing an operation on `A` along `α: A → B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AlphaStar {
    /// The unique `ψ` with `ψ ∘ α^ω = α ∘ φ`.
    Defined { psi: OmegaOp },
    /// Tuples with equal images under `α` whose `φ`-values have different
    /// images.
    Undefined { left: Vec<u32>, right: Vec<u32> },
}

/// Computes `α*(φ)` for a surjective homomorphism `α`.
pub fn alpha_star(a: &FiniteAlgebra, b: &FiniteAlgebra, alpha: &[u32], phi: &OmegaOp) -> Result<AlphaStar> {
    let image = a.hom_image(b, alpha)?;
    if image.len() < b.carrier() {
        let missing = (0..b.carrier() as u32).find(|x| !image.contains(x)).expect("missing element");
        return Err(Error::NotSurjective {
            missing: missing as usize,
        });
    }
    if phi.carrier() != a.carrier() {
        return Err(Error::CarrierMismatch {
            expected: a.carrier(),
            found: phi.carrier(),
        });
    }
    let d = phi.dim();
    table_len(a.carrier(), d)?;
    let mut seen: HashMap<Vec<u32>, (Vec<u32>, u32)> = HashMap::new();
    for s in Tuples::new(d, a.carrier()) {
        let key: Vec<u32> = s.iter().map(|&x| alpha[x as usize]).collect();
        let v = alpha[phi.apply_prefix(&s) as usize];
        match seen.get(&key) {
            Some((first, w)) if *w != v => {
                return Ok(AlphaStar::Undefined {
                    left: first.clone(),
                    right: s,
                })
            }
            Some(_) => {}
            None => {
                seen.insert(key, (s, v));
            }
        }
    }
    let table = FinOpTable::try_from_fn(d, b.carrier(), |y| seen[y].1)?;
    Ok(AlphaStar::Defined {
        psi: OmegaOp::top_extend(&table),
    })
}

/// `α(a)(b_0, b_1, …)(i) = a_i(b_0(i), b_1(i), …)`, from tuples of operations
/// on the factors to operations on the product carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductEmbedding {
    encoding: ProductEncoding,
    carrier: usize,
}

impl ProductEmbedding {
    pub fn new(carriers: Vec<usize>, max_carrier: u64) -> Result<Self> {
        if carriers.contains(&0) {
            return Err(Error::EmptyCarrier);
        }
        let total = carriers.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m as u64).filter(|&p| p <= max_carrier));
        let Some(total) = total else {
            return Err(Error::exhausted("product carrier", max_carrier));
        };
        Ok(ProductEmbedding {
            encoding: ProductEncoding::new(carriers),
            carrier: total as usize,
        })
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn encoding(&self) -> &ProductEncoding {
        &self.encoding
    }

    fn check(&self, a: &[OmegaOp]) -> Result<()> {
        let sizes = self.encoding.sizes();
        if a.len() != sizes.len() {
            return Err(Error::CarrierMismatch {
                expected: sizes.len(),
                found: a.len(),
            });
        }
        for (op, &m) in a.iter().zip(sizes) {
            if op.carrier() != m {
                return Err(Error::CarrierMismatch {
                    expected: m,
                    found: op.carrier(),
                });
            }
        }
        Ok(())
    }

    pub fn embed(&self, a: &[OmegaOp]) -> Result<OmegaOp> {
        self.check(a)?;
        let d = a.iter().map(OmegaOp::dim).max().unwrap_or(0);
        let k = a.len();
        let mut cols: Vec<Vec<u32>> = vec![vec![0; d]; k];
        let mut out = vec![0u32; k];
        let table = FinOpTable::try_from_fn(d, self.carrier, |x| {
            for (j, &code) in x.iter().enumerate() {
                for (i, v) in self.encoding.decode(code).into_iter().enumerate() {
                    cols[i][j] = v;
                }
            }
            for (i, op) in a.iter().enumerate() {
                out[i] = op.apply_prefix(&cols[i]);
            }
            self.encoding.encode(&out)
        })?;
        Ok(OmegaOp::top_extend(&table))
    }

    /// Embeds a sequence of tuples entrywise. The tails must agree in shape:
    /// all the same affine map, or all constant.
    pub fn embed_seq(&self, seqs: &[OmegaOpSeq]) -> Result<OmegaOpSeq> {
        let sizes = self.encoding.sizes().to_vec();
        if seqs.len() != sizes.len() {
            return Err(Error::CarrierMismatch {
                expected: sizes.len(),
                found: seqs.len(),
            });
        }
        let at = |k: usize| -> Result<OmegaOp> {
            let parts: Vec<OmegaOp> = seqs
                .iter()
                .zip(&sizes)
                .map(|(s, &m)| s.at_with(k, |i| OmegaOp::projection(m, i)).into_owned())
                .collect();
            self.embed(&parts)
        };
        let len = seqs.iter().map(|s| s.prefix().len()).max().unwrap_or(0);
        let prefix = (0..len).map(at).collect::<Result<Vec<_>>>()?;
        let tail = match seqs.first().map(OmegaSeq::tail) {
            None => Tail::Const(Box::new(OmegaOp::constant(1, 0))),
            Some(Tail::Affine { a, b }) => {
                if seqs.iter().any(|s| *s.tail() != Tail::Affine { a: *a, b: *b }) {
                    return Err(Error::Unrepresentable("tails with different index maps".into()));
                }
                Tail::Affine { a: *a, b: *b }
            }
            Some(Tail::Const(_)) => {
                let consts = seqs
                    .iter()
                    .map(|s| match s.tail() {
                        Tail::Const(c) => Ok((**c).clone()),
                        Tail::Affine { .. } => Err(Error::Unrepresentable("mixed constant and affine tails".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Tail::Const(Box::new(self.embed(&consts)?))
            }
        };
        Ok(crate::alg::op_seq(self.carrier, prefix, tail))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{omega_q, op_seq};

    fn zn(n: u32) -> FiniteAlgebra {
        let plus = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteAlgebra::from_tables(n as usize, &[("+", 2, plus), ("zero", 0, vec![0])]).unwrap()
    }

    const MOD2: [u32; 4] = [0, 1, 0, 1];

    #[test]
    fn plus_descends_to_z2() {
        let plus4 = zn(4).top_extensions()["+"].clone();
        let plus2 = zn(2).top_extensions()["+"].clone();
        assert_eq!(
            alpha_star(&zn(4), &zn(2), &MOD2, &plus4).unwrap(),
            AlphaStar::Defined { psi: plus2 }
        );
    }

    #[test]
    fn identity_map() {
        let op = OmegaOp::top_extend(&FinOpTable::from_values(1, 4, vec![3, 1, 1, 0]).unwrap());
        let id = [0, 1, 2, 3];
        assert_eq!(alpha_star(&zn(4), &zn(4), &id, &op).unwrap(), AlphaStar::Defined { psi: op });
    }

    #[test]
    fn undefined_case() {
        let phi = OmegaOp::top_extend(&FinOpTable::from_values(1, 4, vec![0, 1, 1, 0]).unwrap());
        let r = alpha_star(&zn(4), &zn(2), &MOD2, &phi).unwrap();
        assert_eq!(
            r,
            AlphaStar::Undefined {
                left: vec![0],
                right: vec![2]
            }
        );
    }

    #[test]
    fn errors() {
        let phi = OmegaOp::projection(4, 0);
        assert!(matches!(
            alpha_star(&zn(4), &zn(2), &[0, 0, 0, 0], &phi),
            Err(Error::NotSurjective { missing: 1 })
        ));
        assert!(matches!(
            alpha_star(&zn(4), &zn(2), &[0, 1, 1, 0], &phi),
            Err(Error::NotAHomomorphism { .. })
        ));
    }

    #[test]
    fn componentwise_on_z2_squared() {
        let e = ProductEmbedding::new(vec![2, 2], 1 << 20).unwrap();
        let plus = zn(2).top_extensions()["+"].clone();
        let p0 = OmegaOp::projection(2, 0);
        let emb = e.embed(&[plus.clone(), p0.clone()]).unwrap();
        assert_eq!(emb.dim(), 2);
        // (1,1) and (1,0) give (0, 1).
        assert_eq!(emb.apply_prefix(&[3, 2]), 1);
        let singleton = ProductEmbedding::new(vec![2], 4).unwrap();
        assert_eq!(singleton.embed(std::slice::from_ref(&plus)).unwrap(), plus);

        let s0 = op_seq(2, vec![p0.clone(), p0.clone()], Tail::Affine { a: 1, b: 0 });
        let s1 = op_seq(2, vec![OmegaOp::projection(2, 1), p0.clone()], Tail::Affine { a: 1, b: 0 });
        let lhs = e.embed(&[omega_q(&plus, &s0).unwrap(), omega_q(&p0, &s1).unwrap()]).unwrap();
        let rhs = omega_q(&emb, &e.embed_seq(&[s0, s1]).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
