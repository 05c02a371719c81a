mod common;

use clonealg_core::alg::{
    lemma_neu_check, omega_q, op_identity, op_seq, parse_algebra, point_hom, semantic_dim, similar, FinOpTable,
    OmegaOpSeq, PointSeq, Tuples,
};
use clonealg_core::birkhoff::ProductEmbedding;
use clonealg_core::term::Tail;
use clonealg_core::{FiniteAlgebra, OmegaOp};
use common::*;
use proptest::prelude::*;

const SIG: &[(&str, usize)] = &[("f", 2), ("g", 1), ("c", 0)];

fn op_sequence(m: usize) -> impl Strategy<Value = OmegaOpSeq> {
    let tail = prop_oneof![
        (1usize..=2, 0usize..=2).prop_map(|(a, b)| Tail::Affine { a, b }),
        omega_op(m, 2).prop_map(|op| Tail::Const(Box::new(op))),
    ];
    (prop::collection::vec(omega_op(m, 2), 0..3), tail).prop_map(move |(p, t)| op_seq(m, p, t))
}

fn entry(seq: &OmegaOpSeq, k: usize, m: usize) -> OmegaOp {
    match seq.prefix().get(k) {
        Some(op) => op.clone(),
        None => match seq.tail() {
            Tail::Affine { a, b } => OmegaOp::projection(m, a * k + b),
            Tail::Const(op) => (**op).clone(),
        },
    }
}

/// `q(y_0, z), …, q(y_{n-1}, z)`, padded with a constant; `x` of dimension
/// `n` reads nothing past it.
fn compose(y: &OmegaOpSeq, z: &OmegaOpSeq, n: usize, m: usize) -> OmegaOpSeq {
    let prefix = (0..n).map(|k| omega_q(&entry(y, k, m), z).unwrap()).collect();
    op_seq(m, prefix, Tail::Const(Box::new(OmegaOp::constant(m, 0))))
}

fn carrier_and<T: std::fmt::Debug, S: Strategy<Value = T>>(f: impl Fn(usize) -> S) -> impl Strategy<Value = (usize, T)> {
    (1usize..=3).prop_flat_map(move |m| (Just(m), f(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn omega_q_n1((m, (i, z)) in carrier_and(|m| (0usize..4, op_sequence(m)))) {
        prop_assert_eq!(omega_q(&OmegaOp::projection(m, i), &z).unwrap(), entry(&z, i, m));
    }

    #[test]
    fn omega_q_n2((m, x) in carrier_and(|m| omega_op(m, 3))) {
        prop_assert_eq!(omega_q(&x, &op_identity(m)).unwrap(), x);
    }

    #[test]
    fn omega_q_n3((m, (x, y, z)) in carrier_and(|m| (omega_op(m, 2), op_sequence(m), op_sequence(m)))) {
        let lhs = omega_q(&omega_q(&x, &y).unwrap(), &z).unwrap();
        prop_assert_eq!(lhs, omega_q(&x, &compose(&y, &z, x.dim(), m)).unwrap());
    }

    #[test]
    fn point_evaluation_is_a_homomorphism(
        (m, (a, phis, s)) in carrier_and(|m| (algebra(m, SIG), prop::collection::vec(omega_op(m, 3), 2), point(m, 4)))
    ) {
        for (name, table) in a.ops() {
            let n = table.arity();
            let args = op_seq(m, phis[..n].to_vec(), Tail::Const(Box::new(OmegaOp::constant(m, 0))));
            let top = &a.top_extensions()[name];
            let lhs = point_hom(m, &s, &omega_q(top, &args).unwrap()).unwrap();
            let values: Vec<u32> = phis[..n].iter().map(|p| point_hom(m, &s, p).unwrap()).collect();
            prop_assert_eq!(lhs, table.get(&values));
        }
    }

    #[test]
    fn similarity_is_equality_of_essential_tables((_m, (f, g, pad)) in carrier_and(|m| (omega_op(m, 2), omega_op(m, 2), 0usize..2))) {
        let ft = f.table_at(f.dim() + pad).unwrap();
        let gt = g.table().clone();
        prop_assert_eq!(similar(&ft, &gt).unwrap(), ft.essentialize() == gt.essentialize());
        prop_assert!(similar(&ft, f.table()).unwrap());
    }

    #[test]
    fn algebra_text_round_trip(a in small_algebra(SIG)) {
        prop_assert_eq!(parse_algebra(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn top_extension_commutes_with_products(a in algebra(2, SIG), b in algebra(3, SIG)) {
        let (p, _) = FiniteAlgebra::product(&a.signature(), &[a.clone(), b.clone()], 1000).unwrap();
        let emb = ProductEmbedding::new(vec![2, 3], 1000).unwrap();
        for name in a.ops().keys() {
            let parts = [a.top_extensions()[name].clone(), b.top_extensions()[name].clone()];
            prop_assert_eq!(&p.top_extensions()[name], &emb.embed(&parts).unwrap());
        }
    }

    #[test]
    fn hom_image_matches_direct_check(a in algebra(3, SIG), b in algebra(2, SIG), alpha in prop::collection::vec(0u32..2, 3)) {
        let direct = a.ops().iter().all(|(name, t)| {
            Tuples::new(t.arity(), 3).all(|x| {
                let image: Vec<u32> = x.iter().map(|&v| alpha[v as usize]).collect();
                alpha[t.get(&x) as usize] == b.ops()[name].get(&image)
            })
        });
        match a.hom_image(&b, &alpha) {
            Ok(image) => {
                prop_assert!(direct);
                prop_assert_eq!(image, alpha.iter().copied().collect());
            }
            Err(_) => prop_assert!(!direct),
        }
    }
}

#[test]
fn dimension_criterion_is_exhaustively_sound() {
    for m in 1..=3 {
        for arity in 0..=2 {
            for table in all_tables(arity, m) {
                let op = OmegaOp::top_extend(&table);
                for n in 0..=2 {
                    assert_eq!(semantic_dim(&table) <= n, lemma_neu_check(&op, n).unwrap(), "{table:?} n={n}");
                }
            }
        }
    }
}

#[test]
fn point_evaluation_reads_the_prefix() {
    let plus = FinOpTable::from_fn(2, 2, |x| x[0] ^ x[1]);
    let op = OmegaOp::top_extend(&plus);
    assert_eq!(point_hom(2, &PointSeq::new(vec![1], 1), &op).unwrap(), 0);
    assert_eq!(point_hom(2, &PointSeq::new(vec![1], 0), &op).unwrap(), 1);
}
