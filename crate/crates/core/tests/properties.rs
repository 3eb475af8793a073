use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use eqc_core::chevalley::{chevalley, LinFrac};
use eqc_core::exactalg::{
    complete_homogeneous, elementary_symmetric, from_json_terms, parse_spoly, render, t_range, to_json_terms,
    to_rational, DegreeTable, Monomial, QPoly, SPoly, Var,
};
use eqc_core::partitions::{
    add_box_successors, coxeter_length, enumerate_sp, partition_to_perm, perm_to_partition, remove_box_predecessors,
    LieType, StrictPartition,
};
use eqc_core::qh_ring::{ClassExpansion, RingContext};

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![
        (1u32..5).prop_map(Var::T),
        Just(Var::Q),
        (1u32..4).prop_map(Var::X),
        (0u32..3).prop_map(Var::Root),
    ]
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((var(), 1u32..3), 0..3).prop_map(Monomial::from_pairs)
}

fn spoly() -> impl Strategy<Value = SPoly> {
    prop::collection::vec((monomial(), -5i64..6), 0..5)
        .prop_map(|ts| SPoly::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

fn t_linear() -> impl Strategy<Value = SPoly> {
    prop::collection::vec(-3i64..4, 3).prop_filter_map("nonzero form", |cs| {
        let p = SPoly::from_terms(cs.iter().enumerate().map(|(i, &c)| (Monomial::var(Var::T(i as u32 + 1)), BigInt::from(c))));
        (!p.is_zero()).then_some(p)
    })
}

fn t_poly() -> impl Strategy<Value = SPoly> {
    prop::collection::vec((prop::collection::vec((1u32..4, 1u32..3), 0..3), -4i64..5), 0..4).prop_map(|ts| {
        SPoly::from_terms(
            ts.into_iter()
                .map(|(ps, c)| (Monomial::from_pairs(ps.into_iter().map(|(i, e)| (Var::T(i), e))), BigInt::from(c))),
        )
    })
}

fn strict_partition(max: u32) -> impl Strategy<Value = StrictPartition> {
    prop::collection::btree_set(1..=max, 0..=max as usize).prop_map(|s| StrictPartition::new(s.into_iter().rev().collect()).unwrap())
}

fn mono(p: &StrictPartition) -> SPoly {
    SPoly::term(Monomial::from_pairs(p.parts().iter().map(|&i| (Var::X(i), 1))), BigInt::from(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in spoly(), b in spoly(), c in spoly()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(b.clone() + c.clone()), &a * &b + &a * &c);
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(&a * &SPoly::one(), a.clone());
    }

    #[test]
    fn exact_division_recovers_factor(a in spoly(), b in spoly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn text_round_trip(a in spoly()) {
        prop_assert_eq!(parse_spoly(&render(&a)).unwrap(), a);
    }

    #[test]
    fn json_round_trip(a in spoly()) {
        prop_assert_eq!(from_json_terms(&to_json_terms(&a)).unwrap(), a);
    }

    #[test]
    fn products_of_homogeneous_are_homogeneous(a in spoly(), b in spoly(), dq in 1u32..6) {
        let table = DegreeTable::new(dq);
        prop_assume!(a.is_homogeneous(&table) && b.is_homogeneous(&table));
        let p = &a * &b;
        prop_assert!(p.is_homogeneous(&table));
        if !p.is_zero() {
            prop_assert_eq!(p.degree(&table), Some(a.degree(&table).unwrap() + b.degree(&table).unwrap()));
        }
    }

    #[test]
    fn elementary_complete_duality(k in 1usize..6, m in 1i64..5) {
        let vars = t_range(1, m);
        let mut acc = SPoly::zero();
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += &(&elementary_symmetric(j, &vars) * &complete_homogeneous(k - j, &vars)).scale(&BigInt::from(sign));
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn partition_text_round_trip(l in strict_partition(8)) {
        prop_assert_eq!(l.to_string().parse::<StrictPartition>().unwrap(), l);
    }

    #[test]
    fn successors_add_one_box(l in strict_partition(5), n in 1u32..6) {
        prop_assume!(l.fits(n));
        for m in add_box_successors(&l, n) {
            prop_assert_eq!(m.weight(), l.weight() + 1);
            prop_assert!(m.fits(n) && m.contains(&l));
            prop_assert!(remove_box_predecessors(&m).contains(&l));
        }
    }

    #[test]
    fn permutation_dictionary(l in strict_partition(6), n in 1u32..7, d in any::<bool>()) {
        prop_assume!(l.fits(n));
        let lie = if d { LieType::D } else { LieType::C };
        let w = partition_to_perm(&l, n, lie).unwrap();
        prop_assert_eq!(coxeter_length(&w), l.weight());
        prop_assert_eq!(perm_to_partition(&w).unwrap(), l);
    }

    #[test]
    fn linfrac_division_undone(a in t_poly(), l in t_linear(), m in t_linear()) {
        let f = LinFrac::from_spoly(&a).div_linear(&to_rational(&l)).div_linear(&to_rational(&m));
        let back = f.mul(&LinFrac::from_spoly(&(&l * &m)));
        prop_assert_eq!(back.as_poly(), Some(&to_rational(&a)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn linfrac_field_laws(a in t_poly(), b in t_poly(), l in t_linear()) {
        let x = LinFrac::from_spoly(&a).div_linear(&to_rational(&l));
        let y = LinFrac::from_spoly(&b);
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        let lhs = x.add(&y).mul(&x);
        let rhs = x.mul(&x).add(&y.mul(&x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn class_expansion_json_round_trip(cs in prop::collection::vec(spoly(), 8)) {
        let basis = enumerate_sp(3);
        let terms: BTreeMap<_, _> = basis.into_iter().zip(cs).map(|(b, c)| (b, c.substitute(|v| matches!(v, Var::X(_)).then(SPoly::one)))).collect();
        let e = ClassExpansion::new(LieType::C, 3, terms);
        prop_assert_eq!(ClassExpansion::from_json_terms(LieType::C, 3, &e.to_json_terms()).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_idempotent_and_graded(
        a in strict_partition(3), b in strict_partition(3), c in t_poly(), d in any::<bool>()
    ) {
        let lie = if d { LieType::D } else { LieType::C };
        let ctx = RingContext::build(lie, 3).unwrap();
        let p = &(&mono(&a) * &mono(&b)) * &c;
        let nf = ctx.normal_form(&p);
        prop_assert_eq!(ctx.normal_form(&nf), nf.clone());
        for (m, _) in nf.terms() {
            prop_assert!(m.pairs().iter().all(|&(v, e)| !matches!(v, Var::X(i) if e > 1 || i > 3)));
        }
        let table = ctx.degree_table();
        if c.is_homogeneous(&table) && !nf.is_zero() {
            prop_assert!(nf.is_homogeneous(&table));
            prop_assert_eq!(nf.degree(&table), p.degree(&table));
        }
    }

    #[test]
    fn products_are_commutative_and_graded(a in strict_partition(3), b in strict_partition(3), d in any::<bool>()) {
        let lie = if d { LieType::D } else { LieType::C };
        let ctx = RingContext::build(lie, 3).unwrap();
        let ab = ctx.schubert_product(&a, &b).unwrap();
        prop_assert_eq!(&ab, &ctx.schubert_product(&b, &a).unwrap());
        let table = ctx.degree_table();
        for (nu, c) in ab.terms() {
            prop_assert!(c.is_homogeneous(&table));
            prop_assert_eq!(c.degree(&table).unwrap() + nu.weight(), a.weight() + b.weight());
        }
    }

    #[test]
    fn chevalley_boxes_are_successors(l in strict_partition(4), n in 1u32..5, d in any::<bool>()) {
        prop_assume!(l.fits(n));
        let lie = if d { LieType::D } else { LieType::C };
        let e = chevalley(lie, &l, n);
        let succ = add_box_successors(&l, n);
        prop_assert_eq!(e.boxes.len(), succ.len());
        for (m, _) in &e.boxes {
            prop_assert!(succ.contains(m));
        }
    }
}

#[test]
fn rational_conversion_keeps_terms() {
    let p = parse_spoly("3*t1^2 - q*X1").unwrap();
    let r: QPoly = to_rational(&p);
    assert_eq!(r.len(), 2);
}
