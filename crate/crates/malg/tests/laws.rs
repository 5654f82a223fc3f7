//! Cross-module laws checked against brute-force oracles: functor laws,
//! roundtrips, the order lemma suite, and the term-evaluation bridge.

use std::collections::BTreeMap;

use malg::bits::BitSet;
use malg::cabl::{
    check_sem_inf_dist, check_supsup_equals_supunion, check_union_atoms_is_atoms_sup,
    powerset_poset, validate_cabl,
};
use malg::core::{Signature, Term};
use malg::demo;
use malg::error::Caps;
use malg::functors::{
    a_preimage, apply_A, apply_A_mor, apply_P, apply_P_mor, counit_iso, enumerate_ordered_homs,
    p_preimage, phi, phi_inv, unit_iso,
};
use malg::generate::{random_multialgebra, random_term};
use malg::multialg::{check_hom, enumerate_homs, HomMode, Morphism};
use malg::ordalg::{check_atoms_of_operations, check_monotone, eval_term_ord};
use malg::variants::{check_partial_hom, PartialMultiAlgebra};

fn sig_ub() -> Signature {
    Signature::new(vec![("s", 1), ("f", 2)]).unwrap()
}

#[test]
fn powerset_of_random_structures_validates() {
    let caps = Caps::default();
    let sig = sig_ub();
    for seed in 0..100u64 {
        let size = 1 + (seed % 3) as usize;
        let m = random_multialgebra(&sig, size, seed, &caps).unwrap();
        let p = apply_P(&m, &caps).unwrap();
        assert!(check_monotone(&p, &caps).unwrap().is_pass());
        assert!(check_atoms_of_operations(&p, &caps).unwrap().is_pass());
    }
}

#[test]
fn unit_roundtrip_on_random_structures() {
    let caps = Caps::default();
    let sig = sig_ub();
    for seed in 0..100u64 {
        let size = 1 + (seed % 3) as usize;
        let m = random_multialgebra(&sig, size, seed, &caps).unwrap();
        assert!(unit_iso(&m, &caps).unwrap().is_pass(), "seed {seed}");
    }
}

#[test]
fn counit_roundtrip_on_random_structures() {
    let caps = Caps::default();
    let sig = sig_ub();
    for seed in 0..50u64 {
        let size = 1 + (seed % 3) as usize;
        let b = apply_P(&random_multialgebra(&sig, size, seed, &caps).unwrap(), &caps).unwrap();
        assert!(counit_iso(&b, &caps).unwrap().is_pass(), "seed {seed}");
    }
}

#[test]
fn functors_preserve_identity_and_composition() {
    let caps = Caps::default();
    let (a, b) = demo::pair();
    let pa = apply_P(&a, &caps).unwrap();
    let pb = apply_P(&b, &caps).unwrap();

    let id = Morphism::identity(2);
    assert_eq!(apply_P_mor(&id, &a, &a, &caps).unwrap(), Morphism::identity(3));
    assert_eq!(apply_A_mor(&Morphism::identity(3), &pa, &pa, &caps).unwrap(), id);

    let homs_ab = enumerate_homs(&a, &b, HomMode::Hom, &caps).unwrap();
    let homs_bb = enumerate_homs(&b, &b, HomMode::Hom, &caps).unwrap();
    for g in &homs_ab {
        for h in &homs_bb {
            let gh = g.then(h).unwrap();
            let lhs = apply_P_mor(&gh, &a, &b, &caps).unwrap();
            let rhs = apply_P_mor(g, &a, &b, &caps)
                .unwrap()
                .then(&apply_P_mor(h, &b, &b, &caps).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    let ohoms = enumerate_ordered_homs(&pa, &pb, &caps).unwrap();
    let ohoms_bb = enumerate_ordered_homs(&pb, &pb, &caps).unwrap();
    for g in &ohoms {
        for h in &ohoms_bb {
            let gh = g.then(h).unwrap();
            let lhs = apply_A_mor(&gh, &pa, &pb, &caps).unwrap();
            let rhs = apply_A_mor(g, &pa, &pb, &caps)
                .unwrap()
                .then(&apply_A_mor(h, &pb, &pb, &caps).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn fullness_preimages_exist_for_all_enumerated_homs() {
    let caps = Caps::default();
    let (a, b) = demo::pair();
    let pa = apply_P(&a, &caps).unwrap();
    let pb = apply_P(&b, &caps).unwrap();

    for g in enumerate_ordered_homs(&pa, &pb, &caps).unwrap() {
        let pre = p_preimage(&g, &a, &b).unwrap();
        assert!(check_hom(&pre, &a, &b).unwrap().is_pass());
        assert_eq!(apply_P_mor(&pre, &a, &b, &caps).unwrap(), g);
    }

    let ab = apply_A(&pa).unwrap();
    let bb = apply_A(&pb).unwrap();
    for g in enumerate_homs(&ab, &bb, HomMode::Hom, &caps).unwrap() {
        let pre = a_preimage(&g, &pa, &pb).unwrap();
        assert_eq!(apply_A_mor(&pre, &pa, &pb, &caps).unwrap(), g);
    }
}

#[test]
fn adjunction_bijection_on_demo_pair() {
    let caps = Caps::default();
    let (a, b_m) = demo::pair();
    let b = apply_P(&b_m, &caps).unwrap();
    let atoms_b = apply_A(&b).unwrap();

    let lower = enumerate_homs(&atoms_b, &a, HomMode::Hom, &caps).unwrap();
    let pa = apply_P(&a, &caps).unwrap();
    let upper = enumerate_ordered_homs(&b, &pa, &caps).unwrap();
    assert_eq!(lower.len(), upper.len());

    for g in &lower {
        let up = phi(g, &b, &a, &caps).unwrap();
        assert!(upper.contains(&up));
        assert_eq!(&phi_inv(&up, &b, &a, &caps).unwrap(), g);
    }
    for g in &upper {
        let down = phi_inv(g, &b, &a, &caps).unwrap();
        assert_eq!(&phi(&down, &b, &a, &caps).unwrap(), g);
    }
}

#[test]
fn lemma_suite_on_small_powerset_orders() {
    let caps = Caps::default();
    for n in 1..=4usize {
        let p = powerset_poset(n);
        let cert = validate_cabl(&p, &caps).unwrap();
        assert!(malg::poset::check_sup_of_lower_bounds(&p).is_pass());
        assert!(check_sem_inf_dist(&p).is_pass());
        assert!(check_union_atoms_is_atoms_sup(&p, &cert).is_pass());
        let carrier = p.size();
        // sup of sups over a fixed small family equals sup of the union
        let family: Vec<BitSet> = (0..carrier.min(4))
            .map(|i| BitSet::from_indices(carrier, [i, (i + 1) % carrier]))
            .collect();
        assert!(check_supsup_equals_supunion(&p, &family).is_pass());
    }
}

#[test]
fn lemma_suite_on_demo_powersets() {
    let caps = Caps::default();
    let (a, b) = demo::pair();
    for m in [a, b] {
        let p = apply_P(&m, &caps).unwrap();
        assert!(check_sem_inf_dist(p.poset()).is_pass());
        assert!(check_union_atoms_is_atoms_sup(p.poset(), p.certificate()).is_pass());
        assert!(check_atoms_of_operations(&p, &caps).unwrap().is_pass());
    }
}

#[test]
fn eval_bridge_on_random_triples() {
    let caps = Caps::default();
    let sig = sig_ub();
    let vars = vec!["x".to_string(), "y".to_string()];
    for seed in 0..200u64 {
        let size = 1 + (seed % 3) as usize;
        let m = random_multialgebra(&sig, size, seed, &caps).unwrap();
        let p = apply_P(&m, &caps).unwrap();
        let t = random_term(&sig, &vars, 3, seed.wrapping_mul(31).wrapping_add(7));
        let mut val = BTreeMap::new();
        let mut lifted = BTreeMap::new();
        for (i, v) in vars.iter().enumerate() {
            let e = (seed as usize + i) % size;
            val.insert(v.clone(), e);
            // singleton {e} sits at powerset index 2^e - 1
            lifted.insert(v.clone(), (1usize << e) - 1);
        }
        let nd = malg::multialg::eval_term_nd(&m, &t, &val).unwrap();
        let ord = eval_term_ord(&p, &t, &lifted).unwrap();
        assert_eq!(nd.as_mask().unwrap() as usize - 1, ord, "seed {seed}, term {t}");
    }
}

#[test]
fn partial_check_agrees_with_total_check() {
    let caps = Caps::default();
    let sig = Signature::unary_s();
    for seed in 0..50u64 {
        let src = random_multialgebra(&sig, 2, seed, &caps).unwrap();
        let dst = random_multialgebra(&sig, 2, seed.wrapping_add(1000), &caps).unwrap();
        let psrc = PartialMultiAlgebra::from_total(&src);
        let pdst = PartialMultiAlgebra::from_total(&dst);
        for map in [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]] {
            let h = Morphism::new(2, 2, map).unwrap();
            assert_eq!(
                check_hom(&h, &src, &dst).unwrap().is_pass(),
                check_partial_hom(&h, &psrc, &pdst).unwrap().is_pass()
            );
        }
    }
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

    #[test]
    fn prop_unit_roundtrip(seed in 0u64..100_000, size in 1usize..=3) {
        let caps = Caps::default();
        let m = random_multialgebra(&sig_ub(), size, seed, &caps).unwrap();
        proptest::prop_assert!(unit_iso(&m, &caps).unwrap().is_pass());
    }

    #[test]
    fn prop_partial_powerset_restricts_to_total(seed in 0u64..100_000, size in 1usize..=3) {
        let caps = Caps::default();
        let m = random_multialgebra(&sig_ub(), size, seed, &caps).unwrap();
        let total = apply_P(&m, &caps).unwrap();
        let partial =
            malg::variants::apply_P_partial(&PartialMultiAlgebra::from_total(&m), &caps).unwrap();
        for sym in 0..2 {
            let arity = if sym == 0 { 1 } else { 2 };
            let carrier = total.carrier_size();
            for ti in 0..malg::core::tuple_count(carrier, arity, &caps).unwrap() {
                let tuple = malg::core::tuple_from_index(carrier, arity, ti);
                // partial indices are masks; total index i holds mask i + 1
                let shifted: Vec<usize> = tuple.iter().map(|&i| i + 1).collect();
                proptest::prop_assert_eq!(
                    partial.value(sym, &shifted),
                    total.value(sym, &tuple) + 1
                );
            }
        }
    }
}

#[test]
fn term_depth_and_display_are_consistent() {
    let t = Term::app("f", vec![Term::app("s", vec![Term::var("x")]), Term::var("y")]);
    assert_eq!(t.depth(), 2);
    assert_eq!(t.to_string(), "f(s(x),y)");
}
