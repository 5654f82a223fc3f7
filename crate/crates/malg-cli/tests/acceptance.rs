//! Acceptance suite. Each test covers one numbered criterion and prints a
//! single pass line; a panic marks the criterion failed.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use malg::bits::{nonempty_subsets, BitSet};
use malg::cabl::{
    check_sem_inf_dist, check_supsup_equals_supunion, check_union_atoms_is_atoms_sup,
    powerset_poset, validate_cabl, CablViolation,
};
use malg::core::{tuple_count, Signature, Universe};
use malg::demo;
use malg::error::Caps;
use malg::functors::{
    a_preimage, apply_A, apply_A_mor, apply_P, apply_P_eq, apply_P_mor, counit_iso,
    enumerate_ordered_homs, enumerate_ordered_isos, enumerate_plain_isos, check_naturality,
    p_preimage, phi, phi_inv, unit_iso,
};
use malg::generate::{random_multialgebra, random_term};
use malg::monad::{check_monad_laws, check_naturality_eta_eps};
use malg::multialg::{
    check_full_hom, check_hom, enumerate_homs, eval_term_nd, HomMode, Morphism, MultiAlgebra,
};
use malg::ordalg::eval_term_ord;
use malg::poset::validate_poset;
use malg::variants::{
    apply_P_partial, check_mm_hom, check_partial_hom, empty_signature_mode, PartialMultiAlgebra,
    SetValuedMorphism,
};

fn pass(n: usize, what: &str) {
    println!("criterion {n}: PASS ({what})");
}

/// Every multialgebra over `sig` with the given universe size, by running
/// a counter over all table positions in non-empty-subset space.
fn all_multialgebras(sig: &Signature, size: usize) -> Vec<MultiAlgebra> {
    let caps = Caps::default();
    let subsets: Vec<BitSet> = nonempty_subsets(size).collect();
    let positions: usize = (0..sig.len())
        .map(|sym| tuple_count(size, sig.arity(sym), &caps).unwrap() as usize)
        .sum();
    let mut out = Vec::new();
    let mut counter = vec![0usize; positions];
    loop {
        let mut tables = Vec::with_capacity(sig.len());
        let mut k = 0;
        for sym in 0..sig.len() {
            let total = tuple_count(size, sig.arity(sym), &caps).unwrap() as usize;
            tables.push(
                (0..total)
                    .map(|_| {
                        let v = subsets[counter[k]].clone();
                        k += 1;
                        v
                    })
                    .collect(),
            );
        }
        out.push(
            MultiAlgebra::new(sig.clone(), Universe::of_size(size).unwrap(), tables).unwrap(),
        );
        // increment the base-|subsets| counter
        let mut i = 0;
        loop {
            if i == positions {
                return out;
            }
            counter[i] += 1;
            if counter[i] < subsets.len() {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn criterion_1_counterexample_end_to_end() {
    let started = Instant::now();
    let caps = Caps::default();
    let (a, b) = demo::pair();

    // (a) no isomorphism between the two structures, all 4 candidates
    let mut iso_count = 0;
    for map in [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]] {
        let h = Morphism::new(2, 2, map).unwrap();
        let Some(inv) = h.inverse() else { continue };
        if check_full_hom(&h, &a, &b).unwrap().is_pass()
            && check_full_hom(&inv, &b, &a).unwrap().is_pass()
        {
            iso_count += 1;
        }
    }
    assert_eq!(iso_count, 0);

    // (b) the subset algebras without order are isomorphic, with the
    // explicit witness among the isomorphisms found
    let plain = enumerate_plain_isos(
        &apply_P_eq(&a, &caps).unwrap(),
        &apply_P_eq(&b, &caps).unwrap(),
        &caps,
    )
    .unwrap();
    assert!(!plain.is_empty());
    let explicit = Morphism::new(3, 3, demo::plain_iso_map()).unwrap();
    assert!(plain.contains(&explicit));

    // (c) no order isomorphism between the powerset algebras
    let ordered = enumerate_ordered_isos(
        &apply_P(&a, &caps).unwrap(),
        &apply_P(&b, &caps).unwrap(),
        &caps,
    )
    .unwrap();
    assert!(ordered.is_empty());

    // same verdicts through the installed binary
    let out = Command::new(env!("CARGO_BIN_EXE_malg"))
        .args(["demo", "counterexample"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS the two structures are not isomorphic"));
    assert!(text.contains("PASS subset algebras without order are isomorphic"));
    assert!(text.contains("PASS subset algebras with order are not isomorphic"));
    assert!(text.contains("count structure isomorphisms = 0"));
    assert!(text.contains("count order isomorphisms = 0"));

    assert!(started.elapsed().as_secs() < 1);
    pass(1, "counterexample, library and binary agree");
}

#[test]
fn criterion_2_equivalence_roundtrips() {
    let caps = Caps::default();
    let sig = Signature::new(vec![("s", 1), ("f", 2)]).unwrap();
    let mut checked = 0usize;
    for size in 1..=2usize {
        for m in all_multialgebras(&sig, size) {
            assert!(unit_iso(&m, &caps).unwrap().is_pass());
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 729);
    for seed in 0..200u64 {
        let m = random_multialgebra(&sig, 3, seed, &caps).unwrap();
        assert!(unit_iso(&m, &caps).unwrap().is_pass(), "seed {seed}");
    }
    for seed in 0..100u64 {
        let size = 1 + (seed % 3) as usize;
        let b = apply_P(&random_multialgebra(&sig, size, seed, &caps).unwrap(), &caps).unwrap();
        assert!(b.atoms().len() <= 3);
        assert!(counit_iso(&b, &caps).unwrap().is_pass(), "seed {seed}");
    }
    pass(2, "unit on 730 exhaustive + 200 seeded, counit on 100 seeded");
}

#[test]
fn criterion_3_adjunction() {
    let caps = Caps::default();
    let sig = Signature::unary_s();
    for seed in 0..50u64 {
        let atoms = 1 + (seed % 2) as usize;
        let size = 1 + (seed % 2) as usize;
        let b = apply_P(
            &random_multialgebra(&sig, atoms, seed.wrapping_add(500), &caps).unwrap(),
            &caps,
        )
        .unwrap();
        let a = random_multialgebra(&sig, size, seed, &caps).unwrap();
        let atoms_b = apply_A(&b).unwrap();
        let pa = apply_P(&a, &caps).unwrap();
        let lower = enumerate_homs(&atoms_b, &a, HomMode::Hom, &caps).unwrap();
        let upper = enumerate_ordered_homs(&b, &pa, &caps).unwrap();
        assert_eq!(lower.len(), upper.len(), "seed {seed}");
        for g in &lower {
            let up = phi(g, &b, &a, &caps).unwrap();
            assert!(upper.contains(&up));
            assert_eq!(&phi_inv(&up, &b, &a, &caps).unwrap(), g);
        }
        for g in &upper {
            assert_eq!(&phi(&phi_inv(g, &b, &a, &caps).unwrap(), &b, &a, &caps).unwrap(), g);
        }
        // naturality over all composable quadruples from the endo hom-sets
        let end_a = enumerate_homs(&a, &a, HomMode::Hom, &caps).unwrap();
        let end_b = enumerate_ordered_homs(&b, &b, &caps).unwrap();
        for h in &end_a {
            for h2 in &end_b {
                assert!(
                    check_naturality(h, &a, &a, h2, &b, &b, &caps).unwrap().is_pass(),
                    "seed {seed}"
                );
            }
        }
    }
    pass(3, "hom-set bijection and naturality on 50 seeded pairs");
}

#[test]
fn criterion_4_monad_laws() {
    let caps = Caps::default();
    let (a, b) = demo::pair();
    let sig = Signature::unary_s();
    let mut family = vec![a, b];
    family.extend(all_multialgebras(&sig, 2));
    assert_eq!(family.len(), 2 + 9);
    for m in &family {
        assert!(check_monad_laws(m, &caps).unwrap().is_pass());
    }
    for src in &family {
        for dst in &family {
            for h in enumerate_homs(src, dst, HomMode::Hom, &caps).unwrap() {
                assert!(check_naturality_eta_eps(&h, src, dst, &caps).unwrap().is_pass());
            }
        }
    }
    pass(4, "monad laws on 11 structures, naturality on all homs among them");
}

/// Inclusion order on an arbitrary list of subset masks.
fn inclusion_leq(masks: &[u64]) -> Vec<Vec<bool>> {
    masks
        .iter()
        .map(|&a| masks.iter().map(|&b| a & !b == 0).collect())
        .collect()
}

#[test]
fn criterion_5_validator_and_lemmas() {
    let caps = Caps::default();
    for n in 1..=4usize {
        let p = powerset_poset(n);
        let cert = validate_cabl(&p, &caps).unwrap();
        assert_eq!(cert.atoms.len(), n);
    }

    // top removed from the 7-carrier
    let no_top: Vec<u64> = (1..7).collect();
    let p = validate_poset(&inclusion_leq(&no_top)).unwrap();
    assert_eq!(validate_cabl(&p, &caps).unwrap_err(), CablViolation::NoMaximum);

    // one order pair removed from the 3-carrier
    let mut leq = inclusion_leq(&[1, 2, 3]);
    leq[0][2] = false; // {0} no longer below {0,1}
    let p = validate_poset(&leq).unwrap();
    assert_eq!(validate_cabl(&p, &caps).unwrap_err(), CablViolation::NoMaximum);

    // one pair added to the 7-carrier, transitively repaired
    let masks: Vec<u64> = (1..=7).collect();
    let mut leq = inclusion_leq(&masks);
    leq[2][3] = true; // {0,1} below {2}
    for k in 0..7 {
        for i in 0..7 {
            for j in 0..7 {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let p = validate_poset(&leq).unwrap();
    let v = validate_cabl(&p, &caps).unwrap_err();
    assert!(
        matches!(
            v,
            CablViolation::NotSemiComplemented(_)
                | CablViolation::NotAtomic(_)
                | CablViolation::MissingSup(_)
                | CablViolation::CardinalityMismatch { .. }
        ),
        "named condition, got {v:?}"
    );

    // one element deleted from the 7-carrier
    let without: Vec<u64> = (1..=7).filter(|&m| m != 2).collect();
    let p = validate_poset(&inclusion_leq(&without)).unwrap();
    let v = validate_cabl(&p, &caps).unwrap_err();
    assert!(
        matches!(
            v,
            CablViolation::NotSemiComplemented(_)
                | CablViolation::NotAtomic(_)
                | CablViolation::CardinalityMismatch { .. }
        ),
        "named condition, got {v:?}"
    );

    // lemma suite on all accepted carriers up to 15 and on the demo pair
    let (a, b) = demo::pair();
    let demo_posets: Vec<_> = [&a, &b]
        .iter()
        .map(|m| {
            let p = apply_P(m, &caps).unwrap();
            (p.poset().clone(), p.certificate().clone())
        })
        .collect();
    let mut suites: Vec<_> = (1..=4usize)
        .map(|n| {
            let p = powerset_poset(n);
            let cert = validate_cabl(&p, &caps).unwrap();
            (p, cert)
        })
        .collect();
    suites.extend(demo_posets);
    for (p, cert) in &suites {
        assert!(malg::poset::check_sup_of_lower_bounds(p).is_pass());
        assert!(check_sem_inf_dist(p).is_pass());
        assert!(check_union_atoms_is_atoms_sup(p, cert).is_pass());
        let family: Vec<BitSet> = (0..p.size())
            .map(|i| BitSet::from_indices(p.size(), [i, (i + 1) % p.size()]))
            .collect();
        assert!(check_supsup_equals_supunion(p, &family).is_pass());
    }
    for m in [&a, &b] {
        let p = apply_P(m, &caps).unwrap();
        assert!(malg::ordalg::check_atoms_of_operations(&p, &caps).unwrap().is_pass());
    }
    pass(5, "validator accepts powerset orders, rejects 4 mutations, lemmas hold");
}

#[test]
fn criterion_6_functoriality_and_faithfulness() {
    let caps = Caps::default();
    let (a, b) = demo::pair();
    let pa = apply_P(&a, &caps).unwrap();
    let pb = apply_P(&b, &caps).unwrap();

    // identities
    assert_eq!(
        apply_P_mor(&Morphism::identity(2), &a, &a, &caps).unwrap(),
        Morphism::identity(3)
    );
    assert_eq!(
        apply_A_mor(&Morphism::identity(3), &pa, &pa, &caps).unwrap(),
        Morphism::identity(2)
    );

    // composition and injectivity over enumerated hom-sets
    let homs_ab = enumerate_homs(&a, &b, HomMode::Hom, &caps).unwrap();
    let homs_bb = enumerate_homs(&b, &b, HomMode::Hom, &caps).unwrap();
    let mut images = Vec::new();
    for g in &homs_ab {
        let pg = apply_P_mor(g, &a, &b, &caps).unwrap();
        assert!(!images.contains(&pg), "morphism map must be injective");
        images.push(pg);
        for h in &homs_bb {
            let lhs = apply_P_mor(&g.then(h).unwrap(), &a, &b, &caps).unwrap();
            let rhs = apply_P_mor(g, &a, &b, &caps)
                .unwrap()
                .then(&apply_P_mor(h, &b, &b, &caps).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
    let ohoms = enumerate_ordered_homs(&pa, &pb, &caps).unwrap();
    let ohoms_bb = enumerate_ordered_homs(&pb, &pb, &caps).unwrap();
    let mut images = Vec::new();
    for g in &ohoms {
        let ag = apply_A_mor(g, &pa, &pb, &caps).unwrap();
        assert!(!images.contains(&ag), "morphism map must be injective");
        images.push(ag);
        for h in &ohoms_bb {
            let lhs = apply_A_mor(&g.then(h).unwrap(), &pa, &pb, &caps).unwrap();
            let rhs = apply_A_mor(g, &pa, &pb, &caps)
                .unwrap()
                .then(&apply_A_mor(h, &pb, &pb, &caps).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    // fullness witnesses
    for g in &ohoms {
        let pre = p_preimage(g, &a, &b).unwrap();
        assert!(check_hom(&pre, &a, &b).unwrap().is_pass());
        assert_eq!(&apply_P_mor(&pre, &a, &b, &caps).unwrap(), g);
    }
    let ab = apply_A(&pa).unwrap();
    let bb = apply_A(&pb).unwrap();
    for g in enumerate_homs(&ab, &bb, HomMode::Hom, &caps).unwrap() {
        let pre = a_preimage(&g, &pa, &pb).unwrap();
        assert_eq!(apply_A_mor(&pre, &pa, &pb, &caps).unwrap(), g);
    }
    pass(6, "functor laws, injectivity, and fullness preimages");
}

#[test]
fn criterion_7_variants_conservativity() {
    let caps = Caps::default();
    let sig = Signature::unary_s();
    for seed in 0..200u64 {
        let size = 1 + (seed % 2) as usize;
        let src = random_multialgebra(&sig, size, seed, &caps).unwrap();
        let dst = random_multialgebra(&sig, size, seed.wrapping_add(7000), &caps).unwrap();
        let psrc = PartialMultiAlgebra::from_total(&src);
        let pdst = PartialMultiAlgebra::from_total(&dst);
        for mi in 0..size.pow(size as u32) {
            let map: Vec<usize> = (0..size).map(|i| (mi / size.pow(i as u32)) % size).collect();
            let h = Morphism::new(size, size, map).unwrap();
            assert_eq!(
                check_hom(&h, &src, &dst).unwrap().is_pass(),
                check_partial_hom(&h, &psrc, &pdst).unwrap().is_pass()
            );
            let sv = SetValuedMorphism::from_morphism(&h);
            assert_eq!(sv.collapse().as_ref(), Some(&h));
            assert_eq!(
                check_hom(&h, &src, &dst).unwrap().is_pass(),
                check_mm_hom(&sv, &src, &dst).unwrap().is_pass()
            );
        }
        // restriction of the padded powerset to non-empty subsets
        let total = apply_P(&src, &caps).unwrap();
        let padded = apply_P_partial(&psrc, &caps).unwrap();
        for mask in 1..=total.carrier_size() {
            assert_eq!(padded.value(0, &[mask]), total.table(0)[mask - 1] + 1);
        }
    }
    for size in 1..=3usize {
        let m = MultiAlgebra::new(Signature::empty(), Universe::of_size(size).unwrap(), vec![])
            .unwrap();
        assert!(empty_signature_mode(&m, &caps).unwrap().is_pass());
    }
    pass(7, "partial, set-valued, and empty-signature variants agree with the total theory");
}

#[test]
fn criterion_8_term_evaluation_bridge() {
    let caps = Caps::default();
    let sig = Signature::new(vec![("s", 1), ("f", 2)]).unwrap();
    let vars = vec!["x".to_string(), "y".to_string()];
    for seed in 0..500u64 {
        let size = 1 + (seed % 3) as usize;
        let m = random_multialgebra(&sig, size, seed, &caps).unwrap();
        let p = apply_P(&m, &caps).unwrap();
        let t = random_term(&sig, &vars, 3, seed.wrapping_mul(37).wrapping_add(11));
        let mut val = BTreeMap::new();
        let mut lifted = BTreeMap::new();
        for (i, v) in vars.iter().enumerate() {
            let e = (seed as usize).wrapping_add(i * 13) % size;
            val.insert(v.clone(), e);
            lifted.insert(v.clone(), (1usize << e) - 1);
        }
        let nd = eval_term_nd(&m, &t, &val).unwrap();
        let ord = eval_term_ord(&p, &t, &lifted).unwrap();
        assert_eq!(nd.as_mask().unwrap() as usize - 1, ord, "seed {seed}");
    }
    pass(8, "500 seeded evaluation triples agree across the bridge");
}
