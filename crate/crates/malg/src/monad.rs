//! The powerset endofunctor on multialgebras and its monad structure.
//!
//! The carrier of one application lists the non-empty subsets of the base
//! universe in mask order, so carrier sizes follow `2^n - 1` at each level
//! and element `i` of a level denotes mask `i + 1` over the level below.

use crate::bits::BitSet;
use crate::core::{tuple_count, tuple_from_index, Universe};
use crate::error::{Caps, Error, Result};
use crate::multialg::{check_hom, Morphism, MultiAlgebra};
use crate::verdict::Verdict;

fn level_carrier_checked(size: usize, caps: &Caps) -> Result<usize> {
    if size > caps.powerset_universe {
        return Err(Error::CapExceeded {
            what: "universe size for the powerset endofunctor",
            actual: size as u128,
            cap: caps.powerset_universe as u128,
        });
    }
    Ok((1usize << size) - 1)
}

/// One application of the powerset endofunctor: the universe becomes the
/// non-empty subsets and an operation returns the set of singletons of the
/// accumulated result.
pub fn apply_ptilde(m: &MultiAlgebra, caps: &Caps) -> Result<MultiAlgebra> {
    let n = m.size();
    let carrier = level_carrier_checked(n, caps)?;
    let universe = Universe::new(
        (1..=carrier as u64)
            .map(|mask| {
                let labels: Vec<&str> = BitSet::from_mask(n, mask)
                    .iter()
                    .map(|i| m.universe().label(i))
                    .collect::<Vec<_>>();
                format!("{{{}}}", labels.join(","))
            })
            .collect::<Vec<_>>(),
    )?;
    let sig = m.signature().clone();
    let mut tables = Vec::with_capacity(sig.len());
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        let total = tuple_count(carrier, arity, caps)?;
        let mut table = Vec::with_capacity(total as usize);
        for ti in 0..total {
            let masks = tuple_from_index(carrier, arity, ti);
            let sets: Vec<Vec<usize>> = masks
                .iter()
                .map(|&i| BitSet::from_mask(n, i as u64 + 1).iter().collect())
                .collect();
            let mut accumulated = BitSet::empty(n);
            let mut tuple = vec![0usize; arity];
            accumulate(m, sym, &sets, 0, &mut tuple, &mut accumulated);
            // the set of singletons of the accumulated result: singleton
            // {a} is element (1 << a) - 1 of the carrier
            table.push(BitSet::from_indices(
                carrier,
                accumulated.iter().map(|a| (1usize << a) - 1),
            ));
        }
        tables.push(table);
    }
    MultiAlgebra::new(sig, universe, tables)
}

fn accumulate(
    m: &MultiAlgebra,
    sym: usize,
    choices: &[Vec<usize>],
    pos: usize,
    tuple: &mut Vec<usize>,
    out: &mut BitSet,
) {
    if pos == choices.len() {
        out.union_in_place(m.value(sym, tuple));
        return;
    }
    for &c in &choices[pos] {
        tuple[pos] = c;
        accumulate(m, sym, choices, pos + 1, tuple, out);
    }
}

/// The functor on morphisms: the image map on non-empty subsets.
pub fn apply_ptilde_mor(
    h: &Morphism,
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
    caps: &Caps,
) -> Result<Morphism> {
    match check_hom(h, src, dst)? {
        Verdict::Pass => {}
        Verdict::Fail(w) => {
            return Err(Error::ContractViolation(format!(
                "input is not a homomorphism, fails at {w}"
            )))
        }
    }
    let src_carrier = level_carrier_checked(src.size(), caps)?;
    let dst_carrier = level_carrier_checked(dst.size(), caps)?;
    let map: Vec<usize> = (1..=src_carrier as u64)
        .map(|mask| {
            let s = BitSet::from_mask(src.size(), mask);
            h.image(&s).as_mask().unwrap() as usize - 1
        })
        .collect();
    Morphism::new(src_carrier, dst_carrier, map)
}

/// The unit `a ↦ {a}`, as a morphism from the base to one level up.
pub fn eta(m: &MultiAlgebra, caps: &Caps) -> Result<Morphism> {
    let carrier = level_carrier_checked(m.size(), caps)?;
    Morphism::new(
        m.size(),
        carrier,
        (0..m.size()).map(|a| (1usize << a) - 1).collect(),
    )
}

/// The union map from two levels up to one level up: a set of subsets goes
/// to its union.
pub fn epsilon(m: &MultiAlgebra, caps: &Caps) -> Result<Morphism> {
    let carrier1 = level_carrier_checked(m.size(), caps)?;
    let carrier2 = level_carrier_checked(carrier1, caps)?;
    let map: Vec<usize> = (1..=carrier2 as u64)
        .map(|family_mask| {
            // bit i of the family selects level-1 element i, whose own mask
            // over the base is i + 1
            let mut union: u64 = 0;
            for i in BitSet::from_mask(carrier1, family_mask).iter() {
                union |= i as u64 + 1;
            }
            union as usize - 1
        })
        .collect();
    Morphism::new(carrier2, carrier1, map)
}

/// Naturality of the unit and union transformations for one homomorphism:
/// the two squares commute pointwise.
pub fn check_naturality_eta_eps(
    h: &Morphism,
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
    caps: &Caps,
) -> Result<Verdict<String>> {
    match check_hom(h, src, dst)? {
        Verdict::Pass => {}
        Verdict::Fail(w) => {
            return Err(Error::ContractViolation(format!(
                "input is not a homomorphism, fails at {w}"
            )))
        }
    }
    let ph = apply_ptilde_mor(h, src, dst, caps)?;
    if h.then(&eta(dst, caps)?)? != eta(src, caps)?.then(&ph)? {
        return Ok(Verdict::Fail("unit square does not commute".into()));
    }
    let psrc = apply_ptilde(src, caps)?;
    let pdst = apply_ptilde(dst, caps)?;
    let pph = apply_ptilde_mor(&ph, &psrc, &pdst, caps)?;
    if epsilon(src, caps)?.then(&ph)? != pph.then(&epsilon(dst, caps)?)? {
        return Ok(Verdict::Fail("union square does not commute".into()));
    }
    Ok(Verdict::Pass)
}

/// Exhaustive pointwise verification of the monad laws on one base
/// structure: associativity of the union map on the third level, and both
/// unit laws on the first level. Also confirms the unit and union maps are
/// homomorphisms.
pub fn check_monad_laws(m: &MultiAlgebra, caps: &Caps) -> Result<Verdict<String>> {
    let p1 = apply_ptilde(m, caps)?;
    let p2 = apply_ptilde(&p1, caps)?;

    let eta_m = eta(m, caps)?;
    let eps_m = epsilon(m, caps)?;
    if let Verdict::Fail(w) = check_hom(&eta_m, m, &p1)? {
        return Ok(Verdict::Fail(format!("unit is not a homomorphism at {w}")));
    }
    if let Verdict::Fail(w) = check_hom(&eps_m, &p2, &p1)? {
        return Ok(Verdict::Fail(format!("union is not a homomorphism at {w}")));
    }

    // associativity on the third level
    let p_eps = apply_ptilde_mor(&eps_m, &p2, &p1, caps)?;
    let eps_p1 = epsilon(&p1, caps)?;
    let left = p_eps.then(&eps_m)?;
    let right = eps_p1.then(&eps_m)?;
    for x in 0..left.src_size {
        if left.apply(x) != right.apply(x) {
            return Ok(Verdict::Fail(format!(
                "associativity fails at level-3 element {x}"
            )));
        }
    }

    // unit laws on the first level
    let eta_p1 = eta(&p1, caps)?;
    let p_eta = apply_ptilde_mor(&eta_m, m, &p1, caps)?;
    let via_eta_level = eta_p1.then(&eps_m)?;
    let via_eta_mapped = p_eta.then(&eps_m)?;
    for x in 0..p1.size() {
        if via_eta_level.apply(x) != x {
            return Ok(Verdict::Fail(format!("left unit law fails at element {x}")));
        }
        if via_eta_mapped.apply(x) != x {
            return Ok(Verdict::Fail(format!("right unit law fails at element {x}")));
        }
    }
    Ok(Verdict::Pass)
}

/// Sampled associativity check for bases whose third level is too large to
/// materialize: random level-3 families are evaluated through both
/// composite paths directly on masks.
pub fn check_associativity_sampled(
    m: &MultiAlgebra,
    samples: usize,
    seed: u64,
) -> Result<Verdict<String>> {
    use rand::{Rng, SeedableRng};
    let carrier1 = (1u128 << m.size()) - 1;
    if carrier1 > 64 {
        return Err(Error::CapExceeded {
            what: "first-level carrier for sampled associativity",
            actual: carrier1,
            cap: 64,
        });
    }
    let carrier1 = carrier1 as u64;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        // a non-empty family of non-empty level-2 elements, each a
        // non-empty set of level-1 masks
        let family_size = rng.gen_range(1..=4usize);
        let family: Vec<Vec<u64>> = (0..family_size)
            .map(|_| {
                let k = rng.gen_range(1..=4usize);
                (0..k).map(|_| rng.gen_range(1..=carrier1)).collect()
            })
            .collect();
        // left path: flatten each level-2 element first, then union
        let left = family
            .iter()
            .map(|x| x.iter().fold(0u64, |acc, &m1| acc | m1))
            .fold(0u64, |acc, m1| acc | m1);
        // right path: union the families first, then flatten
        let merged: Vec<u64> = family.iter().flatten().copied().collect();
        let right = merged.iter().fold(0u64, |acc, &m1| acc | m1);
        if left != right {
            return Ok(Verdict::Fail(format!(
                "sampled associativity fails on family {family:?}"
            )));
        }
    }
    Ok(Verdict::Pass)
}
