//! Seeded random generators for structures, morphisms, and terms. All
//! generators take an explicit seed so runs reproduce exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSet;
use crate::core::{tuple_count, Signature, Term, Universe};
use crate::error::{Caps, Result};
use crate::functors::apply_P;
use crate::multialg::{Morphism, MultiAlgebra};
use crate::ordalg::OrderedAlgebra;
use crate::variants::PartialMultiAlgebra;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_nonempty_subset(rng: &mut ChaCha8Rng, n: usize) -> BitSet {
    loop {
        let mut s = BitSet::empty(n);
        for i in 0..n {
            if rng.gen_bool(0.5) {
                s.insert(i);
            }
        }
        if !s.is_empty() {
            return s;
        }
    }
}

pub fn random_multialgebra(
    sig: &Signature,
    size: usize,
    seed: u64,
    caps: &Caps,
) -> Result<MultiAlgebra> {
    let mut rng = rng_for(seed);
    let universe = Universe::of_size(size)?;
    let mut tables = Vec::with_capacity(sig.len());
    for sym in 0..sig.len() {
        let total = tuple_count(size, sig.arity(sym), caps)? as usize;
        tables.push(
            (0..total)
                .map(|_| random_nonempty_subset(&mut rng, size))
                .collect(),
        );
    }
    MultiAlgebra::new(sig.clone(), universe, tables)
}

pub fn random_partial_multialgebra(
    sig: &Signature,
    size: usize,
    seed: u64,
    caps: &Caps,
) -> Result<PartialMultiAlgebra> {
    let mut rng = rng_for(seed);
    let universe = Universe::of_size(size)?;
    let mut tables = Vec::with_capacity(sig.len());
    for sym in 0..sig.len() {
        let total = tuple_count(size, sig.arity(sym), caps)? as usize;
        tables.push(
            (0..total)
                .map(|_| {
                    let mut s = BitSet::empty(size);
                    for i in 0..size {
                        if rng.gen_bool(0.5) {
                            s.insert(i);
                        }
                    }
                    s
                })
                .collect(),
        );
    }
    PartialMultiAlgebra::new(sig.clone(), universe, tables)
}

/// An ordered algebra that satisfies the atom-generation condition by
/// construction, as the powerset structure of a random multialgebra.
pub fn random_ordered_algebra(
    sig: &Signature,
    base_size: usize,
    seed: u64,
    caps: &Caps,
) -> Result<OrderedAlgebra> {
    let m = random_multialgebra(sig, base_size, seed, caps)?;
    apply_P(&m, caps)
}

pub fn random_morphism(src_size: usize, dst_size: usize, seed: u64) -> Morphism {
    let mut rng = rng_for(seed);
    let map = (0..src_size).map(|_| rng.gen_range(0..dst_size)).collect();
    Morphism::new(src_size, dst_size, map).expect("in-range map")
}

pub fn random_term(sig: &Signature, vars: &[String], max_depth: usize, seed: u64) -> Term {
    let mut rng = rng_for(seed);
    build_term(sig, vars, max_depth, &mut rng)
}

fn build_term(sig: &Signature, vars: &[String], depth: usize, rng: &mut ChaCha8Rng) -> Term {
    if depth == 0 || sig.is_empty() || rng.gen_bool(0.3) {
        let v = &vars[rng.gen_range(0..vars.len())];
        return Term::Var(v.clone());
    }
    let sym = rng.gen_range(0..sig.len());
    let args = (0..sig.arity(sym))
        .map(|_| build_term(sig, vars, depth - 1, rng))
        .collect();
    Term::App(sig.name(sym).to_string(), args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let caps = Caps::default();
        let sig = Signature::new(vec![("s", 1), ("f", 2)]).unwrap();
        let a = random_multialgebra(&sig, 3, 42, &caps).unwrap();
        let b = random_multialgebra(&sig, 3, 42, &caps).unwrap();
        let c = random_multialgebra(&sig, 3, 43, &caps).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_ordered_algebra_validates() {
        let caps = Caps::default();
        let sig = Signature::unary_s();
        let o = random_ordered_algebra(&sig, 3, 7, &caps).unwrap();
        assert_eq!(o.carrier_size(), 7);
    }

    #[test]
    fn random_term_respects_depth() {
        let sig = Signature::unary_s();
        let vars = vec!["x".to_string(), "y".to_string()];
        for seed in 0..20 {
            let t = random_term(&sig, &vars, 4, seed);
            assert!(t.depth() <= 4);
        }
    }
}
