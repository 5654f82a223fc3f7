//! Validation of complete, atomic, bottomless Boolean orders and the
//! canonical powerset form.
//!
//! The validator works by definition-level exhaustion: a maximum must
//! exist, every non-empty subset must have a supremum, every non-top
//! element must be semi-complemented, and every element must be the sup of
//! the atoms below it. Nonexistent suprema and infima are `None`; adjoining
//! a fresh bottom is never materialized, it is exactly the reading under
//! which "inf does not exist" means "inf would be the bottom".

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{nonempty_subsets, BitSet};
use crate::error::Caps;
use crate::poset::FinitePoset;
use crate::verdict::Verdict;

/// Witness data for a validated bottomless Boolean order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CablCertificate {
    pub top: usize,
    /// Minimal elements, in index order.
    pub atoms: Vec<usize>,
    /// For each carrier element `a`, the set of atoms below `a` (as a
    /// subset of the carrier).
    pub atom_sets: Vec<BitSet>,
    /// Complement of each element; `None` exactly at the top.
    pub complement: Vec<Option<usize>>,
    /// True when the sup-closure check ran in the randomized regime instead
    /// of exhausting all subsets.
    pub sampled: bool,
}

impl CablCertificate {
    /// Position of an atom within `atoms`, used as its index in the atoms
    /// multialgebra.
    pub fn atom_position(&self, atom: usize) -> Option<usize> {
        self.atoms.iter().position(|&a| a == atom)
    }

    /// The atom set of `a` re-indexed over `atoms` positions.
    pub fn atom_mask(&self, a: usize) -> BitSet {
        BitSet::from_indices(
            self.atoms.len(),
            self.atom_sets[a]
                .iter()
                .map(|x| self.atom_position(x).unwrap()),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CablViolation {
    /// Condition 1: no unique maximum element.
    NoMaximum,
    /// Condition 2: the given non-empty subset has no supremum.
    MissingSup(BitSet),
    /// Condition 3: the given element has no semi-complement.
    NotSemiComplemented(usize),
    /// Condition 4: the element is not the sup of its atoms.
    NotAtomic(usize),
    /// Carrier size is not `2^|atoms| - 1`; only reachable when the sup
    /// check ran sampled.
    CardinalityMismatch { carrier: usize, atoms: usize },
}

impl fmt::Display for CablViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CablViolation::NoMaximum => write!(f, "condition 1: no maximum element"),
            CablViolation::MissingSup(s) => {
                write!(f, "condition 2: subset {s:?} has no supremum")
            }
            CablViolation::NotSemiComplemented(a) => {
                write!(f, "condition 3: element {a} is not semi-complemented")
            }
            CablViolation::NotAtomic(a) => {
                write!(f, "condition 4: element {a} is not the sup of its atoms")
            }
            CablViolation::CardinalityMismatch { carrier, atoms } => write!(
                f,
                "carrier size {carrier} differs from 2^{atoms} - 1"
            ),
        }
    }
}

/// Checks the four conditions and emits a certificate, or the first failed
/// condition with a witness.
pub fn validate_cabl(p: &FinitePoset, caps: &Caps) -> Result<CablCertificate, CablViolation> {
    let n = p.size();
    // condition 1
    let top = p.maximum().ok_or(CablViolation::NoMaximum)?;

    // condition 2: closure under non-empty sups
    let mut sampled = false;
    if n <= caps.exhaustive_carrier {
        for s in nonempty_subsets(n) {
            if p.sup(&s).is_none() {
                return Err(CablViolation::MissingSup(s));
            }
        }
    } else {
        sampled = true;
        // pair sups are always checked in full
        for a in 0..n {
            for b in a + 1..n {
                let s = BitSet::from_indices(n, [a, b]);
                if p.sup(&s).is_none() {
                    return Err(CablViolation::MissingSup(s));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d616c67);
        for _ in 0..caps.samples {
            let s = BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
            if !s.is_empty() && p.sup(&s).is_none() {
                return Err(CablViolation::MissingSup(s));
            }
        }
    }

    // condition 3: semi-complementation for every a != top
    let mut complement = vec![None; n];
    for a in 0..n {
        if a == top {
            continue;
        }
        let joins_to_top =
            BitSet::from_indices(n, (0..n).filter(|&c| p.sup_pair(a, c) == Some(top)));
        let meet_missing =
            BitSet::from_indices(n, (0..n).filter(|&c| p.inf_pair(a, c).is_none()));
        // sup of an empty candidate set does not exist in a bottomless poset
        let b1 = p.inf(&joins_to_top);
        let b2 = p.sup(&meet_missing);
        match (b1, b2) {
            (Some(x), Some(y)) if x == y => complement[a] = Some(x),
            _ => return Err(CablViolation::NotSemiComplemented(a)),
        }
    }

    // condition 4: atomicity
    let atoms = p.minimal_elements();
    let atom_index = BitSet::from_indices(n, atoms.iter().copied());
    let mut atom_sets = Vec::with_capacity(n);
    for a in 0..n {
        let below = p.down_set(a).intersect(&atom_index);
        if p.sup(&below) != Some(a) {
            return Err(CablViolation::NotAtomic(a));
        }
        atom_sets.push(below);
    }

    if atoms.len() > 62 || n != (1usize << atoms.len()) - 1 {
        return Err(CablViolation::CardinalityMismatch {
            carrier: n,
            atoms: atoms.len(),
        });
    }

    Ok(CablCertificate {
        top,
        atoms,
        atom_sets,
        complement,
        sampled,
    })
}

/// The order isomorphism `a ↦ A_a` onto the non-empty subsets of the atom
/// set, re-verified bijective and order-preserving both ways.
pub fn canonicalize(
    p: &FinitePoset,
    cert: &CablCertificate,
) -> Result<Vec<BitSet>, CablViolation> {
    let n = p.size();
    let masks: Vec<BitSet> = (0..n).map(|a| cert.atom_mask(a)).collect();
    let mut seen = masks.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != n || masks.iter().any(BitSet::is_empty) {
        return Err(CablViolation::CardinalityMismatch {
            carrier: n,
            atoms: cert.atoms.len(),
        });
    }
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) != masks[a].is_subset_of(&masks[b]) {
                return Err(CablViolation::NotAtomic(a));
            }
        }
    }
    Ok(masks)
}

/// Restricted infinite distributivity of a bottomless Boolean order: for a
/// subset `S` and element `a`, with `S^a` the members whose meet with `a`
/// exists — if `S^a` is empty then `inf {a, sup S}` does not exist, else
/// `sup {inf{a,s} : s ∈ S^a} = inf {a, sup S}`. Exhaustive over all `a` and
/// all non-empty `S` (carrier capped by the caller).
pub fn check_sem_inf_dist(p: &FinitePoset) -> Verdict<(usize, BitSet)> {
    let n = p.size();
    for a in 0..n {
        for s in nonempty_subsets(n) {
            let sup_s = match p.sup(&s) {
                Some(x) => x,
                None => continue,
            };
            let meets: Vec<usize> = s.iter().filter_map(|x| p.inf_pair(a, x)).collect();
            let lhs = if meets.is_empty() {
                None
            } else {
                p.sup(&BitSet::from_indices(n, meets))
            };
            if lhs != p.inf_pair(a, sup_s) {
                return Verdict::Fail((a, s));
            }
        }
    }
    Verdict::Pass
}

/// `sup {sup X_i} = sup (∪ X_i)` for a family of subsets with existing sups.
pub fn check_supsup_equals_supunion(p: &FinitePoset, family: &[BitSet]) -> Verdict<Vec<BitSet>> {
    if family.is_empty() || family.iter().any(BitSet::is_empty) {
        return Verdict::Pass;
    }
    let sups: Option<Vec<usize>> = family.iter().map(|x| p.sup(x)).collect();
    let sups = match sups {
        Some(s) => s,
        None => return Verdict::Pass,
    };
    let mut union = BitSet::empty(p.size());
    for x in family {
        union.union_in_place(x);
    }
    let lhs = p.sup(&BitSet::from_indices(p.size(), sups));
    if lhs == p.sup(&union) {
        Verdict::Pass
    } else {
        Verdict::Fail(family.to_vec())
    }
}

/// `∪ {A_c : c ∈ C} = A_{sup C}` for every non-empty `C`, exhaustively.
pub fn check_union_atoms_is_atoms_sup(
    p: &FinitePoset,
    cert: &CablCertificate,
) -> Verdict<BitSet> {
    for c in nonempty_subsets(p.size()) {
        let sup = match p.sup(&c) {
            Some(x) => x,
            None => return Verdict::Fail(c),
        };
        let mut union = BitSet::empty(p.size());
        for x in c.iter() {
            union.union_in_place(&cert.atom_sets[x]);
        }
        if union != cert.atom_sets[sup] {
            return Verdict::Fail(c);
        }
    }
    Verdict::Pass
}

/// Builds the poset of all non-empty subsets of an `n`-element set ordered
/// by inclusion, with carrier index `mask - 1`.
pub fn powerset_poset(n: usize) -> FinitePoset {
    assert!(n >= 1 && n <= 20);
    let size = (1usize << n) - 1;
    let up: Vec<BitSet> = (1..=size as u64)
        .map(|m| {
            BitSet::from_indices(
                size,
                (1..=size as u64).filter(|&k| m & !k == 0).map(|k| k as usize - 1),
            )
        })
        .collect();
    FinitePoset::from_up_sets_unchecked(up)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::validate_poset;

    #[test]
    fn accepts_powerset_shapes() {
        let caps = Caps::default();
        for n in 1..=4 {
            let p = powerset_poset(n);
            let cert = validate_cabl(&p, &caps).unwrap();
            assert_eq!(cert.atoms.len(), n);
            assert_eq!(cert.top, p.size() - 1);
            assert!(!cert.sampled);
            let masks = canonicalize(&p, &cert).unwrap();
            assert_eq!(masks.len(), p.size());
        }
    }

    #[test]
    fn powerset_of_two_certificate() {
        let p = powerset_poset(2);
        let cert = validate_cabl(&p, &Caps::default()).unwrap();
        assert_eq!(cert.atoms, vec![0, 1]);
        // the two atoms are mutual complements
        assert_eq!(cert.complement[0], Some(1));
        assert_eq!(cert.complement[1], Some(0));
        assert_eq!(cert.complement[2], None);
    }

    #[test]
    fn rejects_antichain_missing_sup() {
        let leq = vec![vec![true, false], vec![false, true]];
        let p = validate_poset(&leq).unwrap();
        assert!(matches!(
            validate_cabl(&p, &Caps::default()),
            Err(CablViolation::NoMaximum)
        ));
    }

    #[test]
    fn rejects_four_element_boolean_algebra() {
        // the full powerset of {x,y} including the bottom: the bottom has
        // no semi-complement because no meet is ever missing
        let leq: Vec<Vec<bool>> = (0u64..4)
            .map(|a| (0u64..4).map(|b| a & !b == 0).collect())
            .collect();
        let p = validate_poset(&leq).unwrap();
        assert!(matches!(
            validate_cabl(&p, &Caps::default()),
            Err(CablViolation::NotSemiComplemented(0))
        ));
    }

    #[test]
    fn degenerate_single_element_is_accepted() {
        let p = powerset_poset(1);
        let cert = validate_cabl(&p, &Caps::default()).unwrap();
        assert_eq!(cert.atoms, vec![0]);
        assert_eq!(cert.top, 0);
    }

    #[test]
    fn lemma_checks_on_small_powersets() {
        for n in 1..=3 {
            let p = powerset_poset(n);
            let cert = validate_cabl(&p, &Caps::default()).unwrap();
            assert!(check_sem_inf_dist(&p).is_pass());
            assert!(check_union_atoms_is_atoms_sup(&p, &cert).is_pass());
        }
    }
}
