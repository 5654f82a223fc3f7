//! Relaxations of the main correspondence: partial multialgebras (empty
//! operation values allowed), set-valued morphisms, and the empty-signature
//! specialization.

use std::fmt;

use crate::bits::{all_subsets, BitSet};
use crate::core::{tuple_count, tuple_from_index, tuple_index, Signature, Universe};
use crate::error::{Caps, Error, Result};
use crate::functors::{apply_P, enumerate_ordered_homs};
use crate::multialg::{Morphism, MultiAlgebra};
use crate::poset::FinitePoset;
use crate::verdict::{OpWitness, Verdict};

/// Like [`MultiAlgebra`] but operation values may be empty; only totality
/// of the tables is enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMultiAlgebra {
    sig: Signature,
    universe: Universe,
    tables: Vec<Vec<BitSet>>,
}

impl PartialMultiAlgebra {
    pub fn new(sig: Signature, universe: Universe, tables: Vec<Vec<BitSet>>) -> Result<Self> {
        if tables.len() != sig.len() {
            return Err(Error::WrongTableCount {
                expected: sig.len(),
                got: tables.len(),
            });
        }
        let caps = Caps {
            tuple_space: u64::MAX / 2,
            ..Caps::default()
        };
        for (sym, table) in tables.iter().enumerate() {
            let expected = tuple_count(universe.size(), sig.arity(sym), &caps)? as usize;
            if table.len() != expected {
                return Err(Error::TableNotTotal {
                    symbol: sig.name(sym).to_string(),
                    expected,
                    got: table.len(),
                });
            }
        }
        Ok(PartialMultiAlgebra {
            sig,
            universe,
            tables,
        })
    }

    pub fn from_total(m: &MultiAlgebra) -> Self {
        PartialMultiAlgebra {
            sig: m.signature().clone(),
            universe: m.universe().clone(),
            tables: (0..m.signature().len())
                .map(|sym| m.table(sym).to_vec())
                .collect(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.size()
    }

    pub fn value(&self, sym: usize, tuple: &[usize]) -> &BitSet {
        &self.tables[sym][tuple_index(self.universe.size(), tuple)]
    }
}

/// The inclusion condition on all tuples; an empty source value passes
/// vacuously at that tuple.
pub fn check_partial_hom(
    h: &Morphism,
    src: &PartialMultiAlgebra,
    dst: &PartialMultiAlgebra,
) -> Result<Verdict<OpWitness>> {
    if src.sig != dst.sig {
        return Err(Error::SignatureMismatch);
    }
    if h.src_size != src.size() || h.dst_size != dst.size() {
        return Err(Error::MorphismTypeMismatch);
    }
    for sym in 0..src.sig.len() {
        let arity = src.sig.arity(sym);
        for (ti, value) in src.tables[sym].iter().enumerate() {
            let tuple = tuple_from_index(src.size(), arity, ti as u64);
            let mapped: Vec<usize> = tuple.iter().map(|&a| h.apply(a)).collect();
            if !h.image(value).is_subset_of(dst.value(sym, &mapped)) {
                return Ok(Verdict::Fail(OpWitness {
                    symbol: src.sig.name(sym).to_string(),
                    tuple,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// A map sending each source element to a non-empty subset of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedMorphism {
    pub src_size: usize,
    pub dst_size: usize,
    pub images: Vec<BitSet>,
}

impl SetValuedMorphism {
    pub fn new(src_size: usize, dst_size: usize, images: Vec<BitSet>) -> Result<Self> {
        if images.len() != src_size {
            return Err(Error::MorphismTypeMismatch);
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::EmptyValue {
                    symbol: "h".into(),
                    tuple: vec![a],
                });
            }
            if img.width() != dst_size {
                return Err(Error::MorphismTypeMismatch);
            }
        }
        Ok(SetValuedMorphism {
            src_size,
            dst_size,
            images,
        })
    }

    pub fn from_morphism(h: &Morphism) -> Self {
        SetValuedMorphism {
            src_size: h.src_size,
            dst_size: h.dst_size,
            images: h
                .map
                .iter()
                .map(|&b| BitSet::singleton(h.dst_size, b))
                .collect(),
        }
    }

    /// The underlying plain map, when every image is a singleton.
    pub fn collapse(&self) -> Option<Morphism> {
        let map: Option<Vec<usize>> = self
            .images
            .iter()
            .map(|img| if img.len() == 1 { img.first() } else { None })
            .collect();
        Morphism::new(self.src_size, self.dst_size, map?).ok()
    }
}

/// The set-valued homomorphism condition:
/// `∪ {h(a) : a ∈ σ(a⃗)} ⊆ ∪ {σ(b⃗) : b_i ∈ h(a_i)}` on all tuples.
pub fn check_mm_hom(
    h: &SetValuedMorphism,
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
) -> Result<Verdict<OpWitness>> {
    if src.signature() != dst.signature() {
        return Err(Error::SignatureMismatch);
    }
    if h.src_size != src.size() || h.dst_size != dst.size() {
        return Err(Error::MorphismTypeMismatch);
    }
    let sig = src.signature();
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        for (ti, value) in src.table(sym).iter().enumerate() {
            let tuple = tuple_from_index(src.size(), arity, ti as u64);
            let mut lhs = BitSet::empty(dst.size());
            for a in value.iter() {
                lhs.union_in_place(&h.images[a]);
            }
            let mut rhs = BitSet::empty(dst.size());
            let choices: Vec<Vec<usize>> = tuple
                .iter()
                .map(|&a| h.images[a].iter().collect())
                .collect();
            let mut image_tuple = vec![0usize; arity];
            union_over_choices(dst, sym, &choices, 0, &mut image_tuple, &mut rhs);
            if !lhs.is_subset_of(&rhs) {
                return Ok(Verdict::Fail(OpWitness {
                    symbol: sig.name(sym).to_string(),
                    tuple,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

fn union_over_choices(
    dst: &MultiAlgebra,
    sym: usize,
    choices: &[Vec<usize>],
    pos: usize,
    tuple: &mut Vec<usize>,
    out: &mut BitSet,
) {
    if pos == choices.len() {
        out.union_in_place(dst.value(sym, tuple));
        return;
    }
    for &c in &choices[pos] {
        tuple[pos] = c;
        union_over_choices(dst, sym, choices, pos + 1, tuple, out);
    }
}

/// The powerset structure of a partial multialgebra: the carrier is the
/// full powerset including the empty set, indexed by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPowerAlgebra {
    base_size: usize,
    sig: Signature,
    // tables[sym][tuple_index over carrier masks] = carrier mask
    tables: Vec<Vec<usize>>,
}

impl PartialPowerAlgebra {
    pub fn carrier_size(&self) -> usize {
        1 << self.base_size
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// Operation value at a tuple of carrier masks.
    pub fn value(&self, sym: usize, tuple: &[usize]) -> usize {
        self.tables[sym][tuple_index(self.carrier_size(), tuple)]
    }

    /// The inclusion order on the full powerset, with the empty set as
    /// bottom.
    pub fn poset(&self) -> FinitePoset {
        let carrier = self.carrier_size();
        let up: Vec<BitSet> = (0..carrier as u64)
            .map(|m| {
                BitSet::from_indices(
                    carrier,
                    (0..carrier as u64).filter(|&k| m & !k == 0).map(|k| k as usize),
                )
            })
            .collect();
        FinitePoset::from_up_sets_unchecked(up)
    }
}

/// Accumulates operations over element choices exactly as the total
/// construction does; an empty argument makes the result empty.
pub fn apply_P_partial(m: &PartialMultiAlgebra, caps: &Caps) -> Result<PartialPowerAlgebra> {
    if m.size() > caps.powerset_universe {
        return Err(Error::CapExceeded {
            what: "universe size for powerset construction",
            actual: m.size() as u128,
            cap: caps.powerset_universe as u128,
        });
    }
    let n = m.size();
    let carrier = 1usize << n;
    let mut tables = Vec::with_capacity(m.sig.len());
    for sym in 0..m.sig.len() {
        let arity = m.sig.arity(sym);
        let total = tuple_count(carrier, arity, caps)?;
        let mut table = Vec::with_capacity(total as usize);
        for ti in 0..total {
            let masks = tuple_from_index(carrier, arity, ti);
            let mut value = BitSet::empty(n);
            let choices: Vec<Vec<usize>> = masks
                .iter()
                .map(|&i| BitSet::from_mask(n, i as u64).iter().collect())
                .collect();
            let mut tuple = vec![0usize; arity];
            union_partial(m, sym, &choices, 0, &mut tuple, &mut value);
            table.push(value.as_mask().unwrap() as usize);
        }
        tables.push(table);
    }
    Ok(PartialPowerAlgebra {
        base_size: n,
        sig: m.sig.clone(),
        tables,
    })
}

fn union_partial(
    m: &PartialMultiAlgebra,
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
        union_partial(m, sym, choices, pos + 1, tuple, out);
    }
}

/// Certificate for a complete atomic Boolean order *with* a bottom, the
/// relaxed target of the partial construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CabaCertificate {
    pub top: usize,
    pub bottom: usize,
    pub atoms: Vec<usize>,
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CabaViolation {
    NoMaximum,
    NoMinimum,
    MissingSup(BitSet),
    MissingInf(BitSet),
    NoComplement(usize),
    NotAtomic(usize),
    CardinalityMismatch { carrier: usize, atoms: usize },
}

impl fmt::Display for CabaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CabaViolation::NoMaximum => write!(f, "no maximum element"),
            CabaViolation::NoMinimum => write!(f, "no minimum element"),
            CabaViolation::MissingSup(s) => write!(f, "subset {s:?} has no supremum"),
            CabaViolation::MissingInf(s) => write!(f, "subset {s:?} has no infimum"),
            CabaViolation::NoComplement(a) => write!(f, "element {a} has no complement"),
            CabaViolation::NotAtomic(a) => {
                write!(f, "element {a} is not the sup of its atoms")
            }
            CabaViolation::CardinalityMismatch { carrier, atoms } => {
                write!(f, "carrier size {carrier} differs from 2^{atoms}")
            }
        }
    }
}

/// The Boolean-order conditions restated with a bottom: suprema of
/// arbitrary (possibly empty) subsets exist, every element has a
/// complement, and every element is the sup of the atoms below it (atoms
/// are minimal elements of the carrier minus the bottom).
pub fn validate_caba(p: &FinitePoset, caps: &Caps) -> Result<CabaCertificate> {
    let n = p.size();
    let top = p.maximum().ok_or_else(|| {
        Error::ContractViolation(CabaViolation::NoMaximum.to_string())
    })?;
    let bottom = (0..n)
        .find(|&b| p.up_set(b).len() == n)
        .ok_or_else(|| Error::ContractViolation(CabaViolation::NoMinimum.to_string()))?;
    let fail = |v: CabaViolation| Error::ContractViolation(v.to_string());

    let mut sampled = false;
    if n <= caps.exhaustive_carrier {
        for s in all_subsets(n) {
            // sup of the empty set is the bottom
            let expect_exists = if s.is_empty() { Some(bottom) } else { p.sup(&s) };
            if s.is_empty() {
                if expect_exists != Some(bottom) {
                    return Err(fail(CabaViolation::MissingSup(s)));
                }
            } else if p.sup(&s).is_none() {
                return Err(fail(CabaViolation::MissingSup(s)));
            } else if p.inf(&s).is_none() {
                return Err(fail(CabaViolation::MissingInf(s)));
            }
        }
    } else {
        sampled = true;
        for a in 0..n {
            for b in a + 1..n {
                let s = BitSet::from_indices(n, [a, b]);
                if p.sup(&s).is_none() {
                    return Err(fail(CabaViolation::MissingSup(s)));
                }
                if p.inf(&s).is_none() {
                    return Err(fail(CabaViolation::MissingInf(s)));
                }
            }
        }
    }

    for a in 0..n {
        let joins = BitSet::from_indices(n, (0..n).filter(|&c| p.sup_pair(a, c) == Some(top)));
        let meets =
            BitSet::from_indices(n, (0..n).filter(|&c| p.inf_pair(a, c) == Some(bottom)));
        let b1 = p.inf(&joins);
        let b2 = p.sup(&meets);
        if b1.is_none() || b1 != b2 {
            return Err(fail(CabaViolation::NoComplement(a)));
        }
    }

    let atoms: Vec<usize> = (0..n)
        .filter(|&a| a != bottom && p.down_set(a).len() == 2)
        .collect();
    let atom_index = BitSet::from_indices(n, atoms.iter().copied());
    for a in 0..n {
        if a == bottom {
            continue;
        }
        let below = p.down_set(a).intersect(&atom_index);
        if p.sup(&below) != Some(a) {
            return Err(fail(CabaViolation::NotAtomic(a)));
        }
    }
    if atoms.len() > 62 || n != 1usize << atoms.len() {
        return Err(fail(CabaViolation::CardinalityMismatch {
            carrier: n,
            atoms: atoms.len(),
        }));
    }
    Ok(CabaCertificate {
        top,
        bottom,
        atoms,
        sampled,
    })
}

/// Confirms the empty-signature degeneration: the powerset of the input is
/// the bare subset order (no operation tables), and the ordered-hom
/// contract collapses to continuity plus atom preservation, so ordered
/// endo-homs correspond exactly to the plain maps on atoms.
pub fn empty_signature_mode(m: &MultiAlgebra, caps: &Caps) -> Result<Verdict<String>> {
    if !m.signature().is_empty() {
        return Err(Error::NonEmptySignature);
    }
    let p = apply_P(m, caps)?;
    let expected_carrier = (1usize << m.size()) - 1;
    if p.carrier_size() != expected_carrier {
        return Ok(Verdict::Fail(format!(
            "carrier has {} elements, expected {expected_carrier}",
            p.carrier_size()
        )));
    }
    if p.signature().len() != 0 {
        return Ok(Verdict::Fail("operation tables are not empty".into()));
    }
    let homs = enumerate_ordered_homs(&p, &p, caps)?;
    let maps_on_atoms = (m.size() as u64).pow(m.size() as u32);
    if homs.len() as u64 != maps_on_atoms {
        return Ok(Verdict::Fail(format!(
            "{} ordered homs, expected {maps_on_atoms} (one per atom map)",
            homs.len()
        )));
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::multialg::check_hom;

    #[test]
    fn empty_values_pass_vacuously() {
        let sig = Signature::unary_s();
        let u = Universe::of_size(2).unwrap();
        let src = PartialMultiAlgebra::new(
            sig.clone(),
            u.clone(),
            vec![vec![BitSet::empty(2), BitSet::singleton(2, 1)]],
        )
        .unwrap();
        let dst = PartialMultiAlgebra::new(
            sig,
            u,
            vec![vec![BitSet::singleton(2, 1), BitSet::singleton(2, 1)]],
        )
        .unwrap();
        let id = Morphism::identity(2);
        assert!(check_partial_hom(&id, &src, &dst).unwrap().is_pass());
    }

    #[test]
    fn total_homs_remain_partial_homs() {
        let (a, b) = demo::pair();
        let id = Morphism::identity(2);
        assert!(check_hom(&id, &a, &b).unwrap().is_pass());
        let pa = PartialMultiAlgebra::from_total(&a);
        let pb = PartialMultiAlgebra::from_total(&b);
        assert!(check_partial_hom(&id, &pa, &pb).unwrap().is_pass());
    }

    #[test]
    fn partial_powerset_restricts_to_total_one() {
        let caps = Caps::default();
        let (a, _) = demo::pair();
        let pa = apply_P_partial(&PartialMultiAlgebra::from_total(&a), &caps).unwrap();
        let ta = crate::functors::apply_P(&a, &caps).unwrap();
        // non-empty masks: partial index = mask, total index = mask - 1
        for mask in 1..4usize {
            assert_eq!(pa.value(0, &[mask]), ta.table(0)[mask - 1] + 1);
        }
        // the empty set is absorbing
        assert_eq!(pa.value(0, &[0]), 0);
    }

    #[test]
    fn partial_powerset_order_is_a_caba() {
        let caps = Caps::default();
        let (a, _) = demo::pair();
        let pa = apply_P_partial(&PartialMultiAlgebra::from_total(&a), &caps).unwrap();
        let cert = validate_caba(&pa.poset(), &caps).unwrap();
        assert_eq!(cert.bottom, 0);
        assert_eq!(cert.atoms.len(), 2);
    }

    #[test]
    fn singleton_valued_mm_hom_agrees_with_plain_hom() {
        let (a, b) = demo::pair();
        let id = Morphism::identity(2);
        let sv = SetValuedMorphism::from_morphism(&id);
        assert!(check_mm_hom(&sv, &a, &b).unwrap().is_pass());
        assert_eq!(sv.collapse(), Some(id));
    }

    #[test]
    fn empty_signature_degeneration() {
        let caps = Caps::default();
        let m = MultiAlgebra::new(
            Signature::empty(),
            Universe::of_size(2).unwrap(),
            vec![],
        )
        .unwrap();
        assert!(empty_signature_mode(&m, &caps).unwrap().is_pass());
        let (a, _) = demo::pair();
        assert!(matches!(
            empty_signature_mode(&a, &caps),
            Err(Error::NonEmptySignature)
        ));
    }
}
