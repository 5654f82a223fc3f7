//! The powerset functor on multialgebras, the atoms functor on ordered
//! algebras, the adjunction bijection between their hom-sets, and the
//! plain-algebra variant of the powerset construction.
//!
//! Powerset carriers are materialized eagerly: the carrier of `apply_P(m)`
//! lists all non-empty subsets of the universe in mask order, so subset
//! with mask `m` sits at carrier index `m - 1`.

use crate::bits::BitSet;
use crate::cabl::CablCertificate;
use crate::core::{tuple_count, tuple_from_index, tuple_index, Signature, Universe};
use crate::error::{Caps, Error, Result};
use crate::multialg::{check_hom, enumerate_homs, HomMode, Morphism, MultiAlgebra};
use crate::ordalg::{check_ordered_hom, validate_ordered_algebra, OrderedAlgebra};
use crate::poset::FinitePoset;
use crate::verdict::{OpWitness, Verdict};

/// A plain Σ-algebra: single-valued total operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainAlgebra {
    sig: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

impl PlainAlgebra {
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn value(&self, sym: usize, tuple: &[usize]) -> usize {
        self.tables[sym][tuple_index(self.size, tuple)]
    }
}

/// Which homomorphism contract a hom-set was enumerated under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contract {
    Hom,
    FullHom,
    Iso,
    Ordered,
    Plain,
}

/// An enumerated hom-set in deterministic order; every member passes the
/// contract's checker.
#[derive(Debug, Clone)]
pub struct HomSet {
    pub contract: Contract,
    pub maps: Vec<Morphism>,
}

fn powerset_carrier_checked(size: usize, caps: &Caps) -> Result<usize> {
    if size > caps.powerset_universe {
        return Err(Error::CapExceeded {
            what: "universe size for powerset construction",
            actual: size as u128,
            cap: caps.powerset_universe as u128,
        });
    }
    Ok((1usize << size) - 1)
}

fn accumulated_tables(m: &MultiAlgebra, caps: &Caps) -> Result<Vec<Vec<BitSet>>> {
    let n = m.size();
    let carrier = (1usize << n) - 1;
    let sig = m.signature();
    let mut tables = Vec::with_capacity(sig.len());
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        let total = tuple_count(carrier, arity, caps)?;
        let mut table = Vec::with_capacity(total as usize);
        for ti in 0..total {
            let masks = tuple_from_index(carrier, arity, ti);
            let sets: Vec<BitSet> = masks
                .iter()
                .map(|&i| BitSet::from_mask(n, i as u64 + 1))
                .collect();
            let mut value = BitSet::empty(n);
            let choices: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().collect()).collect();
            let mut tuple = vec![0usize; arity];
            accumulate(m, sym, &choices, 0, &mut tuple, &mut value);
            table.push(value);
        }
        tables.push(table);
    }
    Ok(tables)
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

/// The inclusion order on all non-empty subsets of an `n`-element universe,
/// together with its certificate, built analytically.
pub fn powerset_order(n: usize) -> (FinitePoset, CablCertificate) {
    let carrier = (1usize << n) - 1;
    let up: Vec<BitSet> = (1..=carrier as u64)
        .map(|m| {
            BitSet::from_indices(
                carrier,
                (1..=carrier as u64)
                    .filter(|&k| m & !k == 0)
                    .map(|k| k as usize - 1),
            )
        })
        .collect();
    let poset = FinitePoset::from_up_sets_unchecked(up);
    let atoms: Vec<usize> = (0..n).map(|i| (1usize << i) - 1).collect();
    let atom_sets: Vec<BitSet> = (1..=carrier as u64)
        .map(|m| {
            BitSet::from_indices(
                carrier,
                (0..n).filter(|&i| m >> i & 1 == 1).map(|i| (1usize << i) - 1),
            )
        })
        .collect();
    // complement of mask m is carrier ^ m, sitting at carrier index
    // (carrier ^ m) - 1
    let complement: Vec<Option<usize>> = (1..=carrier)
        .map(|m| {
            if m == carrier {
                None
            } else {
                Some((carrier ^ m) - 1)
            }
        })
        .collect();
    (
        poset,
        CablCertificate {
            top: carrier - 1,
            atoms,
            atom_sets,
            complement,
            sampled: false,
        },
    )
}

/// The powerset algebra with its order: carrier = non-empty subsets ordered
/// by inclusion, operations accumulated over element choices. The result is
/// re-validated against the atom-generation condition.
pub fn apply_P(m: &MultiAlgebra, caps: &Caps) -> Result<OrderedAlgebra> {
    powerset_carrier_checked(m.size(), caps)?;
    let tables = accumulated_tables(m, caps)?;
    let n = m.size();
    let index_tables: Vec<Vec<usize>> = tables
        .iter()
        .map(|t| {
            t.iter()
                .map(|v| v.as_mask().unwrap() as usize - 1)
                .collect()
        })
        .collect();
    let (poset, cert) = powerset_order(n);
    validate_ordered_algebra(poset, cert, m.signature().clone(), index_tables, caps)
        .map_err(|w| Error::ContractViolation(format!("powerset algebra fails validation at {w}")))
}

/// The powerset construction with the order discarded.
pub fn apply_P_eq(m: &MultiAlgebra, caps: &Caps) -> Result<PlainAlgebra> {
    let carrier = powerset_carrier_checked(m.size(), caps)?;
    let tables = accumulated_tables(m, caps)?;
    Ok(PlainAlgebra {
        sig: m.signature().clone(),
        size: carrier,
        tables: tables
            .iter()
            .map(|t| {
                t.iter()
                    .map(|v| v.as_mask().unwrap() as usize - 1)
                    .collect()
            })
            .collect(),
    })
}

/// Image map on subsets induced by a multialgebra homomorphism. The input
/// is re-checked against the homomorphism contract.
pub fn apply_P_mor(
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
    let src_carrier = powerset_carrier_checked(src.size(), caps)?;
    let dst_carrier = powerset_carrier_checked(dst.size(), caps)?;
    let map: Vec<usize> = (1..=src_carrier as u64)
        .map(|m| {
            let s = BitSet::from_mask(src.size(), m);
            h.image(&s).as_mask().unwrap() as usize - 1
        })
        .collect();
    Morphism::new(src_carrier, dst_carrier, map)
}

/// The multialgebra of atoms of an ordered algebra: universe = atoms, and
/// `σ(a⃗)` = the set of atoms below `σ(a⃗)` in the ordered algebra.
pub fn apply_A(b: &OrderedAlgebra) -> Result<MultiAlgebra> {
    let cert = b.certificate();
    let k = cert.atoms.len();
    let universe = Universe::new(
        cert.atoms.iter().map(|&a| format!("a{a}")).collect::<Vec<_>>(),
    )?;
    let sig = b.signature().clone();
    let caps = Caps::default();
    let mut tables = Vec::with_capacity(sig.len());
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        let total = tuple_count(k, arity, &caps)?;
        let mut table = Vec::with_capacity(total as usize);
        for ti in 0..total {
            let positions = tuple_from_index(k, arity, ti);
            let carrier_tuple: Vec<usize> =
                positions.iter().map(|&p| cert.atoms[p]).collect();
            table.push(cert.atom_mask(b.value(sym, &carrier_tuple)));
        }
        tables.push(table);
    }
    MultiAlgebra::new(sig, universe, tables)
}

/// Restriction of an ordered homomorphism to atoms. The input is re-checked.
pub fn apply_A_mor(
    h: &Morphism,
    src: &OrderedAlgebra,
    dst: &OrderedAlgebra,
    caps: &Caps,
) -> Result<Morphism> {
    let report = check_ordered_hom(h, src, dst, true, caps)?;
    if let Verdict::Fail(w) = report.verdict {
        return Err(Error::ContractViolation(format!(
            "input is not an order-compatible homomorphism: {w}"
        )));
    }
    let src_cert = src.certificate();
    let dst_cert = dst.certificate();
    let map: Vec<usize> = src_cert
        .atoms
        .iter()
        .map(|&a| dst_cert.atom_position(h.apply(a)).unwrap())
        .collect();
    Morphism::new(src_cert.atoms.len(), dst_cert.atoms.len(), map)
}

/// Outcome of a roundtrip isomorphism check: the canonical map together
/// with the verdict of its verification.
#[derive(Debug, Clone)]
pub struct IsoReport {
    pub morphism: Morphism,
    pub verdict: Verdict<String>,
}

impl IsoReport {
    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// The canonical map `a ↦ {a}` from a multialgebra to the atoms of its
/// powerset algebra, verified to be a bijective full homomorphism with a
/// full inverse.
pub fn unit_iso(m: &MultiAlgebra, caps: &Caps) -> Result<IsoReport> {
    let p = apply_P(m, caps)?;
    let ap = apply_A(&p)?;
    let cert = p.certificate();
    let map: Vec<usize> = (0..m.size())
        .map(|a| cert.atom_position((1usize << a) - 1).unwrap())
        .collect();
    let morphism = Morphism::new(m.size(), ap.size(), map)?;
    let verdict = verify_multi_iso(&morphism, m, &ap)?;
    Ok(IsoReport { morphism, verdict })
}

fn verify_multi_iso(
    h: &Morphism,
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
) -> Result<Verdict<String>> {
    if !h.is_bijective() {
        return Ok(Verdict::Fail("map is not bijective".into()));
    }
    if let Verdict::Fail(w) = check_full_hom_wrap(h, src, dst)? {
        return Ok(Verdict::Fail(format!("forward full-hom fails at {w}")));
    }
    let inv = h.inverse().unwrap();
    if let Verdict::Fail(w) = check_full_hom_wrap(&inv, dst, src)? {
        return Ok(Verdict::Fail(format!("inverse full-hom fails at {w}")));
    }
    Ok(Verdict::Pass)
}

fn check_full_hom_wrap(
    h: &Morphism,
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
) -> Result<Verdict<OpWitness>> {
    crate::multialg::check_full_hom(h, src, dst)
}

/// The canonical map `b ↦ A_b` from an ordered algebra to the powerset
/// algebra of its atoms multialgebra, verified to be an order-compatible
/// isomorphism in both directions.
pub fn counit_iso(b: &OrderedAlgebra, caps: &Caps) -> Result<IsoReport> {
    let atoms_alg = apply_A(b)?;
    let pa = apply_P(&atoms_alg, caps)?;
    let map: Vec<usize> = (0..b.carrier_size())
        .map(|x| {
            let mask = b.certificate().atom_mask(x).as_mask().unwrap();
            mask as usize - 1
        })
        .collect();
    let morphism = Morphism::new(b.carrier_size(), pa.carrier_size(), map)?;
    let verdict = (|| -> Result<Verdict<String>> {
        if !morphism.is_bijective() {
            return Ok(Verdict::Fail("map is not bijective".into()));
        }
        let fwd = check_ordered_hom(&morphism, b, &pa, true, caps)?;
        if let Verdict::Fail(w) = fwd.verdict {
            return Ok(Verdict::Fail(format!("forward check fails: {w}")));
        }
        let inv = morphism.inverse().unwrap();
        let bwd = check_ordered_hom(&inv, &pa, b, true, caps)?;
        if let Verdict::Fail(w) = bwd.verdict {
            return Ok(Verdict::Fail(format!("inverse check fails: {w}")));
        }
        Ok(Verdict::Pass)
    })()?;
    Ok(IsoReport { morphism, verdict })
}

/// The adjunction bijection on hom-sets: a multialgebra homomorphism
/// `h : atoms(B) → A` becomes the ordered homomorphism `b ↦ {h(c) : c ∈ A_b}`
/// from `B` to the powerset algebra of `A`. The input is re-checked.
pub fn phi(
    h: &Morphism,
    b: &OrderedAlgebra,
    a: &MultiAlgebra,
    caps: &Caps,
) -> Result<Morphism> {
    let atoms_b = apply_A(b)?;
    match check_hom(h, &atoms_b, a)? {
        Verdict::Pass => {}
        Verdict::Fail(w) => {
            return Err(Error::ContractViolation(format!(
                "input is not a homomorphism from the atoms multialgebra, fails at {w}"
            )))
        }
    }
    let pa_carrier = powerset_carrier_checked(a.size(), caps)?;
    let cert = b.certificate();
    let map: Vec<usize> = (0..b.carrier_size())
        .map(|x| {
            let mut image = BitSet::empty(a.size());
            for c in cert.atom_mask(x).iter() {
                image.insert(h.apply(c));
            }
            image.as_mask().unwrap() as usize - 1
        })
        .collect();
    Morphism::new(b.carrier_size(), pa_carrier, map)
}

/// Inverse of the adjunction bijection: an ordered homomorphism
/// `g : B → powerset(A)` restricts on atoms to singletons, giving a
/// multialgebra homomorphism `atoms(B) → A`. The input is re-checked.
pub fn phi_inv(
    g: &Morphism,
    b: &OrderedAlgebra,
    a: &MultiAlgebra,
    caps: &Caps,
) -> Result<Morphism> {
    let pa = apply_P(a, caps)?;
    let report = check_ordered_hom(g, b, &pa, true, caps)?;
    if let Verdict::Fail(w) = report.verdict {
        return Err(Error::ContractViolation(format!(
            "input is not an order-compatible homomorphism: {w}"
        )));
    }
    let cert = b.certificate();
    let map: Vec<usize> = cert
        .atoms
        .iter()
        .map(|&c| {
            let mask = g.apply(c) as u64 + 1;
            debug_assert_eq!(mask.count_ones(), 1, "atom image must be a singleton");
            mask.trailing_zeros() as usize
        })
        .collect();
    Morphism::new(cert.atoms.len(), a.size(), map)
}

/// All order-compatible homomorphisms `src → dst`, enumerated through their
/// action on atoms (a continuous map is determined by it) and then
/// re-verified in full.
pub fn enumerate_ordered_homs(
    src: &OrderedAlgebra,
    dst: &OrderedAlgebra,
    caps: &Caps,
) -> Result<Vec<Morphism>> {
    if src.signature() != dst.signature() {
        return Err(Error::SignatureMismatch);
    }
    let src_atoms = src.certificate().atoms.clone();
    let dst_atoms = dst.certificate().atoms.clone();
    let space = (dst_atoms.len() as u64)
        .checked_pow(src_atoms.len() as u32)
        .filter(|&s| s <= caps.map_space)
        .ok_or(Error::CapExceeded {
            what: "atom map space",
            actual: (dst_atoms.len() as u128).pow(src_atoms.len() as u32),
            cap: caps.map_space as u128,
        })?;
    let mut out = Vec::new();
    for i in 0..space {
        let atom_map = tuple_from_index(dst_atoms.len(), src_atoms.len(), i);
        // continuous extension: g(x) = sup of the images of the atoms of x
        let mut map = Vec::with_capacity(src.carrier_size());
        let mut ok = true;
        for x in 0..src.carrier_size() {
            let images = BitSet::from_indices(
                dst.carrier_size(),
                src.certificate().atom_sets[x].iter().map(|c| {
                    let pos = src.certificate().atom_position(c).unwrap();
                    dst_atoms[atom_map[pos]]
                }),
            );
            match dst.poset().sup(&images) {
                Some(v) => map.push(v),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let h = Morphism::new(src.carrier_size(), dst.carrier_size(), map)?;
        if check_ordered_hom(&h, src, dst, true, caps)?.is_pass() {
            out.push(h);
        }
    }
    Ok(out)
}

/// All order-compatible isomorphisms `src → dst` (bijective, passing the
/// contract in both directions).
pub fn enumerate_ordered_isos(
    src: &OrderedAlgebra,
    dst: &OrderedAlgebra,
    caps: &Caps,
) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for h in enumerate_ordered_homs(src, dst, caps)? {
        if h.is_bijective() {
            let inv = h.inverse().unwrap();
            if check_ordered_hom(&inv, dst, src, true, caps)?.is_pass() {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// Plain Σ-algebra homomorphism check.
pub fn check_plain_hom(
    h: &Morphism,
    src: &PlainAlgebra,
    dst: &PlainAlgebra,
) -> Result<Verdict<OpWitness>> {
    if src.sig != dst.sig {
        return Err(Error::SignatureMismatch);
    }
    if h.src_size != src.size || h.dst_size != dst.size {
        return Err(Error::MorphismTypeMismatch);
    }
    for sym in 0..src.sig.len() {
        let arity = src.sig.arity(sym);
        for (ti, &value) in src.tables[sym].iter().enumerate() {
            let tuple = tuple_from_index(src.size, arity, ti as u64);
            let mapped: Vec<usize> = tuple.iter().map(|&x| h.apply(x)).collect();
            if h.apply(value) != dst.value(sym, &mapped) {
                return Ok(Verdict::Fail(OpWitness {
                    symbol: src.sig.name(sym).to_string(),
                    tuple,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// All bijective plain homomorphisms `src → dst` whose inverse is also a
/// plain homomorphism.
pub fn enumerate_plain_isos(
    src: &PlainAlgebra,
    dst: &PlainAlgebra,
    caps: &Caps,
) -> Result<Vec<Morphism>> {
    if src.size != dst.size {
        return Ok(Vec::new());
    }
    let space = (dst.size as u64)
        .checked_pow(src.size as u32)
        .filter(|&s| s <= caps.map_space)
        .ok_or(Error::CapExceeded {
            what: "map space |B|^|A|",
            actual: (dst.size as u128).pow(src.size as u32),
            cap: caps.map_space as u128,
        })?;
    let mut out = Vec::new();
    for i in 0..space {
        let h = Morphism::new(src.size, dst.size, tuple_from_index(dst.size, src.size, i))?;
        if h.is_bijective()
            && check_plain_hom(&h, src, dst)?.is_pass()
            && check_plain_hom(&h.inverse().unwrap(), dst, src)?.is_pass()
        {
            out.push(h);
        }
    }
    Ok(out)
}

/// Fullness witness for the powerset functor: the underlying element map of
/// an ordered homomorphism between two powerset algebras, recovered from
/// its action on singletons.
pub fn p_preimage(
    g: &Morphism,
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
) -> Result<Morphism> {
    let map: Vec<usize> = (0..src.size())
        .map(|a| {
            let img_mask = g.apply((1usize << a) - 1) as u64 + 1;
            if img_mask.count_ones() != 1 {
                return Err(Error::ContractViolation(
                    "singleton image is not a singleton".into(),
                ));
            }
            Ok(img_mask.trailing_zeros() as usize)
        })
        .collect::<Result<_>>()?;
    Morphism::new(src.size(), dst.size(), map)
}

/// Fullness witness for the atoms functor: the continuous extension of a
/// homomorphism between atoms multialgebras, `x ↦ sup {g(c) : c ∈ A_x}`.
pub fn a_preimage(
    g: &Morphism,
    src: &OrderedAlgebra,
    dst: &OrderedAlgebra,
) -> Result<Morphism> {
    let src_cert = src.certificate();
    let dst_cert = dst.certificate();
    let map: Vec<usize> = (0..src.carrier_size())
        .map(|x| {
            let images = BitSet::from_indices(
                dst.carrier_size(),
                src_cert.atom_sets[x].iter().map(|c| {
                    let pos = src_cert.atom_position(c).unwrap();
                    dst_cert.atoms[g.apply(pos)]
                }),
            );
            dst.poset().sup(&images).ok_or_else(|| {
                Error::ContractViolation("atom images have no supremum".into())
            })
        })
        .collect::<Result<_>>()?;
    Morphism::new(src.carrier_size(), dst.carrier_size(), map)
}

/// Verifies the naturality square of the adjunction for one pair of
/// morphisms `h : a → c` (multialgebra hom) and `h2 : d → b` (ordered hom),
/// pointwise over the whole enumerated hom-set `Hom(atoms(b), a)`.
#[allow(clippy::too_many_arguments)]
pub fn check_naturality(
    h: &Morphism,
    a: &MultiAlgebra,
    c: &MultiAlgebra,
    h2: &Morphism,
    d: &OrderedAlgebra,
    b: &OrderedAlgebra,
    caps: &Caps,
) -> Result<Verdict<Morphism>> {
    let atoms_b = apply_A(b)?;
    let homs = enumerate_homs(&atoms_b, a, HomMode::Hom, caps)?;
    let ph = apply_P_mor(h, a, c, caps)?;
    let ah2 = apply_A_mor(h2, d, b, caps)?;
    for g in homs {
        // right path: P(h) ∘ Φ(g) ∘ h2
        let right = h2.then(&phi(&g, b, a, caps)?)?.then(&ph)?;
        // left path: Φ(h ∘ g ∘ A(h2))
        let left = phi(&ah2.then(&g)?.then(h)?, d, c, caps)?;
        if left != right {
            return Ok(Verdict::Fail(g));
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cabl::{canonicalize, validate_cabl};
    use crate::demo;
    use crate::multialg::is_isomorphic;

    #[test]
    fn powerset_values_of_demo_pair() {
        let caps = Caps::default();
        let (a, b) = demo::pair();
        let pa = apply_P(&a, &caps).unwrap();
        let pb = apply_P(&b, &caps).unwrap();
        // carrier order {0},{1},{0,1}; s in P(a) is constantly {1}
        assert_eq!(pa.table(0), &[1, 1, 1]);
        // s in P(b) is constantly {0,1}
        assert_eq!(pb.table(0), &[2, 2, 2]);
    }

    #[test]
    fn powerset_certificate_matches_validator() {
        let caps = Caps::default();
        let (a, _) = demo::pair();
        let pa = apply_P(&a, &caps).unwrap();
        let recheck = validate_cabl(pa.poset(), &caps).unwrap();
        assert_eq!(recheck, *pa.certificate());
        assert!(canonicalize(pa.poset(), pa.certificate()).is_ok());
    }

    #[test]
    fn functor_laws_on_identity() {
        let caps = Caps::default();
        let (a, _) = demo::pair();
        let id = Morphism::identity(2);
        let pid = apply_P_mor(&id, &a, &a, &caps).unwrap();
        assert_eq!(pid, Morphism::identity(3));
    }

    #[test]
    fn atoms_of_powerset_recovers_structure() {
        let caps = Caps::default();
        let (a, b) = demo::pair();
        for m in [&a, &b] {
            let report = unit_iso(m, &caps).unwrap();
            assert!(report.is_pass(), "{:?}", report.verdict);
        }
        // sizes of the atom-algebra values mirror the original
        let ap = apply_A(&apply_P(&a, &caps).unwrap()).unwrap();
        assert!(ap.table(0).iter().all(|v| v.len() == 1));
        let bp = apply_A(&apply_P(&b, &caps).unwrap()).unwrap();
        assert!(bp.table(0).iter().all(|v| v.len() == 2));
    }

    #[test]
    fn counit_on_powerset_algebra() {
        let caps = Caps::default();
        let (a, _) = demo::pair();
        let pa = apply_P(&a, &caps).unwrap();
        let report = counit_iso(&pa, &caps).unwrap();
        assert!(report.is_pass(), "{:?}", report.verdict);
    }

    #[test]
    fn demo_counterexample_holds() {
        let caps = Caps::default();
        let (a, b) = demo::pair();
        assert!(is_isomorphic(&a, &b).unwrap().is_none());
        let plain_isos = enumerate_plain_isos(
            &apply_P_eq(&a, &caps).unwrap(),
            &apply_P_eq(&b, &caps).unwrap(),
            &caps,
        )
        .unwrap();
        assert!(!plain_isos.is_empty());
        // the documented explicit bijection is among the witnesses
        let h = Morphism::new(3, 3, demo::plain_iso_map()).unwrap();
        assert!(plain_isos.contains(&h));
        // but no order-compatible isomorphism exists
        let pa = apply_P(&a, &caps).unwrap();
        let pb = apply_P(&b, &caps).unwrap();
        assert!(enumerate_ordered_isos(&pa, &pb, &caps).unwrap().is_empty());
    }

    #[test]
    fn ordered_hom_clause_failure_on_demo_bijection() {
        // the plain iso maps the atom {1} to {0,1}: clause (iii) must fail
        let caps = Caps::default();
        let (a, b) = demo::pair();
        let pa = apply_P(&a, &caps).unwrap();
        let pb = apply_P(&b, &caps).unwrap();
        let h = Morphism::new(3, 3, demo::plain_iso_map()).unwrap();
        let report = check_ordered_hom(&h, &pa, &pb, true, &caps).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Fail(crate::ordalg::OrderedHomFailure::AtomNotPreserved(1))
        );
    }

    #[test]
    fn adjunction_bijection_on_demo_pair() {
        let caps = Caps::default();
        let (a, _) = demo::pair();
        let b = apply_P(&a, &caps).unwrap();
        let atoms_b = apply_A(&b).unwrap();
        let homs = enumerate_homs(&atoms_b, &a, HomMode::Hom, &caps).unwrap();
        let ordered = enumerate_ordered_homs(&b, &apply_P(&a, &caps).unwrap(), &caps).unwrap();
        assert_eq!(homs.len(), ordered.len());
        for h in &homs {
            let g = phi(h, &b, &a, &caps).unwrap();
            assert!(ordered.contains(&g));
            assert_eq!(&phi_inv(&g, &b, &a, &caps).unwrap(), h);
        }
    }
}
