//! Σ-multialgebras: operations return non-empty subsets of the universe.
//!
//! The homomorphism checkers report the earliest failing symbol/tuple pair,
//! and the enumerators produce morphisms in a fixed lexicographic order.

use std::collections::BTreeMap;

use crate::bits::BitSet;
use crate::core::{tuple_count, tuple_from_index, tuple_index, Signature, Term, Universe};
use crate::error::{Caps, Error, Result};
use crate::verdict::{OpWitness, Verdict};

/// A finite Σ-multialgebra. Every operation table is total and every value
/// is a non-empty subset of the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiAlgebra {
    sig: Signature,
    universe: Universe,
    // tables[sym][tuple_index] = value
    tables: Vec<Vec<BitSet>>,
}

impl MultiAlgebra {
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
            for (ti, value) in table.iter().enumerate() {
                if value.is_empty() {
                    return Err(Error::EmptyValue {
                        symbol: sig.name(sym).to_string(),
                        tuple: tuple_from_index(universe.size(), sig.arity(sym), ti as u64),
                    });
                }
            }
        }
        Ok(MultiAlgebra {
            sig,
            universe,
            tables,
        })
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

    pub fn table(&self, sym: usize) -> &[BitSet] {
        &self.tables[sym]
    }
}

/// A total map between two finite universes, stored by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src_size: usize,
    pub dst_size: usize,
    pub map: Vec<usize>,
}

impl Morphism {
    pub fn new(src_size: usize, dst_size: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != src_size {
            return Err(Error::MorphismTypeMismatch);
        }
        if let Some(&bad) = map.iter().find(|&&i| i >= dst_size) {
            return Err(Error::BadIndex {
                index: bad,
                size: dst_size,
            });
        }
        Ok(Morphism {
            src_size,
            dst_size,
            map,
        })
    }

    pub fn identity(n: usize) -> Self {
        Morphism {
            src_size: n,
            dst_size: n,
            map: (0..n).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// Image of a subset under the map.
    pub fn image(&self, s: &BitSet) -> BitSet {
        BitSet::from_indices(self.dst_size, s.iter().map(|a| self.map[a]))
    }

    pub fn is_bijective(&self) -> bool {
        if self.src_size != self.dst_size {
            return false;
        }
        let mut seen = vec![false; self.dst_size];
        for &b in &self.map {
            if seen[b] {
                return false;
            }
            seen[b] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.src_size];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b] = a;
        }
        Some(Morphism {
            src_size: self.dst_size,
            dst_size: self.src_size,
            map: inv,
        })
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        if self.dst_size != other.src_size {
            return Err(Error::MorphismTypeMismatch);
        }
        Ok(Morphism {
            src_size: self.src_size,
            dst_size: other.dst_size,
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        })
    }
}

fn check_typing(h: &Morphism, src: &MultiAlgebra, dst: &MultiAlgebra) -> Result<()> {
    if src.signature() != dst.signature() {
        return Err(Error::SignatureMismatch);
    }
    if h.src_size != src.size() || h.dst_size != dst.size() {
        return Err(Error::MorphismTypeMismatch);
    }
    Ok(())
}

fn scan_op_condition(
    h: &Morphism,
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
    ok: impl Fn(&BitSet, &BitSet) -> bool,
) -> Verdict<OpWitness> {
    let sig = src.signature();
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        for (ti, value) in src.table(sym).iter().enumerate() {
            let tuple = tuple_from_index(src.size(), arity, ti as u64);
            let mapped_tuple: Vec<usize> = tuple.iter().map(|&a| h.apply(a)).collect();
            let image = h.image(value);
            if !ok(&image, dst.value(sym, &mapped_tuple)) {
                return Verdict::Fail(OpWitness {
                    symbol: sig.name(sym).to_string(),
                    tuple,
                });
            }
        }
    }
    Verdict::Pass
}

/// Checks the inclusion `{h(a) : a ∈ σ(a⃗)} ⊆ σ(h(a⃗))` for all symbols and
/// tuples.
pub fn check_hom(h: &Morphism, src: &MultiAlgebra, dst: &MultiAlgebra) -> Result<Verdict<OpWitness>> {
    check_typing(h, src, dst)?;
    Ok(scan_op_condition(h, src, dst, |image, target| {
        image.is_subset_of(target)
    }))
}

/// Checks the full-homomorphism condition: image equals the target value.
pub fn check_full_hom(
    h: &Morphism,
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
) -> Result<Verdict<OpWitness>> {
    check_typing(h, src, dst)?;
    Ok(scan_op_condition(h, src, dst, |image, target| image == target))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomMode {
    Hom,
    Full,
    Iso,
}

/// All maps `src → dst` satisfying the selected contract, in lexicographic
/// order of their value tables.
pub fn enumerate_homs(
    src: &MultiAlgebra,
    dst: &MultiAlgebra,
    mode: HomMode,
    caps: &Caps,
) -> Result<Vec<Morphism>> {
    if src.signature() != dst.signature() {
        return Err(Error::SignatureMismatch);
    }
    let space = (dst.size() as u64)
        .checked_pow(src.size() as u32)
        .filter(|&s| s <= caps.map_space)
        .ok_or(Error::CapExceeded {
            what: "map space |B|^|A|",
            actual: (dst.size() as u128).pow(src.size() as u32),
            cap: caps.map_space as u128,
        })?;
    let mut out = Vec::new();
    for i in 0..space {
        let map = tuple_from_index(dst.size(), src.size(), i);
        let h = Morphism::new(src.size(), dst.size(), map)?;
        let keep = match mode {
            HomMode::Hom => check_hom(&h, src, dst)?.is_pass(),
            HomMode::Full => check_full_hom(&h, src, dst)?.is_pass(),
            HomMode::Iso => h.is_bijective() && check_full_hom(&h, src, dst)?.is_pass(),
        };
        if keep {
            out.push(h);
        }
    }
    Ok(out)
}

// Isomorphism invariant of an element: per symbol, the sorted result sizes
// of tuples mentioning the element, plus how often the element occurs in
// results.
fn element_profile(m: &MultiAlgebra, a: usize) -> Vec<(Vec<usize>, usize)> {
    let sig = m.signature();
    let mut profile = Vec::with_capacity(sig.len());
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        let mut sizes = Vec::new();
        let mut occurrences = 0;
        for (ti, value) in m.table(sym).iter().enumerate() {
            let tuple = tuple_from_index(m.size(), arity, ti as u64);
            if tuple.contains(&a) {
                sizes.push(value.len());
            }
            if value.contains(a) {
                occurrences += 1;
            }
        }
        sizes.sort_unstable();
        profile.push((sizes, occurrences));
    }
    profile
}

/// Searches for a bijective full homomorphism by backtracking over
/// bijections, pruning on per-element profiles. Returns the first witness
/// in lexicographic order.
pub fn is_isomorphic(a: &MultiAlgebra, b: &MultiAlgebra) -> Result<Option<Morphism>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    let n = a.size();
    let pa: Vec<_> = (0..n).map(|x| element_profile(a, x)).collect();
    let pb: Vec<_> = (0..n).map(|x| element_profile(b, x)).collect();
    {
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return Ok(None);
        }
    }
    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn backtrack(
        depth: usize,
        n: usize,
        pa: &[Vec<(Vec<usize>, usize)>],
        pb: &[Vec<(Vec<usize>, usize)>],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        a: &MultiAlgebra,
        b: &MultiAlgebra,
    ) -> Option<Morphism> {
        if depth == n {
            let h = Morphism::new(n, n, assignment.clone()).ok()?;
            if check_full_hom(&h, a, b).ok()?.is_pass() {
                return Some(h);
            }
            return None;
        }
        for img in 0..n {
            if used[img] || pa[depth] != pb[img] {
                continue;
            }
            assignment[depth] = img;
            used[img] = true;
            if let Some(h) = backtrack(depth + 1, n, pa, pb, assignment, used, a, b) {
                return Some(h);
            }
            used[img] = false;
        }
        assignment[depth] = usize::MAX;
        None
    }
    Ok(backtrack(0, n, &pa, &pb, &mut assignment, &mut used, a, b))
}

/// Non-deterministic term evaluation: the set of all possible outcomes of
/// `t` under the given total valuation.
pub fn eval_term_nd(
    m: &MultiAlgebra,
    t: &Term,
    valuation: &BTreeMap<String, usize>,
) -> Result<BitSet> {
    match t {
        Term::Var(v) => {
            let &e = valuation
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            if e >= m.size() {
                return Err(Error::BadIndex {
                    index: e,
                    size: m.size(),
                });
            }
            Ok(BitSet::singleton(m.size(), e))
        }
        Term::App(symbol, args) => {
            let sym = m
                .signature()
                .index_of(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
            let arity = m.signature().arity(sym);
            if args.len() != arity {
                return Err(Error::ArityMismatch {
                    symbol: symbol.clone(),
                    arity,
                    got: args.len(),
                });
            }
            let sub: Vec<BitSet> = args
                .iter()
                .map(|s| eval_term_nd(m, s, valuation))
                .collect::<Result<_>>()?;
            let mut out = BitSet::empty(m.size());
            let choices: Vec<Vec<usize>> = sub.iter().map(|s| s.iter().collect()).collect();
            let mut tuple = vec![0usize; arity];
            accumulate_choices(m, sym, &choices, 0, &mut tuple, &mut out);
            Ok(out)
        }
    }
}

fn accumulate_choices(
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
        accumulate_choices(m, sym, choices, pos + 1, tuple, out);
    }
}
