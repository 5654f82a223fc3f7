//! Ordered Σ-algebras: a Σ-algebra whose carrier is a validated bottomless
//! Boolean order and whose operations are generated by their values on atom
//! tuples via suprema.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{nonempty_subsets, BitSet};
use crate::cabl::CablCertificate;
use crate::core::{tuple_count, tuple_from_index, tuple_index, Signature, Term};
use crate::error::{Caps, Error, Result};
use crate::multialg::Morphism;
use crate::poset::FinitePoset;
use crate::verdict::{OpWitness, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedAlgebra {
    poset: FinitePoset,
    cert: CablCertificate,
    sig: Signature,
    // tables[sym][tuple_index] = carrier element
    tables: Vec<Vec<usize>>,
}

impl OrderedAlgebra {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn certificate(&self) -> &CablCertificate {
        &self.cert
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn carrier_size(&self) -> usize {
        self.poset.size()
    }

    pub fn value(&self, sym: usize, tuple: &[usize]) -> usize {
        self.tables[sym][tuple_index(self.poset.size(), tuple)]
    }

    pub fn table(&self, sym: usize) -> &[usize] {
        &self.tables[sym]
    }

    pub fn atoms(&self) -> &[usize] {
        &self.cert.atoms
    }

    /// Extends operation values given on atom tuples to the whole carrier
    /// by taking sups over atom tuples, producing a structure that
    /// satisfies the atom-generation condition by construction. The atom
    /// tables are indexed by tuples over `atoms` positions.
    pub fn from_atom_tables(
        poset: FinitePoset,
        cert: CablCertificate,
        sig: Signature,
        atom_tables: &[Vec<usize>],
        caps: &Caps,
    ) -> Result<OrderedAlgebra> {
        let n = poset.size();
        let k = cert.atoms.len();
        let mut tables = Vec::with_capacity(sig.len());
        for sym in 0..sig.len() {
            let arity = sig.arity(sym);
            let expected = tuple_count(k, arity, caps)? as usize;
            if atom_tables[sym].len() != expected {
                return Err(Error::TableNotTotal {
                    symbol: sig.name(sym).to_string(),
                    expected,
                    got: atom_tables[sym].len(),
                });
            }
            let total = tuple_count(n, arity, caps)?;
            let mut table = Vec::with_capacity(total as usize);
            for ti in 0..total {
                let tuple = tuple_from_index(n, arity, ti);
                let mut results = BitSet::empty(n);
                let positions: Vec<Vec<usize>> = tuple
                    .iter()
                    .map(|&a| {
                        cert.atom_sets[a]
                            .iter()
                            .map(|x| cert.atom_position(x).unwrap())
                            .collect()
                    })
                    .collect();
                let mut atom_tuple = vec![0usize; arity];
                collect_atom_values(
                    &atom_tables[sym],
                    k,
                    &positions,
                    0,
                    &mut atom_tuple,
                    &mut results,
                );
                let v = poset.sup(&results).ok_or_else(|| {
                    Error::ContractViolation(format!(
                        "atom values of {} have no supremum",
                        sig.name(sym)
                    ))
                })?;
                table.push(v);
            }
            tables.push(table);
        }
        validate_ordered_algebra(poset, cert, sig, tables, caps)
            .map_err(|w| Error::ContractViolation(format!("atom-generation fails at {w}")))
    }
}

fn collect_atom_values(
    atom_table: &[usize],
    atom_count: usize,
    positions: &[Vec<usize>],
    pos: usize,
    atom_tuple: &mut Vec<usize>,
    out: &mut BitSet,
) {
    if pos == positions.len() {
        out.insert(atom_table[tuple_index(atom_count, atom_tuple)]);
        return;
    }
    for &p in &positions[pos] {
        atom_tuple[pos] = p;
        collect_atom_values(atom_table, atom_count, positions, pos + 1, atom_tuple, out);
    }
}

/// Checks the atom-generation condition `σ(a⃗) = sup {σ(b⃗) : b_i ∈ A_{a_i}}`
/// for every symbol and tuple, and builds the ordered algebra.
pub fn validate_ordered_algebra(
    poset: FinitePoset,
    cert: CablCertificate,
    sig: Signature,
    tables: Vec<Vec<usize>>,
    caps: &Caps,
) -> std::result::Result<OrderedAlgebra, OpWitness> {
    let n = poset.size();
    assert_eq!(tables.len(), sig.len(), "interpretation table count");
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        let expected = tuple_count(n, arity, caps).expect("carrier within caps") as usize;
        assert_eq!(tables[sym].len(), expected, "table not total");
        for (ti, &value) in tables[sym].iter().enumerate() {
            let tuple = tuple_from_index(n, arity, ti as u64);
            let mut results = BitSet::empty(n);
            let atom_lists: Vec<Vec<usize>> =
                tuple.iter().map(|&a| cert.atom_sets[a].iter().collect()).collect();
            let mut atom_tuple = vec![0usize; arity];
            collect_table_values(&tables[sym], n, &atom_lists, 0, &mut atom_tuple, &mut results);
            if poset.sup(&results) != Some(value) {
                return Err(OpWitness {
                    symbol: sig.name(sym).to_string(),
                    tuple,
                });
            }
        }
    }
    Ok(OrderedAlgebra {
        poset,
        cert,
        sig,
        tables,
    })
}

fn collect_table_values(
    table: &[usize],
    carrier: usize,
    atom_lists: &[Vec<usize>],
    pos: usize,
    atom_tuple: &mut Vec<usize>,
    out: &mut BitSet,
) {
    if pos == atom_lists.len() {
        out.insert(table[tuple_index(carrier, atom_tuple)]);
        return;
    }
    for &a in &atom_lists[pos] {
        atom_tuple[pos] = a;
        collect_table_values(table, carrier, atom_lists, pos + 1, atom_tuple, out);
    }
}

/// Why an ordered-homomorphism check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderedHomFailure {
    /// Clause (i): `h(σ(a⃗)) ≤ σ(h(a⃗))` broken at this symbol/tuple.
    Op(OpWitness),
    /// Clause (ii): `h(sup S) = sup h(S)` broken at this subset.
    Continuity(BitSet),
    /// Clause (iii): this atom is not mapped to an atom.
    AtomNotPreserved(usize),
}

impl fmt::Display for OrderedHomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderedHomFailure::Op(w) => write!(f, "operation clause fails at {w}"),
            OrderedHomFailure::Continuity(s) => {
                write!(f, "continuity fails on subset {s:?}")
            }
            OrderedHomFailure::AtomNotPreserved(a) => {
                write!(f, "atom {a} is not mapped to an atom")
            }
        }
    }
}

/// Verdict of [`check_ordered_hom`]; `exhaustive` is false when the
/// continuity clause was sampled instead of exhausted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedHomReport {
    pub verdict: Verdict<OrderedHomFailure>,
    pub exhaustive: bool,
}

impl OrderedHomReport {
    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// Checks the three clauses of the order-compatible homomorphism contract:
/// the relaxed operation inequality, continuity for non-empty sups, and
/// atom preservation. `require_atoms: false` drops the third clause, the
/// relaxation used for the set-valued-morphism side category.
pub fn check_ordered_hom(
    h: &Morphism,
    src: &OrderedAlgebra,
    dst: &OrderedAlgebra,
    require_atoms: bool,
    caps: &Caps,
) -> Result<OrderedHomReport> {
    if src.signature() != dst.signature() {
        return Err(Error::SignatureMismatch);
    }
    if h.src_size != src.carrier_size() || h.dst_size != dst.carrier_size() {
        return Err(Error::MorphismTypeMismatch);
    }
    let sig = src.signature();
    // clause (i)
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        for (ti, &value) in src.table(sym).iter().enumerate() {
            let tuple = tuple_from_index(src.carrier_size(), arity, ti as u64);
            let mapped: Vec<usize> = tuple.iter().map(|&a| h.apply(a)).collect();
            if !dst.poset().leq(h.apply(value), dst.value(sym, &mapped)) {
                return Ok(OrderedHomReport {
                    verdict: Verdict::Fail(OrderedHomFailure::Op(OpWitness {
                        symbol: sig.name(sym).to_string(),
                        tuple,
                    })),
                    exhaustive: true,
                });
            }
        }
    }
    // clause (iii) first: it is cheap and gives the sharper witness when a
    // map also breaks continuity
    if require_atoms {
        for &a in src.atoms() {
            if !dst.poset().is_minimal(h.apply(a)) {
                return Ok(OrderedHomReport {
                    verdict: Verdict::Fail(OrderedHomFailure::AtomNotPreserved(a)),
                    exhaustive: true,
                });
            }
        }
    }
    // clause (ii)
    let n = src.carrier_size();
    let continuity_holds = |s: &BitSet| -> bool {
        let sup_src = match src.poset().sup(s) {
            Some(x) => x,
            None => return true, // vacuous; validated carriers have all sups
        };
        let image = h.image(s);
        dst.poset().sup(&image) == Some(h.apply(sup_src))
    };
    let mut exhaustive = true;
    if n <= caps.exhaustive_carrier {
        for s in nonempty_subsets(n) {
            if !continuity_holds(&s) {
                return Ok(OrderedHomReport {
                    verdict: Verdict::Fail(OrderedHomFailure::Continuity(s)),
                    exhaustive: true,
                });
            }
        }
    } else {
        exhaustive = false;
        let mut rng = ChaCha8Rng::seed_from_u64(0x636f6e74);
        for _ in 0..caps.samples {
            let s = BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
            if !s.is_empty() && !continuity_holds(&s) {
                return Ok(OrderedHomReport {
                    verdict: Verdict::Fail(OrderedHomFailure::Continuity(s)),
                    exhaustive: false,
                });
            }
        }
    }
    Ok(OrderedHomReport {
        verdict: Verdict::Pass,
        exhaustive,
    })
}

/// Monotonicity of every operation, checked literally: `a_i ≤ b_i` for all
/// `i` implies `σ(a⃗) ≤ σ(b⃗)`. Redundant with the atom-generation
/// condition; kept as an independent cross-check.
pub fn check_monotone(a: &OrderedAlgebra, caps: &Caps) -> Result<Verdict<OpWitness>> {
    let sig = a.signature();
    let n = a.carrier_size();
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        let total = tuple_count(n, arity, caps)?;
        for ti in 0..total {
            let lo = tuple_from_index(n, arity, ti);
            for tj in 0..total {
                let hi = tuple_from_index(n, arity, tj);
                if lo.iter().zip(&hi).all(|(&x, &y)| a.poset().leq(x, y))
                    && !a.poset().leq(a.value(sym, &lo), a.value(sym, &hi))
                {
                    return Ok(Verdict::Fail(OpWitness {
                        symbol: sig.name(sym).to_string(),
                        tuple: lo,
                    }));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Standard deterministic bottom-up term evaluation.
pub fn eval_term_ord(
    a: &OrderedAlgebra,
    t: &Term,
    valuation: &BTreeMap<String, usize>,
) -> Result<usize> {
    match t {
        Term::Var(v) => {
            let &e = valuation
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            if e >= a.carrier_size() {
                return Err(Error::BadIndex {
                    index: e,
                    size: a.carrier_size(),
                });
            }
            Ok(e)
        }
        Term::App(symbol, args) => {
            let sym = a
                .signature()
                .index_of(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
            let arity = a.signature().arity(sym);
            if args.len() != arity {
                return Err(Error::ArityMismatch {
                    symbol: symbol.clone(),
                    arity,
                    got: args.len(),
                });
            }
            let sub: Vec<usize> = args
                .iter()
                .map(|s| eval_term_ord(a, s, valuation))
                .collect::<Result<_>>()?;
            Ok(a.value(sym, &sub))
        }
    }
}

/// `A_{σ(a⃗)} = ∪ {A_{σ(c⃗)} : c_i ∈ A_{a_i}}` in a validated ordered
/// algebra, exhaustively over symbols and tuples.
pub fn check_atoms_of_operations(a: &OrderedAlgebra, caps: &Caps) -> Result<Verdict<OpWitness>> {
    let sig = a.signature();
    let n = a.carrier_size();
    let cert = a.certificate();
    for sym in 0..sig.len() {
        let arity = sig.arity(sym);
        let total = tuple_count(n, arity, caps)?;
        for ti in 0..total {
            let tuple = tuple_from_index(n, arity, ti);
            let lhs = &cert.atom_sets[a.value(sym, &tuple)];
            let mut rhs = BitSet::empty(n);
            let atom_lists: Vec<Vec<usize>> =
                tuple.iter().map(|&x| cert.atom_sets[x].iter().collect()).collect();
            let mut atom_tuple = vec![0usize; arity];
            union_result_atoms(a, sym, &atom_lists, 0, &mut atom_tuple, &mut rhs);
            if lhs != &rhs {
                return Ok(Verdict::Fail(OpWitness {
                    symbol: sig.name(sym).to_string(),
                    tuple,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

fn union_result_atoms(
    a: &OrderedAlgebra,
    sym: usize,
    atom_lists: &[Vec<usize>],
    pos: usize,
    atom_tuple: &mut Vec<usize>,
    out: &mut BitSet,
) {
    if pos == atom_lists.len() {
        out.union_in_place(&a.certificate().atom_sets[a.value(sym, atom_tuple)]);
        return;
    }
    for &x in &atom_lists[pos] {
        atom_tuple[pos] = x;
        union_result_atoms(a, sym, atom_lists, pos + 1, atom_tuple, out);
    }
}
