//! Finite posets with explicit order matrices, and supremum/infimum by
//! bound scanning.

use std::fmt;

use crate::bits::BitSet;
use crate::verdict::Verdict;

/// A validated finite partial order. `up[a]` is the up-set of `a` (all `b`
/// with `a ≤ b`), `down[a]` the down-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

/// The poset axiom that failed, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetViolation {
    Reflexivity(usize),
    Antisymmetry(usize, usize),
    Transitivity(usize, usize, usize),
}

impl fmt::Display for PosetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetViolation::Reflexivity(a) => write!(f, "reflexivity fails at {a}"),
            PosetViolation::Antisymmetry(a, b) => {
                write!(f, "antisymmetry fails at ({a},{b})")
            }
            PosetViolation::Transitivity(a, b, c) => {
                write!(f, "transitivity fails at ({a},{b},{c})")
            }
        }
    }
}

/// Validates a square order matrix and builds the poset, or names the first
/// failed axiom in scan order.
pub fn validate_poset(leq: &[Vec<bool>]) -> Result<FinitePoset, PosetViolation> {
    let n = leq.len();
    for (a, row) in leq.iter().enumerate() {
        assert_eq!(row.len(), n, "order matrix must be square");
        if !row[a] {
            return Err(PosetViolation::Reflexivity(a));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(PosetViolation::Antisymmetry(a, b));
            }
        }
    }
    let up: Vec<BitSet> = (0..n)
        .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| leq[a][b])))
        .collect();
    // a ≤ b requires up[b] ⊆ up[a]; the first missing c names the triple
    for a in 0..n {
        for b in up[a].iter() {
            if !up[b].is_subset_of(&up[a]) {
                let c = up[b].difference(&up[a]).first().unwrap();
                return Err(PosetViolation::Transitivity(a, b, c));
            }
        }
    }
    let down: Vec<BitSet> = (0..n)
        .map(|b| BitSet::from_indices(n, (0..n).filter(|&a| leq[a][b])))
        .collect();
    Ok(FinitePoset { size: n, up, down })
}

impl FinitePoset {
    /// Builds the poset directly from up-sets known to satisfy the axioms
    /// (used by the powerset constructions, where the order is inclusion).
    pub(crate) fn from_up_sets_unchecked(up: Vec<BitSet>) -> FinitePoset {
        let n = up.len();
        let down: Vec<BitSet> = (0..n)
            .map(|b| BitSet::from_indices(n, (0..n).filter(|&a| up[a].contains(b))))
            .collect();
        FinitePoset { size: n, up, down }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn upper_bounds(&self, s: &BitSet) -> BitSet {
        let mut ub = BitSet::full(self.size);
        for a in s.iter() {
            ub.intersect_in_place(&self.up[a]);
        }
        ub
    }

    pub fn lower_bounds(&self, s: &BitSet) -> BitSet {
        let mut lb = BitSet::full(self.size);
        for a in s.iter() {
            lb.intersect_in_place(&self.down[a]);
        }
        lb
    }

    /// Least upper bound of a non-empty subset, or `None` when it does not
    /// exist. The empty set has no supremum in a bottomless poset.
    pub fn sup(&self, s: &BitSet) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        let ub = self.upper_bounds(s);
        let least = ub.iter().find(|&u| ub.is_subset_of(&self.up[u]));
        least
    }

    /// Greatest lower bound, or `None`.
    pub fn inf(&self, s: &BitSet) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        let lb = self.lower_bounds(s);
        let greatest = lb.iter().find(|&l| lb.is_subset_of(&self.down[l]));
        greatest
    }

    pub fn sup_pair(&self, a: usize, b: usize) -> Option<usize> {
        self.sup(&BitSet::from_indices(self.size, [a, b]))
    }

    pub fn inf_pair(&self, a: usize, b: usize) -> Option<usize> {
        self.inf(&BitSet::from_indices(self.size, [a, b]))
    }

    /// The unique maximum, if any.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.size).find(|&t| self.down[t].len() == self.size)
    }

    /// Minimal elements (atoms of a bottomless Boolean algebra).
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.down[a].len() == 1).collect()
    }

    pub fn is_minimal(&self, a: usize) -> bool {
        self.down[a].len() == 1
    }
}

/// Checks that in this poset the sup of the lower bounds of `{a, b}`, when
/// it exists, is itself a lower bound of `{a, b}` — exhaustively over all
/// pairs.
pub fn check_sup_of_lower_bounds(p: &FinitePoset) -> Verdict<(usize, usize)> {
    for a in 0..p.size() {
        for b in 0..p.size() {
            let lb = p.lower_bounds(&BitSet::from_indices(p.size(), [a, b]));
            if let Some(s) = p.sup(&lb) {
                if !(p.leq(s, a) && p.leq(s, b)) {
                    return Verdict::Fail((a, b));
                }
            }
        }
    }
    Verdict::Pass
}
