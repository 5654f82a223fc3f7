//! Signatures, finite universes, tuple spaces and terms.

use crate::bits::{nonempty_subsets, BitSet};
use crate::error::{Caps, Error, Result};

/// An algebraic signature: operation symbols with arities. Nullary symbols
/// are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: Vec<(S, usize)>) -> Result<Self> {
        let symbols: Vec<(String, usize)> =
            symbols.into_iter().map(|(n, a)| (n.into(), a)).collect();
        for (i, (name, _)) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|(m, _)| m == name) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn empty() -> Self {
        Signature { symbols: vec![] }
    }

    /// The signature with a single unary symbol `s`, as used throughout the
    /// worked examples.
    pub fn unary_s() -> Self {
        Signature::new(vec![("s", 1)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i].0
    }

    pub fn arity(&self, i: usize) -> usize {
        self.symbols[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(n, _)| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(n, a)| (n.as_str(), *a))
    }
}

/// A finite, non-empty element universe. Elements are dense indices
/// `0..size`; labels exist for parsing and reporting only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        Ok(Universe { labels })
    }

    /// Universe `{0, 1, .., n-1}` with numeric labels.
    pub fn of_size(n: usize) -> Result<Self> {
        Universe::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }
}

/// A Σ-term over named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn app(symbol: &str, args: Vec<Term>) -> Term {
        Term::App(symbol.to_string(), args)
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// `base^n` with a cap check, as the size of the tuple space `A^n`.
pub fn tuple_count(base: usize, n: usize, caps: &Caps) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(base as u64)
            .filter(|&t| t <= caps.tuple_space)
            .ok_or(Error::CapExceeded {
                what: "tuple space |A|^n",
                actual: (base as u128).pow(n as u32),
                cap: caps.tuple_space as u128,
            })?;
    }
    Ok(total)
}

/// All `n`-tuples over `0..base` in lexicographic order; `n = 0` yields one
/// empty tuple.
pub fn tuples(base: usize, n: usize, caps: &Caps) -> Result<impl Iterator<Item = Vec<usize>>> {
    let count = tuple_count(base, n, caps)?;
    Ok((0..count).map(move |i| tuple_from_index(base, n, i)))
}

/// Index of a tuple in the lexicographic order, with the first component
/// most significant.
pub fn tuple_index(base: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * base + a)
}

pub fn tuple_from_index(base: usize, n: usize, mut index: u64) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = (index % base as u64) as usize;
        index /= base as u64;
    }
    t
}

/// All non-empty subsets of a universe, in deterministic mask order.
pub fn enumerate_nonempty_subsets(u: &Universe, caps: &Caps) -> Result<Vec<BitSet>> {
    if u.size() > caps.subset_universe {
        return Err(Error::CapExceeded {
            what: "universe size for subset enumeration",
            actual: u.size() as u128,
            cap: caps.subset_universe as u128,
        });
    }
    Ok(nonempty_subsets(u.size()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_space_sizes() {
        let caps = Caps::default();
        assert_eq!(tuples(2, 2, &caps).unwrap().count(), 4);
        assert_eq!(tuples(3, 2, &caps).unwrap().count(), 9);
        // nullary convention: exactly one empty tuple
        let ts: Vec<_> = tuples(3, 0, &caps).unwrap().collect();
        assert_eq!(ts, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn tuple_index_roundtrip() {
        for i in 0..27u64 {
            let t = tuple_from_index(3, 3, i);
            assert_eq!(tuple_index(3, &t) as u64, i);
        }
    }

    #[test]
    fn subset_enumeration_count() {
        let u = Universe::new(vec!["a", "b", "c"]).unwrap();
        let subs = enumerate_nonempty_subsets(&u, &Caps::default()).unwrap();
        assert_eq!(subs.len(), 7);
        let mut dedup = subs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 7);
    }

    #[test]
    fn subset_enumeration_cap() {
        let u = Universe::of_size(21).unwrap();
        assert!(matches!(
            enumerate_nonempty_subsets(&u, &Caps::default()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn universe_rejects_empty_and_duplicates() {
        assert!(matches!(
            Universe::new(Vec::<&str>::new()),
            Err(Error::EmptyUniverse)
        ));
        assert!(matches!(
            Universe::new(vec!["a", "a"]),
            Err(Error::DuplicateElement(_))
        ));
    }
}
