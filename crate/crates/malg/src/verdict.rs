//! Pass/fail verdicts carrying the earliest counterexample.
//!
//! Checkers scan in a canonical order (symbol index, then tuple index, then
//! element index) and stop at the first violation, so a witness doubles as a
//! reproducible regression fixture.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(w) => Verdict::Fail(f(w)),
        }
    }
}

impl<W: fmt::Display> fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail(w) => write!(f, "FAIL: {w}"),
        }
    }
}

/// Where a homomorphism condition first breaks: a symbol and argument tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpWitness {
    pub symbol: String,
    pub tuple: Vec<usize>,
}

impl fmt::Display for OpWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.symbol)?;
        for (i, a) in self.tuple.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}
