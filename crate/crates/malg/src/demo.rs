//! The packaged two-element demonstration pair.
//!
//! Both structures live over the signature with a single unary symbol `s`
//! and the universe `{0, 1}`. In the first, `s` always returns `{1}`; in
//! the second, `s` always returns `{0, 1}`. They are not isomorphic as
//! multialgebras (result cardinalities differ), yet their plain powerset
//! algebras are isomorphic — which is exactly why the powerset functor
//! needs the order structure on its target.

use crate::bits::BitSet;
use crate::core::{Signature, Universe};
use crate::multialg::MultiAlgebra;

/// The pair `(a, b)`: `s_a(x) = {1}` and `s_b(x) = {0, 1}` for both `x`.
pub fn pair() -> (MultiAlgebra, MultiAlgebra) {
    let sig = Signature::unary_s();
    let u = Universe::of_size(2).unwrap();
    let one = BitSet::singleton(2, 1);
    let both = BitSet::full(2);
    let a = MultiAlgebra::new(sig.clone(), u.clone(), vec![vec![one.clone(), one]]).unwrap();
    let b = MultiAlgebra::new(sig, u, vec![vec![both.clone(), both]]).unwrap();
    (a, b)
}

/// The explicit bijection `{0}↦{0}, {1}↦{0,1}, {0,1}↦{1}` between the two
/// powerset carriers, as a map on carrier indices (mask order).
pub fn plain_iso_map() -> Vec<usize> {
    // carrier order: {0} (mask 1), {1} (mask 2), {0,1} (mask 3)
    vec![0, 2, 1]
}
