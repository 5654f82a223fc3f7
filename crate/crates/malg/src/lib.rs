//! Finite multialgebras, ordered algebras over complete atomic bottomless
//! Boolean orders, and the constructions translating between them.
//!
//! The library works with explicit finite structures: a multialgebra
//! assigns each operation symbol a table of non-empty result sets, and an
//! ordered algebra pairs deterministic tables with a validated order on
//! the carrier. The [`functors`] module builds the powerset structure of
//! a multialgebra and the atom structure of an ordered algebra, checks
//! that the two constructions invert each other, and exposes the hom-set
//! bijection between them. The [`monad`] module iterates the powerset
//! construction and checks the unit and flattening laws. The [`variants`]
//! module relaxes the setting to partial multialgebras and set-valued
//! morphisms.
//!
//! Everything is exhaustively checked where the carrier permits; larger
//! instances fall back to seeded sampling and say so in their reports.
//! Size limits are explicit ([`error::Caps`]) and exceeding one is an
//! error, never a silent truncation.

// P and A in function names follow the notation for the two constructions.
#![allow(non_snake_case)]

pub mod bits;
pub mod cabl;
pub mod core;
pub mod demo;
pub mod error;
pub mod functors;
pub mod generate;
pub mod monad;
pub mod multialg;
pub mod ordalg;
pub mod poset;
pub mod variants;
pub mod verdict;
