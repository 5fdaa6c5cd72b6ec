//! Exact-arithmetic straight-tableau bases for row-convex Schur, Weyl, and
//! super-Schur modules, with a letterplace expansion oracle backing every
//! identity the algorithms emit.
//!
//! The crate is organized around:
//! - [`alphabet`], [`shape`], [`tableau`]: signed alphabets, row-convex
//!   shapes, tableaux, column words, straightness, and straight filling;
//! - [`letterplace`]: the supersymmetric polynomial algebra over exact
//!   rationals with its divided-powers integral form and diagonal orders;
//! - [`straighten`]: the two-row exchange identities and the straightening
//!   algorithm, oracle-checked term by term;
//! - [`basis`]: echelon certificates, flags, coordinates, characters;
//! - [`ring`]: products of straight generators, degree-2 Groebner relations,
//!   and subduction against the straight generators;
//! - [`branching`]: strips, dominance, the flagged branching identity, and
//!   filtration rank checks;
//! - [`verify`]: the named verification suites run by the CLI.

pub mod alphabet;
pub mod basis;
pub mod branching;
pub mod error;
pub mod json;
pub mod letterplace;
pub mod ring;
pub mod shape;
pub mod straighten;
pub mod tableau;
pub mod verify;

pub use alphabet::{Alphabet, Letter, Parity, SignedLetter};
pub use error::{Error, Result};
pub use shape::{make_shape, RowConvexShape, RowInterval};
pub use straighten::{row_straighten, straighten_tableau, syzygy, FormalTableauSum, SyzygySpec};
pub use tableau::{
    deruyts, enumerate_straight, frame_tableau, straight_filling, Straightness, Tableau,
    WordVariant,
};
