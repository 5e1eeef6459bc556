//! Exact computation of the Leray spectral sequence of a finite
//! simplicial map, together with the objects it organizes: Leray
//! cosheaves and cosheaf homology, level-set persistence barcodes over a
//! triangulated segment, and Reeb spaces.
//!
//! All arithmetic is exact, over a prime field or the rationals; there
//! is no floating point in the crate. Core types are generic over a
//! [`field::Field`]; the concrete fields live in [`field`] with aliases
//! below.

pub mod corpus;
pub mod cosheaf;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod levelset;
pub mod linalg;
pub mod reeb;
pub mod simplicial;
pub mod simplicial_map;
pub mod spectral;

pub use error::Error;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::{LinearMap, Matrix, QuotientSpace, Subspace};
pub use simplicial::{Simplex, SimplicialComplex};
pub use simplicial_map::SimplicialMap;

/// Matrix over a run-time prime field.
pub type FpMatrix = Matrix<PrimeField>;
/// Matrix over the rationals.
pub type QMatrix = Matrix<Rationals>;
/// Subspace over a run-time prime field.
pub type FpSubspace = Subspace<PrimeField>;
/// Subspace over the rationals.
pub type QSubspace = Subspace<Rationals>;

/// The default coefficient field `F_2`.
pub fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}
