//! Exact Waring-type decompositions over finite fields of odd order, with
//! independent brute-force oracles.
//!
//! The library covers, at desk scale (q up to 10^4 for field arithmetic,
//! q <= 13 for the exhaustive verifications):
//!
//! - [`field`]: GF(p^n) arithmetic, quadratic characters, square roots,
//!   Galois trace, and the canonical additive character.
//! - [`vector`]: lengths and spheres in F_q^d, and constructive
//!   decompositions of vectors into unit vectors with guaranteed counts.
//! - [`triangle`]: invariants, congruence, and the census of congruence
//!   classes of origin-pinned triangles in the plane.
//! - [`orthogonal`]: O(d; q), constructive isometries, and exact-count
//!   decompositions of matrices into sums of orthogonal matrices.
//! - [`spectrum`]: eigenvalues of the Cayley digraphs attached to these
//!   generator sets, via character sums, with closed forms and bound checks.
//! - [`oracle`]: BFS sumset closure giving exact minimal summand counts and
//!   diameters, used to certify everything above.
//! - [`verify`]: the ledger of machine-checkable claims binding the
//!   constructions to the oracles.

pub mod error;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod orthogonal;
pub mod spectrum;
pub mod triangle;
pub mod vector;
pub mod verify;
pub mod wire;

pub use error::{Error, Result};
pub use field::{make_field, FieldElement, FieldSpec, LegendreValue};
pub use matrix::FqMatrix;
pub use oracle::{Diameter, DistanceMap};
pub use orthogonal::{OrthSumDecomposition, OrthogonalMatrix};
pub use spectrum::{ConnectionSet, SpectrumReport};
pub use triangle::TriangleInvariant;
pub use vector::{FqVector, UnitSumDecomposition};
pub use verify::{LedgerRow, VerifyConfig};
