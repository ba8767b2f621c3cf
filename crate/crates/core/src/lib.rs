//! Exact-arithmetic toolkit for classifying anticommutative algebras with
//! large annihilator through central extensions: linear algebra over ℚ,
//! ℚ(i) and F_p, cocycles and second cohomology, automorphism orbits on
//! Grassmannians, extension construction/decomposition, and an embedded
//! catalog of the small-dimensional classification.

pub mod algebra;
pub mod aut;
pub mod catalog;
pub mod classify;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod fp;
pub mod iso;
pub mod json;
pub mod matrix;
pub mod scalar;
pub mod subspace;
pub mod verify;

pub use algebra::{Algebra, Fingerprint, TraceFormClass};
pub use aut::{automorphisms, orbit_reps, AutSet, Orbit, OrbitPartition};
pub use cohomology::{h2, Cocycle, CocycleTuple, CohomologySpace};
pub use error::{Error, Result};
pub use extensions::{central_extension, check_ann_formula, decompose, lift_iso, Extension};
pub use iso::{distinguish, iso_search, verify_iso, IsoSearch, Verdict};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;
