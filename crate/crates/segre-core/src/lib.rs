//! Exact-arithmetic toolkit for quadratic graded algebras and their twisted
//! Segre products.
//!
//! The crate is organized in layers:
//!
//! * [`linalg`]: rational scalars, dense matrices, and echelonized subspaces.
//!   Everything above computes in these.
//! * [`algebra`]: quadratic presentations `T(V)/(R)`, degreewise bases and
//!   normal forms, Hilbert functions, quadratic duals.
//! * [`twist`]: twisting seeds `U (x) V -> V (x) U`, their extensions to
//!   tensor powers, validity criteria, and the induced matrix-valued
//!   homomorphisms.
//! * [`segre`]: twisted Segre product presentations, the componentwise
//!   model, smash-product windows, and the Zhang-twist comparison.
//! * [`normality`]: degree-2 normal elements, normalizing automorphisms,
//!   regularity windows, and a support-restricted search.
//! * [`clifford`]: the finite-dimensional localization algebra obtained by
//!   stabilizing right multiplication by a normal element.
//! * [`findim`]: structure-constant algebras, radicals, centers, Wedderburn
//!   block types, and explicit isomorphism verification.
//!
//! All arithmetic is exact over the rationals. Operations that would need an
//! irrational quantity (for example an eigenvalue change of basis) report an
//! explicit error instead of approximating.

pub mod algebra;
pub mod clifford;
pub mod findim;
pub mod json;
pub mod linalg;
pub mod normality;
mod poly;
pub mod segre;
pub mod twist;

pub use algebra::{AlgebraError, DegreeCache, FreeElement, GeneratorSet, QuadraticPresentation, Word};
pub use clifford::{CliffordAlgebra, CliffordError, StabilizationData, TElementTable};
pub use findim::{FinDimAlgebra, FinDimError, MatrixPair, WedderburnOutcome};
pub use linalg::{LinAlgError, Matrix, Scalar, Subspace};
pub use normality::{NormalCertificate, NormalityError, RegularityReport, SearchReport};
pub use segre::{SegreComponentModel, SegreError, SegrePresentation, SmashTruncation};
pub use twist::{TwistData, TwistError, TwistingSeed, Twist2x2};
