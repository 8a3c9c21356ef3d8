//! Principal realization data of the affine Lie algebra D_n^(1) and the
//! Hirota bilinear equations of the associated hierarchy.
//!
//! The crate has three layers:
//!
//! * [`algebra`] — the 2n-by-2n matrix realization of the simple Lie
//!   algebra of type D_n: involution, Weyl generators, Killing form,
//!   grading element and principal-gradation projectors.
//! * [`heisenberg`] — the cyclic element, the principal Heisenberg basis
//!   T_j, eigenvectors, root matrices, the dual bases, and the hierarchy
//!   coefficients beta_{r,j} and g_r (extracted from the matrices and
//!   from closed forms).
//! * [`series`] / [`hirota`] — truncated series arithmetic over
//!   exponent-indexed variables, the two bilinear-equation evaluators
//!   (operator form and residue form), vertex operators, the Fock-space
//!   action of the algebra, and explicit equation emission.
//!
//! [`verify`] packages the structure and identity checks behind a
//! machine-readable report.

pub mod algebra;
pub mod error;
pub mod heisenberg;
pub mod hirota;
pub mod matrix;
pub mod series;
pub mod verify;

pub use algebra::{AlgebraConfig, GradingElement, WeylSystem};
pub use error::{Error, Result};
pub use heisenberg::{DualBases, EigenvalueTag, ExponentLabel, HierarchyCoefficients};
pub use hirota::{Generator, HierarchyEquation, OrbitCheck};
pub use matrix::{C64, SquareMatrix};
pub use series::{Exponent, Family, LaurentBlock, TruncatedSeries, VarSpace};

