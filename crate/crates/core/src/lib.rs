//! Exact computation in boundary quotient C*-algebras `Q(ℤ ⋊ P)` for `P ⊆ ℕ^×`:
//! the generators-and-relations calculus, gauge grading and Fourier
//! coefficients, Følner sequences with their Fejér kernels, and Fejér sums.

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod expr;
pub mod fejer;
pub mod folner;
pub mod gauge;
pub mod json;
pub mod psd;
pub mod scalar;
pub mod thompson;

pub use algebra::{Element, Monomial, PartialAffineMap, SparseVec};
pub use dynamics::{Degree, SystemDescriptor};
pub use error::{Error, Result};
pub use folner::{FolnerSequence, HElem};
pub use scalar::{Coeff, Rational};
