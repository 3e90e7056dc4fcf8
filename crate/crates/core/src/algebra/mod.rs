//! Elements of `Q(ℤ ⋊ P)` as exact sums of canonical monomials.

mod affine;
mod element;
mod monomial;
mod repr;

pub use affine::{to_affine_pieces, PartialAffineMap};
pub use element::Element;
pub use monomial::Monomial;
pub use repr::{NormBounds, SparseVec, DEFAULT_PROBE_WINDOW};
