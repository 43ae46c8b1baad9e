//! Exact rational dense linear algebra.
//!
//! Everything here is decided in exact arithmetic: rank, nullspaces, span
//! dimensions, subspace intersections and PSD membership. No tolerances.

pub mod mat;
pub mod psd;
pub mod rat;
pub mod subspace;
pub mod sym;

pub use mat::Mat;
pub use psd::{is_pd, is_psd, ldlt, Ldlt};
pub use rat::{format_rat, half, int, one, parse_rat, rat, zero, Rat};
pub use subspace::{span_dim, subspace_intersection, SubspaceBasis};
pub use sym::{congruence, labels, numeric_labels, sym_dim, symmetrize, Labels, SymMat};

/// `rank_nullspace` as a free function over a rectangular matrix.
pub fn rank_nullspace(m: &Mat) -> (usize, SubspaceBasis) {
    m.rank_nullspace()
}

/// `binom(k + 1, 2)`.
pub fn tri(k: usize) -> usize {
    k * (k + 1) / 2
}
