//! Exact linear algebra over ℚ and ℚ(√−d).

mod filtration;
mod mat;
mod subspace;

pub use filtration::{Filtration, FiltrationKind};
pub use mat::{hermitian_positive_definite, inertia, jordan_type, Mat};
pub use subspace::Subspace;

#[cfg(test)]
mod tests;
