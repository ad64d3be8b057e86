//! Exact matrices and spectra for graphs: Laplacians, incidence matrices,
//! edge Laplacians, characteristic polynomials, exact and floating
//! eigenvalues.

mod charpoly;
mod jacobi;
mod matrix;
mod roots;

pub use charpoly::{charpoly, charpoly_i128, nonzero_spectra_match, CharPoly};
pub use jacobi::{eig_double, jacobi_eigenvalues};
pub use matrix::{
    arc_list, directed_incidence, edge_laplacian_arcs, edge_laplacian_oriented, laplacian,
    oriented_incidence, signless_laplacian, IntMatrix, IntSymMatrix, Orientation,
    ScaledSymMatrix,
};
pub use roots::{refine_root, spectrum, Eigenvalue, IsolatedRoot, Spectrum};
