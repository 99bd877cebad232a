//! Dense complex linear algebra shared by every other module: determinants,
//! Hermitian eigenvalues, weighted orthonormalization, orthogonal
//! polynomials and Gauss–Laguerre quadrature, plus exact integer
//! determinants for the combinatorial code paths.

mod eigen;
mod exact;
mod matrix;
mod orthonormal;
mod orthopoly;
mod quadrature;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use exact::{bareiss_det, det_rational};
pub use matrix::{cholesky, det, DenseMatrix};
pub(crate) use matrix::solve_lower;
pub use orthonormal::{orthonormalize, WeightedInnerProduct};
pub use orthopoly::OrthonormalPolynomials;
pub use quadrature::{gauss_laguerre, QuadratureRule};
