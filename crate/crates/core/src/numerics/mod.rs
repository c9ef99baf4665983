//! Dense complex linear algebra and stable combinatorics.
//!
//! Everything here is plain `f64` arithmetic. Operator norms and Hermitian
//! eigenvalues come from a cyclic complex Jacobi solver, which is accurate to
//! a few ulps of the matrix norm for the small matrices used in this crate.

pub(crate) mod dd;
mod eigen;
mod matrix;
mod special;

pub use eigen::{
    hermitian_eigen, max_eigenvalue_hermitian, min_eigenvalue_hermitian, operator_norm,
    unitary_exp, HermitianEigen, HERMITIAN_TOL,
};
pub use matrix::{orthonormalize, CMatrix, CVector};
pub use special::{ln_factorial, log_binomial};

/// `a ⊗ b`
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kron(b)
}

/// Trace over the first factor of a `(dim_a·dim_b)`-square matrix.
pub fn partial_trace_first(m: &CMatrix, dim_a: usize, dim_b: usize) -> crate::Result<CMatrix> {
    m.partial_trace_first(dim_a, dim_b)
}

/// Tolerance for density-matrix checks (Hermiticity, trace, positivity).
pub const DENSITY_TOL: f64 = 1e-9;

/// Checks that `m` is a density matrix: square, Hermitian, unit trace and
/// positive semidefinite, each within `tol`.
pub fn validate_density(m: &CMatrix, tol: f64) -> crate::Result<()> {
    use crate::error::invalid;

    m.ensure_finite()?;
    if !m.is_square() {
        return Err(invalid!(
            "density matrix is {}x{}, expected square",
            m.rows(),
            m.cols()
        ));
    }
    let defect = m.hermiticity_defect();
    if defect > tol {
        return Err(invalid!(
            "density matrix is not Hermitian (defect {defect:.3e})"
        ));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return Err(invalid!(
            "density matrix trace is {} + {}i, expected 1",
            tr.re,
            tr.im
        ));
    }
    let lowest = eigen::jacobi_hermitian(m).values[0];
    if lowest < -tol {
        return Err(invalid!(
            "density matrix has negative eigenvalue {lowest:.3e}"
        ));
    }
    Ok(())
}
