//! Linear spaces of matrices attached to a coefficient matrix: the
//! centralizer {M : AM = MA} and the two-sided annihilator
//! {M : AM = 0 = MA}. Both are solved as kernels of Kronecker-lifted
//! systems, so the returned bases are canonical.

use crate::error::Result;
use crate::matrix::Matrix;

fn basis_from_system(system: &Matrix, n: usize) -> Vec<Matrix> {
    let f = system.field();
    system
        .kernel_basis()
        .iter()
        .map(|v| Matrix::from_vectorized(f, n, n, v).expect("kernel vector has n² entries"))
        .collect()
}

/// Canonical basis of {M : AM = MA}.
pub fn centralizer_basis(a: &Matrix) -> Result<Vec<Matrix>> {
    let n = a.require_square("centralizer argument")?;
    let id = Matrix::identity(a.field(), n);
    // vec(AM − MA) = (I ⊗ A − Aᵀ ⊗ I) vec(M)
    let system = &id.kron(a) - &a.transpose().kron(&id);
    Ok(basis_from_system(&system, n))
}

/// Canonical basis of {M : AM = 0 and MA = 0}.
pub fn annihilator_basis(a: &Matrix) -> Result<Vec<Matrix>> {
    let n = a.require_square("annihilator argument")?;
    let id = Matrix::identity(a.field(), n);
    let system = Matrix::vstack(&[id.kron(a), a.transpose().kron(&id)])?;
    Ok(basis_from_system(&system, n))
}
