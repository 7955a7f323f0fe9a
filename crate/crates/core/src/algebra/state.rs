//! Validated wrappers: Hermitian observables and density matrices.

use super::eigen::{eigh_symmetrized, eigvalsh_symmetrized, Eigen, HERMITIAN_REL_TOL};
use super::matrix::ComplexMatrix;
use crate::error::{validation, Result};
use crate::scalar::Real;

/// Trace deviation accepted for a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted for a density matrix.
pub const POSITIVITY_FLOOR: f64 = -1e-10;

/// A labelled Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianObservable<T: Real> {
    matrix: ComplexMatrix<T>,
    label: String,
}

impl<T: Real> HermitianObservable<T> {
    /// Validates Hermiticity to `1e-12` relative and stores `(A + A†)/2`.
    pub fn new(matrix: ComplexMatrix<T>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if !matrix.is_finite() {
            return Err(validation!("observable `{label}` has non-finite entries"));
        }
        if matrix.dim() == 0 {
            return Err(validation!("observable `{label}` is empty"));
        }
        if !matrix.is_hermitian(T::tol(HERMITIAN_REL_TOL)) {
            return Err(validation!("observable `{label}` is not Hermitian"));
        }
        Ok(Self { matrix: matrix.hermitian_part(), label })
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix<T>, label: String) -> Self {
        Self { matrix, label }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eig(&self) -> Result<Eigen<T>> {
        eigh_symmetrized(&self.matrix)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// A positive semidefinite, unit-trace operator on a tensor product of
/// factors with dimensions `factor_dims`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
    factor_dims: Vec<usize>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates trace, Hermiticity and positivity (floor `-1e-10`).
    pub fn new(matrix: ComplexMatrix<T>, factor_dims: Vec<usize>) -> Result<Self> {
        Self::with_positivity_floor(matrix, factor_dims, T::lit(POSITIVITY_FLOOR))
    }

    /// Like [`DensityMatrix::new`] with a caller-chosen positivity floor.
    pub fn with_positivity_floor(matrix: ComplexMatrix<T>, factor_dims: Vec<usize>, floor: T) -> Result<Self> {
        check_factor_dims(matrix.dim(), &factor_dims)?;
        if !matrix.is_finite() {
            return Err(validation!("density matrix has non-finite entries"));
        }
        if !matrix.is_hermitian(T::tol(HERMITIAN_REL_TOL)) {
            return Err(validation!("density matrix is not Hermitian"));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::tol(TRACE_TOL) || tr.im.abs() > T::tol(TRACE_TOL) {
            return Err(validation!("density matrix trace {} differs from 1", tr));
        }
        let matrix = matrix.hermitian_part();
        let min = eigvalsh_symmetrized(&matrix)?[0];
        if min < floor.min(-T::tol(-POSITIVITY_FLOOR)) {
            return Err(validation!("density matrix has negative eigenvalue {:e}", min));
        }
        Ok(Self { matrix, factor_dims })
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalized here.
    pub fn pure(psi: &[crate::scalar::C<T>], factor_dims: Vec<usize>) -> Result<Self> {
        check_factor_dims(psi.len(), &factor_dims)?;
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(validation!("state vector has zero or non-finite norm"));
        }
        let unit: Vec<_> = psi.iter().map(|&z| z / norm).collect();
        Ok(Self { matrix: ComplexMatrix::outer(&unit), factor_dims })
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(factor_dims: Vec<usize>) -> Self {
        let d: usize = factor_dims.iter().product();
        Self { matrix: ComplexMatrix::identity(d).scale(T::one() / T::lit(d as f64)), factor_dims }
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix<T>, factor_dims: Vec<usize>) -> Self {
        debug_assert_eq!(matrix.dim(), factor_dims.iter().product::<usize>());
        Self { matrix, factor_dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Reinterprets the tensor-factor structure; the product must match.
    pub fn with_factor_dims(self, factor_dims: Vec<usize>) -> Result<Self> {
        check_factor_dims(self.dim(), &factor_dims)?;
        Ok(Self { factor_dims, ..self })
    }

    /// Ascending eigenvalues only.
    pub fn spectrum(&self) -> Result<Vec<T>> {
        eigvalsh_symmetrized(&self.matrix)
    }

    pub fn eig(&self) -> Result<Eigen<T>> {
        eigh_symmetrized(&self.matrix)
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        self.matrix.trace_product(&self.matrix).re
    }

    /// Convex combination `t·self + (1−t)·other`.
    pub fn mix(&self, other: &Self, t: T) -> Result<Self> {
        if self.factor_dims != other.factor_dims {
            return Err(validation!("cannot mix states with different factor dimensions"));
        }
        let mut m = self.matrix.scale(t);
        m.add_scaled(crate::scalar::re(T::one() - t), &other.matrix);
        Ok(Self { matrix: m, factor_dims: self.factor_dims.clone() })
    }

    /// Conjugation `U ρ U†` by a unitary.
    pub fn conjugate_by(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(validation!("unitary of dimension {} acting on dimension {}", u.dim(), self.dim()));
        }
        let m = u.matmul(&self.matrix).matmul(&u.adjoint()).hermitian_part();
        Ok(Self { matrix: m, factor_dims: self.factor_dims.clone() })
    }
}

pub(crate) fn check_factor_dims(dim: usize, factor_dims: &[usize]) -> Result<()> {
    if factor_dims.is_empty() || factor_dims.contains(&0) {
        return Err(validation!("factor dimensions must be a non-empty list of positive integers"));
    }
    let prod: usize = factor_dims.iter().product();
    if prod != dim {
        return Err(validation!("factor dimensions {:?} multiply to {prod}, matrix has dimension {dim}", factor_dims));
    }
    Ok(())
}
