//! Entanglement quantifiers: Wootters concurrence, negativity, log-negativity
//! and the PPT flag.
//!
//! Every measure is a function of the density matrix alone, so composed with
//! [`crate::maxent::gibbs_state`] it becomes a function of the multipliers
//! (and, through the Legendre duality, of the mean values).

use std::ops::Range;

use crate::algebra::eigen::eigvalsh_symmetrized;
use crate::algebra::{kron, partial_trace, partial_transpose_range, ComplexMatrix, DensityMatrix};
use crate::error::{validation, Result};
use crate::models::{pauli, Pauli};
use crate::scalar::Real;

/// Eigenvalues at or above `-1e-10` are clamped to zero before square roots,
/// and negativities within `1e-10` of zero are reported as zero.
pub const CLAMP_TOL: f64 = 1e-10;

/// A split of the tensor factors into two non-empty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    pub fn new(left: Vec<usize>, right: Vec<usize>) -> Self {
        Self { left, right }
    }

    /// First `⌊n/2⌋` factors against the rest.
    pub fn halves(n_factors: usize) -> Self {
        let cut = n_factors / 2;
        Self { left: (0..cut).collect(), right: (cut..n_factors).collect() }
    }

    /// Checks the partition and returns the factor range to transpose: the
    /// right group when it is contiguous, otherwise the left group. Both give
    /// the same spectrum because `ρ^{T_A} = (ρ^{T_B})ᵀ`.
    pub fn transposed_range(&self, n_factors: usize) -> Result<Range<usize>> {
        if self.left.is_empty() || self.right.is_empty() {
            return Err(validation!("bipartition groups must both be non-empty"));
        }
        let mut all: Vec<usize> = self.left.iter().chain(&self.right).copied().collect();
        all.sort_unstable();
        if all != (0..n_factors).collect::<Vec<_>>() {
            return Err(validation!(
                "bipartition {:?} | {:?} does not partition {} factors",
                self.left,
                self.right,
                n_factors
            ));
        }
        contiguous(&self.right).or_else(|| contiguous(&self.left)).ok_or_else(|| {
            validation!("neither side of {:?} | {:?} is a contiguous factor group", self.left, self.right)
        })
    }
}

fn contiguous(group: &[usize]) -> Option<Range<usize>> {
    let mut g = group.to_vec();
    g.sort_unstable();
    let (lo, hi) = (*g.first()?, *g.last()?);
    (hi - lo + 1 == g.len()).then_some(lo..hi + 1)
}

/// Measures of one state across one bipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport<T: Real> {
    /// Wootters concurrence; present only for two-qubit states.
    pub concurrence: Option<T>,
    pub negativity: T,
    pub log_negativity: T,
    pub ppt: bool,
    pub bipartition: Bipartition,
}

/// Negativity `(‖ρ^{T_B}‖₁ − 1)/2`, log-negativity `ln(2N + 1)`, and whether the
/// partial transpose is positive (min eigenvalue `≥ −1e-10`).
pub fn negativity<T: Real>(rho: &DensityMatrix<T>, bipartition: &Bipartition) -> Result<(T, T, bool)> {
    let range = bipartition.transposed_range(rho.factor_dims().len())?;
    let pt = partial_transpose_range(rho.matrix(), rho.factor_dims(), range)?;
    let spectrum = eigvalsh_symmetrized(&pt)?;
    let tol = T::tol(CLAMP_TOL);
    let norm: T = spectrum.iter().map(|w| w.abs()).sum();
    let mut n = (norm - T::one()) * T::lit(0.5);
    if n.abs() <= tol {
        n = T::zero();
    }
    let log_n = (T::lit(2.0) * n + T::one()).ln();
    let ppt = spectrum[0] >= -tol;
    Ok((n, log_n, ppt))
}

/// Wootters concurrence of a two-qubit state.
///
/// With `ρ = ΨΨ†`, `Ψ = V√D`, the square roots `λᵢ` of the eigenvalues of
/// `ρ ρ̃` are the singular values of `τ = Ψᵀ(σʸ⊗σʸ)Ψ`. They are read off the
/// Hermitian dilation `[[0, τ], [τ†, 0]]` (eigenvalues `±λᵢ`), which keeps
/// them accurate to machine precision even for rank-deficient states.
pub fn concurrence_two_qubit<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    if rho.factor_dims() != [2, 2] {
        return Err(validation!("concurrence needs factor dimensions [2, 2], got {:?}", rho.factor_dims()));
    }
    let tol = T::tol(CLAMP_TOL);
    let eig = rho.eig()?;
    let roots: Vec<T> = eig.values.iter().map(|&w| clamp_nonneg(w, tol).sqrt()).collect();
    let psi = ComplexMatrix::from_fn(4, |i, j| eig.vectors[(i, j)] * roots[j]);
    let yy = kron(&pauli::<T>(Pauli::Y), &pauli(Pauli::Y));
    let tau = psi.transpose().matmul(&yy).matmul(&psi);
    let dilation = ComplexMatrix::from_fn(8, |i, j| match (i < 4, j < 4) {
        (true, false) => tau[(i, j - 4)],
        (false, true) => tau[(j, i - 4)].conj(),
        _ => crate::scalar::c(T::zero(), T::zero()),
    });
    // Ascending spectrum: the last four entries are λ₄ ≤ λ₃ ≤ λ₂ ≤ λ₁.
    let w = eigvalsh_symmetrized(&dilation)?;
    let c = w[7] - w[6] - w[5] - w[4];
    Ok(c.max(T::zero()).min(T::one()))
}

fn clamp_nonneg<T: Real>(x: T, tol: T) -> T {
    if x < T::zero() && x >= -tol {
        T::zero()
    } else {
        x.max(T::zero())
    }
}

/// Concurrence between qubits `i` and `j` of an `n`-qubit state.
pub fn pairwise_concurrence<T: Real>(rho: &DensityMatrix<T>, i: usize, j: usize) -> Result<T> {
    if rho.factor_dims().iter().any(|&d| d != 2) {
        return Err(validation!("pairwise concurrence needs qubit factors, got {:?}", rho.factor_dims()));
    }
    if i == j {
        return Err(validation!("pairwise concurrence needs two distinct sites, got {i} twice"));
    }
    let pair = partial_trace(rho, &[i, j])?;
    concurrence_two_qubit(&pair)
}

/// Full report for `rho` across `bipartition`; concurrence is filled in when
/// the state is a two-qubit state.
pub fn entanglement_report<T: Real>(
    rho: &DensityMatrix<T>,
    bipartition: &Bipartition,
) -> Result<EntanglementReport<T>> {
    let (negativity, log_negativity, ppt) = negativity(rho, bipartition)?;
    let concurrence = if rho.factor_dims() == [2, 2] { Some(concurrence_two_qubit(rho)?) } else { None };
    Ok(EntanglementReport { concurrence, negativity, log_negativity, ppt, bipartition: bipartition.clone() })
}
