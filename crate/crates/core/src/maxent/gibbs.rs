use super::{Multipliers, ObservableSet};
use crate::algebra::eigen::{eigh_symmetrized, eigvalsh_symmetrized};
use crate::algebra::{ComplexMatrix, DensityMatrix};
use crate::error::{validation, Error, Result};
use crate::scalar::{re, Real, C};

/// Eigenvalues of a density matrix below this are treated as exact zeros.
pub const ENTROPY_CUTOFF: f64 = 1e-14;
/// Spectral gaps below this use the coincident-limit Kubo–Mori kernel.
pub const DEGENERATE_GAP: f64 = 1e-10;
const SUPPORT_TOL: f64 = 1e-12;
const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// `Σ_l λ_l A_l`.
pub fn effective_hamiltonian<T: Real>(obs: &ObservableSet<T>, lambda: &Multipliers<T>) -> Result<ComplexMatrix<T>> {
    lambda.check_pairing(obs)?;
    let mut h = ComplexMatrix::zeros(obs.dim());
    for (a, &l) in obs.iter().zip(lambda.values()) {
        if l != T::zero() {
            h.add_scaled(re(l), a.matrix());
        }
    }
    Ok(h)
}

/// The Gibbs state of an observable set at fixed multipliers, together with
/// the spectral data every derived quantity is computed from.
///
/// Exponentials are evaluated relative to the lowest eigenvalue of the
/// effective Hamiltonian, so `ln Z = −shift + ln Σ exp(−(ε_i − shift))`
/// cannot overflow.
#[derive(Debug, Clone)]
pub struct GibbsEnsemble<T: Real> {
    obs: ObservableSet<T>,
    lambda: Multipliers<T>,
    eff_eigenvalues: Vec<T>,
    eff_eigenvectors: ComplexMatrix<T>,
    shift: T,
    z_shifted: T,
    probabilities: Vec<T>,
    ln_z: T,
    means: Vec<T>,
    entropy: T,
    rho: DensityMatrix<T>,
}

impl<T: Real> GibbsEnsemble<T> {
    pub fn new(obs: &ObservableSet<T>, lambda: &Multipliers<T>) -> Result<Self> {
        let h = effective_hamiltonian(obs, lambda)?;
        if !h.is_finite() {
            return Err(Error::Range("effective Hamiltonian is not finite".into()));
        }
        let eig = eigh_symmetrized(&h)?;
        let shift = eig.values[0];
        let weights: Vec<T> = eig.values.iter().map(|&e| (-(e - shift)).exp()).collect();
        let z_shifted: T = weights.iter().copied().sum();
        let ln_z_shifted = z_shifted.ln();
        let ln_z = ln_z_shifted - shift;
        if !ln_z.is_finite() {
            return Err(Error::Range(format!("ln Z overflowed (shift {shift:e})")));
        }
        let probabilities: Vec<T> = weights.iter().map(|&w| w / z_shifted).collect();
        // −Σ p ln p with ln p_i = −(ε_i − shift) − ln Z_shifted.
        let entropy = eig
            .values
            .iter()
            .zip(&probabilities)
            .map(|(&e, &p)| if p > T::zero() { p * (e - shift + ln_z_shifted) } else { T::zero() })
            .sum();

        let diag: Vec<C<T>> = probabilities.iter().map(|&p| re(p)).collect();
        let rho_m = eig.reconstruct_diag(&diag).hermitian_part();
        let rho = DensityMatrix::from_parts_unchecked(rho_m, obs.factor_dims().to_vec());
        let means = mean_values(obs, &rho)?;

        Ok(Self {
            obs: obs.clone(),
            lambda: lambda.clone(),
            eff_eigenvalues: eig.values,
            eff_eigenvectors: eig.vectors,
            shift,
            z_shifted,
            probabilities,
            ln_z,
            means,
            entropy,
            rho,
        })
    }

    pub fn observables(&self) -> &ObservableSet<T> {
        &self.obs
    }

    pub fn multipliers(&self) -> &Multipliers<T> {
        &self.lambda
    }

    /// Ascending spectrum of `Σ λ_l A_l`.
    pub fn eff_eigenvalues(&self) -> &[T] {
        &self.eff_eigenvalues
    }

    pub fn eff_eigenvectors(&self) -> &ComplexMatrix<T> {
        &self.eff_eigenvectors
    }

    /// Gibbs weights in the eigenbasis, aligned with [`Self::eff_eigenvalues`].
    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn ln_z(&self) -> T {
        self.ln_z
    }

    /// Minimum free energy `−ln Z`.
    pub fn free_energy(&self) -> T {
        -self.ln_z
    }

    /// Mean values `a_l = tr(ρ₀ A_l)`.
    pub fn means(&self) -> &[T] {
        &self.means
    }

    pub fn entropy(&self) -> T {
        self.entropy
    }

    /// Trace multiplier fixed by normalization: `λ₀ = ln Z − 1`.
    pub fn lambda0(&self) -> T {
        self.ln_z - T::one()
    }

    pub fn density_matrix(&self) -> &DensityMatrix<T> {
        &self.rho
    }

    pub fn into_density_matrix(self) -> DensityMatrix<T> {
        self.rho
    }

    /// `∂² ln Z / ∂λ_l ∂λ_m`, the Kubo–Mori (Duhamel) covariance of the observables.
    pub fn kubo_mori_hessian(&self) -> Vec<Vec<T>> {
        let n = self.eff_eigenvalues.len();
        let z_shifted = self.z_shifted;
        let eps: Vec<T> = self.eff_eigenvalues.iter().map(|&e| e - self.shift).collect();
        let gap_tol = T::tol(DEGENERATE_GAP);
        let mut kernel = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let gap = (eps[i] - eps[j]).abs();
                let low = eps[i].min(eps[j]);
                kernel[i * n + j] =
                    if gap > gap_tol { (-low).exp() * (-(-gap).exp_m1()) / gap } else { (-eps[i]).exp() } / z_shifted;
            }
        }

        let v = &self.eff_eigenvectors;
        let vh = v.adjoint();
        let rotated: Vec<ComplexMatrix<T>> = self.obs.iter().map(|a| vh.matmul(&a.matrix().matmul(v))).collect();
        let l_count = rotated.len();
        let mut hess = vec![vec![T::zero(); l_count]; l_count];
        for l in 0..l_count {
            for m in l..l_count {
                let (bl, bm) = (rotated[l].as_slice(), rotated[m].as_slice());
                let mut acc = T::zero();
                for (k, (x, y)) in bl.iter().zip(bm).enumerate() {
                    acc += kernel[k] * (x * y.conj()).re;
                }
                let h = acc - self.means[l] * self.means[m];
                hess[l][m] = h;
                hess[m][l] = h;
            }
        }
        hess
    }
}

/// `(ensemble, ρ₀)` with `ρ₀ = exp(−Σ λ_l A_l) / Z`.
pub fn gibbs_state<T: Real>(
    obs: &ObservableSet<T>,
    lambda: &Multipliers<T>,
) -> Result<(GibbsEnsemble<T>, DensityMatrix<T>)> {
    let ens = GibbsEnsemble::new(obs, lambda)?;
    let rho = ens.density_matrix().clone();
    Ok((ens, rho))
}

/// `ln Z(λ) = ln tr exp(−Σ λ_l A_l)`, by a shifted log-sum-exp over the spectrum.
pub fn log_partition<T: Real>(obs: &ObservableSet<T>, lambda: &Multipliers<T>) -> Result<T> {
    let h = effective_hamiltonian(obs, lambda)?;
    if !h.is_finite() {
        return Err(Error::Range("effective Hamiltonian is not finite".into()));
    }
    let values = eigvalsh_symmetrized(&h)?;
    let shift = values[0];
    let s: T = values.iter().map(|&e| (-(e - shift)).exp()).sum();
    let ln_z = s.ln() - shift;
    if !ln_z.is_finite() {
        return Err(Error::Range("ln Z overflowed".into()));
    }
    Ok(ln_z)
}

/// Minimum free energy `F[ρ₀] = −ln Z(λ)`.
pub fn free_energy<T: Real>(obs: &ObservableSet<T>, lambda: &Multipliers<T>) -> Result<T> {
    Ok(-log_partition(obs, lambda)?)
}

/// `S(ρ) = −Σ p ln p` over the spectrum, with `0 ln 0 = 0`.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let cutoff = T::tol(ENTROPY_CUTOFF);
    Ok(eigvalsh_symmetrized(rho.matrix())?.iter().filter(|&&p| p > cutoff).map(|&p| -p * p.ln()).sum())
}

/// `F[ρ] = Σ_l λ_l tr(ρ A_l) + tr(ρ ln ρ)`. The trace multiplier term is
/// omitted; on normalized states it only adds a constant.
pub fn free_energy_functional<T: Real>(
    rho: &DensityMatrix<T>,
    obs: &ObservableSet<T>,
    lambda: &Multipliers<T>,
) -> Result<T> {
    lambda.check_pairing(obs)?;
    let means = mean_values(obs, rho)?;
    let energy: T = means.iter().zip(lambda.values()).map(|(&a, &l)| a * l).sum();
    Ok(energy - von_neumann_entropy(rho)?)
}

/// Relative entropy `S(ρ‖σ) = tr ρ (ln ρ − ln σ)`.
///
/// Fails with a domain error if `ρ` has weight outside the support of `σ`.
pub fn relative_entropy<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(validation!("states of dimension {} and {} cannot be compared", rho.dim(), sigma.dim()));
    }
    if rho.matrix() == sigma.matrix() {
        return Ok(T::zero());
    }
    let neg_entropy = -von_neumann_entropy(rho)?;

    let eig = sigma.eig()?;
    let support = T::tol(SUPPORT_TOL);
    let r = eig.to_eigenbasis(rho.matrix());
    let mut cross = T::zero();
    for (k, &q) in eig.values.iter().enumerate() {
        let weight = r[(k, k)].re;
        if q > support {
            cross += weight * q.ln();
        } else if weight > support {
            return Err(Error::Domain(format!(
                "support of ρ is not contained in support of σ (weight {weight:e} on eigenvalue {q:e})"
            )));
        }
    }
    Ok(neg_entropy - cross)
}

/// `a_l = Re tr(ρ A_l)`; the imaginary residue must stay below `1e-10`.
pub fn mean_values<T: Real>(obs: &ObservableSet<T>, rho: &DensityMatrix<T>) -> Result<Vec<T>> {
    if rho.dim() != obs.dim() {
        return Err(validation!("state of dimension {} for observables of dimension {}", rho.dim(), obs.dim()));
    }
    obs.iter()
        .map(|a| {
            let t: C<T> = rho.matrix().trace_product(a.matrix());
            let scale = T::one().max(a.matrix().max_abs());
            if t.im.abs() > T::tol(IMAG_RESIDUE_TOL) * scale {
                return Err(validation!("tr(ρ {}) has imaginary residue {:e}", a.label(), t.im));
            }
            Ok(t.re)
        })
        .collect()
}

/// `∂F/∂λ_l = tr(ρ₀ A_l) = a_l`.
pub fn grad_free_energy<T: Real>(obs: &ObservableSet<T>, lambda: &Multipliers<T>) -> Result<Vec<T>> {
    Ok(GibbsEnsemble::new(obs, lambda)?.means)
}

/// Exact Hessian of `ln Z`, symmetric positive semidefinite.
pub fn kubo_mori_hessian<T: Real>(obs: &ObservableSet<T>, lambda: &Multipliers<T>) -> Result<Vec<Vec<T>>> {
    Ok(GibbsEnsemble::new(obs, lambda)?.kubo_mori_hessian())
}
