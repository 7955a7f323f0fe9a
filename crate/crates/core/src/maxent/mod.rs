//! Maximum-entropy states and the Legendre duality between conjugate fields
//! `λ_l` and mean values `a_l = tr(ρ A_l)`.
//!
//! The Gibbs state `ρ₀ = exp(−Σ λ_l A_l)/Z` minimizes the free-energy
//! functional `F[ρ] = Σ λ_l tr(ρ A_l) + tr(ρ ln ρ)`; its minimum is
//! `−ln Z(λ)`, the gap `F[ρ] − F[ρ₀]` is the relative entropy `S(ρ‖ρ₀)`, and
//! `∂(−ln Z)/∂λ_l = a_l`. [`maxent_invert`] recovers `λ` from target means.

mod gibbs;
mod inversion;

use std::sync::Arc;

pub use gibbs::{
    effective_hamiltonian, free_energy, free_energy_functional, gibbs_state, grad_free_energy, kubo_mori_hessian,
    log_partition, mean_values, relative_entropy, von_neumann_entropy, GibbsEnsemble, DEGENERATE_GAP, ENTROPY_CUTOFF,
};
pub use inversion::{maxent_invert, InversionResult};

use crate::algebra::state::check_factor_dims;
use crate::algebra::HermitianObservable;
use crate::error::{validation, Result};
use crate::scalar::Real;

/// Non-empty ordered list of observables of equal dimension with unique labels.
#[derive(Debug, Clone)]
pub struct ObservableSet<T: Real> {
    observables: Arc<[HermitianObservable<T>]>,
    factor_dims: Vec<usize>,
}

impl<T: Real> ObservableSet<T> {
    pub fn new(observables: Vec<HermitianObservable<T>>) -> Result<Self> {
        let Some(first) = observables.first() else {
            return Err(validation!("observable set must contain at least one observable"));
        };
        let dim = first.dim();
        for (i, a) in observables.iter().enumerate() {
            if a.dim() != dim {
                return Err(validation!("observable `{}` has dimension {}, expected {dim}", a.label(), a.dim()));
            }
            if observables[..i].iter().any(|b| b.label() == a.label()) {
                return Err(validation!("duplicate observable label `{}`", a.label()));
            }
        }
        Ok(Self { observables: observables.into(), factor_dims: vec![dim] })
    }

    /// Attaches a tensor-factor structure used for the states built from this set.
    pub fn with_factor_dims(mut self, factor_dims: Vec<usize>) -> Result<Self> {
        check_factor_dims(self.dim(), &factor_dims)?;
        self.factor_dims = factor_dims;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.observables[0].dim()
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn iter(&self) -> impl Iterator<Item = &HermitianObservable<T>> {
        self.observables.iter()
    }

    pub fn get(&self, i: usize) -> Option<&HermitianObservable<T>> {
        self.observables.get(i)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.observables.iter().map(|a| a.label()).collect()
    }
}

/// Conjugate field parameters `λ_l`, one per observable.
#[derive(Debug, Clone, PartialEq)]
pub struct Multipliers<T: Real>(Vec<T>);

impl<T: Real> Multipliers<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.iter().any(|x| !x.is_finite()) {
            return Err(validation!("multipliers must be finite"));
        }
        Ok(Self(values))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![T::zero(); len])
    }

    /// Convenience constructor from `f64` literals; panics on non-finite input.
    pub fn from_f64(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| T::lit(x)).collect()).expect("finite multipliers")
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, s: T) -> Self {
        Self(self.0.iter().map(|&x| x * s).collect())
    }

    pub(crate) fn check_pairing(&self, obs: &ObservableSet<T>) -> Result<()> {
        if self.len() != obs.len() {
            return Err(validation!("{} multipliers for {} observables", self.len(), obs.len()));
        }
        Ok(())
    }
}

impl<T: Real> From<Multipliers<T>> for Vec<T> {
    fn from(m: Multipliers<T>) -> Self {
        m.0
    }
}
