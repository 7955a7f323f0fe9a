//! Maximum-entropy density matrices, their free-energy duality, entanglement
//! measures, spin-chain models and Lindblad dynamics.
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`). The aliases below
//! fix the scalar for the common cases.

// `!(x > 0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod maxent;
pub mod models;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type Matrix = algebra::ComplexMatrix<f64>;
pub type Density = algebra::DensityMatrix<f64>;
pub type Observable = algebra::HermitianObservable<f64>;
pub type Observables = maxent::ObservableSet<f64>;
pub type Lambda = maxent::Multipliers<f64>;
pub type Ensemble = maxent::GibbsEnsemble<f64>;
pub type Lindblad = dynamics::LindbladSpec<f64>;

pub type Matrix32 = algebra::ComplexMatrix<f32>;
pub type Density32 = algebra::DensityMatrix<f32>;
pub type Observable32 = algebra::HermitianObservable<f32>;
pub type Observables32 = maxent::ObservableSet<f32>;
pub type Lambda32 = maxent::Multipliers<f32>;
pub type Ensemble32 = maxent::GibbsEnsemble<f32>;
pub type Lindblad32 = dynamics::LindbladSpec<f32>;
