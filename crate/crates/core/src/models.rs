//! Spin-chain observable sets and reference states.
//!
//! Couplings and fields never appear inside the observables. A chain is
//! decomposed into a few operators and the physical parameters enter through
//! the multipliers, e.g. `λ = (βJ, βg)` for the transverse-field Ising chain
//! with `J = 1`. Site 0 is the leftmost Kronecker factor, i.e. the most
//! significant bit of a basis index.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::{ComplexMatrix, DensityMatrix, HermitianObservable};
use crate::error::{validation, Result};
use crate::maxent::{gibbs_state, Multipliers, ObservableSet};
use crate::scalar::{c, re, Real, C};

pub const MIN_SITES: usize = 2;
pub const MAX_SITES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// 2×2 Pauli matrix.
pub fn pauli<T: Real>(p: Pauli) -> ComplexMatrix<T> {
    let (o, l) = (T::zero(), T::one());
    let data = match p {
        Pauli::X => [c(o, o), c(l, o), c(l, o), c(o, o)],
        Pauli::Y => [c(o, o), c(o, -l), c(o, l), c(o, o)],
        Pauli::Z => [c(l, o), c(o, o), c(o, o), c(-l, o)],
    };
    ComplexMatrix::from_vec(2, data.to_vec()).expect("2x2")
}

/// Adds `coef · ⊗_k σ_k` (identity on unlisted sites) to `out`, an operator on `n` qubits.
fn add_pauli_string<T: Real>(out: &mut ComplexMatrix<T>, n: usize, ops: &[(usize, Pauli)], coef: T) {
    let dim = 1usize << n;
    for col in 0..dim {
        let mut row = col;
        let mut phase = re(coef);
        for &(site, p) in ops {
            let shift = n - 1 - site;
            let bit = (col >> shift) & 1;
            match p {
                Pauli::X => row ^= 1 << shift,
                Pauli::Y => {
                    row ^= 1 << shift;
                    phase *= if bit == 0 { c(T::zero(), T::one()) } else { c(T::zero(), -T::one()) };
                }
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        out[(row, col)] += phase;
    }
}

fn check_sites(n: usize) -> Result<()> {
    if !(1..=MAX_SITES).contains(&n) {
        return Err(validation!("site count {n} outside 1..={MAX_SITES}"));
    }
    Ok(())
}

/// `I ⊗ … ⊗ σ ⊗ … ⊗ I` with `σ` on `site`.
pub fn site_operator<T: Real>(p: Pauli, site: usize, n: usize) -> Result<HermitianObservable<T>> {
    check_sites(n)?;
    if site >= n {
        return Err(validation!("site {site} out of range for {n} sites"));
    }
    let mut m = ComplexMatrix::zeros(1 << n);
    add_pauli_string(&mut m, n, &[(site, p)], T::one());
    Ok(HermitianObservable::from_parts_unchecked(m, format!("{p:?}{site}").to_lowercase()))
}

/// Nearest-neighbour bonds. Periodic chains add the `(n−1, 0)` bond when `n > 2`;
/// for `n = 2` that bond would duplicate `(0, 1)` and is omitted.
pub fn bonds(n: usize, periodic: bool) -> Vec<(usize, usize)> {
    let mut b: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    if periodic && n > 2 {
        b.push((n - 1, 0));
    }
    b
}

fn chain_observable<T: Real>(
    n: usize,
    label: &str,
    terms: impl IntoIterator<Item = (Vec<(usize, Pauli)>, T)>,
) -> HermitianObservable<T> {
    let mut m = ComplexMatrix::zeros(1 << n);
    for (ops, coef) in terms {
        add_pauli_string(&mut m, n, &ops, coef);
    }
    HermitianObservable::from_parts_unchecked(m, label.to_string())
}

fn qubit_set<T: Real>(n: usize, obs: Vec<HermitianObservable<T>>) -> Result<ObservableSet<T>> {
    ObservableSet::new(obs)?.with_factor_dims(vec![2; n])
}

fn check_chain(n: usize) -> Result<()> {
    if !(MIN_SITES..=MAX_SITES).contains(&n) {
        return Err(validation!("chain length {n} outside {MIN_SITES}..={MAX_SITES}"));
    }
    Ok(())
}

/// Transverse-field Ising chain: `bond = −Σ σᶻᵢσᶻᵢ₊₁`, `field = −Σ σˣᵢ`.
/// With `λ = (βJ, βg)` the effective Hamiltonian is `β H_TFIM`.
pub fn tfim_observables<T: Real>(n: usize, periodic: bool) -> Result<ObservableSet<T>> {
    check_chain(n)?;
    let m1 = -T::one();
    let bond = chain_observable(
        n,
        "bond",
        bonds(n, periodic).into_iter().map(|(i, j)| (vec![(i, Pauli::Z), (j, Pauli::Z)], m1)),
    );
    let field = chain_observable(n, "field", (0..n).map(|i| (vec![(i, Pauli::X)], m1)));
    qubit_set(n, vec![bond, field])
}

/// XXZ chain: `xy = Σ (σˣσˣ + σʸσʸ)`, `zz = Σ σᶻσᶻ` over nearest neighbours.
/// With `λ = (βJ, βJΔ)` the effective Hamiltonian is `β H_XXZ`.
pub fn xxz_observables<T: Real>(n: usize, periodic: bool) -> Result<ObservableSet<T>> {
    check_chain(n)?;
    let b = bonds(n, periodic);
    let xy = chain_observable(
        n,
        "xy",
        b.iter().flat_map(|&(i, j)| {
            [(vec![(i, Pauli::X), (j, Pauli::X)], T::one()), (vec![(i, Pauli::Y), (j, Pauli::Y)], T::one())]
        }),
    );
    let zz = chain_observable(n, "zz", b.iter().map(|&(i, j)| (vec![(i, Pauli::Z), (j, Pauli::Z)], T::one())));
    qubit_set(n, vec![xy, zz])
}

/// Isotropic Heisenberg chain in a longitudinal field:
/// `exchange = Σ σ⃗ᵢ·σ⃗ᵢ₊₁`, `field = −Σ σᶻᵢ`; `λ = (βJ, βh)`.
pub fn heisenberg_observables<T: Real>(n: usize, periodic: bool) -> Result<ObservableSet<T>> {
    check_chain(n)?;
    let exchange = chain_observable(
        n,
        "exchange",
        bonds(n, periodic)
            .into_iter()
            .flat_map(|(i, j)| [Pauli::X, Pauli::Y, Pauli::Z].map(|p| (vec![(i, p), (j, p)], T::one()))),
    );
    let field = chain_observable(n, "field", (0..n).map(|i| (vec![(i, Pauli::Z)], -T::one())));
    qubit_set(n, vec![exchange, field])
}

/// Single observable `σ⃗₁·σ⃗₂` on two qubits: triplet eigenvalue `+1`, singlet `−3`.
pub fn heisenberg_dimer<T: Real>() -> ObservableSet<T> {
    let dimer = chain_observable(2, "dimer", [Pauli::X, Pauli::Y, Pauli::Z].map(|p| (vec![(0, p), (1, p)], T::one())));
    qubit_set(2, vec![dimer]).expect("valid two-qubit set")
}

/// Total magnetization `Σ σᶻᵢ`.
pub fn total_magnetization<T: Real>(n: usize) -> Result<HermitianObservable<T>> {
    check_sites(n)?;
    Ok(chain_observable(n, "mz", (0..n).map(|i| (vec![(i, Pauli::Z)], T::one()))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Tfim,
    Xxz,
    Heisenberg,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Tfim, ModelKind::Xxz, ModelKind::Heisenberg];

    /// Name of the control parameter this model sweeps.
    pub fn control(self) -> Control {
        match self {
            ModelKind::Tfim | ModelKind::Heisenberg => Control::G,
            ModelKind::Xxz => Control::Delta,
        }
    }

    /// Human-readable description printed by the CLI `info` command.
    pub fn documentation(self) -> &'static str {
        match self {
            ModelKind::Tfim => {
                "TFIM: transverse-field Ising chain H = -J Σ σᶻᵢσᶻᵢ₊₁ - g Σ σˣᵢ with J = 1.\n\
                 observables: bond = -Σ σᶻᵢσᶻᵢ₊₁, field = -Σ σˣᵢ\n\
                 multipliers: (β, β·g); control: g (critical near g = 1 in the thermodynamic limit)"
            }
            ModelKind::Xxz => {
                "XXZ: H = J Σ (σˣᵢσˣᵢ₊₁ + σʸᵢσʸᵢ₊₁ + Δ σᶻᵢσᶻᵢ₊₁) with J = 1.\n\
                 observables: xy = Σ (σˣσˣ + σʸσʸ), zz = Σ σᶻσᶻ\n\
                 multipliers: (β, β·Δ); control: delta (the model's `delta` key is ignored while sweeping)"
            }
            ModelKind::Heisenberg => {
                "HEISENBERG: H = J Σ σ⃗ᵢ·σ⃗ᵢ₊₁ - g Σ σᶻᵢ with J = 1.\n\
                 observables: exchange = Σ σ⃗ᵢ·σ⃗ᵢ₊₁, field = -Σ σᶻᵢ\n\
                 multipliers: (β, β·g); control: g (longitudinal field)"
            }
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Tfim => "TFIM",
            ModelKind::Xxz => "XXZ",
            ModelKind::Heisenberg => "HEISENBERG",
        })
    }
}

impl FromStr for ModelKind {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "TFIM" => Ok(ModelKind::Tfim),
            "XXZ" => Ok(ModelKind::Xxz),
            "HEISENBERG" => Ok(ModelKind::Heisenberg),
            _ => Err(validation!("unknown model `{s}` (expected TFIM, XXZ or HEISENBERG)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Control {
    G,
    Delta,
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Control::G => "g",
            Control::Delta => "delta",
        })
    }
}

/// A spin chain with `2 ≤ n ≤ 12` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinChainSpec {
    pub n: usize,
    pub periodic: bool,
    pub model: ModelKind,
    /// XXZ anisotropy Δ; ignored by the other models.
    pub anisotropy: f64,
}

impl SpinChainSpec {
    pub fn new(model: ModelKind, n: usize, periodic: bool, anisotropy: f64) -> Result<Self> {
        check_chain(n)?;
        if !anisotropy.is_finite() {
            return Err(validation!("anisotropy must be finite"));
        }
        Ok(Self { n, periodic, model, anisotropy })
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn observables<T: Real>(&self) -> Result<ObservableSet<T>> {
        match self.model {
            ModelKind::Tfim => tfim_observables(self.n, self.periodic),
            ModelKind::Xxz => xxz_observables(self.n, self.periodic),
            ModelKind::Heisenberg => heisenberg_observables(self.n, self.periodic),
        }
    }

    /// `λ = (β, β·control)`: the second multiplier carries `g` or `Δ`.
    pub fn multipliers<T: Real>(&self, beta: f64, control: f64) -> Result<Multipliers<T>> {
        Multipliers::new(vec![T::lit(beta), T::lit(beta * control)])
    }
}

/// Named test states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceState {
    /// `(|00⟩ + |11⟩)/√2`.
    BellPhiPlus,
    /// `p |Ψ⁻⟩⟨Ψ⁻| + (1 − p) I/4`, separable iff `p ≤ 1/3`.
    Werner(f64),
    /// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits.
    Ghz(usize),
    /// Equal superposition of single excitations on `n` qubits.
    W(usize),
    /// Gibbs state of the Heisenberg dimer `σ⃗₁·σ⃗₂` at multiplier `β`.
    DimerGibbs(f64),
}

pub fn reference_state<T: Real>(state: ReferenceState) -> Result<DensityMatrix<T>> {
    let zero = C::<T>::zero();
    let h = T::FRAC_1_SQRT_2();
    match state {
        ReferenceState::BellPhiPlus => DensityMatrix::pure(&[re(h), zero, zero, re(h)], vec![2, 2]),
        ReferenceState::Werner(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(validation!("Werner parameter p = {p} outside [0, 1]"));
            }
            let singlet = DensityMatrix::pure(&[zero, re(h), re(-h), zero], vec![2, 2])?;
            singlet.mix(&DensityMatrix::maximally_mixed(vec![2, 2]), T::lit(p))
        }
        ReferenceState::Ghz(n) => {
            check_sites(n)?;
            let mut psi = vec![zero; 1 << n];
            psi[0] = re(T::one());
            psi[(1 << n) - 1] = re(T::one());
            DensityMatrix::pure(&psi, vec![2; n])
        }
        ReferenceState::W(n) => {
            check_sites(n)?;
            let mut psi = vec![zero; 1 << n];
            for site in 0..n {
                psi[1 << site] = re(T::one());
            }
            DensityMatrix::pure(&psi, vec![2; n])
        }
        ReferenceState::DimerGibbs(beta) => {
            if !beta.is_finite() {
                return Err(validation!("β must be finite"));
            }
            let (_, rho) = gibbs_state(&heisenberg_dimer::<T>(), &Multipliers::from_f64(&[beta]))?;
            Ok(rho)
        }
    }
}
