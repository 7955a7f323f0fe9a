//! Fixed-step Lindblad (GKSL) propagation of density matrices.
//!
//! `dρ/dt = −i[H, ρ] + Σ_k γ_k (L_k ρ L_k† − ½{L_k† L_k, ρ})`, integrated by
//! classic RK4. After every step the state is re-Hermitized and its trace
//! renormalized; positivity is monitored, never projected.

use std::collections::BTreeMap;

use crate::algebra::eigen::eigvalsh_symmetrized;
use crate::algebra::{ComplexMatrix, DensityMatrix, HermitianObservable};
use crate::entanglement::{concurrence_two_qubit, negativity, Bipartition};
use crate::error::{validation, Error, Result};
use crate::maxent::von_neumann_entropy;
use crate::scalar::{c, re, Real};

/// A step whose state has an eigenvalue below this aborts the propagation.
pub const POSITIVITY_ABORT: f64 = -1e-6;
/// Positivity floor of the stored states.
pub const STORED_POSITIVITY_FLOOR: f64 = -1e-8;
/// Steps per unit of `t_end · (‖H‖ + Σ γ_k ‖L_k‖²)` in [`default_steps`].
pub const STEPS_PER_UNIT: f64 = 200.0;

/// Generator data: Hamiltonian, jump operators and their rates.
#[derive(Debug, Clone)]
pub struct LindbladSpec<T: Real> {
    hamiltonian: HermitianObservable<T>,
    jump_ops: Vec<ComplexMatrix<T>>,
    rates: Vec<T>,
    // L_k† per jump operator and Σ γ_k L_k† L_k.
    jump_adjoints: Vec<ComplexMatrix<T>>,
    decay: ComplexMatrix<T>,
}

impl<T: Real> LindbladSpec<T> {
    pub fn new(hamiltonian: HermitianObservable<T>, jump_ops: Vec<ComplexMatrix<T>>, rates: Vec<T>) -> Result<Self> {
        let dim = hamiltonian.dim();
        if jump_ops.len() != rates.len() {
            return Err(validation!("{} jump operators but {} rates", jump_ops.len(), rates.len()));
        }
        for (k, (l, &g)) in jump_ops.iter().zip(&rates).enumerate() {
            if l.dim() != dim {
                return Err(validation!("jump operator {k} has dimension {}, Hamiltonian has {dim}", l.dim()));
            }
            if !l.is_finite() {
                return Err(validation!("jump operator {k} has non-finite entries"));
            }
            if !(g >= T::zero()) || !g.is_finite() {
                return Err(validation!("rate {k} must be finite and nonnegative, got {g}"));
            }
        }
        let jump_adjoints: Vec<_> = jump_ops.iter().map(ComplexMatrix::adjoint).collect();
        let mut decay = ComplexMatrix::zeros(dim);
        for ((l, ld), &g) in jump_ops.iter().zip(&jump_adjoints).zip(&rates) {
            decay.add_scaled(re(g), &ld.matmul(l));
        }
        Ok(Self { hamiltonian, jump_ops, rates, jump_adjoints, decay })
    }

    /// Closed evolution under `H`.
    pub fn unitary(hamiltonian: HermitianObservable<T>) -> Self {
        Self::new(hamiltonian, Vec::new(), Vec::new()).expect("no jump operators")
    }

    pub fn hamiltonian(&self) -> &HermitianObservable<T> {
        &self.hamiltonian
    }

    pub fn jump_ops(&self) -> &[ComplexMatrix<T>] {
        &self.jump_ops
    }

    pub fn rates(&self) -> &[T] {
        &self.rates
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }
}

/// Propagated states with derived time series.
#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    pub times: Vec<T>,
    pub states: Vec<DensityMatrix<T>>,
    /// `entropy`, `purity`, `energy` and `min_eigenvalue` always; `negativity`
    /// (half/half split) with at least two factors; `concurrence` for two qubits.
    pub series: BTreeMap<String, Vec<T>>,
    /// Largest `|tr ρ − 1|` seen before renormalization, divided by the step.
    pub max_trace_drift_rate: T,
}

impl<T: Real> Trajectory<T> {
    pub fn series(&self, name: &str) -> Option<&[T]> {
        self.series.get(name).map(Vec::as_slice)
    }

    pub fn final_state(&self) -> &DensityMatrix<T> {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Right-hand side of the GKSL equation at `rho`.
pub fn lindblad_rhs<T: Real>(rho: &ComplexMatrix<T>, spec: &LindbladSpec<T>) -> Result<ComplexMatrix<T>> {
    if rho.dim() != spec.dim() {
        return Err(validation!("state of dimension {} for a generator of dimension {}", rho.dim(), spec.dim()));
    }
    Ok(rhs_unchecked(rho, spec))
}

fn rhs_unchecked<T: Real>(rho: &ComplexMatrix<T>, spec: &LindbladSpec<T>) -> ComplexMatrix<T> {
    let (o, half) = (T::zero(), T::lit(0.5));
    let mut out = spec.hamiltonian.matrix().commutator(rho).scale_complex(c(o, -T::one()));
    out.add_scaled(re(-half), &spec.decay.anticommutator(rho));
    for ((l, ld), &g) in spec.jump_ops.iter().zip(&spec.jump_adjoints).zip(&spec.rates) {
        if g > o {
            out.add_scaled(re(g), &l.matmul(rho).matmul(ld));
        }
    }
    out
}

/// `⌈200 · t_end · (‖H‖ + Σ γ_k ‖L_k‖²)⌉`, at least 1. Norms are cheap upper
/// bounds of the operator norm: `‖H‖_∞` and `√(‖L‖₁‖L‖_∞)`.
pub fn default_steps<T: Real>(spec: &LindbladSpec<T>, t_end: T) -> usize {
    let h = spec.hamiltonian.matrix().inf_norm().as_f64();
    let jumps: f64 = spec
        .jump_ops
        .iter()
        .zip(&spec.jump_adjoints)
        .zip(&spec.rates)
        .map(|((l, ld), g)| g.as_f64() * l.inf_norm().as_f64() * ld.inf_norm().as_f64())
        .sum();
    let steps = (STEPS_PER_UNIT * t_end.as_f64() * (h + jumps)).ceil();
    if steps.is_finite() && steps >= 1.0 {
        steps as usize
    } else {
        1
    }
}

/// Integrates from `rho0` over `[0, t_end]` in `steps` equal RK4 steps. The
/// trajectory stores the initial state and every step (`steps + 1` entries).
pub fn propagate<T: Real>(
    rho0: &DensityMatrix<T>,
    spec: &LindbladSpec<T>,
    t_end: T,
    steps: usize,
) -> Result<Trajectory<T>> {
    if rho0.dim() != spec.dim() {
        return Err(validation!("state of dimension {} for a generator of dimension {}", rho0.dim(), spec.dim()));
    }
    if steps == 0 {
        return Err(validation!("steps must be at least 1"));
    }
    if !(t_end > T::zero()) || !t_end.is_finite() {
        return Err(validation!("t_end must be positive and finite, got {t_end}"));
    }

    let h = t_end / T::lit(steps as f64);
    let dims = rho0.factor_dims().to_vec();
    let mut recorder = Recorder::new(spec, &dims);
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut drift_rate = T::zero();

    let mut rho = rho0.matrix().clone();
    let min0 = eigvalsh_symmetrized(rho0.matrix())?[0];
    recorder.record(rho0, min0)?;
    times.push(T::zero());
    states.push(rho0.clone());

    let (half, sixth, two) = (T::lit(0.5), T::one() / T::lit(6.0), T::lit(2.0));
    for step in 1..=steps {
        let k1 = rhs_unchecked(&rho, spec);
        let k2 = rhs_unchecked(&axpy(&rho, h * half, &k1), spec);
        let k3 = rhs_unchecked(&axpy(&rho, h * half, &k2), spec);
        let k4 = rhs_unchecked(&axpy(&rho, h, &k3), spec);
        let mut incr = k1;
        incr.add_scaled(re(two), &k2);
        incr.add_scaled(re(two), &k3);
        incr.add_scaled(re(T::one()), &k4);
        rho.add_scaled(re(h * sixth), &incr);

        rho = rho.hermitian_part();
        let tr = rho.trace().re;
        drift_rate = drift_rate.max((tr - T::one()).abs() / h);
        if !(tr > T::zero()) || !rho.is_finite() {
            return Err(Error::Integration(format!("state lost normalization at step {step}; reduce the step size")));
        }
        rho = rho.scale(T::one() / tr);

        let min = eigvalsh_symmetrized(&rho)?[0];
        if min < T::lit(POSITIVITY_ABORT) {
            return Err(Error::Integration(format!(
                "eigenvalue {min:e} at step {step} (t = {}) violates positivity; reduce the step size",
                h * T::lit(step as f64)
            )));
        }
        let state = DensityMatrix::from_parts_unchecked(rho.clone(), dims.clone());
        recorder.record(&state, min)?;
        times.push(h * T::lit(step as f64));
        states.push(state);
    }

    Ok(Trajectory { times, states, series: recorder.finish(), max_trace_drift_rate: drift_rate })
}

fn axpy<T: Real>(x: &ComplexMatrix<T>, a: T, y: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let mut out = x.clone();
    out.add_scaled(re(a), y);
    out
}

struct Recorder<'a, T: Real> {
    hamiltonian: &'a ComplexMatrix<T>,
    split: Option<Bipartition>,
    two_qubit: bool,
    series: BTreeMap<String, Vec<T>>,
}

impl<'a, T: Real> Recorder<'a, T> {
    fn new(spec: &'a LindbladSpec<T>, dims: &[usize]) -> Self {
        Self {
            hamiltonian: spec.hamiltonian.matrix(),
            split: (dims.len() >= 2).then(|| Bipartition::halves(dims.len())),
            two_qubit: dims == [2, 2],
            series: BTreeMap::new(),
        }
    }

    fn push(&mut self, name: &str, v: T) {
        self.series.entry(name.to_string()).or_default().push(v);
    }

    fn record(&mut self, rho: &DensityMatrix<T>, min_eigenvalue: T) -> Result<()> {
        self.push("entropy", von_neumann_entropy(rho)?);
        self.push("purity", rho.purity());
        self.push("energy", rho.matrix().trace_product(self.hamiltonian).re);
        self.push("min_eigenvalue", min_eigenvalue);
        if let Some(split) = &self.split {
            let (n, _, _) = negativity(rho, split)?;
            self.push("negativity", n);
        }
        if self.two_qubit {
            self.push("concurrence", concurrence_two_qubit(rho)?);
        }
        Ok(())
    }

    fn finish(self) -> BTreeMap<String, Vec<T>> {
        self.series
    }
}
