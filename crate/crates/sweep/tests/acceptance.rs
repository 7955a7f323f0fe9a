//! Acceptance suite: one PASS/FAIL line per criterion. Every tolerance and
//! time budget is pinned below. Exits nonzero if any criterion fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use maxent_core::algebra::{
    hermitian_eig, kron_all, random_density_matrix, random_hermitian, random_uniform, unitary_propagator,
    ComplexMatrix, DensityMatrix, HermitianObservable,
};
use maxent_core::dynamics::{default_steps, propagate, LindbladSpec};
use maxent_core::entanglement::{concurrence_two_qubit, negativity, pairwise_concurrence, Bipartition};
use maxent_core::maxent::{
    free_energy, free_energy_functional, gibbs_state, grad_free_energy, kubo_mori_hessian, maxent_invert,
    relative_entropy, Multipliers, ObservableSet,
};
use maxent_core::models::{pauli, reference_state, tfim_observables, Pauli, ReferenceState};
use maxent_core::C;
use maxent_sweep::output::render_csv;
use maxent_sweep::{parse_config_str, run_sweep, write_csv};

type M = ComplexMatrix<f64>;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

// 1: gradient of the free energy.
const C1_INSTANCES: u64 = 50;
const C1_FD_STEP: f64 = 1e-4;
const C1_REL_TOL: f64 = 1e-6;
const C1_BUDGET: Duration = Duration::from_secs(5);
// 2: free-energy gap.
const C2_PAIRS: u64 = 500;
const C2_TOL: f64 = 1e-9;
const C2_FLOOR: f64 = -1e-10;
const C2_BUDGET: Duration = Duration::from_secs(10);
// 3: inversion round trip.
const C3_SEEDS: u64 = 50;
const C3_SOLVER_TOL: f64 = 1e-9;
const C3_LAMBDA_TOL: f64 = 1e-6;
const C3_MAX_ITER: usize = 50;
const C3_BUDGET: Duration = Duration::from_secs(30);
// 4: Kubo–Mori Hessian.
const C4_INSTANCES: u64 = 20;
const C4_FD_STEP: f64 = 1e-5;
const C4_TOL: f64 = 1e-5;
const C4_PSD_FLOOR: f64 = -1e-9;
// 5: entanglement oracles.
const C5_BELL_TOL: f64 = 1e-10;
const C5_THRESHOLD_TOL: f64 = 1e-6;
const C5_W_TOL: f64 = 1e-9;
// 6: zero-temperature limit.
const C6_SITES: usize = 4;
const C6_FIELD: f64 = 2.0;
const C6_SCALED_GAPS: [f64; 4] = [35.0, 50.0, 100.0, 200.0];
const C6_OVERLAP_DEFICIT: f64 = 1e-6;
const C6_BUDGET: Duration = Duration::from_secs(2);
// 7: singularity-marker sweep.
const C7_CONFIG: &str = r#"{"model": {"type": "tfim", "n": 8, "periodic": true}, "beta": 20.0,
    "control": {"name": "g", "from": 0.2, "to": 2.0, "points": 91}, "threads": 4}"#;
const C7_BUDGET: Duration = Duration::from_secs(60);
const C7_DC_WINDOW: (f64, f64) = (0.5, 1.5);
// 8: dynamics.
const C8_REL_TOL: f64 = 1e-6;
const C8_MAX_GAMMA_T: f64 = 2.0;
const C8_UNITARY_TOL: f64 = 1e-7;
const C8_H_NORM: f64 = 2.0;
const C8_MIN_ORDER: f64 = 3.5;

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("free-energy gradient equals mean values", c1_gradient),
        ("free-energy gap equals relative entropy", c2_gap),
        ("inversion round trip", c3_inversion),
        ("Kubo-Mori Hessian", c4_hessian),
        ("entanglement oracles", c5_entanglement),
        ("zero-temperature limit", c6_zero_temperature),
        ("singularity-marker sweep", c7_sweep),
        ("Lindblad dynamics", c8_dynamics),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2} s)", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.2} s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(budget: Duration, start: Instant) -> Result<f64, String> {
    let t = start.elapsed();
    check(t <= budget, || format!("took {:.2} s, budget {:.0} s", t.as_secs_f64(), budget.as_secs_f64()))?;
    Ok(t.as_secs_f64())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn random_set(dim: usize, count: usize, seed: u64) -> ObservableSet<f64> {
    let obs = (0..count)
        .map(|l| HermitianObservable::new(random_hermitian(dim, seed * 7919 + l as u64), format!("a{l}")).unwrap())
        .collect();
    ObservableSet::new(obs).unwrap()
}

fn lam(v: Vec<f64>) -> Multipliers<f64> {
    Multipliers::new(v).unwrap()
}

fn c1_gradient() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..C1_INSTANCES {
        let dim = [2, 4, 8][(seed % 3) as usize];
        let count = 1 + (seed / 3 % 3) as usize;
        let set = random_set(dim, count, seed);
        let l = random_uniform::<f64>(count, -2.0, 2.0, seed);
        let grad = grad_free_energy(&set, &lam(l.clone())).map_err(err)?;
        for m in 0..count {
            let (mut up, mut dn) = (l.clone(), l.clone());
            up[m] += C1_FD_STEP;
            dn[m] -= C1_FD_STEP;
            let fd = (free_energy(&set, &lam(up)).map_err(err)? - free_energy(&set, &lam(dn)).map_err(err)?)
                / (2.0 * C1_FD_STEP);
            let rel = (fd - grad[m]).abs() / grad[m].abs();
            worst = worst.max(rel);
            check(rel <= C1_REL_TOL, || format!("instance {seed}, component {m}: relative error {rel:.2e}"))?;
        }
    }
    within(C1_BUDGET, start)?;
    Ok(format!("{C1_INSTANCES} instances, max relative error {worst:.2e} <= {C1_REL_TOL:e}"))
}

fn c2_gap() -> Outcome {
    let start = Instant::now();
    let (mut worst, mut lowest) = (0.0f64, f64::INFINITY);
    for seed in 0..C2_PAIRS {
        let set = random_set(4, 3, seed % 25);
        let l = lam(random_uniform(3, -2.0, 2.0, seed + 10_000));
        let rho = random_density_matrix::<f64>(4, seed);
        let (_, rho0) = gibbs_state(&set, &l).map_err(err)?;
        let gap = free_energy_functional(&rho, &set, &l).map_err(err)? - free_energy(&set, &l).map_err(err)?;
        let rel = relative_entropy(&rho, &rho0).map_err(err)?;
        worst = worst.max((gap - rel).abs());
        lowest = lowest.min(gap);
        check((gap - rel).abs() <= C2_TOL, || format!("pair {seed}: gap {gap} vs S(rho||rho0) {rel}"))?;
        check(gap >= C2_FLOOR, || format!("pair {seed}: negative gap {gap:e}"))?;
    }
    within(C2_BUDGET, start)?;
    Ok(format!("{C2_PAIRS} pairs, max |gap - S| {worst:.2e} <= {C2_TOL:e}, min gap {lowest:.3e}"))
}

fn c3_inversion() -> Outcome {
    let start = Instant::now();
    let (mut worst, mut most_iter) = (0.0f64, 0);
    for seed in 0..C3_SEEDS {
        let set = random_set(8, 4, 1_000 + seed);
        let truth = random_uniform::<f64>(4, -2.0, 2.0, 2_000 + seed);
        let (ens, _) = gibbs_state(&set, &lam(truth.clone())).map_err(err)?;
        let out = maxent_invert(&set, ens.means(), C3_SOLVER_TOL, C3_MAX_ITER).map_err(err)?;
        check(out.converged, || format!("seed {seed}: no convergence in {C3_MAX_ITER} iterations"))?;
        let e = out.lambda.values().iter().zip(&truth).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        check(e <= C3_LAMBDA_TOL, || format!("seed {seed}: |lambda error| {e:.2e}"))?;
        worst = worst.max(e);
        most_iter = most_iter.max(out.iterations);
    }
    within(C3_BUDGET, start)?;
    Ok(format!(
        "{C3_SEEDS} seeds, max |lambda error| {worst:.2e} <= {C3_LAMBDA_TOL:e}, max {most_iter} <= {C3_MAX_ITER} iterations"
    ))
}

fn c4_hessian() -> Outcome {
    let (mut worst, mut min_eig) = (0.0f64, f64::INFINITY);
    for seed in 0..C4_INSTANCES {
        let set = random_set(4, 2, 3_000 + seed);
        let l = random_uniform::<f64>(2, -2.0, 2.0, 4_000 + seed);
        let h = kubo_mori_hessian(&set, &lam(l.clone())).map_err(err)?;
        for m in 0..2 {
            let (mut up, mut dn) = (l.clone(), l.clone());
            up[m] += C4_FD_STEP;
            dn[m] -= C4_FD_STEP;
            let (a_up, a_dn) =
                (grad_free_energy(&set, &lam(up)).map_err(err)?, grad_free_energy(&set, &lam(dn)).map_err(err)?);
            for li in 0..2 {
                let jac = (a_up[li] - a_dn[li]) / (2.0 * C4_FD_STEP);
                let e = (jac + h[li][m]).abs();
                worst = worst.max(e);
                check(e <= C4_TOL, || format!("instance {seed}: da_{li}/dl_{m} = {jac} vs -H = {}", -h[li][m]))?;
            }
        }
        let hm = M::from_fn(2, |i, j| C::new(h[i][j], 0.0));
        let w = hermitian_eig(&hm).map_err(err)?.values[0];
        min_eig = min_eig.min(w);
        check(w >= C4_PSD_FLOOR, || format!("instance {seed}: Hessian eigenvalue {w:e}"))?;
    }
    Ok(format!(
        "{C4_INSTANCES} instances, max |J + H| {worst:.2e} <= {C4_TOL:e}, min eigenvalue {min_eig:.3e} >= {C4_PSD_FLOOR:e}"
    ))
}

fn c5_entanglement() -> Outcome {
    let split = Bipartition::halves(2);
    let bell = reference_state::<f64>(ReferenceState::BellPhiPlus).map_err(err)?;
    let c = concurrence_two_qubit(&bell).map_err(err)?;
    let (n, _, _) = negativity(&bell, &split).map_err(err)?;
    check((c - 1.0).abs() <= C5_BELL_TOL && (n - 0.5).abs() <= C5_BELL_TOL, || format!("Bell C = {c}, N = {n}"))?;

    let ppt = |p: f64| -> Result<bool, String> {
        let rho = reference_state::<f64>(ReferenceState::Werner(p)).map_err(err)?;
        Ok(negativity(&rho, &split).map_err(err)?.2)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    check(ppt(lo)? && !ppt(hi)?, || "Werner PPT flag does not bracket a threshold".into())?;
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if ppt(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let threshold = 0.5 * (lo + hi);
    check((threshold - 1.0 / 3.0).abs() <= C5_THRESHOLD_TOL, || format!("Werner threshold {threshold}"))?;

    let w = reference_state::<f64>(ReferenceState::W(3)).map_err(err)?;
    let mut worst_w = 0.0f64;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let cw = pairwise_concurrence(&w, i, j).map_err(err)?;
        worst_w = worst_w.max((cw - 2.0 / 3.0).abs());
    }
    check(worst_w <= C5_W_TOL, || format!("W pairwise concurrence off by {worst_w:e}"))?;
    Ok(format!(
        "Bell C = {c:.12}, N = {n:.12}; Werner threshold {threshold:.9} (1/3 +- {C5_THRESHOLD_TOL:e}); W pair C error {worst_w:.1e}"
    ))
}

fn c6_zero_temperature() -> Outcome {
    let start = Instant::now();
    let n = C6_SITES;
    // Independent dense Hamiltonian H = −Σ σᶻσᶻ − g Σ σˣ on the open chain.
    let site = |p: Pauli, i: usize| -> M {
        kron_all(&(0..n).map(|k| if k == i { pauli(p) } else { M::identity(2) }).collect::<Vec<_>>())
    };
    let mut h = M::zeros(1 << n);
    for i in 0..n - 1 {
        h = &h - &site(Pauli::Z, i).matmul(&site(Pauli::Z, i + 1));
    }
    for i in 0..n {
        h = &h - &site(Pauli::X, i).scale(C6_FIELD);
    }
    let e = hermitian_eig(&h).map_err(err)?;
    let gap = e.values[1] - e.values[0];
    let ground = M::outer(&e.vector(0));

    let set = tfim_observables::<f64>(n, false).map_err(err)?;
    let mut lowest = 1.0f64;
    for sg in C6_SCALED_GAPS {
        let s = sg / gap;
        let (_, rho) = gibbs_state(&set, &lam(vec![s, s * C6_FIELD])).map_err(err)?;
        let overlap = rho.matrix().trace_product(&ground).re;
        lowest = lowest.min(overlap);
        check(overlap >= 1.0 - C6_OVERLAP_DEFICIT, || format!("s*gap = {sg}: overlap {overlap}"))?;
    }
    within(C6_BUDGET, start)?;
    Ok(format!("gap {gap:.6}, min ground overlap {lowest:.12} at s*gap >= {}", C6_SCALED_GAPS[0]))
}

fn c7_sweep() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let mut cfg = parse_config_str(C7_CONFIG).map_err(err)?;
    cfg.output_dir = dir.path().join("threads4");

    let start = Instant::now();
    let out = run_sweep(&cfg).map_err(err)?;
    let (csv4, _) = write_csv(&out.labels, &out.records, &out.report, &cfg.output_dir).map_err(err)?;
    let t = within(C7_BUDGET, start)?;

    cfg.threads = 1;
    cfg.output_dir = dir.path().join("threads1");
    let serial = run_sweep(&cfg).map_err(err)?;
    let (csv1, _) = write_csv(&serial.labels, &serial.records, &serial.report, &cfg.output_dir).map_err(err)?;
    let same = read(&csv4)? == read(&csv1)?;
    check(same, || "CSV differs between 4 threads and 1 thread".into())?;
    check(render_csv(&out.labels, &out.records) == render_csv(&serial.labels, &serial.records), || {
        "rendered records differ".into()
    })?;

    let last = cfg.control.points - 1;
    let r = &out.report;
    let mut parts = Vec::new();
    for (name, m) in [("|d2F|", r.d2_free_energy), ("|dC|", r.d_concurrence), ("|dN|", r.d_negativity)] {
        check(m.index > 0 && m.index < last, || format!("argmax {name} at grid end {}", m.index))?;
        check(m.control_value.is_finite() && m.value.is_finite(), || format!("argmax {name} not finite"))?;
        parts.push(format!("{name} at g = {:.3}", m.control_value));
    }
    // Nearest-neighbour concurrence switches on inside the grid, and its
    // steepest change sits between g = 0.5 and 1.5.
    let c = out.records.iter().map(|rec| rec.concurrence).collect::<Vec<_>>();
    check(c[1..last].iter().any(|&x| x > 0.0), || "concurrence vanishes on the whole interior".into())?;
    let g_dc = r.d_concurrence.control_value;
    check(g_dc > C7_DC_WINDOW.0 && g_dc < C7_DC_WINDOW.1, || format!("argmax |dC| at g = {g_dc}"))?;
    Ok(format!("91 points in {t:.2} s on 4 threads, CSV bit-identical to 1 thread; argmax {}", parts.join(", ")))
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(err)
}

fn c8_dynamics() -> Outcome {
    // Dephasing ρ₀₁(t) = ρ₀₁(0) e^{−2γt}.
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityMatrix::pure(&[C::new(s, 0.0), C::new(s, 0.0)], vec![2]).map_err(err)?;
    let zero_h = HermitianObservable::new(M::zeros(2), "H").map_err(err)?;
    let mut worst_rel = 0.0f64;
    for gamma in [0.1, 0.5, 1.0, 4.0] {
        let spec = LindbladSpec::new(zero_h.clone(), vec![pauli(Pauli::Z)], vec![gamma]).map_err(err)?;
        let t_end = C8_MAX_GAMMA_T / gamma;
        let traj = propagate(&plus, &spec, t_end, default_steps(&spec, t_end)).map_err(err)?;
        for (t, state) in traj.times.iter().zip(&traj.states) {
            let want = 0.5 * (-2.0 * gamma * t).exp();
            let rel = (state.matrix()[(0, 1)].re - want).abs() / want;
            worst_rel = worst_rel.max(rel);
        }
    }
    check(worst_rel <= C8_REL_TOL, || format!("dephasing relative error {worst_rel:e}"))?;

    // γ = 0 against exp(−iHt) ρ exp(iHt) at t = 1.
    let mut worst_u = 0.0f64;
    for seed in 0..5u64 {
        let raw = random_hermitian::<f64>(4, 5_000 + seed);
        let h =
            raw.scale(C8_H_NORM / hermitian_eig(&raw).map_err(err)?.values.iter().fold(0.0f64, |m, w| m.max(w.abs())));
        let spec = LindbladSpec::unitary(HermitianObservable::new(h.clone(), "H").map_err(err)?);
        let rho0 = random_density_matrix::<f64>(4, 6_000 + seed);
        let traj = propagate(&rho0, &spec, 1.0, default_steps(&spec, 1.0)).map_err(err)?;
        let exact = rho0.conjugate_by(&unitary_propagator(&h, 1.0).map_err(err)?).map_err(err)?;
        worst_u = worst_u.max(traj.final_state().matrix().max_abs_diff(exact.matrix()));
    }
    check(worst_u <= C8_UNITARY_TOL, || format!("unitary limit error {worst_u:e}"))?;

    // Step halving on the dephasing benchmark (γ = 1, t = 2).
    let spec = LindbladSpec::new(zero_h, vec![pauli(Pauli::Z)], vec![1.0]).map_err(err)?;
    let final_error = |steps: usize| -> Result<f64, String> {
        let traj = propagate(&plus, &spec, 2.0, steps).map_err(err)?;
        Ok((traj.final_state().matrix()[(0, 1)].re - 0.5 * (-4.0f64).exp()).abs())
    };
    let errors = [final_error(10)?, final_error(20)?, final_error(40)?];
    let orders = [(errors[0] / errors[1]).log2(), (errors[1] / errors[2]).log2()];
    let order = orders[0].min(orders[1]);
    check(order >= C8_MIN_ORDER, || format!("observed order {orders:?}"))?;
    Ok(format!(
        "dephasing rel error {worst_rel:.2e} <= {C8_REL_TOL:e}; unitary error {worst_u:.2e} <= {C8_UNITARY_TOL:e}; RK4 order {order:.3} >= {C8_MIN_ORDER}"
    ))
}
