use super::gibbs::{log_partition, GibbsEnsemble};
use super::{Multipliers, ObservableSet};
use crate::error::{validation, Error, Result};
use crate::scalar::Real;

const MAX_HALVINGS: usize = 60;
const LEVENBERG_REL: f64 = 1e-10;

/// Outcome of [`maxent_invert`].
#[derive(Debug, Clone)]
pub struct InversionResult<T: Real> {
    /// Best iterate found (the converged one when `converged`).
    pub lambda: Multipliers<T>,
    /// Newton steps taken.
    pub iterations: usize,
    /// `‖a(λ) − target‖∞` at `lambda`.
    pub residual_inf_norm: T,
    pub converged: bool,
}

/// Finds multipliers whose Gibbs state reproduces `target` mean values.
///
/// Minimizes the convex dual `G(λ) = ln Z(λ) + Σ λ_l target_l` by damped
/// Newton from `λ = 0`, with halving line search on `G` and a relative
/// Levenberg shift on the Kubo–Mori Hessian. Targets only reachable in a
/// limit (the dual optimum sits at infinity) come back with
/// `converged = false` and the best iterate.
pub fn maxent_invert<T: Real>(
    obs: &ObservableSet<T>,
    target: &[T],
    tol: T,
    max_iter: usize,
) -> Result<InversionResult<T>> {
    if !(tol > T::zero()) {
        return Err(validation!("tolerance must be positive"));
    }
    if target.len() != obs.len() {
        return Err(validation!("{} targets for {} observables", target.len(), obs.len()));
    }
    if target.iter().any(|t| !t.is_finite()) {
        return Err(validation!("targets must be finite"));
    }
    if obs.len() == 1 {
        let a = obs.get(0).expect("one observable");
        let spectrum = a.eig()?.values;
        let (lo, hi) = (spectrum[0], spectrum[spectrum.len() - 1]);
        let slack = T::tol(1e-12) * T::one().max(lo.abs()).max(hi.abs());
        if target[0] < lo - slack || target[0] > hi + slack {
            return Err(Error::Infeasible(format!(
                "target {} for `{}` lies outside its spectrum [{}, {}]",
                target[0],
                a.label(),
                lo,
                hi
            )));
        }
    }

    let dual = |lambda: &Multipliers<T>, ln_z: T| -> T {
        ln_z + lambda.values().iter().zip(target).map(|(&l, &t)| l * t).sum::<T>()
    };

    let l_count = obs.len();
    let mut lambda = Multipliers::zeros(l_count);
    let mut ens = GibbsEnsemble::new(obs, &lambda)?;
    let mut best = (lambda.clone(), residual(ens.means(), target));
    let mut iterations = 0;

    loop {
        let res = residual(ens.means(), target);
        if res < best.1 {
            best = (lambda.clone(), res);
        }
        if res <= tol {
            return Ok(InversionResult { lambda, iterations, residual_inf_norm: res, converged: true });
        }
        if iterations >= max_iter {
            break;
        }

        // ∇G_l = target_l − a_l; Newton direction d = −H⁻¹ ∇G.
        let grad: Vec<T> = target.iter().zip(ens.means()).map(|(&t, &a)| t - a).collect();
        let hess = ens.kubo_mori_hessian();
        let Some(direction) = newton_direction(&hess, &grad) else {
            break;
        };

        let g0 = dual(&lambda, ens.ln_z());
        let slack = T::epsilon() * T::lit(8.0) * (T::one() + g0.abs());
        let mut step = T::one();
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let trial =
                Multipliers::new(lambda.values().iter().zip(&direction).map(|(&l, &d)| l + step * d).collect())?;
            match log_partition(obs, &trial) {
                Ok(ln_z) if dual(&trial, ln_z) <= g0 + slack => {
                    accepted = Some(trial);
                    break;
                }
                Ok(_) | Err(Error::Range(_)) => step *= T::lit(0.5),
                Err(e) => return Err(e),
            }
        }
        let Some(next) = accepted else {
            break;
        };
        lambda = next;
        ens = GibbsEnsemble::new(obs, &lambda)?;
        iterations += 1;
    }

    let (lambda, residual_inf_norm) = best;
    Ok(InversionResult { lambda, iterations, residual_inf_norm, converged: false })
}

fn residual<T: Real>(means: &[T], target: &[T]) -> T {
    means.iter().zip(target).fold(T::zero(), |m, (&a, &t)| m.max((a - t).abs()))
}

/// Solves `(H + ηI) d = −g` by Cholesky, with `η = 1e-10 · tr(H)/L`. The shift
/// grows tenfold until the factorization succeeds; `None` if `H` vanishes.
fn newton_direction<T: Real>(hess: &[Vec<T>], grad: &[T]) -> Option<Vec<T>> {
    let n = grad.len();
    let trace: T = (0..n).map(|i| hess[i][i]).sum();
    if !(trace > T::zero()) || !trace.is_finite() {
        return None;
    }
    let mut eta = T::lit(LEVENBERG_REL) * trace / T::lit(n as f64);
    for _ in 0..12 {
        let mut shifted = hess.to_vec();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] += eta;
        }
        if let Some(chol) = cholesky(&shifted) {
            let rhs: Vec<T> = grad.iter().map(|&g| -g).collect();
            return Some(cholesky_solve(&chol, &rhs));
        }
        eta *= T::lit(10.0);
    }
    None
}

fn cholesky<T: Real>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: T = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if !(d > T::zero()) {
                    return None;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

fn cholesky_solve<T: Real>(l: &[Vec<T>], b: &[T]) -> Vec<T> {
    let n = b.len();
    let mut y = vec![T::zero(); n];
    for i in 0..n {
        let s: T = (0..i).map(|k| l[i][k] * y[k]).sum();
        y[i] = (b[i] - s) / l[i][i];
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let s: T = (i + 1..n).map(|k| l[k][i] * x[k]).sum();
        x[i] = (y[i] - s) / l[i][i];
    }
    x
}
