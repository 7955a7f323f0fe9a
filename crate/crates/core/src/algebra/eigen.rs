//! Hermitian eigendecomposition.
//!
//! The matrix is reduced to Hermitian tridiagonal form with Householder
//! reflectors, a diagonal phase transform makes the off-diagonal real and
//! nonnegative, and the resulting real symmetric tridiagonal problem is solved
//! with the implicit QL algorithm. Eigenvectors are back-transformed through
//! the phases and reflectors.

use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{validation, Error, Result};
use crate::scalar::{re, Real, C};

/// Relative Hermiticity tolerance accepted at validation boundaries.
pub const HERMITIAN_REL_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order and the unitary whose columns are the
/// matching eigenvectors, so that `A = V diag(w) V†`.
#[derive(Debug, Clone)]
pub struct Eigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> Eigen<T> {
    /// `V diag(f(w)) V†` for a complex-valued spectral function.
    pub fn reconstruct_with(&self, f: impl FnMut(T) -> C<T>) -> ComplexMatrix<T> {
        let fw: Vec<C<T>> = self.values.iter().copied().map(f).collect();
        self.reconstruct_diag(&fw)
    }

    /// `V diag(d) V†` for explicit diagonal entries aligned with `values`.
    /// Exactly zero entries are skipped.
    pub fn reconstruct_diag(&self, fw: &[C<T>]) -> ComplexMatrix<T> {
        let n = self.values.len();
        assert_eq!(fw.len(), n, "diagonal length mismatch");
        let keep: Vec<usize> = (0..n).filter(|&k| !fw[k].is_zero()).collect();
        let v = self.vectors.as_slice();
        // Row i of V·diag(d) and row j of V, restricted to the kept columns.
        let scaled: Vec<C<T>> = (0..n).flat_map(|i| keep.iter().map(move |&k| v[i * n + k] * fw[k])).collect();
        let plain: Vec<C<T>> = (0..n).flat_map(|j| keep.iter().map(move |&k| v[j * n + k].conj())).collect();
        let r = keep.len();
        let mut out = vec![C::zero(); n * n];
        for i in 0..n {
            let a = &scaled[i * r..(i + 1) * r];
            for j in 0..n {
                let b = &plain[j * r..(j + 1) * r];
                out[i * n + j] = a.iter().zip(b).fold(C::zero(), |acc, (&x, &y)| acc + x * y);
            }
        }
        ComplexMatrix::from_data_unchecked(n, out)
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.reconstruct_with(re)
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<C<T>> {
        (0..self.values.len()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `V† A V`: an operator expressed in the eigenbasis.
    pub fn to_eigenbasis(&self, a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.vectors.adjoint().matmul(&a.matmul(&self.vectors))
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must be Hermitian to `1e-12 · max|A|`; it is symmetrized before
/// the decomposition.
pub fn hermitian_eig<T: Real>(a: &ComplexMatrix<T>) -> Result<Eigen<T>> {
    check_hermitian(a)?;
    eigh_symmetrized(a)
}

fn check_hermitian<T: Real>(a: &ComplexMatrix<T>) -> Result<()> {
    if !a.is_finite() {
        return Err(validation!("matrix contains non-finite entries"));
    }
    let defect = a.hermiticity_defect();
    if defect > T::tol(HERMITIAN_REL_TOL) * a.max_abs() {
        return Err(validation!(
            "matrix is not Hermitian: defect {:e} exceeds {:e} relative",
            defect,
            HERMITIAN_REL_TOL
        ));
    }
    Ok(())
}

/// Ascending eigenvalues of a Hermitian matrix, without eigenvectors.
pub fn hermitian_eigvals<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    check_hermitian(a)?;
    eigvalsh_symmetrized(a)
}

/// Decomposes `(A + A†)/2` without a Hermiticity check. For internal use on
/// matrices that are Hermitian by construction up to rounding.
pub(crate) fn eigh_symmetrized<T: Real>(a: &ComplexMatrix<T>) -> Result<Eigen<T>> {
    let n = a.dim();
    if n == 0 {
        return Ok(Eigen { values: vec![], vectors: ComplexMatrix::zeros(0) });
    }
    let mut work = a.hermitian_part();
    let q = tridiagonalize(&mut work, true).expect("requested Q");
    let (diag, off, phases) = real_tridiagonal(&work);
    let (values, cols) = tridiagonal_ql(diag, off, true)?;

    // V = Q · D · W with D = diag(phases) and W real, columns in `cols`.
    let qs = q.as_slice();
    let qd: Vec<C<T>> = (0..n * n).map(|idx| qs[idx] * phases[idx % n]).collect();
    let mut v = vec![C::zero(); n * n];
    for r in 0..n {
        let row = &qd[r * n..(r + 1) * n];
        for (j, col) in cols.iter().enumerate() {
            v[r * n + j] = row.iter().zip(col).fold(C::zero(), |acc, (&z, &w)| acc + z * w);
        }
    }
    Ok(Eigen { values, vectors: ComplexMatrix::from_data_unchecked(n, v) })
}

/// Eigenvalues of `(A + A†)/2`, skipping all eigenvector work.
pub(crate) fn eigvalsh_symmetrized<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    if a.dim() == 0 {
        return Ok(vec![]);
    }
    let mut work = a.hermitian_part();
    tridiagonalize(&mut work, false);
    let (diag, off, _) = real_tridiagonal(&work);
    Ok(tridiagonal_ql(diag, off, false)?.0)
}

/// Diagonal, off-diagonal magnitudes and the phases `D` with `D† T D` real.
fn real_tridiagonal<T: Real>(t: &ComplexMatrix<T>) -> (Vec<T>, Vec<T>, Vec<C<T>>) {
    let n = t.dim();
    let diag: Vec<T> = (0..n).map(|i| t[(i, i)].re).collect();
    let mut off = vec![T::zero(); n];
    let mut phases = vec![re(T::one()); n];
    for k in 0..n.saturating_sub(1) {
        let e = t[(k + 1, k)];
        let mag = e.norm();
        off[k] = mag;
        phases[k + 1] = if mag > T::zero() { phases[k] * (e / mag) } else { phases[k] };
    }
    (diag, off, phases)
}

/// Reduces a Hermitian matrix in place to tridiagonal form `T = Q† A Q`,
/// returning `Q` when asked. The subdiagonal of `T` may be complex.
fn tridiagonalize<T: Real>(a: &mut ComplexMatrix<T>, want_q: bool) -> Option<ComplexMatrix<T>> {
    let n = a.dim();
    let mut reflectors: Vec<(usize, Vec<C<T>>, T)> = Vec::new();
    let ad = a.as_mut_slice();

    for k in 0..n.saturating_sub(2) {
        let off = k + 1;
        let m = n - off;
        let x: Vec<C<T>> = (off..n).map(|i| ad[i * n + k]).collect();
        let tail: T = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == T::zero() {
            continue;
        }
        let alpha = (x[0].norm_sqr() + tail).sqrt();
        let x0_abs = x[0].norm();
        let phase = if x0_abs > T::zero() { x[0] / x0_abs } else { re(T::one()) };

        let mut v = x;
        v[0] += phase * alpha;
        let tau = T::one() / (alpha * (alpha + x0_abs));

        // Trailing block B ← H B H with H = I − τ v v†.
        let p: Vec<C<T>> = (0..m)
            .map(|i| {
                let row = &ad[(off + i) * n + off..(off + i + 1) * n];
                row.iter().zip(&v).fold(C::zero(), |acc, (&b, &vj)| acc + b * vj) * tau
            })
            .collect();
        let vp: C<T> = v.iter().zip(&p).fold(C::zero(), |s, (vi, pi)| s + vi.conj() * pi);
        let kk = vp.re * tau * T::lit(0.5);
        let w: Vec<C<T>> = p.iter().zip(&v).map(|(&pi, &vi)| pi - vi * kk).collect();
        let (vc, wc): (Vec<C<T>>, Vec<C<T>>) = v.iter().zip(&w).map(|(a, b)| (a.conj(), b.conj())).unzip();
        for i in 0..m {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut ad[(off + i) * n + off..(off + i + 1) * n];
            for ((b, &wj), &vj) in row.iter_mut().zip(&wc).zip(&vc) {
                *b -= vi * wj + wi * vj;
            }
        }

        let beta = -phase * alpha;
        ad[off * n + k] = beta;
        ad[k * n + off] = beta.conj();
        for i in k + 2..n {
            ad[i * n + k] = C::zero();
            ad[k * n + i] = C::zero();
        }
        if want_q {
            reflectors.push((off, v, tau));
        }
    }
    if !want_q {
        return None;
    }

    // Q = H_0 H_1 ⋯, accumulated right to left; rows and columns below `off`
    // are still the identity when H_off is applied.
    let mut q = ComplexMatrix::identity(n);
    let qd = q.as_mut_slice();
    for (off, v, tau) in reflectors.iter().rev() {
        let off = *off;
        let mut s = vec![C::zero(); n - off];
        for (i, vi) in v.iter().enumerate() {
            let vc = vi.conj();
            let row = &qd[(off + i) * n + off..(off + i + 1) * n];
            for (sj, &qj) in s.iter_mut().zip(row) {
                *sj += vc * qj;
            }
        }
        for sj in s.iter_mut() {
            *sj *= *tau;
        }
        for (i, &vi) in v.iter().enumerate() {
            let row = &mut qd[(off + i) * n + off..(off + i + 1) * n];
            for (qj, &sj) in row.iter_mut().zip(&s) {
                *qj -= vi * sj;
            }
        }
    }
    Some(q)
}

/// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
///
/// `off[k]` couples rows `k` and `k+1`; `off[n-1]` is ignored. Returns
/// ascending eigenvalues and, if asked, eigenvectors stored as columns
/// (`cols[j][k]` is component `k` of eigenvector `j`).
fn tridiagonal_ql<T: Real>(mut d: Vec<T>, mut e: Vec<T>, want_vectors: bool) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = d.len();
    let mut cols: Vec<Vec<T>> = (0..if want_vectors { n } else { 0 })
        .map(|j| {
            let mut col = vec![T::zero(); n];
            col[j] = T::one();
            col
        })
        .collect();
    if n > 0 {
        e[n - 1] = T::zero();
    }

    let eps = T::epsilon();
    let two = T::lit(2.0);
    let max_iter = 60 * n.max(1);
    let mut f = T::zero();
    let mut tst1 = T::zero();

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    return Err(Error::Convergence(format!(
                        "tridiagonal QL did not converge for eigenvalue {l} of {n}"
                    )));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    if !want_vectors {
                        continue;
                    }
                    let (lo, hi) = cols.split_at_mut(i + 1);
                    let (ci, ci1) = (&mut lo[i], &mut hi[0]);
                    for (a, b) in ci.iter_mut().zip(ci1.iter_mut()) {
                        let (x, y) = (*a, *b);
                        *b = s * x + c * y;
                        *a = c * x - s * y;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("eigenvalues are finite"));
    let values = order.iter().map(|&i| d[i]).collect();
    let cols = if want_vectors { order.into_iter().map(|i| std::mem::take(&mut cols[i])).collect() } else { cols };
    Ok((values, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random::random_hermitian;
    use crate::scalar::c;

    fn check_decomposition(a: &ComplexMatrix<f64>) {
        let eig = hermitian_eig(a).unwrap();
        let n = a.dim();
        let err = eig.reconstruct().max_abs_diff(a);
        assert!(err <= 1e-10 * n as f64 * a.max_abs().max(1e-300), "reconstruction error {err:e}");
        let vtv = eig.vectors.adjoint().matmul(&eig.vectors);
        assert!(vtv.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_input() {
        let a = ComplexMatrix::<f64>::diag(&[3.0, 1.0]);
        let eig = hermitian_eig(&a).unwrap();
        assert_eq!(eig.values, vec![1.0, 3.0]);
        // Columns are a permutation of identity columns, up to phase.
        assert!((eig.vectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((eig.vectors[(0, 1)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::<f64>::from_rows(&[&[(0.0, 0.0), (1.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0)]]).unwrap();
        let eig = hermitian_eig(&x).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_y_spectrum_needs_complex_phases() {
        let y = ComplexMatrix::<f64>::from_rows(&[&[(0.0, 0.0), (0.0, -1.0)], &[(0.0, 1.0), (0.0, 0.0)]]).unwrap();
        check_decomposition(&y);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        for (dim, seed) in [(1, 0), (2, 1), (3, 2), (6, 3), (17, 4), (64, 5), (256, 6)] {
            check_decomposition(&random_hermitian::<f64>(dim, seed));
        }
    }

    #[test]
    fn degenerate_and_structured_inputs() {
        check_decomposition(&ComplexMatrix::<f64>::identity(5));
        check_decomposition(&ComplexMatrix::<f64>::zeros(4));
        // Tridiagonal with zero couplings in the middle.
        let mut a = ComplexMatrix::<f64>::zeros(5);
        a[(0, 1)] = c(0.0, 1.0);
        a[(1, 0)] = c(0.0, -1.0);
        a[(3, 4)] = c(2.0, 0.5);
        a[(4, 3)] = c(2.0, -0.5);
        check_decomposition(&a);
        // Rank one.
        let psi = [c(0.5, 0.1), c(-0.3, 0.2), c(0.0, 0.7), c(0.4, 0.0)];
        check_decomposition(&ComplexMatrix::outer(&psi));
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::<f64>::from_rows(&[&[(0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]).unwrap();
        assert!(matches!(hermitian_eig(&a), Err(Error::Validation(_))));
    }

    #[test]
    fn single_precision_decomposition() {
        let a: ComplexMatrix<f32> = random_hermitian::<f64>(8, 11).cast();
        let eig = hermitian_eig(&a).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&a) < 1e-5);
    }

    #[test]
    fn eigenvalues_only_path_agrees() {
        for n in [1, 2, 3, 7, 40] {
            let a = random_hermitian::<f64>(n, 90 + n as u64);
            let full = hermitian_eig(&a).unwrap().values;
            let only = hermitian_eigvals(&a).unwrap();
            assert!(full.iter().zip(&only).all(|(x, y)| (x - y).abs() < 1e-13));
        }
        assert!(hermitian_eigvals(
            &ComplexMatrix::<f64>::from_rows(&[&[(0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0)]]).unwrap()
        )
        .is_err());
    }
}
