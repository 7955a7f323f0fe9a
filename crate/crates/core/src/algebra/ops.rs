//! Spectral calculus and tensor-structure operations.

use std::ops::Range;

use num_traits::Zero;

use super::eigen::{hermitian_eig, hermitian_eigvals, Eigen};
use super::matrix::ComplexMatrix;
use super::state::{check_factor_dims, DensityMatrix};
use crate::error::{validation, Error, Result};
use crate::scalar::{re, Real, C};

/// `f(A) = V diag(f(w)) V†` for Hermitian `A` and a real function `f`.
///
/// Fails with a domain error if `f` returns a non-finite value at any
/// eigenvalue (e.g. `ln` of a negative number).
pub fn spectral_fn<T: Real>(a: &ComplexMatrix<T>, f: impl Fn(T) -> T) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eig(a)?;
    apply_spectral(&eig, f)
}

pub(crate) fn apply_spectral<T: Real>(eig: &Eigen<T>, f: impl Fn(T) -> T) -> Result<ComplexMatrix<T>> {
    let mut bad = None;
    let out = eig.reconstruct_with(|w| {
        let y = f(w);
        if !y.is_finite() {
            bad = Some(w);
        }
        re(y)
    });
    match bad {
        Some(w) => Err(Error::Domain(format!("spectral function undefined at eigenvalue {w:e}"))),
        None => Ok(out.hermitian_part()),
    }
}

/// `exp(−i H t)` for Hermitian `H`.
pub fn unitary_propagator<T: Real>(h: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eig(h)?;
    Ok(eig.reconstruct_with(|w| {
        let phase = -w * t;
        C::new(phase.cos(), phase.sin())
    }))
}

/// Kronecker product: `(A⊗B)[i·dB+k][j·dB+l] = A[i][j]·B[k][l]`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij.is_zero() {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence, leftmost factor first.
pub fn kron_all<T: Real>(factors: &[ComplexMatrix<T>]) -> ComplexMatrix<T> {
    factors
        .iter()
        .skip(1)
        .fold(factors.first().cloned().unwrap_or_else(|| ComplexMatrix::identity(1)), |acc, f| kron(&acc, f))
}

/// Reduced state on the factors listed in `keep`, kept in their original order.
pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    let dims = rho.factor_dims();
    let (matrix, kept_dims) = partial_trace_matrix(rho.matrix(), dims, keep)?;
    Ok(DensityMatrix::from_parts_unchecked(matrix, kept_dims))
}

/// Partial trace of an arbitrary operator with tensor structure `dims`.
pub fn partial_trace_matrix<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &[usize],
    keep: &[usize],
) -> Result<(ComplexMatrix<T>, Vec<usize>)> {
    check_factor_dims(m.dim(), dims)?;
    if keep.is_empty() {
        return Err(validation!("partial trace must keep at least one factor"));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(validation!("duplicate factor index in {:?}", keep));
    }
    if let Some(&bad) = kept.iter().find(|&&k| k >= dims.len()) {
        return Err(validation!("factor index {bad} out of range for {} factors", dims.len()));
    }

    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let dk: usize = kept_dims.iter().product();
    let n = m.dim();

    // Split every basis index into (kept index, traced index).
    let mut kidx = vec![0usize; n];
    let mut tidx = vec![0usize; n];
    for (idx, (ko, to)) in kidx.iter_mut().zip(tidx.iter_mut()).enumerate() {
        let mut rem = idx;
        let (mut k, mut kstride, mut t, mut tstride) = (0, 1, 0, 1);
        for f in (0..dims.len()).rev() {
            let digit = rem % dims[f];
            rem /= dims[f];
            if kept.binary_search(&f).is_ok() {
                k += digit * kstride;
                kstride *= dims[f];
            } else {
                t += digit * tstride;
                tstride *= dims[f];
            }
        }
        *ko = k;
        *to = t;
    }

    let dt = n / dk;
    let mut groups: Vec<Vec<usize>> = vec![Vec::with_capacity(dk); dt];
    for idx in 0..n {
        groups[tidx[idx]].push(idx);
    }
    let mut out = ComplexMatrix::zeros(dk);
    for group in &groups {
        for &i in group {
            for &j in group {
                out[(kidx[i], kidx[j])] += m[(i, j)];
            }
        }
    }
    Ok((out, kept_dims))
}

/// Partial transpose on the single factor `which`.
pub fn partial_transpose<T: Real>(rho: &DensityMatrix<T>, which: usize) -> Result<ComplexMatrix<T>> {
    let dims = rho.factor_dims();
    if which >= dims.len() {
        return Err(validation!("factor index {which} out of range for {} factors", dims.len()));
    }
    partial_transpose_range(rho.matrix(), dims, which..which + 1)
}

/// Partial transpose on the contiguous factor group `group`.
pub fn partial_transpose_range<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &[usize],
    group: Range<usize>,
) -> Result<ComplexMatrix<T>> {
    check_factor_dims(m.dim(), dims)?;
    if group.is_empty() || group.end > dims.len() {
        return Err(validation!("factor group {:?} invalid for {} factors", group, dims.len()));
    }
    let g: usize = dims[group.clone()].iter().product();
    let after: usize = dims[group.end..].iter().product();
    let before = m.dim() / (g * after);

    let mut out = ComplexMatrix::zeros(m.dim());
    let idx = |a: usize, b: usize, c: usize| (a * g + b) * after + c;
    for i0 in 0..before {
        for ig in 0..g {
            for i2 in 0..after {
                for j0 in 0..before {
                    for jg in 0..g {
                        for j2 in 0..after {
                            out[(idx(i0, jg, i2), idx(j0, ig, j2))] = m[(idx(i0, ig, i2), idx(j0, jg, j2))];
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm<T: Real>(a: &ComplexMatrix<T>) -> Result<T> {
    Ok(hermitian_eigvals(a)?.iter().map(|w| w.abs()).sum())
}
