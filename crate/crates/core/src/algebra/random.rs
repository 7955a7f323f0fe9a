//! Seeded random test matrices and states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::state::DensityMatrix;
use crate::scalar::{c, Real, C};

fn gaussian_matrix<T: Real>(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(dim, |_, _| {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        c(T::lit(a), T::lit(b))
    })
}

/// Random full-rank density matrix `G G† / tr(G G†)` from a seeded complex
/// Gaussian `G`. Deterministic for a fixed `(dim, seed)`; `dim` must be ≥ 1.
pub fn random_density_matrix<T: Real>(dim: usize, seed: u64) -> DensityMatrix<T> {
    assert!(dim >= 1, "density matrix dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gaussian_matrix::<T>(dim, &mut rng);
    let ggt = g.matmul(&g.adjoint());
    let tr = ggt.trace().re;
    let rho = ggt.scale(T::one() / tr).hermitian_part();
    DensityMatrix::from_parts_unchecked(rho, vec![dim])
}

/// Random Hermitian matrix `(G + G†) / (2√dim)`, spectrum of order one.
pub fn random_hermitian<T: Real>(dim: usize, seed: u64) -> ComplexMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_4e41_7a11_0b5e);
    let g = gaussian_matrix::<T>(dim, &mut rng);
    g.hermitian_part().scale(T::one() / T::lit(dim as f64).sqrt())
}

/// Haar-distributed unitary via Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary<T: Real>(dim: usize, seed: u64) -> ComplexMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0417_a2f0_9c3d_2b71);
    let g = gaussian_matrix::<T>(dim, &mut rng);
    let mut cols: Vec<Vec<C<T>>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<C<T>> = (0..dim).map(|i| g[(i, j)]).collect();
        for u in &cols {
            let proj = u.iter().zip(&v).fold(C::new(T::zero(), T::zero()), |s, (a, b)| s + a.conj() * b);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Uniform reals in `[lo, hi)` from a seeded stream.
pub fn random_uniform<T: Real>(len: usize, lo: f64, hi: f64, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1f2e_3d4c_5b6a_7988);
    (0..len).map(|_| T::lit(rng.random_range(lo..hi))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_one_is_forced() {
        let rho = random_density_matrix::<f64>(1, 99);
        assert_eq!(rho.matrix()[(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = random_density_matrix::<f64>(4, 7);
        let b = random_density_matrix::<f64>(4, 7);
        assert_eq!(a.matrix().as_slice(), b.matrix().as_slice());
        assert_ne!(a.matrix().as_slice(), random_density_matrix::<f64>(4, 8).matrix().as_slice());
    }

    #[test]
    fn sweep_of_seeds_satisfies_invariants() {
        for seed in 0..100 {
            let rho = random_density_matrix::<f64>(8, seed);
            DensityMatrix::new(rho.matrix().clone(), vec![8]).unwrap();
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let u = random_unitary::<f64>(5, 3);
        assert!(u.adjoint().matmul(&u).max_abs_diff(&ComplexMatrix::identity(5)) < 1e-12);
    }
}
