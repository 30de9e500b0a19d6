#![allow(dead_code)]

use std::sync::Arc;

use covqsc_core::hyperboloid::{FiberedSection, MomentumGrid};
use covqsc_core::linalg::{CMatrix, CVector};
use nalgebra::Vector2;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Uniformly random direction scaled to `norm`.
pub fn vector_with_norm<R: Rng>(rng: &mut R, dim: usize, norm: f64) -> CVector {
    let v = CVector::from_fn(dim, |_, _| complex(rng));
    let n = v.norm();
    v * Complex64::new(norm / n, 0.0)
}

pub fn hermitian<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |_, _| complex(rng));
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Haar-ish unitary from the QR factor of a random matrix.
pub fn unitary<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |_, _| complex(rng));
    a.qr().q()
}

pub fn section<R: Rng>(rng: &mut R, grid: &Arc<MomentumGrid>) -> FiberedSection {
    FiberedSection::from_fn(grid.clone(), |_, _| Vector2::new(complex(rng), complex(rng)))
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Composite Simpson rule for `∫ d³q / sqrt(m² + q²)` over `[-e, e]³`
/// with `n` (even) intervals per axis.
pub fn simpson_invariant_volume(mass: f64, e: f64, n: usize) -> f64 {
    assert!(n % 2 == 0);
    let h = 2.0 * e / n as f64;
    let w = |i: usize| -> f64 {
        if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let coords: Vec<f64> = (0..=n).map(|i| -e + i as f64 * h).collect();
    let mut total = 0.0;
    for (i, x) in coords.iter().enumerate() {
        let wx = w(i);
        for (j, y) in coords.iter().enumerate() {
            let wxy = wx * w(j);
            let r2 = mass * mass + x * x + y * y;
            let mut line = 0.0;
            for (k, z) in coords.iter().enumerate() {
                line += w(k) / (r2 + z * z).sqrt();
            }
            total += wxy * line;
        }
    }
    total * (h / 3.0).powi(3)
}
