#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multiport::ComplexMatrix;

/// Gram–Schmidt orthonormalization of a matrix with uniform random entries.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut rows: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    for i in 0..dim {
        for j in 0..i {
            let proj: Complex64 = (0..dim).map(|k| rows[j][k].conj() * rows[i][k]).sum();
            let prev = rows[j].clone();
            for (x, p) in rows[i].iter_mut().zip(prev) {
                *x -= proj * p;
            }
        }
        let norm = rows[i].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in rows[i].iter_mut() {
            *x /= norm;
        }
    }
    ComplexMatrix::from_rows(&rows)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
