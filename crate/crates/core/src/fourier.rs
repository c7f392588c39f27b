use num_complex::Complex64;

use crate::cyclotomic::root_of_unity;
use crate::error::{Error, Result};
use crate::permanent::ComplexMatrix;

/// The `n`-port Bell multiport: `U_{jk} = e^{2πi jk/n} / √n` with 0-based
/// `j, k` (row `j` belongs to output port `j + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourierUnitary {
    n: usize,
}

impl FourierUnitary {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "Fourier dimension must be at least 1".into(),
            ));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent of `ω` in entry `(j, k)`, reduced mod `n`.
    #[inline]
    pub fn exponent(&self, j: usize, k: usize) -> usize {
        (j % self.n) * (k % self.n) % self.n
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        root_of_unity(self.exponent(j, k), self.n) / (self.n as f64).sqrt()
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |j, k| self.entry(j, k))
    }

    /// Rows `d_1 − 1, …, d_n − 1` of `U` for 1-based ports `d`.
    pub fn rows_for_ports(&self, ports: &[usize]) -> ComplexMatrix {
        let rows: Vec<Vec<Complex64>> = ports
            .iter()
            .map(|&p| (0..self.n).map(|k| self.entry(p - 1, k)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows)
    }

    /// `max |(U U†)_{jk} − δ_{jk}|`
    pub fn unitarity_error(&self) -> f64 {
        let u = self.matrix();
        let prod = u.mul(&u.adjoint());
        let mut worst = 0.0f64;
        for j in 0..self.n {
            for k in 0..self.n {
                let delta = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((prod.get(j, k) - Complex64::new(delta, 0.0)).norm());
            }
        }
        worst
    }
}
