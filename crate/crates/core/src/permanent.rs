//! Matrix permanents: brute-force reference and Ryser inclusion–exclusion.

use num_complex::Complex64;

use crate::error::{check_limit, Result};

/// Default dimension bound for [`permanent_naive`] (`9! · 9` products).
pub const NAIVE_DEFAULT_LIMIT: usize = 9;
/// Dimension bound for [`permanent_ryser`].
pub const RYSER_LIMIT: usize = 24;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from its rows; all rows must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix is not square");
        Self {
            dim,
            data: rows.concat(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn ones(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Complex64::new(1.0, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| {
            (0..self.dim)
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        })
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }
}

/// `Σ_σ Π_j M_{j,σ(j)}` over all permutations, with the default size limit.
pub fn permanent_naive(m: &ComplexMatrix) -> Result<Complex64> {
    permanent_naive_with_limit(m, NAIVE_DEFAULT_LIMIT)
}

pub fn permanent_naive_with_limit(m: &ComplexMatrix, limit: usize) -> Result<Complex64> {
    check_limit("naive permanent dimension", m.dim as u128, limit as u128)?;
    let n = m.dim;
    let mut total = Complex64::new(0.0, 0.0);
    for_each_permutation(n, |perm| {
        let mut prod = Complex64::new(1.0, 0.0);
        for (row, &col) in perm.iter().enumerate() {
            prod *= m.get(row, col);
        }
        total += prod;
    });
    Ok(total)
}

/// Visits all permutations of `0..n` (Heap's algorithm, iterative).
pub(crate) fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    visit(&perm);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            visit(&perm);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Ryser's formula `perm(M) = (−1)^m Σ_S (−1)^{|S|} Π_i Σ_{j∈S} M_{ij}`,
/// walking the subsets `S` in Gray-code order so each step adds or removes a
/// single column from the running row sums.
pub fn permanent_ryser(m: &ComplexMatrix) -> Result<Complex64> {
    check_limit(
        "Ryser permanent dimension",
        m.dim as u128,
        RYSER_LIMIT as u128,
    )?;
    let n = m.dim;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut in_subset = vec![false; n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut subset_size = 0usize;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        if in_subset[col] {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum -= m.get(i, col);
            }
            subset_size -= 1;
        } else {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum += m.get(i, col);
            }
            subset_size += 1;
        }
        in_subset[col] = !in_subset[col];
        let prod: Complex64 = row_sums.iter().product();
        if subset_size.is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(if n.is_multiple_of(2) { total } else { -total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::FourierUnitary;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn naive_examples() {
        assert!(close(
            permanent_naive(&ComplexMatrix::identity(3)).unwrap(),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        assert!(close(
            permanent_naive(&ComplexMatrix::ones(4)).unwrap(),
            Complex64::new(24.0, 0.0),
            1e-15
        ));
        let f3 = FourierUnitary::new(3).unwrap().matrix();
        let p = permanent_naive(&f3).unwrap();
        assert!(
            close(p, Complex64::new(-1.0 / 3f64.sqrt(), 0.0), 1e-12),
            "{p}"
        );
    }

    #[test]
    fn ryser_examples() {
        assert!(close(
            permanent_ryser(&ComplexMatrix::identity(5)).unwrap(),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        assert!(close(
            permanent_ryser(&ComplexMatrix::ones(6)).unwrap(),
            Complex64::new(720.0, 0.0),
            1e-15
        ));
        assert_eq!(
            permanent_ryser(&ComplexMatrix::identity(0)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn limits() {
        assert!(permanent_naive(&ComplexMatrix::identity(10)).is_err());
        assert!(permanent_naive_with_limit(&ComplexMatrix::identity(10), 10).is_ok());
        assert!(permanent_ryser(&ComplexMatrix::identity(25)).is_err());
    }

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, |p| {
            assert!(seen.insert(p.to_vec()));
        });
        assert_eq!(seen.len(), 120);
    }
}
