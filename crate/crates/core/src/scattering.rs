//! Classical and quantum transition probabilities and the suppression law.
//!
//! Input state: one boson in each of the `n` input ports of the Fourier
//! multiport. For an output arrangement `s` with port assignment `d(s)`,
//!
//! ```text
//! ⟨Ψ|Φ(s)⟩ = perm(U[d(s)]) / √(Π_j s_j!)
//! ```
//!
//! where `U[d]` repeats row `d_l` of the Fourier matrix once per particle.
//! Two evaluation paths exist: a double-precision Ryser permanent, and an
//! exact one over `Z[ω]` which is authoritative for zero tests.

use num_complex::Complex64;
use num_traits::{PrimInt, Signed};

use crate::arrangement::{build_port_assignment, Arrangement};
use crate::cyclotomic::CyclotomicVector;
use crate::error::{check_limit, Error, Result};
use crate::fourier::FourierUnitary;
use crate::permanent::{for_each_permutation, permanent_ryser, RYSER_LIMIT};
use crate::util::{factorial, pow_self};
use crate::Rational;

/// Largest `n` for the brute-force `c_k` decomposition.
pub const CK_LIMIT: usize = 9;

/// Relative zero threshold for floating probabilities, in units of the
/// bunching probability `n!/n^n`.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-10;

/// A transition amplitude, optionally with its exact unnormalized form.
#[derive(Clone, Debug, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    /// `perm` of the row-repeated matrix of powers `ω^{(d_j−1)(k−1)}`.
    pub exact: Option<CyclotomicVector>,
    /// `1 / (n^{n/2} √(Π_j s_j!))`, so that `value = exact · normalization`.
    pub normalization: f64,
}

impl Amplitude {
    pub fn probability(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// `n! / (n^n Π_j s_j!)`
pub fn classical_probability(s: &Arrangement) -> Result<Rational> {
    let n = s.n();
    let n_pow = i128::try_from(
        (n as u128)
            .checked_pow(n as u32)
            .ok_or(Error::ResourceLimit {
                what: "n^n for classical probability",
                value: n as u128,
                limit: 26,
            })?,
    )
    .map_err(|_| Error::ResourceLimit {
        what: "n^n for classical probability",
        value: n as u128,
        limit: 26,
    })?;
    let multinomial = factorial(n) / s.occupancy_factorial_product();
    Ok(Rational::new(multinomial as i128, n_pow))
}

/// `Q(s) = (Σ_l d_l) mod n`. A nonzero value forces the amplitude to vanish.
pub fn suppression_q(s: &Arrangement) -> usize {
    build_port_assignment(s).port_sum() % s.n()
}

fn normalization(s: &Arrangement) -> f64 {
    let n = s.n() as f64;
    1.0 / (n.powf(n / 2.0) * (s.occupancy_factorial_product() as f64).sqrt())
}

/// Floating amplitude through [`permanent_ryser`].
pub fn quantum_amplitude(s: &Arrangement) -> Result<Amplitude> {
    check_limit(
        "n for the floating amplitude",
        s.n() as u128,
        RYSER_LIMIT as u128,
    )?;
    let u = FourierUnitary::new(s.n())?;
    let matrix = u.rows_for_ports(build_port_assignment(s).ports());
    let perm = permanent_ryser(&matrix)?;
    let value = perm / (s.occupancy_factorial_product() as f64).sqrt();
    Ok(Amplitude {
        value,
        exact: None,
        normalization: normalization(s),
    })
}

/// Floating amplitude together with the exact permanent.
pub fn quantum_amplitude_with_exact(s: &Arrangement) -> Result<Amplitude> {
    let mut amp = quantum_amplitude(s)?;
    amp.exact = Some(exact_amplitude(s)?);
    Ok(amp)
}

/// `|⟨Ψ|Φ(s)⟩|²`
pub fn quantum_probability(s: &Arrangement) -> Result<f64> {
    Ok(quantum_amplitude(s)?.probability())
}

/// Floating probabilities below this value count as zero.
pub fn zero_threshold(n: usize, tolerance: f64) -> f64 {
    tolerance * factorial(n) as f64 / pow_self(n) as f64
}

/// `2^n · n^n`, bounding every coefficient the exact Ryser sum can produce.
pub fn exact_coefficient_bound(n: usize) -> Option<u128> {
    1u128
        .checked_shl(n as u32)?
        .checked_mul((n as u128).checked_pow(n as u32)?)
}

/// Exact unnormalized permanent over `Z[ω]`.
///
/// Ryser's formula is evaluated in `Z[x]/(x^n − 1)`, so the result is the
/// histogram of all `n!` permutation phases (up to the fixed rotation given
/// by [`ck_rotation`]).
pub fn exact_amplitude(s: &Arrangement) -> Result<CyclotomicVector> {
    let n = s.n();
    let bound = exact_coefficient_bound(n);
    match bound {
        Some(b) if b <= i64::MAX as u128 => Ok(exact_ryser::<i64>(s)),
        Some(b) if b <= i128::MAX as u128 => Ok(exact_ryser::<i128>(s)),
        _ => Err(Error::Overflow(format!(
            "coefficient bound 2^{n}·{n}^{n} does not fit in 128 bits"
        ))),
    }
}

/// Gray-code Ryser over the distinct ports of `s`. Rows belonging to the same
/// port are identical, so their product is taken as a power of a single row
/// sum.
fn exact_ryser<T: PrimInt + Signed + Into<i128>>(s: &Arrangement) -> CyclotomicVector {
    let n = s.n();
    let ports: Vec<(usize, u32)> = s
        .occupancies()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(p, &m)| (p, m as u32))
        .collect();
    let mut row_sums: Vec<Vec<T>> = vec![vec![T::zero(); n]; ports.len()];
    let mut in_subset = vec![false; n];
    let mut subset_size = 0usize;
    let mut total = vec![T::zero(); n];
    let mut scratch = Scratch::new(n);

    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let adding = !in_subset[col];
        in_subset[col] = adding;
        for ((port, _), sums) in ports.iter().zip(row_sums.iter_mut()) {
            let e = port * col % n;
            if adding {
                sums[e] = sums[e] + T::one();
            } else {
                sums[e] = sums[e] - T::one();
            }
        }
        if adding {
            subset_size += 1;
        } else {
            subset_size -= 1;
        }

        let product = scratch.product(&ports, &row_sums);
        let negative = (n - subset_size) % 2 == 1;
        for (acc, &c) in total.iter_mut().zip(product) {
            *acc = if negative { *acc - c } else { *acc + c };
        }
    }
    CyclotomicVector::from_coeffs(total.into_iter().map(Into::into).collect())
}

struct Scratch<T> {
    acc: Vec<T>,
    base: Vec<T>,
    tmp: Vec<T>,
}

impl<T: PrimInt + Signed> Scratch<T> {
    fn new(n: usize) -> Self {
        Self {
            acc: vec![T::zero(); n],
            base: vec![T::zero(); n],
            tmp: vec![T::zero(); n],
        }
    }

    fn product(&mut self, ports: &[(usize, u32)], row_sums: &[Vec<T>]) -> &[T] {
        let n = self.acc.len();
        self.acc.fill(T::zero());
        self.acc[0] = T::one();
        for ((_, mult), sums) in ports.iter().zip(row_sums) {
            self.base.copy_from_slice(sums);
            let mut e = *mult;
            while e > 0 {
                if e & 1 == 1 {
                    convolve(&self.acc, &self.base, &mut self.tmp, n);
                    std::mem::swap(&mut self.acc, &mut self.tmp);
                }
                e >>= 1;
                if e > 0 {
                    convolve(&self.base, &self.base, &mut self.tmp, n);
                    std::mem::swap(&mut self.base, &mut self.tmp);
                }
            }
        }
        &self.acc
    }
}

#[inline]
fn convolve<T: PrimInt>(a: &[T], b: &[T], out: &mut [T], n: usize) {
    out.fill(T::zero());
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let k = if i + j >= n { i + j - n } else { i + j };
            out[k] = out[k] + x * y;
        }
    }
}

/// Rotation `t` with `ck_decomposition(s) = exact_amplitude(s).rotate(t)`.
///
/// The `c_k` use the phase `Σ_l d_l σ(l)` with 1-based labels, the exact path
/// `Σ_l (d_l − 1)(σ(l) − 1)`; they differ by `Σ d_l + n(n+1)/2 − n`.
pub fn ck_rotation(s: &Arrangement) -> usize {
    let n = s.n();
    (build_port_assignment(s).port_sum() + n * (n + 1) / 2 - n) % n
}

/// `c_r = |{σ : Σ_l d_l σ(l) ≡ r (mod n)}|`, by enumerating all `n!`
/// permutations.
pub fn ck_decomposition(s: &Arrangement) -> Result<CyclotomicVector> {
    let n = s.n();
    check_limit("n for the c_k decomposition", n as u128, CK_LIMIT as u128)?;
    let d = build_port_assignment(s);
    let ports = d.ports();
    let mut counts = vec![0i128; n];
    for_each_permutation(n, |perm| {
        let theta: usize = ports.iter().zip(perm).map(|(&dl, &sl)| dl * (sl + 1)).sum();
        counts[theta % n] += 1;
    });
    Ok(CyclotomicVector::from_coeffs(counts))
}

/// Checks `c_{(r + aQ) mod n} = c_r` for all `r` and `a`.
pub fn verify_gamma_shift(s: &Arrangement) -> Result<bool> {
    let n = s.n();
    let c = ck_decomposition(s)?;
    let q = suppression_q(s);
    if q == 0 {
        return Ok(true);
    }
    let c = c.coeffs();
    Ok((0..n).all(|r| (0..n).all(|a| c[(r + a * q) % n] == c[r])))
}

/// Exact zero test of the amplitude: the permanent polynomial is divisible by
/// `Φ_n`.
pub fn is_suppressed_exact(s: &Arrangement) -> Result<bool> {
    exact_amplitude(s)?.is_zero()
}

/// `|perm|²` as an exact element of `Z[ω]`. Its value divided by
/// `n^n Π s_j!` is the quantum probability.
pub fn exact_modulus_squared(s: &Arrangement) -> Result<CyclotomicVector> {
    exact_amplitude(s)?.norm_squared()
}
