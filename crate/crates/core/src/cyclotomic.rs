//! Exact arithmetic in `Z[ω]`, `ω = e^{2πi/n}`.
//!
//! Elements are stored as coefficient vectors over the `n` powers of `ω`,
//! i.e. as elements of the group ring `Z[x]/(x^n − 1)`. That representation
//! is not unique as a complex number; [`CyclotomicVector::reduced`] maps it to
//! the unique remainder modulo the cyclotomic polynomial `Φ_n`, which is
//! what all zero tests use.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `n` for which [`cyclotomic_polynomial`] is supported.
pub const MAX_CYCLOTOMIC_ORDER: usize = 64;

/// Dense integer polynomial, coefficients from the constant term upwards.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `x^n − 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] = 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor, with overflow checks.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        if divisor.coeffs[d] != 1 {
            return Err(Error::InvalidInput("divisor is not monic".into()));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::new(Vec::new()), self.clone()));
        }
        let mut quot = vec![0i128; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let lead = rem[top];
            if lead == 0 {
                continue;
            }
            quot[top - d] = lead;
            for (k, &c) in divisor.coeffs.iter().enumerate() {
                let idx = top - d + k;
                let delta = lead.checked_mul(c).ok_or_else(reduction_overflow)?;
                rem[idx] = rem[idx].checked_sub(delta).ok_or_else(reduction_overflow)?;
            }
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }
}

fn reduction_overflow() -> Error {
    Error::Overflow("coefficient overflow during polynomial division".into())
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.unsigned_abs();
            match (k, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{mag}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Φ_n(x)`, obtained by dividing `x^n − 1` by `Φ_d` for every proper divisor
/// `d` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> Result<IntPolynomial> {
    if n == 0 || n > MAX_CYCLOTOMIC_ORDER {
        return Err(Error::InvalidInput(format!(
            "cyclotomic order {n} outside 1..={MAX_CYCLOTOMIC_ORDER}"
        )));
    }
    let mut known: BTreeMap<usize, IntPolynomial> = BTreeMap::new();
    for d in divisors(n) {
        let mut poly = IntPolynomial::x_pow_minus_one(d);
        for e in divisors(d).into_iter().filter(|&e| e < d) {
            let (q, r) = poly.div_rem_monic(&known[&e])?;
            debug_assert!(r.is_zero());
            poly = q;
        }
        known.insert(d, poly);
    }
    Ok(known.remove(&n).expect("n divides itself"))
}

/// `Σ_k c_k ω^k` with `ω = e^{2πi/n}` and exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicVector {
    coeffs: Vec<i128>,
}

impl CyclotomicVector {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "cyclotomic order must be positive");
        Self { coeffs: vec![0; n] }
    }

    /// The integer `1`.
    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, 1)
    }

    /// `coefficient · ω^power`
    pub fn monomial(n: usize, power: usize, coefficient: i128) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[power % n] = coefficient;
        v
    }

    pub fn from_coeffs(coeffs: Vec<i128>) -> Self {
        assert!(!coeffs.is_empty(), "cyclotomic order must be positive");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i128> {
        self.coeffs
    }

    /// Sum of the coefficients, i.e. the value at `ω = 1`.
    pub fn coefficient_sum(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `ω^k`.
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[(i + k) % n] = c;
        }
        Self { coeffs: out }
    }

    /// Complex conjugate: `ω^k ↦ ω^{−k}`.
    pub fn conj(&self) -> Self {
        let n = self.order();
        let mut out = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[(n - i) % n] = c;
        }
        Self { coeffs: out }
    }

    /// Cyclic convolution with overflow checks.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other);
        let mut out = vec![0i128; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a
                    .checked_mul(b)
                    .ok_or_else(|| Error::Overflow("cyclotomic product overflow".into()))?;
                let slot = &mut out[(i + j) % n];
                *slot = slot
                    .checked_add(term)
                    .ok_or_else(|| Error::Overflow("cyclotomic product overflow".into()))?;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `|z|²` as an element of the same ring.
    pub fn norm_squared(&self) -> Result<Self> {
        self.checked_mul(&self.conj())
    }

    /// Unique representative modulo `Φ_n`, as a polynomial of degree below
    /// `φ(n)`.
    pub fn reduced(&self) -> Result<IntPolynomial> {
        let phi = cyclotomic_polynomial(self.order())?;
        let (_, rem) = IntPolynomial::new(self.coeffs.clone()).div_rem_monic(&phi)?;
        Ok(rem)
    }

    /// Exact test for `Σ c_k ω^k = 0`.
    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.reduced()?.is_zero())
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Result<Option<i128>> {
        let rem = self.reduced()?;
        Ok(match rem.coeffs() {
            [] => Some(0),
            [c] => Some(*c),
            _ => None,
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| root_of_unity(k, n) * c as f64)
            .sum()
    }

    fn same_order(&self, other: &Self) -> usize {
        assert_eq!(self.order(), other.order(), "mismatched cyclotomic orders");
        self.order()
    }
}

/// `e^{2πi k/n}` with the exponent reduced mod `n` first.
pub fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * (k % n) as f64 / n as f64;
    Complex64::from_polar(1.0, angle)
}

impl fmt::Debug for CyclotomicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicVector{:?}", self.coeffs)
    }
}

impl Add for &CyclotomicVector {
    type Output = CyclotomicVector;

    fn add(self, rhs: Self) -> CyclotomicVector {
        self.same_order(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicVector { coeffs }
    }
}

impl Sub for &CyclotomicVector {
    type Output = CyclotomicVector;

    fn sub(self, rhs: Self) -> CyclotomicVector {
        self.same_order(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicVector { coeffs }
    }
}

impl Neg for &CyclotomicVector {
    type Output = CyclotomicVector;

    fn neg(self) -> CyclotomicVector {
        CyclotomicVector {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Panics on overflow; use [`CyclotomicVector::checked_mul`] when the
/// coefficient bound is not known in advance.
impl Mul for &CyclotomicVector {
    type Output = CyclotomicVector;

    fn mul(self, rhs: Self) -> CyclotomicVector {
        self.checked_mul(rhs).expect("cyclotomic product overflow")
    }
}
