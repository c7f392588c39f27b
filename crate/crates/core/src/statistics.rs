//! Aggregate observables over full enumerations: enhancement ratios, the
//! per-class probability table, the coarse-grained distributions and the
//! class census.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::arrangement::{enumerate_arrangements, total_arrangements, Arrangement, Arrangements};
use crate::classes::{
    enumerate_classical_classes, enumerate_quantum_classes, ClassicalClass, QuantumClass,
};
use crate::error::{Error, Result};
use crate::scattering::{
    classical_probability, exact_amplitude, quantum_probability, suppression_q,
};
use crate::util::{factorial, pow_self};
use crate::Rational;

/// Which amplitude path feeds a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Double-precision Ryser permanents only.
    Float,
    /// Exact permanents over `Z[ω]`; probabilities derived from them.
    Exact,
    /// Floating probabilities plus exact zero verdicts and enhancements.
    Both,
}

impl Mode {
    pub fn uses_exact(self) -> bool {
        matches!(self, Mode::Exact | Mode::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Float => "float",
            Mode::Exact => "exact",
            Mode::Both => "both",
        }
    }
}

/// Quantum-to-classical probability ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Enhancement {
    Exact(Rational),
    Float(f64),
}

impl Enhancement {
    pub fn to_f64(self) -> f64 {
        match self {
            Enhancement::Exact(r) => rational_to_f64(r),
            Enhancement::Float(x) => x,
        }
    }

    pub fn exact(self) -> Option<Rational> {
        match self {
            Enhancement::Exact(r) => Some(r),
            Enhancement::Float(_) => None,
        }
    }
}

impl fmt::Display for Enhancement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Enhancement::Exact(r) => write!(f, "{r}"),
            Enhancement::Float(x) => write!(f, "{x}"),
        }
    }
}

pub fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Quantum probability of `s` in the form the exact path delivers it.
#[derive(Clone, Copy, Debug, PartialEq)]
struct ExactEvaluation {
    zero: bool,
    /// `|perm|²` when it is a rational integer.
    modulus_squared: Option<i128>,
    /// Floating value of `|perm|²` evaluated from the exact coefficients.
    modulus_squared_f64: f64,
}

fn evaluate_exact(s: &Arrangement) -> Result<ExactEvaluation> {
    let z = exact_amplitude(s)?;
    let zero = z.is_zero()?;
    if zero {
        return Ok(ExactEvaluation {
            zero,
            modulus_squared: Some(0),
            modulus_squared_f64: 0.0,
        });
    }
    let modulus_squared = z.norm_squared()?.as_integer()?;
    Ok(ExactEvaluation {
        zero,
        modulus_squared,
        modulus_squared_f64: z.to_complex().norm_sqr(),
    })
}

/// `P_qm(s) / P_class(s)`, exact whenever `|perm|²` is a rational integer.
///
/// Since `P_qm = |perm|² / (n^n Π s_j!)` and `P_class = n! / (n^n Π s_j!)`,
/// the ratio is `|perm|² / n!`.
pub fn enhancement(s: &Arrangement) -> Result<Enhancement> {
    let n = s.n();
    match evaluate_exact(s) {
        Ok(eval) => Ok(match eval.modulus_squared {
            Some(m) => Enhancement::Exact(Rational::new(m, factorial(n) as i128)),
            None => Enhancement::Float(eval.modulus_squared_f64 / factorial(n) as f64),
        }),
        Err(Error::Overflow(_)) => {
            let pc = rational_to_f64(classical_probability(s)?);
            Ok(Enhancement::Float(quantum_probability(s)? / pc))
        }
        Err(e) => Err(e),
    }
}

/// One quantum equivalence class with its probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassProbabilityRow {
    pub representative: Arrangement,
    pub orbit_size: usize,
    pub q: usize,
    /// Exact zero verdict. Always known when `q ≠ 0` (the suppression law);
    /// `None` for `q = 0` classes evaluated in [`Mode::Float`].
    pub suppressed_exact: Option<bool>,
    pub p_classical: Rational,
    /// Probability of a single member of the class.
    pub p_quantum: f64,
    pub enhancement: Enhancement,
}

/// Evaluates one class. Classes with `Q ≠ 0` are zero by the suppression law
/// and are not passed through a permanent.
pub fn evaluate_class(class: &QuantumClass, mode: Mode) -> Result<ClassProbabilityRow> {
    let s = &class.representative;
    let n = s.n();
    let q = suppression_q(s);
    let p_classical = classical_probability(s)?;
    let base = ClassProbabilityRow {
        representative: s.clone(),
        orbit_size: class.orbit_size,
        q,
        suppressed_exact: Some(true),
        p_classical,
        p_quantum: 0.0,
        enhancement: Enhancement::Exact(Rational::from_integer(0)),
    };
    if q != 0 {
        return Ok(base);
    }
    let pc = rational_to_f64(p_classical);
    match mode {
        Mode::Float => {
            let p = quantum_probability(s)?;
            Ok(ClassProbabilityRow {
                suppressed_exact: None,
                p_quantum: p,
                enhancement: Enhancement::Float(p / pc),
                ..base
            })
        }
        Mode::Exact | Mode::Both => {
            let eval = evaluate_exact(s)?;
            if eval.zero {
                return Ok(base);
            }
            let scale = pow_self(n) as f64 * s.occupancy_factorial_product() as f64;
            let (p_exact_path, enhancement) = match eval.modulus_squared {
                Some(m) => {
                    let denom = pow_self(n) as i128 * s.occupancy_factorial_product() as i128;
                    (
                        rational_to_f64(Rational::new(m, denom)),
                        Enhancement::Exact(Rational::new(m, factorial(n) as i128)),
                    )
                }
                None => {
                    let p = eval.modulus_squared_f64 / scale;
                    (p, Enhancement::Float(p / pc))
                }
            };
            let p_quantum = if mode == Mode::Both {
                quantum_probability(s)?
            } else {
                p_exact_path
            };
            Ok(ClassProbabilityRow {
                suppressed_exact: Some(false),
                p_quantum,
                enhancement,
                ..base
            })
        }
    }
}

/// One row per quantum class, sorted by classical probability (ties broken by
/// the representative, ascending).
pub fn class_probability_table(n: usize, mode: Mode) -> Result<Vec<ClassProbabilityRow>> {
    let classes = enumerate_quantum_classes(n)?;
    let mut rows = classes
        .par_iter()
        .map(|c| evaluate_class(c, mode))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        a.p_classical
            .cmp(&b.p_classical)
            .then_with(|| a.representative.cmp(&b.representative))
    });
    Ok(rows)
}

/// Nonsuppressed classes with their exact enhancements, in the order of
/// [`class_probability_table`].
pub fn nonsuppressed_classes(n: usize) -> Result<Vec<ClassProbabilityRow>> {
    Ok(class_probability_table(n, Mode::Exact)?
        .into_iter()
        .filter(|row| row.suppressed_exact == Some(false))
        .collect())
}

/// Bosonic estimate `P_approx(s) ∝ (Π s_j!) · P_class(s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BosonicApproximation {
    n: usize,
    /// `Σ_r (Π r_j!) P_class(r)` over all arrangements `r`.
    normalization: Rational,
}

/// Largest `n` for which [`bosonic_approximation`] will stream the full
/// enumeration.
pub const APPROXIMATION_LIMIT: usize = 16;

pub fn bosonic_approximation(n: usize) -> Result<BosonicApproximation> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    crate::error::check_limit(
        "n for the bosonic approximation",
        n as u128,
        APPROXIMATION_LIMIT as u128,
    )?;
    let mut normalization = Rational::from_integer(0);
    for class in enumerate_classical_classes(n)? {
        let member = class.as_arrangement();
        let weight = Rational::from_integer(member.occupancy_factorial_product() as i128)
            * classical_probability(&member)?;
        normalization += weight * Rational::from_integer(class.member_count as i128);
    }
    Ok(BosonicApproximation { n, normalization })
}

impl BosonicApproximation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn normalization(&self) -> Rational {
        self.normalization
    }

    pub fn probability(&self, s: &Arrangement) -> Result<Rational> {
        if s.n() != self.n {
            return Err(Error::InvalidInput(format!(
                "arrangement has {} ports, approximation built for {}",
                s.n(),
                self.n
            )));
        }
        let weight = Rational::from_integer(s.occupancy_factorial_product() as i128)
            * classical_probability(s)?;
        Ok(weight / self.normalization)
    }

    /// Streams `(s, P_approx(s))` over every arrangement.
    pub fn iter(&self) -> impl Iterator<Item = (Arrangement, Rational)> + '_ {
        let all: Arrangements =
            enumerate_arrangements(self.n).expect("n validated on construction");
        all.map(move |s| {
            let p = self.probability(&s).expect("arrangement matches n");
            (s, p)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistributionKind {
    OccupiedPorts,
    PortOccupancy,
    ClassicalClasses,
}

impl DistributionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DistributionKind::OccupiedPorts => "occupied-ports",
            DistributionKind::PortOccupancy => "port-occupancy",
            DistributionKind::ClassicalClasses => "classical-classes",
        }
    }
}

/// How "probability to find `k` particles in one port" is normalized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OccupancyVariant {
    /// Occupancy law of a uniformly chosen port, `Σ_s P(s) |{j : s_j = k}| / n`.
    #[default]
    Marginal,
    /// `Σ_s P(s) [∃ j : s_j = k]`. Columns do not sum to one.
    AtLeastOne,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionRow {
    /// `k` for occupied ports and port occupancy; the 0-based rank for
    /// classical classes.
    pub index: usize,
    pub label: String,
    pub classical: Rational,
    pub quantum: f64,
    pub approx: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionTable {
    pub kind: DistributionKind,
    pub n: usize,
    pub rows: Vec<DistributionRow>,
}

impl DistributionTable {
    /// `Σ index · p` for the chosen column.
    pub fn mean_index(&self, column: impl Fn(&DistributionRow) -> f64) -> f64 {
        self.rows.iter().map(|r| r.index as f64 * column(r)).sum()
    }
}

/// Floating quantum probability of every class, zero for `Q ≠ 0`. Output is
/// in enumeration order.
fn class_quantum_probabilities(n: usize) -> Result<Vec<(QuantumClass, f64)>> {
    let classes = enumerate_quantum_classes(n)?;
    classes
        .into_par_iter()
        .map(|c| {
            let p = if suppression_q(&c.representative) != 0 {
                0.0
            } else {
                quantum_probability(&c.representative)?
            };
            Ok((c, p))
        })
        .collect()
}

/// Exact classical weight of a class: members × multinomial, over `n^n`.
fn classical_class_probability(class: &ClassicalClass) -> Result<Rational> {
    Ok(classical_probability(&class.as_arrangement())?
        * Rational::from_integer(class.member_count as i128))
}

fn approx_class_probability(
    class: &ClassicalClass,
    approx: &BosonicApproximation,
) -> Result<Rational> {
    Ok(approx.probability(&class.as_arrangement())?
        * Rational::from_integer(class.member_count as i128))
}

/// Shared driver: `category` maps an arrangement (or partition) to a list of
/// `(row, weight)` contributions; `rows` is the number of categories.
fn accumulate(
    n: usize,
    rows: usize,
    category: impl Fn(&[u8]) -> Vec<(usize, Rational)>,
) -> Result<(Vec<Rational>, Vec<f64>, Vec<Rational>)> {
    let approx = bosonic_approximation(n)?;
    let mut classical = vec![Rational::from_integer(0); rows];
    let mut approx_col = vec![Rational::from_integer(0); rows];
    for class in enumerate_classical_classes(n)? {
        let pc = classical_class_probability(&class)?;
        let pa = approx_class_probability(&class, &approx)?;
        for (row, w) in category(&class.partition) {
            classical[row] += pc * w;
            approx_col[row] += pa * w;
        }
    }
    let mut quantum = vec![0.0f64; rows];
    for (class, p) in class_quantum_probabilities(n)? {
        if p == 0.0 {
            continue;
        }
        let mass = p * class.orbit_size as f64;
        for (row, w) in category(class.representative.occupancies()) {
            quantum[row] += mass * rational_to_f64(w);
        }
    }
    Ok((classical, quantum, approx_col))
}

/// Probability of events with exactly `k` occupied ports, `k = 1..n`.
pub fn occupied_ports_distribution(n: usize) -> Result<DistributionTable> {
    let (classical, quantum, approx) = accumulate(n, n, |occ| {
        let k = occ.iter().filter(|&&s| s > 0).count();
        vec![(k - 1, Rational::from_integer(1))]
    })?;
    let rows = (0..n)
        .map(|i| DistributionRow {
            index: i + 1,
            label: (i + 1).to_string(),
            classical: classical[i],
            quantum: quantum[i],
            approx: approx[i],
        })
        .collect();
    Ok(DistributionTable {
        kind: DistributionKind::OccupiedPorts,
        n,
        rows,
    })
}

/// Probability to find `k` particles in a port, `k = 0..n`.
pub fn port_occupancy_distribution(
    n: usize,
    variant: OccupancyVariant,
) -> Result<DistributionTable> {
    let (classical, quantum, approx) = accumulate(n, n + 1, |occ| {
        let mut counts = vec![0i128; n + 1];
        for &s in occ {
            counts[s as usize] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(k, c)| match variant {
                OccupancyVariant::Marginal => (k, Rational::new(c, n as i128)),
                OccupancyVariant::AtLeastOne => (k, Rational::from_integer(1)),
            })
            .collect()
    })?;
    let rows = (0..=n)
        .map(|k| DistributionRow {
            index: k,
            label: k.to_string(),
            classical: classical[k],
            quantum: quantum[k],
            approx: approx[k],
        })
        .collect();
    Ok(DistributionTable {
        kind: DistributionKind::PortOccupancy,
        n,
        rows,
    })
}

/// Probability grouped by classical class, ordered by ascending classical
/// probability (ties by partition, ascending).
pub fn classical_class_distribution(n: usize) -> Result<DistributionTable> {
    let classes = enumerate_classical_classes(n)?;
    let (classical, quantum, approx) = {
        let lookup: std::collections::HashMap<Vec<u8>, usize> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.partition.clone(), i))
            .collect();
        accumulate(n, classes.len(), |occ| {
            let mut key = occ.to_vec();
            key.sort_unstable_by(|a, b| b.cmp(a));
            vec![(lookup[&key], Rational::from_integer(1))]
        })?
    };
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| match classical[a].cmp(&classical[b]) {
        Ordering::Equal => classes[a].partition.cmp(&classes[b].partition),
        other => other,
    });
    let rows = order
        .into_iter()
        .enumerate()
        .map(|(rank, i)| DistributionRow {
            index: rank,
            label: classes[i].label(),
            classical: classical[i],
            quantum: quantum[i],
            approx: approx[i],
        })
        .collect();
    Ok(DistributionTable {
        kind: DistributionKind::ClassicalClasses,
        n,
        rows,
    })
}

/// One line of the class census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub n: usize,
    pub n_total: u128,
    pub n_class: usize,
    pub n_quantum: usize,
    /// Classes with `Q ≠ 0`.
    pub n_law: usize,
    /// Classes with `Q = 0` whose exact amplitude vanishes; `None` when the
    /// exact path was not requested.
    pub n_supp: Option<usize>,
}

impl Table1Row {
    pub fn law_fraction(&self) -> f64 {
        self.n_law as f64 / self.n_quantum as f64
    }
}

pub fn table1_row(n: usize, exact: bool) -> Result<Table1Row> {
    let classes = enumerate_quantum_classes(n)?;
    let n_class = enumerate_classical_classes(n)?.len();
    let unlawful: Vec<&QuantumClass> = classes
        .iter()
        .filter(|c| suppression_q(&c.representative) == 0)
        .collect();
    let n_law = classes.len() - unlawful.len();
    let n_supp = if exact {
        let verdicts = unlawful
            .par_iter()
            .map(|c| exact_amplitude(&c.representative)?.is_zero())
            .collect::<Result<Vec<bool>>>()?;
        Some(verdicts.into_iter().filter(|&z| z).count())
    } else {
        None
    };
    Ok(Table1Row {
        n,
        n_total: total_arrangements(n),
        n_class,
        n_quantum: classes.len(),
        n_law,
        n_supp,
    })
}

/// Census rows for `n = 2..=n_max`.
pub fn table1(n_max: usize, exact: bool) -> Result<Vec<Table1Row>> {
    if n_max < 2 {
        return Err(Error::InvalidInput(format!(
            "n_max must be at least 2, got {n_max}"
        )));
    }
    (2..=n_max).map(|n| table1_row(n, exact)).collect()
}

/// `1 − 1/n`, the expected fraction of classes with `Q ≠ 0` when `Q` is
/// uniform over residues.
pub fn suppressed_fraction_estimate(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "n must be at least 2, got {n}"
        )));
    }
    Ok(1.0 - 1.0 / n as f64)
}
