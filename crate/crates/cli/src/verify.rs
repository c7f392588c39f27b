//! Oracle and structural checks for a single `n`.

use std::collections::HashMap;

use rayon::prelude::*;

use multiport::fourier::FourierUnitary;
use multiport::permanent::{permanent_naive, permanent_ryser, NAIVE_DEFAULT_LIMIT};
use multiport::scattering::{
    ck_decomposition, ck_rotation, exact_amplitude, quantum_amplitude, suppression_q,
    verify_gamma_shift, zero_threshold, CK_LIMIT,
};
use multiport::{
    build_port_assignment, canonical_quantum, enumerate_arrangements, enumerate_quantum_classes,
    Arrangement,
};

use crate::table::{Cell, Table};

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    /// `None` when the property does not apply at this `n`.
    pub passed: Option<bool>,
    pub checked: usize,
    pub detail: String,
}

impl PropertyResult {
    fn from_violations(name: &'static str, checked: usize, violations: Vec<String>) -> Self {
        let passed = violations.is_empty();
        let detail = match violations.first() {
            None => String::new(),
            Some(first) => format!("{} violation(s), first: {first}", violations.len()),
        };
        Self {
            name,
            passed: Some(passed),
            checked,
            detail,
        }
    }

    fn skipped(name: &'static str, why: String) -> Self {
        Self {
            name,
            passed: None,
            checked: 0,
            detail: why,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub n: usize,
    pub properties: Vec<PropertyResult>,
    /// Classes with `Q = 0` and an exactly vanishing amplitude.
    pub anomalous: Vec<Arrangement>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed != Some(false))
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(
            "verify",
            self.n,
            "both",
            &["property", "status", "checked", "detail"],
        );
        for p in &self.properties {
            let status = match p.passed {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skip",
            };
            table.push(vec![
                Cell::Text(p.name.into()),
                Cell::Text(status.into()),
                Cell::Int(p.checked as i128),
                Cell::Text(p.detail.clone()),
            ]);
        }
        let listed: Vec<String> = self.anomalous.iter().map(|s| s.to_string()).collect();
        table.push(vec![
            Cell::Text("anomalous-suppressions".into()),
            Cell::Text("info".into()),
            Cell::Int(self.anomalous.len() as i128),
            Cell::Text(listed.join(" ")),
        ]);
        table
    }
}

pub fn run_verification(n: usize, tolerance: f64) -> multiport::Result<VerificationReport> {
    let arrangements: Vec<Arrangement> = enumerate_arrangements(n)?.collect();
    let classes = enumerate_quantum_classes(n)?;
    let mut properties = Vec::new();

    let amplitudes = arrangements
        .par_iter()
        .map(quantum_amplitude)
        .collect::<multiport::Result<Vec<_>>>()?;
    let exact = arrangements
        .par_iter()
        .map(exact_amplitude)
        .collect::<multiport::Result<Vec<_>>>()?;

    // Permanent oracle agreement on the row-repeated Fourier matrices.
    if n <= NAIVE_DEFAULT_LIMIT {
        let u = FourierUnitary::new(n)?;
        let violations: Vec<String> = arrangements
            .par_iter()
            .filter_map(|s| {
                let m = u.rows_for_ports(build_port_assignment(s).ports());
                let fast = permanent_ryser(&m).ok()?;
                let slow = permanent_naive(&m).ok()?;
                let err = (fast - slow).norm();
                (err > 1e-10 * slow.norm().max(1.0))
                    .then(|| format!("{s}: ryser {fast} vs naive {slow}"))
            })
            .collect();
        properties.push(PropertyResult::from_violations(
            "permanent-oracle",
            arrangements.len(),
            violations,
        ));
    } else {
        properties.push(PropertyResult::skipped(
            "permanent-oracle",
            format!("naive permanent limited to n ≤ {NAIVE_DEFAULT_LIMIT}"),
        ));
    }

    let violations: Vec<String> = arrangements
        .iter()
        .zip(&amplitudes)
        .zip(&exact)
        .filter_map(|((s, amp), z)| {
            let value = z.to_complex() * amp.normalization;
            ((value - amp.value).norm() >= 1e-9)
                .then(|| format!("{s}: exact {value} vs float {}", amp.value))
        })
        .collect();
    properties.push(PropertyResult::from_violations(
        "exact-vs-float-amplitude",
        arrangements.len(),
        violations,
    ));

    if n <= CK_LIMIT {
        let violations: Vec<String> = arrangements
            .par_iter()
            .zip(&exact)
            .filter_map(|(s, z)| {
                let ck = ck_decomposition(s).ok()?;
                (ck != z.rotate(ck_rotation(s)))
                    .then(|| format!("{s}: c_k {:?} vs exact {:?}", ck.coeffs(), z.coeffs()))
            })
            .collect();
        properties.push(PropertyResult::from_violations(
            "exact-vs-ck",
            arrangements.len(),
            violations,
        ));
    } else {
        properties.push(PropertyResult::skipped(
            "exact-vs-ck",
            format!("c_k brute force limited to n ≤ {CK_LIMIT}"),
        ));
    }

    let total: f64 = amplitudes.iter().map(|a| a.probability()).sum();
    let normalization = if (total - 1.0).abs() < 1e-9 {
        vec![]
    } else {
        vec![format!("Σ P = {total}")]
    };
    properties.push(PropertyResult::from_violations(
        "normalization",
        arrangements.len(),
        normalization,
    ));

    let probability: HashMap<&Arrangement, f64> = arrangements
        .iter()
        .zip(&amplitudes)
        .map(|(s, a)| (s, a.probability()))
        .collect();
    let violations: Vec<String> = arrangements
        .iter()
        .filter_map(|s| {
            let rep = canonical_quantum(s).representative;
            let (p, q) = (probability[s], probability[&rep]);
            ((p - q).abs() >= 1e-10).then(|| format!("{s}: {p} vs representative {rep}: {q}"))
        })
        .collect();
    properties.push(PropertyResult::from_violations(
        "dihedral-invariance",
        arrangements.len(),
        violations,
    ));

    let mut law_checked = 0;
    let mut violations = Vec::new();
    for (s, z) in arrangements.iter().zip(&exact) {
        if suppression_q(s) != 0 {
            law_checked += 1;
            if !z.is_zero()? {
                violations.push(format!(
                    "{s}: Q = {} but amplitude is nonzero",
                    suppression_q(s)
                ));
            }
        }
    }
    properties.push(PropertyResult::from_violations(
        "law-soundness",
        law_checked,
        violations,
    ));

    if n <= CK_LIMIT {
        let violations: Vec<String> = arrangements
            .par_iter()
            .filter_map(|s| match verify_gamma_shift(s) {
                Ok(true) => None,
                Ok(false) => Some(format!("{s}: c_(r+Q) ≠ c_r")),
                Err(e) => Some(format!("{s}: {e}")),
            })
            .collect();
        properties.push(PropertyResult::from_violations(
            "gamma-shift",
            arrangements.len(),
            violations,
        ));
    } else {
        properties.push(PropertyResult::skipped(
            "gamma-shift",
            format!("c_k brute force limited to n ≤ {CK_LIMIT}"),
        ));
    }

    let threshold = zero_threshold(n, tolerance);
    let index: HashMap<&Arrangement, usize> = arrangements
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut anomalous = Vec::new();
    let mut violations = Vec::new();
    for class in &classes {
        let s = &class.representative;
        let i = index[s];
        let exact_zero = exact[i].is_zero()?;
        let float_zero = amplitudes[i].probability() < threshold;
        if exact_zero != float_zero {
            violations.push(format!(
                "{s}: exact zero {exact_zero}, float zero {float_zero}"
            ));
        }
        if exact_zero && suppression_q(s) == 0 {
            anomalous.push(s.clone());
        }
    }
    properties.push(PropertyResult::from_violations(
        "float-vs-exact-verdict",
        classes.len(),
        violations,
    ));

    Ok(VerificationReport {
        n,
        properties,
        anomalous,
    })
}
