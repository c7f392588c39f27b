mod common;

use std::collections::HashMap;

use multiport::scattering::{ck_rotation, exact_modulus_squared};
use multiport::statistics::{
    occupied_ports_distribution, port_occupancy_distribution, rational_to_f64, OccupancyVariant,
};
use multiport::*;
use proptest::prelude::*;

fn arrangements(n: usize) -> Vec<Arrangement> {
    enumerate_arrangements(n).unwrap().collect()
}

#[test]
fn ryser_matches_naive_on_random_unitaries() {
    let mut rng = common::rng(7);
    for _ in 0..20 {
        let u = common::random_unitary(7, &mut rng);
        let fast = permanent_ryser(&u).unwrap();
        let slow = permanent_naive(&u).unwrap();
        assert!(
            (fast - slow).norm() <= 1e-10 * slow.norm(),
            "{fast} vs {slow}"
        );
    }
}

#[test]
fn normalization_up_to_ten() {
    for n in 1..=10 {
        let classes = enumerate_quantum_classes(n).unwrap();
        let total: f64 = classes
            .iter()
            .map(|c| quantum_probability(&c.representative).unwrap() * c.orbit_size as f64)
            .sum();
        assert!((total - 1.0).abs() < 1e-9, "n = {n}: {total}");
    }
    for n in 1..=7 {
        let total: f64 = arrangements(n)
            .iter()
            .map(|s| quantum_probability(s).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-9, "n = {n}: {total}");
    }
}

#[test]
fn dihedral_invariance_up_to_eight() {
    for n in 1..=8 {
        let mut by_class: HashMap<Arrangement, f64> = HashMap::new();
        for s in arrangements(n) {
            let p = quantum_probability(&s).unwrap();
            let rep = canonical_quantum(&s).representative;
            let reference = *by_class.entry(rep).or_insert(p);
            assert!((p - reference).abs() < 1e-10, "{s}");
        }
    }
}

#[test]
fn law_soundness_up_to_eight() {
    for n in 1..=8 {
        for s in arrangements(n)
            .into_iter()
            .filter(|s| suppression_q(s) != 0)
        {
            assert!(is_suppressed_exact(&s).unwrap(), "{s}");
        }
    }
}

#[test]
fn near_bunched_pairs_are_suppressed() {
    for n in 2..=10 {
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                let mut occ = vec![0u8; n];
                occ[a] = (n - 1) as u8;
                occ[b] += 1;
                let s = Arrangement::new(occ).unwrap();
                assert!(is_suppressed_exact(&s).unwrap(), "{s}");
            }
        }
    }
}

#[test]
fn bunching_enhancement_is_n_factorial() {
    for n in 1..=8 {
        let s = Arrangement::bunched(n, n / 2).unwrap();
        let m = exact_modulus_squared(&s)
            .unwrap()
            .as_integer()
            .unwrap()
            .unwrap();
        let factorial: i128 = (1..=n as i128).product();
        // P_qm / P_class = |perm|² / n!
        assert_eq!(m, factorial * factorial, "n = {n}");
    }
}

#[test]
fn coincident_suppressed_iff_even() {
    for n in 2..=10 {
        let s = Arrangement::coincident(n).unwrap();
        assert_eq!(is_suppressed_exact(&s).unwrap(), n % 2 == 0, "n = {n}");
    }
}

#[test]
fn exact_matches_ck_and_gamma_shift_up_to_seven() {
    for n in 1..=7 {
        for s in arrangements(n) {
            let ck = ck_decomposition(&s).unwrap();
            assert_eq!(ck.coefficient_sum(), (1..=n as i128).product::<i128>());
            assert_eq!(
                ck,
                exact_amplitude(&s).unwrap().rotate(ck_rotation(&s)),
                "{s}"
            );
            assert!(verify_gamma_shift(&s).unwrap(), "{s}");
        }
    }
}

/// Direct enumeration oracle for the distributions, independent of the class
/// decomposition.
fn direct_distributions(n: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut occupied = vec![0.0; n];
    let mut marginal = vec![0.0; n + 1];
    let mut port_one = vec![0.0; n + 1];
    for s in arrangements(n) {
        let p = quantum_probability(&s).unwrap();
        occupied[s.occupied_ports() - 1] += p;
        for &k in s.occupancies() {
            marginal[k as usize] += p / n as f64;
        }
        port_one[s.occupancies()[0] as usize] += p;
    }
    (occupied, marginal, port_one)
}

#[test]
fn class_decomposition_matches_direct_enumeration() {
    for n in 2..=8 {
        let (occupied, marginal, port_one) = direct_distributions(n);
        let occ = occupied_ports_distribution(n).unwrap();
        for (row, expected) in occ.rows.iter().zip(&occupied) {
            assert!(
                (row.quantum - expected).abs() < 1e-10,
                "n = {n}, k = {}",
                row.index
            );
        }
        let port = port_occupancy_distribution(n, OccupancyVariant::Marginal).unwrap();
        for ((row, m), p1) in port.rows.iter().zip(&marginal).zip(&port_one) {
            assert!(
                (row.quantum - m).abs() < 1e-10,
                "n = {n}, k = {}",
                row.index
            );
            assert!(
                (row.quantum - p1).abs() < 1e-10,
                "port 1 marginal, n = {n}, k = {}",
                row.index
            );
        }
    }
}

#[test]
fn distribution_columns_are_probability_vectors() {
    for n in 1..=9 {
        let tables = [
            occupied_ports_distribution(n).unwrap(),
            port_occupancy_distribution(n, OccupancyVariant::Marginal).unwrap(),
            statistics::classical_class_distribution(n).unwrap(),
        ];
        for t in tables {
            let c: f64 = t.rows.iter().map(|r| rational_to_f64(r.classical)).sum();
            let q: f64 = t.rows.iter().map(|r| r.quantum).sum();
            let a: f64 = t.rows.iter().map(|r| rational_to_f64(r.approx)).sum();
            for total in [c, q, a] {
                assert!((total - 1.0).abs() < 1e-9, "{:?} n = {n}: {total}", t.kind);
            }
            for r in &t.rows {
                assert!((0.0..=1.0 + 1e-12).contains(&r.quantum));
            }
        }
    }
}

#[test]
fn bosons_occupy_fewer_ports() {
    for n in 3..=10 {
        let t = occupied_ports_distribution(n).unwrap();
        let classical = t.mean_index(|r| rational_to_f64(r.classical));
        let quantum = t.mean_index(|r| r.quantum);
        assert!(quantum < classical, "n = {n}: {quantum} vs {classical}");
    }
}

fn arrangement_strategy() -> impl Strategy<Value = Arrangement> {
    (1usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n).prop_map(move |picks| {
            let mut occ = vec![0u8; n];
            for p in picks {
                occ[p] += 1;
            }
            Arrangement::new(occ).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn canonical_forms_are_idempotent(s in arrangement_strategy()) {
        let class = canonical_quantum(&s);
        for member in dihedral_orbit(&s) {
            prop_assert_eq!(&canonical_quantum(&member), &class);
            prop_assert_eq!(canonical_classical(&member), canonical_classical(&s));
        }
        prop_assert_eq!(2 * s.n() % class.orbit_size, 0);
    }

    #[test]
    fn port_assignment_is_invertible(s in arrangement_strategy()) {
        let d = build_port_assignment(&s);
        prop_assert_eq!(d.to_arrangement().unwrap(), s);
    }

    #[test]
    fn float_and_exact_amplitudes_agree(s in arrangement_strategy()) {
        let amp = scattering::quantum_amplitude_with_exact(&s).unwrap();
        let exact = amp.exact.unwrap().to_complex() * amp.normalization;
        prop_assert!((exact - amp.value).norm() < 1e-9);
        if suppression_q(&s) != 0 {
            prop_assert!(amp.value.norm_sqr() < 1e-20);
        }
    }
}

#[test]
fn permuted_suppressed_event_is_enhanced() {
    let s1: Arrangement = "2,1,2,1,0,0".parse().unwrap();
    let s2: Arrangement = "0,1,2,0,2,1".parse().unwrap();
    assert_eq!(suppression_q(&s1), 2);
    assert!(is_suppressed_exact(&s1).unwrap());
    assert_eq!(suppression_q(&s2), 0);
    let e = statistics::enhancement(&s2).unwrap().exact().unwrap();
    assert_eq!(e, Rational::new(36, 5));
    assert!(e > Rational::from(7));
}
