//! Classical (port permutation) and quantum (dihedral) equivalence classes.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arrangement::{enumeration_chunks, total_arrangements, visit_chunk, Arrangement};
use crate::error::{check_limit, Error, Result};
use crate::util::factorial;

/// Default bound on how many arrangements a full sweep may visit
/// (`N_total` at `n = 14`).
pub const DEFAULT_ENUMERATION_CAP: u128 = 20_058_300;

/// Orbit of arrangements under arbitrary port permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicalClass {
    /// Occupancies sorted in non-increasing order, zeros included.
    pub partition: Vec<u8>,
    pub member_count: u128,
}

impl ClassicalClass {
    fn from_partition(partition: Vec<u8>) -> Self {
        let n = partition.len();
        let mut denom: u128 = 1;
        let mut i = 0;
        while i < n {
            let j = (i..n).find(|&j| partition[j] != partition[i]).unwrap_or(n);
            denom *= factorial(j - i);
            i = j;
        }
        let member_count = factorial(n) / denom;
        Self {
            partition,
            member_count,
        }
    }

    /// Partition as a sum of positive parts, e.g. `2+2+1+1`.
    pub fn label(&self) -> String {
        self.partition
            .iter()
            .filter(|&&p| p > 0)
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn as_arrangement(&self) -> Arrangement {
        Arrangement::from_raw(self.partition.clone())
    }
}

pub fn canonical_classical(s: &Arrangement) -> ClassicalClass {
    let mut partition = s.occupancies().to_vec();
    partition.sort_unstable_by(|a, b| b.cmp(a));
    ClassicalClass::from_partition(partition)
}

/// All partitions of `n` (padded with zeros to length `n`), in descending
/// lexicographic order.
pub fn enumerate_classical_classes(n: usize) -> Result<Vec<ClassicalClass>> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    partitions_into(n, n, &mut current, &mut |parts| {
        let mut padded = parts.to_vec();
        padded.resize(n, 0);
        out.push(ClassicalClass::from_partition(padded));
    });
    Ok(out)
}

fn partitions_into(
    rest: usize,
    max_part: usize,
    current: &mut Vec<u8>,
    emit: &mut impl FnMut(&[u8]),
) {
    if rest == 0 {
        emit(current);
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        current.push(part as u8);
        partitions_into(rest - part, part, current, emit);
        current.pop();
    }
}

/// Orbit of an arrangement under cyclic and anticyclic port relabelings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuantumClass {
    /// Lexicographically smallest orbit member.
    pub representative: Arrangement,
    /// Number of distinct orbit members; divides `2n`.
    pub orbit_size: usize,
}

impl QuantumClass {
    pub fn members(&self) -> BTreeSet<Arrangement> {
        dihedral_orbit(&self.representative)
    }
}

/// Image of `occ` under `j ↦ j + shift` (or `j ↦ shift − j` when `reflect`),
/// indices mod n.
#[inline]
fn image_at(occ: &[u8], shift: usize, reflect: bool, j: usize) -> u8 {
    let n = occ.len();
    if reflect {
        occ[(shift + n - j) % n]
    } else {
        occ[(j + shift) % n]
    }
}

fn compare_image(occ: &[u8], shift: usize, reflect: bool) -> Ordering {
    for j in 0..occ.len() {
        match image_at(occ, shift, reflect, j).cmp(&occ[j]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Returns the orbit size when `occ` is the minimum of its dihedral orbit,
/// `None` otherwise.
pub(crate) fn canonical_orbit_size(occ: &[u8]) -> Option<usize> {
    let n = occ.len();
    let mut stabilizer = 0;
    for reflect in [false, true] {
        for shift in 0..n {
            match compare_image(occ, shift, reflect) {
                Ordering::Less => return None,
                Ordering::Equal => stabilizer += 1,
                Ordering::Greater => {}
            }
        }
    }
    Some(2 * n / stabilizer)
}

pub fn dihedral_orbit(s: &Arrangement) -> BTreeSet<Arrangement> {
    let occ = s.occupancies();
    let n = occ.len();
    let mut orbit = BTreeSet::new();
    for reflect in [false, true] {
        for shift in 0..n {
            let image: Vec<u8> = (0..n).map(|j| image_at(occ, shift, reflect, j)).collect();
            orbit.insert(Arrangement::from_raw(image));
        }
    }
    orbit
}

pub fn canonical_quantum(s: &Arrangement) -> QuantumClass {
    let orbit = dihedral_orbit(s);
    let orbit_size = orbit.len();
    let representative = orbit.into_iter().next().expect("orbit contains s");
    QuantumClass {
        representative,
        orbit_size,
    }
}

pub fn enumerate_quantum_classes(n: usize) -> Result<Vec<QuantumClass>> {
    enumerate_quantum_classes_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

/// Keeps every arrangement that equals its own canonical form. Output is in
/// descending lexicographic order of the representative.
pub fn enumerate_quantum_classes_with_cap(n: usize, cap: u128) -> Result<Vec<QuantumClass>> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if n > crate::arrangement::MAX_PORTS {
        return Err(Error::InvalidInput(format!("n = {n} too large")));
    }
    check_limit("arrangement count", total_arrangements(n), cap)?;
    let chunks = enumeration_chunks(n);
    let per_chunk: Vec<Vec<QuantumClass>> = chunks
        .par_iter()
        .map(|prefix| {
            let mut found = Vec::new();
            visit_chunk(n, prefix, |occ| {
                if let Some(orbit_size) = canonical_orbit_size(occ) {
                    found.push(QuantumClass {
                        representative: Arrangement::from_raw(occ.to_vec()),
                        orbit_size,
                    });
                }
            });
            found
        })
        .collect();
    Ok(per_chunk.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::enumerate_arrangements;
    use std::collections::HashSet;

    fn arr(v: &[u8]) -> Arrangement {
        Arrangement::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classical_examples() {
        let c = canonical_classical(&arr(&[0, 1, 2, 0, 2, 1]));
        assert_eq!(c.partition, vec![2, 2, 1, 1, 0, 0]);
        // 6! / (2! · 2! · 2!)
        assert_eq!(c.member_count, 90);
        assert_eq!(c.label(), "2+2+1+1");
        let coincident = canonical_classical(&arr(&[1, 1, 1, 1]));
        assert_eq!(coincident.member_count, 1);
        assert_eq!(enumerate_classical_classes(6).unwrap().len(), 11);
    }

    #[test]
    fn partition_counts() {
        let expected = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135];
        for (i, &p) in expected.iter().enumerate() {
            assert_eq!(
                enumerate_classical_classes(i + 1).unwrap().len(),
                p,
                "n = {}",
                i + 1
            );
        }
    }

    #[test]
    fn classical_classes_cover_enumeration() {
        for n in 1..=10 {
            let distinct: HashSet<_> = enumerate_arrangements(n)
                .unwrap()
                .map(|s| canonical_classical(&s).partition)
                .collect();
            let classes = enumerate_classical_classes(n).unwrap();
            assert_eq!(distinct.len(), classes.len());
            let members: u128 = classes.iter().map(|c| c.member_count).sum();
            assert_eq!(members, total_arrangements(n));
        }
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(
            dihedral_orbit(&arr(&[1, 1])),
            BTreeSet::from([arr(&[1, 1])])
        );
        assert_eq!(
            dihedral_orbit(&arr(&[2, 0, 2, 0])),
            BTreeSet::from([arr(&[2, 0, 2, 0]), arr(&[0, 2, 0, 2])])
        );
        assert_eq!(
            dihedral_orbit(&arr(&[3, 0, 0])),
            BTreeSet::from([arr(&[3, 0, 0]), arr(&[0, 3, 0]), arr(&[0, 0, 3])])
        );
    }

    #[test]
    fn quantum_class_counts() {
        let expected = [(2, 2), (3, 3), (4, 8), (5, 16), (6, 50), (7, 133), (8, 440)];
        for (n, count) in expected {
            let classes = enumerate_quantum_classes(n).unwrap();
            assert_eq!(classes.len(), count, "n = {n}");
            let total: usize = classes.iter().map(|c| c.orbit_size).sum();
            assert_eq!(total as u128, total_arrangements(n));
        }
        let two = enumerate_quantum_classes(2).unwrap();
        assert_eq!(two[0].representative, arr(&[1, 1]));
        assert_eq!(two[0].orbit_size, 1);
        assert_eq!(two[1].representative, arr(&[0, 2]));
        assert_eq!(two[1].orbit_size, 2);
    }

    #[test]
    fn filter_agrees_with_orbit_materialization() {
        for n in 1..=7 {
            let classes = enumerate_quantum_classes(n).unwrap();
            let mut seen = HashSet::new();
            for class in &classes {
                let members = class.members();
                assert_eq!(members.len(), class.orbit_size);
                assert_eq!(2 * n % class.orbit_size, 0);
                for m in members {
                    assert_eq!(canonical_quantum(&m), *class);
                    assert!(seen.insert(m));
                }
            }
            assert_eq!(seen.len() as u128, total_arrangements(n));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_quantum_classes_with_cap(6, 100).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { value: 462, .. }));
    }
}
