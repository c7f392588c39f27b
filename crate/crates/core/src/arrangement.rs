//! Output arrangements `s = (s_1, …, s_n)` and port assignment vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::util::binomial;

/// Largest port count an [`Arrangement`] can describe (occupancies are
/// stored as bytes).
pub const MAX_PORTS: usize = u8::MAX as usize;

/// Occupation numbers of the `n` output ports for `n` particles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrangement {
    occupancies: Vec<u8>,
}

impl Arrangement {
    pub fn new(occupancies: impl Into<Vec<u8>>) -> Result<Self> {
        let occupancies = occupancies.into();
        let n = occupancies.len();
        if n == 0 {
            return Err(Error::InvalidInput("arrangement has no ports".into()));
        }
        if n > MAX_PORTS {
            return Err(Error::InvalidInput(format!(
                "arrangement has {n} ports, at most {MAX_PORTS} supported"
            )));
        }
        let total: usize = occupancies.iter().map(|&s| s as usize).sum();
        if total != n {
            return Err(Error::InvalidInput(format!(
                "occupancies sum to {total}, expected {n} (one particle per port)"
            )));
        }
        Ok(Self { occupancies })
    }

    /// Builds an arrangement without validation. The caller guarantees the
    /// invariants (used on enumeration hot paths).
    pub(crate) fn from_raw(occupancies: Vec<u8>) -> Self {
        debug_assert_eq!(
            occupancies.iter().map(|&s| s as usize).sum::<usize>(),
            occupancies.len()
        );
        Self { occupancies }
    }

    /// All particles in port `port` (0-based index).
    pub fn bunched(n: usize, port: usize) -> Result<Self> {
        if port >= n {
            return Err(Error::InvalidInput(format!(
                "port {port} out of range for n = {n}"
            )));
        }
        let mut occ = vec![0u8; n];
        occ[port] =
            u8::try_from(n).map_err(|_| Error::InvalidInput(format!("n = {n} too large")))?;
        Self::new(occ)
    }

    /// One particle per port.
    pub fn coincident(n: usize) -> Result<Self> {
        Self::new(vec![1u8; n])
    }

    pub fn n(&self) -> usize {
        self.occupancies.len()
    }

    pub fn occupancies(&self) -> &[u8] {
        &self.occupancies
    }

    /// Number of ports holding at least one particle.
    pub fn occupied_ports(&self) -> usize {
        self.occupancies.iter().filter(|&&s| s > 0).count()
    }

    /// `Π_j s_j!`
    pub fn occupancy_factorial_product(&self) -> u128 {
        self.occupancies
            .iter()
            .map(|&s| crate::util::factorial(s as usize))
            .product()
    }

    pub fn port_assignment(&self) -> PortAssignment {
        build_port_assignment(self)
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrangement{self}")
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.occupancies.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// Accepts `"0,1,2,1,0,2"`, `"(0 1 2 1 0 2)"` or the compact digit form
/// `"012102"`.
impl FromStr for Arrangement {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        let has_separator = body.contains(|c: char| c == ',' || c.is_whitespace());
        let parts: Vec<u8> = if has_separator {
            body.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.parse::<u8>().map_err(|_| {
                        Error::InvalidInput(format!("bad occupancy {p:?} in {text:?}"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as u8).ok_or_else(|| {
                        Error::InvalidInput(format!("bad occupancy {c:?} in {text:?}"))
                    })
                })
                .collect::<Result<_>>()?
        };
        Arrangement::new(parts)
    }
}

/// Sorted list of 1-based exit ports, one entry per particle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PortAssignment {
    ports: Vec<usize>,
}

impl PortAssignment {
    pub fn ports(&self) -> &[usize] {
        &self.ports
    }

    pub fn len(&self) -> usize {
        self.ports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ports.is_empty()
    }

    /// `Σ_l d_l`
    pub fn port_sum(&self) -> usize {
        self.ports.iter().sum()
    }

    /// Recovers the arrangement by counting how often each port occurs.
    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let n = self.ports.len();
        let mut occ = vec![0u8; n];
        for &p in &self.ports {
            if p == 0 || p > n {
                return Err(Error::InvalidInput(format!("port {p} outside 1..={n}")));
            }
            occ[p - 1] += 1;
        }
        Arrangement::new(occ)
    }
}

/// Concatenates `s_j` copies of the port number `j` for `j = 1..n`.
pub fn build_port_assignment(s: &Arrangement) -> PortAssignment {
    let ports = s
        .occupancies
        .iter()
        .enumerate()
        .flat_map(|(j, &count)| std::iter::repeat_n(j + 1, count as usize))
        .collect();
    PortAssignment { ports }
}

/// `binomial(2n − 1, n)`, the number of arrangements of `n` particles in `n`
/// ports.
pub fn total_arrangements(n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    binomial(2 * n as u64 - 1, n as u64)
}

/// Steps `parts` to the next composition of the same total in descending
/// lexicographic order. Returns `false` once the last composition
/// `(0, …, 0, total)` has been passed.
pub(crate) fn next_composition(parts: &mut [u8]) -> bool {
    let len = parts.len();
    if len < 2 {
        return false;
    }
    let Some(i) = (0..len - 1).rev().find(|&i| parts[i] > 0) else {
        return false;
    };
    let tail: u8 = parts[i + 1..].iter().sum();
    parts[i] -= 1;
    parts[i + 1] = tail + 1;
    parts[i + 2..].fill(0);
    true
}

/// Streams every arrangement of `n` particles in `n` ports exactly once, in
/// descending lexicographic order of the occupancy vector.
#[derive(Clone, Debug)]
pub struct Arrangements {
    current: Option<Vec<u8>>,
}

impl Iterator for Arrangements {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        let current = self.current.as_mut()?;
        let out = Arrangement::from_raw(current.clone());
        if !next_composition(current) {
            self.current = None;
        }
        Some(out)
    }
}

pub fn enumerate_arrangements(n: usize) -> Result<Arrangements> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if n > MAX_PORTS {
        return Err(Error::InvalidInput(format!("n = {n} exceeds {MAX_PORTS}")));
    }
    let mut first = vec![0u8; n];
    first[0] = n as u8;
    Ok(Arrangements {
        current: Some(first),
    })
}

/// Deterministic split of the enumeration into contiguous chunks keyed by a
/// fixed-length prefix. Visiting chunks in the returned order with
/// [`visit_chunk`] reproduces [`enumerate_arrangements`] exactly.
pub fn enumeration_chunks(n: usize) -> Vec<Vec<u8>> {
    match n {
        0 => Vec::new(),
        1 | 2 => vec![Vec::new()],
        _ => {
            let n8 = n as u8;
            let mut chunks = Vec::new();
            for a in (0..=n8).rev() {
                for b in (0..=n8 - a).rev() {
                    chunks.push(vec![a, b]);
                }
            }
            chunks
        }
    }
}

/// Calls `visit` on every arrangement of `n` particles that starts with
/// `prefix`, in descending lexicographic order. The slice passed to `visit`
/// is reused between calls.
pub fn visit_chunk(n: usize, prefix: &[u8], mut visit: impl FnMut(&[u8])) {
    let used: usize = prefix.iter().map(|&p| p as usize).sum();
    if prefix.len() > n || used > n {
        return;
    }
    let mut parts = vec![0u8; n];
    parts[..prefix.len()].copy_from_slice(prefix);
    let rest = n - used;
    if prefix.len() == n {
        if rest == 0 {
            visit(&parts);
        }
        return;
    }
    parts[prefix.len()] = rest as u8;
    loop {
        visit(&parts);
        if !next_composition(&mut parts[prefix.len()..]) {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(v: &[u8]) -> Arrangement {
        Arrangement::new(v.to_vec()).unwrap()
    }

    #[test]
    fn port_assignment_examples() {
        assert_eq!(
            build_port_assignment(&arr(&[2, 1, 0, 2, 0])).ports(),
            &[1, 1, 2, 4, 4]
        );
        assert_eq!(
            build_port_assignment(&arr(&[5, 0, 0, 0, 0])).ports(),
            &[1; 5]
        );
        assert_eq!(
            build_port_assignment(&arr(&[1, 1, 1, 1])).ports(),
            &[1, 2, 3, 4]
        );
    }

    #[test]
    fn malformed_arrangements_are_rejected() {
        assert!(matches!(
            Arrangement::new(vec![1u8, 0]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            Arrangement::new(Vec::<u8>::new()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            Arrangement::new(vec![3u8, 0, 1]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn parse_forms() {
        let expected = arr(&[0, 1, 2, 1, 0, 2]);
        assert_eq!("0,1,2,1,0,2".parse::<Arrangement>().unwrap(), expected);
        assert_eq!("(0 1 2 1 0 2)".parse::<Arrangement>().unwrap(), expected);
        assert_eq!("012102".parse::<Arrangement>().unwrap(), expected);
        assert!("01x".parse::<Arrangement>().is_err());
        assert_eq!(expected.to_string(), "(0,1,2,1,0,2)");
    }

    #[test]
    fn enumeration_small_cases() {
        let two: Vec<_> = enumerate_arrangements(2).unwrap().collect();
        assert_eq!(two, vec![arr(&[2, 0]), arr(&[1, 1]), arr(&[0, 2])]);
        let one: Vec<_> = enumerate_arrangements(1).unwrap().collect();
        assert_eq!(one, vec![arr(&[1])]);
        assert_eq!(enumerate_arrangements(6).unwrap().count(), 462);
        assert!(enumerate_arrangements(0).is_err());
    }

    #[test]
    fn enumeration_counts_match_closed_forms() {
        for n in 1..=10usize {
            let count = enumerate_arrangements(n).unwrap().count() as u128;
            assert_eq!(count, total_arrangements(n));
            if n >= 2 {
                let f = crate::util::factorial;
                assert_eq!(count, f(2 * n) / (2 * f(n) * f(n)));
            }
        }
    }

    #[test]
    fn enumeration_is_strictly_descending() {
        let all: Vec<_> = enumerate_arrangements(7).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn chunks_reproduce_enumeration() {
        for n in 1..=7 {
            let mut chunked = Vec::new();
            for prefix in enumeration_chunks(n) {
                visit_chunk(n, &prefix, |p| chunked.push(arr(p)));
            }
            let direct: Vec<_> = enumerate_arrangements(n).unwrap().collect();
            assert_eq!(chunked, direct, "n = {n}");
        }
    }

    #[test]
    fn port_assignment_recovers_arrangement() {
        for s in enumerate_arrangements(6).unwrap() {
            let d = build_port_assignment(&s);
            assert_eq!(d.len(), 6);
            assert!(d.ports().windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(d.to_arrangement().unwrap(), s);
        }
    }
}
