//! Scattering of `n` indistinguishable bosons through an `n`-port Fourier
//! (Bell) multiport beam splitter.
//!
//! The crate is split into three layers:
//!
//! * [`arrangement`] and [`classes`]: output arrangements, port assignment
//!   vectors, exhaustive enumeration and the classical (partition) and
//!   quantum (dihedral orbit) equivalence classes.
//! * [`permanent`], [`cyclotomic`], [`fourier`] and [`scattering`]: classical
//!   and quantum transition probabilities, floating and exact permanents, the
//!   `c_k` decomposition and the suppression law.
//! * [`statistics`]: enhancement ratios, class tables and the coarse-grained
//!   distributions (occupied ports, per-port occupancy, classical classes).
//!
//! Every function is pure. Functions that sweep over many arrangements use
//! rayon internally and always reduce in enumeration order, so results do not
//! depend on the size of the thread pool they run in.

pub mod arrangement;
pub mod classes;
pub mod cyclotomic;
pub mod error;
pub mod fourier;
pub mod permanent;
pub mod scattering;
pub mod statistics;
mod util;

pub use arrangement::{build_port_assignment, enumerate_arrangements, Arrangement, PortAssignment};
pub use classes::{
    canonical_classical, canonical_quantum, dihedral_orbit, enumerate_classical_classes,
    enumerate_quantum_classes, ClassicalClass, QuantumClass,
};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicVector, IntPolynomial};
pub use error::{Error, Result};
pub use fourier::FourierUnitary;
pub use permanent::{permanent_naive, permanent_ryser, ComplexMatrix};
pub use scattering::{
    ck_decomposition, classical_probability, exact_amplitude, is_suppressed_exact,
    quantum_amplitude, quantum_probability, suppression_q, verify_gamma_shift, Amplitude,
};

/// Exact rational used for classical probabilities and enhancement ratios.
pub type Rational = num_rational::Ratio<i128>;
