//! Precision limits for multiparameter estimation with n-qubit graph states.
//!
//! The crate builds graph states two ways (stabilizer product and CZ circuit),
//! assembles parameterized SU(N) dynamics, and computes the quantum and
//! classical Fisher information matrices together with the Cramér-Rao bounds
//! they imply. Everything is dense complex linear algebra at desk scale
//! (dimension 2^n with n ≤ 12 by default), except for the Pauli-string layer,
//! which works symplectically over GF(2) and gives exact stabilizer
//! expectations at any size.
//!
//! Module map:
//! - [`pauli`]: phased Pauli strings, stabilizer groups, exact expectations
//! - [`graphs`]: graph model, catalog, SJCR composition, graph-state builders
//! - [`sun`]: generalized Gell-Mann generators, collective spins, spin-j ladders
//! - [`dynamics`]: H(θ), U = exp(-iH), and the parameterization generators
//! - [`metrology`]: QFIM, QFI, closed-form neighborhood rules, averaged QFI, CRB
//! - [`measurement`]: POVMs, outcome distributions, CFIM
//! - [`optimize`]: seeded particle swarm minimization of Tr(F⁻¹)

pub mod dynamics;
pub mod error;
pub mod graphs;
pub mod linalg;
pub mod measurement;
pub mod metrology;
pub mod optimize;
pub mod pauli;
pub mod sun;

pub use error::{Error, Result};

/// Default cap on the qubit count for dense 2^n-dimensional construction.
pub const DENSE_CAP_DEFAULT: usize = 12;

/// Environment variable overriding the dense construction cap.
pub const DENSE_CAP_ENV: &str = "GRAPHEST_DENSE_CAP";

/// Effective dense-construction cap: `GRAPHEST_DENSE_CAP` if set and parseable,
/// otherwise [`DENSE_CAP_DEFAULT`].
pub fn dense_cap() -> usize {
    std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DENSE_CAP_DEFAULT)
}
