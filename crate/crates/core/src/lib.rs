//! Channel majorization for classical and quantum channels.
//!
//! The crate is organized bottom-up:
//!
//! * [`vector`]: probability vectors, Ky-Fan norms, vector majorization,
//!   doubly stochastic transfer matrices and optimal upper bounds.
//! * [`lp`]: a small dense phase-1 simplex used to decide feasibility,
//!   returning either a witness or a Farkas certificate.
//! * [`classical`]: classical channels, their standard form, the LP
//!   decision procedure for channel majorization, superchannels and the
//!   closed-form low-dimensional tests.
//! * [`games`]: gambling games, predictability functions and a seeded
//!   Monte-Carlo player.
//! * [`entropy`]: Shannon/Rényi/min entropies and their minimal and
//!   maximal extensions to classical channels.
//! * [`quantum`]: complex matrices, a Jacobi eigensolver, Choi calculus,
//!   channel min-entropy and mixing-superchannel checks.
//! * [`sample`]: seeded random instances used by tests and benches.

pub mod classical;
pub mod entropy;
pub mod error;
pub mod games;
pub mod linalg;
pub mod lp;
pub mod quantum;
pub mod sample;
pub mod tol;
pub mod vector;

pub use classical::{ClassicalChannel, ClassicalSuperchannel, MajorizationCertificate, Relation};
pub use entropy::EntropyFunction;
pub use error::{Error, Result};
pub use games::TGame;
pub use linalg::RealMatrix;
pub use lp::{FeasibilityProblem, FeasibilityResult, FeasibilityStatus, Sense};
pub use quantum::{ComplexMatrix, QuantumChannel, QuantumSuperchannelPieces};
pub use vector::{DoublyStochasticMatrix, ProbVector};
