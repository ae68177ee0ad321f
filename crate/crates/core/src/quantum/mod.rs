//! Finite-dimensional quantum channels.
//!
//! Choi matrices are unnormalized, `Tr J_N = |A|`, with the input factor
//! first. Spectral work goes through a cyclic Jacobi solver.

mod channel;
mod eigen;
mod matrix;
mod superchannel;

pub use channel::{
    choi_matrix, choi_spectrum, h_min_channel, h_min_state_form, h_min_state_form_seeded,
    is_conditionally_unital, is_marginally_uniform, QuantumChannel, CPTP_TOL, STATE_FORM_MAX_INPUT,
};
pub use eigen::{
    hermitian_eigen, hermitian_eigenvalues, hermitian_function, lambda_max, MAX_EIGEN_DIM,
};
pub use matrix::ComplexMatrix;
pub use superchannel::{
    embed_classical_superchannel, is_mixing_superchannel_q, isometry_maximality_superchannel,
    uniform_tensor_identity, IsometryMaximality, QuantumSuperchannelPieces,
};
