//! Seeded random instances.
//!
//! Every generator takes an explicit RNG so that results are reproducible
//! from a 64-bit seed via [`rng`].

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::classical::{standard_form, ClassicalChannel, ClassicalSuperchannel};
use crate::games::TGame;
use crate::linalg::RealMatrix;
use crate::quantum::{ComplexMatrix, QuantumChannel};
use crate::vector::ProbVector;

pub type SampleRng = ChaCha20Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Uniform on the simplex (flat Dirichlet).
pub fn prob_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProbVector {
    let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    ProbVector::from_trusted(draws.into_iter().map(|v| v / total).collect())
}

/// A random distribution where each entry is zeroed with probability
/// `zero_prob` (at least one entry survives).
pub fn sparse_prob_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, zero_prob: f64) -> ProbVector {
    let mut v = prob_vector(rng, n).into_vec();
    let keep = rng.random_range(0..n);
    for (i, x) in v.iter_mut().enumerate() {
        if i != keep && rng.random::<f64>() < zero_prob {
            *x = 0.0;
        }
    }
    let total: f64 = v.iter().sum();
    ProbVector::from_trusted(v.into_iter().map(|x| x / total).collect())
}

/// `n × m` channel with independent flat-Dirichlet columns.
pub fn channel<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> ClassicalChannel {
    ClassicalChannel::from_columns((0..m).map(|_| prob_vector(rng, n).into_vec()).collect())
        .expect("sampled columns are distributions")
}

/// `rows × cols` column-stochastic matrix.
pub fn stochastic_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> RealMatrix {
    let columns: Vec<Vec<f64>> = (0..cols)
        .map(|_| prob_vector(rng, rows).into_vec())
        .collect();
    RealMatrix::from_columns(&columns).expect("consistent shape")
}

/// Convex mixture of three random permutation matrices.
pub fn doubly_stochastic<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RealMatrix {
    let weights = prob_vector(rng, 3);
    let mut d = RealMatrix::zeros(n, n);
    for &w in weights.as_slice() {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            d[(j, i)] += w;
        }
    }
    d
}

/// A mixing superchannel taking `n`-output channels with `m` inputs to
/// `n`-output channels with `m_out` inputs.
pub fn mixing_superchannel<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    m_out: usize,
    n: usize,
) -> ClassicalSuperchannel {
    let pre = stochastic_matrix(rng, m, m_out);
    let post = (0..m)
        .map(|_| (0..m_out).map(|_| doubly_stochastic(rng, n)).collect())
        .collect();
    ClassicalSuperchannel::new(pre, post).expect("valid by construction")
}

/// A random two-column channel already in standard form.
pub fn two_column_standard_channel<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ClassicalChannel {
    loop {
        let sf = standard_form(&channel(rng, n, 2)).expect("LP on sampled channel");
        if sf.input_dim() == 2 {
            return sf;
        }
    }
}

/// A game with a flat-Dirichlet joint distribution over `(k, w)`.
pub fn game<R: Rng + ?Sized>(rng: &mut R, n: usize, l: usize) -> TGame {
    let t = prob_vector(rng, n * l).into_vec();
    let rows: Vec<Vec<f64>> = (0..n).map(|k| t[k * l..(k + 1) * l].to_vec()).collect();
    TGame::new(rows).expect("sampled game is a distribution")
}

/// `rows × cols` matrix of independent standard complex Gaussians.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Isometry `C^cols → C^rows` from Gram-Schmidt on Gaussian columns.
pub fn isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(rows >= cols, "an isometry cannot shrink the dimension");
    loop {
        let g = gaussian_matrix(rng, rows, cols);
        if let Some(q) = g.orthonormalize_columns(1e-6) {
            return q;
        }
    }
}

pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    isometry(rng, d, d)
}

/// Random channel `C^a → C^b` with `kraus_rank` Kraus operators, obtained
/// by splitting a random isometry `C^a → C^b ⊗ C^r`.
pub fn quantum_channel<R: Rng + ?Sized>(
    rng: &mut R,
    a: usize,
    b: usize,
    kraus_rank: usize,
) -> QuantumChannel {
    let v = isometry(rng, b * kraus_rank, a);
    let kraus = (0..kraus_rank)
        .map(|i| ComplexMatrix::from_fn(b, a, |row, col| v[(row * kraus_rank + i, col)]))
        .collect();
    QuantumChannel::from_kraus(kraus).expect("split isometry is a channel")
}

/// Random mixed state of rank `rank`.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, d, rank);
    let rho = g.mul(&g.adjoint()).expect("conformable");
    let tr = rho.trace().re;
    rho.scale(Complex64::new(1.0 / tr, 0.0))
}
