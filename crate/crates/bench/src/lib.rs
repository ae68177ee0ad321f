//! Fixed benchmark instances, shared by the criterion benches.

use chanmaj::classical::apply_superchannel;
use chanmaj::sample;
use chanmaj::{ClassicalChannel, QuantumChannel};

/// A pair `(N, M)` with `N ≻ M`: `M` is a random mixing image of `N`.
pub fn holding_pair(
    seed: u64,
    n: usize,
    m: usize,
    m_out: usize,
) -> (ClassicalChannel, ClassicalChannel) {
    let mut rng = sample::rng(seed);
    let big = sample::channel(&mut rng, n, m);
    let theta = sample::mixing_superchannel(&mut rng, m, m_out, n);
    let small = apply_superchannel(&theta, &big).expect("dimensions agree");
    (big, small)
}

/// Independent random channels, usually incomparable.
pub fn random_pair(
    seed: u64,
    n: usize,
    m: usize,
    m_out: usize,
) -> (ClassicalChannel, ClassicalChannel) {
    let mut rng = sample::rng(seed);
    (
        sample::channel(&mut rng, n, m),
        sample::channel(&mut rng, n, m_out),
    )
}

pub fn quantum_channel(seed: u64, a: usize, b: usize) -> QuantumChannel {
    let mut rng = sample::rng(seed);
    sample::quantum_channel(&mut rng, a, b, a * b)
}
