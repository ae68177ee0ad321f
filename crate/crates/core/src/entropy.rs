//! Entropies of probability vectors and their extremal extensions to
//! classical channels. All logarithms are base 2.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::ClassicalChannel;
use crate::error::{Error, Result};
use crate::vector::{
    kron, ky_fan_profile, optimal_upper_bound, upper_bound_from_envelope, ProbVector,
};

/// Largest `n^k` the regularized sweep will touch.
pub const REGULARIZATION_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "alpha")]
pub enum EntropyFunction {
    Shannon,
    Renyi(f64),
    Min,
}

impl EntropyFunction {
    /// Rényi entropy of order `alpha`; `alpha = ∞` gives the min-entropy and
    /// `alpha = 1` is rejected in favour of [`EntropyFunction::Shannon`].
    pub fn renyi(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(Error::domain(format!(
                "Rényi order must be ≥ 0, got {alpha}"
            )));
        }
        if alpha == 1.0 {
            return Err(Error::domain("Rényi order 1 is the Shannon entropy"));
        }
        if alpha.is_infinite() {
            return Ok(EntropyFunction::Min);
        }
        Ok(EntropyFunction::Renyi(alpha))
    }
}

impl FromStr for EntropyFunction {
    type Err = Error;

    /// Parses `shannon`, `min` or `renyi:<alpha>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shannon" => Ok(EntropyFunction::Shannon),
            "min" => Ok(EntropyFunction::Min),
            _ => {
                let alpha = s
                    .strip_prefix("renyi:")
                    .ok_or_else(|| Error::domain(format!("unknown entropy '{s}'")))?;
                let alpha: f64 = alpha
                    .parse()
                    .map_err(|_| Error::domain(format!("bad Rényi order '{alpha}'")))?;
                EntropyFunction::renyi(alpha)
            }
        }
    }
}

impl fmt::Display for EntropyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyFunction::Shannon => write!(f, "shannon"),
            EntropyFunction::Renyi(a) => write!(f, "renyi:{a}"),
            EntropyFunction::Min => write!(f, "min"),
        }
    }
}

fn entropy_of(h: EntropyFunction, p: &[f64]) -> f64 {
    let value = match h {
        EntropyFunction::Shannon => -p
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|&v| v * v.log2())
            .sum::<f64>(),
        EntropyFunction::Renyi(alpha) => {
            let s: f64 = p.iter().filter(|&&v| v > 0.0).map(|&v| v.powf(alpha)).sum();
            s.log2() / (1.0 - alpha)
        }
        EntropyFunction::Min => -p.iter().copied().fold(0.0, f64::max).log2(),
    };
    // Round-off can leave a point mass at -0.0 or -1e-17.
    value.max(0.0)
}

pub fn state_entropy(h: EntropyFunction, p: &ProbVector) -> f64 {
    entropy_of(h, p.as_slice())
}

/// Least output entropy `min_x ℍ(p_x)`.
pub fn max_extension(h: EntropyFunction, channel: &ClassicalChannel) -> f64 {
    channel
        .columns()
        .iter()
        .map(|c| entropy_of(h, c))
        .fold(f64::INFINITY, f64::min)
}

/// `ℍ(r)` for the optimal upper bound `r` of the channel's columns.
pub fn min_extension(h: EntropyFunction, channel: &ClassicalChannel) -> Result<f64> {
    let r = optimal_upper_bound(&channel.column_vectors())?;
    Ok(state_entropy(h, &r))
}

/// `(min_extension, max_extension)`.
pub fn channel_entropy_bounds(
    h: EntropyFunction,
    channel: &ClassicalChannel,
) -> Result<(f64, f64)> {
    Ok((min_extension(h, channel)?, max_extension(h, channel)))
}

/// `[(1/k) min_extension(N^{⊗k})]` for `k = 1..=k_max`.
///
/// The Ky-Fan profile of `p_{x_1} ⊗ … ⊗ p_{x_k}` only depends on the type
/// (multiset) of `(x_1, …, x_k)`, so one representative per type suffices.
/// Partial tensor products are shared along the enumeration.
pub fn regularized_min_extension(
    h: EntropyFunction,
    channel: &ClassicalChannel,
    k_max: usize,
) -> Result<Vec<f64>> {
    if k_max == 0 {
        return Err(Error::domain("k_max must be positive"));
    }
    let n = channel.output_dim();
    let within_limit = u32::try_from(k_max)
        .ok()
        .and_then(|k| n.checked_pow(k))
        .is_some_and(|s| s <= REGULARIZATION_LIMIT);
    if !within_limit {
        return Err(Error::Resource(format!(
            "{n}^{k_max} outcomes exceed the limit of {REGULARIZATION_LIMIT}"
        )));
    }
    (1..=k_max)
        .map(|k| {
            let envelope = type_class_envelope(channel.columns(), k);
            let r = upper_bound_from_envelope(&envelope);
            Ok(entropy_of(h, &r) / k as f64)
        })
        .collect()
}

/// Pointwise maximum of the Ky-Fan profiles of all `k`-fold products of
/// columns, enumerating non-decreasing index sequences.
fn type_class_envelope(columns: &[Vec<f64>], k: usize) -> Vec<f64> {
    fn walk(columns: &[Vec<f64>], start: usize, left: usize, acc: &[f64], env: &mut Vec<f64>) {
        if left == 0 {
            for (e, v) in env.iter_mut().zip(ky_fan_profile(acc)) {
                *e = e.max(v);
            }
            return;
        }
        for x in start..columns.len() {
            let next = kron(acc, &columns[x]);
            walk(columns, x, left - 1, &next, env);
        }
    }
    let len = columns[0].len().pow(k as u32);
    (0..columns.len())
        .into_par_iter()
        .map(|first| {
            let mut env = vec![0.0; len];
            walk(columns, first, k - 1, &columns[first], &mut env);
            env
        })
        .reduce(
            || vec![0.0; len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = x.max(y);
                }
                a
            },
        )
}
