//! Gambling games against classical channels.
//!
//! In a `t`-game the referee draws `(k, w)` from `t`, announces `w`, the
//! player picks an input `x`, and wins when the channel output lands among
//! the `k` outcomes the player named. The player's best guess set for
//! `(x, k)` is the `k` most likely outcomes of `p_x`, so everything reduces
//! to Ky-Fan norms of the columns.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{predictability, ClassicalChannel};
use crate::error::{Error, Result};
use crate::tol::{self, NUM_EPS, SUM_TOL};
use crate::vector::{ky_fan_profile, sorting_permutation};

/// Joint distribution `t_{kw}` over the number of guesses `k ∈ 1..=n` and a
/// signal `w`. Row `k - 1` of `t` holds the entries for `k` guesses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GameJson", into = "GameJson")]
pub struct TGame {
    t: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct GameJson {
    n: usize,
    l: usize,
    t: Vec<Vec<f64>>,
}

impl TryFrom<GameJson> for TGame {
    type Error = Error;

    fn try_from(raw: GameJson) -> Result<Self> {
        if raw.t.len() != raw.n || raw.t.iter().any(|r| r.len() != raw.l) {
            return Err(Error::domain(format!(
                "game table must be {} x {}",
                raw.n, raw.l
            )));
        }
        TGame::new(raw.t)
    }
}

impl From<TGame> for GameJson {
    fn from(g: TGame) -> Self {
        GameJson {
            n: g.n(),
            l: g.l(),
            t: g.t,
        }
    }
}

impl TGame {
    /// `t[k][w]`; negatives within `1e-12` are clamped, the total must be 1.
    pub fn new(mut t: Vec<Vec<f64>>) -> Result<Self> {
        let l = t.first().map_or(0, Vec::len);
        if l == 0 || t.iter().any(|r| r.len() != l) {
            return Err(Error::domain("game table must be a non-empty rectangle"));
        }
        for v in t.iter_mut().flatten() {
            if !v.is_finite() || *v < -NUM_EPS {
                return Err(Error::domain(format!("invalid game probability {v}")));
            }
            *v = v.max(0.0);
        }
        let total: f64 = t.iter().flatten().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::domain(format!(
                "game probabilities sum to {total}, expected 1"
            )));
        }
        Ok(TGame { t })
    }

    /// The `k`-game: always `k` guesses, no signal.
    pub fn deterministic(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::domain(format!("k = {k} outside 1..={n}")));
        }
        let mut t = vec![vec![0.0]; n];
        t[k - 1][0] = 1.0;
        TGame::new(t)
    }

    /// The player learns `k` before choosing: `w = k`.
    pub fn learn_before(tk: &[f64]) -> Result<Self> {
        let n = tk.len();
        let t = (0..n)
            .map(|k| (0..n).map(|w| if k == w { tk[k] } else { 0.0 }).collect())
            .collect();
        TGame::new(t)
    }

    /// The player learns `k` only after choosing: a single signal.
    pub fn learn_after(tk: &[f64]) -> Result<Self> {
        TGame::new(tk.iter().map(|&v| vec![v]).collect())
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn l(&self) -> usize {
        self.t[0].len()
    }

    /// `t_{kw}` with `k` counted from 1.
    pub fn prob(&self, k: usize, w: usize) -> f64 {
        self.t[k - 1][w]
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.t
    }

    /// `Σ_k t_{kw} ‖p‖_(k)` for a Ky-Fan profile.
    fn signal_score(&self, w: usize, profile: &[f64]) -> f64 {
        self.t.iter().zip(profile).map(|(row, f)| row[w] * f).sum()
    }
}

/// `Pr_k(N) = max_x ‖p_x‖_(k)`.
pub fn pr_k(channel: &ClassicalChannel, k: usize) -> Result<f64> {
    let n = channel.output_dim();
    if k == 0 || k > n {
        return Err(Error::domain(format!("k = {k} outside 1..={n}")));
    }
    Ok(channel
        .columns()
        .iter()
        .map(|c| ky_fan_profile(c)[k - 1])
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `Pr_t(N) = Σ_w max_x Σ_k t_{kw} ‖p_x‖_(k)`.
pub fn pr_t(channel: &ClassicalChannel, game: &TGame) -> Result<f64> {
    check_dims(channel, game)?;
    let profiles: Vec<Vec<f64>> = channel
        .columns()
        .iter()
        .map(|c| ky_fan_profile(c))
        .collect();
    Ok((0..game.l())
        .map(|w| {
            profiles
                .iter()
                .map(|f| game.signal_score(w, f))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .sum())
}

fn check_dims(channel: &ClassicalChannel, game: &TGame) -> Result<()> {
    if game.n() != channel.output_dim() {
        return Err(Error::domain(format!(
            "game has n = {} but the channel has {} outputs",
            game.n(),
            channel.output_dim()
        )));
    }
    Ok(())
}

/// All `s ∈ Prob↓(n)` whose entries are multiples of `1/grid`.
pub fn nonincreasing_grid(n: usize, grid: usize) -> Vec<Vec<f64>> {
    fn rec(
        remaining: usize,
        cap: usize,
        slots: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // The remaining slots can absorb at most `cap * slots`.
        if remaining > cap * slots {
            return;
        }
        for a in (0..=cap.min(remaining)).rev() {
            cur.push(a);
            rec(remaining - a, a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(grid, grid, n, &mut Vec::with_capacity(n), &mut out);
    out.into_iter()
        .map(|a| a.into_iter().map(|v| v as f64 / grid as f64).collect())
        .collect()
}

/// Checks `P_N(s) ≥ P_M(s)` on the grid of non-increasing `s` with
/// denominator `grid`, where `P_N(s) = max_x s · p_x↓`.
pub fn operational_majorizes(
    n: &ClassicalChannel,
    m: &ClassicalChannel,
    grid: usize,
) -> Result<bool> {
    if n.output_dim() != m.output_dim() {
        return Err(Error::domain("output dimensions differ"));
    }
    if grid == 0 {
        return Err(Error::domain("grid must be positive"));
    }
    let tol = tol::cmp_tol();
    Ok(nonincreasing_grid(n.output_dim(), grid)
        .iter()
        .all(|s| predictability(n, s) >= predictability(m, s) - tol))
}

/// Monte-Carlo play of `game` against `channel` with the optimal strategy.
///
/// Rounds are split into `workers` shards; shard `i` draws from ChaCha20
/// seeded with `seed` on stream `i`, so the estimate depends only on
/// `(seed, rounds, workers)`.
pub fn simulate_game(
    channel: &ClassicalChannel,
    game: &TGame,
    rounds: u64,
    seed: u64,
    workers: usize,
) -> Result<f64> {
    check_dims(channel, game)?;
    if rounds == 0 {
        return Err(Error::domain("rounds must be positive"));
    }
    if workers == 0 {
        return Err(Error::domain("workers must be positive"));
    }
    let l = game.l();
    let profiles: Vec<Vec<f64>> = channel
        .columns()
        .iter()
        .map(|c| ky_fan_profile(c))
        .collect();
    let choice: Vec<usize> = (0..l)
        .map(|w| {
            let mut best = 0;
            let mut best_score = f64::NEG_INFINITY;
            for (x, f) in profiles.iter().enumerate() {
                let s = game.signal_score(w, f);
                if s > best_score {
                    best = x;
                    best_score = s;
                }
            }
            best
        })
        .collect();
    // rank[x][y]: position of outcome y in p_x sorted descending (stable).
    let rank: Vec<Vec<usize>> = channel
        .columns()
        .iter()
        .map(|c| {
            let mut r = vec![0; c.len()];
            for (pos, &y) in sorting_permutation(c).iter().enumerate() {
                r[y] = pos;
            }
            r
        })
        .collect();
    let joint = WeightedIndex::new(game.t.iter().flatten().copied())
        .map_err(|e| Error::domain(format!("game distribution: {e}")))?;
    let outputs: Vec<WeightedIndex<f64>> = channel
        .columns()
        .iter()
        .map(|c| WeightedIndex::new(c.iter().copied()))
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::domain(format!("channel column: {e}")))?;

    let shards = workers as u64;
    let wins: u64 = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let count = rounds / shards + u64::from(shard < rounds % shards);
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut wins = 0u64;
            for _ in 0..count {
                let kw = joint.sample(&mut rng);
                let (k, w) = (kw / l + 1, kw % l);
                let x = choice[w];
                let y = outputs[x].sample(&mut rng);
                if rank[x][y] < k {
                    wins += 1;
                }
            }
            wins
        })
        .sum();
    Ok(wins as f64 / rounds as f64)
}
