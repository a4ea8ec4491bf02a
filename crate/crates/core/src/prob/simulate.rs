//! Seeded Monte Carlo cross-check for the exact solver.
//!
//! Generator: xoshiro256** (`rand_xoshiro::Xoshiro256StarStar`), seeded by
//! its SplitMix64 `seed_from_u64` expansion. Trials are cut into fixed
//! shards of [`SHARD_TRIALS`]; shard `k` is seeded with
//! `seed + k * 0x9E3779B97F4A7C15` (wrapping). Counts are therefore the
//! same for any number of worker threads.
//!
//! A coin with bias `p/q` draws `v = next_u64()`, rejects
//! `v >= floor(u64::MAX / q) * q`, and plays `AliceLow` iff `v mod q < p`.

use num_traits::ToPrimitive;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;
use serde::Serialize;

use super::rational::Rational;
use super::solve::check_bias;
use crate::error::{Error, Result};
use crate::game::{GameParams, MoveKind, PositionClass};

pub const SHARD_TRIALS: u64 = 1024;
const SHARD_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimulationCounts {
    pub trials: u64,
    pub alice_wins: u64,
    pub bob_wins: u64,
    /// Walks that hit the move cap without landing on a winning position.
    pub truncated: u64,
    pub move_cap: u64,
}

/// Default per-trial cap, `10 * m * n` moves.
pub fn default_move_cap(params: GameParams) -> u64 {
    10 * params.cell_count()
}

pub fn simulate(
    params: GameParams,
    coin_bias: &Rational,
    trials: u64,
    seed: u64,
) -> Result<SimulationCounts> {
    simulate_with_cap(params, coin_bias, trials, seed, default_move_cap(params))
}

pub fn simulate_with_cap(
    params: GameParams,
    coin_bias: &Rational,
    trials: u64,
    seed: u64,
    move_cap: u64,
) -> Result<SimulationCounts> {
    check_bias(coin_bias)?;
    if trials == 0 {
        return Err(Error::Domain("trial count must be positive".into()));
    }
    let coin = Coin::new(coin_bias)?;
    let shards = trials.div_ceil(SHARD_TRIALS);
    let (alice_wins, bob_wins, truncated) = (0..shards)
        .into_par_iter()
        .map(|k| {
            let len = SHARD_TRIALS.min(trials - k * SHARD_TRIALS);
            run_shard(params, coin, shard_rng(seed, k), len, move_cap)
        })
        .reduce(|| (0, 0, 0), |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2));
    Ok(SimulationCounts {
        trials,
        alice_wins,
        bob_wins,
        truncated,
        move_cap,
    })
}

pub fn shard_rng(seed: u64, shard: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed.wrapping_add(shard.wrapping_mul(SHARD_STRIDE)))
}

#[derive(Debug, Clone, Copy)]
struct Coin {
    low: u64,
    den: u64,
    limit: u64,
}

impl Coin {
    fn new(bias: &Rational) -> Result<Self> {
        let (low, den) = bias
            .numer()
            .to_u64()
            .zip(bias.denom().to_u64())
            .ok_or_else(|| {
                Error::Domain(format!(
                    "bias {bias} does not fit 64-bit numerator and denominator"
                ))
            })?;
        Ok(Coin {
            low,
            den,
            limit: (u64::MAX / den) * den,
        })
    }

    fn toss(&self, rng: &mut impl RngCore) -> MoveKind {
        loop {
            let v = rng.next_u64();
            if v < self.limit {
                return if v % self.den < self.low {
                    MoveKind::AliceLow
                } else {
                    MoveKind::AliceHigh
                };
            }
        }
    }
}

fn run_shard(
    params: GameParams,
    coin: Coin,
    mut rng: Xoshiro256StarStar,
    trials: u64,
    move_cap: u64,
) -> (u64, u64, u64) {
    let mut counts = (0, 0, 0);
    for _ in 0..trials {
        let mut pos = params.start();
        let mut ended = false;
        for _ in 0..move_cap {
            pos = params.step(pos, coin.toss(&mut rng));
            match params.classify(pos) {
                PositionClass::AliceWin => counts.0 += 1,
                PositionClass::BobWin => counts.1 += 1,
                _ => continue,
            }
            ended = true;
            break;
        }
        if !ended {
            counts.2 += 1;
        }
    }
    counts
}
