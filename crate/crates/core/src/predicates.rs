//! Number-theoretic conditions of the two characterization theorems.
//!
//! Everything is computed in `u128`/`i128`, so squares of any accepted
//! parameter cannot wrap.

use serde::Serialize;

use crate::error::{Error, Result};

pub fn gcd(mut u: u128, mut v: u128) -> u128 {
    while v != 0 {
        (u, v) = (v, u % v);
    }
    u
}

/// `lcm(0, v) = 0`.
pub fn lcm(u: u128, v: u128) -> u128 {
    if u == 0 || v == 0 {
        return 0;
    }
    u / gcd(u, v) * v
}

fn divides(d: u128, value: i128) -> bool {
    value.rem_euclid(d as i128) == 0
}

fn check_square_triple(a: u64, b: u64, n: u64) -> Result<()> {
    if !(0 < a && a < b && b < n) {
        return Err(Error::Domain(format!(
            "expected 0 < a < b < n (got a={a}, b={b}, n={n})"
        )));
    }
    Ok(())
}

/// The square-game reachability condition: `a != 2b`, `2a != b (mod n)` and
/// `gcd(b^2 - a^2, n) = 1`.
pub fn thm1_condition(a: u64, b: u64, n: u64) -> Result<bool> {
    check_square_triple(a, b, n)?;
    let (a, b, n) = (a as i128, b as i128, n as i128);
    let not_a_2b = (a - 2 * b).rem_euclid(n) != 0;
    let not_2a_b = (2 * a - b).rem_euclid(n) != 0;
    let coprime = gcd((b * b - a * a) as u128, n as u128) == 1;
    Ok(not_a_2b && not_2a_b && coprime)
}

/// Parts of the rectangular-game condition `m | b^2 - a^2` and
/// `m | gcd(a, b) gcd(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Thm2Decomposition {
    /// `gcd(a, b)`
    pub d: u64,
    /// `gcd(m, n)`
    pub delta: u64,
    pub divides_diff: bool,
    pub divides_product: bool,
}

impl Thm2Decomposition {
    pub fn holds(&self) -> bool {
        self.divides_diff && self.divides_product
    }
}

/// Only `0 < a < b` and positive moduli are required here; the game
/// regime `b < min(m, n)` is enforced by [`crate::GameParams`].
pub fn thm2_condition(a: u64, b: u64, m: u64, n: u64) -> Result<Thm2Decomposition> {
    if !(0 < a && a < b && m > 0 && n > 0) {
        return Err(Error::Domain(format!(
            "expected 0 < a < b and positive moduli (got a={a}, b={b}, m={m}, n={n})"
        )));
    }
    let (a, b, m, n) = (a as u128, b as u128, m as u128, n as u128);
    let d = gcd(a, b);
    let delta = gcd(m, n);
    if gcd(d, delta) != 1 {
        return Err(Error::Hypothesis(format!(
            "gcd(a, b, m, n) = {} is not 1",
            gcd(d, delta)
        )));
    }
    Ok(Thm2Decomposition {
        d: d as u64,
        delta: delta as u64,
        divides_diff: (b * b - a * a) % m == 0,
        divides_product: (d * delta).is_multiple_of(m),
    })
}

/// Exhaustively checks that `k(a+b)` and `k(b-a)` are nonzero mod `n` for
/// every `1 <= k < n`, given `gcd(a+b, n) = gcd(b-a, n) = 1`.
pub fn eq1_lemma_check(a: u64, b: u64, n: u64) -> Result<bool> {
    check_square_triple(a, b, n)?;
    let (sum, diff, n) = ((a + b) as u128, (b - a) as u128, n as u128);
    if gcd(sum, n) != 1 || gcd(diff, n) != 1 {
        return Err(Error::Domain(format!(
            "requires gcd(a+b, n) = gcd(b-a, n) = 1 (got {} and {})",
            gcd(sum, n),
            gcd(diff, n)
        )));
    }
    Ok((1..n).all(|k| (k * sum) % n != 0 && (k * diff) % n != 0))
}

/// One instance of "all winning positions are Alice's implies
/// `m | b^2 - a^2`", for `m | n`.
pub fn conjecture2_implication(a: u64, b: u64, m: u64, n: u64, all_alice: bool) -> Result<bool> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::Domain(format!("requires m | n (got m={m}, n={n})")));
    }
    let (a, b) = (a as i128, b as i128);
    Ok(!all_alice || divides(m as u128, b * b - a * a))
}
