//! Exact absorption probabilities by rational Gaussian elimination.
//!
//! Unknowns are the transient states: the start plus every reachable
//! interior position. For a transient `s` with bias `p`,
//!
//! ```text
//! h(s) - p h(low(s)) - (1-p) h(high(s)) = p [low(s) wins] + (1-p) [high(s) wins]
//! ```
//!
//! solved once with an Alice right-hand side and once with a Bob one, in
//! the same elimination. States that cannot reach any winning position are
//! pinned to `h = 0`, which is the minimal nonnegative solution there.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};
use crate::game::{GameParams, MoveKind, Position, PositionClass};
use crate::reachability::{reachable_set_with_budget, DEFAULT_STATE_BUDGET};

/// Default cap on the number of transient unknowns in the dense system.
pub const DEFAULT_SOLVER_BUDGET: u64 = 2048;

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityReport {
    pub params: GameParams,
    /// Probability of the `AliceLow` move.
    pub coin_bias: Rational,
    pub p_alice: Rational,
    pub p_bob: Rational,
    pub p_nonterminating: Rational,
}

/// Per-state absorption probabilities over the transient states.
#[derive(Debug, Clone)]
pub struct AbsorptionSolution {
    params: GameParams,
    coin_bias: Rational,
    /// `states[0]` is the start.
    states: Vec<Position>,
    alice: Vec<Rational>,
    bob: Vec<Rational>,
}

pub fn solve_probabilities(params: GameParams, coin_bias: &Rational) -> Result<ProbabilityReport> {
    Ok(solve_absorption(params, coin_bias, DEFAULT_SOLVER_BUDGET)?.report())
}

pub(crate) fn check_bias(coin_bias: &Rational) -> Result<()> {
    if !(coin_bias.is_positive() && coin_bias < &Rational::one()) {
        return Err(Error::Domain(format!(
            "coin bias must lie strictly between 0 and 1 (got {coin_bias})"
        )));
    }
    Ok(())
}

enum Target {
    Transient(usize),
    Alice,
    Bob,
}

pub fn solve_absorption(
    params: GameParams,
    coin_bias: &Rational,
    budget: u64,
) -> Result<AbsorptionSolution> {
    check_bias(coin_bias)?;
    let report = reachable_set_with_budget(params, DEFAULT_STATE_BUDGET)?;

    let mut states = vec![params.start()];
    let mut interior: Vec<Position> = report
        .reachable()
        .filter(|&pos| params.classify(pos) == PositionClass::Interior)
        .collect();
    // BFS depth order keeps fill-in low during elimination
    interior.sort_by_key(|&pos| report.depth(pos));
    states.extend(interior);
    if states.len() as u64 > budget {
        return Err(Error::Resource {
            required: states.len() as u64,
            budget,
        });
    }
    let mut slot_of = vec![usize::MAX; params.cell_count() as usize];
    for (k, &pos) in states.iter().enumerate() {
        slot_of[params.index(pos)] = k;
    }
    let target = |pos: Position, mv: MoveKind| {
        let next = params.step(pos, mv);
        match params.classify(next) {
            PositionClass::AliceWin => Target::Alice,
            PositionClass::BobWin => Target::Bob,
            _ => Target::Transient(slot_of[params.index(next)]),
        }
    };
    let succ: Vec<[Target; 2]> = states
        .iter()
        .map(|&pos| MoveKind::ALL.map(|mv| target(pos, mv)))
        .collect();

    let live = can_absorb(&succ);
    let mut column = vec![usize::MAX; states.len()];
    let mut unknowns = 0;
    for (k, &ok) in live.iter().enumerate() {
        if ok {
            column[k] = unknowns;
            unknowns += 1;
        }
    }

    let weights = [coin_bias.clone(), Rational::one() - coin_bias];
    let width = unknowns + 2;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(unknowns);
    for (k, moves) in succ.iter().enumerate() {
        if !live[k] {
            continue;
        }
        let mut row = vec![Rational::zero(); width];
        row[column[k]] += Rational::one();
        for (t, w) in moves.iter().zip(&weights) {
            match *t {
                Target::Alice => row[unknowns] += w,
                Target::Bob => row[unknowns + 1] += w,
                Target::Transient(j) if live[j] => row[column[j]] -= w,
                // h = 0 on dead states
                Target::Transient(_) => {}
            }
        }
        rows.push(row);
    }

    let solved = gaussian_solve(rows, unknowns, 2)?;
    let mut alice = vec![Rational::zero(); states.len()];
    let mut bob = vec![Rational::zero(); states.len()];
    for k in 0..states.len() {
        if live[k] {
            alice[k] = solved[0][column[k]].clone();
            bob[k] = solved[1][column[k]].clone();
        }
    }

    Ok(AbsorptionSolution {
        params,
        coin_bias: coin_bias.clone(),
        states,
        alice,
        bob,
    })
}

/// Backward search from states with a winning successor.
fn can_absorb(succ: &[[Target; 2]]) -> Vec<bool> {
    let mut preds = vec![Vec::new(); succ.len()];
    let mut live = vec![false; succ.len()];
    let mut queue = VecDeque::new();
    for (k, moves) in succ.iter().enumerate() {
        for t in moves {
            match *t {
                Target::Transient(j) => preds[j].push(k),
                Target::Alice | Target::Bob => {
                    if !live[k] {
                        live[k] = true;
                        queue.push_back(k);
                    }
                }
            }
        }
    }
    while let Some(j) = queue.pop_front() {
        for &k in &preds[j] {
            if !live[k] {
                live[k] = true;
                queue.push_back(k);
            }
        }
    }
    live
}

/// Solves `A X = B` for a square `A` given as augmented rows
/// `[A | B]` with `rhs` right-hand columns. Partial pivoting picks the
/// entry of largest magnitude, lowest row on ties. Returns one solution
/// vector per right-hand column.
pub fn gaussian_solve(
    mut rows: Vec<Vec<Rational>>,
    unknowns: usize,
    rhs: usize,
) -> Result<Vec<Vec<Rational>>> {
    let width = unknowns + rhs;
    for col in 0..unknowns {
        let mut pivot = col;
        let mut best = rows[col][col].abs();
        for (r, row) in rows.iter().enumerate().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let magnitude = row[col].abs();
            if magnitude > best {
                best = magnitude;
                pivot = r;
            }
        }
        if rows[pivot][col].is_zero() {
            return Err(Error::Domain(format!(
                "singular transient system at column {col}"
            )));
        }
        rows.swap(col, pivot);

        let (head, tail) = rows.split_at_mut(col + 1);
        let pivot_row = &head[col];
        let support: Vec<usize> = (col + 1..width)
            .filter(|&c| !pivot_row[c].is_zero())
            .collect();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for &c in &support {
                let delta = &factor * &pivot_row[c];
                row[c] -= delta;
            }
            row[col] = Rational::zero();
        }
    }

    let mut solutions = vec![vec![Rational::zero(); unknowns]; rhs];
    for (k, solution) in solutions.iter_mut().enumerate() {
        for col in (0..unknowns).rev() {
            let row = &rows[col];
            let mut acc = row[unknowns + k].clone();
            for c in col + 1..unknowns {
                if !row[c].is_zero() && !solution[c].is_zero() {
                    acc -= &row[c] * &solution[c];
                }
            }
            solution[col] = acc / &row[col];
        }
    }
    Ok(solutions)
}

impl AbsorptionSolution {
    pub fn params(&self) -> GameParams {
        self.params
    }

    pub fn states(&self) -> &[Position] {
        &self.states
    }

    pub fn alice(&self) -> &[Rational] {
        &self.alice
    }

    pub fn bob(&self) -> &[Rational] {
        &self.bob
    }

    pub fn report(&self) -> ProbabilityReport {
        let p_alice = self.alice[0].clone();
        let p_bob = self.bob[0].clone();
        let p_nonterminating = Rational::one() - &p_alice - &p_bob;
        ProbabilityReport {
            params: self.params,
            coin_bias: self.coin_bias.clone(),
            p_alice,
            p_bob,
            p_nonterminating,
        }
    }

    /// Substitutes the solution back into the one-step equations, rebuilt
    /// from [`GameParams::step`], and returns the states whose residual is
    /// not exactly zero.
    pub fn residual_failures(&self) -> Vec<Position> {
        let p = self.params;
        // the start never recurs as an interior successor
        let slot: HashMap<Position, usize> = self
            .states
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &pos)| (pos, k))
            .collect();
        let lookup = |pos: Position, values: &[Rational], win: PositionClass| -> Rational {
            let class = p.classify(pos);
            if class == win {
                Rational::one()
            } else if class.is_winning() {
                Rational::zero()
            } else {
                values[slot[&pos]].clone()
            }
        };
        let weights = [self.coin_bias.clone(), Rational::one() - &self.coin_bias];
        let mut failures = Vec::new();
        for (k, &pos) in self.states.iter().enumerate() {
            for (values, win) in [
                (&self.alice, PositionClass::AliceWin),
                (&self.bob, PositionClass::BobWin),
            ] {
                let expected: Rational = MoveKind::ALL
                    .iter()
                    .zip(&weights)
                    .map(|(&mv, w)| w * lookup(p.step(pos, mv), values, win))
                    .sum();
                if values[k] != expected {
                    failures.push(pos);
                    break;
                }
            }
        }
        failures
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::rational::ratio;

    fn params(a: u64, b: u64, m: u64, n: u64) -> GameParams {
        GameParams::new(a, b, m, n).unwrap()
    }

    #[test]
    fn three_by_three_hand_solution() {
        let r = solve_probabilities(params(1, 2, 3, 3), &ratio(1, 2)).unwrap();
        assert_eq!(r.p_alice, ratio(1, 1));
        assert_eq!(r.p_bob, ratio(0, 1));
        assert_eq!(r.p_nonterminating, ratio(0, 1));
    }

    #[test]
    fn no_bob_landing_means_zero_bob_mass() {
        for bias in [ratio(1, 3), ratio(1, 2), ratio(9, 10)] {
            let r = solve_probabilities(params(1, 2, 3, 9), &bias).unwrap();
            assert_eq!(r.p_bob, ratio(0, 1));
        }
    }

    #[test]
    fn masses_sum_to_one() {
        let r = solve_probabilities(params(1, 2, 4, 8), &ratio(1, 2)).unwrap();
        assert!(r.p_bob > ratio(0, 1));
        assert_eq!(&r.p_alice + &r.p_bob + &r.p_nonterminating, ratio(1, 1));
    }

    #[test]
    fn rejects_degenerate_bias() {
        for bias in [ratio(0, 1), ratio(1, 1), ratio(-1, 2), ratio(3, 2)] {
            assert!(matches!(
                solve_probabilities(params(1, 2, 3, 3), &bias),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn solver_budget() {
        let err = solve_absorption(params(1, 2, 5, 5), &ratio(1, 2), 2).unwrap_err();
        assert!(matches!(err, Error::Resource { budget: 2, .. }));
    }

    #[test]
    fn residual_is_zero() {
        let s = solve_absorption(params(2, 3, 7, 5), &ratio(1, 3), DEFAULT_SOLVER_BUDGET).unwrap();
        assert!(s.residual_failures().is_empty());
    }

    #[test]
    fn gaussian_solve_small_system() {
        // 2x + y = 5, x + 3y = 10  => x = 1, y = 3
        let rows = vec![
            vec![ratio(2, 1), ratio(1, 1), ratio(5, 1)],
            vec![ratio(1, 1), ratio(3, 1), ratio(10, 1)],
        ];
        let x = gaussian_solve(rows, 2, 1).unwrap();
        assert_eq!(x, vec![vec![ratio(1, 1), ratio(3, 1)]]);
    }

    #[test]
    fn gaussian_solve_needs_pivoting() {
        // zero leading entry: y = 2, x + y = 3
        let rows = vec![
            vec![ratio(0, 1), ratio(1, 1), ratio(2, 1)],
            vec![ratio(1, 1), ratio(1, 1), ratio(3, 1)],
        ];
        let x = gaussian_solve(rows, 2, 1).unwrap();
        assert_eq!(x, vec![vec![ratio(1, 1), ratio(2, 1)]]);
    }

    #[test]
    fn gaussian_solve_singular() {
        let rows = vec![
            vec![ratio(1, 1), ratio(2, 1), ratio(1, 1)],
            vec![ratio(2, 1), ratio(4, 1), ratio(2, 1)],
        ];
        assert!(gaussian_solve(rows, 2, 1).is_err());
    }
}
