//! Winning probabilities of the walk as an absorbing Markov chain.

pub mod rational;
pub mod simulate;
pub mod solve;

pub use rational::{approx_decimal, format_exact, parse_fraction, ratio, Rational};
pub use simulate::{default_move_cap, simulate, simulate_with_cap, SimulationCounts};
pub use solve::{
    gaussian_solve, solve_absorption, solve_probabilities, AbsorptionSolution, ProbabilityReport,
    DEFAULT_SOLVER_BUDGET,
};
