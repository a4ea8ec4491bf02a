//! Analysis of the modulo dependent chip-collecting game as a random walk
//! on `Z_m x Z_n`: exact reachability with witnesses, exact winning
//! probabilities, and exhaustive scans of the characterization theorems.
//!
//! ```
//! use chipwalk_core::prob::ratio;
//! use chipwalk_core::{reachable_set, solve_probabilities, GameParams};
//!
//! let params = GameParams::new(1, 2, 4, 8)?;
//! assert!(!reachable_set(params)?.all_wins_alice());
//! let probs = solve_probabilities(params, &ratio(1, 2))?;
//! assert_eq!(probs.p_alice, ratio(1753, 2048));
//! # Ok::<(), chipwalk_core::Error>(())
//! ```

pub mod error;
pub mod game;
pub mod predicates;
pub mod prob;
pub mod reachability;
pub mod verify;

pub use error::{Error, Result};
pub use game::{GameParams, MoveKind, Position, PositionClass, MAX_MODULUS};
pub use predicates::{
    conjecture2_implication, eq1_lemma_check, gcd, lcm, thm1_condition, thm2_condition,
    Thm2Decomposition,
};
pub use prob::{simulate, solve_probabilities, ProbabilityReport, Rational, SimulationCounts};
pub use reachability::{
    all_wins_alice, full_reachability_square, q_param, reachable_set, reachable_set_with_budget,
    round_diagonal, witness_path, ReachabilityReport, WitnessPath, DEFAULT_STATE_BUDGET,
};
pub use verify::{ScanKind, ScanRange, ScanReport};
