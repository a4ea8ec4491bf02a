//! Exhaustive scans that compare the number-theoretic predicates with
//! search and solver ground truth over parameter ranges.
//!
//! Tuples are visited in lexicographic `(n, m, a, b)` order and checked in
//! parallel; results are collected in that order, so reports are
//! byte-identical between runs.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::game::{GameParams, Position};
use crate::predicates::{
    conjecture2_implication, eq1_lemma_check, gcd, thm1_condition, thm2_condition,
};
use crate::prob::{format_exact, solve_probabilities, Rational};
use crate::reachability::{q_param, reachable_set, round_diagonal};

/// Version tag carried by every structured record.
pub const SCHEMA: &str = "chipwalk/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    Thm1,
    Thm2,
    Conjecture2,
    Corollary,
    NeverReachablePair,
    Eq1Lemma,
    QBijection,
    DiagonalContainment,
    WitnessSoundness,
}

impl ScanKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScanKind::Thm1 => "thm1",
            ScanKind::Thm2 => "thm2",
            ScanKind::Conjecture2 => "conjecture2",
            ScanKind::Corollary => "corollary",
            ScanKind::NeverReachablePair => "never_reachable_pair",
            ScanKind::Eq1Lemma => "eq1_lemma",
            ScanKind::QBijection => "q_bijection",
            ScanKind::DiagonalContainment => "diagonal_containment",
            ScanKind::WitnessSoundness => "witness_soundness",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRange {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u64>,
    pub n_max: u64,
    /// Coin biases, exact `p/q`; only the corollary scan uses them.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub biases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub a: u64,
    pub b: u64,
    pub m: u64,
    pub n: u64,
    pub predicted: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub range: ScanRange,
    pub tuples_checked: u64,
    /// Tuples outside the hypothesis of the checked statement.
    pub skipped: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "scan {}", self.kind.name());
        if let Some(m_max) = self.range.m_max {
            let _ = write!(out, " m_max={m_max}");
        }
        let _ = write!(out, " n_max={}", self.range.n_max);
        if !self.range.biases.is_empty() {
            let _ = write!(out, " biases={}", self.range.biases.join(","));
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "tuples checked: {}", self.tuples_checked);
        let _ = writeln!(out, "skipped: {}", self.skipped);
        for c in &self.counterexamples {
            let _ = writeln!(
                out,
                "counterexample a={} b={} m={} n={}: predicted {}, observed {}",
                c.a, c.b, c.m, c.n, c.predicted, c.observed
            );
        }
        let _ = writeln!(out, "{} counterexamples", self.counterexamples.len());
        out
    }

    /// One JSON record per counterexample followed by one summary record,
    /// newline separated.
    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for c in &self.counterexamples {
            let record = json!({
                "schema": SCHEMA,
                "record": "counterexample",
                "kind": self.kind,
                "a": c.a,
                "b": c.b,
                "m": c.m,
                "n": c.n,
                "predicted": c.predicted,
                "observed": c.observed,
            });
            out.push_str(&record.to_string());
            out.push('\n');
        }
        let summary = json!({
            "schema": SCHEMA,
            "record": "summary",
            "kind": self.kind,
            "range": self.range,
            "tuples_checked": self.tuples_checked,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples.len(),
            "passed": self.passed(),
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// `(a, b, n)` with `0 < a < b < n`, `3 <= n <= n_max`, in `(n, a, b)` order.
pub fn square_tuples(n_max: u64) -> Vec<GameParams> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for a in 1..n {
            for b in a + 1..n {
                out.push(GameParams::square(a, b, n).expect("valid square tuple"));
            }
        }
    }
    out
}

/// `(a, b, m, n)` with `0 < a < b < min(m, n)`, in `(n, m, a, b)` order.
pub fn rect_tuples(m_max: u64, n_max: u64) -> Vec<GameParams> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for m in 3..=m_max {
            let top = m.min(n);
            for a in 1..top {
                for b in a + 1..top {
                    out.push(GameParams::new(a, b, m, n).expect("valid tuple"));
                }
            }
        }
    }
    out
}

fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Closed form of `square_tuples(n_max).len()`: `C(n_max, 3)`.
pub fn square_tuple_count(n_max: u64) -> u64 {
    if n_max < 3 {
        return 0;
    }
    n_max * (n_max - 1) * (n_max - 2) / 6
}

/// Closed form of `rect_tuples(m_max, n_max).len()`, grouping pairs
/// `(m, n)` by `k = min(m, n)`.
pub fn rect_tuple_count(m_max: u64, n_max: u64) -> u64 {
    (3..=m_max.min(n_max))
        .map(|k| choose2(k - 1) * ((n_max - k + 1) + (m_max - k)))
        .sum()
}

enum Outcome {
    Checked(Vec<Counterexample>),
    Skipped,
}

fn counterexample(
    p: GameParams,
    predicted: impl ToString,
    observed: impl ToString,
) -> Counterexample {
    Counterexample {
        a: p.a(),
        b: p.b(),
        m: p.m(),
        n: p.n(),
        predicted: predicted.to_string(),
        observed: observed.to_string(),
    }
}

fn run_scan<F>(
    kind: ScanKind,
    range: ScanRange,
    tuples: Vec<GameParams>,
    check: F,
) -> Result<ScanReport>
where
    F: Fn(GameParams) -> Result<Outcome> + Sync,
{
    let outcomes: Vec<Outcome> = tuples
        .par_iter()
        .map(|&p| check(p))
        .collect::<Result<_>>()?;
    let mut report = ScanReport {
        kind,
        range,
        tuples_checked: 0,
        skipped: 0,
        counterexamples: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Checked(found) => {
                report.tuples_checked += 1;
                report.counterexamples.extend(found);
            }
            Outcome::Skipped => report.skipped += 1,
        }
    }
    Ok(report)
}

fn square_range(n_max: u64) -> ScanRange {
    ScanRange {
        m_max: None,
        n_max,
        biases: Vec::new(),
    }
}

fn rect_range(m_max: u64, n_max: u64) -> ScanRange {
    ScanRange {
        m_max: Some(m_max),
        n_max,
        biases: Vec::new(),
    }
}

fn check_bound(name: &str, value: u64) -> Result<()> {
    if value < 3 {
        return Err(Error::Domain(format!(
            "{name} must be at least 3 (got {value})"
        )));
    }
    Ok(())
}

/// Full square reachability against the three-part condition.
pub fn scan_thm1(n_max: u64) -> Result<ScanReport> {
    check_bound("n_max", n_max)?;
    run_scan(
        ScanKind::Thm1,
        square_range(n_max),
        square_tuples(n_max),
        |p| {
            let predicted = thm1_condition(p.a(), p.b(), p.n())?;
            let observed = reachable_set(p)?.full_reachability_square()?;
            Ok(Outcome::Checked(if predicted == observed {
                vec![]
            } else {
                vec![counterexample(
                    p,
                    format!("full_reachability={predicted}"),
                    format!("full_reachability={observed}"),
                )]
            }))
        },
    )
}

/// "Every reachable win is Alice's" against the two divisibility flags,
/// over tuples with `gcd(a, b, m, n) = 1`.
pub fn scan_thm2(m_max: u64, n_max: u64) -> Result<ScanReport> {
    check_bound("m_max", m_max)?;
    check_bound("n_max", n_max)?;
    run_scan(
        ScanKind::Thm2,
        rect_range(m_max, n_max),
        rect_tuples(m_max, n_max),
        |p| {
            let predicted = match thm2_condition(p.a(), p.b(), p.m(), p.n()) {
                Ok(t) => t.holds(),
                Err(Error::Hypothesis(_)) => return Ok(Outcome::Skipped),
                Err(e) => return Err(e),
            };
            let observed = reachable_set(p)?.all_wins_alice();
            Ok(Outcome::Checked(if predicted == observed {
                vec![]
            } else {
                vec![counterexample(
                    p,
                    format!("all_wins_alice={predicted}"),
                    format!("all_wins_alice={observed}"),
                )]
            }))
        },
    )
}

/// The implication "all reachable wins are Alice's => m | b^2 - a^2" on
/// every tuple with `m | n`.
pub fn scan_conjecture2(m_max: u64, n_max: u64) -> Result<ScanReport> {
    check_bound("m_max", m_max)?;
    check_bound("n_max", n_max)?;
    run_scan(
        ScanKind::Conjecture2,
        rect_range(m_max, n_max),
        rect_tuples(m_max, n_max),
        |p| {
            if p.n() % p.m() != 0 {
                return Ok(Outcome::Skipped);
            }
            let all_alice = reachable_set(p)?.all_wins_alice();
            let holds = conjecture2_implication(p.a(), p.b(), p.m(), p.n(), all_alice)?;
            Ok(Outcome::Checked(if holds {
                vec![]
            } else {
                vec![counterexample(
                    p,
                    "m | b^2-a^2",
                    "all_wins_alice=true but m does not divide b^2-a^2",
                )]
            }))
        },
    )
}

/// Exact `p_bob = 0` against the divisibility flags, for every bias.
pub fn scan_corollary(m_max: u64, n_max: u64, biases: &[Rational]) -> Result<ScanReport> {
    check_bound("m_max", m_max)?;
    check_bound("n_max", n_max)?;
    if biases.is_empty() {
        return Err(Error::Domain(
            "corollary scan needs at least one bias".into(),
        ));
    }
    let mut range = rect_range(m_max, n_max);
    range.biases = biases.iter().map(format_exact).collect();
    run_scan(ScanKind::Corollary, range, rect_tuples(m_max, n_max), |p| {
        let predicted = match thm2_condition(p.a(), p.b(), p.m(), p.n()) {
            Ok(t) => t.holds(),
            Err(Error::Hypothesis(_)) => return Ok(Outcome::Skipped),
            Err(e) => return Err(e),
        };
        let mut found = Vec::new();
        for bias in biases {
            let report = solve_probabilities(p, bias)?;
            let observed = report.p_bob.is_zero();
            if observed != predicted {
                found.push(counterexample(
                    p,
                    format!("p_bob_zero={predicted} at bias {}", format_exact(bias)),
                    format!("p_bob={}", format_exact(&report.p_bob)),
                ));
            }
        }
        Ok(Outcome::Checked(found))
    })
}

/// `(a, a)` and `(b, b)` never reachable in the square game.
pub fn scan_never_reachable_pair(n_max: u64) -> Result<ScanReport> {
    check_bound("n_max", n_max)?;
    run_scan(
        ScanKind::NeverReachablePair,
        square_range(n_max),
        square_tuples(n_max),
        |p| {
            let report = reachable_set(p)?;
            let found = [p.a(), p.b()]
                .into_iter()
                .map(|v| p.position(v as i128, v as i128))
                .filter(|&pos| report.contains(pos))
                .map(|pos| {
                    counterexample(p, format!("{pos} unreachable"), format!("{pos} reachable"))
                })
                .collect();
            Ok(Outcome::Checked(found))
        },
    )
}

fn q_preconditions(p: GameParams) -> bool {
    let n = p.n() as u128;
    gcd((p.a() + p.b()) as u128, n) == 1 && gcd((p.b() - p.a()) as u128, n) == 1
}

pub fn scan_eq1(n_max: u64) -> Result<ScanReport> {
    check_bound("n_max", n_max)?;
    run_scan(
        ScanKind::Eq1Lemma,
        square_range(n_max),
        square_tuples(n_max),
        |p| {
            if !q_preconditions(p) {
                return Ok(Outcome::Skipped);
            }
            let holds = eq1_lemma_check(p.a(), p.b(), p.n())?;
            Ok(Outcome::Checked(if holds {
                vec![]
            } else {
                vec![counterexample(
                    p,
                    "k(a+b), k(b-a) nonzero for 1<=k<n",
                    "some multiple vanishes",
                )]
            }))
        },
    )
}

/// `(i, j) -> q_{i,j}` is onto `Z_n x Z_n` (hence bijective) from `[0, n)^2`.
pub fn scan_q_bijection(n_max: u64) -> Result<ScanReport> {
    check_bound("n_max", n_max)?;
    run_scan(
        ScanKind::QBijection,
        square_range(n_max),
        square_tuples(n_max),
        |p| {
            if !q_preconditions(p) {
                return Ok(Outcome::Skipped);
            }
            let n = p.n() as i128;
            let mut image = BTreeSet::new();
            for i in 0..n {
                for j in 0..n {
                    image.insert(q_param(p, i, j)?);
                }
            }
            let cells = p.cell_count() as usize;
            Ok(Outcome::Checked(if image.len() == cells {
                vec![]
            } else {
                vec![counterexample(
                    p,
                    format!("{cells} distinct images"),
                    format!("{} distinct images", image.len()),
                )]
            }))
        },
    )
}

/// Every reachable position at BFS depth `r` lies in the round-`r` diagonal.
pub fn scan_diagonal_containment(n_max: u64) -> Result<ScanReport> {
    check_bound("n_max", n_max)?;
    run_scan(
        ScanKind::DiagonalContainment,
        square_range(n_max),
        square_tuples(n_max),
        |p| {
            let report = reachable_set(p)?;
            let mut diagonals: HashMap<u32, BTreeSet<Position>> = HashMap::new();
            let mut found = Vec::new();
            for pos in report.reachable() {
                let r = report.depth(pos).expect("reachable position has a depth");
                let diagonal = diagonals
                    .entry(r)
                    .or_insert_with(|| round_diagonal(p, r as u64));
                if !diagonal.contains(&pos) {
                    found.push(counterexample(
                        p,
                        format!("{pos} in round {r} diagonal"),
                        format!("{pos} outside round {r} diagonal"),
                    ));
                }
            }
            Ok(Outcome::Checked(found))
        },
    )
}

/// The square-game invariant suites over one bound.
pub fn scan_invariants(n_max: u64) -> Result<Vec<ScanReport>> {
    Ok(vec![
        scan_never_reachable_pair(n_max)?,
        scan_eq1(n_max)?,
        scan_q_bijection(n_max)?,
        scan_diagonal_containment(n_max)?,
    ])
}

/// Every reachable position's witness replays through interior positions
/// to the target, with length equal to its BFS depth.
pub fn scan_witnesses(m_max: u64, n_max: u64) -> Result<ScanReport> {
    check_bound("m_max", m_max)?;
    check_bound("n_max", n_max)?;
    run_scan(
        ScanKind::WitnessSoundness,
        rect_range(m_max, n_max),
        rect_tuples(m_max, n_max),
        |p| {
            let report = reachable_set(p)?;
            let mut found = Vec::new();
            for pos in report.reachable() {
                let witness = report.witness_path(pos)?;
                let depth = report.depth(pos).expect("reachable position has a depth") as usize;
                let verdict = witness.check(p).and_then(|()| {
                    if witness.len() == depth {
                        Ok(())
                    } else {
                        Err(format!("length {} but depth {depth}", witness.len()))
                    }
                });
                if let Err(why) = verdict {
                    found.push(counterexample(p, format!("valid witness for {pos}"), why));
                }
            }
            Ok(Outcome::Checked(found))
        },
    )
}
