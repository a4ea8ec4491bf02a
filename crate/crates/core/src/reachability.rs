//! Breadth-first reachability over `Z_m x Z_n` for the terminating walk.
//!
//! Winning positions are recorded when landed on but never expanded. The
//! start `(0, 0)` is expanded once; landing on it later is an Alice win.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{GameParams, MoveKind, Position, PositionClass};
use crate::predicates::lcm;

/// Default cap on `m * n` for a single search.
pub const DEFAULT_STATE_BUDGET: u64 = 1 << 26;

const UNSEEN: u32 = u32::MAX;

/// Result of [`reachable_set`]. Immutable once built.
#[derive(Debug, Clone)]
pub struct ReachabilityReport {
    params: GameParams,
    /// Fewest moves to land on each cell, `UNSEEN` otherwise. The start cell
    /// only carries a depth once it has been re-landed.
    depth: Vec<u32>,
    /// BFS predecessor (flat index) and the move taken from it. Predecessor
    /// index 0 always means the start, since a landing on `(0, 0)` is absorbing.
    link: Vec<Option<(u32, MoveKind)>>,
    reachable_count: usize,
    max_depth: u32,
}

pub fn reachable_set(params: GameParams) -> Result<ReachabilityReport> {
    reachable_set_with_budget(params, DEFAULT_STATE_BUDGET)
}

pub fn reachable_set_with_budget(params: GameParams, budget: u64) -> Result<ReachabilityReport> {
    let cells = params.cell_count();
    if cells > budget {
        return Err(Error::Resource {
            required: cells,
            budget,
        });
    }
    let cells = cells as usize;
    let mut depth = vec![UNSEEN; cells];
    let mut link = vec![None; cells];
    let mut reachable_count = 0;
    let mut max_depth = 0;

    let start = params.start();
    let mut queue = VecDeque::new();
    queue.push_back((start, 0u32));
    while let Some((pos, d)) = queue.pop_front() {
        let from = params.index(pos) as u32;
        for mv in MoveKind::ALL {
            let next = params.step(pos, mv);
            let slot = params.index(next);
            if depth[slot] != UNSEEN {
                continue;
            }
            depth[slot] = d + 1;
            link[slot] = Some((from, mv));
            reachable_count += 1;
            max_depth = max_depth.max(d + 1);
            if params.classify(next).expands() {
                queue.push_back((next, d + 1));
            }
        }
    }

    Ok(ReachabilityReport {
        params,
        depth,
        link,
        reachable_count,
        max_depth,
    })
}

impl ReachabilityReport {
    pub fn params(&self) -> GameParams {
        self.params
    }

    /// Whether some walk lands on `pos` after leaving the start.
    pub fn contains(&self, pos: Position) -> bool {
        self.depth[self.params.index(pos)] != UNSEEN
    }

    pub fn depth(&self, pos: Position) -> Option<u32> {
        match self.depth[self.params.index(pos)] {
            UNSEEN => None,
            d => Some(d),
        }
    }

    /// Deepest BFS layer that contains a reachable position.
    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// Class of a reachable landing, `None` if unreachable.
    pub fn class(&self, pos: Position) -> Option<PositionClass> {
        self.contains(pos).then(|| self.params.classify(pos))
    }

    /// One BFS predecessor. `None` when unreachable or first reached
    /// directly from the start.
    pub fn parent(&self, pos: Position) -> Option<(Position, MoveKind)> {
        if self.depth(pos)? <= 1 {
            return None;
        }
        self.link[self.params.index(pos)]
            .map(|(from, mv)| (self.params.from_index(from as usize), mv))
    }

    /// Reachable positions in `x * n + y` order.
    pub fn reachable(&self) -> impl Iterator<Item = Position> + '_ {
        self.depth
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != UNSEEN)
            .map(|(i, _)| self.params.from_index(i))
    }

    pub fn len(&self) -> usize {
        self.reachable_count
    }

    pub fn is_empty(&self) -> bool {
        self.reachable_count == 0
    }

    /// Number of reachable positions of the given class.
    pub fn count(&self, class: PositionClass) -> usize {
        self.reachable()
            .filter(|&pos| self.params.classify(pos) == class)
            .count()
    }

    pub fn all_wins_alice(&self) -> bool {
        self.reachable()
            .all(|pos| self.params.classify(pos) != PositionClass::BobWin)
    }

    /// Whether exactly `Z_n x Z_n \ {(a,a), (b,b)}` is reachable.
    pub fn full_reachability_square(&self) -> Result<bool> {
        let p = self.params;
        if !p.is_square() {
            return Err(Error::Domain(format!(
                "full reachability is defined for the square game only (m={}, n={})",
                p.m(),
                p.n()
            )));
        }
        let excluded = [
            p.position(p.a() as i128, p.a() as i128),
            p.position(p.b() as i128, p.b() as i128),
        ];
        let full = p
            .positions()
            .all(|pos| self.contains(pos) != excluded.contains(&pos));
        Ok(full)
    }

    /// Follows parent links back to the start.
    pub fn witness_path(&self, target: Position) -> Result<WitnessPath> {
        let mut moves = Vec::new();
        let mut slot = self.params.index(target);
        if self.depth[slot] == UNSEEN {
            return Err(Error::NotFound(target));
        }
        for _ in 0..self.depth[slot] {
            let (from, mv) = self.link[slot].expect("reachable cell has a BFS link");
            moves.push(mv);
            slot = from as usize;
        }
        moves.reverse();
        Ok(WitnessPath {
            moves,
            landing: target,
        })
    }

    /// Grid character for one cell.
    pub fn cell_symbol(&self, pos: Position) -> char {
        if pos == self.params.start() && !self.contains(pos) {
            return 'S';
        }
        match self.class(pos) {
            None => '.',
            Some(PositionClass::Interior) => 'I',
            Some(PositionClass::AliceWin) => 'A',
            Some(PositionClass::BobWin) => 'B',
            Some(PositionClass::Start) => 'S',
        }
    }

    /// Text matrix: a header line `a b m n`, then one row per `x` with one
    /// character per `y`.
    pub fn render_grid(&self) -> String {
        let p = self.params;
        let mut out = format!("{} {} {} {}\n", p.a(), p.b(), p.m(), p.n());
        for x in 0..p.m() {
            for y in 0..p.n() {
                out.push(self.cell_symbol(p.position(x as i128, y as i128)));
            }
            out.push('\n');
        }
        out
    }
}

pub fn witness_path(report: &ReachabilityReport, target: Position) -> Result<WitnessPath> {
    report.witness_path(target)
}

pub fn all_wins_alice(report: &ReachabilityReport) -> bool {
    report.all_wins_alice()
}

pub fn full_reachability_square(report: &ReachabilityReport) -> Result<bool> {
    report.full_reachability_square()
}

/// A move word certifying that `landing` is reachable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPath {
    pub moves: Vec<MoveKind>,
    pub landing: Position,
}

impl WitnessPath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the word from the start. Every intermediate landing must be
    /// interior and the last one must be `landing`.
    pub fn check(&self, params: GameParams) -> std::result::Result<(), String> {
        if self.moves.is_empty() {
            return Err("empty move word".into());
        }
        let mut pos = params.start();
        for (k, &mv) in self.moves.iter().enumerate() {
            pos = params.step(pos, mv);
            let last = k + 1 == self.moves.len();
            if !last && params.classify(pos) != PositionClass::Interior {
                return Err(format!("move {} lands on winning position {pos}", k + 1));
            }
        }
        if pos != self.landing {
            return Err(format!("replay ends at {pos}, expected {}", self.landing));
        }
        Ok(())
    }
}

/// Positions after exactly `r` moves, ignoring termination:
/// `{ (a(r-i) + bi, ai + b(r-i)) : 0 <= i <= r }`.
pub fn round_diagonal(params: GameParams, r: u64) -> BTreeSet<Position> {
    let (a, b) = (params.a() as i128, params.b() as i128);
    let r = r as i128;
    // p_{r,i} is periodic in i with period lcm(m, n)
    let period = lcm(params.m() as u128, params.n() as u128) as i128;
    let top = r.min(period - 1);
    (0..=top)
        .map(|i| params.position(a * (r - i) + b * i, a * i + b * (r - i)))
        .collect()
}

/// `q_{i,j} = (ia + j(a+b), ib + j(a+b))` in the square game.
pub fn q_param(params: GameParams, i: i128, j: i128) -> Result<Position> {
    if !params.is_square() {
        return Err(Error::Domain(format!(
            "q parametrization requires m = n (m={}, n={})",
            params.m(),
            params.n()
        )));
    }
    let (a, b) = (params.a() as i128, params.b() as i128);
    Ok(params.position(i * a + j * (a + b), i * b + j * (a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(a: u64, b: u64, m: u64, n: u64) -> ReachabilityReport {
        reachable_set(GameParams::new(a, b, m, n).unwrap()).unwrap()
    }

    #[test]
    fn three_by_three_is_tiny() {
        let r = report(1, 2, 3, 3);
        let p = r.params();
        let got: Vec<Position> = r.reachable().collect();
        assert_eq!(
            got,
            vec![p.position(0, 0), p.position(1, 2), p.position(2, 1)]
        );
        assert!(!r.contains(p.position(1, 1)));
        assert!(!r.contains(p.position(2, 2)));
        assert_eq!(r.class(p.start()), Some(PositionClass::AliceWin));
        assert!(r.all_wins_alice());
    }

    #[test]
    fn start_link_is_hidden_from_parent() {
        let r = report(1, 2, 3, 9);
        let p = r.params();
        assert_eq!(r.depth(p.position(1, 2)), Some(1));
        assert_eq!(r.parent(p.position(1, 2)), None);
        assert_eq!(
            r.parent(p.position(0, 3)),
            Some((p.position(1, 2), MoveKind::AliceHigh))
        );
    }

    #[test]
    fn witness_examples() {
        let r = report(1, 2, 3, 9);
        let p = r.params();
        let w = r.witness_path(p.position(1, 2)).unwrap();
        assert_eq!(w.moves, vec![MoveKind::AliceLow]);
        let w = r.witness_path(p.position(0, 3)).unwrap();
        assert_eq!(w.moves, vec![MoveKind::AliceLow, MoveKind::AliceHigh]);
        assert_eq!(w.check(p), Ok(()));
    }

    #[test]
    fn witness_of_unreachable_is_not_found() {
        let r = report(1, 2, 3, 3);
        let target = r.params().position(1, 1);
        assert_eq!(r.witness_path(target), Err(Error::NotFound(target)));
    }

    #[test]
    fn check_rejects_bad_words() {
        let p = GameParams::new(1, 2, 3, 9).unwrap();
        let through_win = WitnessPath {
            moves: vec![MoveKind::AliceLow, MoveKind::AliceHigh, MoveKind::AliceLow],
            landing: p.position(1, 5),
        };
        assert!(through_win.check(p).is_err());
        let wrong_end = WitnessPath {
            moves: vec![MoveKind::AliceLow],
            landing: p.position(2, 1),
        };
        assert!(wrong_end.check(p).is_err());
    }

    #[test]
    fn full_reachability_examples() {
        assert_eq!(report(2, 3, 7, 7).full_reachability_square(), Ok(true));
        assert_eq!(report(1, 2, 5, 5).full_reachability_square(), Ok(false));
        assert_eq!(report(1, 3, 5, 5).full_reachability_square(), Ok(false));
        assert!(matches!(
            report(1, 2, 3, 9).full_reachability_square(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn all_wins_alice_examples() {
        assert!(report(1, 2, 3, 9).all_wins_alice());
        assert!(!report(1, 2, 4, 8).all_wins_alice());
        assert!(report(1, 2, 3, 3).all_wins_alice());
    }

    #[test]
    fn round_diagonal_examples() {
        let p = GameParams::new(1, 2, 3, 9).unwrap();
        assert_eq!(round_diagonal(p, 0), BTreeSet::from([p.start()]));
        assert_eq!(
            round_diagonal(p, 1),
            BTreeSet::from([p.position(1, 2), p.position(2, 1)])
        );
        assert_eq!(
            round_diagonal(p, 2),
            BTreeSet::from([p.position(2, 4), p.position(0, 3), p.position(1, 2)])
        );
    }

    #[test]
    fn round_diagonal_uses_full_period_for_long_rounds() {
        let p = GameParams::new(2, 3, 5, 7).unwrap();
        for r in [34u64, 35, 36, 100, 1001] {
            let direct: BTreeSet<Position> = (0..=r as i128)
                .map(|i| {
                    let r = r as i128;
                    p.position(2 * (r - i) + 3 * i, 2 * i + 3 * (r - i))
                })
                .collect();
            assert_eq!(round_diagonal(p, r), direct, "r = {r}");
        }
    }

    #[test]
    fn q_param_examples() {
        let p = GameParams::square(2, 3, 7).unwrap();
        assert_eq!(q_param(p, 1, 0), Ok(p.position(2, 3)));
        assert_eq!(q_param(p, 0, 0), Ok(p.start()));
        assert_eq!(q_param(p, 1, 1), Ok(p.position(0, 1)));
        let rect = GameParams::new(1, 2, 3, 9).unwrap();
        assert!(matches!(q_param(rect, 1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn grid_layout() {
        let r = report(1, 2, 3, 3);
        assert_eq!(r.render_grid(), "1 2 3 3\nA..\n..I\n.I.\n");
    }

    #[test]
    fn budget_is_enforced() {
        let p = GameParams::new(1, 2, 10, 10).unwrap();
        assert_eq!(
            reachable_set_with_budget(p, 99).unwrap_err(),
            Error::Resource {
                required: 100,
                budget: 99
            }
        );
        assert!(reachable_set_with_budget(p, 100).is_ok());
    }
}
