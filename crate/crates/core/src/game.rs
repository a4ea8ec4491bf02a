//! Game parameters, positions, moves and the winning classification.
//!
//! Each round Alice tosses a coin: on [`MoveKind::AliceLow`] she collects
//! `a` chips and Bob `b`, on [`MoveKind::AliceHigh`] the reverse. Alice
//! wins on `x = 0 (mod m)`, Bob on `y = 0 (mod n)`; Alice collects first,
//! so a simultaneous landing on `(0, 0)` is hers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted chip amount or modulus.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GameParams {
    a: u64,
    b: u64,
    m: u64,
    n: u64,
}

impl GameParams {
    /// Validates `0 < a < b < min(m, n)` and that the `m * n` states are
    /// addressable.
    pub fn new(a: u64, b: u64, m: u64, n: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidParams("a must be positive".into()));
        }
        if a >= b {
            return Err(Error::InvalidParams(format!(
                "a must be less than b (got a={a}, b={b})"
            )));
        }
        if b >= m.min(n) {
            return Err(Error::InvalidParams(format!(
                "b must be less than min(m, n) (got b={b}, m={m}, n={n})"
            )));
        }
        if m > MAX_MODULUS || n > MAX_MODULUS {
            return Err(Error::InvalidParams(format!(
                "moduli must not exceed {MAX_MODULUS} (got m={m}, n={n})"
            )));
        }
        m.checked_mul(n)
            .filter(|&cells| usize::try_from(cells).is_ok())
            .ok_or_else(|| {
                Error::InvalidParams(format!("m*n overflows the address space (m={m}, n={n})"))
            })?;
        Ok(GameParams { a, b, m, n })
    }

    /// The square game, `m = n`.
    pub fn square(a: u64, b: u64, n: u64) -> Result<Self> {
        Self::new(a, b, n, n)
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    /// Number of positions in `Z_m x Z_n`.
    pub fn cell_count(&self) -> u64 {
        self.m * self.n
    }

    /// Builds a position from arbitrary integers, reducing each coordinate.
    pub fn position(&self, x: i128, y: i128) -> Position {
        Position {
            x: x.rem_euclid(self.m as i128) as u64,
            y: y.rem_euclid(self.n as i128) as u64,
        }
    }

    pub fn start(&self) -> Position {
        Position { x: 0, y: 0 }
    }

    /// Flat index `x * n + y`.
    pub fn index(&self, pos: Position) -> usize {
        (pos.x * self.n + pos.y) as usize
    }

    pub fn from_index(&self, index: usize) -> Position {
        let index = index as u64;
        Position {
            x: index / self.n,
            y: index % self.n,
        }
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.m).flat_map(move |x| (0..self.n).map(move |y| Position { x, y }))
    }

    pub fn step(&self, pos: Position, mv: MoveKind) -> Position {
        let (dx, dy) = match mv {
            MoveKind::AliceLow => (self.a, self.b),
            MoveKind::AliceHigh => (self.b, self.a),
        };
        Position {
            x: (pos.x + dx) % self.m,
            y: (pos.y + dy) % self.n,
        }
    }

    /// Classifies a landing. Never returns [`PositionClass::Start`]; the
    /// untouched start is classified by the caller.
    pub fn classify(&self, pos: Position) -> PositionClass {
        if pos.x == 0 {
            PositionClass::AliceWin
        } else if pos.y == 0 {
            PositionClass::BobWin
        } else {
            PositionClass::Interior
        }
    }

    /// Replays a move word from the start without regard to termination.
    pub fn replay(&self, moves: &[MoveKind]) -> Position {
        moves
            .iter()
            .fold(self.start(), |pos, &mv| self.step(pos, mv))
    }
}

impl fmt::Display for GameParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} m={} n={}", self.a, self.b, self.m, self.n)
    }
}

/// A point of `Z_m x Z_n`. Coordinates are always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    x: u64,
    y: u64,
}

impl Position {
    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    /// `(+a, +b)`
    AliceLow,
    /// `(+b, +a)`
    AliceHigh,
}

impl MoveKind {
    pub const ALL: [MoveKind; 2] = [MoveKind::AliceLow, MoveKind::AliceHigh];

    pub fn symbol(&self) -> &'static str {
        match self {
            MoveKind::AliceLow => "(+a,+b)",
            MoveKind::AliceHigh => "(+b,+a)",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::AliceLow => f.write_str("AliceLow"),
            MoveKind::AliceHigh => f.write_str("AliceHigh"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PositionClass {
    Start,
    AliceWin,
    BobWin,
    Interior,
}

impl PositionClass {
    pub fn is_winning(&self) -> bool {
        matches!(self, PositionClass::AliceWin | PositionClass::BobWin)
    }

    /// Whether the walk continues from a position of this class.
    pub fn expands(&self) -> bool {
        matches!(self, PositionClass::Start | PositionClass::Interior)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(a: u64, b: u64, m: u64, n: u64) -> GameParams {
        GameParams::new(a, b, m, n).unwrap()
    }

    #[test]
    fn step_examples() {
        let p = params(1, 2, 3, 9);
        assert_eq!(p.step(p.start(), MoveKind::AliceLow), p.position(1, 2));
        assert_eq!(
            p.step(p.position(2, 1), MoveKind::AliceLow),
            p.position(0, 3)
        );

        let p = params(2, 3, 7, 7);
        assert_eq!(
            p.step(p.position(5, 6), MoveKind::AliceHigh),
            p.position(1, 1)
        );
    }

    #[test]
    fn classify_examples() {
        let p = params(1, 2, 5, 8);
        assert_eq!(p.classify(p.position(0, 5)), PositionClass::AliceWin);
        assert_eq!(p.classify(p.position(4, 0)), PositionClass::BobWin);
        assert_eq!(p.classify(p.position(3, 7)), PositionClass::Interior);
        // simultaneous landing goes to Alice
        assert_eq!(p.classify(p.position(0, 0)), PositionClass::AliceWin);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(matches!(
            GameParams::new(0, 2, 5, 5),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            GameParams::new(2, 2, 5, 5),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            GameParams::new(3, 2, 5, 5),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            GameParams::new(1, 4, 4, 9),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            GameParams::new(1, 4, 9, 4),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            GameParams::new(1, 2, MAX_MODULUS + 1, 5),
            Err(Error::InvalidParams(_))
        ));
        assert!(GameParams::new(1, 2, 3, 3).is_ok());
    }

    #[test]
    fn position_reduces_negative_coordinates() {
        let p = params(2, 3, 7, 5);
        assert_eq!(p.position(-1, -6), p.position(6, 4));
        assert_eq!(p.position(-1, -6).x(), 6);
        assert_eq!(p.position(-1, -6).y(), 4);
    }

    #[test]
    fn index_round_trips() {
        let p = params(2, 3, 7, 5);
        for (i, pos) in p.positions().enumerate() {
            assert_eq!(p.index(pos), i);
            assert_eq!(p.from_index(i), pos);
        }
    }

    fn arb_params() -> impl Strategy<Value = GameParams> {
        (3u64..40, 3u64..40)
            .prop_flat_map(|(m, n)| {
                let top = m.min(n);
                (1..top - 1, Just(m), Just(n), Just(top))
            })
            .prop_flat_map(|(a, m, n, top)| (Just(a), a + 1..top, Just(m), Just(n)))
            .prop_map(|(a, b, m, n)| GameParams::new(a, b, m, n).unwrap())
    }

    proptest! {
        #[test]
        fn moves_commute(p in arb_params(), x in 0i128..1000, y in 0i128..1000) {
            let pos = p.position(x, y);
            let lh = p.step(p.step(pos, MoveKind::AliceLow), MoveKind::AliceHigh);
            let hl = p.step(p.step(pos, MoveKind::AliceHigh), MoveKind::AliceLow);
            prop_assert_eq!(lh, hl);
        }

        #[test]
        fn replay_matches_round_parametrization(
            p in arb_params(),
            word in proptest::collection::vec(any::<bool>(), 0..60),
        ) {
            let moves: Vec<MoveKind> = word
                .iter()
                .map(|&high| if high { MoveKind::AliceHigh } else { MoveKind::AliceLow })
                .collect();
            let r = moves.len() as i128;
            let i = moves.iter().filter(|&&mv| mv == MoveKind::AliceHigh).count() as i128;
            let (a, b) = (p.a() as i128, p.b() as i128);
            prop_assert_eq!(p.replay(&moves), p.position(a * (r - i) + b * i, a * i + b * (r - i)));
        }

        #[test]
        fn classify_is_exclusive(p in arb_params(), x in 0i128..40, y in 0i128..40) {
            let pos = p.position(x, y);
            let class = p.classify(pos);
            prop_assert_eq!(class == PositionClass::AliceWin, pos.x() == 0);
            prop_assert_eq!(class == PositionClass::BobWin, pos.y() == 0 && pos.x() != 0);
            prop_assert_eq!(class == PositionClass::Interior, pos.x() != 0 && pos.y() != 0);
        }
    }
}
