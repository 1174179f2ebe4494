//! Brute-force walk counting over enumerated tilings.
//!
//! A walk is a shortest grid-line path from `(0, 0)`; on a board of width
//! `n` ending on line `j` it takes `n` right steps and `j` up steps and must
//! not traverse the interior edge of any domino. This is the ground truth
//! every recurrence and closed form is checked against.

use std::thread;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{self, Board, EdgeId, ForbiddenEdgeSet, Orientation, TilePlacement, TileSet, Tiling};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("end line {end_line} is outside a board with {rows} rows")]
    InvalidEndLine { end_line: u8, rows: u8 },
    #[error("enumeration budget exceeded: {required} tilings needed, budget is {budget}")]
    BudgetExceeded { required: BigInt, budget: BigInt },
}

/// Upper bound on the number of tilings a brute-force call may enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub max_tilings: BigInt,
}

impl Budget {
    pub fn new(max_tilings: impl Into<BigInt>) -> Self {
        Budget { max_tilings: max_tilings.into() }
    }

    pub fn unlimited() -> Self {
        Budget { max_tilings: BigInt::from(u128::MAX) }
    }

    pub fn check(&self, required: BigInt) -> Result<(), WalkError> {
        if required > self.max_tilings {
            Err(WalkError::BudgetExceeded { required, budget: self.max_tilings.clone() })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    /// Enough for every `2 x n` board with `n <= 14`.
    fn default() -> Self {
        Budget { max_tilings: grid::count_tilings(Board::two_by(14)) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub budget: Budget,
    /// Number of worker threads the tiling stream is split across.
    pub shards: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: Budget::default(), shards: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Right,
    Up,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    pub steps: Vec<Step>,
}

impl LatticePath {
    /// Vertex sequence starting at the origin.
    pub fn vertices(&self) -> Vec<(usize, u8)> {
        let mut at = (0usize, 0u8);
        let mut out = vec![at];
        for step in &self.steps {
            match step {
                Step::Right => at.0 += 1,
                Step::Up => at.1 += 1,
            }
            out.push(at);
        }
        out
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        self.vertices()
            .windows(2)
            .map(|w| {
                let ((x, y), (x2, _)) = (w[0], w[1]);
                if x2 > x {
                    EdgeId::horizontal(x, y)
                } else {
                    EdgeId::vertical(x, y)
                }
            })
            .collect()
    }
}

impl std::fmt::Display for LatticePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for step in &self.steps {
            f.write_str(match step {
                Step::Right => "R",
                Step::Up => "U",
            })?;
        }
        Ok(())
    }
}

/// Total walk counts over all tilings of a board, split by the horizontal
/// grid line the walk ends on. `w2` is absent for one-row boards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCountByLine {
    pub n: usize,
    pub w0: BigInt,
    pub w1: BigInt,
    pub w2: Option<BigInt>,
}

impl WalkCountByLine {
    fn zero(n: usize, rows: u8) -> Self {
        WalkCountByLine { n, w0: BigInt::zero(), w1: BigInt::zero(), w2: (rows == 2).then(BigInt::zero) }
    }

    fn add(&mut self, other: &WalkCountByLine) {
        self.w0 += &other.w0;
        self.w1 += &other.w1;
        if let (Some(a), Some(b)) = (self.w2.as_mut(), other.w2.as_ref()) {
            *a += b;
        }
    }

    fn add_counts(&mut self, counts: &[u64]) {
        self.w0 += counts[0];
        self.w1 += counts[1];
        if let Some(w2) = self.w2.as_mut() {
            *w2 += counts[2];
        }
    }
}

/// Blocked unit segments of one tiling as flat lookup tables.
struct EdgeMask {
    height: usize,
    horizontal: Vec<bool>,
    vertical: Vec<bool>,
}

impl EdgeMask {
    fn new(rows: u8, cols: usize) -> Self {
        let height = rows as usize + 1;
        EdgeMask { height, horizontal: vec![false; height * (cols + 1)], vertical: vec![false; height * (cols + 1)] }
    }

    fn load(&mut self, tiles: &[TilePlacement]) {
        self.horizontal.fill(false);
        self.vertical.fill(false);
        for edge in tiles.iter().filter_map(TilePlacement::interior_edge) {
            let slot = edge.x * self.height + edge.y as usize;
            match edge.orientation {
                Orientation::Horizontal => self.horizontal[slot] = true,
                Orientation::Vertical => self.vertical[slot] = true,
            }
        }
    }
}

/// Path counts from the origin to `(cols, j)` for every line `j`.
///
/// Each count is at most `C(cols + 2, 2)`, so `u64` is ample for any board
/// whose tilings can be enumerated.
fn line_counts(cols: usize, mask: &EdgeMask, paths: &mut Vec<u64>) -> [u64; 3] {
    let height = mask.height;
    paths.clear();
    paths.resize(height * (cols + 1), 0);
    for x in 0..=cols {
        for y in 0..height {
            let here = x * height + y;
            paths[here] = if here == 0 {
                1
            } else {
                let mut s = 0;
                if x > 0 && !mask.horizontal[here - height] {
                    s += paths[here - height];
                }
                if y > 0 && !mask.vertical[here - 1] {
                    s += paths[here - 1];
                }
                s
            };
        }
    }
    let mut out = [0; 3];
    for (j, slot) in out.iter_mut().enumerate().take(height) {
        *slot = paths[cols * height + j];
    }
    out
}

/// Reusable buffers for counting walks on many tilings of one board.
struct Tally {
    cols: usize,
    mask: EdgeMask,
    paths: Vec<u64>,
    total: WalkCountByLine,
}

impl Tally {
    fn new(board: Board) -> Self {
        Tally {
            cols: board.cols(),
            mask: EdgeMask::new(board.rows(), board.cols()),
            paths: Vec::new(),
            total: WalkCountByLine::zero(board.cols(), board.rows()),
        }
    }

    fn counts(&mut self, tiles: &[TilePlacement]) -> [u64; 3] {
        self.mask.load(tiles);
        line_counts(self.cols, &self.mask, &mut self.paths)
    }

    fn add(&mut self, tiles: &[TilePlacement]) {
        let c = self.counts(tiles);
        self.total.add_counts(&c);
    }
}

pub fn count_walks_for_tiling(t: &Tiling, end_line: u8) -> Result<BigInt, WalkError> {
    let board = t.board();
    if end_line > board.rows() {
        return Err(WalkError::InvalidEndLine { end_line, rows: board.rows() });
    }
    let counts = Tally::new(board).counts(t.tiles());
    Ok(BigInt::from(counts[end_line as usize]))
}

/// All admissible corner-to-corner walks, lexicographic with `Right < Up`.
pub fn enumerate_walks(t: &Tiling) -> Vec<LatticePath> {
    let board = t.board();
    let forbidden = t.forbidden_edges();
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(board.cols() + board.rows() as usize);
    extend_walks(board, &forbidden, (0, 0), &mut steps, &mut out);
    out
}

fn extend_walks(
    board: Board,
    forbidden: &ForbiddenEdgeSet,
    (x, y): (usize, u8),
    steps: &mut Vec<Step>,
    out: &mut Vec<LatticePath>,
) {
    if x == board.cols() && y == board.rows() {
        out.push(LatticePath { steps: steps.clone() });
        return;
    }
    if x < board.cols() && !forbidden.contains(&EdgeId::horizontal(x, y)) {
        steps.push(Step::Right);
        extend_walks(board, forbidden, (x + 1, y), steps, out);
        steps.pop();
    }
    if y < board.rows() && !forbidden.contains(&EdgeId::vertical(x, y)) {
        steps.push(Step::Up);
        extend_walks(board, forbidden, (x, y + 1), steps, out);
        steps.pop();
    }
}

fn sum_over(board: Board, tiles: TileSet, config: &OracleConfig) -> Result<WalkCountByLine, WalkError> {
    config.budget.check(grid::count_tilings_with(board, tiles))?;

    if config.shards <= 1 {
        let mut tally = Tally::new(board);
        grid::for_each_tiling(board, tiles, |t| tally.add(t));
        return Ok(tally.total);
    }

    // Split after the first half of the columns; each shard owns a
    // round-robin slice of the frontier states.
    let fronts = grid::frontiers(board, tiles, board.cols() / 2 + 1);
    let shards = config.shards.min(fronts.len().max(1));
    let partials: Vec<WalkCountByLine> = thread::scope(|s| {
        let handles: Vec<_> = (0..shards)
            .map(|k| {
                let fronts = &fronts;
                s.spawn(move || {
                    let mut tally = Tally::new(board);
                    for f in fronts.iter().skip(k).step_by(shards) {
                        grid::for_each_tiling_from(board, tiles, f, |t| tally.add(t));
                    }
                    tally.total
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("walk shard panicked")).collect()
    });
    let mut total = WalkCountByLine::zero(board.cols(), board.rows());
    for p in &partials {
        total.add(p);
    }
    Ok(total)
}

/// `v(n)`: walks across all square/domino tilings of the `1 x n` board.
pub fn brute_v(n: usize, budget: &Budget) -> Result<BigInt, WalkError> {
    let config = OracleConfig { budget: budget.clone(), shards: 1 };
    Ok(sum_over(Board::one_by(n), TileSet::SquaresAndDominoes, &config)?.w1)
}

/// Walk totals over all `2 x n` tilings per end line; `w2` is `w(n)`.
pub fn brute_w_by_line(n: usize, squares_allowed: bool, config: &OracleConfig) -> Result<WalkCountByLine, WalkError> {
    sum_over(Board::two_by(n), TileSet::from_squares_allowed(squares_allowed), config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{enumerate_tilings, enumerate_tilings_with, TileKind};
    use num_integer::binomial;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn single_domino_row_walks() {
        let t = Tiling::new(
            Board::one_by(3),
            vec![TilePlacement::new(TileKind::HDomino, 1, 1), TilePlacement::new(TileKind::Square, 3, 1)],
        )
        .unwrap();
        assert_eq!(count_walks_for_tiling(&t, 1).unwrap(), big(3));
    }

    #[test]
    fn bottom_line_is_never_blocked() {
        for t in enumerate_tilings(Board::two_by(5)) {
            assert_eq!(count_walks_for_tiling(&t, 0).unwrap(), big(1));
        }
    }

    #[test]
    fn unobstructed_two_by_two() {
        let t = enumerate_tilings(Board::two_by(2)).remove(0);
        assert_eq!(t.domino_count(), 0);
        assert_eq!(count_walks_for_tiling(&t, 2).unwrap(), big(6));
    }

    #[test]
    fn end_line_out_of_range() {
        let t = enumerate_tilings(Board::one_by(2)).remove(0);
        assert_eq!(count_walks_for_tiling(&t, 2), Err(WalkError::InvalidEndLine { end_line: 2, rows: 1 }));
    }

    #[test]
    fn v_small_values() {
        let b = Budget::default();
        let got: Vec<BigInt> = (0..=4).map(|n| brute_v(n, &b).unwrap()).collect();
        assert_eq!(got, [1, 2, 5, 10, 20].map(big));
    }

    #[test]
    fn w_by_line_examples() {
        let c = OracleConfig::default();
        let two = brute_w_by_line(2, true, &c).unwrap();
        assert_eq!((two.w0, two.w1, two.w2), (big(7), big(14), Some(big(28))));
        let one = brute_w_by_line(1, true, &c).unwrap();
        assert_eq!((one.w1, one.w2), (big(3), Some(big(5))));
        assert_eq!(brute_w_by_line(5, false, &c).unwrap().w2, Some(big(50)));
    }

    #[test]
    fn walk_enumeration_examples() {
        let square = enumerate_tilings(Board::one_by(1)).remove(0);
        let names: Vec<String> = enumerate_walks(&square).iter().map(ToString::to_string).collect();
        assert_eq!(names, ["RU", "UR"]);

        let domino = Tiling::new(Board::one_by(2), vec![TilePlacement::new(TileKind::HDomino, 1, 1)]).unwrap();
        let names: Vec<String> = enumerate_walks(&domino).iter().map(ToString::to_string).collect();
        assert_eq!(names, ["RRU", "URR"]);

        let vertical = Tiling::new(Board::two_by(1), vec![TilePlacement::new(TileKind::VDomino, 1, 1)]).unwrap();
        let names: Vec<String> = enumerate_walks(&vertical).iter().map(ToString::to_string).collect();
        assert_eq!(names, ["RUU", "UUR"]);
    }

    #[test]
    fn enumerated_walks_match_counts_and_avoid_dominoes() {
        for t in enumerate_tilings(Board::two_by(4)) {
            let walks = enumerate_walks(&t);
            assert_eq!(BigInt::from(walks.len()), count_walks_for_tiling(&t, 2).unwrap());
            assert!(walks.windows(2).all(|w| w[0] < w[1]));
            let forbidden = t.forbidden_edges();
            for w in &walks {
                assert_eq!(w.steps.len(), 6);
                assert!(w.edges().iter().all(|e| !forbidden.contains(e)));
            }
        }
    }

    #[test]
    fn aggregation_identity_over_domino_counts() {
        let b = Budget::default();
        for n in 0..=20u64 {
            let expected: u64 = (0..=n / 2).map(|k| binomial(n - k, k) * (n - k + 1)).sum();
            assert_eq!(brute_v(n as usize, &b).unwrap(), big(expected), "n = {n}");
        }
    }

    #[test]
    fn w0_counts_tilings() {
        let c = OracleConfig::default();
        for n in 0..=10 {
            assert_eq!(brute_w_by_line(n, true, &c).unwrap().w0, grid::count_tilings(Board::two_by(n)));
        }
    }

    #[test]
    fn monotone_superset_bound() {
        for board in [Board::one_by(6), Board::two_by(5)] {
            let free = binomial(board.cols() as u64 + board.rows() as u64, board.rows() as u64);
            for t in enumerate_tilings(board) {
                let c = count_walks_for_tiling(&t, board.rows()).unwrap();
                assert!(c <= big(free));
                assert_eq!(c == big(free), t.domino_count() == 0);
            }
        }
    }

    #[test]
    fn sum_is_order_independent() {
        let board = Board::two_by(6);
        let tilings = enumerate_tilings(board);
        let forward: BigInt = tilings.iter().map(|t| count_walks_for_tiling(t, 2).unwrap()).sum();
        let backward: BigInt = tilings.iter().rev().map(|t| count_walks_for_tiling(t, 2).unwrap()).sum();
        assert_eq!(forward, backward);
        assert_eq!(Some(forward), brute_w_by_line(6, true, &OracleConfig::default()).unwrap().w2);
    }

    #[test]
    fn domino_only_tilings_are_fibonacci() {
        let (mut a, mut b) = (1usize, 1usize);
        for n in 0..=14 {
            assert_eq!(enumerate_tilings_with(Board::two_by(n), TileSet::DominoesOnly).len(), a, "n = {n}");
            (a, b) = (b, a + b);
        }
    }

    #[test]
    fn sharding_does_not_change_totals() {
        for squares in [true, false] {
            let single = brute_w_by_line(9, squares, &OracleConfig::default()).unwrap();
            for shards in [2, 3, 8] {
                let cfg = OracleConfig { shards, ..OracleConfig::default() };
                assert_eq!(brute_w_by_line(9, squares, &cfg).unwrap(), single);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget::new(21);
        assert!(brute_v(6, &tight).is_ok()); // F(7) = 13 tilings
        let cfg = OracleConfig { budget: tight, shards: 1 };
        assert_eq!(
            brute_w_by_line(3, true, &cfg),
            Err(WalkError::BudgetExceeded { required: big(22), budget: big(21) })
        );
    }
}
