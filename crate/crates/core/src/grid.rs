//! Boards, tile placements and exhaustive tiling enumeration for `1 x n` and
//! `2 x n` boards.
//!
//! Cells are addressed `(col, row)` with `col` in `1..=n` and `row` in
//! `1..=rows`. Grid vertices are `(x, y)` with `x` in `0..=n`, `y` in
//! `0..=rows`; walks run from `(0, 0)` to `(n, rows)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("boards have 1 or 2 rows, got {0}")]
    InvalidRows(u8),
    #[error("partial tilings are defined on 2-row boards only")]
    PartialNeedsTwoRows,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Board {
    rows: u8,
    cols: usize,
}

impl Board {
    pub fn new(rows: u8, cols: usize) -> Result<Self, GridError> {
        match rows {
            1 | 2 => Ok(Board { rows, cols }),
            _ => Err(GridError::InvalidRows(rows)),
        }
    }

    pub fn one_by(cols: usize) -> Self {
        Board { rows: 1, cols }
    }

    pub fn two_by(cols: usize) -> Self {
        Board { rows: 2, cols }
    }

    pub fn rows(&self) -> u8 {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (1..=self.cols).flat_map(move |col| (1..=self.rows).map(move |row| Cell { col, row }))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        (1..=self.cols).contains(&cell.col) && (1..=self.rows).contains(&cell.row)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub col: usize,
    pub row: u8,
}

impl Cell {
    pub fn new(col: usize, row: u8) -> Self {
        Cell { col, row }
    }
}

/// Variant order is the enumeration order at each cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileKind {
    Square,
    HDomino,
    VDomino,
}

/// A tile and its anchor: the left cell of a horizontal domino, the bottom
/// cell of a vertical one.
///
/// Field order gives the canonical `(col, row, kind)` ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TilePlacement {
    pub anchor: Cell,
    pub kind: TileKind,
}

impl TilePlacement {
    pub fn new(kind: TileKind, col: usize, row: u8) -> Self {
        TilePlacement { anchor: Cell { col, row }, kind }
    }

    pub fn cells(&self) -> Vec<Cell> {
        let Cell { col, row } = self.anchor;
        match self.kind {
            TileKind::Square => vec![self.anchor],
            TileKind::HDomino => vec![self.anchor, Cell { col: col + 1, row }],
            TileKind::VDomino => vec![self.anchor, Cell { col, row: row + 1 }],
        }
    }

    pub fn is_domino(&self) -> bool {
        self.kind != TileKind::Square
    }

    /// The interior grid segment shared by the tile's two cells.
    pub fn interior_edge(&self) -> Option<EdgeId> {
        let Cell { col, row } = self.anchor;
        match self.kind {
            TileKind::Square => None,
            TileKind::HDomino => Some(EdgeId::vertical(col, row - 1)),
            TileKind::VDomino => Some(EdgeId::horizontal(col - 1, row)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tiling {
    board: Board,
    tiles: Vec<TilePlacement>,
}

impl Tiling {
    /// Builds a tiling after checking it is an exact cover of `board`.
    pub fn new(board: Board, mut tiles: Vec<TilePlacement>) -> Option<Self> {
        tiles.sort();
        let mut seen = BTreeSet::new();
        for tile in &tiles {
            if tile.kind == TileKind::VDomino && board.rows != 2 {
                return None;
            }
            for cell in tile.cells() {
                if !board.contains(cell) || !seen.insert(cell) {
                    return None;
                }
            }
        }
        if seen.len() != board.rows as usize * board.cols {
            return None;
        }
        Some(Tiling { board, tiles })
    }

    pub fn board(&self) -> Board {
        self.board
    }

    pub fn tiles(&self) -> &[TilePlacement] {
        &self.tiles
    }

    pub fn domino_count(&self) -> usize {
        self.tiles.iter().filter(|t| t.is_domino()).count()
    }

    pub fn forbidden_edges(&self) -> ForbiddenEdgeSet {
        forbidden_edges(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A unit grid segment named by its lower/left endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    pub orientation: Orientation,
    pub x: usize,
    pub y: u8,
}

impl EdgeId {
    /// Segment from `(x, y)` to `(x + 1, y)`.
    pub fn horizontal(x: usize, y: u8) -> Self {
        EdgeId { orientation: Orientation::Horizontal, x, y }
    }

    /// Segment from `(x, y)` to `(x, y + 1)`.
    pub fn vertical(x: usize, y: u8) -> Self {
        EdgeId { orientation: Orientation::Vertical, x, y }
    }

    pub fn endpoints(&self) -> ((usize, u8), (usize, u8)) {
        match self.orientation {
            Orientation::Horizontal => ((self.x, self.y), (self.x + 1, self.y)),
            Orientation::Vertical => ((self.x, self.y), (self.x, self.y + 1)),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenEdgeSet {
    edges: BTreeSet<EdgeId>,
}

impl ForbiddenEdgeSet {
    pub fn contains(&self, edge: &EdgeId) -> bool {
        self.edges.contains(edge)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgeId> {
        self.edges.iter()
    }
}

impl FromIterator<EdgeId> for ForbiddenEdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        ForbiddenEdgeSet { edges: iter.into_iter().collect() }
    }
}

/// One interior edge per domino; squares contribute nothing.
pub fn forbidden_edges(tiling: &Tiling) -> ForbiddenEdgeSet {
    forbidden_edges_of(&tiling.tiles)
}

fn forbidden_edges_of(tiles: &[TilePlacement]) -> ForbiddenEdgeSet {
    tiles.iter().filter_map(TilePlacement::interior_edge).collect()
}

/// Which tile kinds the enumerator may place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TileSet {
    SquaresAndDominoes,
    DominoesOnly,
}

impl TileSet {
    pub fn from_squares_allowed(squares_allowed: bool) -> Self {
        if squares_allowed {
            TileSet::SquaresAndDominoes
        } else {
            TileSet::DominoesOnly
        }
    }
}

/// Column-frontier state: all columns `< col` are complete and `filled` is
/// the occupancy bitmask (bit `row - 1`) of column `col`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    pub tiles: Vec<TilePlacement>,
    pub col: usize,
    pub filled: u8,
}

struct Enumerator<'a, F> {
    rows: u8,
    cols: usize,
    /// Per-column mask of cells outside the region, indexed `0..=cols + 1`.
    blocked: &'a [u8],
    squares: bool,
    stop_col: usize,
    stack: Vec<TilePlacement>,
    visit: F,
}

impl<F: FnMut(&[TilePlacement], usize, u8)> Enumerator<'_, F> {
    fn column(&mut self, col: usize, filled: u8) {
        if col > self.cols || col == self.stop_col {
            (self.visit)(&self.stack, col, filled);
            return;
        }
        self.cell(col, 1, filled, self.blocked[col + 1]);
    }

    fn cell(&mut self, col: usize, row: u8, filled: u8, next: u8) {
        if row > self.rows {
            self.column(col + 1, next);
            return;
        }
        let bit = 1u8 << (row - 1);
        if filled & bit != 0 {
            self.cell(col, row + 1, filled, next);
            return;
        }
        if self.squares {
            self.stack.push(TilePlacement::new(TileKind::Square, col, row));
            self.cell(col, row + 1, filled | bit, next);
            self.stack.pop();
        }
        if col < self.cols && next & bit == 0 {
            self.stack.push(TilePlacement::new(TileKind::HDomino, col, row));
            self.cell(col, row + 1, filled | bit, next | bit);
            self.stack.pop();
        }
        if row == 1 && self.rows == 2 && filled & 0b10 == 0 {
            self.stack.push(TilePlacement::new(TileKind::VDomino, col, row));
            self.cell(col, row + 1, filled | 0b11, next);
            self.stack.pop();
        }
    }
}

fn blocked_masks(board: Board, removed: &[Cell]) -> Vec<u8> {
    let mut blocked = vec![0u8; board.cols + 2];
    for cell in removed {
        if board.contains(*cell) {
            blocked[cell.col] |= 1 << (cell.row - 1);
        }
    }
    blocked
}

/// Streams every exact cover of `board` minus `removed`, in canonical order.
fn walk_region<F: FnMut(&[TilePlacement])>(board: Board, removed: &[Cell], tiles: TileSet, mut visit: F) {
    let blocked = blocked_masks(board, removed);
    let mut e = Enumerator {
        rows: board.rows,
        cols: board.cols,
        blocked: &blocked,
        squares: tiles == TileSet::SquaresAndDominoes,
        stop_col: usize::MAX,
        stack: Vec::with_capacity(board.rows as usize * board.cols),
        visit: |t: &[TilePlacement], _, _| visit(t),
    };
    e.column(1, blocked[1]);
}

/// Calls `visit` with the tile list of every tiling of `board`, in the same
/// order as [`enumerate_tilings`], without materializing the list.
pub fn for_each_tiling<F: FnMut(&[TilePlacement])>(board: Board, tiles: TileSet, visit: F) {
    walk_region(board, &[], tiles, visit);
}

/// All frontier states reached after completing columns `1..split_col`.
///
/// Continuing every returned frontier with [`for_each_tiling_from`] visits
/// each tiling exactly once; concatenating in the returned order reproduces
/// the canonical order.
pub fn frontiers(board: Board, tiles: TileSet, split_col: usize) -> Vec<Frontier> {
    let blocked = blocked_masks(board, &[]);
    let mut out = Vec::new();
    let mut e = Enumerator {
        rows: board.rows,
        cols: board.cols,
        blocked: &blocked,
        squares: tiles == TileSet::SquaresAndDominoes,
        stop_col: split_col.max(1),
        stack: Vec::new(),
        visit: |t: &[TilePlacement], col, filled| out.push(Frontier { tiles: t.to_vec(), col, filled }),
    };
    e.column(1, blocked[1]);
    out
}

pub fn for_each_tiling_from<F: FnMut(&[TilePlacement])>(
    board: Board,
    tiles: TileSet,
    start: &Frontier,
    mut visit: F,
) {
    let blocked = blocked_masks(board, &[]);
    let mut e = Enumerator {
        rows: board.rows,
        cols: board.cols,
        blocked: &blocked,
        squares: tiles == TileSet::SquaresAndDominoes,
        stop_col: usize::MAX,
        stack: start.tiles.clone(),
        visit: |t: &[TilePlacement], _, _| visit(t),
    };
    e.column(start.col, start.filled);
}

/// Every tiling of `board` by squares and dominoes, lexicographic over the
/// canonical tile lists. `n = 0` yields the single empty tiling.
pub fn enumerate_tilings(board: Board) -> Vec<Tiling> {
    enumerate_tilings_with(board, TileSet::SquaresAndDominoes)
}

pub fn enumerate_tilings_with(board: Board, tiles: TileSet) -> Vec<Tiling> {
    let mut out = Vec::new();
    for_each_tiling(board, tiles, |t| out.push(Tiling { board, tiles: t.to_vec() }));
    out
}

/// Tiling count without enumeration: `F(n+1)` for one row, the
/// `r(n) = 3r(n-1) + r(n-2) - r(n-3)` sequence for two.
pub fn count_tilings(board: Board) -> BigInt {
    count_tilings_with(board, TileSet::SquaresAndDominoes)
}

pub fn count_tilings_with(board: Board, tiles: TileSet) -> BigInt {
    let n = board.cols;
    match (board.rows, tiles) {
        // 1 x n with squares, or 2 x n with dominoes only: F(n+1)
        (1, TileSet::SquaresAndDominoes) | (2, TileSet::DominoesOnly) => {
            let (mut a, mut b) = (BigInt::one(), BigInt::one());
            for _ in 0..n {
                let c = &a + &b;
                a = std::mem::replace(&mut b, c);
            }
            a
        }
        (1, TileSet::DominoesOnly) => {
            if n.is_multiple_of(2) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }
        _ => {
            let mut r = [BigInt::one(), BigInt::from(2), BigInt::from(7)];
            if n < 3 {
                return r[n].clone();
            }
            for _ in 3..=n {
                let next = BigInt::from(3) * &r[2] + &r[1] - &r[0];
                r = [r[1].clone(), r[2].clone(), next];
            }
            r[2].clone()
        }
    }
}

/// The three truncated `2 x n` shapes used to build tilings column by column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PartialKind {
    /// Top-right cell missing, bottom-right two cells under a horizontal domino.
    A,
    /// Bottom-right cell missing.
    C,
    /// Bottom-right two cells missing, top-right two cells under a horizontal domino.
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialTiling {
    pub board: Board,
    pub kind: PartialKind,
    pub removed: Vec<Cell>,
    pub tiles: Vec<TilePlacement>,
}

impl PartialTiling {
    pub fn covered_cells(&self) -> BTreeSet<Cell> {
        self.tiles.iter().flat_map(TilePlacement::cells).collect()
    }
}

pub fn enumerate_partial_tilings(board: Board, kind: PartialKind) -> Result<Vec<PartialTiling>, GridError> {
    if board.rows != 2 {
        return Err(GridError::PartialNeedsTwoRows);
    }
    let n = board.cols;
    let (removed, forced) = match kind {
        PartialKind::C if n >= 1 => (vec![Cell::new(n, 1)], None),
        PartialKind::A if n >= 2 => (
            vec![Cell::new(n, 2)],
            Some(TilePlacement::new(TileKind::HDomino, n - 1, 1)),
        ),
        PartialKind::D if n >= 2 => (
            vec![Cell::new(n - 1, 1), Cell::new(n, 1)],
            Some(TilePlacement::new(TileKind::HDomino, n - 1, 2)),
        ),
        _ => return Ok(Vec::new()),
    };
    let mut excluded = removed.clone();
    if let Some(tile) = forced {
        excluded.extend(tile.cells());
    }
    let mut out = Vec::new();
    walk_region(board, &excluded, TileSet::SquaresAndDominoes, |t| {
        let mut tiles = t.to_vec();
        tiles.extend(forced);
        tiles.sort();
        out.push(PartialTiling { board, kind, removed: removed.clone(), tiles });
    });
    Ok(out)
}
