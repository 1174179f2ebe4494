//! SVG 1.1 drawings of a tiling, its forbidden edges and every walk.
//! Output depends only on the tiling, so equal inputs give equal bytes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::grid::{enumerate_tilings_with, Board, TileKind, TileSet, Tiling};
use crate::walk::enumerate_walks;

const UNIT: usize = 60;
const MARGIN: usize = 20;
const WALK_COLORS: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("tiling index {index} out of range, board has {count} tilings")]
    IndexOutOfRange { index: usize, count: BigInt },
}

fn px(x: usize) -> usize {
    MARGIN + x * UNIT
}

fn py(rows: u8, y: u8) -> usize {
    MARGIN + (rows - y) as usize * UNIT
}

pub fn render_tiling_svg(t: &Tiling) -> String {
    let board = t.board();
    let (rows, cols) = (board.rows(), board.cols());
    let (w, h) = (2 * MARGIN + cols * UNIT, 2 * MARGIN + rows as usize * UNIT);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let walks = enumerate_walks(t);
    let _ = writeln!(s, "<title>{rows}x{cols} tiling, {} walks</title>", walks.len());

    let _ = writeln!(s, r#"<g id="tiles" stroke="black" stroke-width="2">"#);
    for tile in t.tiles() {
        let (c, r) = (tile.anchor.col, tile.anchor.row);
        let (tw, th, fill) = match tile.kind {
            TileKind::Square => (1, 1u8, "#f3e3b5"),
            TileKind::HDomino => (2, 1, "#b5cff3"),
            TileKind::VDomino => (1, 2, "#b9e6c2"),
        };
        let _ = writeln!(
            s,
            r#"<rect class="{:?}" x="{}" y="{}" width="{}" height="{}" fill="{fill}"/>"#,
            tile.kind,
            px(c - 1),
            py(rows, r - 1 + th),
            tw * UNIT,
            th as usize * UNIT
        );
    }
    let _ = writeln!(s, "</g>");

    // Every lattice segment, so an empty board still shows its edges.
    let _ = writeln!(s, r##"<g id="grid" stroke="#888888" stroke-width="1">"##);
    for y in 0..=rows {
        for x in 0..cols {
            line(&mut s, (x, y), (x + 1, y), rows);
        }
    }
    for x in 0..=cols {
        for y in 0..rows {
            line(&mut s, (x, y), (x, y + 1), rows);
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="forbidden" stroke="#cc0000" stroke-width="4" stroke-dasharray="6,4">"##);
    for e in t.forbidden_edges().iter() {
        let (a, b) = e.endpoints();
        line(&mut s, a, b, rows);
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="walks" fill="none" stroke-width="3" stroke-opacity="0.7">"#);
    for (i, walk) in walks.iter().enumerate() {
        let pts: Vec<String> = walk.vertices().iter().map(|&(x, y)| format!("{},{}", px(x), py(rows, y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline data-walk="{walk}" stroke="{}" points="{}"/>"#,
            WALK_COLORS[i % WALK_COLORS.len()],
            pts.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

fn line(s: &mut String, a: (usize, u8), b: (usize, u8), rows: u8) {
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        px(a.0),
        py(rows, a.1),
        px(b.0),
        py(rows, b.1)
    );
}

/// Renders the `index`-th tiling of `board` in enumeration order.
pub fn render_board(board: Board, tiles: TileSet, index: usize) -> Result<String, RenderError> {
    let all = enumerate_tilings_with(board, tiles);
    all.get(index)
        .map(render_tiling_svg)
        .ok_or(RenderError::IndexOutOfRange { index, count: BigInt::from(all.len()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::TilePlacement;

    #[test]
    fn domino_board_draws_two_walks() {
        let t = Tiling::new(Board::one_by(2), vec![TilePlacement::new(TileKind::HDomino, 1, 1)]).unwrap();
        let svg = render_tiling_svg(&t);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<rect").count(), 1);
        assert!(svg.contains(r#"<g id="forbidden""#));
    }

    #[test]
    fn empty_board_has_two_stacked_edges() {
        let svg = render_board(Board::two_by(0), TileSet::SquaresAndDominoes, 0).unwrap();
        let grid = &svg[svg.find(r#"id="grid""#).unwrap()..svg.find(r#"id="forbidden""#).unwrap()];
        assert_eq!(grid.matches("<line").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn index_range_and_determinism() {
        let b = Board::two_by(3);
        assert_eq!(
            render_board(b, TileSet::SquaresAndDominoes, 22),
            Err(RenderError::IndexOutOfRange { index: 22, count: BigInt::from(22) })
        );
        let s = render_board(b, TileSet::SquaresAndDominoes, 21).unwrap();
        assert_eq!(s, render_board(b, TileSet::SquaresAndDominoes, 21).unwrap());
    }
}
