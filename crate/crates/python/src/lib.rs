//! Python module `tilewalk_py`: boards, tilings, walk counts, recurrence
//! tables, closed forms and the verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tilewalk::closed_form;
use tilewalk::elimination::{build_matrix_m, kernel, primitive_integer_vector};
use tilewalk::grid::{self, TileKind, TileSet};
use tilewalk::recurrence::sequences::{domino_only_system, tiling_system, w_ninth_order_recurrence, walk_system};
use tilewalk::recurrence::{eval_recurrence, eval_system, CoupledSystemSpec};
use tilewalk::verify::{run_suite, Suite, VerifyOptions};
use tilewalk::walk::{self, Budget, OracleConfig};
use tilewalk::BigInt;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn budget(max_tilings: Option<BigInt>) -> Budget {
    max_tilings.map(Budget::new).unwrap_or_default()
}

fn tile_set(dominoes_only: bool) -> TileSet {
    TileSet::from_squares_allowed(!dominoes_only)
}

#[pyclass(frozen, eq, skip_from_py_object, module = "tilewalk_py")]
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Board(grid::Board);

#[pymethods]
impl Board {
    #[new]
    fn new(rows: u8, cols: usize) -> PyResult<Self> {
        grid::Board::new(rows, cols).map(Board).map_err(value_error)
    }

    #[getter]
    fn rows(&self) -> u8 {
        self.0.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.0.cols()
    }

    #[pyo3(signature = (dominoes_only = false))]
    fn count_tilings(&self, dominoes_only: bool) -> BigInt {
        grid::count_tilings_with(self.0, tile_set(dominoes_only))
    }

    /// Every tiling, in the order `render_svg` indexes them.
    #[pyo3(signature = (dominoes_only = false))]
    fn tilings(&self, dominoes_only: bool) -> Vec<Tiling> {
        grid::enumerate_tilings_with(self.0, tile_set(dominoes_only)).into_iter().map(Tiling).collect()
    }

    fn __repr__(&self) -> String {
        format!("Board({}, {})", self.0.rows(), self.0.cols())
    }
}

#[pyclass(frozen, skip_from_py_object, module = "tilewalk_py")]
#[derive(Clone)]
pub struct Tiling(grid::Tiling);

#[pymethods]
impl Tiling {
    #[getter]
    fn board(&self) -> Board {
        Board(self.0.board())
    }

    /// `(kind, col, row)` per tile, anchored at its left or bottom cell.
    fn tiles(&self) -> Vec<(&'static str, usize, u8)> {
        self.0
            .tiles()
            .iter()
            .map(|t| {
                let kind = match t.kind {
                    TileKind::Square => "square",
                    TileKind::HDomino => "h-domino",
                    TileKind::VDomino => "v-domino",
                };
                (kind, t.anchor.col, t.anchor.row)
            })
            .collect()
    }

    #[getter]
    fn domino_count(&self) -> usize {
        self.0.domino_count()
    }

    fn forbidden_edges(&self) -> Vec<((usize, u8), (usize, u8))> {
        self.0.forbidden_edges().iter().map(|e| e.endpoints()).collect()
    }

    #[pyo3(signature = (end_line = None))]
    fn count_walks(&self, end_line: Option<u8>) -> PyResult<BigInt> {
        let line = end_line.unwrap_or(self.0.board().rows());
        walk::count_walks_for_tiling(&self.0, line).map_err(value_error)
    }

    /// Walks as vertex lists from `(0, 0)` to the top-right corner.
    fn walks(&self) -> Vec<Vec<(usize, u8)>> {
        walk::enumerate_walks(&self.0).iter().map(|w| w.vertices()).collect()
    }

    fn svg(&self) -> String {
        tilewalk::svg::render_tiling_svg(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Tiling({:?})", self.tiles())
    }
}

#[pyfunction]
#[pyo3(signature = (n, max_tilings = None))]
fn brute_v(n: usize, max_tilings: Option<BigInt>) -> PyResult<BigInt> {
    walk::brute_v(n, &budget(max_tilings)).map_err(value_error)
}

/// `(w0, w1, w2)`: walk totals over all `2 x n` tilings by end line.
#[pyfunction]
#[pyo3(signature = (n, dominoes_only = false, shards = 1, max_tilings = None))]
fn brute_w_by_line(
    n: usize,
    dominoes_only: bool,
    shards: usize,
    max_tilings: Option<BigInt>,
) -> PyResult<(BigInt, BigInt, BigInt)> {
    let cfg = OracleConfig { budget: budget(max_tilings), shards: shards.max(1) };
    let w = walk::brute_w_by_line(n, !dominoes_only, &cfg).map_err(value_error)?;
    Ok((w.w0, w.w1, w.w2.unwrap_or_default()))
}

fn system_dict<'py>(py: Python<'py>, spec: &CoupledSystemSpec, upto: usize) -> PyResult<Bound<'py, PyDict>> {
    let tables = eval_system(spec, upto).map_err(value_error)?;
    let out = PyDict::new(py);
    for name in tables.names() {
        let values = &tables.get(name).expect("listed member").values()[..=upto];
        out.set_item(name, values.to_vec())?;
    }
    Ok(out)
}

/// Member tables of `"tiling"`, `"walk"` or `"domino-walk"` for `n = 0..=upto`.
#[pyfunction]
fn system<'py>(py: Python<'py>, name: &str, upto: usize) -> PyResult<Bound<'py, PyDict>> {
    let spec = match name {
        "tiling" => tiling_system(),
        "walk" => walk_system(),
        "domino-walk" => domino_only_system(),
        _ => return Err(value_error(format!("unknown system {name:?}"))),
    };
    system_dict(py, &spec, upto)
}

#[pyfunction]
fn w_recurrence(upto: usize) -> PyResult<Vec<BigInt>> {
    eval_recurrence(&w_ninth_order_recurrence(), upto).map(|t| t.into_values()).map_err(value_error)
}

#[pyfunction]
fn fibonacci(n: u64) -> BigInt {
    closed_form::fibonacci(n)
}

#[pyfunction]
fn v_closed(n: usize) -> PyResult<BigInt> {
    closed_form::v_fibonacci_form(n).map_err(value_error)
}

#[pyfunction]
fn w_domino_closed(n: usize) -> PyResult<BigInt> {
    closed_form::w_domino_fibonacci_form(n).map_err(value_error)
}

/// `w_d(n+1) / w_d(n)` divided by the golden ratio, as a `Fraction`
/// within `10**-40` of the exact value.
#[pyfunction]
fn asymptotic_ratio<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = closed_form::asymptotic_ratio(n).map_err(value_error)?;
    py.import("fractions")?.getattr("Fraction")?.call1((r.numer().clone(), r.denom().clone()))
}

/// Primitive integer spanning vector of the shift-matrix kernel.
#[pyfunction]
fn kernel_vector() -> PyResult<Vec<BigInt>> {
    let k = kernel(&build_matrix_m());
    match k.as_slice() {
        [v] => Ok(primitive_integer_vector(v)),
        _ => Err(value_error(format!("kernel has dimension {}", k.len()))),
    }
}

/// SVG for the `index`-th tiling of a board.
#[pyfunction]
#[pyo3(signature = (rows, cols, index, dominoes_only = false))]
fn render_svg(rows: u8, cols: usize, index: usize, dominoes_only: bool) -> PyResult<String> {
    let board = grid::Board::new(rows, cols).map_err(value_error)?;
    tilewalk::svg::render_board(board, tile_set(dominoes_only), index).map_err(value_error)
}

/// Runs a suite offline and returns `(name, passed, detail)` per check.
#[pyfunction]
fn verify(suite: &str) -> PyResult<Vec<(String, bool, Option<String>)>> {
    let suite: Suite = suite.parse().map_err(value_error)?;
    Ok(run_suite(suite, &VerifyOptions::default())
        .into_iter()
        .map(|c| {
            let detail = (!c.passed).then(|| format!("{:?} {:?} {:?}", c.first_failure, c.expected, c.actual));
            (c.name, c.passed, detail)
        })
        .collect())
}

#[pymodule]
pub fn tilewalk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Board>()?;
    m.add_class::<Tiling>()?;
    m.add_function(wrap_pyfunction!(brute_v, m)?)?;
    m.add_function(wrap_pyfunction!(brute_w_by_line, m)?)?;
    m.add_function(wrap_pyfunction!(system, m)?)?;
    m.add_function(wrap_pyfunction!(w_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(fibonacci, m)?)?;
    m.add_function(wrap_pyfunction!(v_closed, m)?)?;
    m.add_function(wrap_pyfunction!(w_domino_closed, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_vector, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
