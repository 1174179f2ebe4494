//! Named sequences and the routes that can compute each of them.

use std::fmt;
use std::str::FromStr;

use tilewalk::closed_form::{fibonacci, v_fibonacci_form, w_domino_fibonacci_form};
use tilewalk::grid::{count_tilings, count_tilings_with, enumerate_partial_tilings, Board, PartialKind, TileSet};
use tilewalk::recurrence::sequences::{
    domino_only_system, fibonacci as fibonacci_recurrence, tiling_system, v_closed_recurrences,
    w_ninth_order_recurrence, walk_system,
};
use tilewalk::recurrence::{eval_recurrence, eval_system, CoupledSystemSpec};
use tilewalk::walk::{brute_v, brute_w_by_line, OracleConfig};
use tilewalk::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    Brute,
    Recurrence,
    Closed,
    All,
}

impl Route {
    pub const SINGLE: [Route; 3] = [Route::Brute, Route::Recurrence, Route::Closed];

    pub fn name(self) -> &'static str {
        match self {
            Route::Brute => "brute",
            Route::Recurrence => "recurrence",
            Route::Closed => "closed",
            Route::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqName {
    V,
    W,
    WDomino,
    R,
    A,
    C,
    D,
    R1,
    WByLine,
    Fib,
}

impl SeqName {
    pub const ALL: [&'static str; 10] = ["v", "w", "w-domino", "r", "a", "c", "d", "r1", "w-by-line", "fib"];
}

#[derive(Debug)]
pub struct UnknownSequence(pub String);

impl fmt::Display for UnknownSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown sequence {:?}; expected one of {}", self.0, SeqName::ALL.join(", "))
    }
}

impl std::error::Error for UnknownSequence {}

impl FromStr for SeqName {
    type Err = UnknownSequence;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "v" => SeqName::V,
            "w" => SeqName::W,
            "w-domino" => SeqName::WDomino,
            "r" => SeqName::R,
            "a" => SeqName::A,
            "c" => SeqName::C,
            "d" => SeqName::D,
            "r1" => SeqName::R1,
            "w-by-line" => SeqName::WByLine,
            "fib" => SeqName::Fib,
            _ => return Err(UnknownSequence(s.to_string())),
        })
    }
}

/// A route's output: one or more named columns over `n = 0..=upto`.
pub type Columns = Vec<(String, Vec<BigInt>)>;

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn upto_each<E: fmt::Display>(upto: usize, f: impl Fn(usize) -> Result<BigInt, E>) -> Result<Vec<BigInt>, String> {
    (0..=upto).map(|n| f(n).map_err(err)).collect()
}

fn system_members(spec: &CoupledSystemSpec, names: &[&str], upto: usize) -> Result<Columns, String> {
    let t = eval_system(spec, upto).map_err(err)?;
    names
        .iter()
        .map(|&m| {
            let mut v = t.get(m).ok_or_else(|| format!("system has no member {m}"))?.values().to_vec();
            v.truncate(upto + 1);
            Ok((m.to_string(), v))
        })
        .collect()
}

fn single(name: &str, v: Result<Vec<BigInt>, String>) -> Result<Columns, String> {
    Ok(vec![(name.to_string(), v?)])
}

/// Computes `seq` by one route, or `None` when the route does not exist
/// for that sequence.
pub fn compute(seq: SeqName, route: Route, upto: usize, cfg: &OracleConfig) -> Option<Result<Columns, String>> {
    use Route::*;
    use SeqName::*;
    let w_brute = |squares: bool| {
        upto_each(upto, |n| brute_w_by_line(n, squares, cfg).map(|w| w.w2.unwrap_or_default()))
    };
    let partial = |kind: PartialKind| {
        upto_each(upto, |n| {
            cfg.budget.check(count_tilings(Board::two_by(n))).map_err(err)?;
            enumerate_partial_tilings(Board::two_by(n), kind).map(|v| BigInt::from(v.len())).map_err(err)
        })
    };
    Some(match (seq, route) {
        (V, Brute) => single("v", upto_each(upto, |n| brute_v(n, &cfg.budget))),
        (V, Recurrence) => {
            single("v", eval_recurrence(&v_closed_recurrences().polynomial, upto).map(|t| t.into_values()).map_err(err))
        }
        (V, Closed) => single("v", upto_each(upto, v_fibonacci_form)),

        (W, Brute) => single("w", w_brute(true)),
        (W, Recurrence) => single("w", eval_recurrence(&w_ninth_order_recurrence(), upto).map(|t| t.into_values()).map_err(err)),

        (WDomino, Brute) => single("w-domino", w_brute(false)),
        (WDomino, Recurrence) => {
            system_members(&domino_only_system(), &["r2"], upto).map(|mut c| { c[0].0 = "w-domino".into(); c })
        }
        (WDomino, Closed) => single("w-domino", upto_each(upto, w_domino_fibonacci_form)),

        (R, Brute) => single("r", upto_each(upto, |n| {
            let b = Board::two_by(n);
            cfg.budget.check(count_tilings(b)).map(|_| count_tilings_with(b, TileSet::SquaresAndDominoes))
        })),
        (R, Recurrence) => system_members(&tiling_system(), &["r"], upto),
        (A, Brute) => single("a", partial(PartialKind::A)),
        (A, Recurrence) => system_members(&tiling_system(), &["a"], upto),
        (C, Brute) => single("c", partial(PartialKind::C)),
        (C, Recurrence) => system_members(&tiling_system(), &["c"], upto),
        (D, Brute) => single("d", partial(PartialKind::D)),
        (D, Recurrence) => system_members(&tiling_system(), &["d"], upto),

        (R1, Brute) => single("r1", upto_each(upto, |n| brute_w_by_line(n, true, cfg).map(|w| w.w1))),
        (R1, Recurrence) => system_members(&walk_system(), &["r1"], upto),

        (WByLine, Brute) => (|| {
            let rows = upto_each(upto, |n| brute_w_by_line(n, true, cfg).map(|w| w.w0))?;
            let mut w1 = Vec::new();
            let mut w2 = Vec::new();
            for n in 0..=upto {
                let w = brute_w_by_line(n, true, cfg).map_err(err)?;
                w1.push(w.w1);
                w2.push(w.w2.unwrap_or_default());
            }
            Ok(vec![("w0".to_string(), rows), ("w1".to_string(), w1), ("w2".to_string(), w2)])
        })(),
        (WByLine, Recurrence) => system_members(&walk_system(), &["r", "r1", "r2"], upto).map(|mut c| {
            for (col, name) in c.iter_mut().zip(["w0", "w1", "w2"]) {
                col.0 = name.to_string();
            }
            c
        }),

        // F(n) counts tilings of 1 x (n-1); F(0) = 0 has no board.
        (Fib, Brute) => single("fib", upto_each(upto, |n| match n {
            0 => Ok(BigInt::from(0)),
            _ => {
                let b = Board::one_by(n - 1);
                cfg.budget.check(count_tilings(b)).map(|_| count_tilings(b))
            }
        })),
        (Fib, Recurrence) => single("fib", eval_recurrence(&fibonacci_recurrence(), upto).map(|t| t.into_values()).map_err(err)),
        (Fib, Closed) => single("fib", Ok((0..=upto as u64).map(fibonacci).collect())),

        (_, All) => unreachable!("route=all is expanded by the caller"),
        _ => return None,
    })
}
