use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use tilewalk::closed_form::QSqrt5;
use tilewalk::grid::{count_tilings, enumerate_tilings, enumerate_tilings_with, Board, TileSet};
use tilewalk::oeis::{compare_prefix, BFile};
use tilewalk::recurrence::sequences::{walk_identities, walk_system};
use tilewalk::recurrence::{check_identity, eval_system, LinearForm, SequenceTable};
use tilewalk::walk::{brute_w_by_line, count_walks_for_tiling, Budget, OracleConfig};

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tilings_cover_board_exactly(rows in 1u8..=2, n in 0usize..=8) {
        let board = Board::new(rows, n).unwrap();
        for t in enumerate_tilings(board) {
            let mut cells: Vec<_> = t.tiles().iter().flat_map(|p| p.cells()).collect();
            cells.sort();
            let mut want: Vec<_> = board.cells().collect();
            want.sort();
            prop_assert_eq!(cells, want);
            prop_assert_eq!(t.forbidden_edges().len(), t.domino_count());
        }
    }

    #[test]
    fn walk_count_bounded_by_monotone_paths(n in 0usize..=7, pick in any::<prop::sample::Index>()) {
        let tilings = enumerate_tilings(Board::two_by(n));
        let t = pick.get(&tilings);
        let w = count_walks_for_tiling(t, 2).unwrap();
        let all = binomial(n + 2, 2);
        prop_assert!(w <= all);
        prop_assert_eq!(w == all, t.domino_count() == 0);
    }

    #[test]
    fn tiling_order_does_not_matter(n in 0usize..=7, seed in prop::collection::vec(any::<u32>(), 1..64)) {
        let tilings = enumerate_tilings(Board::two_by(n));
        let mut order: Vec<usize> = (0..tilings.len()).collect();
        // Deterministic shuffle driven by the generated words.
        let len = order.len();
        for (i, w) in seed.iter().enumerate().take(len) {
            order.swap(i, *w as usize % len);
        }
        let forward: BigInt = tilings.iter().map(|t| count_walks_for_tiling(t, 2).unwrap()).sum();
        let shuffled: BigInt = order.iter().map(|&i| count_walks_for_tiling(&tilings[i], 2).unwrap()).sum();
        prop_assert_eq!(forward, shuffled);
    }

    #[test]
    fn shards_do_not_change_counts(n in 0usize..=9, shards in 1usize..=6, squares in any::<bool>()) {
        let one = brute_w_by_line(n, squares, &OracleConfig { budget: Budget::default(), shards: 1 }).unwrap();
        let many = brute_w_by_line(n, squares, &OracleConfig { budget: Budget::default(), shards }).unwrap();
        prop_assert_eq!(one, many);
    }

    #[test]
    fn oracle_matches_system(n in 0usize..=9) {
        let w = brute_w_by_line(n, true, &OracleConfig::default()).unwrap();
        let t = eval_system(&walk_system(), n).unwrap();
        prop_assert_eq!(w.w0, count_tilings(Board::two_by(n)));
        prop_assert_eq!(&w.w1, &t.get("r1").unwrap().values()[n]);
        prop_assert_eq!(w.w2.as_ref().unwrap(), &t.get("r2").unwrap().values()[n]);
    }

    #[test]
    fn linear_form_display_round_trips(
        terms in prop::collection::vec((-20i64..=20, 0usize..3, -6isize..=3), 1..6)
    ) {
        let names = ["r", "c2", "d1"];
        let mut f = LinearForm::default();
        for (c, m, o) in terms {
            if c != 0 {
                f = f.term(c, names[m], o);
            }
        }
        prop_assume!(!f.terms.is_empty());
        prop_assert_eq!(LinearForm::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn perturbed_tables_break_an_identity(member in 0usize..12, n in 4usize..=18, delta in 1i64..5) {
        let names = ["r", "a", "c", "d", "r2", "r1", "a2", "a1", "c2", "c1", "d2", "d1"];
        let tables = eval_system(&walk_system(), 21).unwrap();
        let name = names[member];
        let old = tables.get(name).unwrap().values()[n].clone();
        let bumped = tables.with_value(name, n, old + delta);
        let broken = walk_identities()
            .iter()
            .map(|id| check_identity(id, &bumped, 20).unwrap())
            .any(|c| c.first_failure.is_some());
        // a, d, a2, a1, d2, d1 never appear in the identities.
        prop_assert_eq!(broken, ["r", "c", "r2", "r1", "c2", "c1"].contains(&name));
    }

    #[test]
    fn compare_prefix_ignores_common_shift(k in 0i64..20, s in -3i64..=3, bad in prop::option::of(0usize..30)) {
        let values: Vec<BigInt> = (0..30).map(|i| BigInt::from(i * i + 1)).collect();
        let mut seq = values.clone();
        if let Some(b) = bad {
            seq[b] += 1;
        }
        let table = SequenceTable::new("x", seq);
        let entries = |start: i64| values.iter().enumerate().map(|(i, v)| (i as i64 + start, v.clone())).collect();
        let base = BFile { sequence_id: "A1".into(), entries: entries(s), comments: vec![] };
        let moved = BFile { sequence_id: "A1".into(), entries: entries(s + k), comments: vec![] };
        let a = compare_prefix(&table, &base, s).unwrap();
        let b = compare_prefix(&table, &moved, s + k).unwrap();
        prop_assert_eq!((a.matched, a.first_mismatch, a.overlap), (b.matched, b.first_mismatch, b.overlap));
        prop_assert_eq!(a.first_mismatch, bad);
    }

    #[test]
    fn qsqrt5_pow_is_repeated_product(a in -5i64..=5, b in -5i64..=5, e in 0u64..12) {
        let x = QSqrt5::from_ints(a, b);
        let slow = (0..e).fold(QSqrt5::one(), |acc, _| &acc * &x);
        prop_assert_eq!(x.pow(e), slow);
    }
}

#[test]
fn enumeration_is_deterministic() {
    for n in 0..=8 {
        let b = Board::two_by(n);
        assert_eq!(enumerate_tilings(b), enumerate_tilings(b));
        assert_eq!(
            enumerate_tilings_with(b, TileSet::DominoesOnly).len(),
            enumerate_tilings_with(Board::one_by(n), TileSet::SquaresAndDominoes).len()
        );
    }
}

#[test]
fn aggregation_identity_for_single_row() {
    for n in 0..=20usize {
        let want: BigInt = (0..=n / 2).map(|k| binomial(n - k, k) * (n - k + 1)).sum();
        assert_eq!(tilewalk::walk::brute_v(n, &Budget::default()).unwrap(), want, "n = {n}");
    }
}

#[test]
fn identity_map_lookup() {
    let mut m = BTreeMap::new();
    m.insert("f".to_string(), vec![BigInt::zero(), BigInt::from(1), BigInt::from(1)]);
    let id = tilewalk::recurrence::Identity::parse("f", "f[n] = f[n-1] + f[n-2]").unwrap();
    assert!(check_identity(&id, &m, 2).unwrap().passed());
}
