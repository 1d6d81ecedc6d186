use std::collections::BTreeSet;

use proptest::prelude::*;

use semitrans_core::checker::{check_split_rows_with, FullRowOrder};
use semitrans_core::ist::{empirical_ist, zero_invariance, Branch, Empirical, IstVerdict};
use semitrans_core::{
    check_iteration, check_split, check_split_set, classify_ist, iterate, patterns_at, semi_transitive_oracle, split_graph, Budget,
    MorphismTriple, RleRow, Trit, TritMatrix,
};

fn m(rows: &[&[i64]]) -> TritMatrix {
    TritMatrix::from_values(rows).unwrap()
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = TritMatrix> {
    prop::collection::vec(prop::sample::select(Trit::ALL.to_vec()), rows * cols)
        .prop_map(move |cells| TritMatrix::from_cells(rows, cols, cells).unwrap())
}

fn triple_of(rows: usize, cols: usize) -> impl Strategy<Value = MorphismTriple> {
    (matrix(rows, cols), matrix(rows, cols), matrix(rows, cols), 0..rows * cols).prop_map(move |(mut a, b, c, z)| {
        // force a 0 into A
        a.set(z / cols + 1, z % cols + 1, Trit::Zero);
        MorphismTriple::new(a, b, c).unwrap()
    })
}

fn small_triple() -> impl Strategy<Value = MorphismTriple> {
    prop_oneof![triple_of(2, 2), triple_of(2, 3), triple_of(3, 2), triple_of(1, 3)]
}

fn all_2x2() -> Vec<TritMatrix> {
    (0..81).map(|i| TritMatrix::from_index(2, 2, i).unwrap()).collect()
}

/// Bottommost, then leftmost zero of A.
fn chain_zero(a: &TritMatrix) -> (usize, usize) {
    (1..=a.rows()).rev().flat_map(|i| (1..=a.cols()).map(move |j| (i, j))).find(|&(i, j)| a.get(i, j) == Trit::Zero).unwrap()
}

#[test]
fn set_and_dense_agree_exhaustively_on_2x2_triples() {
    let all = all_2x2();
    for a in &all {
        for b in &all {
            for c in &all {
                let t = MorphismTriple::new(a.clone(), b.clone(), c.clone()).unwrap();
                let mut level = BTreeSet::from([RleRow::constant(Trit::Zero, 1)]);
                let mut dense = TritMatrix::zeros(1, 1).unwrap();
                for _ in 1..=3 {
                    level = semitrans_core::pattern_step(&level, &t);
                    dense = semitrans_core::substitute(&dense, &t);
                    assert_eq!(level, dense.row_set(), "{t}");
                }
            }
        }
    }
}

#[test]
fn row_multiplicity_and_fold_order_do_not_matter() {
    for (rows, cols) in [(2, 3), (3, 3), (3, 2)] {
        for idx in 0..3u64.pow((rows * cols) as u32) {
            let mat = TritMatrix::from_index(rows, cols, idx).unwrap();
            let base = check_split(&mat).is_semi_transitive();
            let bottom_up = check_split_rows_with(&mat.rle_rows(), cols, FullRowOrder::BottomUp);
            assert_eq!(bottom_up.is_semi_transitive(), base, "{mat}");
            assert_eq!(check_split_set(&mat.row_set()).is_semi_transitive(), base, "{mat}");
        }
    }
}

#[test]
fn infinite_2x2_triples_satisfy_the_necessary_conditions() {
    let all = all_2x2();
    let has_two = |r: &RleRow, t: Trit| r.count(t) >= 2;
    for a in all.iter().filter(|a| a.contains(Trit::Zero)) {
        for b in &all {
            for c in &all {
                let t = MorphismTriple::new(a.clone(), b.clone(), c.clone()).unwrap();
                let r = classify_ist(&t).unwrap();
                let IstVerdict::Infinite(_) = r.verdict else { continue };
                match r.branch {
                    Branch::ABNotLayered => assert!(c.is_all(Trit::Neg), "{t}"),
                    Branch::ACNotLayered => assert!(b.is_all(Trit::Pos), "{t}"),
                    _ => {}
                }
                if !b.is_layered() && !c.is_layered() {
                    assert!(a.is_all(Trit::Zero), "{t}");
                }
                for k in 1..=5 {
                    for p in patterns_at(&t, k, Budget::default()).unwrap() {
                        assert!(a.is_layered() || !has_two(&p, Trit::Zero), "{t}");
                        assert!(b.is_layered() || !has_two(&p, Trit::Pos), "{t}");
                        assert!(c.is_layered() || !has_two(&p, Trit::Neg), "{t}");
                    }
                }
            }
        }
    }
}

#[test]
fn forbidden_row_pairs_are_finite() {
    let cases = [
        (m(&[&[0, 1, 1], &[1, 1, 0]]), 3),
        (m(&[&[0, -1, -1], &[-1, -1, 0]]), 3),
        (m(&[&[0, 1, 1, 1], &[1, 1, 1, 0]]), 4),
        (m(&[&[0, -1, -1, -1], &[-1, -1, -1, 0]]), 4),
        (m(&[&[0, 1, 1], &[-1, -1, 0]]), 3),
    ];
    let mut checked = 0;
    for (a, n) in cases {
        for (b, c) in [(Trit::Pos, Trit::Neg), (Trit::Neg, Trit::Pos), (Trit::Pos, Trit::Pos), (Trit::Neg, Trit::Neg)] {
            let t = MorphismTriple::new(a.clone(), TritMatrix::filled(2, n, b).unwrap(), TritMatrix::filled(2, n, c).unwrap()).unwrap();
            let r = classify_ist(&t).unwrap();
            if r.branch != Branch::ANotLayered {
                continue;
            }
            assert_eq!(r.verdict, IstVerdict::Finite, "{t}");
            assert!(matches!(empirical_ist(&t, 5).unwrap(), Empirical::Index(k) if k <= 5), "{t}");
            checked += 1;
        }
    }
    assert!(checked >= 10, "{checked}");
}

#[test]
fn left_invariant_without_guard_row_never_produces_it() {
    let n = 3;
    let rows = [
        RleRow::from_runs([(Trit::Zero, 1), (Trit::Pos, n - 1)]),
        RleRow::constant(Trit::Pos, n),
        RleRow::from_runs([(Trit::Zero, 1), (Trit::Neg, n - 1)]),
        RleRow::constant(Trit::Neg, n),
    ];
    let dense = |r: &RleRow| r.to_dense();
    let mut seen = 0;
    for a0 in &rows {
        for a1 in &rows {
            for mask in 0..16u32 {
                let sign = |bit: u32| if mask >> bit & 1 == 1 { RleRow::constant(Trit::Pos, n) } else { RleRow::constant(Trit::Neg, n) };
                let a = TritMatrix::from_rows(vec![dense(a0), dense(a1)]).unwrap();
                let b = TritMatrix::from_rows(vec![dense(&sign(0)), dense(&sign(1))]).unwrap();
                let c = TritMatrix::from_rows(vec![dense(&sign(2)), dense(&sign(3))]).unwrap();
                let t = MorphismTriple::new(a, b, c).unwrap();
                if !t.a_has_zero() || !zero_invariance(&t).0 {
                    continue;
                }
                let allowed = |len: usize| {
                    [
                        RleRow::from_runs([(Trit::Zero, 1), (Trit::Pos, len - 1)]),
                        RleRow::constant(Trit::Pos, len),
                        RleRow::from_runs([(Trit::Zero, 1), (Trit::Neg, len - 1)]),
                        RleRow::constant(Trit::Neg, len),
                    ]
                };
                let guard_absent = !t.a().row_set().contains(&rows[0]);
                for k in 1..=6u32 {
                    let len = n.pow(k);
                    let pats = patterns_at(&t, k, Budget::default()).unwrap();
                    let ok = allowed(len);
                    assert!(pats.iter().all(|p| ok.contains(p)), "{t}");
                    if guard_absent {
                        assert!(!pats.contains(&ok[0]), "{t}");
                    }
                }
                assert_eq!(empirical_ist(&t, 6).unwrap(), Empirical::PassedUpTo(6), "{t}");
                seen += 1;
            }
        }
    }
    assert!(seen > 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn iterate_nests_at_the_chain_zero(t in small_triple()) {
        let (i, j) = chain_zero(t.a());
        for k in 0..=2u32 {
            let small = iterate(&t, k, Budget::default()).unwrap();
            let big = iterate(&t, k + 1, Budget::default()).unwrap();
            let (h, w) = (small.rows(), small.cols());
            for r in 1..=h {
                for c in 1..=w {
                    prop_assert_eq!(big.get((i - 1) * h + r, (j - 1) * w + c), small.get(r, c));
                }
            }
        }
    }

    #[test]
    fn failure_is_monotone(t in small_triple()) {
        let mut failed = false;
        for k in 1..=5 {
            let st = check_iteration(&t, k, Budget::default()).unwrap().is_semi_transitive();
            prop_assert!(!(failed && st));
            failed = !st;
        }
    }

    #[test]
    fn every_triple_hits_one_branch(t in small_triple()) {
        let r = classify_ist(&t).unwrap();
        prop_assert!(Branch::ALL.contains(&r.branch));
        let e = empirical_ist(&t, 4).unwrap();
        // finite verdicts must already fail by k = 4 at these shapes
        if r.verdict == IstVerdict::Finite {
            prop_assert!(matches!(e, Empirical::Index(_)), "{}", t);
        } else {
            prop_assert_eq!(e, Empirical::PassedUpTo(4));
        }
    }

    #[test]
    fn check_split_matches_oracle(mat in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let fast = check_split(&mat);
        let slow = semi_transitive_oracle(&split_graph(&mat)).unwrap();
        prop_assert_eq!(fast.is_semi_transitive(), slow.is_semi_transitive(), "{}", mat);
    }

    #[test]
    fn zero_free_a_is_rejected(b in matrix(2, 2), c in matrix(2, 2), cells in prop::collection::vec(prop::sample::select(vec![Trit::Neg, Trit::Pos]), 4)) {
        let a = TritMatrix::from_cells(2, 2, cells).unwrap();
        let t = MorphismTriple::new(a, b, c).unwrap();
        prop_assert!(classify_ist(&t).is_err());
        prop_assert!(empirical_ist(&t, 3).is_err());
    }
}
