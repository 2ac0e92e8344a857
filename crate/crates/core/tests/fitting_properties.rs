//! Property tests for classical and matrix-ring Fitting ideals.

use fitkernel::arith::rational::{q, Rational};
use fitkernel::comm_fitting::{annihilator_ideal, fitting_ideal, minors_ideal, CommRing, Presentation};
use fitkernel::matrix_ring::{fit_matrix_ring, flatten, full_module_presentation, MatRingElem, MatRingPresentation};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-10i64..=10, cols), rows)
}

fn presentation() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(a, b)| matrix(a, b))
}

fn ring() -> impl Strategy<Value = CommRing> {
    prop_oneof![
        Just(CommRing::Integers),
        (2u64..=12).prop_map(CommRing::IntegersMod),
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(CommRing::LocalizedIntegers),
    ]
}

fn rat(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn pres(ring: CommRing, rows: &[Vec<i64>]) -> Presentation {
    Presentation::from_ints(ring, rows).unwrap()
}

/// `U·h` for the unimodular `U` adding `c` times row `j` to row `i`.
fn row_op(rows: &[Vec<i64>], i: usize, j: usize, c: i64) -> Vec<Vec<i64>> {
    let mut out = rows.to_vec();
    if i != j {
        for k in 0..out[i].len() {
            out[i][k] += c * rows[j][k];
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_matches_minors(ring in ring(), rows in presentation()) {
        let p = pres(ring, &rows);
        prop_assert_eq!(fitting_ideal(&p), minors_ideal(&p));
    }

    #[test]
    fn fitting_ideal_annihilates(ring in ring(), rows in presentation()) {
        let p = pres(ring, &rows);
        prop_assert!(annihilator_ideal(&p).contains_ideal(&fitting_ideal(&p)).unwrap());
    }

    #[test]
    fn invariant_under_row_and_column_operations(rows in presentation(), i in 0usize..4, j in 0usize..4, c in -5i64..=5) {
        let a = rows.len();
        let moved = row_op(&rows, i % a, j % a, c);
        let before = fitting_ideal(&pres(CommRing::Integers, &rows));
        prop_assert_eq!(fitting_ideal(&pres(CommRing::Integers, &moved)), before.clone());
        let transposed: Vec<Vec<i64>> = (0..rows[0].len()).map(|k| rows.iter().map(|r| r[k]).collect()).collect();
        let b = transposed.len();
        let col_moved = row_op(&transposed, i % b, j % b, c);
        let back: Vec<Vec<i64>> = (0..a).map(|r| col_moved.iter().map(|col| col[r]).collect()).collect();
        prop_assert_eq!(fitting_ideal(&pres(CommRing::Integers, &back)), before);
    }

    #[test]
    fn zero_relations_do_not_change_the_ideal(rows in presentation()) {
        // An extra zero relation presents the same module.
        let mut more = rows.clone();
        more.push(vec![0; rows[0].len()]);
        prop_assert_eq!(fitting_ideal(&pres(CommRing::Integers, &more)), fitting_ideal(&pres(CommRing::Integers, &rows)));
    }

    #[test]
    fn matrix_ring_fit_is_morita_invariant(n in 1usize..=3, a in 1usize..=2, b in 1usize..=2, seed in prop::collection::vec(-10i64..=10, 36)) {
        let mut it = seed.iter().cycle();
        let blocks: Vec<Vec<MatRingElem>> = (0..a)
            .map(|_| {
                (0..b)
                    .map(|_| {
                        let e: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| *it.next().unwrap()).collect()).collect();
                        MatRingElem::new(CommRing::Integers, rat(&e)).unwrap()
                    })
                    .collect()
            })
            .collect();
        let mp = MatRingPresentation::new(blocks).unwrap();
        let fit = fit_matrix_ring(&mp);
        prop_assert_eq!(fitting_ideal(&full_module_presentation(&mp)), fit.pow(n as u32));
        prop_assert!(annihilator_ideal(&flatten(&mp)).contains_ideal(&fit).unwrap());
    }
}
