mod common;

use std::collections::BTreeMap;

use common::{corpus, random_profile, rng};
use hodgewitt::catalog::{self, K3Height};
use hodgewitt::hodge_witt::{
    apply_ekedahl_equality, check_betti_parity, check_hodge_witt_symmetry, check_mazur_ogus,
    hodge_witt_numbers, hodge_witt_numbers_from,
};
use hodgewitt::slope::slope_number_table;
use hodgewitt::{
    verify_main_theorem, CheckId, DominoTable, Dominoes, Error, HodgeTable, NumberTable, Rational, Verdict,
    VerificationReport,
};
use proptest::prelude::*;

/// Entrywise correction written out term by term over a plain map.
fn correction_oracle(t: &BTreeMap<(i64, i64), i64>, i: i64, j: i64) -> i64 {
    let at = |a: i64, b: i64| t.get(&(a, b)).copied().unwrap_or(0);
    at(i, j) - 2 * at(i - 1, j + 1) + at(i - 2, j + 2)
}

fn arb_dominoes(max_degree: usize) -> impl Strategy<Value = BTreeMap<(i64, i64), i64>> {
    prop::collection::btree_map((0i64..=max_degree as i64, 0i64..=max_degree as i64), 0i64..4, 0..6)
        .prop_map(move |m| m.into_iter().filter(|((i, j), _)| i + j <= max_degree as i64).collect())
}

fn table_of(t: &BTreeMap<(i64, i64), i64>) -> DominoTable {
    DominoTable::from_entries(t.iter().map(|(&(i, j), &v)| ((i as usize, j as usize), v as u64)))
}

fn diff(a: &NumberTable, b: &NumberTable) -> NumberTable {
    NumberTable::from_rows(
        a.rows().map(|(n, row)| (n, row.iter().zip(b.row(n).unwrap()).map(|(x, y)| x - y).collect())),
    )
}

proptest! {
    #[test]
    fn matches_termwise_oracle(seed in any::<u64>(), t in arb_dominoes(8)) {
        let p = random_profile(&mut rng(seed), 0, false);
        let m = slope_number_table(&p);
        let hw = hodge_witt_numbers_from(&m, &table_of(&t));
        for (n, row) in m.rows() {
            for (i, v) in row.iter().enumerate() {
                let expected = v + &Rational::from_integer(correction_oracle(&t, i as i64, (n - i) as i64));
                prop_assert_eq!(hw.get(i as i64, (n - i) as i64), expected);
            }
        }
    }

    #[test]
    fn linear_in_dominoes(seed in any::<u64>(), a in arb_dominoes(8), b in arb_dominoes(8)) {
        let p = random_profile(&mut rng(seed), 0, false);
        let m = slope_number_table(&p);
        let mut sum = a.clone();
        for (k, v) in &b {
            *sum.entry(*k).or_insert(0) += v;
        }
        let da = diff(&hodge_witt_numbers_from(&m, &table_of(&a)), &m);
        let db = diff(&hodge_witt_numbers_from(&m, &table_of(&b)), &m);
        let ds = diff(&hodge_witt_numbers_from(&m, &table_of(&sum)), &m);
        for (n, row) in ds.rows() {
            for (i, v) in row.iter().enumerate() {
                prop_assert_eq!(v, &(&da.row(n).unwrap()[i] + &db.row(n).unwrap()[i]));
            }
        }
    }

    #[test]
    fn zero_dominoes_leave_slope_numbers(seed in any::<u64>()) {
        let p = random_profile(&mut rng(seed), 0, false);
        let m = slope_number_table(&p);
        let hw = hodge_witt_numbers(&m, &Dominoes::known_zero()).unwrap();
        prop_assert_eq!(&hw, &m);
        prop_assert!(check_hodge_witt_symmetry(&hw));
    }

    #[test]
    fn row_sum_boundary_term(seed in any::<u64>(), t in arb_dominoes(8)) {
        let p = random_profile(&mut rng(seed), 0, false);
        let m = slope_number_table(&p);
        let hw = hodge_witt_numbers_from(&m, &table_of(&t));
        let at = |a: i64, b: i64| t.get(&(a, b)).copied().unwrap_or(0);
        for n in m.degrees() {
            let n_i = n as i64;
            let boundary = Rational::from_integer(at(n_i, 0) - at(n_i - 1, 1));
            prop_assert_eq!(&hw.row_sum(n) - &m.row_sum(n), boundary);
            // over the whole lattice line i + j = n the corrections cancel
            let full: i64 = (-2..=n_i + 2).map(|i| correction_oracle(&t, i, n_i - i)).sum();
            prop_assert_eq!(full, 0);
        }
    }

    #[test]
    fn report_json_round_trips(seed in any::<u64>(), hodge in any::<bool>()) {
        let p = random_profile(&mut rng(seed), 0, hodge);
        let report = verify_main_theorem(&p);
        let back: VerificationReport = serde_json::from_str(&report.to_json()).unwrap();
        prop_assert_eq!(back, report);
    }
}

#[test]
fn unknown_dominoes_are_an_error() {
    let p = catalog::elliptic_curve(catalog::EllipticKind::Ordinary);
    let m = slope_number_table(&p);
    assert!(matches!(hodge_witt_numbers(&m, &Dominoes::Unknown), Err(Error::DominoesUnknown)));
}

#[test]
fn negative_witness() {
    let m = NumberTable::from_integer_rows(vec![(3, vec![0, 0, 5, 0])]);
    let t = DominoTable::from_entries(vec![((1, 2), 3)]);
    let hw = hodge_witt_numbers_from(&m, &t);
    assert_eq!(hw.get(2, 1), Rational::from_integer(-1));
}

#[test]
fn supersingular_k3_ekedahl() {
    let p = catalog::k3(K3Height::Supersingular).unwrap();
    let m = slope_number_table(&p);
    assert_eq!(m.row(2).unwrap(), &[0, 22, 0].map(Rational::from_integer));
    let hw = hodge_witt_numbers(&m, &p.dominoes).unwrap();
    assert_eq!(hw.row(2).unwrap(), &[1, 20, 1].map(Rational::from_integer));
    assert!(check_hodge_witt_symmetry(&hw));
    let prediction = apply_ekedahl_equality(&p).unwrap();
    assert_eq!(prediction.disagreements().count(), 0);
    assert_eq!(verify_main_theorem(&p).verdict(CheckId::EkedahlEquality), Some(Verdict::Pass));
}

#[test]
fn mazur_ogus_failure_has_evidence() {
    let mut p = catalog::k3(K3Height::Finite(2)).unwrap();
    let mut h = p.hodge.clone().unwrap();
    h.set_row(2, vec![1, 19, 1]);
    p.hodge = Some(h);
    assert!(!check_mazur_ogus(&p).holds());
    let report = verify_main_theorem(&p);
    let mo = report.check(CheckId::MazurOgus).unwrap();
    assert_eq!(mo.verdict, Verdict::Fail);
    assert_eq!(mo.evidence.len(), 1);
    assert_eq!(mo.evidence[0].degree, Some(2));
    assert!(mo.evidence[0].detail.contains("22") && mo.evidence[0].detail.contains("21"));
}

#[test]
fn corpus_parity_and_synthetic_hodge_pass() {
    for p in corpus(200, 7) {
        assert!(check_betti_parity(&p).iter().all(|c| c.holds()), "{}", p.name);
        let report = verify_main_theorem(&p);
        let expected = if p.hodge.is_some() { Verdict::Pass } else { Verdict::Skipped };
        assert_eq!(report.overall, expected, "{}\n{}", p.name, report.to_text());
    }
}

#[test]
fn asymmetric_hodge_row_fails_with_pairs() {
    let mut p = catalog::curve(2, 2).unwrap();
    let mut h = p.hodge.clone().unwrap();
    h.set_row(1, vec![3, 1]);
    p.hodge = Some(h);
    let report = verify_main_theorem(&p);
    assert_eq!(report.overall, Verdict::Fail);
    let hs = report.check(CheckId::HodgeSymmetry).unwrap();
    assert_eq!(hs.verdict, Verdict::Fail);
    assert!(hs.evidence.iter().any(|e| e.i == Some(0) && e.j == Some(1)), "{:?}", hs.evidence);
}

#[test]
fn toggling_a_hypothesis_never_passes() {
    for entry in catalog::standard_entries() {
        let base = verify_main_theorem(&entry.profile);
        if base.overall != Verdict::Pass {
            continue;
        }
        for k in 0..4 {
            let mut p = entry.profile.clone();
            match k {
                0 => p.flags.hodge_witt = Some(false),
                1 => p.flags.hodge_witt = None,
                2 => p.flags.crystalline_torsion_free = false,
                _ => p.flags.hodge_de_rham_degenerates = false,
            }
            let report = verify_main_theorem(&p);
            assert_ne!(report.overall, Verdict::Pass, "{} toggle {k}", entry.id);
            assert_eq!(report.verdict(CheckId::HodgeSymmetry), Some(Verdict::Skipped), "{} toggle {k}", entry.id);
            for c in report.checks.iter().filter(|c| c.verdict == Verdict::Skipped) {
                assert!(!c.reason.is_empty());
            }
        }
    }
}

#[test]
fn hodge_table_helpers() {
    let h = HodgeTable::from_rows(vec![(1, vec![2, 1])]);
    assert!(!hodgewitt::hodge_witt::check_hodge_symmetry(&h));
    assert_eq!(hodgewitt::hodge_witt::hodge_asymmetries(&h), vec![(0, 1, 2, 1)]);
}
