mod common;

use common::wedge_oracle;
use hodgewitt::catalog::{self, EllipticKind, K3Height, STANDARD_IDS};
use hodgewitt::model::validate_profile;
use hodgewitt::schema::{parse_profile, profile_to_json};
use hodgewitt::{CohomologyProfile, Error, Rational, SlopeMultiset};
use proptest::prelude::*;

fn poincare(p: &CohomologyProfile) -> Vec<u64> {
    (0..=2 * p.dim).map(|n| p.betti_number(n).unwrap()).collect()
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn same_slopes(a: &CohomologyProfile, b: &CohomologyProfile) -> bool {
    a.dim == b.dim && (0..=2 * a.dim).all(|n| a.slopes_in(n) == b.slopes_in(n))
}

fn power(base: &CohomologyProfile, g: usize) -> CohomologyProfile {
    (1..g).fold(base.clone(), |acc, _| catalog::kunneth_product(&acc, base))
}

#[test]
fn every_standard_entry_is_valid_and_round_trips() {
    assert!(STANDARD_IDS.len() >= 7);
    for entry in catalog::standard_entries() {
        assert!(validate_profile(&entry.profile).is_empty(), "{}", entry.id);
        let text = profile_to_json(&entry.profile);
        assert_eq!(parse_profile(&text).unwrap(), entry.profile, "{}", entry.id);
    }
}

#[test]
fn wedge_power_matches_subset_enumeration() {
    let h1 = catalog::abelian_variety(3, 1).unwrap().slopes_in(1);
    for n in 0..=6 {
        let expected = SlopeMultiset::new(wedge_oracle(h1.entries(), n));
        assert_eq!(catalog::wedge_power(&h1, n).unwrap(), expected, "n={n}");
    }
}

#[test]
fn elliptic_powers_match_abelian_varieties() {
    let ord = catalog::elliptic_curve(EllipticKind::Ordinary);
    let ss = catalog::elliptic_curve(EllipticKind::Supersingular);
    for g in 2..=3u32 {
        let av = catalog::abelian_variety(g, g).unwrap();
        let prod = power(&ord, g as usize);
        assert!(same_slopes(&av, &prod), "g={g}");
        assert_eq!(av.hodge, prod.hodge, "g={g}");
        assert_eq!(prod.flags.hodge_witt, Some(true));

        let av0 = catalog::abelian_variety(g, 0).unwrap();
        let ss_power = power(&ss, g as usize);
        assert!(same_slopes(&av0, &ss_power), "supersingular g={g}");
    }
}

#[test]
fn product_with_point_is_identity() {
    let pt = catalog::point();
    for entry in catalog::standard_entries() {
        let prod = catalog::kunneth_product(&entry.profile, &pt);
        assert!(same_slopes(&prod, &entry.profile), "{}", entry.id);
        assert_eq!(prod.hodge, entry.profile.hodge, "{}", entry.id);
    }
}

#[test]
fn point_times_supersingular_k3_is_not_claimed_hodge_witt() {
    let ss = catalog::k3(K3Height::Supersingular).unwrap();
    let prod = catalog::kunneth_product(&catalog::point(), &ss);
    assert_ne!(prod.flags.hodge_witt, Some(true));
}

#[test]
fn out_of_range_parameters() {
    assert!(catalog::k3(K3Height::Finite(0)).is_err());
    assert!(catalog::k3(K3Height::Finite(12)).is_err());
    assert!(catalog::abelian_variety(2, 3).is_err());
    assert!(catalog::curve(1, 2).is_err());
    assert_eq!(catalog::curve(0, 0).unwrap().betti_number(1).unwrap(), 0);
    match catalog::generate("k3:h=99") {
        Err(Error::ParameterRange(_)) | Err(Error::UnknownCatalogId { .. }) => {}
        other => panic!("{other:?}"),
    }
    match catalog::generate("elliptic:ordinar") {
        Err(Error::UnknownCatalogId { suggestion, .. }) => {
            assert_eq!(suggestion.as_deref(), Some("elliptic:ordinary"))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn abelian_middle_slope_numbers_are_hodge_numbers_when_hodge_witt() {
    for (g, f) in [(2, 2), (2, 1), (3, 3), (3, 2)] {
        let av = catalog::abelian_variety(g, f).unwrap();
        let m = hodgewitt::slope::slope_number_table(&av);
        let h = av.hodge.as_ref().unwrap();
        for (n, row) in m.rows() {
            for (i, v) in row.iter().enumerate() {
                assert_eq!(v, &Rational::from(h.get(i, n - i)), "g={g} f={f} ({i},{})", n - i);
            }
        }
    }
}

fn arb_id() -> impl Strategy<Value = &'static str> {
    prop::sample::select(STANDARD_IDS.iter().copied().filter(|id| !id.starts_with("product")).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn betti_numbers_multiply(a in arb_id(), b in arb_id()) {
        let x = catalog::generate(a).unwrap().profile;
        let y = catalog::generate(b).unwrap().profile;
        let prod = catalog::kunneth_product(&x, &y);
        prop_assert_eq!(poincare(&prod), convolve(&poincare(&x), &poincare(&y)));
    }

    #[test]
    fn product_is_commutative(a in arb_id(), b in arb_id()) {
        let x = catalog::generate(a).unwrap().profile;
        let y = catalog::generate(b).unwrap().profile;
        let xy = catalog::kunneth_product(&x, &y);
        let yx = catalog::kunneth_product(&y, &x);
        prop_assert!(same_slopes(&xy, &yx));
        prop_assert_eq!(xy.hodge, yx.hodge);
        prop_assert_eq!(xy.flags, yx.flags);
    }

    #[test]
    fn product_is_associative(a in arb_id(), b in arb_id(), c in arb_id()) {
        let (x, y, z) = (
            catalog::generate(a).unwrap().profile,
            catalog::generate(b).unwrap().profile,
            catalog::generate(c).unwrap().profile,
        );
        prop_assume!(x.dim + y.dim + z.dim <= 6);
        let left = catalog::kunneth_product(&catalog::kunneth_product(&x, &y), &z);
        let right = catalog::kunneth_product(&x, &catalog::kunneth_product(&y, &z));
        prop_assert!(same_slopes(&left, &right));
        prop_assert_eq!(left.hodge, right.hodge);
    }
}
