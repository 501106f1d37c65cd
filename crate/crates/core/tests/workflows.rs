use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use ncomplex::cohomology::{block_cohomology, cocycle_from_two_form, hexagon_check, solve_preimage};
use ncomplex::fields::{n_diff, n_diff_power, star_field, PolyTensorField};
use ncomplex::gauge::{stress_potential, GaugeField, GaugeRole};
use ncomplex::json::{field_from_json, field_to_json, multiform_from_json, multiform_to_json};
use ncomplex::multiforms::{d_i, embed, project_pi};
use ncomplex::probe::Probe;
use ncomplex::{Error, Variance};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

#[test]
fn json_field_survives_differential_pipeline() {
    let f = PolyTensorField::random(3, 2, 1, 3, Variance::Co, &mut Probe::new(11)).unwrap();
    let text = serde_json::to_string(&field_to_json(&f)).unwrap();
    let g = field_from_json(&text).unwrap();
    assert_eq!(f, g);
    let d2 = n_diff_power(&g, 2);
    let back = field_from_json(&serde_json::to_string(&field_to_json(&d2)).unwrap()).unwrap();
    assert_eq!(back, n_diff(&n_diff(&f)));
    assert!(n_diff(&back).is_zero());
}

#[test]
fn preimages_exist_in_well_filled_degrees() {
    let mut probe = Probe::new(5);
    for (n, dim) in [(3, 2), (3, 3), (4, 2)] {
        for k in 1..n {
            let j = n - k;
            let p = n - 1;
            if p < j {
                continue;
            }
            let alpha = PolyTensorField::random(n, dim, p - j, 2, Variance::Co, &mut probe).unwrap();
            let f = n_diff_power(&alpha, j);
            let a = solve_preimage(&f, k).unwrap();
            assert_eq!(n_diff_power(&a, j), f, "N={n} D={dim} k={k}");
        }
    }
}

#[test]
fn cocycles_outside_well_filled_degrees_can_be_nontrivial() {
    // linear forms land in q = 0, where H^3_(1) vanishes; quadratic ones need not
    let mut linear = PolyTensorField::zero(2, 3, 2, 1, Variance::Co).unwrap();
    linear.set_entry(&[0, 1], &[0, 0, 1], int(1)).unwrap();
    let r = cocycle_from_two_form(&linear).unwrap();
    assert!(r.closed && r.trivial);
    assert_eq!(block_cohomology(3, 3, 3, 1, 0).unwrap().dim_h, 0);

    let mut quadratic = PolyTensorField::zero(2, 3, 2, 2, Variance::Co).unwrap();
    quadratic.set_entry(&[0, 1], &[0, 0, 2], int(1)).unwrap();
    let r = cocycle_from_two_form(&quadratic).unwrap();
    assert!(r.closed && !r.t.is_zero() && !r.trivial);
    assert!(block_cohomology(3, 3, 3, 1, 1).unwrap().dim_h > 0);
}

#[test]
fn hexagon_is_vacuous_for_two_complexes() {
    assert!(hexagon_check(2, 3, 1, 1, 2).unwrap().nodes.is_empty());
    assert!(hexagon_check(3, 2, 1, 2, 2).is_err());
}

#[test]
fn multiform_json_and_projection() {
    let f = PolyTensorField::random(3, 2, 2, 1, Variance::Co, &mut Probe::new(3)).unwrap();
    let w = embed(&f).unwrap();
    let text = serde_json::to_string(&multiform_to_json(&w)).unwrap();
    assert_eq!(multiform_from_json(&text).unwrap(), w);
    assert_eq!(project_pi(&w).unwrap(), f);
    assert!(d_i(2, &d_i(2, &w).unwrap()).unwrap().is_zero());
}

#[test]
fn zero_stress_has_zero_potential() {
    let t = PolyTensorField::zero(3, 3, 2, 1, Variance::Contra).unwrap();
    let s = stress_potential(&t).unwrap();
    assert!(s.r.is_zero());
    assert!(s.residual_zero);
}

#[test]
fn gauge_fields_are_tagged_by_degree() {
    let h = PolyTensorField::zero(3, 2, 2, 0, Variance::Co).unwrap();
    assert!(GaugeField::new(GaugeRole::Metric, h.clone()).is_ok());
    assert!(matches!(GaugeField::new(GaugeRole::Vector, h), Err(Error::ShapeMismatch(_))));
}

#[test]
fn malformed_documents_name_the_offending_entry() {
    let text = r#"{"N":3,"dim":2,"degree":2,"poly_degree":0,"variance":"co",
        "entries":[{"idx":[1,2],"exp":[0,0],"num":"1"}]}"#;
    match field_from_json(text) {
        Err(Error::Malformed { location, .. }) => assert_eq!(location, "entries"),
        other => panic!("{other:?}"),
    }
    let text = text.replace("\"num\":\"1\"", "\"num\":\"1\",\"den\":\"0\"");
    match field_from_json(&text) {
        Err(Error::Malformed { location, .. }) => assert_eq!(location, "entries[0].den"),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_is_nilpotent_of_order_n(seed in any::<u64>(), n in 2usize..=4, dim in 1usize..=3, q in 0usize..=3) {
        let mut probe = Probe::new(seed);
        let p = probe.index((n - 1) * dim + 1);
        let f = PolyTensorField::random(n, dim, p, q, Variance::Co, &mut probe).unwrap();
        prop_assert!(n_diff_power(&f, n).is_zero());
    }

    #[test]
    fn d_is_linear(seed in any::<u64>(), c in -5i64..=5) {
        let mut probe = Probe::new(seed);
        let a = PolyTensorField::random(3, 2, 1, 2, Variance::Co, &mut probe).unwrap();
        let b = PolyTensorField::random(3, 2, 1, 2, Variance::Co, &mut probe).unwrap();
        let lhs = n_diff(&a.scaled(&int(c)).add(&b).unwrap());
        let rhs = n_diff(&a).scaled(&int(c)).add(&n_diff(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_preserves_nonzero(seed in any::<u64>(), p in 0usize..=4) {
        let f = PolyTensorField::random(3, 2, p, 1, Variance::Co, &mut Probe::new(seed)).unwrap();
        prop_assert_eq!(star_field(&f).unwrap().is_zero(), f.is_zero());
        prop_assert!(f.scaled(&BigRational::zero()).is_zero());
        prop_assert_eq!(f.scaled(&BigRational::one()), f);
    }
}
