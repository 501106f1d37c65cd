use super::*;
use crate::tensor::{rational, ratio};

fn field(n: usize, dim: usize, p: usize, q: usize, v: Variance, entries: &[(&[u8], &[u32], i64)]) -> PolyTensorField {
    let mut f = PolyTensorField::zero(n, dim, p, q, v).unwrap();
    for (i, e, x) in entries {
        f.add_entry(i, e, &rational(*x)).unwrap();
    }
    f
}

#[test]
fn d1_is_symmetrized_gradient() {
    // X = x¹x² dx², D = 2
    let x = GaugeField::new(GaugeRole::Vector, field(3, 2, 1, 2, Variance::Co, &[(&[1], &[1, 1], 1)])).unwrap();
    let h = spin2_d1(&x).unwrap();
    assert_eq!(h.role, GaugeRole::Metric);
    assert_eq!(h.field.get(&[0, 1], &[0, 1]), rational(1));
    assert_eq!(h.field.get(&[1, 1], &[1, 0]), rational(2));
    assert!(h.field.is_in_schur_module());
}

#[test]
fn pure_gauge_has_no_curvature() {
    let x = GaugeField::new(GaugeRole::Vector, field(3, 3, 1, 1, Variance::Co, &[(&[0], &[0, 1, 0], 2), (&[2], &[1, 0, 0], -1)])).unwrap();
    assert!(spin2_d2(&spin2_d1(&x).unwrap()).unwrap().field.is_zero());
}

#[test]
fn curvature_of_two_dimensional_metric() {
    // h_00 = (x_1)², D = 2: the only independent component is R_01,01 = ∂_1∂_1 h_00
    let h = GaugeField::new(GaugeRole::Metric, field(3, 2, 2, 2, Variance::Co, &[(&[0, 0], &[0, 2], 1)])).unwrap();
    let r = spin2_d2(&h).unwrap().field;
    assert!(r.is_in_schur_module());
    assert_eq!(r.nnz(), 1);
    assert_eq!(r.get(&[0, 1, 0, 1], &[0, 0]), rational(2));
    assert_eq!(r.get(&[1, 0, 0, 1], &[0, 0]), rational(-2));
    assert!(spin2_d3(&spin2_d2(&h).unwrap()).unwrap().field.is_zero());
}

#[test]
fn literal_operators_form_a_complex() {
    assert!(spin2_complex_check(2, 1).unwrap());
    assert!(spin2_complex_check(3, 1).unwrap());
}

#[test]
fn d1_against_differential() {
    // dX = -𝐘_(2)(∇X) = -(∂_μX_ν + ∂_νX_μ)/2
    assert_eq!(spin2_constants(2).unwrap().d1, "-2");
    let c = spin2_constants(3).unwrap();
    assert_eq!(c.d1, "-2");
    assert!(c.d3.is_some());
    assert!(spin2_constants(2).unwrap().d3.is_none());
}

#[test]
fn spin2_constants_are_pinned() {
    let c = spin2_constants(3).unwrap();
    assert_eq!(c.d2, "-3");
    assert_eq!(c.d3.as_deref(), Some("2"));
    assert_eq!(spin2_constants(2).unwrap().d2, "-3");
}

#[test]
fn role_and_shape_checks() {
    let x = field(3, 2, 1, 1, Variance::Co, &[]);
    assert!(GaugeField::new(GaugeRole::Metric, x.clone()).is_err());
    let g = GaugeField::new(GaugeRole::Vector, x).unwrap();
    assert!(spin2_d2(&g).is_err());
    assert!(GaugeField::new(GaugeRole::Vector, field(2, 2, 1, 1, Variance::Co, &[])).is_err());
}

#[test]
fn spin_one_curvature_is_field_strength() {
    let a = field(2, 3, 1, 1, Variance::Co, &[(&[1], &[1, 0, 0], 1)]);
    let f = spin_s_curvature(1, &a).unwrap();
    assert_eq!(f, n_diff(&a));
    assert_eq!(f.get(&[0, 1], &[0, 0, 0]), ratio(1, 2));
}

#[test]
fn spin_two_curvature_matches_literal_operator() {
    let h = field(3, 3, 2, 3, Variance::Co, &[(&[0, 1], &[1, 1, 1], 1), (&[2, 2], &[3, 0, 0], 1), (&[1, 0], &[1, 1, 1], 1)]);
    let lit = spin2_d2(&GaugeField::new(GaugeRole::Metric, h.clone()).unwrap()).unwrap().field;
    let c = lit.ratio_to(&spin_s_curvature(2, &h).unwrap()).unwrap();
    assert_eq!(c, rational(-3));
}

#[test]
fn spin_s_bianchi_and_gauge_invariance() {
    for s in 1..=3 {
        let n = s + 1;
        for b in block::block_basis(n, 2, s - 1, s + 2).iter() {
            let chi = PolyTensorField::from_int(n, 2, s - 1, s + 2, Variance::Co, &BigRational::one(), b);
            assert!(spin_s_curvature(s, &n_diff(&chi)).unwrap().is_zero());
        }
        for b in block::block_basis(n, 2, s, s + 1).iter() {
            let phi = PolyTensorField::from_int(n, 2, s, s + 1, Variance::Co, &BigRational::one(), b);
            assert!(n_diff(&spin_s_curvature(s, &phi).unwrap()).is_zero());
        }
    }
    assert!(spin_s_curvature(2, &field(3, 2, 1, 1, Variance::Co, &[])).is_err());
}

#[test]
fn spin_two_sequence_is_exact() {
    for dim in [2, 3] {
        for row in sequence_exactness(2, dim, 3).unwrap() {
            assert_eq!((row.h_potential, row.h_curvature), (0, 0), "D={dim} {row:?}");
        }
    }
}

#[test]
fn spin_three_sequence_is_exact() {
    for row in sequence_exactness(3, 2, 3).unwrap() {
        assert_eq!((row.h_potential, row.h_curvature), (0, 0), "{row:?}");
    }
}

#[test]
fn tau_round_trip_and_closedness() {
    for dim in [2, 3] {
        for t in divergence_free_basis(dim, 1).unwrap() {
            let tau = tau_of(&t).unwrap();
            assert!(tau.is_in_schur_module());
            assert!(n_diff(&tau).is_zero());
            assert_eq!(stress_of_tau(&tau).unwrap(), t);
        }
        // a field with nonzero divergence gives dτ ≠ 0
        let t = field(3, dim, 2, 1, Variance::Contra, &[(&[0, 0], &[1, 0, 0][..dim], 1)]);
        assert!(!divergence(&t).is_empty());
        assert!(!n_diff(&tau_of(&t).unwrap()).is_zero());
    }
}

#[test]
fn divergence_free_dimensions() {
    // q = 0: every constant symmetric tensor; D = 2, q = 1: 6 linear fields, 2 independent constant equations
    assert_eq!(divergence_free_basis(3, 0).unwrap().len(), 6);
    assert_eq!(divergence_free_basis(2, 1).unwrap().len(), 4);
}

#[test]
fn stress_potential_of_zero() {
    let t = field(3, 3, 2, 1, Variance::Contra, &[]);
    let s = stress_potential(&t).unwrap();
    assert!(s.r.is_zero());
    assert!(s.residual_zero);
}

#[test]
fn stress_potential_of_constant() {
    let t = field(3, 3, 2, 0, Variance::Contra, &[(&[0, 1], &[0, 0, 0], 1), (&[1, 0], &[0, 0, 0], 1), (&[2, 2], &[0, 0, 0], 3)]);
    let s = stress_potential(&t).unwrap();
    assert!(s.residual_zero);
    assert_eq!(s.r.poly_degree, 2);
    assert_eq!(double_divergence(&s.r).unwrap(), t);
}

#[test]
fn stress_potential_two_dimensions() {
    let t = field(3, 2, 2, 0, Variance::Contra, &[(&[0, 0], &[0, 0], 1)]);
    let s = stress_potential(&t).unwrap();
    assert!(s.residual_zero);
    assert_eq!(s.rho.degree, 0);
}

#[test]
fn stress_potential_random_inputs() {
    let mut probe = Probe::new(11);
    for q in 0..=2 {
        for _ in 0..3 {
            let t = random_divergence_free(3, q, &mut probe).unwrap();
            let s = stress_potential(&t).unwrap();
            assert!(s.residual_zero);
        }
    }
}

#[test]
fn stress_potential_rejects_divergence() {
    let t = field(3, 3, 2, 1, Variance::Contra, &[(&[0, 0], &[1, 0, 0], 1)]);
    assert!(matches!(stress_potential(&t), Err(Error::Precondition(_))));
    let t1 = field(3, 1, 2, 0, Variance::Contra, &[]);
    assert!(stress_potential(&t1).is_err());
    let co = field(3, 3, 2, 0, Variance::Co, &[]);
    assert!(stress_potential(&co).is_err());
}

#[test]
fn stress_constants_are_pinned() {
    // D = 2: τ = d²ρ = -∂∂ρ and ∂∂(εερ) = ε ε ∂∂ρ, so κ = -1
    assert_eq!(stress_constant(2).unwrap().to_string(), "-1");
    assert_eq!(stress_constant(3).unwrap().to_string(), "-1/3");
    assert!(stress_constant(1).is_err());
}
