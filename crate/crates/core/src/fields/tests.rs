use num_rational::BigRational;
use num_traits::Zero;

use super::*;
use crate::tensor::{rational, ratio};

fn field(n: usize, dim: usize, p: usize, q: usize, v: Variance, entries: &[(&[u8], &[u32], i64)]) -> PolyTensorField {
    let mut f = PolyTensorField::zero(n, dim, p, q, v).unwrap();
    for (i, e, x) in entries {
        f.add_entry(i, e, &rational(*x)).unwrap();
    }
    f
}

fn basis_fields(n: usize, dim: usize, p: usize, q: usize, v: Variance) -> Vec<PolyTensorField> {
    block::block_basis(n, dim, p, q)
        .iter()
        .map(|b| PolyTensorField::from_int(n, dim, p, q, v, &BigRational::from_integer(1.into()), b))
        .collect()
}

#[test]
fn exterior_derivative_of_one_form() {
    // N = 2: d(x¹ dx²) = dx¹ ∧ dx², whose (0,1) component is 1/2 under the normalized projector
    let f = field(2, 2, 1, 1, Variance::Co, &[(&[1], &[1, 0], 1)]);
    let df = n_diff(&f);
    assert_eq!(df.degree, 2);
    assert_eq!(df.poly_degree, 0);
    assert_eq!(df.get(&[0, 1], &[0, 0]), ratio(1, 2));
    assert_eq!(df.get(&[1, 0], &[0, 0]), ratio(-1, 2));
}

#[test]
fn gradient_of_scalar() {
    let f = field(3, 2, 0, 2, Variance::Co, &[(&[], &[1, 1], 1)]);
    let df = n_diff(&f);
    assert_eq!(df.get(&[0], &[0, 1]), rational(1));
    assert_eq!(df.get(&[1], &[1, 0]), rational(1));
    let nf = nabla(&f);
    assert_eq!(nf.get(&[0], &[0, 1]), rational(1));
}

#[test]
fn nabla_places_derivative_in_added_cell() {
    // N = 3, p = 2: shape (2) grows to (2,1); the new cell is the second entry of column 0
    let f = field(3, 2, 2, 1, Variance::Co, &[(&[0, 1], &[1, 0], 1)]);
    let nf = nabla(&f);
    assert_eq!(nf.get(&[0, 0, 1], &[0, 0]), rational(1));
    assert!(nf.get(&[0, 1, 0], &[0, 0]).is_zero());
}

#[test]
fn n_fold_differential_vanishes() {
    for (n, dim) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
        let top = (n - 1) * dim;
        for p in 0..top.min(4) {
            for b in basis_fields(n, dim, p, n, Variance::Co) {
                assert!(n_diff_power(&b, n).is_zero(), "N={n} D={dim} p={p}");
            }
        }
    }
}

#[test]
fn differential_output_is_in_schur_module() {
    for p in 0..4 {
        for b in basis_fields(3, 3, p, 2, Variance::Co) {
            let df = n_diff(&b);
            assert!(df.is_in_schur_module());
            assert_eq!((df.degree, df.poly_degree), (p + 1, 1));
        }
    }
}

#[test]
fn codifferential_projection_is_identity_on_full_rows() {
    // when the last row is full, removing its last entry stays inside the Schur module
    for (n, dim, deg) in [(3, 2, 2), (3, 3, 4), (4, 2, 3)] {
        for b in basis_fields(n, dim, deg, 1, Variance::Contra) {
            let out = delta(&b).unwrap();
            assert!(out.is_in_schur_module());
        }
    }
}

#[test]
fn codifferential_rejects_covariant_input() {
    let f = field(2, 2, 1, 1, Variance::Co, &[(&[1], &[1, 0], 1)]);
    assert!(matches!(delta(&f), Err(Error::VarianceMismatch(_))));
}

#[test]
fn star_round_trip() {
    for p in 0..=4 {
        for b in basis_fields(3, 2, p, 1, Variance::Co) {
            let s = star_field(&b).unwrap();
            assert_eq!(star_field_inverse(&s).unwrap(), b);
        }
    }
}

#[test]
fn codifferential_is_conjugate_differential() {
    for (n, dim) in [(2, 2), (2, 3), (3, 2)] {
        let cs = star_relation_constants(n, dim).unwrap();
        assert_eq!(cs.len(), (n - 1) * dim);
        assert!(cs.iter().all(|c| !c.is_zero()));
    }
}

#[test]
fn codifferential_constants_are_pinned() {
    let show = |n, dim| star_relation_constants(n, dim).unwrap().iter().map(ToString::to_string).collect::<Vec<_>>();
    assert_eq!(show(3, 2), ["-1", "3/4", "-1", "1"]);
    assert_eq!(show(3, 3), ["-1", "2/3", "-1", "3/4", "-1", "1"]);
    assert_eq!(show(4, 2), ["-1", "3/4", "-2/3", "1", "-1", "1"]);
}

#[test]
fn product_with_scalar_is_scaling() {
    let a = field(3, 2, 0, 1, Variance::Co, &[(&[], &[1, 0], 1)]);
    let b = field(3, 2, 2, 0, Variance::Co, &[(&[0, 1], &[0, 0], 2), (&[1, 0], &[0, 0], 2)]);
    assert!(b.is_in_schur_module());
    let ab = field_product(&a, &b).unwrap();
    assert_eq!(ab.get(&[0, 1], &[1, 0]), rational(2));
    assert!(ab.is_in_schur_module());
}

#[test]
fn product_past_top_degree_vanishes() {
    let a = field(2, 2, 2, 0, Variance::Co, &[(&[0, 1], &[0, 0], 1)]);
    let b = field(2, 2, 1, 0, Variance::Co, &[(&[0], &[0, 0], 1)]);
    assert!(field_product(&a, &b).unwrap().is_zero());
}

#[test]
fn canonical_storage_folds_column_order() {
    let mut f = PolyTensorField::zero(2, 3, 2, 0, Variance::Co).unwrap();
    f.set_entry(&[2, 0], &[0, 0, 0], rational(5)).unwrap();
    assert_eq!(f.get(&[0, 2], &[0, 0, 0]), rational(-5));
    assert!(f.set_entry(&[1, 1], &[0, 0, 0], rational(1)).is_err());
}
