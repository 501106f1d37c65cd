use super::*;
use crate::diagrams::binomial;
use crate::tensor::rational;

fn vecr(xs: &[i64]) -> Vec<BigRational> {
    xs.iter().map(|&x| rational(x)).collect()
}

#[test]
fn unit_times_vector_is_vector() {
    let u = Element::unit(3, 3).unwrap();
    let v = act(&u, &[vecr(&[1, -2, 5])]).unwrap();
    assert_eq!(v.degree, 1);
    let t = v.to_tensor().unwrap();
    assert_eq!(t.get(&[0]), rational(1));
    assert_eq!(t.get(&[1]), rational(-2));
    assert_eq!(t.get(&[2]), rational(5));
}

#[test]
fn exterior_case() {
    // N = 2: e_0 e_1 = e_0 ∧ e_1 with the normalized antisymmetrizer
    let u = Element::unit(2, 2).unwrap();
    let w = act(&u, &[vecr(&[1, 0]), vecr(&[0, 1])]).unwrap().to_tensor().unwrap();
    assert_eq!(w.get(&[0, 1]), crate::tensor::ratio(1, 2));
    assert_eq!(w.get(&[1, 0]), crate::tensor::ratio(-1, 2));
    assert!(act(&u, &[vecr(&[1, 1]), vecr(&[1, 1])]).unwrap().is_zero());
    for len in 0..=4 {
        assert_eq!(kernel_dim(2, 3, len).unwrap(), 3usize.pow(len as u32) - binomial(3, len) as usize);
    }
}

#[test]
fn unit_acts_faithfully() {
    for (n, dim) in [(2, 2), (3, 2), (4, 3)] {
        assert_eq!(kernel_dim(n, dim, 0).unwrap(), 0);
        assert_eq!(kernel_dim(n, dim, 1).unwrap(), 0);
    }
}

#[test]
fn kernel_dimensions_three_complex() {
    // degree 4 acts only on the unit, landing in the one-dimensional E^(2,2): 16 - 1
    let k: Vec<usize> = (0..=5).map(|len| kernel_dim(3, 2, len).unwrap()).collect();
    assert_eq!(k, vec![0, 0, 0, 4, 15, 32]);
}

#[test]
fn repeated_letter() {
    let mut probe = Probe::new(3);
    for (n, dim) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
        assert!(repeated_letter_vanishes(n, dim, n, 3, &mut probe).unwrap());
        assert!(repeated_letter_vanishes(n, dim, n + 1, 3, &mut probe).unwrap());
    }
    assert!(repeated_letter_vanishes(3, 2, 2, 1, &mut probe).is_err());
}

#[test]
fn square_does_not_vanish_for_three_complex() {
    let u = Element::unit(3, 2).unwrap();
    assert!(!act(&u, &[vecr(&[1, 2]), vecr(&[1, 2])]).unwrap().is_zero());
    assert!(act(&u, &[vecr(&[1, 2]), vecr(&[1, 2]), vecr(&[1, 2])]).unwrap().is_zero());
}

#[test]
fn symmetric_power() {
    for n in 2..=4 {
        for dim in 1..=3 {
            assert!(symmetric_power_vanishes(n, dim).unwrap(), "N={n} D={dim}");
        }
    }
}

#[test]
fn three_complex_relations() {
    assert!(three_relations_vanish(2));
    assert!(three_relations_vanish(3));
}

#[test]
fn relation_ideal_is_the_kernel() {
    for len in 0..=4 {
        let (d, inside) = three_relation_ideal(3, len);
        assert!(inside);
        assert_eq!(d, kernel_dim(3, 3, len).unwrap(), "degree {len}");
    }
}

#[test]
fn two_dimensional_top_degree_has_an_extra_relation() {
    for len in 0..=3 {
        assert_eq!(three_relation_ideal(2, len).0, kernel_dim(3, 2, len).unwrap());
    }
    assert_eq!(three_relation_ideal(2, 4), (14, true));
    assert_eq!(kernel_dim(3, 2, 4).unwrap(), 15);
}

#[test]
fn unit_is_cyclic() {
    for (n, dim) in [(3, 2), (3, 3), (4, 2)] {
        for len in 0..=(n - 1) * dim {
            let shape = Diagram::max_diagram(n, len).unwrap();
            assert_eq!(cyclic_rank(n, dim, len).unwrap(), shape.schur_dim(dim) as usize);
        }
    }
}

#[test]
fn action_is_associative() {
    let mut probe = Probe::new(5);
    let u = Element::unit(3, 3).unwrap();
    let words: Vec<Vec<BigRational>> = (0..4).map(|_| probe.vector(3).into_iter().map(rational).collect()).collect();
    let t = act(&u, &words[..1]).unwrap();
    let lhs = act(&act(&t, &words[1..2]).unwrap(), &words[2..]).unwrap();
    assert_eq!(lhs, act(&t, &words[1..]).unwrap());
}

#[test]
fn product_is_not_associative() {
    // the graded product differs from iterated right multiplication in general
    let u = Element::unit(3, 2).unwrap();
    let a = act(&u, &[vecr(&[1, 0])]).unwrap();
    let ab = act(&a, &[vecr(&[0, 1])]).unwrap();
    assert!(!ab.is_zero());
}

#[test]
fn report_passes() {
    let r = relation_checks(3, 2, 3, 1).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.rows.len(), 4);
    assert!(!relation_checks(3, 2, 4, 1).unwrap().passed());
    assert!(relation_checks(4, 2, 3, 1).unwrap().passed());
}

#[test]
fn element_round_trip() {
    let u = Element::unit(3, 2).unwrap();
    let e = act(&u, &[vecr(&[1, 1]), vecr(&[0, 1])]).unwrap();
    assert_eq!(Element::from_tensor(3, &e.to_tensor().unwrap()).unwrap(), e);
    let mut bad = Tensor::zero(2, 2, Variance::Contra);
    bad.set(&[0, 1], rational(1)).unwrap();
    assert!(Element::from_tensor(3, &bad).is_err());
}

