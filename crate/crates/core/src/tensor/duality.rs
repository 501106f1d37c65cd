//! Full contraction of shaped tensors, the volume tensor ε and the duality ∗.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{coords::shape_coords, rational, Tensor, Variance};
use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::linalg::{IVec, QVec};
use crate::memo::Memo;
use crate::perm::{all_permutations, sign};

/// The contravariant volume tensor with `ε^{1…D} = 1`.
pub fn epsilon(dim: usize) -> Tensor {
    let shape = Diagram::from_columns(&[dim]).expect("single column");
    let mut t = Tensor::zero(dim, dim, Variance::Contra).with_shape(shape);
    for p in all_permutations(dim) {
        let idx: Vec<u8> = p.iter().map(|&x| x as u8).collect();
        t.set(&idx, rational(sign(&p))).expect("valid index");
    }
    t
}

/// `ε^{⊗k}`, shaped as `k` columns of length `D`.
pub fn epsilon_power(dim: usize, k: usize) -> Tensor {
    let shape = Diagram::from_columns(&vec![dim; k]).expect("rectangle");
    let eps = epsilon(dim);
    let mut out = Tensor::scalar(dim, BigRational::from_integer(1.into()), Variance::Contra);
    for _ in 0..k {
        out = out.tensor_product(&eps).expect("same dimension and variance");
    }
    out.with_shape(shape)
}

/// Position pairs `(position in Y, position in Y')` that are contracted, and the kept
/// positions of `Y` in column-reading order.
fn contraction_plan(y: &Diagram, yp: &Diagram) -> (Vec<(usize, usize)>, Vec<usize>) {
    let cols = y.columns();
    let pcols = yp.columns();
    let c = cols.len();
    let starts: Vec<usize> = cols.iter().scan(0, |acc, &l| {
        let s = *acc;
        *acc += l;
        Some(s)
    }).collect();
    let mut pairs = Vec::new();
    let mut ppos = 0;
    for (i, &len) in pcols.iter().enumerate() {
        let ci = c - 1 - i;
        for j in 0..len {
            // the j-th entry of column i of Y' meets the (m̃ - j)-th entry of its partner column
            pairs.push((starts[ci] + cols[ci] - 1 - j, ppos));
            ppos += 1;
        }
    }
    let contracted: std::collections::HashSet<usize> = pairs.iter().map(|(a, _)| *a).collect();
    let kept = (0..y.size()).filter(|k| !contracted.contains(k)).collect();
    (pairs, kept)
}

/// `C(T|T')`: contracts every column of the covariant `T'` into the rightmost columns
/// of the contravariant `T`.
pub fn contract_tensor(t: &Tensor, tp: &Tensor) -> Result<Tensor> {
    let y = t.shape.clone().ok_or_else(|| Error::ShapeMismatch("left tensor has no shape tag".into()))?;
    let yp = tp.shape.clone().ok_or_else(|| Error::ShapeMismatch("right tensor has no shape tag".into()))?;
    if t.dim != tp.dim {
        return Err(Error::DimensionMismatch { expected: t.dim, found: tp.dim });
    }
    if t.variance == tp.variance {
        return Err(Error::VarianceMismatch("contraction needs one contravariant and one covariant tensor".into()));
    }
    let out_shape = y.contract_shape(&yp)?;
    let (pairs, kept) = contraction_plan(&y, &yp);
    let mut out = Tensor::zero(t.dim, out_shape.size(), t.variance).with_shape(out_shape);
    let mut key = vec![0u8; pairs.len()];
    let mut rest = vec![0u8; kept.len()];
    for (idx, x) in t.entries() {
        for &(a, b) in &pairs {
            key[b] = idx[a];
        }
        let y = tp.get(&key);
        if y.is_zero() {
            continue;
        }
        for (k, &a) in kept.iter().enumerate() {
            rest[k] = idx[a];
        }
        out.add_to(&rest, &(x * y));
    }
    Ok(out)
}

fn check_sequence_shape(n: usize, t: &Tensor) -> Result<Diagram> {
    let expected = Diagram::max_diagram(n, t.degree)?;
    match &t.shape {
        Some(s) if *s != expected => {
            Err(Error::ShapeMismatch(format!("shape {s} is not the row-filled shape {expected}")))
        }
        _ => Ok(expected),
    }
}

/// `∗ω = C(ε^{⊗(N-1)} | ω)` for covariant `ω` of row-filled shape.
pub fn dual_star(n: usize, omega: &Tensor) -> Result<Tensor> {
    let shape = check_sequence_shape(n, omega)?;
    let top = (n - 1) * omega.dim;
    if omega.degree > top {
        return Err(Error::DegreeOutOfRange { degree: omega.degree, max: top });
    }
    if omega.variance != Variance::Co {
        return Err(Error::VarianceMismatch("duality acts on covariant tensors".into()));
    }
    let omega = omega.clone().with_shape(shape);
    contract_tensor(&epsilon_power(omega.dim, n - 1), &omega)
}

static STAR: Memo<(usize, usize, usize), Vec<IVec>> = Memo::new();

/// Columns of ∗ on column-strict coordinates: entry `j` is `∗` of the coordinate tensor
/// `e_j` of degree `p`, written in the coordinates of degree `(N-1)D - p`.
pub fn star_matrix(n: usize, dim: usize, p: usize) -> Arc<Vec<IVec>> {
    STAR.get_or_build(&(n, dim, p), || {
        let shape = Diagram::max_diagram(n, p).expect("order checked by caller");
        let dual = Diagram::max_diagram(n, (n - 1) * dim - p).expect("order checked by caller");
        let eps = epsilon_power(dim, n - 1);
        let sc = shape_coords(&shape, dim);
        let (pairs, kept) = contraction_plan(eps.shape.as_ref().expect("shaped"), &shape);
        let dc = shape_coords(&dual, dim);
        // group ε entries by contracted key so each column is a lookup
        let mut by_key: HashMap<Vec<u8>, Vec<(Vec<u8>, i64)>> = HashMap::new();
        for (idx, x) in eps.entries() {
            let mut key = vec![0u8; pairs.len()];
            for &(a, b) in &pairs {
                key[b] = idx[a];
            }
            let rest: Vec<u8> = kept.iter().map(|&a| idx[a]).collect();
            let v: i64 = if *x > BigRational::zero() { 1 } else { -1 };
            by_key.entry(key).or_default().push((rest, v));
        }
        (0..sc.len())
            .map(|j| {
                let mut acc: QVec = QVec::new();
                for (t, s) in sc.expand(j) {
                    if let Some(list) = by_key.get(&t) {
                        for (rest, v) in list {
                            if let Some(id) = dc.id(rest) {
                                *acc.entry(id).or_insert_with(BigRational::zero) += rational(s * v);
                            }
                        }
                    }
                }
                acc.into_iter()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x.to_integer()))
                    .collect::<Vec<(usize, BigInt)>>()
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::super::{satisfies_schur_conditions, schur_basis, young_project};
    use super::*;
    use crate::linalg;

    fn d(rows: &[usize]) -> Diagram {
        Diagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn epsilon_against_covector() {
        let eps = epsilon(2);
        let mut dx1 = Tensor::zero(2, 1, Variance::Co).with_shape(d(&[1]));
        dx1.set(&[0], rational(1)).unwrap();
        let v = contract_tensor(&eps, &dx1).unwrap();
        assert_eq!(v.get(&[0]), rational(0));
        assert_eq!(v.get(&[1]), rational(-1));
    }

    #[test]
    fn empty_contraction_is_identity() {
        let eps = epsilon(3);
        let s = Tensor::scalar(3, rational(1), Variance::Co);
        assert_eq!(contract_tensor(&eps, &s).unwrap(), eps);
    }

    #[test]
    fn contraction_lands_in_contracted_shape() {
        // T in E^(2,2), T' the antisymmetrization of a product of two covectors
        let mut raw = Tensor::zero(3, 4, Variance::Contra);
        raw.set(&[0, 1, 1, 2], rational(1)).unwrap();
        raw.set(&[2, 0, 1, 1], rational(3)).unwrap();
        raw.set(&[1, 2, 0, 2], rational(-2)).unwrap();
        let t = young_project(&d(&[2, 2]), &raw).unwrap();
        let mut a = Tensor::zero(3, 1, Variance::Co);
        a.set(&[0], rational(1)).unwrap();
        a.set(&[2], rational(2)).unwrap();
        let mut b = Tensor::zero(3, 1, Variance::Co);
        b.set(&[1], rational(1)).unwrap();
        b.set(&[2], rational(-1)).unwrap();
        let tp = young_project(&d(&[1, 1]), &a.tensor_product(&b).unwrap()).unwrap();
        let c = contract_tensor(&t, &tp).unwrap();
        assert_eq!(c.shape, Some(d(&[1, 1])));
        assert!(!c.is_zero());
        assert!(satisfies_schur_conditions(&d(&[1, 1]), &c));
        // a symmetric T' removes one cell from each column instead
        let sp = young_project(&d(&[2]), &a.tensor_product(&b).unwrap()).unwrap();
        let c2 = contract_tensor(&t, &sp).unwrap();
        assert_eq!(c2.shape, Some(d(&[2])));
        assert!(!c2.is_zero());
        assert!(satisfies_schur_conditions(&d(&[2]), &c2));
    }

    #[test]
    fn scalar_dualizes_to_epsilon_power() {
        let one = Tensor::scalar(2, rational(1), Variance::Co);
        assert_eq!(dual_star(3, &one).unwrap(), epsilon_power(2, 2));
    }

    #[test]
    fn classical_hodge_square() {
        // N = 2, D = 3: ∗ maps degree p to 3 - p and back; ∗∗ = ±1
        for p in 0..=3usize {
            for b in schur_basis(&Diagram::from_columns(&[p]).unwrap(), 3, Variance::Co) {
                let s = dual_star(2, &b).unwrap();
                assert_eq!(s.degree, 3 - p);
                let mut back = s.clone();
                back.variance = Variance::Co;
                let ss = dual_star(2, &back).unwrap();
                let mut expected = b.clone();
                expected.variance = Variance::Contra;
                // ∗∗ is a nonzero multiple of the identity
                let (idx, x) = b.entries().next().unwrap();
                let c = ss.get(idx) / x;
                assert!(!c.is_zero());
                assert_eq!(ss, expected.scaled(&c).with_shape(ss.shape.clone().unwrap()));
            }
        }
    }

    #[test]
    fn star_is_bijective_for_three_complex_in_two_dimensions() {
        for p in 0..=4 {
            let shape = Diagram::max_diagram(3, p).unwrap();
            let dual = Diagram::max_diagram(3, 4 - p).unwrap();
            let basis = crate::tensor::coords::schur_basis_vectors(&shape, 2);
            let m = star_matrix(3, 2, p);
            let images: Vec<IVec> = basis.iter().map(|v| linalg::combination(&m, v)).collect();
            assert_eq!(linalg::rank(images.iter()) as u64, shape.schur_dim(2));
            assert_eq!(shape.schur_dim(2), dual.schur_dim(2));
        }
    }
}
