//! Exact-rational tensors over `R^D` indexed in column-reading order.

pub mod coords;
pub mod duality;

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::linalg::{IVec, QVec};
use coords::{schur_basis_vectors, shape_coords, ShapeCoords};

pub use duality::{contract_tensor, dual_star, epsilon, star_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variance {
    #[serde(rename = "co")]
    Co,
    #[serde(rename = "contra")]
    Contra,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Co => Variance::Contra,
            Variance::Contra => Variance::Co,
        }
    }
}

/// Sparse tensor: components keyed by full index tuples (0-based), zeros omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub dim: usize,
    pub degree: usize,
    pub variance: Variance,
    pub shape: Option<Diagram>,
    comps: BTreeMap<Vec<u8>, BigRational>,
}

impl Tensor {
    pub fn zero(dim: usize, degree: usize, variance: Variance) -> Self {
        Tensor { dim, degree, variance, shape: None, comps: BTreeMap::new() }
    }

    pub fn with_shape(mut self, shape: Diagram) -> Self {
        self.shape = Some(shape);
        self
    }

    pub fn scalar(dim: usize, value: BigRational, variance: Variance) -> Self {
        let mut t = Tensor::zero(dim, 0, variance).with_shape(Diagram::empty());
        t.set(&[], value).expect("empty index");
        t
    }

    pub fn get(&self, idx: &[u8]) -> BigRational {
        self.comps.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, idx: &[u8], value: BigRational) -> Result<()> {
        if idx.len() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: idx.len() });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i as usize >= self.dim) {
            return Err(Error::IndexOutOfRange { index: bad as usize, dim: self.dim });
        }
        if value.is_zero() {
            self.comps.remove(idx);
        } else {
            self.comps.insert(idx.to_vec(), value);
        }
        Ok(())
    }

    pub fn add_to(&mut self, idx: &[u8], value: &BigRational) {
        let e = self.comps.entry(idx.to_vec()).or_insert_with(BigRational::zero);
        *e += value;
        if e.is_zero() {
            self.comps.remove(idx);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u8>, &BigRational)> {
        self.comps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.comps.len()
    }

    pub fn scaled(&self, c: &BigRational) -> Tensor {
        let mut out = Tensor { comps: BTreeMap::new(), ..self.clone() };
        if !c.is_zero() {
            out.comps = self.comps.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.add_to(k, v);
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch("cannot combine co- and contravariant tensors".into()));
        }
        Ok(())
    }

    pub fn tensor_product(&self, other: &Tensor) -> Result<Tensor> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch("tensor product of mixed variance".into()));
        }
        let mut out = Tensor::zero(self.dim, self.degree + other.degree, self.variance);
        for (a, x) in &self.comps {
            for (b, y) in &other.comps {
                let mut k = a.clone();
                k.extend_from_slice(b);
                out.comps.insert(k, x * y);
            }
        }
        Ok(out)
    }

    /// Values on the column-strict coordinates of `shape`.
    pub fn to_coords(&self, shape: &Diagram) -> Result<QVec> {
        self.expect_degree(shape)?;
        let sc = shape_coords(shape, self.dim);
        Ok(sc
            .coords
            .iter()
            .enumerate()
            .filter_map(|(i, t)| self.comps.get(t).map(|v| (i, v.clone())))
            .collect())
    }

    /// The column-antisymmetric tensor with the given values on column-strict coordinates.
    pub fn from_coords(shape: &Diagram, dim: usize, variance: Variance, v: &QVec) -> Tensor {
        let sc = shape_coords(shape, dim);
        let mut out = Tensor::zero(dim, shape.size(), variance).with_shape(shape.clone());
        for (id, x) in v {
            for (t, s) in sc.expand(*id) {
                out.comps.insert(t, x * BigRational::from_integer(BigInt::from(s)));
            }
        }
        out
    }

    fn expect_degree(&self, shape: &Diagram) -> Result<()> {
        if shape.size() != self.degree {
            return Err(Error::DegreeMismatch { expected: shape.size(), found: self.degree });
        }
        Ok(())
    }
}

/// `𝐘(T) = λ⁻¹ Σ_{p∈R} Σ_{q∈C} sign(q) T∘p∘q` for an arbitrary tensor of degree `|Y|`.
pub fn young_project(shape: &Diagram, t: &Tensor) -> Result<Tensor> {
    t.expect_degree(shape)?;
    let sc = shape_coords(shape, t.dim);
    let group = coords::symmetrizer_group(shape);
    let lambda = BigRational::from_integer(group.norm.clone());
    let mut values = QVec::new();
    let mut buf = vec![0u8; t.degree];
    for (id, base) in sc.coords.iter().enumerate() {
        let mut acc = BigRational::zero();
        for (sigma, s) in &group.elements {
            for k in 0..buf.len() {
                buf[k] = base[sigma[k] as usize];
            }
            if let Some(v) = t.comps.get(&buf) {
                if *s > 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
        }
        if !acc.is_zero() {
            values.insert(id, acc / &lambda);
        }
    }
    Ok(Tensor::from_coords(shape, t.dim, t.variance, &values))
}

/// A basis of the Schur module `E^Y`, as full tensors.
pub fn schur_basis(shape: &Diagram, dim: usize, variance: Variance) -> Vec<Tensor> {
    schur_basis_vectors(shape, dim)
        .iter()
        .map(|v| Tensor::from_coords(shape, dim, variance, &int_to_q(v)))
        .collect()
}

pub(crate) fn int_to_q(v: &IVec) -> QVec {
    v.iter().map(|(i, x)| (*i, BigRational::from_integer(x.clone()))).collect()
}

/// Checks antisymmetry inside each column, and that antisymmetrizing a full column
/// together with the first entry of any later column gives zero.
pub fn satisfies_schur_conditions(shape: &Diagram, t: &Tensor) -> bool {
    if shape.size() != t.degree {
        return false;
    }
    let sc: std::sync::Arc<ShapeCoords> = shape_coords(shape, t.dim);
    let ncols = sc.columns.len();
    for (idx, v) in &t.comps {
        for c in 0..ncols {
            let r = sc.column_range(c);
            for a in r.clone() {
                for b in a + 1..r.end {
                    let mut sw = idx.clone();
                    sw.swap(a, b);
                    if t.get(&sw) != -v.clone() {
                        return false;
                    }
                }
            }
        }
    }
    // with column antisymmetry, the exchange condition reads
    // T[J] = Σ_k T[J with (column r entry k) <-> (first entry of column s)]
    let mut candidates: HashSet<Vec<u8>> = HashSet::new();
    for idx in t.comps.keys() {
        candidates.insert(idx.clone());
        for r in 0..ncols {
            for s in r + 1..ncols {
                let first = sc.column_range(s).start;
                for k in sc.column_range(r) {
                    let mut sw = idx.clone();
                    sw.swap(k, first);
                    candidates.insert(sw);
                }
            }
        }
    }
    for idx in &candidates {
        for r in 0..ncols {
            for s in r + 1..ncols {
                let first = sc.column_range(s).start;
                let mut sum = BigRational::zero();
                for k in sc.column_range(r) {
                    let mut sw = idx.clone();
                    sw.swap(k, first);
                    sum += t.get(&sw);
                }
                if sum != t.get(idx) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::perm::{all_permutations, sign};
    use proptest::prelude::*;

    fn d(rows: &[usize]) -> Diagram {
        Diagram::new(rows.to_vec()).unwrap()
    }

    fn all_tuples(dim: usize, len: usize) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|t: Vec<u8>| {
                    (0..dim as u8).map(move |x| {
                        let mut u = t.clone();
                        u.push(x);
                        u
                    })
                })
                .collect();
        }
        out
    }

    fn random_tensor(dim: usize, degree: usize, seed: &[i64]) -> Tensor {
        let mut t = Tensor::zero(dim, degree, Variance::Co);
        for (k, idx) in all_tuples(dim, degree).into_iter().enumerate() {
            t.set(&idx, rational(seed[k % seed.len()])).unwrap();
        }
        t
    }

    /// Dense `D^n × D^n` matrix of the symmetrizer built straight from the
    /// row/column double sum over all permutations, as the rank oracle.
    fn dense_projector_rank(shape: &Diagram, dim: usize) -> usize {
        let n = shape.size();
        let cells = shape.cells_column_order();
        let perms = all_permutations(n);
        let row_of = |p: &Vec<usize>| p.iter().enumerate().all(|(k, &j)| cells[k].0 == cells[j].0);
        let col_of = |p: &Vec<usize>| p.iter().enumerate().all(|(k, &j)| cells[k].1 == cells[j].1);
        let rows: Vec<&Vec<usize>> = perms.iter().filter(|p| row_of(p)).collect();
        let cols: Vec<&Vec<usize>> = perms.iter().filter(|p| col_of(p)).collect();
        let tuples = all_tuples(dim, n);
        let index: std::collections::HashMap<Vec<u8>, usize> =
            tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut vectors = Vec::new();
        for src in &tuples {
            // image of the basis tensor e_src
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for p in &rows {
                for q in &cols {
                    // (𝐘e)_I picks up sign(q) when I∘(q∘p) = src, i.e. I = src∘(q∘p)⁻¹
                    let sigma: Vec<usize> = (0..n).map(|k| q[p[k]]).collect();
                    let mut img = vec![0u8; n];
                    for k in 0..n {
                        img[sigma[k]] = src[k];
                    }
                    *acc.entry(index[&img]).or_insert_with(BigInt::zero) += BigInt::from(sign(q));
                }
            }
            vectors.push(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect::<IVec>());
        }
        linalg::rank(vectors.iter())
    }

    #[test]
    fn projector_rank_oracle_matches_hook_content() {
        for n in 1..=4 {
            for y in crate::diagrams::partitions(n) {
                for dim in 1..=3 {
                    assert_eq!(dense_projector_rank(&y, dim) as u64, y.schur_dim(dim), "{y} D={dim}");
                }
            }
        }
    }

    #[test]
    fn single_column_is_antisymmetrizer() {
        let t = random_tensor(3, 3, &[1, -2, 5, 0, 3, 7, -1]);
        let p = young_project(&d(&[1, 1, 1]), &t).unwrap();
        let mut acc = BigRational::zero();
        for perm in all_permutations(3) {
            let idx: Vec<u8> = perm.iter().map(|&k| [0u8, 1, 2][k]).collect();
            acc += t.get(&idx) * rational(sign(&perm));
        }
        assert_eq!(p.get(&[0, 1, 2]), acc / rational(6));
    }

    #[test]
    fn riemann_shape_in_two_dimensions() {
        let mut t = Tensor::zero(2, 4, Variance::Co);
        t.set(&[0, 0, 1, 1], one()).unwrap();
        let y = d(&[2, 2]);
        let p = young_project(&y, &t).unwrap();
        assert!(!p.is_zero());
        assert_eq!(young_project(&y, &p).unwrap(), p);
        let basis = schur_basis(&y, 2, Variance::Co);
        assert_eq!(basis.len(), 1);
        let ratio_ = p.get(&[0, 1, 0, 1]) / basis[0].get(&[0, 1, 0, 1]);
        assert_eq!(basis[0].scaled(&ratio_), p);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(schur_basis(&d(&[1, 1]), 2, Variance::Co).len(), 1);
        assert_eq!(schur_basis(&d(&[2, 1]), 3, Variance::Co).len(), 8);
        assert!(schur_basis(&d(&[1, 1, 1]), 2, Variance::Co).is_empty());
    }

    #[test]
    fn basis_passes_checker_and_is_fixed() {
        for y in [d(&[2, 1]), d(&[2, 2]), d(&[3, 1]), d(&[2, 1, 1])] {
            for b in schur_basis(&y, 3, Variance::Co) {
                assert!(satisfies_schur_conditions(&y, &b));
                assert_eq!(young_project(&y, &b).unwrap(), b);
            }
        }
    }

    #[test]
    fn checker_rejects_non_schur() {
        let mut t = Tensor::zero(3, 3, Variance::Co);
        t.set(&[0, 1, 2], one()).unwrap();
        t.set(&[1, 0, 2], -one()).unwrap();
        assert!(!satisfies_schur_conditions(&d(&[2, 1]), &t));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn projection_is_idempotent(seed in prop::collection::vec(-3i64..=3, 1..12), which in 0usize..9, dim in 1usize..=3) {
            let shapes = [d(&[1]), d(&[2]), d(&[1, 1]), d(&[2, 1]), d(&[3]), d(&[2, 2]), d(&[3, 1]), d(&[2, 1, 1]), d(&[3, 2])];
            let y = &shapes[which];
            let t = random_tensor(dim, y.size(), &seed);
            let p = young_project(y, &t).unwrap();
            prop_assert!(satisfies_schur_conditions(y, &p));
            prop_assert_eq!(young_project(y, &p).unwrap(), p);
        }
    }
}
