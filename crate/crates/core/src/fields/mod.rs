//! Polynomial tensor fields in `Ω_N(R^D)` and the operators `∇`, `d`, `δ`, `∗`.

pub mod block;
mod ops;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::linalg::{self, IVec, QVec};
use crate::poly::{degree as poly_degree_of, Exponent};
use crate::probe::Probe;
use crate::tensor::Variance;
pub use block::Block;
pub use ops::{delta, field_product, n_diff, n_diff_power, nabla, star_field, star_field_inverse, star_relation_constants, RawField};

type EntryKey = (Vec<u8>, Exponent);

/// A homogeneous polynomial tensor field of row-filled shape `Y^N_p`.
///
/// Entries are stored on column-strict index tuples only; other tuples follow by
/// column antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTensorField {
    pub n: usize,
    pub dim: usize,
    pub degree: usize,
    pub poly_degree: usize,
    pub variance: Variance,
    entries: BTreeMap<(Vec<u8>, Exponent), BigRational>,
}

impl PolyTensorField {
    pub fn zero(n: usize, dim: usize, degree: usize, poly_degree: usize, variance: Variance) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidOrder(n));
        }
        let top = (n - 1) * dim;
        if degree > top {
            return Err(Error::DegreeOutOfRange { degree, max: top });
        }
        Ok(PolyTensorField { n, dim, degree, poly_degree, variance, entries: BTreeMap::new() })
    }

    pub fn shape(&self) -> Diagram {
        Diagram::max_diagram(self.n, self.degree).expect("validated order")
    }

    pub fn block(&self) -> Block {
        Block::new(self.n, self.dim, self.degree, self.poly_degree)
    }

    /// Adds `value` at an arbitrary index tuple, folding it onto the column-strict tuple
    /// with the antisymmetry sign. Tuples with a repeated index inside a column are zero
    /// and are rejected when `value` is nonzero.
    pub fn add_entry(&mut self, idx: &[u8], exp: &[u32], value: &BigRational) -> Result<()> {
        let (key, sign) = self.canonical_key(idx, exp)?;
        let Some(sign) = sign else {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::Precondition(format!("index {idx:?} repeats inside a column")));
        };
        let e = self.entries.entry(key.clone()).or_insert_with(BigRational::zero);
        if sign > 0 {
            *e += value;
        } else {
            *e -= value;
        }
        if e.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    /// Sets the value at `idx` (any column order); the stored column-strict entry
    /// receives the sign-adjusted value.
    pub fn set_entry(&mut self, idx: &[u8], exp: &[u32], value: BigRational) -> Result<()> {
        let (key, sign) = self.canonical_key(idx, exp)?;
        let Some(sign) = sign else {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::Precondition(format!("index {idx:?} repeats inside a column")));
        };
        let v = if sign > 0 { value } else { -value };
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
        Ok(())
    }

    /// Component at any index tuple.
    pub fn get(&self, idx: &[u8], exp: &[u32]) -> BigRational {
        match self.canonical_key(idx, exp) {
            Ok((key, Some(s))) => {
                let v = self.entries.get(&key).cloned().unwrap_or_else(BigRational::zero);
                if s > 0 {
                    v
                } else {
                    -v
                }
            }
            _ => BigRational::zero(),
        }
    }

    fn canonical_key(&self, idx: &[u8], exp: &[u32]) -> Result<(EntryKey, Option<i64>)> {
        if idx.len() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: idx.len() });
        }
        if exp.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: exp.len() });
        }
        if poly_degree_of(exp) != self.poly_degree {
            return Err(Error::DegreeMismatch { expected: self.poly_degree, found: poly_degree_of(exp) });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i as usize >= self.dim) {
            return Err(Error::IndexOutOfRange { index: bad as usize, dim: self.dim });
        }
        let b = self.block();
        match b.coords.normalize(idx) {
            Some((id, s)) => Ok(((b.coords.coords[id].clone(), exp.to_vec()), Some(s))),
            None => Ok(((idx.to_vec(), exp.to_vec()), None)),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vec<u8>, Exponent), &BigRational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_vector(&self) -> QVec {
        let b = self.block();
        self.entries
            .iter()
            .map(|((idx, exp), v)| {
                let c = b.coords.id(idx).expect("stored tuples are column-strict");
                let m = b.monos.id(exp).expect("homogeneous exponent");
                (b.index(c, m), v.clone())
            })
            .collect()
    }

    pub fn from_vector(n: usize, dim: usize, p: usize, q: usize, variance: Variance, v: &QVec) -> Result<Self> {
        let mut f = PolyTensorField::zero(n, dim, p, q, variance)?;
        let b = f.block();
        for (i, x) in v {
            if x.is_zero() {
                continue;
            }
            let (c, m) = b.split(*i);
            f.entries.insert((b.coords.coords[c].clone(), b.monos.list[m].clone()), x.clone());
        }
        Ok(f)
    }

    /// A random nonzero field of block `(p, q)` with small integer coordinates in the
    /// block basis; zero when the block is.
    pub fn random(n: usize, dim: usize, p: usize, q: usize, variance: Variance, probe: &mut Probe) -> Result<Self> {
        Self::zero(n, dim, p, q, variance)?;
        let v = probe.combination(&block::block_basis(n, dim, p, q));
        Ok(Self::from_int(n, dim, p, q, variance, &BigRational::from_integer(1.into()), &v))
    }

    pub(crate) fn from_int(
        n: usize,
        dim: usize,
        p: usize,
        q: usize,
        variance: Variance,
        factor: &BigRational,
        v: &IVec,
    ) -> Self {
        Self::from_vector(n, dim, p, q, variance, &linalg::to_rational(v, factor)).expect("degrees checked by caller")
    }

    pub(crate) fn to_int(&self) -> (BigRational, IVec) {
        linalg::to_integer(&self.to_vector())
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.entries.clear();
        } else {
            for v in out.entries.values_mut() {
                *v *= c;
            }
        }
        out
    }

    fn check_same_block(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!("complex orders {} and {}", self.n, other.n)));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        if self.poly_degree != other.poly_degree {
            return Err(Error::DegreeMismatch { expected: self.poly_degree, found: other.poly_degree });
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch("fields of different variance".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_block(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let e = out.entries.entry(k.clone()).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                out.entries.remove(k);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(&-BigRational::from_integer(BigInt::from(1))))
    }

    /// Applies the Young projector of the field's shape to every coefficient slice.
    pub fn young_projected(&self) -> Self {
        let b = self.block();
        let (f, v) = self.to_int();
        let out = block::project_int(&b, &v);
        let scale = f / BigRational::from_integer(block::projector_norm(&b));
        Self::from_int(self.n, self.dim, self.degree, self.poly_degree, self.variance, &scale, &out)
    }

    /// Whether every coefficient slice lies in the Schur module of the shape.
    pub fn is_in_schur_module(&self) -> bool {
        self.young_projected() == *self
    }

    /// Is `self` a rational multiple of `other`? Returns the factor `c` with
    /// `self = c * other` when `other` is nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        let (k, v) = other.entries.iter().next()?;
        let c = self.entries.get(k).cloned().unwrap_or_else(BigRational::zero) / v;
        (other.scaled(&c) == *self).then_some(c)
    }
}

#[cfg(test)]
mod tests;
