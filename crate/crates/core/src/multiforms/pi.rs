//! The embedding of `Ω_N` into multiforms, the projection `π` back, and the relation
//! between `d` and the slot differentials.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{d_i, d_product_int, MultiBlock, Multiform};
use crate::error::{Error, Result};
use crate::fields::block::{self, Block};
use crate::fields::{n_diff, PolyTensorField};
use crate::linalg::{self, IVec, QVec};
use crate::tensor::Variance;

/// Slot degrees of the row-filled shape in degree `p`: the column lengths, padded with
/// zeros to `N - 1` slots.
fn slot_degrees(n: usize, p: usize) -> Vec<usize> {
    let shape = crate::diagrams::Diagram::max_diagram(n, p).expect("order checked");
    let mut cols = shape.columns();
    cols.resize(n - 1, 0);
    cols
}

fn factorial_product(degrees: &[usize]) -> BigInt {
    degrees.iter().map(|&a| (1..=a).map(BigInt::from).product::<BigInt>()).product()
}

fn split_key(tuple: &[u8], degrees: &[usize]) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(degrees.len());
    let mut at = 0;
    for &a in degrees {
        out.push(tuple[at..at + a].to_vec());
        at += a;
    }
    out
}

/// Tensor block vector to multiform block vector; coefficients are the components summed
/// over all orderings within each slot.
fn embed_int(tb: &Block, mb: &MultiBlock, v: &IVec) -> IVec {
    let f = factorial_product(&mb.degrees);
    let mut out: IVec = v
        .iter()
        .map(|(i, x)| {
            let (c, m) = tb.split(*i);
            let key = split_key(&tb.coords.coords[c], &mb.degrees);
            (mb.index(mb.slot_id(&key), m), x * &f)
        })
        .collect();
    out.sort_unstable_by_key(|(i, _)| *i);
    out
}

/// `F` as a multiform: `F = Σ F_(μ…) d_1x^(μ_1…) … d_(N-1)x^(…)` summed over all index
/// tuples, with column `j` of the shape carried by slot `j`.
pub fn embed(f: &PolyTensorField) -> Result<Multiform> {
    if f.variance != Variance::Co {
        return Err(Error::VarianceMismatch("multiforms are covariant".into()));
    }
    let degrees = slot_degrees(f.n, f.degree);
    let mb = MultiBlock::new(f.n, f.dim, &degrees, f.poly_degree);
    let (factor, v) = f.to_int();
    let out = embed_int(&f.block(), &mb, &v);
    Multiform::from_vector(f.n, f.dim, &degrees, f.poly_degree, &linalg::to_rational(&out, &factor))
}

/// Tensor degree of a staircase multidegree `(n+1, …, n+1, n, …, n)`.
fn staircase_degree(w: &Multiform) -> Result<usize> {
    let n0 = *w.degrees.iter().min().expect("at least one slot");
    let i = w.degrees.iter().take_while(|&&a| a == n0 + 1).count();
    let ok = w.degrees[..i].iter().all(|&a| a == n0 + 1) && w.degrees[i..].iter().all(|&a| a == n0) && i < w.n - 1;
    if !ok {
        return Err(Error::ShapeMismatch(format!("multidegree {:?} is not of staircase form", w.degrees)));
    }
    Ok((w.n - 1) * n0 + i)
}

/// `π`: reads the slot components as a column-antisymmetric tensor and applies the
/// Young symmetrizer of the row-filled shape.
pub fn project_pi(w: &Multiform) -> Result<PolyTensorField> {
    let p = staircase_degree(w)?;
    let q = if w.is_zero() {
        0
    } else {
        w.poly_degree().ok_or_else(|| Error::Precondition("multiform is not homogeneous in polynomial degree".into()))?
    };
    let tb = Block::new(w.n, w.dim, p, q);
    let f = BigRational::from_integer(factorial_product(&w.degrees));
    let mut v = QVec::new();
    for ((slots, exp), x) in w.entries() {
        let tuple: Vec<u8> = slots.concat();
        let c = tb.coords.id(&tuple).expect("slot sets concatenate to a column-strict tuple");
        let m = tb.monos.id(exp).expect("homogeneous");
        v.insert(tb.index(c, m), x / &f);
    }
    Ok(PolyTensorField::from_vector(w.n, w.dim, p, q, Variance::Co, &v)?.young_projected())
}

/// `π(d_(i+1) F)` for `F` in degree `(N-1)n + i`.
fn projected_slot_derivative(f: &PolyTensorField) -> Result<PolyTensorField> {
    let i = f.degree % (f.n - 1);
    project_pi(&d_i(i + 1, &embed(f)?)?)
}

/// The constant `c` with `dF = c π(d_(i+1) F)`, `F` in degree `(N-1)n + i`.
pub fn green_factor(f: &PolyTensorField) -> Result<BigRational> {
    if f.degree + 1 > (f.n - 1) * f.dim {
        return Err(Error::DegreeOutOfRange { degree: f.degree + 1, max: (f.n - 1) * f.dim });
    }
    let lhs = n_diff(f);
    let rhs = projected_slot_derivative(f)?;
    if rhs.is_zero() {
        if lhs.is_zero() {
            return Err(Error::Precondition("both sides vanish; every constant works".into()));
        }
        return Err(Error::Inconsistent("π(d_(i+1) F) vanishes while dF does not".into()));
    }
    lhs.ratio_to(&rhs).ok_or_else(|| Error::Inconsistent("dF is not a multiple of π(d_(i+1) F)".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct GreenBlock {
    pub n: usize,
    pub dim: usize,
    pub p: usize,
    pub q: usize,
    /// `None` when every basis field has `dF = 0`.
    pub factor: Option<String>,
    pub tested: usize,
    /// For well-filled `p`: whether `dF = d_1 F` holds on the whole basis.
    pub equals_first_slot: Option<bool>,
}

/// [`green_factor`] on every basis field of block `(p, q)`; fails if two fields give
/// different constants.
pub fn green_factor_block(n: usize, dim: usize, p: usize, q: usize) -> Result<GreenBlock> {
    let mut found: Option<BigRational> = None;
    let mut tested = 0;
    let mut first_slot = p.is_multiple_of(n - 1).then_some(true);
    for b in block::block_basis(n, dim, p, q).iter() {
        let f = PolyTensorField::from_vector(n, dim, p, q, Variance::Co, &linalg::to_rational(b, &BigRational::from_integer(1.into())))?;
        if let Some(ok) = first_slot.as_mut() {
            *ok &= well_filled_identity(&f)?;
        }
        let c = match green_factor(&f) {
            Ok(c) => c,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        };
        tested += 1;
        match &found {
            None => found = Some(c),
            Some(prev) if *prev != c => {
                return Err(Error::Inconsistent(format!("block p={p} q={q}: constants {prev} and {c}")));
            }
            _ => {}
        }
    }
    Ok(GreenBlock { n, dim, p, q, factor: found.map(|c| c.to_string()), tested, equals_first_slot: first_slot })
}

/// For well-filled `F`: whether the multiform of `dF` equals `d_1` of the multiform of `F`.
pub fn well_filled_identity(f: &PolyTensorField) -> Result<bool> {
    if !f.degree.is_multiple_of(f.n - 1) {
        return Err(Error::Precondition(format!("degree {} is not a multiple of N - 1", f.degree)));
    }
    if f.degree + 1 > (f.n - 1) * f.dim {
        return Ok(d_i(1, &embed(f)?)?.is_zero());
    }
    Ok(embed(&n_diff(f))? == d_i(1, &embed(f)?)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma4Block {
    pub n: usize,
    pub dim: usize,
    pub p: usize,
    pub k: usize,
    pub q: usize,
    pub dim_ker_power: usize,
    pub dim_ker_products: usize,
    /// `Ker d^k` is annihilated by every product of `k` distinct slot differentials.
    pub contained: bool,
}

impl Lemma4Block {
    pub fn holds(&self) -> bool {
        self.contained && self.dim_ker_power == self.dim_ker_products
    }
}

pub(crate) fn slot_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, 1, &mut Vec::new(), &mut out);
    out
}


/// On the well-filled block `(p, q)`: `Ker d^k` equals the common kernel of all
/// `∏_{j ∈ J} d_j` with `#J = k`, computed on the embedded basis.
pub fn lemma4_check(n: usize, dim: usize, p: usize, k: usize, q: usize) -> Result<Lemma4Block> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    if !p.is_multiple_of(n - 1) {
        return Err(Error::Precondition(format!("degree {p} is not well filled")));
    }
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("k = {k} must lie in 1..={}", n - 1)));
    }
    let tb = Block::new(n, dim, p, q);
    let degrees = slot_degrees(n, p);
    let mb = MultiBlock::new(n, dim, &degrees, q);
    let basis = block::block_basis(n, dim, p, q);
    let subsets = slot_subsets(n - 1, k);
    // stacked product images, offset per subset
    let stacked: Vec<IVec> = basis
        .iter()
        .map(|b| {
            let e = embed_int(&tb, &mb, b);
            let mut out = IVec::new();
            let mut offset = 0;
            for set in &subsets {
                if let Some((dst, img)) = d_product_int(&mb, set, &e) {
                    out.extend(img.into_iter().map(|(i, x)| (i + offset, x)));
                    offset += dst.len();
                }
            }
            out
        })
        .collect();
    let dim_ker_products = basis.len() - linalg::rank(stacked.iter());
    let power: Vec<IVec> = block::d_power_images(n, dim, p, q, k);
    let ker = linalg::kernel(&power);
    let dim_ker_power = ker.len();
    let contained = ker.iter().all(|c| linalg::combination(&stacked, c).is_empty());
    Ok(Lemma4Block { n, dim, p, k, q, dim_ker_power, dim_ker_products, contained })
}
