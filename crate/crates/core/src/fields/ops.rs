use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::block::{self, Block};
use super::PolyTensorField;
use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::linalg::{self, IVec};
use crate::memo::Memo;
use crate::poly::{monomials, Exponent};
use crate::tensor::coords::{product_stencil, shape_coords};
use crate::tensor::{star_matrix, Variance};

/// Tensor-valued field on full index tuples, before any projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawField {
    pub dim: usize,
    pub degree: usize,
    pub poly_degree: usize,
    pub variance: Variance,
    pub entries: BTreeMap<(Vec<u8>, Exponent), BigRational>,
}

impl RawField {
    pub fn get(&self, idx: &[u8], exp: &[u32]) -> BigRational {
        self.entries.get(&(idx.to_vec(), exp.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }
}

impl PolyTensorField {
    /// Zero field without the degree range check; used for results that vanish because
    /// they fall past the top degree.
    pub(crate) fn vanishing(n: usize, dim: usize, degree: usize, poly_degree: usize, variance: Variance) -> Self {
        PolyTensorField { n, dim, degree, poly_degree, variance, entries: BTreeMap::new() }
    }
}

/// Positions of the cells of `inner` inside `outer` (column-reading order of both) and
/// the positions of the remaining cells of `outer`.
fn cell_embedding(inner: &Diagram, outer: &Diagram) -> (Vec<usize>, Vec<usize>) {
    let inner_pos = inner
        .cells_column_order()
        .into_iter()
        .map(|(r, c)| outer.position(r, c).expect("inner cell lies in outer"))
        .collect();
    let rest = outer
        .cells_column_order()
        .into_iter()
        .filter(|&(r, c)| inner.position(r, c).is_none())
        .map(|(r, c)| outer.position(r, c).expect("outer cell"))
        .collect();
    (inner_pos, rest)
}

/// `∇F`: the derivative index occupies the cell that row-filling adds to the shape.
pub fn nabla(f: &PolyTensorField) -> RawField {
    let p = f.degree;
    let inner = f.shape();
    let outer = Diagram::max_diagram(f.n, p + 1).expect("validated order");
    let (inner_pos, new_pos) = cell_embedding(&inner, &outer);
    let new_pos = new_pos[0];
    let sc = shape_coords(&inner, f.dim);
    let mut out = RawField {
        dim: f.dim,
        degree: p + 1,
        poly_degree: f.poly_degree.saturating_sub(1),
        variance: f.variance,
        entries: BTreeMap::new(),
    };
    if f.poly_degree == 0 {
        return out;
    }
    for ((idx, exp), x) in f.entries() {
        let id = sc.id(idx).expect("column-strict tuple");
        for (t, s) in sc.expand(id) {
            for mu in 0..f.dim {
                if exp[mu] == 0 {
                    continue;
                }
                let mut j = vec![0u8; p + 1];
                for (k, &pos) in inner_pos.iter().enumerate() {
                    j[pos] = t[k];
                }
                j[new_pos] = mu as u8;
                let mut e = exp.clone();
                e[mu] -= 1;
                let v = x * BigRational::from_integer(BigInt::from(s * exp[mu] as i64));
                let slot = out.entries.entry((j, e)).or_insert_with(BigRational::zero);
                *slot += v;
            }
        }
    }
    out.entries.retain(|_, v| !v.is_zero());
    out
}

/// The N-differential `dF = (-1)^p 𝐘^N_{p+1}(∇F)`.
pub fn n_diff(f: &PolyTensorField) -> PolyTensorField {
    n_diff_power(f, 1)
}

pub fn n_diff_power(f: &PolyTensorField, k: usize) -> PolyTensorField {
    let top = (f.n - 1) * f.dim;
    let out_q = f.poly_degree.saturating_sub(k);
    if f.degree + k > top || f.poly_degree < k {
        return PolyTensorField::vanishing(f.n, f.dim, f.degree + k, out_q, f.variance);
    }
    let (factor, v) = f.to_int();
    let img = block::d_power_int(f.n, f.dim, f.degree, f.poly_degree, k, &v);
    let scale = factor * block::d_power_scale(f.n, f.dim, f.degree, k);
    PolyTensorField::from_int(f.n, f.dim, f.degree + k, out_q, f.variance, &scale, &img)
}

type DeltaStencil = HashMap<(usize, usize), Vec<(usize, i64)>>;

static DELTA: Memo<(usize, usize, usize), DeltaStencil> = Memo::new();

/// For contravariant degree `P`: maps `(source coordinate of Y_P, μ)` to the target
/// coordinates of `Y_{P-1}` whose tuple, with `μ` appended in the removed cell,
/// normalizes to that source coordinate.
fn delta_stencil(n: usize, dim: usize, degree: usize) -> Arc<DeltaStencil> {
    DELTA.get_or_build(&(n, dim, degree), || {
        let outer = Diagram::max_diagram(n, degree).expect("order");
        let inner = Diagram::max_diagram(n, degree - 1).expect("order");
        let (inner_pos, new_pos) = cell_embedding(&inner, &outer);
        let new_pos = new_pos[0];
        let oc = shape_coords(&outer, dim);
        let ic = shape_coords(&inner, dim);
        let mut map: HashMap<(usize, usize), Vec<(usize, i64)>> = HashMap::new();
        let mut j = vec![0u8; degree];
        for (a, t) in ic.coords.iter().enumerate() {
            for (k, &pos) in inner_pos.iter().enumerate() {
                j[pos] = t[k];
            }
            for mu in 0..dim {
                j[new_pos] = mu as u8;
                if let Some((src, s)) = oc.normalize(&j) {
                    map.entry((src, mu)).or_default().push((a, s));
                }
            }
        }
        map
    })
}

/// The codifferential `δT = 𝐘^N(δ̃T)`: the derivative is contracted with the last
/// entry of the last row, which is the last entry of column `r`.
pub fn delta(t: &PolyTensorField) -> Result<PolyTensorField> {
    if t.variance != Variance::Contra {
        return Err(Error::VarianceMismatch("the codifferential acts on contravariant fields".into()));
    }
    let out_q = t.poly_degree.saturating_sub(1);
    if t.degree == 0 {
        return Ok(PolyTensorField::vanishing(t.n, t.dim, 0, out_q, t.variance));
    }
    let out_p = t.degree - 1;
    if t.poly_degree == 0 {
        return Ok(PolyTensorField::vanishing(t.n, t.dim, out_p, out_q, t.variance));
    }
    let src = t.block();
    let dst = Block::new(t.n, t.dim, out_p, out_q);
    let st = delta_stencil(t.n, t.dim, t.degree);
    let (factor, v) = t.to_int();
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    let mut e = vec![0u32; t.dim];
    for (i, x) in &v {
        let (c, m) = src.split(*i);
        e.copy_from_slice(&src.monos.list[m]);
        for mu in 0..t.dim {
            let k = e[mu];
            if k == 0 {
                continue;
            }
            let Some(targets) = st.get(&(c, mu)) else { continue };
            e[mu] -= 1;
            let m2 = dst.monos.id(&e).expect("lowered monomial");
            e[mu] += 1;
            for &(a, s) in targets {
                *acc.entry(dst.index(a, m2)).or_insert_with(BigInt::zero) += x * BigInt::from(s * k as i64);
            }
        }
    }
    let mut raw: IVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    raw.sort_unstable_by_key(|(i, _)| *i);
    let projected = block::project_int(&dst, &raw);
    let scale = factor / BigRational::from_integer(block::projector_norm(&dst));
    Ok(PolyTensorField::from_int(t.n, t.dim, out_p, out_q, t.variance, &scale, &projected))
}

/// `∗` applied pointwise to a covariant field.
pub fn star_field(f: &PolyTensorField) -> Result<PolyTensorField> {
    if f.variance != Variance::Co {
        return Err(Error::VarianceMismatch("duality acts on covariant fields".into()));
    }
    let out_p = (f.n - 1) * f.dim - f.degree;
    let (factor, v) = f.to_int();
    let img = star_int(f.n, f.dim, f.degree, f.poly_degree, &v);
    Ok(PolyTensorField::from_int(f.n, f.dim, out_p, f.poly_degree, Variance::Contra, &factor, &img))
}

pub(crate) fn star_int(n: usize, dim: usize, p: usize, q: usize, v: &IVec) -> IVec {
    let m = star_matrix(n, dim, p);
    let nm = monomials(dim, q).len();
    linalg::from_entries(
        v.iter().flat_map(|(i, x)| m[i / nm].iter().map(move |(o, c)| (o * nm + i % nm, x * c))),
    )
}

/// The covariant field `ω` with `∗ω = T`.
pub fn star_field_inverse(t: &PolyTensorField) -> Result<PolyTensorField> {
    if t.variance != Variance::Contra {
        return Err(Error::VarianceMismatch("inverse duality produces covariant fields from contravariant ones".into()));
    }
    let p = (t.n - 1) * t.dim - t.degree;
    let basis = block::block_basis(t.n, t.dim, p, t.poly_degree);
    let images: Vec<IVec> = basis.iter().map(|b| star_int(t.n, t.dim, p, t.poly_degree, b)).collect();
    let (factor, v) = t.to_int();
    let coeffs = linalg::solve(&images, &v).ok_or_else(|| Error::NoPreimage("field is not in the image of ∗".into()))?;
    let mut acc = linalg::QVec::new();
    for (j, c) in coeffs {
        for (i, x) in &basis[j] {
            *acc.entry(*i).or_insert_with(BigRational::zero) += &c * &factor * BigRational::from_integer(x.clone());
        }
    }
    acc.retain(|_, x| !x.is_zero());
    PolyTensorField::from_vector(t.n, t.dim, p, t.poly_degree, Variance::Co, &acc)
}

/// The constants `c_n` with `δ = c_n ∗ d ∗⁻¹` in contravariant degree `n`, for
/// `1 ≤ n ≤ (N-1)D`, determined on full bases with polynomial degrees 1 and 2.
pub fn star_relation_constants(n: usize, dim: usize) -> Result<Vec<BigRational>> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    let top = (n - 1) * dim;
    let mut out = Vec::with_capacity(top);
    for deg in 1..=top {
        let m = top - deg;
        let mut found: Option<BigRational> = None;
        for q in 1..=2 {
            for b in block::block_basis(n, dim, m, q).iter() {
                let omega = PolyTensorField::from_int(n, dim, m, q, Variance::Co, &BigRational::one(), b);
                let lhs = delta(&star_field(&omega)?)?;
                let rhs = star_field(&n_diff(&omega))?;
                if rhs.is_zero() {
                    if !lhs.is_zero() {
                        return Err(Error::Inconsistent(format!("degree {deg}: δ∗ω ≠ 0 while ∗dω = 0")));
                    }
                    continue;
                }
                let c = lhs
                    .ratio_to(&rhs)
                    .ok_or_else(|| Error::Inconsistent(format!("degree {deg}: δ∗ω is not a multiple of ∗dω")))?;
                match &found {
                    None => found = Some(c),
                    Some(prev) if *prev != c => {
                        return Err(Error::Inconsistent(format!("degree {deg}: constants {prev} and {c}")));
                    }
                    _ => {}
                }
            }
        }
        let c = found.ok_or_else(|| Error::Inconsistent(format!("degree {deg}: no nonzero test field")))?;
        if c.is_zero() {
            return Err(Error::Inconsistent(format!("degree {deg}: δ vanishes where ∗d∗⁻¹ does not")));
        }
        out.push(c);
    }
    Ok(out)
}

/// The graded product `(αβ)(x) = 𝐘_{a+b}(α(x) ⊗ β(x))`; the entries of `β` fill the
/// added cells in column-reading order.
pub fn field_product(a: &PolyTensorField, b: &PolyTensorField) -> Result<PolyTensorField> {
    if a.n != b.n || a.dim != b.dim || a.variance != b.variance {
        return Err(Error::ShapeMismatch("product of fields from different complexes".into()));
    }
    let (n, dim) = (a.n, a.dim);
    let deg = a.degree + b.degree;
    let q = a.poly_degree + b.poly_degree;
    if deg > (n - 1) * dim {
        return Ok(PolyTensorField::vanishing(n, dim, deg, q, a.variance));
    }
    let out_shape = Diagram::max_diagram(n, deg)?;
    let st = product_stencil(&a.shape(), &b.shape(), &out_shape, dim);
    let lam = BigRational::from_integer(st.norm.clone());
    let mut out = PolyTensorField::zero(n, dim, deg, q, a.variance)?;
    let oc = &st.out;
    for ((ia, ea), xa) in a.entries() {
        let l = st.left.id(ia).expect("column-strict");
        for ((ib, eb), xb) in b.entries() {
            let r = st.right.id(ib).expect("column-strict");
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let prod = xa * xb / &lam;
            for &(o, c) in st.scatter_of(l, r) {
                out.add_entry(&oc.coords[o], &e, &(&prod * BigRational::from_integer(BigInt::from(c))))?;
            }
        }
    }
    Ok(out)
}
