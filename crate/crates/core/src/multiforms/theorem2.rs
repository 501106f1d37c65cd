//! Rank certificates for the vanishing statements in the multiform multicomplex.

use serde::Serialize;

use super::pi::slot_subsets;
use super::{d_i_int, d_product_int, unit, MultiBlock};
use crate::error::{Error, Result};
use crate::linalg::{self, IVec};

#[derive(Clone, Debug, Serialize)]
pub struct RankRow {
    pub degrees: Vec<usize>,
    pub q: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    /// Rank of cocycles and coboundaries together; equals `dim_coboundaries` exactly
    /// when every cocycle is a coboundary.
    pub dim_sum: usize,
}

impl RankRow {
    pub fn holds(&self) -> bool {
        self.dim_sum == self.dim_coboundaries
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub rows: Vec<RankRow>,
}

impl RankCertificate {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(RankRow::holds)
    }
}

fn check_slots(n: usize, set: &[usize]) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    for &s in set {
        if s == 0 || s > n - 1 {
            return Err(Error::SlotOutOfRange { slot: s, max: n - 1 });
        }
    }
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != set.len() {
        return Err(Error::Precondition("repeated slot".into()));
    }
    Ok(())
}

/// All multidegrees `(a_1, …, a_(N-1))` with `0 ≤ a_i ≤ D`, lexicographic.
pub fn multidegrees(n: usize, dim: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n - 1 {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=dim).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Subsets of `set` of size `k`, in lexicographic order of positions.
fn subsets_of(set: &[usize], k: usize) -> Vec<Vec<usize>> {
    slot_subsets(set.len(), k).into_iter().map(|pos| pos.iter().map(|&p| set[p - 1]).collect()).collect()
}

/// Images of all unit vectors of `src` under `∏_{j ∈ set} d_j`.
fn product_images(src: &MultiBlock, set: &[usize]) -> Vec<IVec> {
    (0..src.len())
        .filter_map(|t| d_product_int(src, set, &vec![(t, 1.into())]).map(|(_, v)| v))
        .filter(|v| !v.is_empty())
        .collect()
}

fn shift_down(b: &MultiBlock, set: &[usize]) -> Option<MultiBlock> {
    let mut s = vec![0isize; b.degrees.len()];
    for &j in set {
        s[j - 1] -= 1;
    }
    b.shifted(&s, set.len() as isize)
}

fn row(degrees: &[usize], q: usize, cocycles: &[IVec], coboundaries: &[IVec]) -> RankRow {
    let dim_cocycles = linalg::rank(cocycles.iter());
    let dim_coboundaries = if coboundaries.is_empty() { 0 } else { linalg::rank(coboundaries.iter()) };
    let dim_sum = linalg::rank(cocycles.iter().chain(coboundaries.iter()));
    RankRow { degrees: degrees.to_vec(), q, dim_cocycles, dim_coboundaries, dim_sum }
}

/// Multiforms of multidegree `degrees` killed by every `∏_{i ∈ I} d_i`, `I ⊆ K`, `#I = m`,
/// are sums of `∏_{j ∈ J} d_j α_J` over `J ⊆ K` with `#J = #K - m + 1`, plus polynomial
/// multiforms of degree `≤ m - 1`. Checked for each polynomial degree `q ≤ q_cap`, with
/// sources in degree `q + #J`.
pub fn theorem2_check(n: usize, dim: usize, k_set: &[usize], m: usize, degrees: &[usize], q_cap: usize) -> Result<RankCertificate> {
    check_slots(n, k_set)?;
    if k_set.is_empty() {
        return Err(Error::Precondition("K must be nonempty".into()));
    }
    if m == 0 || m > k_set.len() {
        return Err(Error::Precondition(format!("m = {m} must lie in 1..={}", k_set.len())));
    }
    if degrees.len() != n - 1 || degrees.iter().any(|&a| a > dim) {
        return Err(Error::ShapeMismatch(format!("multidegree {degrees:?} for N = {n}, D = {dim}")));
    }
    let annihilators = subsets_of(k_set, m);
    let sources = subsets_of(k_set, k_set.len() - m + 1);
    let mut rows = Vec::new();
    for q in 0..=q_cap {
        let v = MultiBlock::new(n, dim, degrees, q);
        let units = v.basis();
        let stacked: Vec<IVec> = units
            .iter()
            .map(|e| {
                let mut out = IVec::new();
                let mut offset = 0;
                for set in &annihilators {
                    if let Some((dst, img)) = d_product_int(&v, set, e) {
                        out.extend(img.into_iter().map(|(i, x)| (i + offset, x)));
                        offset += dst.len();
                    }
                }
                out
            })
            .collect();
        let cocycles = linalg::kernel(&stacked);
        let coboundaries: Vec<IVec> = if q < m {
            units
        } else {
            sources.iter().filter_map(|j| shift_down(&v, j).map(|src| product_images(&src, j))).flatten().collect()
        };
        rows.push(row(degrees, q, &cocycles, &coboundaries));
    }
    Ok(RankCertificate { rows })
}

/// [`theorem2_check`] over every multidegree.
pub fn theorem2_all(n: usize, dim: usize, k_set: &[usize], m: usize, q_cap: usize) -> Result<RankCertificate> {
    let mut rows = Vec::new();
    for a in multidegrees(n, dim) {
        rows.extend(theorem2_check(n, dim, k_set, m, &a, q_cap)?.rows);
    }
    Ok(RankCertificate { rows })
}

/// In the quotient by `Σ_{j ∈ K} d_j`, every `d_i`-cocycle of order `#K + 1` is `d_i` of
/// an element of order `#K + 2`. Checked over every multidegree and every polynomial
/// degree `#K + 1 ≤ q ≤ q_cap`.
pub fn relative_cohomology_check(n: usize, dim: usize, k_set: &[usize], i: usize, q_cap: usize) -> Result<RankCertificate> {
    check_slots(n, k_set)?;
    check_slots(n, &[i])?;
    if k_set.contains(&i) {
        return Err(Error::Precondition(format!("slot {i} lies in K")));
    }
    let len = n - 1;
    let mut rows = Vec::new();
    for a in multidegrees(n, dim) {
        for q in k_set.len() + 1..=q_cap {
            let v = MultiBlock::new(n, dim, &a, q);
            let units = v.basis();
            let mut cocycles: Vec<IVec> = Vec::new();
            match v.shifted(&unit(len, i - 1, 1), -1) {
                None => cocycles = units.clone(),
                Some(_) => {
                    // kernel of ω ⊕ w ↦ d_i ω - w with w in Σ_{j ∈ K} d_j V(a + e_i - e_j, q)
                    let mut images: Vec<IVec> = units.iter().map(|e| d_i_int(&v, i, e)).collect();
                    for &j in k_set {
                        let mut s = unit(len, i - 1, 1);
                        s[j - 1] -= 1;
                        if let Some(src) = v.shifted(&s, 0) {
                            images.extend(product_images(&src, &[j]));
                        }
                    }
                    for c in linalg::kernel(&images) {
                        let omega: IVec = c.into_iter().filter(|(t, _)| *t < units.len()).collect();
                        if !omega.is_empty() {
                            cocycles.push(omega);
                        }
                    }
                }
            }
            let mut coboundaries = Vec::new();
            for j in std::iter::once(i).chain(k_set.iter().copied()) {
                if let Some(src) = shift_down(&v, &[j]) {
                    coboundaries.extend(product_images(&src, &[j]));
                }
            }
            rows.push(row(&a, q, &cocycles, &coboundaries));
        }
    }
    Ok(RankCertificate { rows })
}
