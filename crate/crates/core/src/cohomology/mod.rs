//! Generalized cohomology `Ker(d^k) / Im(d^(N-k))` of polynomial blocks.

mod cocycle;
mod hexagon;
mod killing;

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagrams::binomial;
use crate::error::{Error, Result};
use crate::fields::block::{self, Block};
use crate::fields::{n_diff_power, PolyTensorField};
use crate::linalg::{self, QVec};
use crate::memo::Memo;

pub use cocycle::{cocycle_from_two_form, CocycleReport};
pub use hexagon::{four_term_check, hexagon_check, FourTermReport, FourTermRow, HexagonReport, NodeCheck};
pub use killing::killing_dim;

static D_RANKS: Memo<(usize, usize, usize, usize, usize), usize> = Memo::new();

/// Rank of `d^k` on block `(p, q)`.
pub fn d_power_rank(n: usize, dim: usize, p: usize, q: usize, k: usize) -> usize {
    *D_RANKS.get_or_build(&(n, dim, p, q, k), || block::rank(&block::d_power_images(n, dim, p, q, k)))
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("k = {k} must lie in 1..={}", n - 1)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCohomology {
    pub p: usize,
    pub k: usize,
    pub q: usize,
    pub dim_ker: usize,
    pub dim_im: usize,
    pub dim_h: usize,
}

/// Dimensions of `Ker d^k` on block `(p, q)`, of `Im d^(N-k)` from block
/// `(p-N+k, q+N-k)`, and of their quotient.
pub fn block_cohomology(n: usize, dim: usize, p: usize, k: usize, q: usize) -> Result<BlockCohomology> {
    check_k(n, k)?;
    let top = (n - 1) * dim;
    if p > top {
        return Ok(BlockCohomology { p, k, q, dim_ker: 0, dim_im: 0, dim_h: 0 });
    }
    let size = Block::new(n, dim, p, q).schur_len();
    let dim_ker = size - d_power_rank(n, dim, p, q, k);
    let j = n - k;
    let dim_im = if p >= j { d_power_rank(n, dim, p - j, q + j, j) } else { 0 };
    if dim_im > dim_ker {
        return Err(Error::Inconsistent(format!("image of d^{j} exceeds kernel of d^{k} at p={p}, q={q}")));
    }
    Ok(BlockCohomology { p, k, q, dim_ker, dim_im, dim_h: dim_ker - dim_im })
}

pub fn cohomology_dim(n: usize, dim: usize, p: usize, k: usize, q: usize) -> Result<usize> {
    Ok(block_cohomology(n, dim, p, k, q)?.dim_h)
}

/// Whether `d^k ∘ d^(N-k)` kills every basis vector of the source block of the image.
pub fn image_in_kernel(n: usize, dim: usize, p: usize, k: usize, q: usize) -> bool {
    let j = n - k;
    if p < j {
        return true;
    }
    block::d_power_images(n, dim, p - j, q + j, j)
        .iter()
        .all(|v| block::d_power_int(n, dim, p, q, k, v).is_empty())
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyTable {
    pub n: usize,
    pub dim: usize,
    pub q_max: usize,
    pub entries: Vec<BlockCohomology>,
}

impl CohomologyTable {
    /// All `(p, k, q)` with `p` in `degrees`, `1 ≤ k ≤ N-1`, `q ≤ q_max`. Blocks are
    /// computed in parallel; entries are ordered by `(p, k, q)`.
    pub fn compute(n: usize, dim: usize, degrees: &[usize], q_max: usize) -> Result<CohomologyTable> {
        check_k(n, 1)?;
        let keys: Vec<(usize, usize, usize)> = degrees
            .iter()
            .flat_map(|&p| (1..n).flat_map(move |k| (0..=q_max).map(move |q| (p, k, q))))
            .collect();
        let entries = keys
            .par_iter()
            .map(|&(p, k, q)| block_cohomology(n, dim, p, k, q))
            .collect::<Result<Vec<_>>>()?;
        Ok(CohomologyTable { n, dim, q_max, entries })
    }

    pub fn get(&self, p: usize, k: usize, q: usize) -> Option<&BlockCohomology> {
        self.entries.iter().find(|e| e.p == p && e.k == k && e.q == q)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("N,D,p,k,q,dim_ker,dim_im,dim_H\n");
        for e in &self.entries {
            let _ = writeln!(s, "{},{},{},{},{},{},{},{}", self.n, self.dim, e.p, e.k, e.q, e.dim_ker, e.dim_im, e.dim_h);
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("N={} D={} q<={}\n", self.n, self.dim, self.q_max);
        let _ = writeln!(s, "{:>4} {:>3} {:>3} {:>8} {:>8} {:>6}", "p", "k", "q", "dim_ker", "dim_im", "dim_H");
        for e in &self.entries {
            let _ = writeln!(s, "{:>4} {:>3} {:>3} {:>8} {:>8} {:>6}", e.p, e.k, e.q, e.dim_ker, e.dim_im, e.dim_h);
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PoincareReport {
    pub n: usize,
    pub dim: usize,
    pub n_max: usize,
    pub q_max: usize,
    pub checked: usize,
    pub violations: Vec<String>,
    pub table: CohomologyTable,
}

impl PoincareReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks vanishing in the well-filled degrees `(N-1)n`, `1 ≤ n ≤ n_max`, and that
/// degree 0 carries exactly the polynomials of degree `< k`.
pub fn poincare_suite(n: usize, dim: usize, n_max: usize, q_max: usize) -> Result<PoincareReport> {
    let top = (n.max(2) - 1) * dim;
    let mut degrees = vec![0];
    degrees.extend((1..=n_max).map(|m| (n.max(2) - 1) * m).filter(|&p| p <= top));
    let table = CohomologyTable::compute(n, dim, &degrees, q_max)?;
    let mut violations = Vec::new();
    for e in &table.entries {
        let expected = if e.p == 0 && e.q < e.k { binomial(e.q + dim - 1, dim - 1) as usize } else { 0 };
        if e.dim_h != expected {
            violations.push(format!("H^{}_({})[q={}] = {} (expected {})", e.p, e.k, e.q, e.dim_h, expected));
        }
    }
    Ok(PoincareReport { n, dim, n_max, q_max, checked: table.entries.len(), violations, table })
}

/// Finds `α` with `d^(N-k) α = F`, given `d^k F = 0`.
pub fn solve_preimage(f: &PolyTensorField, k: usize) -> Result<PolyTensorField> {
    check_k(f.n, k)?;
    if !n_diff_power(f, k).is_zero() {
        return Err(Error::Precondition(format!("d^{k} F is not zero")));
    }
    let j = f.n - k;
    if f.is_zero() && f.degree >= j {
        return PolyTensorField::zero(f.n, f.dim, f.degree - j, f.poly_degree + j, f.variance);
    }
    if f.degree < j {
        return Err(Error::NoPreimage(format!("no degree {} - {j} source block", f.degree)));
    }
    let (p, q) = (f.degree - j, f.poly_degree + j);
    let basis = block::block_basis(f.n, f.dim, p, q);
    let images = block::d_power_images(f.n, f.dim, p, q, j);
    let (factor, target) = f.to_int();
    let coeffs = linalg::solve(&images, &target).ok_or_else(|| {
        Error::NoPreimage(format!("cocycle in block (p={}, q={}) is not in the image of d^{j}", f.degree, f.poly_degree))
    })?;
    // d^j = scale * d_int^j, so α = factor / scale * Σ c_i basis_i
    let scale = factor / block::d_power_scale(f.n, f.dim, p, j);
    let mut acc = QVec::new();
    for (i, c) in coeffs {
        for (idx, x) in &basis[i] {
            *acc.entry(*idx).or_insert_with(BigRational::zero) += &c * BigRational::from_integer(x.clone());
        }
    }
    let alpha: QVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x * &scale)).collect();
    let alpha = PolyTensorField::from_vector(f.n, f.dim, p, q, f.variance, &alpha)?;
    Ok(alpha)
}
