//! Homogeneous blocks `(p, q)` of `Ω_N(R^D)` with polynomial coefficients, and the
//! integer operators between them.
//!
//! A block vector is indexed by `coordinate id * #monomials + monomial id`.
//! Operators return integer vectors proportional to the true image; the
//! proportionality factor depends only on the block, see [`d_scale`].

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diagrams::Diagram;
use crate::linalg::{self, IVec};
use crate::memo::Memo;
use crate::poly::{monomials, Monomials};
use crate::tensor::coords::{extension_stencil, projector, schur_basis_vectors, shape_coords, ShapeCoords};

#[derive(Clone, Debug)]
pub struct Block {
    pub n: usize,
    pub dim: usize,
    pub p: usize,
    pub q: usize,
    pub shape: Diagram,
    pub coords: Arc<ShapeCoords>,
    pub monos: Arc<Monomials>,
}

impl Block {
    pub fn new(n: usize, dim: usize, p: usize, q: usize) -> Block {
        let shape = Diagram::max_diagram(n, p).expect("order at least 2");
        let coords = shape_coords(&shape, dim);
        Block { n, dim, p, q, shape, coords, monos: monomials(dim, q) }
    }

    /// The block at `(p, q)` if both degrees are admissible; tensor degrees above
    /// `(N-1)D` give empty blocks.
    pub fn checked(n: usize, dim: usize, p: isize, q: isize) -> Option<Block> {
        if p < 0 || q < 0 || p as usize > (n - 1) * dim {
            return None;
        }
        Some(Block::new(n, dim, p as usize, q as usize))
    }

    pub fn len(&self) -> usize {
        self.coords.len() * self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, coord: usize, mono: usize) -> usize {
        coord * self.monos.len() + mono
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.monos.len(), i % self.monos.len())
    }

    /// Dimension of the block of `Ω^p_N` with degree-`q` coefficients.
    pub fn schur_len(&self) -> usize {
        self.shape.schur_dim(self.dim) as usize * self.monos.len()
    }

    /// Basis: Schur basis tensors times monomials, ordered by tensor then monomial.
    pub fn basis(&self) -> Arc<Vec<IVec>> {
        block_basis(self.n, self.dim, self.p, self.q)
    }
}

static BASES: Memo<(usize, usize, usize, usize), Vec<IVec>> = Memo::new();

pub fn block_basis(n: usize, dim: usize, p: usize, q: usize) -> Arc<Vec<IVec>> {
    BASES.get_or_build(&(n, dim, p, q), || {
        let b = Block::new(n, dim, p, q);
        let schur = schur_basis_vectors(&b.shape, dim);
        let mut out = Vec::with_capacity(schur.len() * b.monos.len());
        for v in schur.iter() {
            for m in 0..b.monos.len() {
                out.push(v.iter().map(|(c, x)| (b.index(*c, m), x.clone())).collect());
            }
        }
        out
    })
}

/// True `d` on block `(p, ·)` equals `d_scale(n, dim, p)` times [`d_int`].
pub fn d_scale(n: usize, dim: usize, p: usize) -> BigRational {
    if p + 1 > (n - 1) * dim {
        return BigRational::one();
    }
    let st = extension_stencil(n, dim, p);
    let sign = if p.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    BigRational::new(sign, st.norm.clone())
}

/// `λ(-1)^p d` on a vector of block `(p, q)`, landing in block `(p+1, q-1)`.
pub fn d_int(n: usize, dim: usize, p: usize, q: usize, v: &IVec) -> IVec {
    if q == 0 || p + 1 > (n - 1) * dim || v.is_empty() {
        return Vec::new();
    }
    let src = Block::new(n, dim, p, q);
    let dst = Block::new(n, dim, p + 1, q - 1);
    let st = extension_stencil(n, dim, p);
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    let mut e = vec![0u32; dim];
    for (i, x) in v {
        let (c, m) = src.split(*i);
        e.copy_from_slice(&src.monos.list[m]);
        for mu in 0..dim {
            let k = e[mu];
            if k == 0 {
                continue;
            }
            e[mu] -= 1;
            let m2 = dst.monos.id(&e).expect("lowered monomial");
            e[mu] += 1;
            let xk = x * BigInt::from(k);
            for &(o, coef) in st.scatter_of(c, mu) {
                *acc.entry(dst.index(o, m2)).or_insert_with(BigInt::zero) += &xk * coef;
            }
        }
    }
    let mut out: IVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    out.sort_unstable_by_key(|(i, _)| *i);
    out
}

/// `d^k` up to a nonzero factor, from block `(p, q)`.
pub fn d_power_int(n: usize, dim: usize, p: usize, q: usize, k: usize, v: &IVec) -> IVec {
    let mut cur = v.clone();
    for j in 0..k {
        if q < j + 1 {
            return Vec::new();
        }
        cur = d_int(n, dim, p + j, q - j, &cur);
        if cur.is_empty() {
            break;
        }
    }
    cur
}

/// Product of the scales of `k` successive differentials starting at degree `p`.
pub fn d_power_scale(n: usize, dim: usize, p: usize, k: usize) -> BigRational {
    (0..k).map(|j| d_scale(n, dim, p + j)).fold(BigRational::one(), |a, b| a * b)
}

/// Images under `d^k` of the basis of block `(p, q)`.
pub fn d_power_images(n: usize, dim: usize, p: usize, q: usize, k: usize) -> Vec<IVec> {
    block_basis(n, dim, p, q).iter().map(|v| d_power_int(n, dim, p, q, k, v)).collect()
}

/// `λ·𝐘` applied slice by slice on a block vector.
pub fn project_int(block: &Block, v: &IVec) -> IVec {
    let pr = projector(&block.shape, block.dim);
    let nm = block.monos.len();
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    for (i, x) in v {
        let (c, m) = (i / nm, i % nm);
        for &(o, coef) in &pr.cols[c] {
            *acc.entry(o * nm + m).or_insert_with(BigInt::zero) += x * coef;
        }
    }
    let mut out: IVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    out.sort_unstable_by_key(|(i, _)| *i);
    out
}

pub fn projector_norm(block: &Block) -> BigInt {
    projector(&block.shape, block.dim).norm.clone()
}

/// Rank of a list of vectors (convenience re-export for block computations).
pub fn rank(vs: &[IVec]) -> usize {
    linalg::rank(vs.iter())
}
