//! The right action of the tensor algebra on `∧_N E` and the associative quotient
//! `∧_[N]E = T(E) / Ker λ_N`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::linalg::{self, IVec, QVec};
use crate::memo::Memo;
use crate::perm::all_permutations;
use crate::probe::Probe;
use crate::tensor::coords::{extension_stencil, schur_basis_vectors, shape_coords};
use crate::tensor::{satisfies_schur_conditions, Tensor, Variance};

/// A homogeneous element of `∧_N E`, stored on the column-strict coordinates of `Y^N_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub n: usize,
    pub dim: usize,
    pub degree: usize,
    coeffs: QVec,
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    Ok(())
}

impl Element {
    /// The generator `ω_0` of degree 0.
    pub fn unit(n: usize, dim: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Element { n, dim, degree: 0, coeffs: [(0, BigRational::one())].into_iter().collect() })
    }

    pub fn zero(n: usize, dim: usize, degree: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Element { n, dim, degree, coeffs: QVec::new() })
    }

    /// An element from a tensor of shape `Y^N_p` satisfying the Schur conditions.
    pub fn from_tensor(n: usize, t: &Tensor) -> Result<Self> {
        check_order(n)?;
        let shape = Diagram::max_diagram(n, t.degree)?;
        if t.degree > (n - 1) * t.dim {
            return Err(Error::DegreeOutOfRange { degree: t.degree, max: (n - 1) * t.dim });
        }
        if !satisfies_schur_conditions(&shape, t) {
            return Err(Error::Precondition(format!("tensor is not in the Schur module of {shape}")));
        }
        Ok(Element { n, dim: t.dim, degree: t.degree, coeffs: t.to_coords(&shape)? })
    }

    pub fn to_tensor(&self) -> Result<Tensor> {
        let shape = Diagram::max_diagram(self.n, self.degree)?;
        Ok(Tensor::from_coords(&shape, self.dim, Variance::Contra, &self.coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &QVec {
        &self.coeffs
    }

    fn top(&self) -> usize {
        (self.n - 1) * self.dim
    }

    /// `T v = 𝐘_{p+1}(T ⊗ v)`.
    pub fn times(&self, v: &[BigRational]) -> Result<Element> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        let degree = self.degree + 1;
        if degree > self.top() || self.is_zero() {
            return Ok(Element { n: self.n, dim: self.dim, degree, coeffs: QVec::new() });
        }
        let st = extension_stencil(self.n, self.dim, self.degree);
        let lam = BigRational::from_integer(st.norm.clone());
        let mut out = QVec::new();
        for (mu, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let r = st.right.id(&[mu as u8]).expect("single index");
            for (l, c) in &self.coeffs {
                let w = c * x / &lam;
                for &(o, s) in st.scatter_of(*l, r) {
                    *out.entry(o).or_insert_with(BigRational::zero) += &w * BigRational::from_integer(s.into());
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        Ok(Element { n: self.n, dim: self.dim, degree, coeffs: out })
    }
}

/// `T λ(X_1 ⊗ … ⊗ X_n) = (⋯(T X_1)⋯) X_n`; zero past the top degree.
pub fn act(t: &Element, word: &[Vec<BigRational>]) -> Result<Element> {
    let mut cur = t.clone();
    for v in word {
        cur = cur.times(v)?;
    }
    Ok(cur)
}

/// Unnormalized action of `e_mu` on an integer coordinate vector of degree `p`.
fn times_int(n: usize, dim: usize, p: usize, v: &IVec, mu: usize) -> IVec {
    let st = extension_stencil(n, dim, p);
    let r = st.right.id(&[mu as u8]).expect("single index");
    linalg::from_entries(
        v.iter().flat_map(|(l, x)| st.scatter_of(*l, r).iter().map(move |&(o, s)| (o, x * BigInt::from(s)))),
    )
}

/// Basis words of length `len` in mixed radix `dim`, most significant letter first.
fn word_letters(dim: usize, len: usize, mut id: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for k in (0..len).rev() {
        out[k] = id % dim;
        id /= dim;
    }
    out
}

fn word_id(dim: usize, letters: &[usize]) -> usize {
    letters.iter().fold(0, |acc, &l| acc * dim + l)
}

/// For every basis word of length `len`, its action on every Schur basis vector of
/// every source degree, concatenated into one integer vector. The action is scaled
/// per source degree by a constant common to all words, so kernels are unaffected.
static ACTIONS: Memo<(usize, usize, usize), Vec<IVec>> = Memo::new();

fn action_vectors(n: usize, dim: usize, len: usize) -> std::sync::Arc<Vec<IVec>> {
    ACTIONS.get_or_build(&(n, dim, len), || {
        let top = (n - 1) * dim;
        let mut sources: Vec<(usize, IVec, usize)> = Vec::new();
        let mut offset = 0;
        if len <= top {
            for p in 0..=top - len {
                let out_len = shape_coords(&Diagram::max_diagram(n, p + len).expect("order"), dim).len();
                for b in schur_basis_vectors(&Diagram::max_diagram(n, p).expect("order"), dim).iter() {
                    sources.push((p, b.clone(), offset));
                    offset += out_len;
                }
            }
        }
        (0..dim.pow(len as u32))
            .into_par_iter()
            .map(|w| {
                let letters = word_letters(dim, len, w);
                let mut out = IVec::new();
                for (p, b, off) in &sources {
                    let mut cur = b.clone();
                    for (k, &mu) in letters.iter().enumerate() {
                        cur = times_int(n, dim, p + k, &cur, mu);
                        if cur.is_empty() {
                            break;
                        }
                    }
                    out.extend(cur.into_iter().map(|(i, x)| (i + off, x)));
                }
                out
            })
            .collect()
    })
}

/// Image under `λ` of a tensor of `T^len(E)` given on the basis words.
fn action_of(n: usize, dim: usize, len: usize, tensor: &IVec) -> IVec {
    linalg::combination(&action_vectors(n, dim, len), tensor)
}

/// `dim Ker λ_N` in tensor degree `len`.
pub fn kernel_dim(n: usize, dim: usize, len: usize) -> Result<usize> {
    check_order(n)?;
    let words = action_vectors(n, dim, len);
    Ok(words.len() - linalg::rank(words.iter()))
}

/// Symmetrization of the basis word `letters` over the positions `slots`.
fn symmetrized(dim: usize, letters: &[usize], slots: &[usize]) -> IVec {
    let mut acc: Vec<(usize, BigInt)> = Vec::new();
    for perm in all_permutations(slots.len()) {
        let mut w = letters.to_vec();
        for (k, &s) in slots.iter().enumerate() {
            w[s] = letters[slots[perm[k]]];
        }
        acc.push((word_id(dim, &w), BigInt::one()));
    }
    linalg::from_entries(acc)
}

/// `Σ_{σ ∈ S_N} θ^{μ_σ(1)} ⋯ θ^{μ_σ(N)}` acts as zero for every choice of indices.
pub fn symmetric_power_vanishes(n: usize, dim: usize) -> Result<bool> {
    check_order(n)?;
    let slots: Vec<usize> = (0..n).collect();
    Ok((0..dim.pow(n as u32)).all(|w| action_of(n, dim, n, &symmetrized(dim, &word_letters(dim, n, w), &slots)).is_empty()))
}

/// Words of length `len` containing the same random vector at `n` random positions act
/// as zero on every element of every degree.
pub fn repeated_letter_vanishes(n: usize, dim: usize, len: usize, trials: usize, probe: &mut Probe) -> Result<bool> {
    check_order(n)?;
    if len < n {
        return Err(Error::Precondition(format!("a word of length {len} cannot repeat a letter {n} times")));
    }
    let top = (n - 1) * dim;
    for _ in 0..trials {
        let mut positions: Vec<usize> = (0..len).collect();
        // keep n positions chosen by the probe
        while positions.len() > n {
            positions.remove(probe.index(positions.len()));
        }
        let x: Vec<BigRational> = probe.vector(dim).into_iter().map(|c| BigRational::from_integer(c.into())).collect();
        let word: Vec<Vec<BigRational>> = (0..len)
            .map(|k| {
                if positions.contains(&k) {
                    x.clone()
                } else {
                    probe.vector(dim).into_iter().map(|c| BigRational::from_integer(c.into())).collect()
                }
            })
            .collect();
        for p in 0..=top.saturating_sub(len) {
            for b in schur_basis_vectors(&Diagram::max_diagram(n, p)?, dim).iter() {
                let t = Element { n, dim, degree: p, coeffs: linalg::to_rational(b, &BigRational::one()) };
                if !act(&t, &word)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Degree-3 generators `e_a e_b e_c + e_c e_a e_b + e_b e_c e_a` of the cyclic relation.
fn cyclic_relations(dim: usize) -> Vec<IVec> {
    let mut out = Vec::new();
    for w in 0..dim.pow(3) {
        let l = word_letters(dim, 3, w);
        let terms = [[l[0], l[1], l[2]], [l[2], l[0], l[1]], [l[1], l[2], l[0]]];
        out.push(linalg::from_entries(terms.iter().map(|t| (word_id(dim, t), BigInt::one()))));
    }
    out
}

/// Degree-4 generators spanning `{X ⊗ Y ⊗ X ⊗ X}`: symmetrizations over positions 1, 3, 4.
fn xyxx_relations(dim: usize) -> Vec<IVec> {
    (0..dim.pow(4)).map(|w| symmetrized(dim, &word_letters(dim, 4, w), &[0, 2, 3])).collect()
}

/// Whether the cyclic relation and the `XYXX` relation act as zero for `N = 3`.
pub fn three_relations_vanish(dim: usize) -> bool {
    cyclic_relations(dim).iter().all(|r| action_of(3, dim, 3, r).is_empty())
        && xyxx_relations(dim).iter().all(|r| action_of(3, dim, 4, r).is_empty())
}

/// `u ⊗ r ⊗ v` for basis words `u`, `v` of the given lengths.
fn sandwich(dim: usize, left: usize, r: &IVec, rlen: usize, right: usize) -> Vec<IVec> {
    let mut out = Vec::new();
    for u in 0..dim.pow(left as u32) {
        for v in 0..dim.pow(right as u32) {
            let shift = dim.pow((rlen + right) as u32);
            let rs = dim.pow(right as u32);
            out.push(r.iter().map(|(w, x)| (u * shift + w * rs + v, x.clone())).collect());
        }
    }
    out
}

/// Dimension, in tensor degree `len`, of the two-sided ideal generated by the two
/// `N = 3` relation families, and whether it lies in `Ker λ_3`.
pub fn three_relation_ideal(dim: usize, len: usize) -> (usize, bool) {
    let mut gens: Vec<IVec> = Vec::new();
    for (rels, rlen) in [(cyclic_relations(dim), 3), (xyxx_relations(dim), 4)] {
        if len < rlen {
            continue;
        }
        for left in 0..=len - rlen {
            for r in &rels {
                gens.extend(sandwich(dim, left, r, rlen, len - rlen - left));
            }
        }
    }
    let contained = gens.iter().all(|g| action_of(3, dim, len, g).is_empty());
    (linalg::rank(gens.iter()), contained)
}

/// Rank of `{ω_0 λ(w)}` over basis words `w` of length `len`.
pub fn cyclic_rank(n: usize, dim: usize, len: usize) -> Result<usize> {
    check_order(n)?;
    if len > (n - 1) * dim {
        return Ok(0);
    }
    let images: Vec<IVec> = (0..dim.pow(len as u32))
        .map(|w| {
            let mut cur: IVec = vec![(0, BigInt::one())];
            for (k, &mu) in word_letters(dim, len, w).iter().enumerate() {
                cur = times_int(n, dim, k, &cur, mu);
            }
            cur
        })
        .collect();
    Ok(linalg::rank(images.iter()))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub kernel_dim: usize,
    /// Dimension of the relation ideal, for `N = 3`.
    pub ideal_dim: Option<usize>,
    pub ideal_in_kernel: Option<bool>,
    pub cyclic_rank: usize,
    pub schur_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub dim: usize,
    pub degree_cap: usize,
    pub seed: u64,
    pub repeated_letter: bool,
    pub symmetric_power: bool,
    /// The two `N = 3` relation families act as zero.
    pub three_relations: Option<bool>,
    pub rows: Vec<DegreeRow>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.repeated_letter
            && self.symmetric_power
            && self.three_relations.unwrap_or(true)
            && self.rows.iter().all(|r| r.ideal_dim.is_none_or(|d| d == r.kernel_dim)
                    && r.ideal_in_kernel.unwrap_or(true) && r.cyclic_rank == r.schur_dim)
    }
}

/// Relation checks up to tensor degree `degree_cap`; the ideal comparison runs for
/// `N = 3`, `D ≤ 2` only.
pub fn relation_checks(n: usize, dim: usize, degree_cap: usize, seed: u64) -> Result<RelationReport> {
    check_order(n)?;
    let mut probe = Probe::new(seed);
    let repeated_letter = repeated_letter_vanishes(n, dim, n, 4, &mut probe)? && repeated_letter_vanishes(n, dim, n + 1, 4, &mut probe)?;
    let symmetric_power = symmetric_power_vanishes(n, dim)?;
    let three_relations = (n == 3).then(|| three_relations_vanish(dim));
    let top = (n - 1) * dim;
    let mut rows = Vec::new();
    for degree in 0..=degree_cap {
        let schur_dim = if degree <= top { Diagram::max_diagram(n, degree)?.schur_dim(dim) as usize } else { 0 };
        let ideal = (n == 3 && dim <= 2).then(|| three_relation_ideal(dim, degree));
        rows.push(DegreeRow {
            degree,
            kernel_dim: kernel_dim(n, dim, degree)?,
            ideal_dim: ideal.map(|i| i.0),
            ideal_in_kernel: ideal.map(|i| i.1),
            cyclic_rank: cyclic_rank(n, dim, degree)?,
            schur_dim,
        });
    }
    Ok(RelationReport { n, dim, degree_cap, seed, repeated_letter, symmetric_power, three_relations, rows })
}

#[cfg(test)]
mod tests;
