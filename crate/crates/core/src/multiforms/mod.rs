//! Multiforms: polynomial elements of the `(N-1)`-fold tensor product of exterior
//! algebras, with anticommuting differentials `d_1, …, d_(N-1)`.
//!
//! A basis monomial is `f d_1x^(I_1) … d_(N-1)x^(I_(N-1))` with each `I_j` strictly
//! increasing and the generators written slot by slot.

mod pi;
mod theorem2;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{IVec, QVec};
use crate::memo::Memo;
use crate::poly::{degree as poly_degree_of, monomials, Exponent, Monomials};

pub use pi::{embed, green_factor, green_factor_block, lemma4_check, project_pi, well_filled_identity, GreenBlock, Lemma4Block};
pub use theorem2::{multidegrees, relative_cohomology_check, theorem2_all, theorem2_check, RankCertificate, RankRow};

/// Polynomial order of a multiform; the zero multiform has infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

pub type SlotKey = Vec<Vec<u8>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiform {
    pub n: usize,
    pub dim: usize,
    pub degrees: Vec<usize>,
    entries: BTreeMap<(SlotKey, Exponent), BigRational>,
}

impl Multiform {
    pub fn zero(n: usize, dim: usize, degrees: Vec<usize>) -> Result<Multiform> {
        if n < 2 {
            return Err(Error::InvalidOrder(n));
        }
        if degrees.len() != n - 1 {
            return Err(Error::ShapeMismatch(format!("{} slot degrees for N = {n}", degrees.len())));
        }
        if let Some(&a) = degrees.iter().find(|&&a| a > dim) {
            return Err(Error::DegreeOutOfRange { degree: a, max: dim });
        }
        Ok(Multiform { n, dim, degrees, entries: BTreeMap::new() })
    }

    /// Adds `value · x^exp · d_1x^(slots[0]) …`, where each slot list may be in any order;
    /// it is sorted with the antisymmetry sign.
    pub fn add_term(&mut self, slots: &[Vec<u8>], exp: &[u32], value: &BigRational) -> Result<()> {
        if slots.len() != self.n - 1 {
            return Err(Error::ShapeMismatch(format!("{} slots for N = {}", slots.len(), self.n)));
        }
        if exp.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: exp.len() });
        }
        let mut key = Vec::with_capacity(slots.len());
        let mut sign = 1i64;
        for (i, s) in slots.iter().enumerate() {
            if s.len() != self.degrees[i] {
                return Err(Error::DegreeMismatch { expected: self.degrees[i], found: s.len() });
            }
            if let Some(&bad) = s.iter().find(|&&x| x as usize >= self.dim) {
                return Err(Error::IndexOutOfRange { index: bad as usize, dim: self.dim });
            }
            let mut v: Vec<usize> = s.iter().map(|&x| x as usize).collect();
            match crate::perm::sort_with_sign(&mut v) {
                Some(sg) => sign *= sg,
                None => return Ok(()),
            }
            key.push(v.into_iter().map(|x| x as u8).collect());
        }
        let k = (key, exp.to_vec());
        let e = self.entries.entry(k.clone()).or_insert_with(BigRational::zero);
        if sign > 0 {
            *e += value;
        } else {
            *e -= value;
        }
        if e.is_zero() {
            self.entries.remove(&k);
        }
        Ok(())
    }

    pub fn get(&self, slots: &[Vec<u8>], exp: &[u32]) -> BigRational {
        self.entries.get(&(slots.to_vec(), exp.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(SlotKey, Exponent), &BigRational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Minimum polynomial degree of the terms.
    pub fn order(&self) -> Order {
        self.entries.keys().map(|(_, e)| poly_degree_of(e)).min().map_or(Order::Infinite, Order::Finite)
    }

    /// The common polynomial degree, if all terms share one.
    pub fn poly_degree(&self) -> Option<usize> {
        let mut it = self.entries.keys().map(|(_, e)| poly_degree_of(e));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Multiform) -> Result<Multiform> {
        if self.n != other.n || self.dim != other.dim || self.degrees != other.degrees {
            return Err(Error::ShapeMismatch("multiforms of different multidegree".into()));
        }
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

    pub fn scaled(&self, c: &BigRational) -> Multiform {
        let mut out = self.clone();
        if c.is_zero() {
            out.entries.clear();
        } else {
            out.entries.values_mut().for_each(|v| *v *= c);
        }
        out
    }

    /// `self = c · other` for some `c`, when `other` is nonzero.
    pub fn ratio_to(&self, other: &Multiform) -> Option<BigRational> {
        let (k, v) = other.entries.iter().next()?;
        let c = self.entries.get(k).cloned().unwrap_or_else(BigRational::zero) / v;
        (other.scaled(&c) == *self).then_some(c)
    }

    fn block(&self, q: usize) -> MultiBlock {
        MultiBlock::new(self.n, self.dim, &self.degrees, q)
    }

    /// Coordinates in the block of the common polynomial degree `q`.
    pub fn to_vector(&self, q: usize) -> Result<QVec> {
        let b = self.block(q);
        self.entries
            .iter()
            .map(|((s, e), v)| {
                let m = b.monos.id(e).ok_or(Error::DegreeMismatch { expected: q, found: poly_degree_of(e) })?;
                Ok((b.index(b.slot_id(s), m), v.clone()))
            })
            .collect()
    }

    pub fn from_vector(n: usize, dim: usize, degrees: &[usize], q: usize, v: &QVec) -> Result<Multiform> {
        let mut w = Multiform::zero(n, dim, degrees.to_vec())?;
        let b = MultiBlock::new(n, dim, degrees, q);
        for (i, x) in v {
            if x.is_zero() {
                continue;
            }
            let (s, m) = b.split(*i);
            w.entries.insert((b.slot_key(s), b.monos.list[m].clone()), x.clone());
        }
        Ok(w)
    }
}

/// `d_i` (slots numbered from 1).
pub fn d_i(i: usize, w: &Multiform) -> Result<Multiform> {
    if i == 0 || i > w.n - 1 {
        return Err(Error::SlotOutOfRange { slot: i, max: w.n - 1 });
    }
    let s = i - 1;
    let mut degrees = w.degrees.clone();
    degrees[s] += 1;
    let mut out = Multiform { n: w.n, dim: w.dim, degrees, entries: BTreeMap::new() };
    if out.degrees[s] > w.dim {
        return Ok(out);
    }
    let before: usize = w.degrees[..s].iter().sum();
    for ((slots, exp), x) in &w.entries {
        for mu in 0..w.dim {
            let k = exp[mu];
            if k == 0 || slots[s].contains(&(mu as u8)) {
                continue;
            }
            let below = slots[s].iter().filter(|&&nu| (nu as usize) < mu).count();
            let sign = if (before + below).is_multiple_of(2) { 1 } else { -1 };
            let mut ns = slots.clone();
            ns[s].insert(below, mu as u8);
            let mut e = exp.clone();
            e[mu] -= 1;
            let v = x * BigRational::from_integer(BigInt::from(sign * k as i64));
            let key = (ns, e);
            let slot = out.entries.entry(key.clone()).or_insert_with(BigRational::zero);
            *slot += v;
            if slot.is_zero() {
                out.entries.remove(&key);
            }
        }
    }
    Ok(out)
}

/// Homogeneous block of multiforms of a fixed multidegree and polynomial degree.
/// Vector index is `slot id * #monomials + monomial id`, the slot id being mixed radix
/// over the per-slot subset lists (first slot most significant).
#[derive(Clone, Debug)]
pub struct MultiBlock {
    pub n: usize,
    pub dim: usize,
    pub degrees: Vec<usize>,
    pub q: usize,
    subsets: Vec<Arc<Subsets>>,
    radix: Vec<usize>,
    pub monos: Arc<Monomials>,
}

#[derive(Debug)]
struct Subsets {
    list: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

static SUBSETS: Memo<(usize, usize), Subsets> = Memo::new();

fn subsets(dim: usize, k: usize) -> Arc<Subsets> {
    SUBSETS.get_or_build(&(dim, k), || {
        fn go(dim: usize, k: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..dim {
                cur.push(i as u8);
                go(dim, k, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut list = Vec::new();
        go(dim, k, 0, &mut Vec::new(), &mut list);
        let index = list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Subsets { list, index }
    })
}

impl MultiBlock {
    pub fn new(n: usize, dim: usize, degrees: &[usize], q: usize) -> MultiBlock {
        let subsets: Vec<Arc<Subsets>> = degrees.iter().map(|&a| subsets(dim, a)).collect();
        let mut radix = vec![1usize; degrees.len()];
        for s in (0..degrees.len().saturating_sub(1)).rev() {
            radix[s] = radix[s + 1] * subsets[s + 1].list.len();
        }
        MultiBlock { n, dim, degrees: degrees.to_vec(), q, subsets, radix, monos: monomials(dim, q) }
    }

    /// The block at shifted degrees, if all slot degrees stay within `0..=D`.
    pub fn shifted(&self, slot_shift: &[isize], q_shift: isize) -> Option<MultiBlock> {
        let mut degrees = Vec::with_capacity(self.degrees.len());
        for (a, s) in self.degrees.iter().zip(slot_shift) {
            let v = *a as isize + s;
            if v < 0 || v as usize > self.dim {
                return None;
            }
            degrees.push(v as usize);
        }
        let q = self.q as isize + q_shift;
        (q >= 0).then(|| MultiBlock::new(self.n, self.dim, &degrees, q as usize))
    }

    pub fn num_slot_keys(&self) -> usize {
        self.subsets.iter().map(|s| s.list.len()).product()
    }

    pub fn len(&self) -> usize {
        self.num_slot_keys() * self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, slot: usize, mono: usize) -> usize {
        slot * self.monos.len() + mono
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.monos.len(), i % self.monos.len())
    }

    pub fn slot_id(&self, key: &[Vec<u8>]) -> usize {
        key.iter().enumerate().map(|(s, set)| self.subsets[s].index[set] * self.radix[s]).sum()
    }

    pub fn slot_key(&self, mut id: usize) -> SlotKey {
        let mut out = Vec::with_capacity(self.degrees.len());
        for s in 0..self.degrees.len() {
            out.push(self.subsets[s].list[id / self.radix[s]].clone());
            id %= self.radix[s];
        }
        out
    }

    /// Unit vectors of the block.
    pub fn basis(&self) -> Vec<IVec> {
        (0..self.len()).map(|i| vec![(i, BigInt::from(1))]).collect()
    }
}

/// `d_i` on a block vector, landing in the block with slot `i` raised and `q` lowered.
pub fn d_i_int(b: &MultiBlock, i: usize, v: &IVec) -> IVec {
    let s = i - 1;
    let Some(dst) = b.shifted(&unit(b.degrees.len(), s, 1), -1) else { return Vec::new() };
    let before: usize = b.degrees[..s].iter().sum();
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    for (idx, x) in v {
        let (sid, m) = b.split(*idx);
        let key = b.slot_key(sid);
        let exp = &b.monos.list[m];
        for mu in 0..b.dim {
            let k = exp[mu];
            if k == 0 || key[s].contains(&(mu as u8)) {
                continue;
            }
            let below = key[s].iter().filter(|&&nu| (nu as usize) < mu).count();
            let mut nk = key.clone();
            nk[s].insert(below, mu as u8);
            let mut e = exp.clone();
            e[mu] -= 1;
            let coef = if (before + below).is_multiple_of(2) { x * BigInt::from(k) } else { -(x * BigInt::from(k)) };
            let o = dst.index(dst.slot_id(&nk), dst.monos.id(&e).expect("lowered"));
            *acc.entry(o).or_insert_with(BigInt::zero) += coef;
        }
    }
    let mut out: IVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    out.sort_unstable_by_key(|(i, _)| *i);
    out
}

/// `∏_{j ∈ set} d_j` applied in increasing slot order; returns the image and its block.
pub fn d_product_int(b: &MultiBlock, set: &[usize], v: &IVec) -> Option<(MultiBlock, IVec)> {
    let mut cur_b = b.clone();
    let mut cur = v.clone();
    for &j in set {
        let next = cur_b.shifted(&unit(b.degrees.len(), j - 1, 1), -1)?;
        cur = d_i_int(&cur_b, j, &cur);
        cur_b = next;
    }
    Some((cur_b, cur))
}

pub(crate) fn unit(len: usize, s: usize, x: isize) -> Vec<isize> {
    let mut v = vec![0isize; len];
    v[s] = x;
    v
}

#[cfg(test)]
pub(crate) fn int_to_multiform(b: &MultiBlock, factor: &BigRational, v: &IVec) -> Multiform {
    Multiform::from_vector(b.n, b.dim, &b.degrees, b.q, &crate::linalg::to_rational(v, factor)).expect("valid block")
}
