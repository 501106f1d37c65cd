//! Sparse exact linear algebra over the integers and rationals.
//!
//! Vectors are sorted `(index, value)` lists without zeros. Elimination is
//! fraction-free: rows stay primitive integer vectors, so no rational
//! arithmetic happens inside the rank loops.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IVec = Vec<(usize, BigInt)>;
pub type QVec = BTreeMap<usize, BigRational>;

/// `a*v + b*w` merged over sorted supports.
pub fn combine(a: &BigInt, v: &IVec, b: &BigInt, w: &IVec) -> IVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j == w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if i == v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, b * &w[j].1));
            j += 1;
        } else {
            let x = a * &v[i].1 + b * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn content(v: &IVec) -> BigInt {
    let mut g = BigInt::zero();
    for (_, x) in v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide(v: &mut IVec, g: &BigInt) {
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in v.iter_mut() {
        *x /= g;
    }
}

/// Divides out the content and makes the leading entry positive.
pub fn make_primitive(v: &mut IVec) {
    let mut g = content(v);
    if v.first().map(|(_, x)| x.is_negative()).unwrap_or(false) {
        g = -g;
    }
    divide(v, &g);
}

/// Builds a sorted sparse vector from unsorted entries, summing duplicates.
pub fn from_entries(entries: impl IntoIterator<Item = (usize, BigInt)>) -> IVec {
    let mut map: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (i, x) in entries {
        *map.entry(i).or_insert_with(BigInt::zero) += x;
    }
    map.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn scale(v: &IVec, a: &BigInt) -> IVec {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * a)).collect()
}

/// Writes a rational vector as `factor * integer vector` with a primitive integer part.
pub fn to_integer(q: &QVec) -> (BigRational, IVec) {
    let mut lcm = BigInt::one();
    for x in q.values() {
        lcm = lcm.lcm(x.denom());
    }
    let mut v: IVec = q
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (*i, x.numer() * (&lcm / x.denom())))
        .collect();
    let g = content(&v);
    if g.is_zero() {
        return (BigRational::one(), v);
    }
    divide(&mut v, &g);
    (BigRational::new(g, lcm), v)
}

pub fn to_rational(v: &IVec, factor: &BigRational) -> QVec {
    v.iter()
        .map(|(i, x)| (*i, factor * BigRational::from_integer(x.clone())))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Echelon form keyed by leading index. Rows are primitive.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<usize, IVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates leading entries until the lead is not a pivot. The result is zero
    /// exactly when `v` lies in the span.
    pub fn reduce(&self, mut v: IVec) -> IVec {
        while let Some((lead, a)) = v.first().cloned() {
            let Some(p) = self.rows.get(&lead) else { break };
            let b = &p[0].1;
            let g = a.gcd(b);
            v = combine(&(b / &g), &v, &(-(a / &g)), p);
            let c = content(&v);
            divide(&mut v, &c);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: IVec) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        make_primitive(&mut r);
        self.rows.insert(r[0].0, r);
        true
    }

    pub fn contains(&self, v: &IVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

pub fn rank<'a>(vectors: impl IntoIterator<Item = &'a IVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Echelon form that remembers each row as a combination of the inserted vectors.
#[derive(Clone, Debug, Default)]
struct Tagged {
    rows: HashMap<usize, (IVec, IVec)>,
}

impl Tagged {
    /// Inserts `main` with coordinate tag `tag`. When `main` is dependent, returns the
    /// relation among inserted vectors (a tag combination with zero image).
    fn insert(&mut self, mut main: IVec, mut tag: IVec) -> Option<IVec> {
        while let Some((lead, a)) = main.first().cloned() {
            let Some((pm, pt)) = self.rows.get(&lead) else { break };
            let b = &pm[0].1;
            let g = a.gcd(b);
            let (x, y) = (b / &g, -(a / &g));
            main = combine(&x, &main, &y, pm);
            tag = combine(&x, &tag, &y, pt);
            let c = content(&main).gcd(&content(&tag));
            divide(&mut main, &c);
            divide(&mut tag, &c);
        }
        if main.is_empty() {
            make_primitive(&mut tag);
            return Some(tag);
        }
        self.rows.insert(main[0].0, (main, tag));
        None
    }
}

/// Basis of `{c : Σ c_j images[j] = 0}` as primitive integer vectors.
pub fn kernel(images: &[IVec]) -> Vec<IVec> {
    let mut t = Tagged::default();
    let mut out = Vec::new();
    for (j, v) in images.iter().enumerate() {
        if let Some(rel) = t.insert(v.clone(), vec![(j, BigInt::one())]) {
            out.push(rel);
        }
    }
    out
}

/// Finds rational `c` with `Σ c_j images[j] = target`, if one exists.
pub fn solve(images: &[IVec], target: &IVec) -> Option<QVec> {
    let mut t = Tagged::default();
    for (j, v) in images.iter().enumerate() {
        t.insert(v.clone(), vec![(j, BigInt::one())]);
    }
    let marker = images.len();
    let rel = t.insert(target.clone(), vec![(marker, BigInt::one())])?;
    // rel: Σ r_j images[j] + r_marker * target = 0
    let r_marker = rel.iter().find(|(i, _)| *i == marker).map(|(_, x)| x.clone())?;
    let denom = -r_marker;
    Some(
        rel.iter()
            .filter(|(i, _)| *i != marker)
            .map(|(i, x)| (*i, BigRational::new(x.clone(), denom.clone())))
            .collect(),
    )
}

/// Elements of span(`vectors`) mapped back to coordinates: `Σ coeffs[j] * vectors[j]`.
pub fn combination(vectors: &[IVec], coeffs: &IVec) -> IVec {
    let mut acc: IVec = Vec::new();
    for (j, c) in coeffs {
        acc = combine(&BigInt::one(), &acc, c, &vectors[*j]);
    }
    acc
}

/// `dim(A) + dim(B) - dim(A + B)`.
pub fn intersection_dim(a: &[IVec], b: &[IVec]) -> usize {
    let ra = rank(a.iter());
    let rb = rank(b.iter());
    let rab = rank(a.iter().chain(b.iter()));
    ra + rb - rab
}

/// Whether span(`sub`) ⊆ span(`sup`).
pub fn span_contains(sup: &[IVec], sub: &[IVec]) -> bool {
    let mut e = Echelon::new();
    for v in sup {
        e.insert(v.clone());
    }
    sub.iter().all(|v| e.contains(v))
}
