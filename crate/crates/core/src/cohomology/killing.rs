//! Symmetric tensor fields annihilated by the symmetrized `k`-th derivative.

use num_bigint::BigInt;

use crate::diagrams::binomial;
use crate::linalg::{self, IVec};
use crate::poly::monomials;

/// Sorted index multisets of size `m` over `0..dim`.
pub(crate) fn multisets(dim: usize, m: usize) -> Vec<Vec<u8>> {
    fn go(dim: usize, m: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i as u8);
            go(dim, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dim, m, 0, &mut Vec::with_capacity(m), &mut out);
    out
}

fn counts(dim: usize, s: &[u8]) -> Vec<u32> {
    let mut c = vec![0u32; dim];
    for &i in s {
        c[i as usize] += 1;
    }
    c
}

/// Dimension of the space of symmetric degree-`m` tensor fields with homogeneous
/// degree-`q` polynomial coefficients whose fully symmetrized `k`-th derivative vanishes.
///
/// The symmetrized derivative of the basis field `x^e` at the slot multiset `A` has, at
/// the target multiset `A + B` (`#B = k`), the value `∏_ν C(a_ν + b_ν, a_ν) ∂^B x^e` up to
/// the common factor `m! k!`.
pub fn killing_dim(dim: usize, m: usize, k: usize, q: usize) -> usize {
    let slots = multisets(dim, m);
    let src = monomials(dim, q);
    let domain = slots.len() * src.len();
    if q < k {
        return domain;
    }
    let targets = multisets(dim, m + k);
    let target_index: std::collections::HashMap<Vec<u32>, usize> =
        targets.iter().enumerate().map(|(i, t)| (counts(dim, t), i)).collect();
    let dst = monomials(dim, q - k);
    let derivs = multisets(dim, k);
    let mut images: Vec<IVec> = Vec::with_capacity(domain);
    for a in &slots {
        let ca = counts(dim, a);
        for e in &src.list {
            let mut v = Vec::new();
            for b in &derivs {
                let cb = counts(dim, b);
                if (0..dim).any(|i| cb[i] > e[i]) {
                    continue;
                }
                // ∂^B x^e = (∏ e_i! / (e_i - b_i)!) x^(e - b)
                let mut coef = BigInt::from(1u32);
                let mut rest = e.clone();
                for i in 0..dim {
                    for t in 0..cb[i] {
                        coef *= e[i] - t;
                    }
                    rest[i] -= cb[i];
                    coef *= binomial((ca[i] + cb[i]) as usize, ca[i] as usize);
                }
                let sum: Vec<u32> = (0..dim).map(|i| ca[i] + cb[i]).collect();
                let t = target_index[&sum];
                let mono = dst.id(&rest).expect("lowered monomial");
                v.push((t * dst.len() + mono, coef));
            }
            images.push(linalg::from_entries(v));
        }
    }
    domain - linalg::rank(images.iter())
}
