//! Degree-3 cocycles of the 3-complex built from 2-forms.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::block;
use crate::fields::{nabla, n_diff, PolyTensorField};
use crate::linalg;
use crate::tensor::Variance;

#[derive(Clone, Debug)]
pub struct CocycleReport {
    pub t: PolyTensorField,
    pub closed: bool,
    /// Whether `t` lies in `d²` of the degree-1 block, i.e. is zero in `H^3_(1)`.
    pub trivial: bool,
}

#[derive(Serialize)]
struct Summary {
    closed: bool,
    trivial: bool,
    nonzero: bool,
}

impl CocycleReport {
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(Summary { closed: self.closed, trivial: self.trivial, nonzero: !self.t.is_zero() })
            .expect("serializable")
    }
}

/// `t = 𝐘_(2,1)(∇ω)` for a 2-form `ω` (given as a degree-2 field of the 2-complex),
/// with `ω` filling the first column and the derivative the second.
pub fn cocycle_from_two_form(omega: &PolyTensorField) -> Result<CocycleReport> {
    if omega.n != 2 || omega.degree != 2 || omega.variance != Variance::Co {
        return Err(Error::ShapeMismatch("expected a covariant 2-form (degree-2 field of the 2-complex)".into()));
    }
    let dim = omega.dim;
    let q = omega.poly_degree;
    let out_q = q.saturating_sub(1);
    if dim < 2 {
        return Err(Error::Precondition("2-forms need D ≥ 2".into()));
    }
    let mut t = PolyTensorField::zero(3, dim, 3, out_q, Variance::Co)?;
    if q > 0 {
        // ∇ω carries the derivative in its last slot, which is the second column of (2,1)
        let raw = nabla(omega);
        let b = t.block();
        let mut acc = linalg::QVec::new();
        for ((idx, exp), x) in &raw.entries {
            let j = [idx[0], idx[1], idx[2]];
            let Some((c, s)) = b.coords.normalize(&j) else { continue };
            let m = b.monos.id(exp).expect("homogeneous");
            let e = acc.entry(b.index(c, m)).or_insert_with(BigRational::zero);
            if s > 0 {
                *e += x;
            } else {
                *e -= x;
            }
        }
        acc.retain(|_, x| !x.is_zero());
        t = PolyTensorField::from_vector(3, dim, 3, out_q, Variance::Co, &acc)?.young_projected();
    }
    let closed = n_diff(&t).is_zero();
    let trivial = if t.is_zero() {
        true
    } else {
        let (_, v) = t.to_int();
        let images = block::d_power_images(3, dim, 1, out_q + 2, 2);
        linalg::solve(&images, &v).is_some()
    };
    Ok(CocycleReport { t, closed, trivial })
}
