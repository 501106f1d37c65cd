//! The spin-2 complex, spin-S curvatures and the stress-tensor potential.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cohomology::{cohomology_dim, solve_preimage};
use crate::error::{Error, Result};
use crate::fields::block;
use crate::fields::{n_diff, n_diff_power, PolyTensorField};
use crate::linalg::{self, IVec};
use crate::memo::Memo;
use crate::perm::sort_with_sign;
use crate::poly::monomials;
use crate::probe::Probe;
use crate::tensor::Variance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GaugeRole {
    /// `X_μ`, degree 1.
    Vector,
    /// `h_μν`, symmetric, degree 2.
    Metric,
    /// `R_λμ,ρν`, Riemann symmetry, degree 4.
    Curvature,
    /// Left-hand side of the Bianchi identity, degree 5.
    Bianchi,
}

impl GaugeRole {
    pub fn degree(self) -> usize {
        match self {
            GaugeRole::Vector => 1,
            GaugeRole::Metric => 2,
            GaugeRole::Curvature => 4,
            GaugeRole::Bianchi => 5,
        }
    }
}

/// A covariant field of the 3-complex tagged with its place in the spin-2 complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeField {
    pub role: GaugeRole,
    pub field: PolyTensorField,
}

impl GaugeField {
    pub fn new(role: GaugeRole, field: PolyTensorField) -> Result<Self> {
        if field.n != 3 || field.variance != Variance::Co {
            return Err(Error::ShapeMismatch("spin-2 fields are covariant fields of the 3-complex".into()));
        }
        if field.degree != role.degree() {
            return Err(Error::ShapeMismatch(format!("{role:?} has degree {}, got {}", role.degree(), field.degree)));
        }
        Ok(GaugeField { role, field })
    }

    fn expect(&self, role: GaugeRole) -> Result<()> {
        if self.role != role {
            return Err(Error::ShapeMismatch(format!("expected {role:?}, got {:?}", self.role)));
        }
        Ok(())
    }
}

/// Coefficient of `x^e` in `∂_{mus} F_idx`.
fn partial(f: &PolyTensorField, idx: &[u8], e: &[u32], mus: &[u8]) -> BigRational {
    let mut up = e.to_vec();
    let mut c = 1u64;
    for &m in mus {
        up[m as usize] += 1;
        c *= up[m as usize] as u64;
    }
    let v = f.get(idx, &up);
    if v.is_zero() {
        v
    } else {
        v * BigRational::from_integer(c.into())
    }
}

/// Fills every column-strict component of a field of degree `p`, polynomial degree `q`
/// from a component formula.
fn tabulate(
    dim: usize,
    p: usize,
    q: usize,
    mut value: impl FnMut(&[u8], &[u32]) -> BigRational,
) -> Result<PolyTensorField> {
    let mut out = PolyTensorField::zero(3, dim, p, q, Variance::Co)?;
    if p > 2 * dim {
        return Ok(out);
    }
    let b = out.block();
    let monos = monomials(dim, q);
    for idx in &b.coords.coords {
        for e in &monos.list {
            let v = value(idx, e);
            if !v.is_zero() {
                out.set_entry(idx, e, v)?;
            }
        }
    }
    Ok(out)
}

/// `(d_1X)_μν = ∂_μ X_ν + ∂_ν X_μ`.
pub fn spin2_d1(x: &GaugeField) -> Result<GaugeField> {
    x.expect(GaugeRole::Vector)?;
    let f = &x.field;
    let q = f.poly_degree.saturating_sub(1);
    let h = if f.poly_degree == 0 {
        PolyTensorField::zero(3, f.dim, 2, 0, Variance::Co)?
    } else {
        tabulate(f.dim, 2, q, |i, e| partial(f, &[i[1]], e, &[i[0]]) + partial(f, &[i[0]], e, &[i[1]]))?
    };
    GaugeField::new(GaugeRole::Metric, h)
}

/// `(d_2h)_λμ,ρν = ∂_λ∂_ρ h_μν + ∂_μ∂_ν h_λρ − ∂_μ∂_ρ h_λν − ∂_λ∂_ν h_μρ`, with
/// components read in the column order `(λ, μ, ρ, ν)`.
pub fn spin2_d2(h: &GaugeField) -> Result<GaugeField> {
    h.expect(GaugeRole::Metric)?;
    let f = &h.field;
    let r = if f.poly_degree < 2 || f.dim < 2 {
        PolyTensorField::vanishing(3, f.dim, 4, f.poly_degree.saturating_sub(2), Variance::Co)
    } else {
        tabulate(f.dim, 4, f.poly_degree - 2, |i, e| {
            let (l, m, r, n) = (i[0], i[1], i[2], i[3]);
            partial(f, &[m, n], e, &[l, r]) + partial(f, &[l, r], e, &[m, n])
                - partial(f, &[l, n], e, &[m, r])
                - partial(f, &[m, r], e, &[l, n])
        })?
    };
    GaugeField::new(GaugeRole::Curvature, r)
}

/// `(d_3R)_λμν,αβ = ∂_λ R_μν,αβ + ∂_μ R_νλ,αβ + ∂_ν R_λμ,αβ`, components in the column
/// order `(λ, μ, ν, α, β)`.
pub fn spin2_d3(r: &GaugeField) -> Result<GaugeField> {
    r.expect(GaugeRole::Curvature)?;
    let f = &r.field;
    let b = if f.poly_degree == 0 || 5 > 2 * f.dim {
        PolyTensorField::vanishing(3, f.dim, 5, f.poly_degree.saturating_sub(1), Variance::Co)
    } else {
        tabulate(f.dim, 5, f.poly_degree - 1, |i, e| {
            let (l, m, n, a, b) = (i[0], i[1], i[2], i[3], i[4]);
            partial(f, &[m, n, a, b], e, &[l]) + partial(f, &[n, l, a, b], e, &[m]) + partial(f, &[l, m, a, b], e, &[n])
        })?
    };
    GaugeField::new(GaugeRole::Bianchi, b)
}

/// The constants `c` with `d_1 = c·d`, `d_2 = c·d²` and `d_3 = c·d` on the spin-2
/// complex, determined on full bases of the blocks with polynomial degrees `2..=3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spin2Constants {
    pub d1: String,
    pub d2: String,
    /// Absent for `D = 2`, where the Bianchi degree exceeds the top degree.
    pub d3: Option<String>,
}

fn proportionality(
    dim: usize,
    role: GaugeRole,
    power: usize,
    op: fn(&GaugeField) -> Result<GaugeField>,
) -> Result<BigRational> {
    let p = role.degree();
    let mut found: Option<BigRational> = None;
    for q in 2..=3 {
        for b in block::block_basis(3, dim, p, q).iter() {
            let f = PolyTensorField::from_int(3, dim, p, q, Variance::Co, &BigRational::one(), b);
            let lhs = op(&GaugeField::new(role, f.clone())?)?.field;
            let rhs = n_diff_power(&f, power);
            if rhs.is_zero() {
                if !lhs.is_zero() {
                    return Err(Error::Inconsistent(format!("{role:?}: hand-written operator nonzero where d^{power} vanishes")));
                }
                continue;
            }
            let c = lhs
                .ratio_to(&rhs)
                .ok_or_else(|| Error::Inconsistent(format!("{role:?}: not proportional to d^{power}")))?;
            match &found {
                Some(prev) if *prev != c => {
                    return Err(Error::Inconsistent(format!("{role:?}: constants {prev} and {c}")));
                }
                Some(_) => {}
                None => found = Some(c),
            }
        }
    }
    found.ok_or_else(|| Error::Inconsistent(format!("{role:?}: no nonzero test field")))
}

static SPIN2_CONSTANTS: Memo<usize, std::result::Result<Spin2Constants, String>> = Memo::new();

pub fn spin2_constants(dim: usize) -> Result<Spin2Constants> {
    if dim < 2 {
        return Err(Error::Precondition("the spin-2 complex needs D ≥ 2".into()));
    }
    let r = SPIN2_CONSTANTS.get_or_build(&dim, || {
        let go = || -> Result<Spin2Constants> {
            Ok(Spin2Constants {
                d1: proportionality(dim, GaugeRole::Vector, 1, spin2_d1)?.to_string(),
                d2: proportionality(dim, GaugeRole::Metric, 2, spin2_d2)?.to_string(),
                d3: if dim >= 3 { Some(proportionality(dim, GaugeRole::Curvature, 1, spin2_d3)?.to_string()) } else { None },
            })
        };
        go().map_err(|e| e.to_string())
    });
    (*r).clone().map_err(Error::Inconsistent)
}

/// The generalized curvature `d^S φ` of a totally symmetric rank-`S` field of the
/// `(S+1)`-complex.
pub fn spin_s_curvature(s: usize, phi: &PolyTensorField) -> Result<PolyTensorField> {
    if s == 0 || phi.n != s + 1 || phi.degree != s {
        return Err(Error::ShapeMismatch(format!(
            "expected a rank-{s} field of the {}-complex, got degree {} of the {}-complex",
            s + 1,
            phi.degree,
            phi.n
        )));
    }
    Ok(n_diff_power(phi, s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceRow {
    pub q: usize,
    /// Cohomology at the potential, `H^S_(S)` in polynomial degree `q`.
    pub h_potential: usize,
    /// Cohomology at the curvature, `H^(2S)_(1)` in polynomial degree `q`.
    pub h_curvature: usize,
}

/// Exactness of `Ω^(S-1) → Ω^S → Ω^(2S) → Ω^(2S+1)` in the `(S+1)`-complex, one row per
/// polynomial degree `q ≤ q_max` of the middle terms.
pub fn sequence_exactness(s: usize, dim: usize, q_max: usize) -> Result<Vec<SequenceRow>> {
    if s == 0 {
        return Err(Error::Precondition("spin must be at least 1".into()));
    }
    let n = s + 1;
    (0..=q_max)
        .map(|q| {
            let h_curvature = if 2 * s <= s * dim { cohomology_dim(n, dim, 2 * s, 1, q)? } else { 0 };
            Ok(SequenceRow { q, h_potential: cohomology_dim(n, dim, s, s, q)?, h_curvature })
        })
        .collect()
}

/// Whether the literal spin-2 operators compose to zero on full bases of every block
/// with polynomial degree `≤ q_max + 3`.
pub fn spin2_complex_check(dim: usize, q_max: usize) -> Result<bool> {
    for q in 0..=q_max + 3 {
        for b in block::block_basis(3, dim, 1, q).iter() {
            let x = GaugeField::new(GaugeRole::Vector, PolyTensorField::from_int(3, dim, 1, q, Variance::Co, &BigRational::one(), b))?;
            if !spin2_d2(&spin2_d1(&x)?)?.field.is_zero() {
                return Ok(false);
            }
        }
        for b in block::block_basis(3, dim, 2, q).iter() {
            let h = GaugeField::new(GaugeRole::Metric, PolyTensorField::from_int(3, dim, 2, q, Variance::Co, &BigRational::one(), b))?;
            if !spin2_d3(&spin2_d2(&h)?)?.field.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `∂_μ T^μν` as a list of (ν, exponent, value) for the nonzero components.
pub fn divergence(t: &PolyTensorField) -> Vec<(u8, Vec<u32>, BigRational)> {
    let mut out = Vec::new();
    if t.poly_degree == 0 {
        return out;
    }
    for nu in 0..t.dim as u8 {
        for e in &monomials(t.dim, t.poly_degree - 1).list {
            let v: BigRational = (0..t.dim as u8).map(|mu| partial(t, &[mu, nu], e, &[mu])).sum();
            if !v.is_zero() {
                out.push((nu, e.clone(), v));
            }
        }
    }
    out
}

/// The index completing an increasing `(D-1)`-set to `0..D`, and the sign of
/// `(missing, set...)` as a permutation.
fn complement(set: &[u8], dim: usize) -> (u8, i64) {
    let missing = (0..dim as u8).find(|i| !set.contains(i)).expect("set of size D-1");
    let mut perm: Vec<usize> = std::iter::once(missing as usize).chain(set.iter().map(|&i| i as usize)).collect();
    let s = sort_with_sign(&mut perm).expect("distinct");
    (missing, s)
}

/// `τ_{μ_1…μ_(D-1) ν_1…ν_(D-1)} = T^μν ε_{μ μ_1…} ε_{ν ν_1…}`.
pub fn tau_of(t: &PolyTensorField) -> Result<PolyTensorField> {
    check_stress(t)?;
    let dim = t.dim;
    let h = dim - 1;
    tabulate(dim, 2 * h, t.poly_degree, |i, e| {
        let (a, sa) = complement(&i[..h], dim);
        let (b, sb) = complement(&i[h..], dim);
        t.get(&[a, b], e) * BigRational::from_integer((sa * sb).into())
    })
}

/// Inverse of [`tau_of`].
pub fn stress_of_tau(tau: &PolyTensorField) -> Result<PolyTensorField> {
    let dim = tau.dim;
    if tau.n != 3 || dim < 2 || tau.degree != 2 * (dim - 1) {
        return Err(Error::ShapeMismatch("expected a degree 2(D-1) field of the 3-complex".into()));
    }
    let h = dim - 1;
    let mut t = PolyTensorField::zero(3, dim, 2, tau.poly_degree, Variance::Contra)?;
    let full = |skip: u8| -> Vec<u8> { (0..dim as u8).filter(|&x| x != skip).collect() };
    for a in 0..dim as u8 {
        for b in 0..dim as u8 {
            let (ia, ib) = (full(a), full(b));
            let (_, sa) = complement(&ia, dim);
            let (_, sb) = complement(&ib, dim);
            let idx: Vec<u8> = ia.iter().chain(ib.iter()).copied().collect();
            debug_assert_eq!(idx.len(), 2 * h);
            for e in &monomials(dim, tau.poly_degree).list {
                let v = tau.get(&idx, e) * BigRational::from_integer((sa * sb).into());
                if !v.is_zero() {
                    t.set_entry(&[a, b], e, v)?;
                }
            }
        }
    }
    Ok(t)
}

fn check_stress(t: &PolyTensorField) -> Result<()> {
    if t.n != 3 || t.degree != 2 || t.variance != Variance::Contra {
        return Err(Error::ShapeMismatch("expected a contravariant symmetric degree-2 field of the 3-complex".into()));
    }
    if t.dim < 2 {
        return Err(Error::DegreeOutOfRange { degree: 0, max: 0 });
    }
    Ok(())
}

/// `R^{μ_1μ_2 ν_1ν_2} = ε^{μ_1μ_2μ_3…} ε^{ν_1ν_2ν_3…} ρ_{μ_3… ν_3…}` without the
/// normalization constant, components in column order `(μ_1, μ_2, ν_1, ν_2)`.
fn epsilon_epsilon(rho: &PolyTensorField) -> Result<PolyTensorField> {
    let dim = rho.dim;
    let h = dim - 2;
    let mut r = PolyTensorField::zero(3, dim, 4, rho.poly_degree, Variance::Contra)?;
    let pairs: Vec<(u8, u8)> = (0..dim as u8).flat_map(|a| (a + 1..dim as u8).map(move |b| (a, b))).collect();
    let rest = |a: u8, b: u8| -> Vec<u8> { (0..dim as u8).filter(|&x| x != a && x != b).collect() };
    for &(m1, m2) in &pairs {
        for &(n1, n2) in &pairs {
            let (ra, rb) = (rest(m1, m2), rest(n1, n2));
            // (m1, m2, ra...) is an even permutation of 0..D exactly when the sort sign is +1
            let sign = |a: u8, b: u8, r: &[u8]| -> i64 {
                let mut p: Vec<usize> = [a, b].iter().chain(r.iter()).map(|&x| x as usize).collect();
                sort_with_sign(&mut p).expect("distinct")
            };
            let s = sign(m1, m2, &ra) * sign(n1, n2, &rb);
            let idx: Vec<u8> = ra.iter().chain(rb.iter()).copied().collect();
            debug_assert_eq!(idx.len(), 2 * h);
            for e in &monomials(dim, rho.poly_degree).list {
                let v = rho.get(&idx, e);
                if !v.is_zero() {
                    r.add_entry(&[m1, m2, n1, n2], e, &(v * BigRational::from_integer(s.into())))?;
                }
            }
        }
    }
    Ok(r)
}

/// `∂_λ∂_ρ R^{λμρν}`.
pub fn double_divergence(r: &PolyTensorField) -> Result<PolyTensorField> {
    let dim = r.dim;
    let mut t = PolyTensorField::zero(3, dim, 2, r.poly_degree.saturating_sub(2), Variance::Contra)?;
    if r.poly_degree < 2 {
        return Ok(t);
    }
    for m in 0..dim as u8 {
        for n in 0..dim as u8 {
            for e in &monomials(dim, r.poly_degree - 2).list {
                let mut v = BigRational::zero();
                for l in 0..dim as u8 {
                    for p in 0..dim as u8 {
                        v += partial(r, &[l, m, p, n], e, &[l, p]);
                    }
                }
                if !v.is_zero() {
                    t.set_entry(&[m, n], e, v)?;
                }
            }
        }
    }
    Ok(t)
}

/// A basis of the divergence-free symmetric contravariant fields of polynomial degree `q`.
pub fn divergence_free_basis(dim: usize, q: usize) -> Result<Vec<PolyTensorField>> {
    let basis = block::block_basis(3, dim, 2, q);
    let nm = if q == 0 { 0 } else { monomials(dim, q - 1).len() };
    let fields: Vec<PolyTensorField> = basis
        .iter()
        .map(|b| PolyTensorField::from_int(3, dim, 2, q, Variance::Contra, &BigRational::one(), b))
        .collect();
    let images: Vec<IVec> = fields
        .iter()
        .map(|f| {
            let low = monomials(dim, q.saturating_sub(1));
            linalg::from_entries(divergence(f).into_iter().map(|(nu, e, v)| {
                (nu as usize * nm + low.id(&e).expect("lowered monomial"), v.to_integer())
            }))
        })
        .collect();
    Ok(linalg::kernel(&images)
        .iter()
        .map(|c| {
            let v = linalg::combination(&basis, c);
            PolyTensorField::from_int(3, dim, 2, q, Variance::Contra, &BigRational::one(), &v)
        })
        .collect())
}

/// A random divergence-free symmetric field, nonzero when the space is.
pub fn random_divergence_free(dim: usize, q: usize, probe: &mut Probe) -> Result<PolyTensorField> {
    let basis = divergence_free_basis(dim, q)?;
    let vectors: Vec<IVec> = basis.iter().map(|f| f.to_int().1).collect();
    let v = probe.combination(&vectors);
    Ok(PolyTensorField::from_int(3, dim, 2, q, Variance::Contra, &BigRational::one(), &v))
}

static KAPPA: Memo<usize, std::result::Result<BigRational, String>> = Memo::new();

/// The constant `κ` making `R = κ εερ` satisfy `∂∂R = T` whenever `τ(T) = d²ρ`, fixed by
/// round-tripping full bases of `ρ` with polynomial degrees 2 and 3.
pub fn stress_constant(dim: usize) -> Result<BigRational> {
    if dim < 2 {
        return Err(Error::DegreeOutOfRange { degree: 0, max: 0 });
    }
    let r = KAPPA.get_or_build(&dim, || {
        let go = || -> Result<BigRational> {
            let p = 2 * (dim - 2);
            let mut found: Option<BigRational> = None;
            for q in 2..=3 {
                for b in block::block_basis(3, dim, p, q).iter() {
                    let rho = PolyTensorField::from_int(3, dim, p, q, Variance::Co, &BigRational::one(), b);
                    let t = stress_of_tau(&n_diff_power(&rho, 2))?;
                    let back = double_divergence(&epsilon_epsilon(&rho)?)?;
                    if t.is_zero() && back.is_zero() {
                        continue;
                    }
                    let c = t.ratio_to(&back).ok_or_else(|| Error::Inconsistent("∂∂(εερ) is not proportional to T".into()))?;
                    match &found {
                        Some(prev) if *prev != c => {
                            return Err(Error::Inconsistent(format!("stress constants {prev} and {c}")));
                        }
                        Some(_) => {}
                        None => found = Some(c),
                    }
                }
            }
            found.ok_or_else(|| Error::Inconsistent("no nonzero test potential".into()))
        };
        go().map_err(|e| e.to_string())
    });
    (*r).clone().map_err(Error::Inconsistent)
}

#[derive(Clone, Debug)]
pub struct StressPotential {
    pub tau: PolyTensorField,
    pub rho: PolyTensorField,
    pub r: PolyTensorField,
    pub kappa: BigRational,
    pub residual_zero: bool,
}

/// A Riemann-symmetric `R` with `∂_λ∂_ρ R^{λμρν} = T^μν` for a divergence-free symmetric
/// contravariant `T`, obtained through `τ(T) = d²ρ`.
pub fn stress_potential(t: &PolyTensorField) -> Result<StressPotential> {
    check_stress(t)?;
    if !t.is_in_schur_module() {
        return Err(Error::Precondition("T is not symmetric".into()));
    }
    if let Some((nu, e, v)) = divergence(t).into_iter().next() {
        return Err(Error::Precondition(format!("∂_μ T^μν ≠ 0 (ν = {nu}, exponent {e:?}, coefficient {v})")));
    }
    let tau = tau_of(t)?;
    if !n_diff(&tau).is_zero() {
        return Err(Error::Inconsistent("dτ ≠ 0 for a divergence-free T".into()));
    }
    let rho = solve_preimage(&tau, 1)?;
    let kappa = stress_constant(t.dim)?;
    let r = epsilon_epsilon(&rho)?.scaled(&kappa);
    let residual_zero = double_divergence(&r)?.sub(t)?.is_zero() && r.is_in_schur_module();
    Ok(StressPotential { tau, rho, r, kappa, residual_zero })
}

#[cfg(test)]
mod tests;
