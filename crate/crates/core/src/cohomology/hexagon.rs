//! Exactness of the hexagon of maps `[i]` (induced by inclusion of kernels) and `[d]`
//! (induced by `d`) between generalized cohomologies.

use std::fmt;

use serde::Serialize;

use super::check_k;
use crate::error::{Error, Result};
use crate::fields::block;
use crate::linalg::{self, IVec};
use crate::memo::Memo;

/// `Ker d^k` and `Im d^(N-k)` inside block `(p, q)`, in block coordinates.
struct Space {
    ker: Vec<IVec>,
    im: Vec<IVec>,
    im_rank: usize,
}

static SPACES: Memo<(usize, usize, usize, usize, usize), Space> = Memo::new();

fn space(n: usize, dim: usize, p: isize, k: usize, q: isize) -> Option<std::sync::Arc<Space>> {
    if p < 0 || q < 0 || p as usize > (n - 1) * dim {
        return None;
    }
    let (p, q) = (p as usize, q as usize);
    Some(SPACES.get_or_build(&(n, dim, p, k, q), || {
        let basis = block::block_basis(n, dim, p, q);
        let images = block::d_power_images(n, dim, p, q, k);
        let ker = linalg::kernel(&images).iter().map(|c| linalg::combination(&basis, c)).collect();
        let j = n - k;
        let im: Vec<IVec> = if p >= j {
            block::d_power_images(n, dim, p - j, q + j, j).into_iter().filter(|v| !v.is_empty()).collect()
        } else {
            Vec::new()
        };
        let im_rank = linalg::rank(im.iter());
        Space { ker, im, im_rank }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Map {
    /// `[i]`: identity on representatives.
    Incl,
    /// `[d]^j`.
    Diff(usize),
}

impl Map {
    fn shift(self) -> isize {
        match self {
            Map::Incl => 0,
            Map::Diff(j) => j as isize,
        }
    }

    fn apply(self, n: usize, dim: usize, p: usize, q: usize, v: &IVec) -> IVec {
        match self {
            Map::Incl => v.clone(),
            Map::Diff(j) => block::d_power_int(n, dim, p, q, j, v),
        }
    }
}

impl fmt::Display for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Map::Incl => write!(f, "[i]"),
            Map::Diff(j) => write!(f, "[d]^{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    p: isize,
    k: usize,
    q: isize,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}_({})[q={}]", self.p, self.k, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeCheck {
    pub node: String,
    pub incoming: String,
    pub outgoing: String,
    pub dim_h: usize,
    pub dim_image_in: usize,
    pub dim_kernel_out: usize,
    pub exact: bool,
}

/// Exactness at `b` of `a --f--> b --g--> c`, all at the level of cohomology.
fn exactness(n: usize, dim: usize, a: Node, f: Map, b: Node, g: Map, c: Node) -> NodeCheck {
    let sb = space(n, dim, b.p, b.k, b.q);
    let (dim_h, dim_image_in, dim_kernel_out, exact) = match &sb {
        None => (0, 0, 0, true),
        Some(sb) => {
            let dim_h = sb.ker.len() - sb.im_rank;
            let sa = space(n, dim, a.p, a.k, a.q);
            let sc = space(n, dim, c.p, c.k, c.q);
            let fa: Vec<IVec> = match &sa {
                Some(sa) => sa.ker.iter().map(|v| f.apply(n, dim, a.p as usize, a.q as usize, v)).collect(),
                None => Vec::new(),
            };
            let image_in = linalg::rank(fa.iter().chain(sb.im.iter())) - sb.im_rank;
            let (c_im, c_rank): (&[IVec], usize) = match &sc {
                Some(sc) => (&sc.im, sc.im_rank),
                None => (&[], 0),
            };
            let gb: Vec<IVec> = sb.ker.iter().map(|v| g.apply(n, dim, b.p as usize, b.q as usize, v)).collect();
            let kernel_out = sb.ker.len() - (linalg::rank(gb.iter().chain(c_im.iter())) - c_rank) - sb.im_rank;
            let gfa: Vec<IVec> = fa.iter().map(|v| g.apply(n, dim, b.p as usize, b.q as usize, v)).collect();
            let composite_zero = linalg::rank(gfa.iter().chain(c_im.iter())) == c_rank;
            (dim_h, image_in, kernel_out, composite_zero && image_in == kernel_out)
        }
    };
    NodeCheck {
        node: b.to_string(),
        incoming: format!("{f} from {a}"),
        outgoing: format!("{g} to {c}"),
        dim_h,
        dim_image_in,
        dim_kernel_out,
        exact,
    }
}

/// The six positions of the hexagon for `(k, l)`: cohomology index of each position and
/// the map leaving it.
fn positions(n: usize, k: usize, l: usize) -> [(usize, Map); 6] {
    [
        (k, Map::Incl),
        (k + l, Map::Diff(k)),
        (l, Map::Incl),
        (n - k, Map::Diff(l)),
        (n - k - l, Map::Incl),
        (n - l, Map::Diff(n - k - l)),
    ]
}

/// Exactness at position `i` of the hexagon, for the node in degree `(p, q)`.
fn check_position(n: usize, dim: usize, k: usize, l: usize, i: usize, p: isize, q: isize) -> NodeCheck {
    let pos = positions(n, k, l);
    let (kb, g) = pos[i];
    let (ka, f) = pos[(i + 5) % 6];
    let (kc, _) = pos[(i + 1) % 6];
    let a = Node { p: p - f.shift(), k: ka, q: q + f.shift() };
    let b = Node { p, k: kb, q };
    let c = Node { p: p + g.shift(), k: kc, q: q - g.shift() };
    exactness(n, dim, a, f, b, g, c)
}

fn check_hexagon_args(n: usize, k: usize, l: usize) -> Result<()> {
    check_k(n, 1)?;
    if k == 0 || l == 0 || k + l > n - 1 {
        return Err(Error::Precondition(format!("need 1 ≤ k, 1 ≤ l, k + l ≤ N - 1 (got k={k}, l={l}, N={n})")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct HexagonReport {
    pub n: usize,
    pub dim: usize,
    pub k: usize,
    pub l: usize,
    pub q_max: usize,
    pub nodes: Vec<NodeCheck>,
}

impl HexagonReport {
    pub fn passed(&self) -> bool {
        self.nodes.iter().all(|c| c.exact)
    }
}

/// Exactness of the hexagon for `(k, l)` at every position, every tensor degree and every
/// polynomial degree `q ≤ q_max`.
///
/// For `N = 2` there is no admissible `(k, l)` and the report is empty.
pub fn hexagon_check(n: usize, dim: usize, k: usize, l: usize, q_max: usize) -> Result<HexagonReport> {
    if n == 2 {
        return Ok(HexagonReport { n, dim, k, l, q_max, nodes: Vec::new() });
    }
    check_hexagon_args(n, k, l)?;
    let top = ((n - 1) * dim) as isize;
    let mut jobs = Vec::new();
    for p in 0..=top {
        for q in 0..=q_max as isize {
            for i in 0..6 {
                jobs.push((i, p, q));
            }
        }
    }
    use rayon::prelude::*;
    let nodes = jobs.par_iter().map(|&(i, p, q)| check_position(n, dim, k, l, i, p, q)).collect();
    Ok(HexagonReport { n, dim, k, l, q_max, nodes })
}

#[derive(Clone, Debug, Serialize)]
pub struct FourTermRow {
    pub q: usize,
    /// Dimensions of the four terms, in sequence order.
    pub dims: [usize; 4],
    pub alternating_sum: i64,
    pub exact: [bool; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct FourTermReport {
    pub n: usize,
    pub dim: usize,
    pub k: usize,
    pub l: usize,
    pub rows: Vec<FourTermRow>,
    pub totals: [usize; 4],
}

impl FourTermReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.alternating_sum == 0 && r.exact.iter().all(|&e| e))
    }

    pub fn total_alternating_sum(&self) -> i64 {
        self.totals[0] as i64 - self.totals[1] as i64 + self.totals[2] as i64 - self.totals[3] as i64
    }
}

/// The four-term sequence
/// `0 → H^(k-1)_(l) → H^(k-1)_(N-k) → H^(k+l-1)_(N-k-l) → H^(k+l-1)_(N-l) → 0`,
/// one row per starting polynomial degree `q ≤ q_max`.
pub fn four_term_check(n: usize, dim: usize, k: usize, l: usize, q_max: usize) -> Result<FourTermReport> {
    check_hexagon_args(n, k, l)?;
    let p0 = k as isize - 1;
    let mut rows = Vec::new();
    let mut totals = [0usize; 4];
    for q in 0..=q_max as isize {
        let checks = [
            check_position(n, dim, k, l, 2, p0, q),
            check_position(n, dim, k, l, 3, p0, q),
            check_position(n, dim, k, l, 4, p0 + l as isize, q - l as isize),
            check_position(n, dim, k, l, 5, p0 + l as isize, q - l as isize),
        ];
        let dims = [checks[0].dim_h, checks[1].dim_h, checks[2].dim_h, checks[3].dim_h];
        for (t, d) in totals.iter_mut().zip(dims) {
            *t += d;
        }
        rows.push(FourTermRow {
            q: q as usize,
            dims,
            alternating_sum: dims[0] as i64 - dims[1] as i64 + dims[2] as i64 - dims[3] as i64,
            exact: [checks[0].exact, checks[1].exact, checks[2].exact, checks[3].exact],
        });
    }
    Ok(FourTermReport { n, dim, k, l, rows, totals })
}
