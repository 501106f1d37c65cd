//! Column-strict coordinates of a shape and the integer stencils that apply the
//! Young symmetrizer and the projected tensor product on them.
//!
//! A tensor antisymmetric inside each column is determined by its values on
//! tuples that increase strictly down every column. Those tuples, in
//! lexicographic order, are the coordinates used throughout the crate.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::diagrams::Diagram;
use crate::linalg::{self, Echelon, IVec};
use crate::memo::Memo;
use crate::perm::{block_group, sort_with_sign};

#[derive(Debug)]
pub struct ShapeCoords {
    pub shape: Diagram,
    pub dim: usize,
    pub columns: Vec<usize>,
    col_starts: Vec<usize>,
    pub coords: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl ShapeCoords {
    fn build(shape: &Diagram, dim: usize) -> Self {
        let columns = shape.columns();
        let mut col_starts = Vec::with_capacity(columns.len());
        let mut acc = 0;
        for &c in &columns {
            col_starts.push(acc);
            acc += c;
        }
        let mut coords: Vec<Vec<u8>> = vec![Vec::new()];
        for &len in &columns {
            let choices = increasing_tuples(dim, len);
            let mut next = Vec::with_capacity(coords.len() * choices.len());
            for prefix in &coords {
                for ch in &choices {
                    let mut t = prefix.clone();
                    t.extend_from_slice(ch);
                    next.push(t);
                }
            }
            coords = next;
        }
        let index = coords.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        ShapeCoords { shape: shape.clone(), dim, columns, col_starts, coords, index }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.shape.size()
    }

    pub fn id(&self, t: &[u8]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn column_range(&self, c: usize) -> std::ops::Range<usize> {
        self.col_starts[c]..self.col_starts[c] + self.columns[c]
    }

    /// Sorts every column of `t`; returns the coordinate id and the sign, or `None`
    /// when a column repeats an index.
    pub fn normalize(&self, t: &[u8]) -> Option<(usize, i64)> {
        let mut buf: Vec<usize> = t.iter().map(|&x| x as usize).collect();
        let mut sign = 1;
        for c in 0..self.columns.len() {
            sign *= sort_with_sign(&mut buf[self.column_range(c)])?;
        }
        let key: Vec<u8> = buf.into_iter().map(|x| x as u8).collect();
        Some((self.index[&key], sign))
    }

    /// All tuples obtained by permuting inside columns, with the antisymmetry sign.
    pub fn expand(&self, id: usize) -> Vec<(Vec<u8>, i64)> {
        let blocks: Vec<Vec<usize>> = (0..self.columns.len()).map(|c| self.column_range(c).collect()).collect();
        let base = &self.coords[id];
        block_group(base.len(), &blocks)
            .into_iter()
            .map(|(g, s)| (g.iter().map(|&k| base[k]).collect(), s))
            .collect()
    }
}

fn increasing_tuples(dim: usize, len: usize) -> Vec<Vec<u8>> {
    fn rec(start: usize, dim: usize, len: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in start..dim {
            cur.push(x as u8);
            rec(x + 1, dim, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, len, &mut Vec::new(), &mut out);
    out
}

static SHAPES: Memo<(Diagram, usize), ShapeCoords> = Memo::new();

pub fn shape_coords(shape: &Diagram, dim: usize) -> Arc<ShapeCoords> {
    assert!(dim < 256, "dimension too large for byte-sized indices");
    SHAPES.get_or_build(&(shape.clone(), dim), || ShapeCoords::build(shape, dim))
}

/// The permutations `σ = q∘p` (`p` in the row group, `q` in the column group) with
/// the sign of `q`. The symmetrizer reads `(𝐘T)_I = λ⁻¹ Σ sign · T_{I∘σ}`.
#[derive(Debug)]
pub struct SymmetrizerGroup {
    pub elements: Vec<(Vec<u8>, i8)>,
    pub norm: BigInt,
}

static GROUPS: Memo<Diagram, SymmetrizerGroup> = Memo::new();

pub fn symmetrizer_group(shape: &Diagram) -> Arc<SymmetrizerGroup> {
    GROUPS.get_or_build(shape, || {
        let n = shape.size();
        let mut row_blocks: Vec<Vec<usize>> = vec![Vec::new(); shape.num_rows()];
        for (pos, (r, _)) in shape.cells_column_order().into_iter().enumerate() {
            row_blocks[r].push(pos);
        }
        let mut col_blocks = Vec::new();
        let mut acc = 0;
        for c in shape.columns() {
            col_blocks.push((acc..acc + c).collect::<Vec<_>>());
            acc += c;
        }
        let rows = block_group(n, &row_blocks);
        let cols = block_group(n, &col_blocks);
        let mut elements = Vec::with_capacity(rows.len() * cols.len());
        for (p, _) in &rows {
            for (q, s) in &cols {
                let sigma: Vec<u8> = (0..n).map(|k| q[p[k]] as u8).collect();
                elements.push((sigma, *s as i8));
            }
        }
        SymmetrizerGroup { elements, norm: BigInt::from(shape.symmetrizer_norm()) }
    })
}

/// Integer matrix of `λ·𝐘` on column-strict coordinates.
#[derive(Debug)]
pub struct Projector {
    pub coords: Arc<ShapeCoords>,
    pub rows: Vec<Vec<(usize, i64)>>,
    pub cols: Vec<Vec<(usize, i64)>>,
    pub norm: BigInt,
}

impl Projector {
    /// `λ·𝐘 v`.
    pub fn apply(&self, v: &IVec) -> IVec {
        linalg::from_entries(v.iter().flat_map(|(j, x)| self.cols[*j].iter().map(move |(i, c)| (*i, x * c))))
    }
}

static PROJECTORS: Memo<(Diagram, usize), Projector> = Memo::new();

pub fn projector(shape: &Diagram, dim: usize) -> Arc<Projector> {
    PROJECTORS.get_or_build(&(shape.clone(), dim), || {
        let coords = shape_coords(shape, dim);
        let group = symmetrizer_group(shape);
        let n = shape.size();
        let mut rows = Vec::with_capacity(coords.len());
        let mut buf = vec![0u8; n];
        for base in &coords.coords {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for (sigma, s) in &group.elements {
                for k in 0..n {
                    buf[k] = base[sigma[k] as usize];
                }
                if let Some((j, sign)) = coords.normalize(&buf) {
                    *acc.entry(j).or_insert(0) += sign * (*s as i64);
                }
            }
            let mut row: Vec<(usize, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
            row.sort_unstable();
            rows.push(row);
        }
        let cols = transpose(&rows, coords.len());
        Projector { coords, rows, cols, norm: group.norm.clone() }
    })
}

fn transpose(rows: &[Vec<(usize, i64)>], ncols: usize) -> Vec<Vec<(usize, i64)>> {
    let mut cols = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row {
            cols[*j].push((i, *c));
        }
    }
    cols
}

/// Rank of the Young projector on column-strict coordinates, computed by elimination
/// over every column.
pub fn projector_rank(shape: &Diagram, dim: usize) -> usize {
    let p = projector(shape, dim);
    let cols: Vec<IVec> = p.cols.iter().map(|col| col.iter().map(|(i, c)| (*i, BigInt::from(*c))).collect()).collect();
    linalg::rank(cols.iter())
}

static SCHUR_BASES: Memo<(Diagram, usize), Vec<IVec>> = Memo::new();

/// Integer basis of the projector image: the independent columns of `λ·𝐘`, taken
/// in coordinate order.
pub fn schur_basis_vectors(shape: &Diagram, dim: usize) -> Arc<Vec<IVec>> {
    SCHUR_BASES.get_or_build(&(shape.clone(), dim), || {
        let p = projector(shape, dim);
        let target = shape.schur_dim(dim) as usize;
        let mut e = Echelon::new();
        let mut out = Vec::new();
        for col in &p.cols {
            if out.len() == target {
                break;
            }
            let mut v: IVec = col.iter().map(|(i, c)| (*i, BigInt::from(*c))).collect();
            if e.insert(v.clone()) {
                linalg::make_primitive(&mut v);
                out.push(v);
            }
        }
        out
    })
}

/// Projected product `λ·𝐘_out(A ⊗ B)` where the cells of `left` keep their place in
/// `out` and the entries of `right` fill the remaining cells in column-reading order.
#[derive(Debug)]
pub struct ProductStencil {
    pub left: Arc<ShapeCoords>,
    pub right: Arc<ShapeCoords>,
    pub out: Arc<ShapeCoords>,
    /// for each output coordinate: `(left id, right id, coefficient)`
    pub rows: Vec<Vec<(usize, usize, i64)>>,
    /// indexed by `left id * right.len() + right id`: `(output id, coefficient)`
    pub scatter: Vec<Vec<(usize, i64)>>,
    pub norm: BigInt,
}

impl ProductStencil {
    pub fn scatter_of(&self, left: usize, right: usize) -> &[(usize, i64)] {
        &self.scatter[left * self.right.len() + right]
    }
}

static PRODUCTS: Memo<(Diagram, Diagram, Diagram, usize), ProductStencil> = Memo::new();

pub fn product_stencil(left: &Diagram, right: &Diagram, out: &Diagram, dim: usize) -> Arc<ProductStencil> {
    let key = (left.clone(), right.clone(), out.clone(), dim);
    PRODUCTS.get_or_build(&key, || build_product(left, right, out, dim))
}

fn build_product(left: &Diagram, right: &Diagram, out: &Diagram, dim: usize) -> ProductStencil {
    assert!(out.contains(left), "{left} is not contained in {out}");
    assert_eq!(left.size() + right.size(), out.size());
    let lc = shape_coords(left, dim);
    let rc = shape_coords(right, dim);
    let oc = shape_coords(out, dim);
    let group = symmetrizer_group(out);

    let left_pos: Vec<usize> =
        left.cells_column_order().into_iter().map(|(r, c)| out.position(r, c).expect("cell in outer shape")).collect();
    let right_pos: Vec<usize> = out
        .cells_column_order()
        .into_iter()
        .filter(|&(r, c)| left.position(r, c).is_none())
        .map(|(r, c)| out.position(r, c).expect("cell in outer shape"))
        .collect();

    let n = out.size();
    let mut rows = Vec::with_capacity(oc.len());
    let mut perm = vec![0u8; n];
    let mut lbuf = vec![0u8; left_pos.len()];
    let mut rbuf = vec![0u8; right_pos.len()];
    for base in &oc.coords {
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for (sigma, s) in &group.elements {
            for k in 0..n {
                perm[k] = base[sigma[k] as usize];
            }
            for (k, &p) in left_pos.iter().enumerate() {
                lbuf[k] = perm[p];
            }
            let Some((l, ls)) = lc.normalize(&lbuf) else { continue };
            for (k, &p) in right_pos.iter().enumerate() {
                rbuf[k] = perm[p];
            }
            let Some((r, rs)) = rc.normalize(&rbuf) else { continue };
            *acc.entry((l, r)).or_insert(0) += ls * rs * (*s as i64);
        }
        let mut row: Vec<(usize, usize, i64)> =
            acc.into_iter().filter(|(_, c)| *c != 0).map(|((l, r), c)| (l, r, c)).collect();
        row.sort_unstable();
        rows.push(row);
    }
    let mut scatter = vec![Vec::new(); lc.len() * rc.len()];
    for (i, row) in rows.iter().enumerate() {
        for &(l, r, c) in row {
            scatter[l * rc.len() + r].push((i, c));
        }
    }
    ProductStencil { left: lc, right: rc, out: oc, rows, scatter, norm: group.norm.clone() }
}

/// Stencil for `λ·𝐘^N_{p+1}(T ⊗ v)` with the vector placed in the cell that
/// row-filling adds.
pub fn extension_stencil(n: usize, dim: usize, p: usize) -> Arc<ProductStencil> {
    let left = Diagram::max_diagram(n, p).expect("order checked by caller");
    let out = Diagram::max_diagram(n, p + 1).expect("order checked by caller");
    let one = Diagram::new(vec![1]).expect("single cell");
    product_stencil(&left, &one, &out, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[usize]) -> Diagram {
        Diagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn coordinate_counts() {
        assert_eq!(shape_coords(&d(&[2, 1]), 3).len(), 9);
        assert_eq!(shape_coords(&d(&[1, 1, 1]), 2).len(), 0);
        assert_eq!(shape_coords(&Diagram::empty(), 3).len(), 1);
        let c = shape_coords(&d(&[2, 2]), 3);
        let (id, s) = c.normalize(&[1, 0, 2, 1]).unwrap();
        assert_eq!(c.coords[id], vec![0, 1, 1, 2]);
        assert_eq!(s, 1);
        assert!(c.normalize(&[1, 1, 0, 2]).is_none());
    }

    #[test]
    fn group_sizes() {
        assert_eq!(symmetrizer_group(&d(&[2, 1])).elements.len(), 4);
        assert_eq!(symmetrizer_group(&d(&[3, 3])).elements.len(), 36 * 8);
        assert_eq!(symmetrizer_group(&d(&[2, 2])).norm, BigInt::from(12));
    }

    #[test]
    fn basis_sizes_match_hook_content() {
        for rows in [&[1][..], &[2], &[1, 1], &[2, 1], &[2, 2], &[3, 1], &[2, 1, 1], &[3, 2]] {
            for dim in 1..=3 {
                let y = d(rows);
                assert_eq!(schur_basis_vectors(&y, dim).len() as u64, y.schur_dim(dim), "{y} D={dim}");
            }
        }
    }
}
