//! Young diagrams stored as row lengths.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Diagram {
    rows: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Diagram {
    type Error = Error;

    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Diagram::new(rows)
    }
}

impl From<Diagram> for Vec<usize> {
    fn from(d: Diagram) -> Vec<usize> {
        d.rows
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl Diagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidDiagram(format!("{rows:?} has a zero-length row")));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!("{rows:?} is not weakly decreasing")));
        }
        Ok(Diagram { rows })
    }

    pub fn empty() -> Self {
        Diagram { rows: Vec::new() }
    }

    /// Builds a diagram from its column lengths; zero lengths are dropped.
    pub fn from_columns(columns: &[usize]) -> Result<Self> {
        let cols: Vec<usize> = columns.iter().copied().filter(|&c| c > 0).collect();
        if cols.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!("columns {columns:?} are not weakly decreasing")));
        }
        Ok(Diagram { rows: conjugate_lengths(&cols) })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn columns(&self) -> Vec<usize> {
        conjugate_lengths(&self.rows)
    }

    pub fn conjugate(&self) -> Diagram {
        Diagram { rows: self.columns() }
    }

    pub fn is_rectangular(&self) -> bool {
        self.rows.windows(2).all(|w| w[0] == w[1])
    }

    /// Ordinary inclusion of cell sets.
    pub fn contains(&self, inner: &Diagram) -> bool {
        inner.rows.len() <= self.rows.len() && inner.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }

    /// `inner ⊂⊂ self`: first rows compare, and the last column of `self` is at least
    /// as long as the first column of `inner`.
    pub fn strongly_includes(&self, inner: &Diagram) -> bool {
        if inner.is_empty() {
            return true;
        }
        let last_col = self.columns().last().copied().unwrap_or(0);
        self.num_columns() >= inner.num_columns() && last_col >= inner.num_rows()
    }

    /// The shape left after removing the columns of `inner` from the right end of `self`.
    pub fn contract_shape(&self, inner: &Diagram) -> Result<Diagram> {
        if !self.strongly_includes(inner) {
            return Err(Error::NotStronglyIncluded { outer: self.clone(), inner: inner.clone() });
        }
        let cols = self.columns();
        let icols = inner.columns();
        let c = cols.len();
        let out: Vec<usize> = (0..c)
            .map(|j| {
                // column j (0-based) loses the cells of column c-1-j of `inner`
                let k = c - 1 - j;
                cols[j] - icols.get(k).copied().unwrap_or(0)
            })
            .collect();
        Diagram::from_columns(&out)
    }

    /// `Y^N_p`: rows of length `N-1` filled in order, plus a shorter last row.
    pub fn max_diagram(n: usize, p: usize) -> Result<Diagram> {
        if n < 2 {
            return Err(Error::InvalidOrder(n));
        }
        let w = n - 1;
        let mut rows = vec![w; p / w];
        if !p.is_multiple_of(w) {
            rows.push(p % w);
        }
        Ok(Diagram { rows })
    }

    /// Cells `(row, col)` in column-reading order: columns top to bottom, left to right.
    pub fn cells_column_order(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (c, &len) in self.columns().iter().enumerate() {
            for r in 0..len {
                out.push((r, c));
            }
        }
        out
    }

    /// Position of cell `(row, col)` in column-reading order.
    pub fn position(&self, row: usize, col: usize) -> Option<usize> {
        let cols = self.columns();
        if col >= cols.len() || row >= cols[col] {
            return None;
        }
        Some(cols[..col].iter().sum::<usize>() + row)
    }

    /// Hook length of each cell, row by row.
    fn hooks(&self) -> Vec<(usize, usize, usize)> {
        let cols = self.columns();
        let mut out = Vec::with_capacity(self.size());
        for (r, &len) in self.rows.iter().enumerate() {
            for (c, &height) in cols.iter().enumerate().take(len) {
                let arm = len - c - 1;
                let leg = height - r - 1;
                out.push((r, c, arm + leg + 1));
            }
        }
        out
    }

    /// Dimension of the Schur module over a `dim`-dimensional space (hook-content formula).
    pub fn schur_dim(&self, dim: usize) -> u64 {
        if self.columns().first().copied().unwrap_or(0) > dim {
            return 0;
        }
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (r, c, h) in self.hooks() {
            num *= BigUint::from(dim + c - r);
            den *= BigUint::from(h);
        }
        (num / den).to_u64().expect("schur dimension exceeds u64")
    }

    /// Number of standard tableaux (hook-length formula).
    pub fn standard_count(&self) -> Result<u64> {
        if self.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let mut num = BigUint::one();
        for k in 2..=self.size() {
            num *= BigUint::from(k);
        }
        let mut den = BigUint::one();
        for (_, _, h) in self.hooks() {
            den *= BigUint::from(h);
        }
        Ok((num / den).to_u64().expect("standard tableau count exceeds u64"))
    }

    /// Normalization of the Young symmetrizer: `|Y|! / f^Y`.
    pub fn symmetrizer_norm(&self) -> BigUint {
        if self.is_empty() {
            return BigUint::one();
        }
        let mut den = BigUint::one();
        for (_, _, h) in self.hooks() {
            den *= BigUint::from(h);
        }
        // |Y|!/f^Y is the product of hook lengths
        debug_assert!(!den.is_zero());
        den
    }
}

fn conjugate_lengths(lengths: &[usize]) -> Vec<usize> {
    let width = lengths.first().copied().unwrap_or(0);
    (0..width).map(|c| lengths.iter().filter(|&&l| l > c).count()).collect()
}

/// All partitions of `n`, largest first row first.
pub fn partitions(n: usize) -> Vec<Diagram> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Diagram>) {
        if remaining == 0 {
            out.push(Diagram { rows: prefix.clone() });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[usize]) -> Diagram {
        Diagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(Diagram::new(vec![1, 2]).is_err());
        assert!(Diagram::new(vec![2, 0]).is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(d(&[3, 1]).conjugate(), d(&[2, 1, 1]));
        assert_eq!(Diagram::empty().conjugate(), Diagram::empty());
        assert_eq!(d(&[2, 2]).conjugate(), d(&[2, 2]));
    }

    #[test]
    fn row_filled_sequence() {
        assert_eq!(Diagram::max_diagram(5, 3).unwrap(), d(&[3]));
        assert_eq!(Diagram::max_diagram(3, 4).unwrap(), d(&[2, 2]));
        assert_eq!(Diagram::max_diagram(2, 3).unwrap(), d(&[1, 1, 1]));
        assert_eq!(Diagram::max_diagram(3, 0).unwrap(), Diagram::empty());
        assert!(matches!(Diagram::max_diagram(1, 2), Err(Error::InvalidOrder(1))));
    }

    #[test]
    fn strong_inclusion() {
        assert!(d(&[2, 2]).strongly_includes(&d(&[2, 2])));
        assert!(d(&[2, 1]).strongly_includes(&d(&[1])));
        assert!(!d(&[1, 1]).strongly_includes(&d(&[2])));
        assert!(!d(&[2, 1]).strongly_includes(&d(&[1, 1])));
    }

    #[test]
    fn contraction_shapes() {
        assert_eq!(d(&[2, 2]).contract_shape(&d(&[1])).unwrap(), d(&[2, 1]));
        let c = d(&[2, 2]).contract_shape(&d(&[2, 1])).unwrap();
        assert_eq!(c, d(&[1]));
        assert_eq!(d(&[2, 2]).contract_shape(&c).unwrap(), d(&[2, 1]));
        assert_eq!(d(&[1, 1, 1]).contract_shape(&d(&[1, 1, 1])).unwrap(), Diagram::empty());
        assert!(matches!(
            d(&[1, 1, 1]).contract_shape(&d(&[2, 1])),
            Err(Error::NotStronglyIncluded { .. })
        ));
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(d(&[2, 1]).schur_dim(3), 8);
        assert_eq!(d(&[2, 2]).schur_dim(2), 1);
        assert_eq!(d(&[1, 1, 1]).schur_dim(2), 0);
        for dim in 1..6 {
            for p in 0..=dim + 1 {
                assert_eq!(Diagram::from_columns(&[p]).unwrap().schur_dim(dim), binomial(dim, p));
            }
        }
        for dim in 2..5u64 {
            assert_eq!(d(&[2, 2]).schur_dim(dim as usize), dim * dim * (dim * dim - 1) / 12);
        }
        assert_eq!(d(&[1, 1, 1]).standard_count().unwrap(), 1);
        assert_eq!(d(&[2, 1]).standard_count().unwrap(), 2);
        assert_eq!(d(&[2, 2]).standard_count().unwrap(), 2);
        assert!(matches!(Diagram::empty().standard_count(), Err(Error::EmptyDiagram)));
    }

    #[test]
    fn cell_positions() {
        let y = d(&[2, 1]);
        assert_eq!(y.cells_column_order(), vec![(0, 0), (1, 0), (0, 1)]);
        assert_eq!(y.position(0, 1), Some(2));
        assert_eq!(y.position(1, 1), None);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..9).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
