//! Exponent vectors of homogeneous monomials.

use std::collections::HashMap;
use std::sync::Arc;

use crate::memo::Memo;

pub type Exponent = Vec<u32>;

#[derive(Debug)]
pub struct Monomials {
    pub dim: usize,
    pub degree: usize,
    pub list: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl Monomials {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn id(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }
}

static MONOMIALS: Memo<(usize, usize), Monomials> = Memo::new();

/// Degree-`degree` monomials in `dim` variables, exponent vectors in ascending lexicographic order.
pub fn monomials(dim: usize, degree: usize) -> Arc<Monomials> {
    MONOMIALS.get_or_build(&(dim, degree), || {
        let mut list = Vec::new();
        let mut cur = vec![0u32; dim];
        fill(&mut cur, 0, degree as u32, &mut list);
        let index = list.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Monomials { dim, degree, list, index }
    })
}

fn fill(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Exponent>) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = remaining;
            out.push(cur.clone());
        } else if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e;
        fill(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

pub fn degree(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}
