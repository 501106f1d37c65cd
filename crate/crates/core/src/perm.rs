//! Permutations of tensor slots and the row/column groups of a diagram.

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Sign of a permutation given by its images, computed from the cycle structure.
pub fn sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sorts `values` in place and returns the sign of the sorting permutation, or `None`
/// when two entries coincide.
pub fn sort_with_sign(values: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    // insertion sort: the number of swaps gives the parity
    for i in 1..values.len() {
        let mut j = i;
        while j > 0 && values[j - 1] > values[j] {
            values.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && values[j - 1] == values[j] {
            return None;
        }
    }
    if values.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// The subgroup of the symmetric group on `0..n` that permutes each block of
/// positions among itself. Elements are returned with their signs.
pub fn block_group(n: usize, blocks: &[Vec<usize>]) -> Vec<(Vec<usize>, i64)> {
    let mut group: Vec<(Vec<usize>, i64)> = vec![((0..n).collect(), 1)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = all_permutations(block.len());
        let mut next = Vec::with_capacity(group.len() * local.len());
        for (base, base_sign) in &group {
            for lp in &local {
                let mut g = base.clone();
                for (k, &pos) in block.iter().enumerate() {
                    g[pos] = block[lp[k]];
                }
                next.push((g, base_sign * sign(lp)));
            }
        }
        group = next;
    }
    group
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count_and_signs() {
        let perms = all_permutations(4);
        assert_eq!(perms.len(), 24);
        let even = perms.iter().filter(|p| sign(p) == 1).count();
        assert_eq!(even, 12);
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
    }

    #[test]
    fn sorting_sign() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        assert_eq!(v, vec![0, 1, 2]);
        let mut w = vec![1, 0];
        assert_eq!(sort_with_sign(&mut w), Some(-1));
        let mut r = vec![1, 2, 1];
        assert_eq!(sort_with_sign(&mut r), None);
    }

    #[test]
    fn block_group_size() {
        let g = block_group(5, &[vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(g.len(), 12);
        assert!(g.iter().all(|(p, s)| sign(p) == *s));
    }
}
