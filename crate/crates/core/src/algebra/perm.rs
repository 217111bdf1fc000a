//! Permutation signs and subset enumeration.

/// Sign of a permutation of `0..n` given as an image vector.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut sign = 1i8;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign via inversion counting; quadratic but independent of the cycle method.
pub fn inversion_sign(seq: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the permutation sorting a sequence of distinct keys.
pub fn sorting_sign<T: Ord>(keys: &[T]) -> i8 {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    permutation_sign(&idx)
}

/// Iterator over the `k`-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations { n, cur: if k <= n { Some((0..k).collect()) } else { None } }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_agree() {
        for perm in [vec![0, 1, 2], vec![1, 0, 2], vec![1, 2, 0], vec![2, 1, 0], vec![3, 0, 2, 1]] {
            assert_eq!(permutation_sign(&perm), inversion_sign(&perm));
        }
        assert_eq!(sorting_sign(&["b", "a"]), -1);
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(combinations(4, 2).nth(1), Some(vec![0, 2]));
        assert_eq!(binomial(16, 8), 12870);
    }
}
