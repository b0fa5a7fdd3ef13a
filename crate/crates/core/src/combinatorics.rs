//! Small enumeration helpers shared across modules.

/// All size-`k` subsets of `items`, in lexicographic order.
pub fn subsets_of_size<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        // Advance the combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All subsets of `{0, .., n-1}` of size at most `max_size`, smallest first,
/// lexicographic within each size.
pub fn subsets_up_to_size(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for k in 0..=max_size.min(n) {
        out.extend(subsets_of_size(&items, k));
    }
    out
}

/// Multi-indices `(m_1, ..., m_n)` of nonnegative integers with given sum.
pub fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Multi-indices of nonnegative integers with sum at most `total`.
pub fn multi_indices_up_to(n: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for t in 0..=total {
        out.extend(compositions(n, t));
    }
    out
}

/// All permutations of `1..=k`, in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (1..=k).collect();
    let mut out = vec![items.clone()];
    // Standard next-permutation loop.
    loop {
        let mut i = k.wrapping_sub(1);
        while i > 0 && items[i - 1] >= items[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = k - 1;
        while items[j] <= items[i - 1] {
            j -= 1;
        }
        items.swap(i - 1, j);
        items[i..].reverse();
        out.push(items.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets() {
        let s = subsets_of_size(&[1, 2, 3, 4], 2);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], vec![1, 2]);
        assert_eq!(s[5], vec![3, 4]);
        assert_eq!(subsets_of_size(&[1, 2], 3).len(), 0);
        assert_eq!(subsets_of_size::<i32>(&[], 0), vec![Vec::<i32>::new()]);
    }

    #[test]
    fn comps() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(multi_indices_up_to(1, 3).len(), 4);
        assert_eq!(multi_indices_up_to(2, 2).len(), 6);
    }

    #[test]
    fn perms() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[0], vec![1, 2, 3]);
        assert_eq!(permutations(3)[5], vec![3, 2, 1]);
        assert_eq!(permutations(1), vec![vec![1]]);
    }
}
