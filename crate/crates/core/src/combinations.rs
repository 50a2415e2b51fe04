//! Lexicographic k-subset enumeration, sequential and split for rayon.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

/// C(n, k), saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `f` on each size-`k` subset of `lo..n` in lexicographic order,
/// prefixed by `prefix`; stops early when `f` returns `false`.
fn for_each_with_prefix(prefix: &[usize], lo: usize, n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut comb: Vec<usize> = prefix.to_vec();
    let base = comb.len();
    if lo + k > n {
        return true;
    }
    comb.extend(lo..lo + k);
    loop {
        if !f(&comb) {
            return false;
        }
        // advance the suffix
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            let pos = base + i;
            if comb[pos] < n - (k - i) {
                comb[pos] += 1;
                for j in i + 1..k {
                    comb[base + j] = comb[base + j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Every size-`k` subset of `0..n`, lexicographically; `f` returns `false` to stop.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    for_each_with_prefix(&[], 0, n, k, &mut f);
}

/// Search all size-`k` subsets of `0..n` in parallel for one where `pred`
/// holds. Returns the lexicographically-first hit found by any worker (not
/// necessarily the global first) and the number of subsets examined.
pub fn par_find_combination<F>(n: usize, k: usize, pred: F) -> (Option<Vec<usize>>, u64)
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let checked = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    if k == 0 {
        let hit = pred(&[]);
        return (hit.then(Vec::new), 1);
    }
    if k > n {
        return (None, 0);
    }
    // Split on the first two members for a reasonably even spread.
    let prefixes: Vec<Vec<usize>> = if k >= 2 {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| vec![a, b])).collect()
    } else {
        (0..n).map(|a| vec![a]).collect()
    };
    let hit = prefixes.par_iter().find_map_any(|prefix| {
        if stop.load(Ordering::Relaxed) {
            return None;
        }
        let lo = prefix[prefix.len() - 1] + 1;
        let rest = k - prefix.len();
        let mut found = None;
        let mut local = 0u64;
        for_each_with_prefix(prefix, lo, n, rest, &mut |c| {
            local += 1;
            if pred(c) {
                found = Some(c.to_vec());
                return false;
            }
            !local.is_multiple_of(4096) || !stop.load(Ordering::Relaxed)
        });
        checked.fetch_add(local, Ordering::Relaxed);
        if found.is_some() {
            stop.store(true, Ordering::Relaxed);
        }
        found
    });
    (hit, checked.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(17, 4), 2380);
        assert_eq!(binomial(30, 7), 2_035_800);
        assert_eq!(binomial(11, 5), 462);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn enumerates_in_order() {
        let mut all = Vec::new();
        for_each_combination(5, 3, |c| {
            all.push(c.to_vec());
            true
        });
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parallel_exhausts_when_no_hit() {
        let (hit, n) = par_find_combination(12, 4, |_| false);
        assert!(hit.is_none());
        assert_eq!(n as u128, binomial(12, 4));
        let (hit, _) = par_find_combination(12, 4, |c| c == [3, 5, 7, 11]);
        assert_eq!(hit, Some(vec![3, 5, 7, 11]));
        let (hit, n) = par_find_combination(6, 1, |c| c[0] == 9);
        assert!(hit.is_none());
        assert_eq!(n, 6);
    }
}
