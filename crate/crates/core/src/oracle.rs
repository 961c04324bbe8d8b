//! Slow, direct reference implementations.
//!
//! Nothing here shares code with the production paths it is compared
//! against: sums are enumerated selection by selection, partitions are
//! listed one by one.

use std::collections::BTreeSet;

use crate::mask::SumsetMask;
use crate::residue::ResidueSequence;

/// `Σ(A)` by enumerating every nonempty selection of positions.
pub fn sigma(a: &ResidueSequence) -> BTreeSet<u64> {
    let q = a.modulus().get();
    let elems = a.elements();
    let n = elems.len();
    assert!(n <= 24, "oracle enumeration limited to 24 elements");
    let mut out = BTreeSet::new();
    for sel in 1u32..(1u32 << n) {
        let s: u64 = (0..n).filter(|i| sel >> i & 1 == 1).map(|i| elems[i]).sum();
        out.insert(s % q);
    }
    out
}

/// `Σ_l(A)` by enumerating every selection of exactly `l` positions.
pub fn sigma_l(a: &ResidueSequence, l: u64) -> BTreeSet<u64> {
    let q = a.modulus().get();
    let elems = a.elements();
    let n = elems.len();
    assert!(n <= 24, "oracle enumeration limited to 24 elements");
    let mut out = BTreeSet::new();
    for sel in 0u32..(1u32 << n) {
        if sel.count_ones() as u64 != l {
            continue;
        }
        let s: u64 = (0..n).filter(|i| sel >> i & 1 == 1).map(|i| elems[i]).sum();
        out.insert(s % q);
    }
    out
}

/// `Σ_l(A)` for every `l` in `0..=|A|` from one pass over all selections.
pub fn sigma_layers(a: &ResidueSequence) -> Vec<BTreeSet<u64>> {
    let q = a.modulus().get() as usize;
    let elems = a.elements();
    let n = elems.len();
    assert!(n <= 24, "oracle enumeration limited to 24 elements");
    let mut hit = vec![vec![false; q]; n + 1];
    for sel in 0u32..(1u32 << n) {
        let s: u64 = (0..n).filter(|i| sel >> i & 1 == 1).map(|i| elems[i]).sum();
        hit[sel.count_ones() as usize][s as usize % q] = true;
    }
    hit.into_iter()
        .map(|row| (0..q as u64).filter(|&x| row[x as usize]).collect())
        .collect()
}

/// Subset sums through the multiplicity vectors of all sub-multisets.
fn sub_multiset_sums(a: &ResidueSequence, mut keep: impl FnMut(u64) -> bool) -> BTreeSet<u64> {
    let q = a.modulus().get();
    let pairs: Vec<(u64, u64)> = a.iter().collect();
    let mut choice = vec![0u64; pairs.len()];
    let mut out = BTreeSet::new();
    loop {
        let size: u64 = choice.iter().sum();
        if keep(size) {
            let s: u64 = pairs
                .iter()
                .zip(&choice)
                .map(|(&(x, _), &c)| x * c % q)
                .sum();
            out.insert(s % q);
        }
        let mut i = 0;
        loop {
            if i == pairs.len() {
                return out;
            }
            if choice[i] < pairs[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Zero-sum-free by walking every nonempty sub-multiset.
pub fn is_zero_sum_free(a: &ResidueSequence) -> bool {
    !sub_multiset_sums(a, |s| s > 0).contains(&0)
}

pub fn is_complete(a: &ResidueSequence) -> bool {
    sub_multiset_sums(a, |s| s > 0).len() as u64 == a.modulus().get()
}

pub fn is_l_zero_sum_free(a: &ResidueSequence, l: u64) -> bool {
    !sub_multiset_sums(a, |s| s == l).contains(&0)
}

pub fn is_l_complete(a: &ResidueSequence, l: u64) -> bool {
    sub_multiset_sums(a, |s| s == l).len() as u64 == a.modulus().get()
}

/// `(length, diff, start)` of the longest progression: every `(d, start)`
/// pair is extended term by term.
pub fn longest_ap(mask: &SumsetMask) -> (u64, u64, u64) {
    let q = mask.modulus().get();
    let mut best = (0u64, 0u64, 0u64);
    for d in 1..q {
        for s in 0..q {
            let mut len = 0;
            while len < q && mask.contains((s + len * d) % q) {
                len += 1;
            }
            if len > best.0 {
                best = (len, d, s);
            }
        }
    }
    best
}

/// K-net by checking every residue against every candidate.
pub fn is_knet(set: &SumsetMask, k: u64) -> bool {
    let q = set.modulus().get();
    (0..q).all(|n| set.iter().any(|x| (n + q - x) % q <= k))
}

/// Every partition of `n` as a nonincreasing list of parts.
pub fn list_partitions(n: u64) -> Vec<Vec<u64>> {
    fn rec(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` where no part value repeats more than `m` times.
pub fn count_partitions_bounded(n: u64, m: u64) -> u64 {
    list_partitions(n)
        .into_iter()
        .filter(|parts| {
            let mut i = 0;
            while i < parts.len() {
                let j = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
                if j as u64 > m {
                    return false;
                }
                i += j;
            }
            true
        })
        .count() as u64
}

/// Partitions of `n` into odd parts, by recursion on the largest part.
pub fn count_odd_part_partitions(n: u64) -> u128 {
    fn rec(n: u64, max_odd: u64, memo: &mut std::collections::HashMap<(u64, u64), u128>) -> u128 {
        if n == 0 {
            return 1;
        }
        if max_odd == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(n, max_odd)) {
            return v;
        }
        let mut total = 0;
        let mut k = 0;
        while k * max_odd <= n {
            total += rec(n - k * max_odd, max_odd.saturating_sub(2), memo);
            k += 1;
        }
        memo.insert((n, max_odd), total);
        total
    }
    let top = if n % 2 == 1 { n } else { n.saturating_sub(1) };
    rec(n, top, &mut std::collections::HashMap::new())
}
