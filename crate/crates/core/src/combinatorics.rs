use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

pub(crate) fn falling(n: u64, k: usize) -> BigUint {
    if (k as u64) > n {
        return BigUint::ZERO;
    }
    (0..k as u64).fold(BigUint::one(), |acc, i| acc * (n - i))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Partitions of `m` into at most `max_parts` positive parts, each list
/// non-increasing, in reverse lexicographic order (`[m]` first).
pub(crate) fn integer_partitions(m: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Advance `p` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a larger successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Sum over injective maps of `blocks` into `parts` of the product of
/// `weight(part size, block size)`, by dynamic programming over parts with a
/// mask of used blocks.
pub(crate) fn injective_weighted_sum(
    blocks: &[usize],
    parts: &[u64],
    weight: impl Fn(u64, usize) -> BigUint,
) -> BigUint {
    let b = blocks.len();
    if b > parts.len() {
        return BigUint::ZERO;
    }
    let full = (1usize << b) - 1;
    let mut dp = alloc::vec![BigUint::ZERO; 1 << b];
    dp[0] = BigUint::one();
    for &size in parts {
        let mut next = dp.clone();
        for mask in 0..=full {
            if dp[mask] == BigUint::ZERO {
                continue;
            }
            for (j, &blk) in blocks.iter().enumerate() {
                if mask >> j & 1 == 0 {
                    let w = weight(size, blk);
                    if w != BigUint::ZERO {
                        next[mask | 1 << j] += &dp[mask] * w;
                    }
                }
            }
        }
        dp = next;
    }
    dp.swap_remove(full)
}
