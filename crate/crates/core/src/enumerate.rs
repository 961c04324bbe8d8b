//! Enumeration budgets and the combinatorial walkers used by the
//! exhaustive checks.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Environment variable overriding the default enumeration limit.
pub const BUDGET_ENV: &str = "ZEROSUM_MAX_ENUMERATION";
pub const DEFAULT_MAX_ENUMERATION: u64 = 50_000_000;

/// Upper bound on the number of objects an exhaustive job may visit.
/// Jobs compute their size in closed form and refuse before starting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: BigUint,
}

impl Budget {
    pub fn new(limit: impl Into<BigUint>) -> Self {
        Budget { limit: limit.into() }
    }

    /// The default limit, or the value of `ZEROSUM_MAX_ENUMERATION` if set.
    pub fn from_env() -> Self {
        let limit = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<BigUint>().ok())
            .unwrap_or_else(|| BigUint::from(DEFAULT_MAX_ENUMERATION));
        Budget { limit }
    }

    pub fn limit(&self) -> &BigUint {
        &self.limit
    }

    pub fn check(&self, what: impl Into<String>, required: &BigUint) -> Result<()> {
        if *required > self.limit {
            Err(Error::BudgetExceeded {
                what: what.into(),
                required: required.to_string(),
                limit: self.limit.to_string(),
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of multisets of `size` elements drawn from `kinds` kinds.
pub fn multiset_count(kinds: u64, size: u64) -> BigUint {
    if kinds == 0 {
        return if size == 0 { BigUint::one() } else { BigUint::from(0u32) };
    }
    binomial(size + kinds - 1, kinds - 1)
}

pub fn to_u64_saturating(x: &BigUint) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}

/// Lexicographic `k`-combinations of `0..n`.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Every way to write `total` as an ordered sum of `parts` nonnegative
/// integers, i.e. multiplicity vectors of size-`total` multisets.
pub struct Compositions {
    cur: Vec<u64>,
    total: u64,
    done: bool,
}

impl Compositions {
    pub fn new(parts: usize, total: u64) -> Self {
        if parts == 0 {
            return Compositions {
                cur: Vec::new(),
                total,
                done: total != 0,
            };
        }
        let mut cur = vec![0; parts];
        cur[parts - 1] = total;
        Compositions {
            cur,
            total,
            done: false,
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let n = self.cur.len();
        if n <= 1 {
            self.done = true;
            return Some(out);
        }
        // The last coordinate absorbs the remainder; advance the prefix as an
        // odometer constrained by the prefix sum.
        let mut i = n - 1;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix: u64 = self.cur[..=i].iter().sum();
            if prefix < self.total {
                self.cur[i] += 1;
                for j in i + 1..n - 1 {
                    self.cur[j] = 0;
                }
                let used: u64 = self.cur[..n - 1].iter().sum();
                self.cur[n - 1] = self.total - used;
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(19, 6), BigUint::from(27132u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(multiset_count(3, 5), BigUint::from(21u32));
        assert_eq!(multiset_count(5, 9), BigUint::from(715u32));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(10, 5).count(), 252);
        assert_eq!(Combinations::new(4, 0).count(), 1);
        assert_eq!(Combinations::new(3, 4).count(), 0);
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
    }

    #[test]
    fn compositions_count() {
        for parts in 1..5usize {
            for total in 0..7u64 {
                let all: Vec<_> = Compositions::new(parts, total).collect();
                assert_eq!(all.len() as u64, to_u64_saturating(&multiset_count(parts as u64, total)));
                assert!(all.iter().all(|v| v.iter().sum::<u64>() == total));
                let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
            }
        }
        assert_eq!(Compositions::new(0, 0).count(), 1);
        assert_eq!(Compositions::new(0, 2).count(), 0);
    }

    #[test]
    fn budget_refuses() {
        let b = Budget::new(100u32);
        assert!(b.check("x", &BigUint::from(100u32)).is_ok());
        assert!(matches!(
            b.check("x", &BigUint::from(101u32)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
