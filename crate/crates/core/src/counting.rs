//! Bounded-multiplicity partitions and exhaustive censuses of zero-sum-free
//! and incomplete sequences.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{is_complete, is_zero_sum_free};
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::mask::SumsetMask;
use crate::residue::{PrimeModulus, ResidueSequence};

/// `p_m(0..=N)`: partitions in which each part occurs at most `m` times
/// (`m = None` for unrestricted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionTable {
    pub m: Option<u64>,
    pub values: Vec<BigUint>,
}

impl PartitionTable {
    pub fn build(n_max: u64, m: Option<u64>) -> Result<Self> {
        if m == Some(0) {
            return Err(Error::OutOfRange {
                what: "m",
                value: 0,
                lo: 1,
                hi: i64::MAX,
            });
        }
        let n = n_max as usize;
        let mut dp = vec![BigUint::zero(); n + 1];
        dp[0] = BigUint::one();
        for k in 1..=n {
            match m {
                Some(m) if (m as usize).saturating_mul(k) < n => {
                    // new[j] = Σ_{t=0..=m} old[j - t k], by running sums along
                    // each residue class of j mod k
                    let span = (m as usize + 1) * k;
                    let old = dp.clone();
                    for j in k..=n {
                        let mut v = &dp[j - k] + &old[j];
                        if j >= span {
                            v -= &old[j - span];
                        }
                        dp[j] = v;
                    }
                }
                _ => {
                    for j in k..=n {
                        let add = dp[j - k].clone();
                        dp[j] += add;
                    }
                }
            }
        }
        Ok(PartitionTable { m, values: dp })
    }

    pub fn get(&self, n: u64) -> Option<&BigUint> {
        self.values.get(n as usize)
    }
}

pub fn partition_count(n: u64, m: Option<u64>) -> Result<BigUint> {
    let t = PartitionTable::build(n, m)?;
    Ok(t.values[n as usize].clone())
}

/// Main-term exponent `sqrt((1 - 1/(m+1)) 2/3) π sqrt(n)`; `m = None` is the
/// unrestricted limit `π sqrt(2n/3)`.
pub fn meinardus_exponent(n: u64, m: Option<u64>) -> Result<f64> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    Ok(meinardus_constant(m) * (n as f64).sqrt())
}

fn meinardus_constant(m: Option<u64>) -> f64 {
    let frac = match m {
        Some(m) => 1.0 - 1.0 / (m as f64 + 1.0),
        None => 1.0,
    };
    (frac * 2.0 / 3.0).sqrt() * std::f64::consts::PI
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub p: u64,
    pub m: u64,
    pub sequences_total: BigUint,
    pub count_zero_sum_free: BigUint,
    pub count_incomplete: BigUint,
    /// `ln(count) / sqrt(p)`; absent when the count is zero.
    pub log_ratio_zsf: Option<f64>,
    pub log_ratio_inc: Option<f64>,
    /// `sqrt((1 - 1/(m+1)) 2/3) π`, for comparison with the log ratios.
    pub exponent_constant: f64,
    /// `p_m(p - 1)`.
    pub partition_lower_bound: BigUint,
}

fn log_ratio(count: &BigUint, p: u64) -> Option<f64> {
    if count.is_zero() {
        return None;
    }
    // ln of a big integer via its bit length and leading digits
    let bits = count.bits();
    let shift = bits.saturating_sub(60);
    let top = (count >> shift).to_f64().expect("fits");
    Some((top.ln() + shift as f64 * std::f64::consts::LN_2) / (p as f64).sqrt())
}

/// Sumset state while walking multiplicity vectors: `reach` includes the
/// empty sum, `nonempty` does not.
#[derive(Clone)]
struct State {
    reach: SumsetMask,
    nonempty: SumsetMask,
    size: u64,
}

impl State {
    fn new(p: PrimeModulus) -> Self {
        State {
            reach: SumsetMask::singleton(p, 0),
            nonempty: SumsetMask::empty(p),
            size: 0,
        }
    }

    fn push(&mut self, x: u64) {
        let sh = self.reach.shifted(x);
        self.nonempty.union_with(&sh);
        self.reach.union_with(&sh);
        self.size += 1;
    }
}

/// Visits every multiplicity vector over `x..p` extending `state`, calling
/// `leaf` on complete vectors. Subtrees whose nonempty sumset is already
/// full contain no zero-sum-free or incomplete sequence and are skipped.
fn walk(
    p: PrimeModulus,
    m: u64,
    x: u64,
    state: &State,
    mults: &mut Vec<u64>,
    leaf: &mut dyn FnMut(&State, &[u64]),
) {
    if state.nonempty.is_full() {
        return;
    }
    if x == p.get() {
        leaf(state, mults);
        return;
    }
    let mut s = state.clone();
    for c in 0..=m {
        if c > 0 {
            s.push(x);
        }
        mults.push(c);
        walk(p, m, x + 1, &s, mults, leaf);
        mults.pop();
        if s.nonempty.is_full() {
            break;
        }
    }
}

fn check_census_args(p: PrimeModulus, m: u64, budget: &Budget) -> Result<()> {
    if m < 1 || m > p.get() {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as i64,
            lo: 1,
            hi: p.get() as i64,
        });
    }
    budget.check(
        format!("(m+1)^p = {}^{} multiplicity vectors", m + 1, p.get()),
        &BigUint::from(m + 1).pow(p.get() as u32),
    )
}

/// Counts zero-sum-free and incomplete nonempty sequences over `Z_p` with
/// every multiplicity at most `m`.
pub fn census(p: PrimeModulus, m: u64, budget: &Budget) -> Result<CensusReport> {
    check_census_args(p, m, budget)?;
    let (zsf, inc) = (0..=m)
        .into_par_iter()
        .map(|c0| {
            let mut st = State::new(p);
            for _ in 0..c0 {
                st.push(0);
            }
            let mut zsf = 0u64;
            let mut inc = 0u64;
            let mut mults = vec![c0];
            walk(
                p,
                m,
                1,
                &st,
                &mut mults,
                &mut |s, _| {
                    if s.size == 0 {
                        return;
                    }
                    if !s.nonempty.contains(0) {
                        zsf += 1;
                    }
                    if !s.nonempty.is_full() {
                        inc += 1;
                    }
                },
            );
            (zsf, inc)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let count_zero_sum_free = BigUint::from(zsf);
    let count_incomplete = BigUint::from(inc);
    Ok(CensusReport {
        p: p.get(),
        m,
        sequences_total: BigUint::from(m + 1).pow(p.get() as u32) - 1u32,
        log_ratio_zsf: log_ratio(&count_zero_sum_free, p.get()),
        log_ratio_inc: log_ratio(&count_incomplete, p.get()),
        count_zero_sum_free,
        count_incomplete,
        exponent_constant: meinardus_constant(Some(m)),
        partition_lower_bound: partition_count(p.get() - 1, Some(m))?,
    })
}

/// The zero-sum-free and incomplete sequences themselves, in walk order.
pub fn census_members(
    p: PrimeModulus,
    m: u64,
    budget: &Budget,
) -> Result<(Vec<ResidueSequence>, Vec<ResidueSequence>)> {
    check_census_args(p, m, budget)?;
    let mut zsf = Vec::new();
    let mut inc = Vec::new();
    let mut err = None;
    walk(
        p,
        m,
        0,
        &State::new(p),
        &mut Vec::new(),
        &mut |s, mults| {
            if s.size == 0 || err.is_some() {
                return;
            }
            let pairs = mults.iter().enumerate().filter(|&(_, &c)| c > 0).map(|(x, &c)| (x as u64, c));
            match ResidueSequence::from_pairs(p, pairs) {
                Ok(a) => {
                    if !s.nonempty.contains(0) {
                        zsf.push(a.clone());
                    }
                    if !s.nonempty.is_full() {
                        inc.push(a);
                    }
                }
                Err(e) => err = Some(e),
            }
        },
    );
    match err {
        Some(e) => Err(e),
        None => Ok((zsf, inc)),
    }
}

fn check_parts(parts: &[u64]) -> Result<u64> {
    if parts.contains(&0) {
        return Err(Error::Precondition("partition parts must be positive".into()));
    }
    Ok(parts.iter().sum())
}

/// A partition of at most `p - 1` read as residues.
pub fn zsf_from_partition(parts: &[u64], p: PrimeModulus) -> Result<ResidueSequence> {
    if parts.is_empty() {
        return Err(Error::Empty("partition"));
    }
    let s = check_parts(parts)?;
    if s >= p.get() {
        return Err(Error::Precondition(format!("parts sum to {s} >= p = {p}")));
    }
    let a = ResidueSequence::from_elements(p, parts)?;
    if !is_zero_sum_free(&a)? {
        return Err(Error::Precondition(format!("internal: {a} is not zero-sum-free")));
    }
    Ok(a)
}

/// `pos ∪ (-neg)` as residues, with total at most `p - 2`.
pub fn incomplete_from_two_partitions(pos: &[u64], neg: &[u64], p: PrimeModulus) -> Result<ResidueSequence> {
    if pos.is_empty() && neg.is_empty() {
        return Err(Error::Empty("partitions"));
    }
    let s = check_parts(pos)? + check_parts(neg)?;
    if s + 2 > p.get() {
        return Err(Error::Precondition(format!("parts sum to {s} > p - 2 = {}", p.get() - 2)));
    }
    let signed: Vec<i64> = pos
        .iter()
        .map(|&x| x as i64)
        .chain(neg.iter().map(|&x| -(x as i64)))
        .collect();
    let a = ResidueSequence::from_signed(p, &signed)?;
    if is_complete(&a)? {
        return Err(Error::Precondition(format!("internal: {a} is complete")));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_count(5, Some(1)).unwrap(), big(3));
        assert_eq!(partition_count(0, Some(4)).unwrap(), big(1));
        assert_eq!(partition_count(4, Some(2)).unwrap(), big(4));
        assert_eq!(partition_count(5, None).unwrap(), big(7));
        assert_eq!(partition_count(10, None).unwrap(), big(42));
        assert_eq!(partition_count(10, Some(10)).unwrap(), big(42));
        assert_eq!(partition_count(100, None).unwrap(), big(190_569_292));
        assert!(partition_count(3, Some(0)).is_err());
    }

    #[test]
    fn partitions_match_enumeration() {
        for n in 0..=20 {
            for m in 1..=4 {
                assert_eq!(
                    partition_count(n, Some(m)).unwrap(),
                    big(oracle::count_partitions_bounded(n, m)),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn euler_distinct_equals_odd() {
        for n in 0..=50 {
            assert_eq!(
                partition_count(n, Some(1)).unwrap(),
                BigUint::from(oracle::count_odd_part_partitions(n))
            );
        }
    }

    #[test]
    fn table_monotone_in_m() {
        let t: Vec<_> = (1..=5).map(|m| PartitionTable::build(40, Some(m)).unwrap()).collect();
        for w in t.windows(2) {
            for n in 0..=40 {
                assert!(w[0].get(n).unwrap() <= w[1].get(n).unwrap());
            }
        }
    }

    #[test]
    fn meinardus_values() {
        let e = meinardus_exponent(100, Some(1)).unwrap();
        assert!((e - 18.138).abs() < 1e-3, "{e}");
        let n = 37.0f64;
        let e = meinardus_exponent(37, Some(1)).unwrap();
        assert!((e - std::f64::consts::PI * (n / 3.0).sqrt()).abs() < 1e-12);
        let e = meinardus_exponent(37, None).unwrap();
        assert!((e - std::f64::consts::PI * (2.0 * n / 3.0).sqrt()).abs() < 1e-12);
        assert!(meinardus_exponent(0, None).is_err());
    }

    fn brute_census(q: u64, m: u64) -> (u64, u64) {
        let pm = p(q);
        let mut zsf = 0;
        let mut inc = 0;
        let total = (m + 1).pow(q as u32);
        for code in 1..total {
            let mut c = code;
            let mut pairs = Vec::new();
            for x in 0..q {
                let k = c % (m + 1);
                c /= m + 1;
                if k > 0 {
                    pairs.push((x, k));
                }
            }
            let a = ResidueSequence::from_pairs(pm, pairs).unwrap();
            zsf += oracle::is_zero_sum_free(&a) as u64;
            inc += !oracle::is_complete(&a) as u64;
        }
        (zsf, inc)
    }

    #[test]
    fn census_examples() {
        let b = Budget::new(1_000_000u64);
        let r = census(p(3), 1, &b).unwrap();
        assert_eq!(r.count_zero_sum_free, big(2));
        assert_eq!(r.sequences_total, big(7));
        let r = census(p(2), 1, &b).unwrap();
        assert_eq!(r.count_zero_sum_free, big(1));
        let r = census(p(5), 1, &b).unwrap();
        assert_eq!(r.sequences_total, big(31));
        assert!(census(p(5), 0, &b).is_err());
        assert!(matches!(census(p(13), 3, &Budget::new(1000u64)), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn census_matches_brute_force() {
        let b = Budget::new(1_000_000u64);
        for (q, m) in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
            let r = census(p(q), m, &b).unwrap();
            let (zsf, inc) = brute_census(q, m);
            assert_eq!(r.count_zero_sum_free, big(zsf), "p={q} m={m}");
            assert_eq!(r.count_incomplete, big(inc), "p={q} m={m}");
            let (zl, il) = census_members(p(q), m, &b).unwrap();
            assert_eq!((zl.len() as u64, il.len() as u64), (zsf, inc));
        }
    }

    #[test]
    fn census_lower_bound() {
        let b = Budget::new(10_000_000u64);
        for q in [5, 7, 11] {
            for m in [1, 2] {
                let r = census(p(q), m, &b).unwrap();
                assert!(r.count_zero_sum_free >= r.partition_lower_bound, "p={q} m={m}");
                let lr = r.log_ratio_zsf.unwrap();
                let direct = r.count_zero_sum_free.to_f64().unwrap().ln() / (q as f64).sqrt();
                assert!((lr - direct).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn census_lists_closed_under_dilation() {
        let b = Budget::new(1_000_000u64);
        let (zsf, inc) = census_members(p(7), 2, &b).unwrap();
        for list in [zsf, inc] {
            let set: std::collections::BTreeSet<Vec<u64>> = list.iter().map(|a| a.elements()).collect();
            for bdil in 2..7 {
                let img: std::collections::BTreeSet<Vec<u64>> =
                    list.iter().map(|a| a.dilate(bdil).unwrap().elements()).collect();
                assert_eq!(img, set);
            }
        }
    }

    #[test]
    fn partition_constructions() {
        let a = zsf_from_partition(&[4, 3, 2, 1], p(11)).unwrap();
        assert_eq!(a.elements(), vec![1, 2, 3, 4]);
        assert!(zsf_from_partition(&[10], p(11)).is_ok());
        assert!(zsf_from_partition(&[6, 5], p(11)).is_err());
        assert!(zsf_from_partition(&[], p(11)).is_err());
        let a = incomplete_from_two_partitions(&[1, 2], &[1, 3], p(11)).unwrap();
        assert_eq!(a.elements(), vec![1, 2, 8, 10]);
        assert!(incomplete_from_two_partitions(&[], &[], p(11)).is_err());
        assert!(incomplete_from_two_partitions(&[4], &[4], p(11)).is_ok());
        assert!(incomplete_from_two_partitions(&[5], &[5], p(11)).is_err());
    }

    #[test]
    fn every_bounded_partition_gives_zero_sum_free() {
        for q in [7u64, 11, 13] {
            for part in oracle::list_partitions(q - 1) {
                let a = zsf_from_partition(&part, p(q)).unwrap();
                assert!(oracle::is_zero_sum_free(&a));
            }
        }
    }
}
