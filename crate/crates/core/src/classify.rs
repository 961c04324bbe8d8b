//! Zero-sum-free / complete classification, exact and sufficient-condition
//! variants, and the exhaustive completeness-threshold check.

use serde::{Deserialize, Serialize};

use crate::enumerate::{binomial, Budget, Combinations};
use crate::error::{Error, Result};
use crate::residue::{norm, PrimeModulus, ResidueSequence};
use crate::sumset::{sigma, LsumTable};

fn check_l_positive(a: &ResidueSequence, l: u64) -> Result<()> {
    if l < 1 || l > a.len() {
        return Err(Error::OutOfRange {
            what: "l",
            value: l as i64,
            lo: 1,
            hi: a.len() as i64,
        });
    }
    Ok(())
}

pub fn is_zero_sum_free(a: &ResidueSequence) -> Result<bool> {
    Ok(!sigma(a)?.contains(0))
}

pub fn is_complete(a: &ResidueSequence) -> Result<bool> {
    Ok(sigma(a)?.is_full())
}

pub fn is_l_zero_sum_free(a: &ResidueSequence, l: u64) -> Result<bool> {
    check_l_positive(a, l)?;
    Ok(!LsumTable::build(a, l).layer(l).contains(0))
}

pub fn is_l_complete(a: &ResidueSequence, l: u64) -> Result<bool> {
    check_l_positive(a, l)?;
    Ok(LsumTable::build(a, l).layer(l).is_full())
}

/// Sufficient condition: every element nonzero and the elements, read as
/// integers in `[1, p-1]`, sum to less than `p`.
pub fn zero_sum_free_by_small_sum(a: &ResidueSequence) -> bool {
    !a.contains(0) && {
        let s: u128 = a.iter().map(|(x, m)| x as u128 * m as u128).sum();
        s < a.modulus().get() as u128
    }
}

/// Sufficient condition: `Σ ‖a‖ < p - 1`.
pub fn incomplete_by_small_norm(a: &ResidueSequence) -> bool {
    let p = a.modulus();
    let s: u128 = a.iter().map(|(x, m)| norm(x, p) as u128 * m as u128).sum();
    s + 1 < p.get() as u128
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LClassification {
    pub l: u64,
    pub l_zero_sum_free: bool,
    pub l_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub sequence: ResidueSequence,
    pub zero_sum_free: bool,
    pub complete: bool,
    pub l_results: Vec<LClassification>,
}

/// Full report; `ls` lists the `l` values to include (each in `[1, |A|]`).
pub fn classify(a: &ResidueSequence, ls: &[u64]) -> Result<ClassificationReport> {
    let sig = sigma(a)?;
    for &l in ls {
        check_l_positive(a, l)?;
    }
    let cap = ls.iter().copied().max().unwrap_or(0);
    let table = LsumTable::build(a, cap);
    let l_results = ls
        .iter()
        .map(|&l| LClassification {
            l,
            l_zero_sum_free: !table.layer(l).contains(0),
            l_complete: table.layer(l).is_full(),
        })
        .collect();
    Ok(ClassificationReport {
        sequence: a.clone(),
        zero_sum_free: !sig.contains(0),
        complete: sig.is_full(),
        l_results,
    })
}

/// Smallest integer `k` with `k^2 > 4p - 3`.
pub fn olson_min_size(p: PrimeModulus) -> u64 {
    let bound = 4 * p.get() - 3;
    let mut k = (bound as f64).sqrt() as u64;
    while k * k > bound {
        k -= 1;
    }
    while k * k <= bound {
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OlsonReport {
    pub p: u64,
    pub min_size: u64,
    pub subsets_checked: u64,
    pub violations: Vec<ResidueSequence>,
}

/// Every subset of `Z_p` with more than `sqrt(4p - 3)` elements, tested
/// for completeness. Returns the incomplete ones.
pub fn olson_threshold_check(p: PrimeModulus, budget: &Budget) -> Result<OlsonReport> {
    let q = p.get();
    let min_size = olson_min_size(p);
    let required: num_bigint::BigUint = (min_size..=q).map(|k| binomial(q, k)).sum();
    budget.check(format!("subsets of Z_{q} with at least {min_size} elements"), &required)?;
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for k in min_size..=q {
        for comb in Combinations::new(q as usize, k as usize) {
            let elems: Vec<u64> = comb.iter().map(|&i| i as u64).collect();
            let a = ResidueSequence::from_elements(p, &elems)?;
            checked += 1;
            if !is_complete(&a)? {
                violations.push(a);
            }
        }
    }
    Ok(OlsonReport {
        p: q,
        min_size,
        subsets_checked: checked,
        violations,
    })
}
