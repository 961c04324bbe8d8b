//! The extremal families: long zero-sum-free sequences
//! `{1^[m], …, (n-1)^[m], n^[k]}`, long incomplete and `l`-incomplete
//! symmetric sequences `{(-n)^[k], …, 0^[m], …, n^[k]}`, the size threshold
//! `n(p)` for zero-sum-free sets, and its exhaustive scan.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{is_complete, is_l_complete, is_zero_sum_free};
use crate::enumerate::{binomial, Budget, Combinations};
use crate::error::{Error, Result};
use crate::residue::{norm, PrimeModulus, ResidueSequence};
use crate::sumset::lsum_range_int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A1,
    A2,
    A3,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(Family::A1),
            "A2" => Ok(Family::A2),
            "A3" => Ok(Family::A3),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub family: Family,
    pub p: u64,
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub l: Option<u64>,
    pub sequence: ResidueSequence,
    /// No `(n, k)` with `n, k >= 1` fits; only the zero block remains.
    pub degenerate: bool,
}

fn check_m(p: PrimeModulus, m: u64) -> Result<()> {
    if m < 1 || m > p.get() {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as i64,
            lo: 1,
            hi: p.get() as i64,
        });
    }
    Ok(())
}

/// Largest `n` with `1 + 2 + … + (n-1) < p`.
pub fn n_of_p(p: PrimeModulus) -> u64 {
    let q = p.get() as u128;
    let mut n: u128 = 1;
    while (n + 1) * n / 2 < q {
        n += 1;
    }
    n as u64
}

/// Walks `(n, k)` in increasing order (`n >= 1`, `1 <= k <= m`, `n <= n_max`)
/// while `fits` holds; returns the last fitting pair. Each step adds
/// elements, so once a pair fails every later one fails too.
fn last_fitting(m: u64, n_max: u64, mut fits: impl FnMut(u64, u64) -> Option<bool>) -> Option<(u64, u64)> {
    let mut best = None;
    for n in 1..=n_max {
        for k in 1..=m {
            match fits(n, k) {
                Some(true) => best = Some((n, k)),
                Some(false) => return best,
                None => {}
            }
        }
    }
    best
}

fn a1_sequence(p: PrimeModulus, m: u64, n: u64, k: u64) -> Result<ResidueSequence> {
    let mut pairs: Vec<(u64, u64)> = (1..n).map(|i| (i, m)).collect();
    pairs.push((n, k));
    ResidueSequence::from_pairs(p, pairs)
}

fn symmetric_sequence(p: PrimeModulus, m: u64, n: u64, k: u64) -> Result<ResidueSequence> {
    let q = p.get();
    let mut pairs = vec![(0, m)];
    for i in 1..n {
        pairs.push((i, m));
        pairs.push((q - i, m));
    }
    if n >= 1 {
        pairs.push((n, k));
        pairs.push((q - n, k));
    }
    ResidueSequence::from_pairs(p, pairs)
}

/// `{1^[m], …, (n-1)^[m], n^[k]}` of maximum cardinality with element sum
/// at most `p - 1`.
pub fn build_a1(p: PrimeModulus, m: u64) -> Result<ExtremalSpec> {
    check_m(p, m)?;
    let cap = p.get() as u128 - 1;
    let (n, k) = last_fitting(m, p.get() - 1, |n, k| {
        let (n, k, m) = (n as u128, k as u128, m as u128);
        Some(m * n * (n - 1) / 2 + k * n <= cap)
    })
    .expect("n = k = 1 always fits for p >= 2");
    let sequence = a1_sequence(p, m, n, k)?;
    if !is_zero_sum_free(&sequence)? {
        return Err(Error::Precondition(format!("internal: {sequence} is not zero-sum-free")));
    }
    Ok(ExtremalSpec {
        family: Family::A1,
        p: p.get(),
        m,
        n,
        k,
        l: None,
        sequence,
        degenerate: false,
    })
}

/// Symmetric `{(-n)^[k], …, 0^[m], …, n^[k]}` of maximum cardinality with
/// norm sum at most `p - 2`.
pub fn build_a2(p: PrimeModulus, m: u64) -> Result<ExtremalSpec> {
    check_m(p, m)?;
    let cap = p.get() as u128 - 2;
    let found = last_fitting(m, p.half(), |n, k| {
        let (n, k, m) = (n as u128, k as u128, m as u128);
        Some(m * n * (n - 1) + 2 * k * n <= cap)
    });
    let (n, k, degenerate) = match found {
        Some((n, k)) => (n, k, false),
        None => (0, 0, true),
    };
    let sequence = symmetric_sequence(p, m, n, k)?;
    if is_complete(&sequence)? {
        return Err(Error::Precondition(format!("internal: {sequence} is complete")));
    }
    Ok(ExtremalSpec {
        family: Family::A2,
        p: p.get(),
        m,
        n,
        k,
        l: None,
        sequence,
        degenerate,
    })
}

/// Symmetric family of maximum cardinality whose `l`-sums lie in fewer than
/// `p` consecutive integers. `None` when no member has at least `l` elements
/// and a narrow enough range.
pub fn build_a3(p: PrimeModulus, m: u64, l: u64) -> Result<Option<ExtremalSpec>> {
    check_m(p, m)?;
    if l < 1 {
        return Err(Error::OutOfRange {
            what: "l",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let q = p.get() as i64;
    let found = last_fitting(m, p.half(), |n, k| {
        let card = (2 * n - 1) * m + 2 * k;
        if card < l {
            return None;
        }
        let mut vals: Vec<i64> = vec![0; m as usize];
        for i in 1..n as i64 {
            vals.extend(std::iter::repeat_n(i, m as usize));
            vals.extend(std::iter::repeat_n(-i, m as usize));
        }
        vals.extend(std::iter::repeat_n(n as i64, k as usize));
        vals.extend(std::iter::repeat_n(-(n as i64), k as usize));
        let r = lsum_range_int(&vals, l as usize).expect("card >= l");
        Some(r.count() < q)
    });
    let Some((n, k)) = found else {
        return Ok(None);
    };
    let sequence = symmetric_sequence(p, m, n, k)?;
    if is_l_complete(&sequence, l)? {
        return Err(Error::Precondition(format!("internal: {sequence} is {l}-complete")));
    }
    Ok(Some(ExtremalSpec {
        family: Family::A3,
        p: p.get(),
        m,
        n,
        k,
        l: Some(l),
        sequence,
        degenerate: false,
    }))
}

pub fn build(family: Family, p: PrimeModulus, m: u64, l: Option<u64>) -> Result<Option<ExtremalSpec>> {
    match family {
        Family::A1 => build_a1(p, m).map(Some),
        Family::A2 => build_a2(p, m).map(Some),
        Family::A3 => {
            let l = l.ok_or_else(|| Error::Precondition("family A3 needs l".into()))?;
            build_a3(p, m, l)
        }
    }
}

/// Sum of norms, used in reports on the A2 family.
pub fn norm_sum(a: &ResidueSequence) -> u64 {
    let p = a.modulus();
    a.iter().map(|(x, m)| norm(x, p) * m).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zerofree3Extremal {
    pub p: u64,
    pub n: u64,
    /// `{-2, 1, 3, 4, …, n(p)}` reduced mod `p`.
    pub sequence: ResidueSequence,
    /// `p = n(p)(n(p) + 1)/2 - 1`.
    pub special: bool,
    /// False when two of the listed integers collide mod `p`.
    pub is_set: bool,
}

/// The candidate extremal zero-sum-free set of size `n(p)`.
pub fn zerofree3_extremal(p: PrimeModulus) -> Result<Zerofree3Extremal> {
    let n = n_of_p(p);
    if n < 3 {
        return Err(Error::Precondition(format!("n(p) = {n} < 3 for p = {p}")));
    }
    let mut ints: Vec<i64> = vec![-2, 1];
    ints.extend(3..=n as i64);
    let sequence = ResidueSequence::from_signed(p, &ints)?;
    let special = p.get() as u128 == (n as u128) * (n as u128 + 1) / 2 - 1;
    Ok(Zerofree3Extremal {
        p: p.get(),
        n,
        is_set: sequence.is_set() && sequence.len() == n,
        sequence,
        special,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zerofree3Scan {
    pub p: u64,
    pub n: u64,
    pub special: bool,
    pub subsets_checked: u64,
    /// Zero-sum-free `n(p)`-subsets of `Z_p ∖ {0}`, in lexicographic order.
    pub zero_sum_free: Vec<ResidueSequence>,
}

/// Every `n(p)`-subset of the nonzero residues, tested for zero-sum-freeness.
pub fn zerofree3_scan(p: PrimeModulus, budget: &Budget) -> Result<Zerofree3Scan> {
    let n = n_of_p(p);
    let q = p.get();
    budget.check(
        format!("{n}-subsets of Z_{q} without 0"),
        &binomial(q - 1, n),
    )?;
    let combos: Vec<Vec<usize>> = Combinations::new(q as usize - 1, n as usize).collect();
    let hits: Vec<ResidueSequence> = combos
        .par_iter()
        .map(|c| {
            let elems: Vec<u64> = c.iter().map(|&i| i as u64 + 1).collect();
            let a = ResidueSequence::from_elements(p, &elems)?;
            Ok(is_zero_sum_free(&a)?.then_some(a))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(Zerofree3Scan {
        p: q,
        n,
        special: q as u128 == (n as u128) * (n as u128 + 1) / 2 - 1,
        subsets_checked: combos.len() as u64,
        zero_sum_free: hits,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A1Embedding {
    pub b: u64,
    pub a_flat: ResidueSequence,
}

/// Dilation `b` and smallest `A♭` with `b·(A∖A♭)` a sub-multiset of the
/// `A1` family for `(p, m)`. For fixed `b` the excess over the family's
/// multiplicities is exactly what must go, so this is exact.
pub fn thm_zerofree1_witness(a: &ResidueSequence, m: u64, budget: u64) -> Result<Option<A1Embedding>> {
    let p = a.modulus();
    if !is_zero_sum_free(a)? {
        return Err(Error::Precondition(format!("{a} is not zero-sum-free")));
    }
    if a.max_multiplicity() > m {
        return Err(Error::Precondition(format!(
            "m(A) = {} exceeds m = {m}",
            a.max_multiplicity()
        )));
    }
    let target = build_a1(p, m)?.sequence;
    let best = (1..p.get())
        .into_par_iter()
        .map(|b| {
            let b_inv = p.inverse(b).expect("b nonzero");
            let mut flat = Vec::new();
            for (x, mx) in a.iter() {
                let y = p.mul(b, x);
                let excess = mx.saturating_sub(target.multiplicity(y));
                if excess > 0 {
                    flat.push((p.mul(y, b_inv), excess));
                }
            }
            let size: u64 = flat.iter().map(|&(_, e)| e).sum();
            (size, b, flat)
        })
        .filter(|(size, _, _)| *size <= budget)
        .min_by_key(|(size, b, _)| (*size, *b));
    best.map(|(_, b, flat)| {
        Ok(A1Embedding {
            b,
            a_flat: ResidueSequence::from_pairs(p, flat)?,
        })
    })
    .transpose()
}
