//! Constructive zero-sum and Chinese-remainder lemmas over `Z_D`, and
//! seeded probes of the `l`-sum growth and long-progression statements.

use std::collections::VecDeque;

use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{Budget, Combinations};
use crate::error::{Error, Result};
use crate::residue::{PrimeModulus, ResidueSequence};
use crate::sumset::{longest_ap, sigma_l, LsumTable};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// `(g, x)` with `g = gcd(a, m)` and `a x ≡ g (mod m)`.
fn ext_gcd(a: i128, m: i128) -> (i128, i128) {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r, old_s)
}

fn check_modulus(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::OutOfRange {
            what: "D",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    Ok(())
}

fn check_target(r: u64, d: u64) -> Result<()> {
    if r >= d {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as i64,
            lo: 0,
            hi: d as i64 - 1,
        });
    }
    Ok(())
}

/// Positions in the input and the values found there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub indices: Vec<usize>,
    pub values: Vec<u64>,
}

impl Selection {
    fn from_indices(x: &[u64], indices: Vec<usize>) -> Self {
        let values = indices.iter().map(|&i| x[i]).collect();
        Selection { indices, values }
    }

    pub fn sum_mod(&self, d: u64) -> u64 {
        self.values.iter().fold(0u64, |s, &v| ((s as u128 + v as u128) % d as u128) as u64)
    }
}

/// A nonempty block of `D` residues summing to 0 mod `D`, by pigeonhole on
/// prefix sums.
pub fn zero_subset_mod_d(x: &[u64], d: u64) -> Result<Selection> {
    check_modulus(d)?;
    if x.len() as u64 != d {
        return Err(Error::Precondition(format!("|X| = {} but D = {d}", x.len())));
    }
    if let Some(i) = x.iter().position(|&v| v % d == 0) {
        return Ok(Selection::from_indices(x, vec![i]));
    }
    let mut first_seen = vec![usize::MAX; d as usize];
    first_seen[0] = 0;
    let mut s = 0u64;
    for (i, &v) in x.iter().enumerate() {
        s = ((s as u128 + v as u128) % d as u128) as u64;
        let j = first_seen[s as usize];
        if j != usize::MAX {
            return Ok(Selection::from_indices(x, (j..=i).collect()));
        }
        first_seen[s as usize] = i + 1;
    }
    unreachable!("D + 1 prefix sums in D classes")
}

/// A sub-multiset of `X` (all elements coprime to `D`, `|X| = D`) with sum
/// `r` mod `D`; nonempty even for `r = 0`.
pub fn full_sumset_coprime(x: &[u64], d: u64, r: u64) -> Result<Selection> {
    check_modulus(d)?;
    check_target(r, d)?;
    if x.len() as u64 != d {
        return Err(Error::Precondition(format!("|X| = {} but D = {d}", x.len())));
    }
    if let Some(&bad) = x.iter().find(|&&v| gcd(v % d, d) != 1) {
        return Err(Error::Precondition(format!(
            "element {bad} shares the factor {} with D = {d}",
            gcd(bad % d, d)
        )));
    }
    if r == 0 {
        return zero_subset_mod_d(x, d);
    }
    // took[i][s]: sum s first reached when item i was added
    let n = x.len();
    let du = d as usize;
    let mut reach = vec![false; du];
    reach[0] = true;
    let mut took: Vec<Vec<bool>> = Vec::with_capacity(n);
    for &v in x {
        let v = (v % d) as usize;
        let mut row = vec![false; du];
        let prev = reach.clone();
        for s in 0..du {
            if prev[s] && !reach[(s + v) % du] {
                reach[(s + v) % du] = true;
                row[(s + v) % du] = true;
            }
        }
        took.push(row);
    }
    if !reach[r as usize] {
        return Err(Error::Precondition(format!("internal: {r} not reached mod {d}")));
    }
    let mut idx = Vec::new();
    let mut s = r as usize;
    for i in (0..n).rev() {
        if s == 0 {
            break;
        }
        if took[i][s] {
            idx.push(i);
            s = (s + du - (x[i] % d) as usize) % du;
        }
    }
    idx.reverse();
    Ok(Selection::from_indices(x, idx))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtRepresentation {
    pub d_list: Vec<u64>,
    #[serde(rename = "D")]
    pub modulus: u64,
    pub r: u64,
    pub a_list: Vec<u64>,
}

impl CrtRepresentation {
    /// `Σ a_i (D / d_i) ≡ r (mod D)` with `0 <= a_i < d_i`.
    pub fn satisfies_unit_fractions(&self) -> bool {
        let d = BigUint::from(self.modulus);
        let s: BigUint = self
            .d_list
            .iter()
            .zip(&self.a_list)
            .map(|(&di, &ai)| BigUint::from(ai) * (self.modulus / di))
            .sum();
        self.d_list.iter().zip(&self.a_list).all(|(&di, &ai)| ai < di) && s % &d == BigUint::from(self.r) % &d
    }

    /// `Σ a_i d_i ≡ r (mod D)` with `Σ a_i <= D`.
    pub fn satisfies_bounded(&self) -> bool {
        let d = BigUint::from(self.modulus);
        let s: BigUint = self
            .d_list
            .iter()
            .zip(&self.a_list)
            .map(|(&di, &ai)| BigUint::from(ai) * di)
            .sum();
        let total: BigUint = self.a_list.iter().map(|&a| BigUint::from(a)).sum();
        total <= d && s % &d == BigUint::from(self.r) % &d
    }

    pub fn a_sum(&self) -> u64 {
        self.a_list.iter().sum()
    }
}

fn check_d_list(d_list: &[u64]) -> Result<()> {
    if d_list.is_empty() {
        return Err(Error::Empty("d_list"));
    }
    if d_list.contains(&0) {
        return Err(Error::Precondition("d_i must be positive".into()));
    }
    Ok(())
}

/// Lexicographically least `0 <= a_i < d_i` with `Σ a_i / d_i ≡ r / D
/// (mod 1)`, `D = lcm(d_i)`.
pub fn crt_unit_fractions(d_list: &[u64], r: u64) -> Result<CrtRepresentation> {
    check_d_list(d_list)?;
    let mut sorted = d_list.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Precondition(format!("d_i must be distinct, {} repeats", w[0])));
    }
    let d = d_list
        .iter()
        .try_fold(1u64, |acc, &x| lcm(acc, x))
        .ok_or_else(|| Error::Precondition("lcm overflows 64 bits".into()))?;
    check_target(r, d)?;
    let e: Vec<u64> = d_list.iter().map(|&di| d / di).collect();
    // g[i] = gcd(e_i, …, e_n, D); the remainder after choosing a_0..a_{i-1}
    // must be a multiple of g[i]
    let mut g = vec![d; e.len() + 1];
    for i in (0..e.len()).rev() {
        g[i] = gcd(e[i], g[i + 1]);
    }
    debug_assert_eq!(g[0], 1);
    let mut rem = r as i128;
    let mut a_list = Vec::with_capacity(e.len());
    for (i, &ei) in e.iter().enumerate() {
        // least a >= 0 with a e_i ≡ rem (mod g[i+1])
        let m = g[i + 1] as i128;
        let (h, inv) = ext_gcd(ei as i128 % m, m);
        let h = if h == 0 { m } else { h };
        if rem.rem_euclid(h) != 0 {
            return Err(Error::Precondition(format!("internal: no a_{i} for remainder {rem}")));
        }
        let step = m / h;
        let a = ((rem / h) % step * (inv % step)).rem_euclid(step) as u64;
        a_list.push(a);
        rem = (rem - a as i128 * ei as i128).rem_euclid(d as i128);
    }
    let rep = CrtRepresentation {
        d_list: d_list.to_vec(),
        modulus: d,
        r,
        a_list,
    };
    if !rep.satisfies_unit_fractions() {
        return Err(Error::Precondition(format!("internal: {rep:?} fails its congruence")));
    }
    Ok(rep)
}

/// Fewest total steps `Σ a_i` with `Σ a_i d_i ≡ r (mod D)`, by breadth-first
/// search over `Z_D` with generators tried in list order.
pub fn crt_bounded(d_list: &[u64], d: u64, r: u64, budget: &Budget) -> Result<CrtRepresentation> {
    check_d_list(d_list)?;
    check_modulus(d)?;
    check_target(r, d)?;
    let g = d_list.iter().fold(d, |acc, &x| gcd(acc, x));
    if g != 1 {
        return Err(Error::Precondition(format!("gcd(d_1, …, d_n, D) = {g} != 1")));
    }
    budget.check(format!("states of Z_{d}"), &BigUint::from(d))?;
    let du = d as usize;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; du];
    let mut seen = vec![false; du];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        if s == r as usize {
            break;
        }
        for (gi, &di) in d_list.iter().enumerate() {
            let t = ((s as u128 + di as u128) % d as u128) as usize;
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((s, gi));
                queue.push_back(t);
            }
        }
    }
    let mut a_list = vec![0u64; d_list.len()];
    let mut s = r as usize;
    while let Some((prev, gi)) = parent[s] {
        a_list[gi] += 1;
        s = prev;
    }
    let rep = CrtRepresentation {
        d_list: d_list.to_vec(),
        modulus: d,
        r,
        a_list,
    };
    if !rep.satisfies_bounded() {
        return Err(Error::Precondition(format!("internal: {rep:?} fails its congruence")));
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OlsonProbeReport {
    pub p: u64,
    pub subsets_checked: u64,
    /// Least `|Σ_l(A)| / |A|^2` with `l = ⌊|A|/2⌋`, and where it occurs.
    pub min_ratio: f64,
    pub minimizer: ResidueSequence,
    /// `(|A|, least ratio at that size)`.
    pub per_size: Vec<(u64, f64)>,
}

/// Every subset `A` of `Z_p` with `2 <= |A| <= p - 1`.
pub fn olson_lsum_probe(p: PrimeModulus, budget: &Budget) -> Result<OlsonProbeReport> {
    let q = p.get();
    if q < 3 {
        return Err(Error::Precondition("need p >= 3".into()));
    }
    budget.check(format!("subsets of Z_{q}"), &(BigUint::from(1u32) << q))?;
    let per: Vec<(u64, u64, f64, ResidueSequence)> = (2..q)
        .into_par_iter()
        .map(|k| {
            let l = k / 2;
            let mut best: Option<(f64, ResidueSequence)> = None;
            let mut count = 0u64;
            for c in Combinations::new(q as usize, k as usize) {
                let elems: Vec<u64> = c.iter().map(|&i| i as u64).collect();
                let a = ResidueSequence::from_elements(p, &elems)?;
                let size = LsumTable::build(&a, l).layer(l).count();
                let ratio = size as f64 / (k * k) as f64;
                count += 1;
                if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
                    best = Some((ratio, a));
                }
            }
            let (ratio, a) = best.expect("at least one subset");
            Ok((k, count, ratio, a))
        })
        .collect::<Result<_>>()?;
    let (_, _, min_ratio, minimizer) = per
        .iter()
        .min_by(|x, y| x.2.total_cmp(&y.2).then(x.0.cmp(&y.0)))
        .cloned()
        .expect("p >= 3");
    Ok(OlsonProbeReport {
        p: q,
        subsets_checked: per.iter().map(|t| t.1).sum(),
        min_ratio,
        minimizer,
        per_size: per.iter().map(|t| (t.0, t.2)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApTrial {
    pub trial: u64,
    pub set: Vec<u64>,
    pub complete: bool,
    pub ap_length: u64,
    /// `ap_length / (l |A|^(1/d))`, absent when `Σ_l(A)` is all of `Z_p`.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApProbeReport {
    pub p: u64,
    pub size: u64,
    pub l: u64,
    pub d: u64,
    pub seed: u64,
    pub complete_trials: u64,
    pub min_ratio: Option<f64>,
    pub trials: Vec<ApTrial>,
}

pub const DEFAULT_SEED: u64 = 1;

/// Random `size`-subsets of `Z_p`; trial `t` draws from ChaCha8 seeded with
/// `seed` on stream `t`.
pub fn ap_theorem_probe(
    p: PrimeModulus,
    size: u64,
    l: u64,
    d: u64,
    trials: u64,
    seed: u64,
    budget: &Budget,
) -> Result<ApProbeReport> {
    let q = p.get();
    if size < 1 || size > q {
        return Err(Error::OutOfRange {
            what: "|A|",
            value: size as i64,
            lo: 1,
            hi: q as i64,
        });
    }
    if l < 1 || l > size {
        return Err(Error::OutOfRange {
            what: "l",
            value: l as i64,
            lo: 1,
            hi: size as i64,
        });
    }
    if d < 1 {
        return Err(Error::OutOfRange {
            what: "d",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    budget.check(
        "trials × |A| × l sumset steps",
        &(BigUint::from(trials) * size * l),
    )?;
    let scale = l as f64 * (size as f64).powf(1.0 / d as f64);
    let runs: Vec<ApTrial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let mut set: Vec<u64> = sample(&mut rng, q as usize, size as usize)
                .into_iter()
                .map(|i| i as u64)
                .collect();
            set.sort_unstable();
            let a = ResidueSequence::from_elements(p, &set)?;
            let mask = sigma_l(&a, l)?;
            let complete = mask.is_full();
            let ap = longest_ap(&mask)?;
            Ok(ApTrial {
                trial: t,
                set,
                complete,
                ap_length: ap.length,
                ratio: (!complete).then(|| ap.length as f64 / scale),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ApProbeReport {
        p: q,
        size,
        l,
        d,
        seed,
        complete_trials: runs.iter().filter(|t| t.complete).count() as u64,
        min_ratio: runs.iter().filter_map(|t| t.ratio).min_by(f64::total_cmp),
        trials: runs,
    })
}
