//! The verification battery: each criterion recomputes its claim against an
//! independent oracle and reports pass or fail with a one-line detail.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{is_complete, is_l_complete, is_zero_sum_free, olson_threshold_check};
use crate::counting::{census, partition_count};
use crate::egz::{egz_extremal_classify, egz_verify};
use crate::enumerate::{binomial, multiset_count, Budget, Compositions};
use crate::error::Result;
use crate::extremal::{build_a1, build_a2, build_a3, zerofree3_extremal, zerofree3_scan};
use crate::lemmas::{crt_bounded, crt_unit_fractions, gcd, lcm, zero_subset_mod_d};
use crate::mask::SumsetMask;
use crate::oracle;
use crate::residue::{is_prime, PrimeModulus, ResidueSequence};
use crate::sumset::{sigma, sigma_l};
use crate::witness::{thm1_witness, thm2_witness, thm3_witness, Thm3Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Primes capped at 7.
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(crate::Error::Parse(format!("unknown level {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_secs: f64,
    pub limit_secs: f64,
}

impl CriterionResult {
    pub fn within_limit(&self) -> bool {
        self.elapsed_secs <= self.limit_secs
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {} ({:.2}s / {:.0}s): {}",
            self.id,
            if self.passed && self.within_limit() { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed_secs,
            self.limit_secs,
            self.detail
        )
    }
}

fn timed(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let t = Instant::now();
    let (passed, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name: name.to_string(),
        passed,
        detail,
        elapsed_secs: t.elapsed().as_secs_f64(),
        limit_secs: limit.as_secs_f64(),
    }
}

fn pm(q: u64) -> PrimeModulus {
    PrimeModulus::new(q).expect("prime")
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&x| is_prime(x)).collect()
}

fn set_of(mask: &SumsetMask) -> BTreeSet<u64> {
    mask.iter().collect()
}

fn budget() -> Budget {
    Budget::new(100_000_000u64)
}

/// Random sequence of `n` elements respecting the multiplicity cap `m <= p`.
fn random_sequence(rng: &mut ChaCha8Rng, p: PrimeModulus, n: u64) -> ResidueSequence {
    let q = p.get();
    let mut mult = vec![0u64; q as usize];
    let n = n.min(q * q);
    for _ in 0..n {
        loop {
            let x = rng.gen_range(0..q);
            if mult[x as usize] < q {
                mult[x as usize] += 1;
                break;
            }
        }
    }
    ResidueSequence::from_pairs(p, mult.iter().enumerate().filter(|&(_, &c)| c > 0).map(|(x, &c)| (x as u64, c)))
        .expect("valid by construction")
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "worked example", Duration::from_secs(1), || {
        let a = ResidueSequence::from_elements(pm(11), &[1, 1, 7])?;
        let s = sigma(&a)?.to_vec();
        let s2 = sigma_l(&a, 2)?.to_vec();
        let ok = s == [1, 2, 7, 8, 9] && s2 == [2, 8];
        Ok((ok, format!("p=11 A={{1,1,7}}: Σ = {s:?}, Σ_2 = {s2:?}")))
    })
}

pub type SigmaFn = fn(&ResidueSequence) -> Result<SumsetMask>;
pub type SigmaLFn = fn(&ResidueSequence, u64) -> Result<SumsetMask>;

/// First disagreement between the implementation and the oracle on `a`.
fn sumset_mismatch(a: &ResidueSequence, s: SigmaFn, sl: SigmaLFn) -> Result<Option<String>> {
    let layers = oracle::sigma_layers(a);
    let all: BTreeSet<u64> = layers.iter().skip(1).flatten().copied().collect();
    let got = set_of(&s(a)?);
    if got != all {
        return Ok(Some(format!("Σ({a}) = {got:?}, oracle {all:?}")));
    }
    for l in 1..=a.len() {
        let got = set_of(&sl(a, l)?);
        if got != layers[l as usize] {
            return Ok(Some(format!(
                "Σ_{l}({a}) = {got:?}, oracle {:?}",
                layers[l as usize]
            )));
        }
    }
    Ok(None)
}

pub fn criterion_2(level: Level) -> CriterionResult {
    criterion_2_with(level, sigma, sigma_l)
}

/// Criterion 2 against arbitrary sumset implementations. The exhaustive
/// part goes by increasing size, so the first mismatch is a smallest one.
pub fn criterion_2_with(level: Level, s: SigmaFn, sl: SigmaLFn) -> CriterionResult {
    timed(2, "sumsets agree with direct enumeration", Duration::from_secs(60), || {
        let p7 = pm(7);
        let mut exhaustive = 0u64;
        for size in 1..=6u64 {
            for v in Compositions::new(7, size) {
                if v.iter().any(|&c| c > 2) {
                    continue;
                }
                let a = ResidueSequence::from_pairs(
                    p7,
                    v.iter().enumerate().filter(|&(_, &c)| c > 0).map(|(x, &c)| (x as u64, c)),
                )?;
                exhaustive += 1;
                if let Some(msg) = sumset_mismatch(&a, s, sl)? {
                    return Ok((false, format!("minimal counterexample (|A| = {size}): {msg}")));
                }
            }
        }
        let primes = match level {
            Level::Quick => primes_upto(7),
            Level::Full => primes_upto(101),
        };
        let bad: Vec<(u64, String)> = (0..1000u64)
            .into_par_iter()
            .filter_map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(2);
                rng.set_stream(t);
                let q = primes[rng.gen_range(0..primes.len())];
                let n = rng.gen_range(1..=16);
                let a = random_sequence(&mut rng, pm(q), n);
                match sumset_mismatch(&a, s, sl) {
                    Ok(None) => None,
                    Ok(Some(m)) => Some((t, m)),
                    Err(e) => Some((t, e.to_string())),
                }
            })
            .collect();
        match bad.iter().min_by_key(|(t, _)| *t) {
            Some((t, m)) => Ok((false, format!("random trial {t}: {m}"))),
            None => Ok((
                true,
                format!("{exhaustive} multisets over Z_7 and 1000 random sequences, 0 mismatches"),
            )),
        }
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "EGZ holds exhaustively", Duration::from_secs(60), || {
        let mut parts = Vec::new();
        let mut ok = true;
        for q in [2u64, 3, 5, 7] {
            let r = egz_verify(pm(q), &budget(), false)?;
            let expect = binomial(3 * q - 2, q - 1);
            ok &= r.counterexamples.is_empty() && r.total_multisets == expect;
            parts.push(format!("p={q}: {} multisets, {} counterexamples", r.total_multisets, r.counterexamples.len()));
            for c in r.counterexamples.iter().take(3) {
                parts.push(format!("counterexample {c}"));
            }
        }
        Ok((ok, parts.join("; ")))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "EGZ extremal sequences", Duration::from_secs(120), || {
        let mut parts = Vec::new();
        let mut ok = true;
        for q in [3u64, 5, 7] {
            let r = egz_extremal_classify(pm(q), &budget())?;
            // independent re-check of every reported sequence and of the flags
            let mut flagged = 0u64;
            for e in &r.entries {
                ok &= oracle::is_l_zero_sum_free(&e.sequence, q);
                let mults: Vec<u64> = e.sequence.iter().map(|(_, c)| c).collect();
                let shape = mults == [q - 1, q - 1];
                ok &= shape == e.two_value_shape;
                flagged += !shape as u64;
            }
            ok &= flagged == r.deviations && r.total_multisets == multiset_count(q, 2 * q - 2);
            parts.push(format!(
                "p={q}: {} sequences of size {}, {} off the two-value shape",
                r.entries.len(),
                2 * q - 2,
                r.deviations
            ));
            for e in r.entries.iter().filter(|e| !e.two_value_shape).take(5) {
                parts.push(format!("deviation {}", e.sequence));
            }
        }
        Ok((ok, parts.join("; ")))
    })
}

pub fn criterion_5(level: Level) -> CriterionResult {
    timed(5, "large subsets are complete", Duration::from_secs(120), || {
        let primes: &[u64] = match level {
            Level::Quick => &[7],
            Level::Full => &[7, 11, 13],
        };
        let mut parts = Vec::new();
        let mut ok = true;
        for &q in primes {
            let r = olson_threshold_check(pm(q), &budget())?;
            ok &= r.violations.is_empty();
            parts.push(format!(
                "p={q}: {} subsets of size >= {}, {} incomplete",
                r.subsets_checked,
                r.min_size,
                r.violations.len()
            ));
            for v in r.violations.iter().take(3) {
                parts.push(format!("violation {v}"));
            }
        }
        Ok((ok, parts.join("; ")))
    })
}

pub fn criterion_6(level: Level) -> CriterionResult {
    timed(6, "zero-sum-free sets at the size threshold", Duration::from_secs(60), || {
        let primes: &[u64] = match level {
            Level::Quick => &[],
            Level::Full => &[11, 13],
        };
        let mut parts = Vec::new();
        let mut ok = true;
        for &q in primes {
            let s = zerofree3_scan(pm(q), &budget())?;
            ok &= s.zero_sum_free.is_empty();
            parts.push(format!(
                "p={q}: {} subsets of size {}, {} zero-sum-free",
                s.subsets_checked,
                s.n,
                s.zero_sum_free.len()
            ));
            for v in &s.zero_sum_free {
                parts.push(format!("violation {v}"));
            }
        }
        // p = 5 is the special prime: the scan should return the dilates of
        // {-2, 1, 3}
        let p5 = pm(5);
        let ext = zerofree3_extremal(p5)?;
        let scan = zerofree3_scan(p5, &budget())?;
        let dilates: BTreeSet<Vec<u64>> = (1..5).map(|b| ext.sequence.dilate(b).map(|d| d.elements())).collect::<Result<_>>()?;
        let found: BTreeSet<Vec<u64>> = scan.zero_sum_free.iter().map(|a| a.elements()).collect();
        let dilates_zsf = (1..5).all(|b| ext.sequence.dilate(b).map(|d| oracle::is_zero_sum_free(&d)).unwrap_or(false));
        ok &= ext.special && found == dilates;
        parts.push(format!(
            "p=5: special={}, scan found {} zero-sum-free 3-subsets {:?}; {{-2,1,3}} mod 5 = {:?} (a set: {}), its dilates {:?} are zero-sum-free: {}",
            ext.special,
            found.len(),
            found,
            ext.sequence.elements(),
            ext.is_set,
            dilates,
            dilates_zsf
        ));
        Ok((ok, parts.join("; ")))
    })
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "partition counts", Duration::from_secs(10), || {
        for n in 0..=50 {
            let a = partition_count(n, Some(1))?;
            let b = BigUint::from(oracle::count_odd_part_partitions(n));
            if a != b {
                return Ok((false, format!("n={n}: distinct parts {a}, odd parts {b}")));
            }
        }
        for n in 0..=20 {
            for m in 1..=3 {
                let a = partition_count(n, Some(m))?;
                let b = BigUint::from(oracle::count_partitions_bounded(n, m));
                if a != b {
                    return Ok((false, format!("n={n} m={m}: {a} vs enumeration {b}")));
                }
            }
        }
        let fixed = [
            (partition_count(5, None)?, 7u32, "p(5)"),
            (partition_count(5, Some(1))?, 3, "p_1(5)"),
            (partition_count(4, Some(2))?, 4, "p_2(4)"),
        ];
        for (got, want, name) in &fixed {
            if *got != BigUint::from(*want) {
                return Ok((false, format!("{name} = {got}, expected {want}")));
            }
        }
        let unrestricted = BigUint::from(oracle::list_partitions(5).len());
        Ok((
            unrestricted == fixed[0].0,
            "Euler identity n <= 50, bounded counts n <= 20 m <= 3, p(5)=7 p_1(5)=3 p_2(4)=4".into(),
        ))
    })
}

fn brute_census(q: u64, m: u64) -> Result<(u64, u64)> {
    let p = pm(q);
    let mut zsf = 0;
    let mut inc = 0;
    for code in 1..(m + 1).pow(q as u32) {
        let mut c = code;
        let mut pairs = Vec::new();
        for x in 0..q {
            let k = c % (m + 1);
            c /= m + 1;
            if k > 0 {
                pairs.push((x, k));
            }
        }
        let a = ResidueSequence::from_pairs(p, pairs)?;
        zsf += oracle::is_zero_sum_free(&a) as u64;
        inc += !oracle::is_complete(&a) as u64;
    }
    Ok((zsf, inc))
}

pub fn criterion_8() -> CriterionResult {
    timed(8, "census counts", Duration::from_secs(120), || {
        let mut parts = Vec::new();
        let mut ok = true;
        for q in [3u64, 5, 7] {
            for m in [1u64, 2] {
                let r = census(pm(q), m, &budget())?;
                let (zsf, inc) = brute_census(q, m)?;
                let agree = r.count_zero_sum_free == BigUint::from(zsf) && r.count_incomplete == BigUint::from(inc);
                let bound = r.count_zero_sum_free >= partition_count(q - 1, Some(m))?;
                ok &= agree && bound;
                parts.push(format!(
                    "p={q} m={m}: zsf {} (oracle {zsf}, >= p_m(p-1) = {}), incomplete {} (oracle {inc})",
                    r.count_zero_sum_free, r.partition_lower_bound, r.count_incomplete
                ));
            }
        }
        Ok((ok, parts.join("; ")))
    })
}

pub fn criterion_9(level: Level) -> CriterionResult {
    timed(9, "witnesses re-validate", Duration::from_secs(120), || {
        let primes = match level {
            Level::Quick => vec![3, 5, 7],
            Level::Full => primes_upto(101).into_iter().filter(|&q| q >= 3).collect::<Vec<_>>(),
        };
        // (trial, is thm1, failure)
        let fails: Vec<(u64, String)> = (0..1000u64)
            .into_par_iter()
            .filter_map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(9);
                rng.set_stream(t);
                let want_zsf = t < 500;
                let res = (|| -> Result<Option<String>> {
                    loop {
                        let q = primes[rng.gen_range(0..primes.len())];
                        let p = pm(q);
                        let root = (q as f64).sqrt();
                        let cap = if want_zsf { (2.0 * root) as u64 + 1 } else { (2.0 * root) as u64 + 2 };
                        let n = rng.gen_range(1..=cap);
                        let a = random_sequence(&mut rng, p, n);
                        if want_zsf {
                            if !is_zero_sum_free(&a)? {
                                continue;
                            }
                            return Ok(match thm1_witness(&a, a.len())? {
                                Some(w) if w.validate(&a)? => None,
                                other => Some(format!("thm1 on {a}: {other:?}")),
                            });
                        } else {
                            if is_complete(&a)? {
                                continue;
                            }
                            return Ok(match thm2_witness(&a, a.len())? {
                                Some(w) if w.validate(&a)? => None,
                                other => Some(format!("thm2 on {a}: {other:?}")),
                            });
                        }
                    }
                })();
                match res {
                    Ok(None) => None,
                    Ok(Some(m)) => Some((t, m)),
                    Err(e) => Some((t, e.to_string())),
                }
            })
            .collect();
        if let Some((t, m)) = fails.iter().min_by_key(|f| f.0) {
            return Ok((false, format!("trial {t}: {m}")));
        }
        let mut families = 0u64;
        let fam_primes: &[u64] = match level {
            Level::Quick => &[3, 5, 7],
            Level::Full => &[3, 5, 7, 11, 13, 31, 53, 101],
        };
        for &q in fam_primes {
            let p = pm(q);
            for m in [1u64, 2, 3] {
                let a1 = build_a1(p, m)?.sequence;
                let w = thm1_witness(&a1, a1.len())?;
                if !matches!(&w, Some(w) if w.b == 1 && w.a_flat.is_empty()) {
                    return Ok((false, format!("A1 p={q} m={m} = {a1}: {w:?}")));
                }
                let a2 = build_a2(p, m)?.sequence;
                let w = thm2_witness(&a2, a2.len())?;
                if !matches!(&w, Some(w) if w.b == 1 && w.a_flat.is_empty()) {
                    return Ok((false, format!("A2 p={q} m={m} = {a2}: {w:?}")));
                }
                families += 2;
                for l in [1u64, 2, 3, 5] {
                    let Some(s) = build_a3(p, m, l)? else { continue };
                    let a3 = s.sequence;
                    let params = Thm3Params { window: 0, ..Thm3Params::with_defaults(&a3, l, a3.len()) };
                    let w = thm3_witness(&a3, &params)?;
                    if !matches!(&w, Some(w) if w.b == 1 && w.a_flat.is_empty() && w.validate(&a3).unwrap_or(false)) {
                        return Ok((false, format!("A3 p={q} m={m} l={l} = {a3}: {w:?}")));
                    }
                    families += 1;
                }
            }
        }
        Ok((
            true,
            format!("500 zero-sum-free and 500 incomplete random sequences re-validate; {families} extremal inputs give b=1, A♭=∅"),
        ))
    })
}

pub fn criterion_10() -> CriterionResult {
    timed(10, "constructive lemmas", Duration::from_secs(60), || {
        let b = budget();
        // every X in Z_D^D, D <= 6
        let mut cases = 0u64;
        for d in 1..=6u64 {
            let total = d.pow(d as u32);
            for code in 0..total {
                let mut c = code;
                let x: Vec<u64> = (0..d)
                    .map(|_| {
                        let v = c % d;
                        c /= d;
                        v
                    })
                    .collect();
                let s = zero_subset_mod_d(&x, d)?;
                if s.indices.is_empty() || s.sum_mod(d) != 0 || s.indices.iter().zip(&s.values).any(|(&i, &v)| x[i] != v) {
                    return Ok((false, format!("zero subset of {x:?} mod {d}: {s:?}")));
                }
                cases += 1;
            }
        }
        // every set of divisors of each L <= 60 with lcm exactly L, every r
        for big_l in 1..=60u64 {
            let divs: Vec<u64> = (1..=big_l).filter(|x| big_l % x == 0).collect();
            for bits in 1u32..(1 << divs.len()) {
                let dl: Vec<u64> = (0..divs.len()).filter(|i| bits >> i & 1 == 1).map(|i| divs[i]).collect();
                if dl.iter().fold(1, |a, &x| lcm(a, x).expect("small")) != big_l {
                    continue;
                }
                for r in 0..big_l {
                    let c = crt_unit_fractions(&dl, r)?;
                    if !c.satisfies_unit_fractions() || c.modulus != big_l {
                        return Ok((false, format!("unit fractions {dl:?} r={r}: {c:?}")));
                    }
                    cases += 1;
                }
            }
        }
        // every d_list of one or two generators in [1, D], D <= 60, every r
        for d in 1..=60u64 {
            for d1 in 1..=d {
                for d2 in d1..=d {
                    let dl: Vec<u64> = if d1 == d2 { vec![d1] } else { vec![d1, d2] };
                    if dl.iter().fold(d, |a, &x| gcd(a, x)) != 1 {
                        continue;
                    }
                    for r in 0..d {
                        let c = crt_bounded(&dl, d, r, &b)?;
                        if !c.satisfies_bounded() || c.a_sum() > d {
                            return Ok((false, format!("bounded {dl:?} D={d} r={r}: {c:?}")));
                        }
                        cases += 1;
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..1000 {
            let d = rng.gen_range(1..=50u64);
            let x: Vec<u64> = (0..d).map(|_| rng.gen_range(0..10_000)).collect();
            let s = zero_subset_mod_d(&x, d)?;
            if s.indices.is_empty() || s.sum_mod(d) != 0 {
                return Ok((false, format!("zero subset fuzz {x:?} mod {d}: {s:?}")));
            }
        }
        for _ in 0..1000 {
            let n = rng.gen_range(1..=5);
            let mut dl: Vec<u64> = Vec::new();
            while dl.len() < n {
                let x = rng.gen_range(1..=60u64);
                if !dl.contains(&x) {
                    dl.push(x);
                }
            }
            let big_d = dl.iter().fold(1, |a, &x| lcm(a, x).expect("small"));
            let r = rng.gen_range(0..big_d);
            let c = crt_unit_fractions(&dl, r)?;
            if !c.satisfies_unit_fractions() {
                return Ok((false, format!("unit fractions fuzz {dl:?} r={r}: {c:?}")));
            }
        }
        let mut done = 0;
        while done < 1000 {
            let d = rng.gen_range(1..=5000u64);
            let n = rng.gen_range(1..=4);
            let dl: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
            if dl.iter().fold(d, |a, &x| gcd(a, x)) != 1 {
                continue;
            }
            let r = rng.gen_range(0..d);
            let c = crt_bounded(&dl, d, r, &b)?;
            if !c.satisfies_bounded() || c.a_sum() > d {
                return Ok((false, format!("bounded fuzz {dl:?} D={d} r={r}: {c:?}")));
            }
            done += 1;
        }
        Ok((true, format!("{cases} exhaustive cases and 3000 fuzz cases, 0 failures")))
    })
}

/// One property trial; returns a description of the failure, if any.
fn property_trial(t: u64, primes: &[u64]) -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    rng.set_stream(t);
    let q = primes[rng.gen_range(0..primes.len())];
    let p = pm(q);
    let n = rng.gen_range(1..=12);
    let a = random_sequence(&mut rng, p, n);
    let b = rng.gen_range(1..q);
    let c = rng.gen_range(0..q);
    let l = rng.gen_range(1..=a.len());

    let s = sigma(&a)?;
    if sigma(&a.dilate(b)?)? != s.dilated(b) {
        return Ok(Some(format!("Σ({b}·A) != {b}·Σ(A) for A = {a}")));
    }
    let sl = sigma_l(&a, l)?;
    if sigma_l(&a.dilate(b)?, l)? != sl.dilated(b) {
        return Ok(Some(format!("Σ_{l}({b}·A) != {b}·Σ_{l}(A) for A = {a}")));
    }
    let shift = p.mul(c, l % q);
    if sigma_l(&a.translate(c), l)? != sl.shifted(shift) {
        return Ok(Some(format!("Σ_{l}(A + {c}) != Σ_{l}(A) + {l}·{c} for A = {a}")));
    }
    let complete = s.is_full();
    let zsf = !s.contains(0);
    if complete && zsf {
        return Ok(Some(format!("{a} is complete and zero-sum-free")));
    }
    if zsf && s.count() < a.len() {
        return Ok(Some(format!("{a} is zero-sum-free with |Σ| = {}", s.count())));
    }
    if is_l_complete(&a, l)? != is_l_complete(&a.affine(b, c)?, l)? {
        return Ok(Some(format!("{l}-completeness of {a} changes under x -> {b}x + {c}")));
    }
    Ok(None)
}

pub fn criterion_11(level: Level) -> CriterionResult {
    timed(11, "invariant battery", Duration::from_secs(60), || {
        let primes = match level {
            Level::Quick => primes_upto(7),
            Level::Full => primes_upto(101),
        };
        let fails: Vec<(u64, String)> = (0..1000u64)
            .into_par_iter()
            .filter_map(|t| match property_trial(t, &primes) {
                Ok(None) => None,
                Ok(Some(m)) => Some((t, m)),
                Err(e) => Some((t, e.to_string())),
            })
            .collect();
        Ok(match fails.iter().min_by_key(|f| f.0) {
            Some((t, m)) => (false, format!("trial {t}: {m}")),
            None => (
                true,
                "1000 trials of dilation/translation equivariance, completeness vs zero-sum-freeness, |Σ(A)| >= |A|, affine invariance of l-completeness".into(),
            ),
        })
    })
}

pub fn run_criterion(id: u32, level: Level) -> Option<CriterionResult> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(level),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(level),
        6 => criterion_6(level),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(level),
        10 => criterion_10(),
        11 => criterion_11(level),
        _ => return None,
    })
}

pub const CRITERIA: std::ops::RangeInclusive<u32> = 1..=11;

pub fn run_all(level: Level) -> Vec<CriterionResult> {
    CRITERIA.filter_map(|id| run_criterion(id, level)).collect()
}
