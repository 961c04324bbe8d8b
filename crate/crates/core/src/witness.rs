//! Certificates for the small-norm normal forms.
//!
//! * zero-sum-free `A`: a dilation `b` and an exceptional sub-multiset `A♭`
//!   with `Σ b·(A∖A♭) < p` when elements are read in `[1, p-1]`;
//! * incomplete `A`: the same with `Σ ‖b·(A∖A♭)‖ < p`;
//! * `l`-incomplete `A`: `b`, `c`, `A♭` and `l1` such that the `l'`-sums of
//!   `b·(A∖A♭) + c` (read in `[-(p-1)/2, (p-1)/2]`) for `l1 <= l' <= l1 + w`
//!   all lie in fewer than `p` consecutive integers.
//!
//! Searches are exhaustive over `b`; validation recomputes every inequality
//! from the raw fields and never trusts the searcher.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{is_complete, is_l_complete, is_zero_sum_free};
use crate::error::{Error, Result};
use crate::residue::{f_control, norm, signed_rep, window_control, PrimeModulus, ResidueSequence};
use crate::sumset::{lsum_window_range_int, IntRange};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm1Witness {
    pub b: u64,
    pub a_flat: ResidueSequence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm2Witness {
    pub b: u64,
    pub a_flat: ResidueSequence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm3Witness {
    pub b: u64,
    pub c: u64,
    pub a_flat: ResidueSequence,
    pub l1: u64,
    pub window: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum Witness {
    ZeroSumFree(Thm1Witness),
    Incomplete(Thm2Witness),
    LIncomplete(Thm3Witness),
}

impl Witness {
    pub fn validate(&self, a: &ResidueSequence) -> Result<bool> {
        match self {
            Witness::ZeroSumFree(w) => w.validate(a),
            Witness::Incomplete(w) => w.validate(a),
            Witness::LIncomplete(w) => w.validate(a),
        }
    }

    pub fn a_flat(&self) -> &ResidueSequence {
        match self {
            Witness::ZeroSumFree(w) => &w.a_flat,
            Witness::Incomplete(w) => &w.a_flat,
            Witness::LIncomplete(w) => &w.a_flat,
        }
    }
}

/// Checks `b` and `A♭` and returns `b·(A∖A♭)`.
fn dilated_rest(a: &ResidueSequence, b: u64, a_flat: &ResidueSequence) -> Result<ResidueSequence> {
    let p = a.modulus();
    if a_flat.modulus() != p {
        return Err(Error::MalformedWitness(format!(
            "A♭ is over Z_{}, A over Z_{}",
            a_flat.modulus(),
            p
        )));
    }
    if b == 0 || b >= p.get() {
        return Err(Error::MalformedWitness(format!("b = {b} not in [1, {}]", p.get() - 1)));
    }
    if !a_flat.is_sub_multiset_of(a) {
        return Err(Error::MalformedWitness(format!("A♭ = {a_flat} is not contained in A")));
    }
    a.difference(a_flat)?.dilate(b)
}

fn sum_as_positive(rest: &ResidueSequence) -> Option<u128> {
    if rest.contains(0) {
        return None;
    }
    Some(rest.iter().map(|(x, m)| x as u128 * m as u128).sum())
}

fn norm_sum(rest: &ResidueSequence) -> u128 {
    let p = rest.modulus();
    rest.iter().map(|(x, m)| norm(x, p) as u128 * m as u128).sum()
}

fn terms(rest: &ResidueSequence, f: impl Fn(u64) -> String) -> String {
    let mut parts = Vec::new();
    for (x, m) in rest.iter() {
        for _ in 0..m {
            parts.push(f(x));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn flat_str(a_flat: &ResidueSequence) -> String {
    if a_flat.is_empty() {
        "∅".to_string()
    } else {
        let s = a_flat.to_string();
        s.split_once("A=").map(|(_, r)| format!("{{{r}}}")).unwrap_or(s)
    }
}

impl Thm1Witness {
    pub fn validate(&self, a: &ResidueSequence) -> Result<bool> {
        let rest = dilated_rest(a, self.b, &self.a_flat)?;
        Ok(sum_as_positive(&rest).is_some_and(|s| s < a.modulus().get() as u128))
    }

    pub fn proofline(&self, a: &ResidueSequence) -> Result<String> {
        let rest = dilated_rest(a, self.b, &self.a_flat)?;
        let s = sum_as_positive(&rest).map_or("undefined (contains 0)".into(), |s| s.to_string());
        Ok(format!(
            "b = {}, A♭ = {}: Σ b·(A∖A♭) = {} = {} < {}",
            self.b,
            flat_str(&self.a_flat),
            terms(&rest, |x| x.to_string()),
            s,
            a.modulus()
        ))
    }
}

impl Thm2Witness {
    pub fn validate(&self, a: &ResidueSequence) -> Result<bool> {
        let rest = dilated_rest(a, self.b, &self.a_flat)?;
        Ok(norm_sum(&rest) < a.modulus().get() as u128)
    }

    pub fn proofline(&self, a: &ResidueSequence) -> Result<String> {
        let rest = dilated_rest(a, self.b, &self.a_flat)?;
        let p = a.modulus();
        Ok(format!(
            "b = {}, A♭ = {}: Σ ‖b·(A∖A♭)‖ = {} = {} < {}",
            self.b,
            flat_str(&self.a_flat),
            terms(&rest, |x| norm(x, p).to_string()),
            norm_sum(&rest),
            p
        ))
    }
}

impl Thm3Witness {
    /// Signed values of `b·(A∖A♭) + c` after structural checks.
    fn shifted_values(&self, a: &ResidueSequence) -> Result<Vec<i64>> {
        let p = a.modulus();
        if self.c >= p.get() {
            return Err(Error::MalformedWitness(format!("c = {} not a residue", self.c)));
        }
        let rest = dilated_rest(a, self.b, &self.a_flat)?.translate(self.c);
        if self.l1 + self.window > rest.len() {
            return Err(Error::MalformedWitness(format!(
                "l1 + window = {} exceeds |A∖A♭| = {}",
                self.l1 + self.window,
                rest.len()
            )));
        }
        Ok(rest.signed_elements())
    }

    pub fn range(&self, a: &ResidueSequence) -> Result<IntRange> {
        let v = self.shifted_values(a)?;
        lsum_window_range_int(&v, self.l1 as usize, (self.l1 + self.window) as usize)
    }

    pub fn validate(&self, a: &ResidueSequence) -> Result<bool> {
        Ok(self.range(a)?.misses_a_class(a.modulus()))
    }

    pub fn proofline(&self, a: &ResidueSequence) -> Result<String> {
        let r = self.range(a)?;
        Ok(format!(
            "b = {}, c = {}, A♭ = {}: l'-sums of b·(A∖A♭) + c for {} ≤ l' ≤ {} lie in [{}, {}], {} integers < {}",
            self.b,
            self.c,
            flat_str(&self.a_flat),
            self.l1,
            self.l1 + self.window,
            r.lo,
            r.hi,
            r.count(),
            a.modulus()
        ))
    }
}

/// Map an image element back to its preimage under `y = b·x + c`.
fn preimage(p: PrimeModulus, b_inv: u64, c: u64, y: u64) -> u64 {
    p.mul(p.add(y, p.get() - c), b_inv)
}

fn flat_from_images(p: PrimeModulus, b: u64, c: u64, removed: &[u64]) -> Result<ResidueSequence> {
    let b_inv = p.inverse(b).expect("b is nonzero");
    ResidueSequence::from_pairs(p, removed.iter().map(|&y| (preimage(p, b_inv, c, y), 1)))
}

/// For one `b`, drop the largest weights until the remaining total is below
/// `p`. Removing the heaviest element first is optimal for the count.
fn greedy_by_weight(
    a: &ResidueSequence,
    b: u64,
    budget: u64,
    weight: impl Fn(u64) -> u64,
) -> Option<Vec<u64>> {
    let p = a.modulus();
    let mut img: Vec<(u64, u64)> = a.iter().map(|(x, m)| (p.mul(x, b), m)).collect();
    img.sort_unstable_by_key(|&(y, _)| (std::cmp::Reverse(weight(y)), std::cmp::Reverse(y)));
    let mut total: u128 = img.iter().map(|&(y, m)| weight(y) as u128 * m as u128).sum();
    let mut removed = Vec::new();
    let bound = p.get() as u128;
    for &(y, m) in &img {
        for _ in 0..m {
            if total < bound {
                return Some(removed);
            }
            if removed.len() as u64 == budget {
                return None;
            }
            total -= weight(y) as u128;
            removed.push(y);
        }
    }
    (total < bound).then_some(removed)
}

/// Best `(b, removed images)` over all `b`, smallest `|A♭|` then smallest `b`.
fn search_over_b(
    a: &ResidueSequence,
    budget: u64,
    weight: impl Fn(u64, PrimeModulus) -> u64 + Sync,
) -> Option<(u64, Vec<u64>)> {
    let p = a.modulus();
    (1..p.get())
        .into_par_iter()
        .filter_map(|b| greedy_by_weight(a, b, budget, |y| weight(y, p)).map(|r| (b, r)))
        .min_by_key(|(b, r)| (r.len(), *b))
}

/// Dilation and minimal greedy exceptional set making `A` a small-sum
/// sequence. `None` when every `b` needs more than `budget` removals.
pub fn thm1_witness(a: &ResidueSequence, budget: u64) -> Result<Option<Thm1Witness>> {
    if !is_zero_sum_free(a)? {
        return Err(Error::Precondition(format!("{a} is not zero-sum-free")));
    }
    let p = a.modulus();
    // Zero-sum-free sequences never contain 0, so the weight is the integer value.
    let found = search_over_b(a, budget, |y, _| y);
    found
        .map(|(b, removed)| {
            Ok(Thm1Witness {
                b,
                a_flat: flat_from_images(p, b, 0, &removed)?,
            })
        })
        .transpose()
}

/// Dilation and minimal greedy exceptional set with `Σ ‖·‖ < p`.
pub fn thm2_witness(a: &ResidueSequence, budget: u64) -> Result<Option<Thm2Witness>> {
    if is_complete(a)? {
        return Err(Error::Precondition(format!("{a} is complete")));
    }
    let p = a.modulus();
    let found = search_over_b(a, budget, norm);
    found
        .map(|(b, removed)| {
            Ok(Thm2Witness {
                b,
                a_flat: flat_from_images(p, b, 0, &removed)?,
            })
        })
        .transpose()
}

/// Default window: `min(floor((pm)^(3/13)), |A| - l)`.
pub fn thm3_default_window(a: &ResidueSequence, l: u64, m: u64) -> u64 {
    window_control(a.modulus(), m).min(a.len().saturating_sub(l))
}

/// Parameters of an `l`-incomplete certificate search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm3Params {
    pub l: u64,
    /// Requested window; clamped to `|A∖A♭| - l1` where needed.
    pub window: u64,
    /// Multiplicity bound entering `f(p, m)`.
    pub m: u64,
    pub budget: u64,
}

impl Thm3Params {
    pub fn with_defaults(a: &ResidueSequence, l: u64, budget: u64) -> Self {
        let m = a.max_multiplicity().max(1);
        Thm3Params {
            l,
            window: thm3_default_window(a, l, m),
            m,
            budget,
        }
    }
}

/// Working state for one `(b, c)` candidate: signed values, sorted.
struct Centered {
    values: Vec<i64>,
}

impl Centered {
    /// Largest `l1` in `[l_min, l_hi]` for which the clamped window passes.
    fn best_l1(&self, l_min: u64, l_hi: u64, window: u64, p: PrimeModulus) -> Option<(u64, u64)> {
        let n = self.values.len() as u64;
        let top = l_hi.min(n);
        if top < l_min {
            return None;
        }
        let mut asc = vec![0i64; n as usize + 1];
        let mut desc = vec![0i64; n as usize + 1];
        for i in 0..n as usize {
            asc[i + 1] = asc[i] + self.values[i];
            desc[i + 1] = desc[i] + self.values[n as usize - 1 - i];
        }
        (l_min..=top).rev().find_map(|l1| {
            let w = window.min(n - l1);
            let lo = (l1..=l1 + w).map(|k| asc[k as usize]).min().unwrap();
            let hi = (l1..=l1 + w).map(|k| desc[k as usize]).max().unwrap();
            IntRange { lo, hi }.misses_a_class(p).then_some((l1, w))
        })
    }

    /// Width of the window hull at `l1 = target` (clamped), or `None` if
    /// fewer than `target` elements remain.
    fn width_at(&self, target: u64, window: u64) -> Option<i64> {
        let n = self.values.len() as u64;
        if target > n {
            return None;
        }
        let w = window.min(n - target);
        let v = &self.values;
        let lo = (target..=target + w)
            .map(|k| v[..k as usize].iter().sum::<i64>())
            .min()
            .unwrap();
        let hi = (target..=target + w)
            .map(|k| v[v.len() - k as usize..].iter().sum::<i64>())
            .max()
            .unwrap();
        Some(hi - lo)
    }

    /// Up to three distinct values of largest magnitude, as removal candidates.
    fn candidates(&self) -> Vec<i64> {
        let mut vals: Vec<i64> = self.values.clone();
        vals.dedup();
        vals.sort_by(|x, y| y.abs().cmp(&x.abs()).then(y.cmp(x)));
        vals.truncate(3);
        vals
    }

    fn without(&self, v: i64) -> Centered {
        let mut values = self.values.clone();
        let i = values.iter().position(|&x| x == v).expect("candidate present");
        values.remove(i);
        Centered { values }
    }
}

/// Search key: prefer `l1` close to `l`, then fewer removals, then small `b`,
/// then the lexicographically smallest `A♭`, then small `c`.
type Thm3Key = (u64, u64, u64, Vec<(u64, u64)>, u64);

fn thm3_key(l: u64, w: &Thm3Witness) -> Thm3Key {
    (l - w.l1, w.a_flat.len(), w.b, w.a_flat.iter().collect(), w.c)
}

/// Translation centering `b·A`: minimizes `Σ m_x ‖b x + c‖`, smallest `c` on ties.
fn centering(a: &ResidueSequence, b: u64) -> u64 {
    let p = a.modulus();
    (0..p.get())
        .min_by_key(|&c| {
            a.iter()
                .map(|(x, m)| norm(p.add(p.mul(b, x), c), p) as u128 * m as u128)
                .sum::<u128>()
        })
        .unwrap_or(0)
}

fn thm3_for_bc(a: &ResidueSequence, b: u64, c: u64, params: &Thm3Params, l_min: u64) -> Option<Thm3Witness> {
    let p = a.modulus();
    let l = params.l;
    let mut state = Centered {
        values: a.affine(b, c).expect("b nonzero").signed_elements(),
    };
    let mut removed: Vec<i64> = Vec::new();
    let mut best: Option<(u64, u64, Vec<i64>, u64)> = None; // (l - l1, r, removed, window)
    loop {
        if let Some((l1, w)) = state.best_l1(l_min, l, params.window, p) {
            let cand = (l - l1, removed.len() as u64, removed.clone(), w);
            if best.as_ref().is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                best = Some(cand);
            }
            if l1 == l {
                break;
            }
        }
        if removed.len() as u64 >= params.budget || state.values.is_empty() {
            break;
        }
        // One-step lookahead over the top three magnitudes.
        let pick = state
            .candidates()
            .into_iter()
            .map(|v| {
                let next = state.without(v);
                let l1_gap = next.best_l1(l_min, l, params.window, p).map_or(u64::MAX, |(l1, _)| l - l1);
                let width = next.width_at(l, params.window).unwrap_or(i64::MAX);
                ((l1_gap, width), v)
            })
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|(_, v)| v)
            .expect("nonempty state has candidates");
        state = state.without(pick);
        removed.push(pick);
    }
    best.map(|(gap, _, removed, window)| {
        let imgs: Vec<u64> = removed.iter().map(|&v| p.reduce(v)).collect();
        Thm3Witness {
            b,
            c,
            a_flat: flat_from_images(p, b, c, &imgs).expect("removed elements come from A"),
            l1: l - gap,
            window,
        }
    })
}

/// Heuristic certificate search for an `l`-incomplete sequence.
///
/// For each `b`, the translation `c` starts at the norm-minimizing center and
/// scans `± floor((p-1)/2 · window/|A|)` around it. Removals go greedily by
/// largest magnitude with a one-step lookahead over the top three candidates;
/// `l1` ranges over `[max(0, l - 2 f(p, m)), l]`. The returned witness has
/// been re-validated.
pub fn thm3_witness(a: &ResidueSequence, params: &Thm3Params) -> Result<Option<Thm3Witness>> {
    let l = params.l;
    if l < 1 || l > a.len() {
        return Err(Error::OutOfRange {
            what: "l",
            value: l as i64,
            lo: 1,
            hi: a.len() as i64,
        });
    }
    if is_l_complete(a, l)? {
        return Err(Error::Precondition(format!("{a} is {l}-complete")));
    }
    let p = a.modulus();
    let f = f_control(p, params.m)?;
    let l_min = l.saturating_sub(2 * f);
    let radius = ((p.get() - 1) / 2 * params.window) / a.len().max(1);
    let best = (1..p.get())
        .into_par_iter()
        .filter_map(|b| {
            let c0 = centering(a, b);
            let r = radius.min(p.get() / 2);
            let mut cs: Vec<u64> = (0..=2 * r).map(|k| p.add(c0 + p.get() - r, k)).collect();
            cs.sort_unstable();
            cs.dedup();
            cs.into_iter()
                .filter_map(|c| thm3_for_bc(a, b, c, params, l_min))
                .min_by(|x, y| cmp_keys(l, x, y))
        })
        .min_by(|x, y| cmp_keys(l, x, y));
    if let Some(w) = &best {
        if !w.validate(a)? {
            return Err(Error::Precondition(format!(
                "internal: search produced a witness that fails validation: {w:?}"
            )));
        }
    }
    Ok(best)
}

fn cmp_keys(l: u64, x: &Thm3Witness, y: &Thm3Witness) -> Ordering {
    thm3_key(l, x).cmp(&thm3_key(l, y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zerofree2Report {
    pub b: u64,
    /// `Σ ‖a‖` over `a ∈ b·A` with `a < p/2`.
    pub below_half: u64,
    /// `Σ ‖a‖` over `a ∈ b·A` with `a > p/2`.
    pub above_half: u64,
}

/// Norm split for the dilation minimizing the total norm of a zero-sum-free set.
pub fn zerofree2_report(a: &ResidueSequence) -> Result<Zerofree2Report> {
    if !a.is_set() {
        return Err(Error::Precondition(format!("{a} is not a set")));
    }
    if !is_zero_sum_free(a)? {
        return Err(Error::Precondition(format!("{a} is not zero-sum-free")));
    }
    let p = a.modulus();
    let q = p.get();
    let b = (1..q)
        .min_by_key(|&b| a.iter().map(|(x, _)| norm(p.mul(b, x), p)).sum::<u64>())
        .expect("p >= 2");
    let (mut below, mut above) = (0, 0);
    for (x, _) in a.iter() {
        let y = p.mul(b, x);
        if 2 * y < q {
            below += norm(y, p);
        } else if 2 * y > q {
            above += norm(y, p);
        }
    }
    Ok(Zerofree2Report {
        b,
        below_half: below,
        above_half: above,
    })
}

/// Signed value of `b·x + c` (helper for reports).
pub fn affine_signed(p: PrimeModulus, b: u64, c: u64, x: u64) -> i64 {
    signed_rep(p.add(p.mul(b, x), c), p).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn seq(q: u64, e: &[u64]) -> ResidueSequence {
        ResidueSequence::from_elements(p(q), e).unwrap()
    }

    #[test]
    fn thm1_examples() {
        let a = seq(11, &[3, 6, 9]);
        let w = thm1_witness(&a, 3).unwrap().unwrap();
        assert_eq!((w.b, w.a_flat.len()), (4, 0));
        assert!(w.validate(&a).unwrap());

        let a = seq(11, &[1, 6]);
        let w = thm1_witness(&a, 3).unwrap().unwrap();
        assert!(w.a_flat.is_empty());
        assert!(w.validate(&a).unwrap());

        assert!(thm1_witness(&seq(11, &[1, 10]), 3).is_err());
    }

    #[test]
    fn thm2_examples() {
        let a = seq(11, &[2, 4, 6, 8]);
        let w = thm2_witness(&a, 3).unwrap().unwrap();
        // b = 5 gives {-1,-2,-3,-4} and b = 6 gives {1,2,3,4}; smallest b wins.
        assert_eq!((w.b, w.a_flat.len()), (5, 0));
        assert!(w.validate(&a).unwrap());
        let a = seq(11, &[10, 1]);
        let w = thm2_witness(&a, 3).unwrap().unwrap();
        assert_eq!((w.b, w.a_flat.len()), (1, 0));
        assert!(thm2_witness(&seq(5, &[1, 2, 3, 4]), 3).is_err());
    }

    /// Fewest removals over every `b` and every sub-multiset, by enumeration.
    fn brute_min_removals(a: &ResidueSequence, weight: impl Fn(u64) -> u64) -> u64 {
        let q = a.modulus();
        let elems = a.elements();
        let n = elems.len();
        let mut best = u64::MAX;
        for b in 1..q.get() {
            for sel in 0u32..(1 << n) {
                let kept: u64 = (0..n)
                    .filter(|i| sel >> i & 1 == 0)
                    .map(|i| weight(q.mul(b, elems[i])))
                    .sum();
                if kept < q.get() {
                    best = best.min(sel.count_ones() as u64);
                }
            }
        }
        best
    }

    #[test]
    fn greedy_removal_count_is_minimal() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut seen_removal = 0;
        for _ in 0..400 {
            let q = [7u64, 11, 13][rng.gen_range(0..3)];
            let n = rng.gen_range(1..=9);
            let e: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
            let a = seq(q, &e);
            if is_zero_sum_free(&a).unwrap() {
                let w = thm1_witness(&a, 20).unwrap().unwrap();
                assert!(w.validate(&a).unwrap());
                assert_eq!(w.a_flat.len(), brute_min_removals(&a, |y| if y == 0 { q } else { y }), "{a}");
                if !w.a_flat.is_empty() {
                    seen_removal += 1;
                }
            }
            if !is_complete(&a).unwrap() {
                let w = thm2_witness(&a, 20).unwrap().unwrap();
                assert!(w.validate(&a).unwrap());
                assert_eq!(w.a_flat.len(), brute_min_removals(&a, |y| norm(y, p(q))), "{a}");
                if !w.a_flat.is_empty() {
                    seen_removal += 1;
                }
            }
        }
        assert!(seen_removal > 0);
    }

    #[test]
    fn budget_limits_removals() {
        // 3^6 mod 7 is zero-sum-free; every dilation has integer sum >= 7·?
        let a = ResidueSequence::from_pairs(p(7), [(3, 6)]).unwrap();
        let w = thm1_witness(&a, 10).unwrap().unwrap();
        assert_eq!((w.b, w.a_flat.len()), (5, 0));
        let a = seq(13, &[1, 2, 3, 4, 12]);
        assert!(!is_complete(&a).unwrap());
        let needed = thm2_witness(&a, 10).unwrap().unwrap().a_flat.len();
        if needed > 0 {
            assert!(thm2_witness(&a, needed - 1).unwrap().is_none());
        }
    }

    #[test]
    fn validate_rejects() {
        let q = 11;
        let a = seq(q, &[1, 10]);
        let w = Thm1Witness {
            b: 1,
            a_flat: ResidueSequence::empty(p(q)),
        };
        assert!(!w.validate(&a).unwrap());
        let bad_b = Thm1Witness {
            b: 0,
            a_flat: ResidueSequence::empty(p(q)),
        };
        assert!(matches!(bad_b.validate(&a), Err(Error::MalformedWitness(_))));
        let not_sub = Thm2Witness {
            b: 1,
            a_flat: seq(q, &[5]),
        };
        assert!(matches!(not_sub.validate(&a), Err(Error::MalformedWitness(_))));
        let wide = Thm3Witness {
            b: 1,
            c: 0,
            a_flat: ResidueSequence::empty(p(q)),
            l1: 1,
            window: 2,
        };
        assert!(matches!(wide.validate(&a), Err(Error::MalformedWitness(_))));
    }

    #[test]
    fn thm3_examples() {
        let a = seq(7, &[0, 0, 0, 1, 1, 1]);
        let params = Thm3Params {
            l: 3,
            window: 0,
            m: 3,
            budget: 3,
        };
        let w = thm3_witness(&a, &params).unwrap().unwrap();
        assert_eq!((w.b, w.c, w.a_flat.len(), w.l1, w.window), (1, 0, 0, 3, 0));
        assert_eq!(w.range(&a).unwrap(), IntRange { lo: 0, hi: 3 });

        let constant = ResidueSequence::from_pairs(p(11), [(4, 6)]).unwrap();
        for l in 1..=6 {
            let params = Thm3Params::with_defaults(&constant, l, 2);
            let w = thm3_witness(&constant, &params).unwrap().unwrap();
            assert!(w.a_flat.is_empty());
            assert_eq!(w.l1, l);
            assert!(w.validate(&constant).unwrap());
        }
        assert!(thm3_witness(&seq(5, &[0, 1, 2, 3, 4]), &Thm3Params::with_defaults(&seq(5, &[0, 1, 2, 3, 4]), 1, 2)).is_err());
    }

    #[test]
    fn zerofree2_examples() {
        let r = zerofree2_report(&seq(11, &[1, 2, 3, 4])).unwrap();
        assert_eq!((r.b, r.below_half, r.above_half), (1, 10, 0));
        let r = zerofree2_report(&seq(11, &[3, 6, 9])).unwrap();
        assert_eq!((r.b, r.below_half, r.above_half), (4, 6, 0));
        assert!(zerofree2_report(&seq(11, &[1, 10])).is_err());
    }

    #[test]
    fn witness_json_round_trip() {
        let a = seq(11, &[3, 6, 9]);
        let w = Witness::ZeroSumFree(thm1_witness(&a, 3).unwrap().unwrap());
        let s = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(back.validate(&a).unwrap());
    }
}
