//! Erdős–Ginzburg–Ziv: exhaustive verification, the extremal sequences of
//! length `2p - 2`, and the explicit zero `p`-sum construction for
//! sequences close to `{0^[p-1], 1^[p-1]}`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::is_l_zero_sum_free;
use crate::enumerate::{multiset_count, to_u64_saturating, Budget, Compositions};
use crate::error::{Error, Result};
use crate::residue::{f_control, signed_rep, PrimeModulus, ResidueSequence};
use crate::sumset::LsumTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgzReport {
    pub p: u64,
    pub total_multisets: BigUint,
    /// Multisets whose `p`-sums were actually computed.
    pub evaluated: u64,
    pub orbit_reduction: bool,
    pub counterexamples: Vec<ResidueSequence>,
}

/// Whether the multiset with multiplicity vector `v` has `p` elements
/// summing to zero. A multiplicity of `p` or more is an immediate yes.
fn has_zero_p_sum(p: PrimeModulus, v: &[u64]) -> Result<bool> {
    let q = p.get();
    if v.iter().any(|&c| c >= q) {
        return Ok(true);
    }
    let a = from_mults(p, v)?;
    Ok(LsumTable::build(&a, q).layer(q).contains(0))
}

fn from_mults(p: PrimeModulus, v: &[u64]) -> Result<ResidueSequence> {
    ResidueSequence::from_pairs(
        p,
        v.iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(x, &c)| (x as u64, c)),
    )
}

/// All multiplicity vectors of size-`size` multisets over `Z_p`, split by
/// the multiplicity of 0.
fn multisets_by_zero(p: PrimeModulus, size: u64) -> impl ParallelIterator<Item = Vec<u64>> {
    let q = p.get() as usize;
    (0..=size).into_par_iter().flat_map_iter(move |c0| {
        Compositions::new(q - 1, size - c0).map(move |rest| {
            let mut v = Vec::with_capacity(q);
            v.push(c0);
            v.extend(rest);
            v
        })
    })
}

/// Images of `v` under every `x -> b x + c`, `b != 0`.
fn affine_images(p: PrimeModulus, v: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let q = p.get();
    (1..q).flat_map(move |b| {
        (0..q).map(move |c| {
            let mut w = vec![0; q as usize];
            for (x, &m) in v.iter().enumerate() {
                w[p.add(p.mul(b, x as u64), c) as usize] = m;
            }
            w
        })
    })
}

fn orbit(p: PrimeModulus, v: &[u64]) -> Vec<Vec<u64>> {
    let mut o: Vec<Vec<u64>> = affine_images(p, v).collect();
    o.sort();
    o.dedup();
    o
}

fn is_orbit_min(p: PrimeModulus, v: &[u64]) -> bool {
    affine_images(p, v).all(|w| w.as_slice() >= v)
}

fn check_budget(p: PrimeModulus, size: u64, budget: &Budget) -> Result<BigUint> {
    let total = multiset_count(p.get(), size);
    budget.check(format!("multisets of size {size} over Z_{p}"), &total)?;
    Ok(total)
}

/// Every multiset of size `2p - 1`, checked for a zero-sum sub-multiset of
/// size `p`. With `orbit_reduction`, only the lexicographically least member
/// of each affine orbit is evaluated; having a zero `p`-sum is affine
/// invariant, so counterexamples are expanded back to full orbits.
pub fn egz_verify(p: PrimeModulus, budget: &Budget, orbit_reduction: bool) -> Result<EgzReport> {
    let size = 2 * p.get() - 1;
    let total = check_budget(p, size, budget)?;
    let results: Vec<(u64, u64, Vec<Vec<u64>>)> = multisets_by_zero(p, size)
        .map(|v| {
            if orbit_reduction && !is_orbit_min(p, &v) {
                return Ok((1, 0, Vec::new()));
            }
            let bad = !has_zero_p_sum(p, &v)?;
            let members = if bad {
                if orbit_reduction { orbit(p, &v) } else { vec![v] }
            } else {
                Vec::new()
            };
            Ok((1, 1, members))
        })
        .collect::<Result<_>>()?;
    let seen: u64 = results.iter().map(|r| r.0).sum();
    if BigUint::from(seen) != total {
        return Err(Error::Precondition(format!(
            "internal: enumerated {seen} multisets, expected {total}"
        )));
    }
    let evaluated = results.iter().map(|r| r.1).sum();
    let mut vs: Vec<Vec<u64>> = results.into_iter().flat_map(|r| r.2).collect();
    vs.sort();
    vs.dedup();
    let counterexamples = vs.iter().map(|v| from_mults(p, v)).collect::<Result<Vec<_>>>()?;
    Ok(EgzReport {
        p: p.get(),
        total_multisets: total,
        evaluated,
        orbit_reduction,
        counterexamples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalEntry {
    pub sequence: ResidueSequence,
    /// `{a^[p-1], b^[p-1]}` with `a != b`.
    pub two_value_shape: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgzExtremalReport {
    pub p: u64,
    pub total_multisets: BigUint,
    pub entries: Vec<ExtremalEntry>,
    pub deviations: u64,
}

/// Every `p`-zero-sum-free multiset of size `2p - 2`, each re-checked and
/// compared against the two-value shape.
pub fn egz_extremal_classify(p: PrimeModulus, budget: &Budget) -> Result<EgzExtremalReport> {
    let q = p.get();
    let size = 2 * q - 2;
    let total = check_budget(p, size, budget)?;
    let hits: Vec<Option<Vec<u64>>> = multisets_by_zero(p, size)
        .map(|v| Ok((!has_zero_p_sum(p, &v)?).then_some(v)))
        .collect::<Result<_>>()?;
    if BigUint::from(hits.len()) != total {
        return Err(Error::Precondition(format!(
            "internal: enumerated {} multisets, expected {total}",
            hits.len()
        )));
    }
    let mut vs: Vec<Vec<u64>> = hits.into_iter().flatten().collect();
    vs.sort();
    let mut entries = Vec::with_capacity(vs.len());
    for v in vs {
        let a = from_mults(p, &v)?;
        if !is_l_zero_sum_free(&a, q)? {
            return Err(Error::Precondition(format!("internal: {a} has a zero {q}-sum")));
        }
        let nz: Vec<u64> = v.iter().copied().filter(|&c| c > 0).collect();
        entries.push(ExtremalEntry {
            sequence: a,
            two_value_shape: nz == [q - 1, q - 1],
        });
    }
    let deviations = entries.iter().filter(|e| !e.two_value_shape).count() as u64;
    Ok(EgzExtremalReport {
        p: q,
        total_multisets: total,
        entries,
        deviations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyZeroSum {
    /// Which construction produced the result (1, 2 or 3).
    pub case: u8,
    pub subsequence: ResidueSequence,
}

/// For `A = {0^[p-k1], 1^[p-k2], a_1, …, a_l}` of size `2p - 2`, a size-`p`
/// sub-multiset summing to zero, tried in the order: one large `|a_i|`,
/// a run of negatives, a run of positives. `None` when `l = 0` or no case
/// has enough zeros and ones.
pub fn greedy_zero_p_subsequence(a: &ResidueSequence) -> Result<Option<GreedyZeroSum>> {
    let p = a.modulus();
    let q = p.get() as i64;
    if a.len() != 2 * p.get() - 2 {
        return Err(Error::Precondition(format!("|A| = {} but 2p - 2 = {}", a.len(), 2 * q - 2)));
    }
    let m0 = a.multiplicity(0) as i64;
    let m1 = a.multiplicity(1) as i64;
    if m0 > q - 1 || m1 > q - 1 {
        return Err(Error::Precondition("0 and 1 may occur at most p - 1 times".into()));
    }
    let k1 = q - m0;
    let k2 = q - m1;
    let mut rest: Vec<i64> = a
        .iter()
        .filter(|&(x, _)| x > 1)
        .flat_map(|(x, c)| std::iter::repeat_n(signed_rep(x, p).0, c as usize))
        .collect();
    let l = rest.len() as i64;
    debug_assert_eq!(l, k1 + k2 - 2);
    if l == 0 {
        return Ok(None);
    }

    // zeros, ones and the chosen a_i
    let build = |zeros: i64, ones: i64, picked: &[i64]| -> Result<Option<ResidueSequence>> {
        if zeros < 0 || ones < 0 || zeros > m0 || ones > m1 {
            return Ok(None);
        }
        let mut s = ResidueSequence::from_pairs(p, [(0, zeros as u64), (1, ones as u64)].into_iter().filter(|&(_, c)| c > 0))?;
        for &x in picked {
            s = s.with_added(p.reduce(x), 1)?;
        }
        let ok = s.len() == p.get() && s.total() == 0 && s.is_sub_multiset_of(a);
        Ok(ok.then_some(s))
    };

    // Case 1: smallest qualifying |a| first, positive before negative
    rest.sort_by_key(|&x| (x.abs(), x < 0));
    for &x in rest.iter().filter(|&&x| 6 * x.abs() >= q) {
        let r = if x > 0 {
            build(x - 1, q - x, &[x])?
        } else {
            build(q + x - 1, -x, &[x])?
        };
        if let Some(s) = r {
            return Ok(Some(GreedyZeroSum { case: 1, subsequence: s }));
        }
    }

    // Case 2: negatives, largest |a| first, until l1 + |sum| >= k1
    let mut negs: Vec<i64> = rest.iter().copied().filter(|&x| x < 0).collect();
    if negs.len() as i64 >= (k1 - 1).max(1) {
        negs.sort();
        let mut s = 0i64;
        for (i, &x) in negs.iter().enumerate() {
            s += -x;
            let l1 = i as i64 + 1;
            if l1 + s >= k1 {
                if let Some(r) = build(q - l1 - s, s, &negs[..=i])? {
                    return Ok(Some(GreedyZeroSum { case: 2, subsequence: r }));
                }
                break;
            }
        }
    }

    // Case 3: positives, smallest first, until the sum reaches k2
    let mut pos: Vec<i64> = rest.iter().copied().filter(|&x| x > 0).collect();
    if pos.len() as i64 >= l.min(k2) {
        pos.sort();
        let mut s = 0i64;
        for (i, &x) in pos.iter().enumerate() {
            s += x;
            if s >= k2 {
                let l2 = i as i64 + 1;
                if let Some(r) = build(s - l2, q - s, &pos[..=i])? {
                    return Ok(Some(GreedyZeroSum { case: 3, subsequence: r }));
                }
                break;
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm62Report {
    pub p: u64,
    pub size: u64,
    pub excess: u64,
    pub a: u64,
    pub b: u64,
    pub m_a: u64,
    pub m_b: u64,
    pub m_sum: u64,
    /// `f(p, p)`, the scale of the error term.
    pub f_pp: u64,
}

/// The two most frequent elements of a `p`-zero-sum-free sequence.
pub fn thm62_structure(a: &ResidueSequence) -> Result<Thm62Report> {
    let p = a.modulus();
    let q = p.get();
    if a.len() < q || a.len() > 2 * q - 2 {
        return Err(Error::Precondition(format!(
            "need p <= |A| <= 2p - 2, got |A| = {}",
            a.len()
        )));
    }
    if !is_l_zero_sum_free(a, q)? {
        return Err(Error::Precondition(format!("{a} has a zero {q}-sum")));
    }
    let mut by_mult: Vec<(u64, u64)> = a.iter().collect();
    by_mult.sort_by_key(|&(x, c)| (std::cmp::Reverse(c), x));
    let (x, mx) = by_mult[0];
    let (y, my) = by_mult.get(1).copied().unwrap_or((x, 0));
    Ok(Thm62Report {
        p: q,
        size: a.len(),
        excess: a.len() - q,
        a: x,
        b: y,
        m_a: mx,
        m_b: my,
        m_sum: mx + my,
        f_pp: f_control(p, q)?,
    })
}

/// Multisets of size `2p - 1` over `Z_p`, `C(3p - 2, p - 1)`.
pub fn egz_multiset_count(p: PrimeModulus) -> u64 {
    to_u64_saturating(&multiset_count(p.get(), 2 * p.get() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn budget() -> Budget {
        Budget::new(1_000_000u64)
    }

    #[test]
    fn egz_small_primes() {
        for (q, total) in [(2u64, 4u64), (3, 21), (5, 715), (7, 27132)] {
            let r = egz_verify(p(q), &budget(), false).unwrap();
            assert_eq!(r.total_multisets, BigUint::from(total));
            assert!(r.counterexamples.is_empty());
        }
        assert_eq!(egz_multiset_count(p(7)), 27132);
        assert!(matches!(egz_verify(p(11), &Budget::new(1000u64), false), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn orbit_reduction_agrees() {
        let plain = egz_verify(p(5), &budget(), false).unwrap();
        let red = egz_verify(p(5), &budget(), true).unwrap();
        assert_eq!(plain.counterexamples, red.counterexamples);
        assert_eq!(plain.total_multisets, red.total_multisets);
        assert!(red.evaluated * 5 < plain.evaluated);
        // orbit sizes add back up to the full count
        let size = 9;
        let mut reps = 0u64;
        let mut covered = 0u64;
        for v in Compositions::new(5, size) {
            if is_orbit_min(p(5), &v) {
                reps += 1;
                covered += orbit(p(5), &v).len() as u64;
            }
        }
        assert_eq!(reps, red.evaluated);
        assert_eq!(BigUint::from(covered), plain.total_multisets);
    }

    #[test]
    fn extremal_shapes() {
        for q in [2u64, 3, 5, 7] {
            let r = egz_extremal_classify(p(q), &budget()).unwrap();
            assert_eq!(r.deviations, 0, "p={q}");
            // ordered pairs a != b, unordered
            assert_eq!(r.entries.len() as u64, q * (q - 1) / 2);
            for e in &r.entries {
                assert!(e.two_value_shape);
                assert!(oracle::is_l_zero_sum_free(&e.sequence, q));
            }
        }
        let r = egz_extremal_classify(p(7), &budget()).unwrap();
        assert_eq!(r.total_multisets, BigUint::from(18564u32));
    }

    #[test]
    fn greedy_examples() {
        let q = p(11);
        let a = ResidueSequence::from_pairs(q, [(0, 10), (1, 10)]).unwrap();
        assert_eq!(greedy_zero_p_subsequence(&a).unwrap(), None);
        let a = ResidueSequence::from_pairs(q, [(0, 10), (1, 8), (3, 1), (4, 1)]).unwrap();
        let g = greedy_zero_p_subsequence(&a).unwrap().unwrap();
        assert_eq!(g.subsequence, ResidueSequence::from_pairs(q, [(0, 2), (1, 8), (3, 1)]).unwrap());
        let a = ResidueSequence::from_pairs(q, [(0, 9), (1, 9), (5, 1), (2, 1)]).unwrap();
        let g = greedy_zero_p_subsequence(&a).unwrap().unwrap();
        assert_eq!(g.case, 1);
        assert_eq!(g.subsequence.len(), 11);
        assert_eq!(g.subsequence.total(), 0);
        assert!(greedy_zero_p_subsequence(&ResidueSequence::from_elements(q, &[1, 2]).unwrap()).is_err());
    }

    #[test]
    fn greedy_cases_two_and_three() {
        let q = p(61);
        // small negatives only: case 2
        let a = ResidueSequence::from_signed(q, &[&[0i64; 58][..], &[1; 60][..], &[-2, -3]].concat()).unwrap();
        let g = greedy_zero_p_subsequence(&a).unwrap().unwrap();
        assert_eq!(g.case, 2);
        assert_eq!((g.subsequence.len(), g.subsequence.total()), (61, 0));
        // small positives only: case 3
        let a = ResidueSequence::from_signed(q, &[&[0i64; 60][..], &[1; 57][..], &[2, 3, 2]].concat()).unwrap();
        let g = greedy_zero_p_subsequence(&a).unwrap().unwrap();
        assert_eq!(g.case, 3);
        assert_eq!((g.subsequence.len(), g.subsequence.total()), (61, 0));
    }

    #[test]
    fn greedy_output_always_valid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let q = [11u64, 13, 31, 61, 101][rng.gen_range(0..5)];
            let pm = p(q);
            let k1 = rng.gen_range(1..=4i64);
            let k2 = rng.gen_range(1..=4i64);
            let l = (k1 + k2 - 2) as usize;
            let mut v = vec![0i64; (q as i64 - k1) as usize];
            v.extend(std::iter::repeat_n(1, (q as i64 - k2) as usize));
            let h = (q / 2) as i64;
            for _ in 0..l {
                let mut x = 0;
                while x == 0 || x == 1 {
                    x = rng.gen_range(-h..=h);
                }
                v.push(x);
            }
            let a = ResidueSequence::from_signed(pm, &v).unwrap();
            if let Some(g) = greedy_zero_p_subsequence(&a).unwrap() {
                assert_eq!(g.subsequence.len(), q);
                assert_eq!(g.subsequence.total(), 0);
                assert!(g.subsequence.is_sub_multiset_of(&a));
            } else {
                assert_eq!(l, 0);
            }
        }
    }

    #[test]
    fn thm62_examples() {
        let a = ResidueSequence::from_pairs(p(5), [(0, 4), (1, 4)]).unwrap();
        let r = thm62_structure(&a).unwrap();
        assert_eq!((r.m_sum, r.a, r.b), (8, 0, 1));
        let a = ResidueSequence::from_pairs(p(7), [(2, 6), (5, 6)]).unwrap();
        assert_eq!(thm62_structure(&a).unwrap().m_sum, 12);
        // 0 + 1 + 1 + 1 + 2 = 5
        let a = ResidueSequence::from_pairs(p(5), [(0, 4), (1, 3), (2, 1)]).unwrap();
        assert!(!oracle::is_l_zero_sum_free(&a, 5));
        assert!(thm62_structure(&a).is_err());
        let a = ResidueSequence::from_pairs(p(5), [(0, 2), (1, 2)]).unwrap();
        assert!(thm62_structure(&a).is_err());
    }
}
