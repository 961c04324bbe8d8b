//! Exact subset-sum sets `Σ(A)` and `Σ_l(A)` over `Z_p`, integer ranges
//! of `l`-sums, progression search and net checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::SumsetMask;
use crate::residue::{PrimeModulus, ResidueSequence};

/// `Σ(A)`: sums of all nonempty sub-multisets.
///
/// Bounded knapsack with binary splitting: `m` copies of `a` become groups of
/// `1, 2, 4, …` copies plus a remainder, so each distinct element costs
/// `O(log m)` word-parallel shifts.
pub fn sigma(a: &ResidueSequence) -> Result<SumsetMask> {
    if a.is_empty() {
        return Err(Error::Empty("sequence"));
    }
    let p = a.modulus();
    let mut reach = SumsetMask::singleton(p, 0);
    let mut nonempty = SumsetMask::empty(p);
    for (x, m) in a.iter() {
        let mut left = m;
        let mut group = 1u64;
        while left > 0 {
            let take = group.min(left);
            let step = reach.shifted(p.mul(x, take));
            nonempty.union_with(&step);
            reach.union_with(&step);
            left -= take;
            group <<= 1;
        }
        if nonempty.is_full() {
            break;
        }
    }
    Ok(nonempty)
}

/// Layered reachability: `layer(c)` holds the sums of the size-`c`
/// sub-multisets, for `c` up to the table's cap.
#[derive(Clone, Debug)]
pub struct LsumTable {
    layers: Vec<SumsetMask>,
}

impl LsumTable {
    pub fn build(a: &ResidueSequence, cap: u64) -> Self {
        let p = a.modulus();
        let cap = cap.min(a.len()) as usize;
        let mut layers = vec![SumsetMask::empty(p); cap + 1];
        layers[0].insert(0);
        for (x, m) in a.iter() {
            for c in (1..=cap).rev() {
                let jmax = (m as usize).min(c);
                for j in 1..=jmax {
                    let src = layers[c - j].shifted(p.mul(x, j as u64));
                    layers[c].union_with(&src);
                }
            }
        }
        LsumTable { layers }
    }

    pub fn cap(&self) -> u64 {
        (self.layers.len() - 1) as u64
    }

    pub fn layer(&self, l: u64) -> &SumsetMask {
        &self.layers[l as usize]
    }

    pub fn window(&self, lo: u64, hi: u64) -> SumsetMask {
        let mut out = self.layers[lo as usize].clone();
        for c in lo + 1..=hi {
            out.union_with(&self.layers[c as usize]);
        }
        out
    }
}

fn check_l(a: &ResidueSequence, what: &'static str, l: u64) -> Result<()> {
    if l > a.len() {
        return Err(Error::OutOfRange {
            what,
            value: l as i64,
            lo: 0,
            hi: a.len() as i64,
        });
    }
    Ok(())
}

/// `Σ_l(A)`: sums of sub-multisets of size exactly `l`. `Σ_0(A) = {0}`.
pub fn sigma_l(a: &ResidueSequence, l: u64) -> Result<SumsetMask> {
    check_l(a, "l", l)?;
    Ok(LsumTable::build(a, l).layer(l).clone())
}

/// Union of `Σ_l(A)` over `l_lo <= l <= l_hi`.
pub fn sigma_l_window(a: &ResidueSequence, l_lo: u64, l_hi: u64) -> Result<SumsetMask> {
    check_l(a, "l_hi", l_hi)?;
    if l_lo > l_hi {
        return Err(Error::OutOfRange {
            what: "l_lo",
            value: l_lo as i64,
            lo: 0,
            hi: l_hi as i64,
        });
    }
    Ok(LsumTable::build(a, l_hi).window(l_lo, l_hi))
}

/// Closed integer interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    /// `hi - lo`.
    pub fn length(&self) -> i64 {
        self.hi - self.lo
    }

    /// Number of integers in the interval.
    pub fn count(&self) -> i64 {
        self.hi - self.lo + 1
    }

    /// At most `p - 1` integers, so the interval misses a residue class.
    pub fn misses_a_class(&self, p: PrimeModulus) -> bool {
        self.count() < p.get() as i64
    }

    pub fn hull(self, other: IntRange) -> IntRange {
        IntRange {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

/// Exact minimum and maximum of the `l`-sums of an integer multiset.
pub fn lsum_range_int(values: &[i64], l: usize) -> Result<IntRange> {
    if l > values.len() {
        return Err(Error::OutOfRange {
            what: "l",
            value: l as i64,
            lo: 0,
            hi: values.len() as i64,
        });
    }
    let mut v = values.to_vec();
    v.sort_unstable();
    let lo = v[..l].iter().sum();
    let hi = v[v.len() - l..].iter().sum();
    Ok(IntRange { lo, hi })
}

/// Hull of the `l`-sum ranges for `l` in `[l_lo, l_hi]`, from one sort.
pub fn lsum_window_range_int(values: &[i64], l_lo: usize, l_hi: usize) -> Result<IntRange> {
    if l_hi > values.len() || l_lo > l_hi {
        return Err(Error::OutOfRange {
            what: "l window",
            value: l_hi as i64,
            lo: l_lo as i64,
            hi: values.len() as i64,
        });
    }
    let mut v = values.to_vec();
    v.sort_unstable();
    let n = v.len();
    let mut asc = 0i64;
    let mut desc = 0i64;
    let mut out: Option<IntRange> = None;
    for l in 0..=l_hi {
        if l > 0 {
            asc += v[l - 1];
            desc += v[n - l];
        }
        if l >= l_lo {
            let r = IntRange { lo: asc, hi: desc };
            out = Some(out.map_or(r, |o| o.hull(r)));
        }
    }
    Ok(out.expect("nonempty window"))
}

/// Arithmetic progression `start, start + diff, …` of `length` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APWitness {
    pub start: u64,
    pub diff: u64,
    pub length: u64,
}

impl APWitness {
    pub fn terms(&self, p: PrimeModulus) -> Vec<u64> {
        (0..self.length)
            .map(|i| p.add(self.start, p.mul(i, self.diff)))
            .collect()
    }
}

/// Longest arithmetic progression inside the mask, over every difference
/// `d` in `[1, p-1]`. Ties go to the smallest `d`, then the smallest start.
pub fn longest_ap(mask: &SumsetMask) -> Result<APWitness> {
    if mask.is_empty() {
        return Err(Error::Empty("mask"));
    }
    let p = mask.modulus();
    let q = p.get();
    if mask.is_full() {
        return Ok(APWitness {
            start: 0,
            diff: 1,
            length: q,
        });
    }
    let mut best = APWitness {
        start: 0,
        diff: 0,
        length: 0,
    };
    for d in 1..q {
        // Walk the cycle 0, d, 2d, … starting just after a missing residue,
        // so no run wraps around the walk's end.
        let hole = (0..q)
            .map(|i| p.mul(i, d))
            .find(|&x| !mask.contains(x))
            .expect("mask is not full");
        let mut x = p.add(hole, d);
        let mut run_start = x;
        let mut run = 0u64;
        let mut best_d = (0u64, 0u64);
        for _ in 0..q {
            if mask.contains(x) {
                if run == 0 {
                    run_start = x;
                }
                run += 1;
                if run > best_d.0 || (run == best_d.0 && run_start < best_d.1) {
                    best_d = (run, run_start);
                }
            } else {
                run = 0;
            }
            x = p.add(x, d);
        }
        if best_d.0 > best.length {
            best = APWitness {
                start: best_d.1,
                diff: d,
                length: best_d.0,
            };
        }
    }
    Ok(best)
}

/// Whether every residue lies in `[x, x + k]` (cyclically) for some `x` in
/// the set; equivalently the largest cyclic gap is at most `k + 1`.
pub fn knet_check(set: &SumsetMask, k: u64) -> Result<bool> {
    let elems = set.to_vec();
    let (&first, &last) = match (elems.first(), elems.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Empty("net candidate set")),
    };
    let q = set.modulus().get();
    let wrap_gap = first + q - last;
    let max_gap = elems
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(wrap_gap))
        .max()
        .unwrap_or(q);
    Ok(max_gap - 1 <= k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn seq(q: u64, e: &[u64]) -> ResidueSequence {
        ResidueSequence::from_elements(p(q), e).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&seq(11, &[1, 1, 7])).unwrap().to_vec(), vec![1, 2, 7, 8, 9]);
        assert_eq!(sigma(&seq(11, &[4])).unwrap().to_vec(), vec![4]);
        assert_eq!(sigma(&seq(7, &[1, 2, 3])).unwrap().to_vec(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(sigma(&ResidueSequence::empty(p(7))), Err(Error::Empty("sequence")));
    }

    #[test]
    fn sigma_l_examples() {
        let a = seq(11, &[1, 1, 7]);
        assert_eq!(sigma_l(&a, 2).unwrap().to_vec(), vec![2, 8]);
        assert_eq!(sigma_l(&a, 3).unwrap().to_vec(), vec![a.total()]);
        assert_eq!(sigma_l(&a, 0).unwrap().to_vec(), vec![0]);
        assert_eq!(
            sigma_l(&seq(11, &[1, 2, 3, 4]), 2).unwrap().to_vec(),
            vec![3, 4, 5, 6, 7]
        );
        assert!(sigma_l(&a, 4).is_err());
    }

    #[test]
    fn window_examples() {
        let a = seq(11, &[1, 1, 7]);
        assert_eq!(sigma_l_window(&a, 1, 3).unwrap(), sigma(&a).unwrap());
        assert_eq!(sigma_l_window(&a, 2, 2).unwrap(), sigma_l(&a, 2).unwrap());
        assert_eq!(sigma_l_window(&seq(7, &[0, 0, 0]), 1, 3).unwrap().to_vec(), vec![0]);
        assert!(sigma_l_window(&a, 2, 1).is_err());
        assert!(sigma_l_window(&a, 0, 4).is_err());
    }

    #[test]
    fn lsum_range_examples() {
        assert_eq!(lsum_range_int(&[-2, 0, 1, 3], 2).unwrap(), IntRange { lo: -2, hi: 4 });
        assert_eq!(lsum_range_int(&[-2, 0, 1, 3], 0).unwrap(), IntRange { lo: 0, hi: 0 });
        assert_eq!(lsum_range_int(&[5, 5, 5], 2).unwrap(), IntRange { lo: 10, hi: 10 });
        assert!(lsum_range_int(&[5], 2).is_err());
        assert_eq!(
            lsum_window_range_int(&[-2, 0, 1, 3], 1, 3).unwrap(),
            IntRange { lo: -2, hi: 4 }
        );
    }

    #[test]
    fn longest_ap_examples() {
        let m = SumsetMask::from_residues(p(11), [1, 2, 7, 8, 9]).unwrap();
        let ap = longest_ap(&m).unwrap();
        // 8, 2, 7, 1 with difference 5 beats the consecutive run 7, 8, 9.
        assert_eq!(ap, APWitness { start: 8, diff: 5, length: 4 });
        assert_eq!(oracle::longest_ap(&m), (4, 5, 8));
        assert_eq!(longest_ap(&SumsetMask::full(p(11))).unwrap().length, 11);
        let s = SumsetMask::singleton(p(11), 4);
        assert_eq!(longest_ap(&s).unwrap(), APWitness { start: 4, diff: 1, length: 1 });
        assert!(longest_ap(&SumsetMask::empty(p(11))).is_err());
    }

    #[test]
    fn longest_ap_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let q = [5u64, 7, 11, 13, 17, 23][rng.gen_range(0..6)];
            let dens = rng.gen_range(0.1..0.95);
            let elems: Vec<u64> = (0..q).filter(|_| rng.gen_bool(dens)).collect();
            if elems.is_empty() {
                continue;
            }
            let m = SumsetMask::from_residues(p(q), elems).unwrap();
            let ap = longest_ap(&m).unwrap();
            let (len, d, s) = oracle::longest_ap(&m);
            assert_eq!((ap.length, ap.diff, ap.start), (len, d, s), "{m:?}");
            assert!(ap.terms(p(q)).iter().all(|&t| m.contains(t)));
        }
    }

    #[test]
    fn knet_examples() {
        let q = p(11);
        let x = SumsetMask::from_residues(q, [0, 5]).unwrap();
        assert!(knet_check(&x, 5).unwrap());
        assert!(!knet_check(&x, 4).unwrap());
        assert!(knet_check(&SumsetMask::full(q), 0).unwrap());
        let z = SumsetMask::singleton(q, 0);
        assert!(!knet_check(&z, 9).unwrap());
        assert!(knet_check(&z, 10).unwrap());
        assert!(knet_check(&SumsetMask::empty(q), 3).is_err());
    }

    #[test]
    fn knet_matches_quadratic_checker() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let primes: Vec<u64> = (2..=101).filter(|&n| crate::residue::is_prime(n)).collect();
        for _ in 0..500 {
            let q = primes[rng.gen_range(0..primes.len())];
            let dens = rng.gen_range(0.02..0.6);
            let mut elems: Vec<u64> = (0..q).filter(|_| rng.gen_bool(dens)).collect();
            if elems.is_empty() {
                elems.push(rng.gen_range(0..q));
            }
            let m = SumsetMask::from_residues(p(q), elems).unwrap();
            let k = rng.gen_range(0..q);
            assert_eq!(knet_check(&m, k).unwrap(), oracle::is_knet(&m, k), "{m:?} k={k}");
        }
    }
}
