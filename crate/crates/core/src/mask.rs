//! Word-packed membership masks over `Z_p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residue::PrimeModulus;

const W: usize = 64;

/// A subset of `Z_p` stored as packed bits. Bits at positions `>= p` in the
/// last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SumsetMask {
    p: PrimeModulus,
    words: Vec<u64>,
}

impl SumsetMask {
    pub fn empty(p: PrimeModulus) -> Self {
        let n = (p.get() as usize).div_ceil(W);
        SumsetMask {
            p,
            words: vec![0; n],
        }
    }

    pub fn full(p: PrimeModulus) -> Self {
        let mut m = Self::empty(p);
        m.words.iter_mut().for_each(|w| *w = !0);
        m.mask_tail();
        m
    }

    pub fn singleton(p: PrimeModulus, x: u64) -> Self {
        let mut m = Self::empty(p);
        m.insert(x);
        m
    }

    pub fn from_residues<I: IntoIterator<Item = u64>>(p: PrimeModulus, it: I) -> Result<Self> {
        let mut m = Self::empty(p);
        for x in it {
            if x >= p.get() {
                return Err(Error::ResidueOutOfRange { value: x, p: p.get() });
            }
            m.insert(x);
        }
        Ok(m)
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn insert(&mut self, x: u64) {
        debug_assert!(x < self.p.get());
        let x = x as usize;
        self.words[x / W] |= 1 << (x % W);
    }

    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        if x >= self.p.get() {
            return false;
        }
        let x = x as usize;
        self.words[x / W] >> (x % W) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.p.get()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((i * W + t) as u64)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.p, other.p);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.p, other.p);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// The cyclic shift `{x + a mod p : x in self}`.
    pub fn shifted(&self, a: u64) -> Self {
        let p = self.p.get() as usize;
        let a = (a % self.p.get()) as usize;
        if a == 0 {
            return self.clone();
        }
        // x + a for x < p - a lands at x + a; the top a bits wrap to [0, a).
        let mut out = shl(&self.words, a, p);
        let wrapped = shr(&self.words, p - a, p);
        for (o, w) in out.iter_mut().zip(wrapped) {
            *o |= w;
        }
        let mut m = SumsetMask { p: self.p, words: out };
        m.mask_tail();
        m
    }

    /// `self |= self.shifted(a)`.
    pub fn or_shifted(&mut self, src: &Self, a: u64) {
        let s = src.shifted(a);
        self.union_with(&s);
    }

    /// Pointwise image under `x -> b·x`.
    pub fn dilated(&self, b: u64) -> Self {
        let mut out = SumsetMask::empty(self.p);
        for x in self.iter() {
            out.insert(self.p.mul(x, b));
        }
        out
    }

    fn mask_tail(&mut self) {
        let p = self.p.get() as usize;
        let r = p % W;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

/// Logical left shift of a `len`-bit vector by `k` bits, dropping overflow.
fn shl(words: &[u64], k: usize, len: usize) -> Vec<u64> {
    let n = words.len();
    let mut out = vec![0u64; n];
    let (ws, bs) = (k / W, k % W);
    for i in (ws..n).rev() {
        let src = i - ws;
        let mut v = words[src] << bs;
        if bs != 0 && src > 0 {
            v |= words[src - 1] >> (W - bs);
        }
        out[i] = v;
    }
    let r = len % W;
    if r != 0 {
        out[n - 1] &= (1u64 << r) - 1;
    }
    out
}

/// Logical right shift by `k` bits.
fn shr(words: &[u64], k: usize, _len: usize) -> Vec<u64> {
    let n = words.len();
    let mut out = vec![0u64; n];
    let (ws, bs) = (k / W, k % W);
    for i in 0..n.saturating_sub(ws) {
        let src = i + ws;
        let mut v = words[src] >> bs;
        if bs != 0 && src + 1 < n {
            v |= words[src + 1] << (W - bs);
        }
        out[i] = v;
    }
    out
}

impl fmt::Debug for SumsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SumsetMask(p={}, {:?})", self.p, self.to_vec())
    }
}

#[derive(Serialize, Deserialize)]
struct MaskDoc {
    p: u64,
    residues: Vec<u64>,
}

impl Serialize for SumsetMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MaskDoc {
            p: self.p.get(),
            residues: self.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SumsetMask {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = MaskDoc::deserialize(d)?;
        let p = PrimeModulus::new(doc.p).map_err(D::Error::custom)?;
        SumsetMask::from_residues(p, doc.residues).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_shift(v: &[u64], a: u64, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = v.iter().map(|x| (x + a) % p).collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn full_and_empty() {
        for q in [2u64, 3, 61, 64 + 3, 127, 131] {
            if !crate::residue::is_prime(q) {
                continue;
            }
            let p = PrimeModulus::new(q).unwrap();
            assert_eq!(SumsetMask::full(p).count(), q);
            assert!(SumsetMask::empty(p).is_empty());
            assert!(SumsetMask::full(p).is_full());
        }
    }

    proptest! {
        #[test]
        fn shift_matches_naive(
            pi in 0usize..6,
            bits in proptest::collection::vec(any::<bool>(), 200),
            a in 0u64..400,
        ) {
            let q = [2u64, 7, 61, 67, 127, 193][pi];
            let p = PrimeModulus::new(q).unwrap();
            let elems: Vec<u64> = (0..q).filter(|&x| bits[x as usize]).collect();
            let m = SumsetMask::from_residues(p, elems.clone()).unwrap();
            prop_assert_eq!(m.shifted(a).to_vec(), naive_shift(&elems, a % q, q));
            prop_assert_eq!(m.shifted(a).count(), m.count());
        }
    }

    #[test]
    fn json_shape() {
        let p = PrimeModulus::new(11).unwrap();
        let m = SumsetMask::from_residues(p, [9, 1, 2]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"p":11,"residues":[1,2,9]}"#);
        assert_eq!(serde_json::from_str::<SumsetMask>(&s).unwrap(), m);
    }
}
