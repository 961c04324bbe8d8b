//! Residues modulo a prime, residue sequences (multisets) and the basic
//! maps acting on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus `p`, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `(p - 1) / 2`, the largest norm.
    #[inline]
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inverse(self, a: u64) -> Option<u64> {
        if a % self.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.0 - 2))
        }
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeModulus::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(p: PrimeModulus) -> u64 {
        p.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distance from `x` to zero in `Z_p`.
#[inline]
pub fn norm(x: u64, p: PrimeModulus) -> u64 {
    debug_assert!(x < p.get());
    x.min(p.get() - x)
}

/// Integer representative in `[-(p-1)/2, (p-1)/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedInteger(pub i64);

impl SignedInteger {
    pub fn to_residue(self, p: PrimeModulus) -> u64 {
        p.reduce(self.0)
    }
}

pub fn signed_rep(x: u64, p: PrimeModulus) -> SignedInteger {
    debug_assert!(x < p.get());
    if x <= p.half() {
        SignedInteger(x as i64)
    } else {
        SignedInteger(x as i64 - p.get() as i64)
    }
}

/// `f(p, m) = floor((pm)^(6/13) * (log2 p)^2)`.
///
/// The float product is bracketed by a relative error bound; when the two
/// ends of the bracket floor differently the smaller value is returned.
pub fn f_control(p: PrimeModulus, m: u64) -> Result<u64> {
    if m < 1 || m > p.get() {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as i64,
            lo: 1,
            hi: p.get() as i64,
        });
    }
    let pm = p.get() as f64 * m as f64;
    let lg = (p.get() as f64).log2();
    let v = pm.powf(6.0 / 13.0) * lg * lg;
    const REL: f64 = 1e-12;
    let lo = (v * (1.0 - REL)).floor();
    let hi = (v * (1.0 + REL)).floor();
    Ok(if lo != hi { lo as u64 } else { v.floor() as u64 })
}

/// `floor((pm)^(3/13))`, the window length attached to `f`.
pub fn window_control(p: PrimeModulus, m: u64) -> u64 {
    let v = (p.get() as f64 * m.max(1) as f64).powf(3.0 / 13.0);
    let lo = (v * (1.0 - 1e-12)).floor();
    lo as u64
}

/// A finite multiset of residues mod `p`, stored as element -> multiplicity.
///
/// Every multiplicity is in `[1, p]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ResidueSequence {
    p: PrimeModulus,
    mults: BTreeMap<u64, u64>,
}

impl ResidueSequence {
    pub fn empty(p: PrimeModulus) -> Self {
        ResidueSequence {
            p,
            mults: BTreeMap::new(),
        }
    }

    /// Builds from `(element, multiplicity)` pairs; repeated elements merge.
    pub fn from_pairs<I>(p: PrimeModulus, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut mults = BTreeMap::new();
        for (a, m) in pairs {
            if a >= p.get() {
                return Err(Error::ResidueOutOfRange { value: a, p: p.get() });
            }
            if m == 0 {
                return Err(Error::ZeroMultiplicity { element: a });
            }
            *mults.entry(a).or_insert(0u64) += m;
        }
        Self::checked(p, mults)
    }

    /// One copy per listed residue.
    pub fn from_elements(p: PrimeModulus, elems: &[u64]) -> Result<Self> {
        Self::from_pairs(p, elems.iter().map(|&a| (a, 1)))
    }

    /// Arbitrary integers, reduced mod `p`.
    pub fn from_signed(p: PrimeModulus, elems: &[i64]) -> Result<Self> {
        Self::from_pairs(p, elems.iter().map(|&a| (p.reduce(a), 1)))
    }

    fn checked(p: PrimeModulus, mults: BTreeMap<u64, u64>) -> Result<Self> {
        if let Some((&a, &m)) = mults.iter().find(|(_, &m)| m > p.get()) {
            return Err(Error::MultiplicityCap {
                element: a,
                mult: m,
                p: p.get(),
            });
        }
        Ok(ResidueSequence { p, mults })
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    /// Cardinality `|A|`, counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn distinct_len(&self) -> usize {
        self.mults.len()
    }

    pub fn multiplicity(&self, a: u64) -> u64 {
        self.mults.get(&a).copied().unwrap_or(0)
    }

    /// `m(A)`; zero for the empty sequence.
    pub fn max_multiplicity(&self) -> u64 {
        self.mults.values().copied().max().unwrap_or(0)
    }

    /// `(element, multiplicity)` in increasing element order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.mults.iter().map(|(&a, &m)| (a, m))
    }

    /// All elements with repetition, sorted.
    pub fn elements(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.len() as usize);
        for (a, m) in self.iter() {
            out.extend(std::iter::repeat(a).take(m as usize));
        }
        out
    }

    pub fn signed_elements(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .elements()
            .into_iter()
            .map(|a| signed_rep(a, self.p).0)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn contains(&self, a: u64) -> bool {
        self.mults.contains_key(&a)
    }

    pub fn is_set(&self) -> bool {
        self.mults.values().all(|&m| m == 1)
    }

    /// Sum of all elements mod `p`.
    pub fn total(&self) -> u64 {
        self.iter()
            .fold(0, |acc, (a, m)| self.p.add(acc, self.p.mul(a, m)))
    }

    /// Multiset union `A ∪* B`.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let mut mults = self.mults.clone();
        for (a, m) in other.iter() {
            *mults.entry(a).or_insert(0) += m;
        }
        Self::checked(self.p, mults)
    }

    pub fn is_sub_multiset_of(&self, other: &Self) -> bool {
        self.p == other.p && self.iter().all(|(a, m)| other.multiplicity(a) >= m)
    }

    /// `A ∖ B` for a sub-multiset `B` of `A`.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        if !other.is_sub_multiset_of(self) {
            return Err(Error::Precondition(format!(
                "{other} is not a sub-multiset of {self}"
            )));
        }
        let mut mults = self.mults.clone();
        for (a, m) in other.iter() {
            let e = mults.get_mut(&a).expect("checked sub-multiset");
            *e -= m;
            if *e == 0 {
                mults.remove(&a);
            }
        }
        Ok(ResidueSequence { p: self.p, mults })
    }

    pub fn with_added(&self, a: u64, m: u64) -> Result<Self> {
        let single = ResidueSequence::from_pairs(self.p, [(a, m)])?;
        self.union(&single)
    }

    /// `b·A`.
    pub fn dilate(&self, b: u64) -> Result<Self> {
        let b = b % self.p.get();
        if b == 0 {
            return Err(Error::ZeroDilation);
        }
        // b is invertible, so the image keeps multiplicities element-wise.
        let mults = self.iter().map(|(a, m)| (self.p.mul(a, b), m)).collect();
        Ok(ResidueSequence { p: self.p, mults })
    }

    /// `A + c`.
    pub fn translate(&self, c: u64) -> Self {
        let c = c % self.p.get();
        let mults = self.iter().map(|(a, m)| (self.p.add(a, c), m)).collect();
        ResidueSequence { p: self.p, mults }
    }

    /// `b·A + c`.
    pub fn affine(&self, b: u64, c: u64) -> Result<Self> {
        Ok(self.dilate(b)?.translate(c))
    }

    pub(crate) fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: other.p.get(),
            })
        } else {
            Ok(())
        }
    }
}

/// Whether `A = A_1 ∪* ... ∪* A_k` as multisets.
pub fn decompose_check(a: &ResidueSequence, parts: &[ResidueSequence]) -> Result<bool> {
    let mut acc: BTreeMap<u64, u64> = BTreeMap::new();
    for part in parts {
        a.same_modulus(part)?;
        for (x, m) in part.iter() {
            *acc.entry(x).or_insert(0) += m;
        }
    }
    Ok(acc == a.mults)
}

impl fmt::Display for ResidueSequence {
    /// `p=11; A=1^2,7`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}; A=", self.p)?;
        for (i, (a, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if m == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{m}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for ResidueSequence {
    type Err = Error;

    /// Accepts `p=<prime>; A=<elem>[^<mult>],...`. Elements may be negative
    /// integers and are reduced mod `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let (p_part, a_part) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let p_str = p_part
            .trim()
            .strip_prefix("p=")
            .ok_or_else(|| bad("expected 'p='"))?;
        let p: u64 = p_str.trim().parse().map_err(|_| bad("bad modulus"))?;
        let p = PrimeModulus::new(p)?;
        let list = a_part
            .trim()
            .strip_prefix("A=")
            .ok_or_else(|| bad("expected 'A='"))?
            .trim();
        let mut pairs = Vec::new();
        if !list.is_empty() {
            for tok in list.split(',') {
                let tok = tok.trim();
                let (e, m) = match tok.split_once('^') {
                    Some((e, m)) => (e, m.trim().parse::<u64>().map_err(|_| bad("bad multiplicity"))?),
                    None => (tok, 1),
                };
                let e: i64 = e.trim().parse().map_err(|_| bad("bad element"))?;
                pairs.push((p.reduce(e), m));
            }
        }
        ResidueSequence::from_pairs(p, pairs)
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceDoc {
    p: u64,
    elements: Vec<(u64, u64)>,
}

impl Serialize for ResidueSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SequenceDoc {
            p: self.p.get(),
            elements: self.iter().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ResidueSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = SequenceDoc::deserialize(d)?;
        let p = PrimeModulus::new(doc.p).map_err(D::Error::custom)?;
        let mut seen = std::collections::BTreeSet::new();
        for &(a, _) in &doc.elements {
            if !seen.insert(a) {
                return Err(D::Error::custom(format!("duplicate element {a}")));
            }
        }
        ResidueSequence::from_pairs(p, doc.elements).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new(91).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(10, p(11)), 1);
        assert_eq!(norm(0, p(7)), 0);
        assert_eq!(norm(6, p(13)), 6);
    }

    #[test]
    fn signed_rep_examples() {
        assert_eq!(signed_rep(10, p(11)), SignedInteger(-1));
        assert_eq!(signed_rep(5, p(11)), SignedInteger(5));
        assert_eq!(signed_rep(6, p(11)), SignedInteger(-5));
        assert_eq!(signed_rep(1, p(2)), SignedInteger(-1));
    }

    #[test]
    fn dilate_examples() {
        let a = ResidueSequence::from_elements(p(11), &[3, 6, 9]).unwrap();
        let expect = ResidueSequence::from_elements(p(11), &[1, 2, 3]).unwrap();
        assert_eq!(a.dilate(4).unwrap(), expect);
        assert_eq!(a.dilate(1).unwrap(), a);
        let b = ResidueSequence::from_elements(p(11), &[1, 1, 7]).unwrap();
        assert_eq!(
            b.dilate(2).unwrap(),
            ResidueSequence::from_elements(p(11), &[2, 2, 3]).unwrap()
        );
        assert_eq!(a.dilate(0), Err(Error::ZeroDilation));
        assert_eq!(a.dilate(11), Err(Error::ZeroDilation));
    }

    #[test]
    fn translate_examples() {
        let a = ResidueSequence::from_elements(p(11), &[1, 1, 7]).unwrap();
        assert_eq!(a.translate(0), a);
        assert_eq!(
            a.translate(4),
            ResidueSequence::from_elements(p(11), &[5, 5, 0]).unwrap()
        );
        let z = ResidueSequence::from_elements(p(11), &[0]).unwrap();
        assert_eq!(z.translate(10), ResidueSequence::from_elements(p(11), &[10]).unwrap());
    }

    #[test]
    fn f_control_examples() {
        assert_eq!(f_control(p(11), 1).unwrap(), 36);
        assert_eq!(f_control(p(2), 1).unwrap(), 1);
        assert!(f_control(p(11), 0).is_err());
        assert!(f_control(p(11), 12).is_err());
    }

    #[test]
    fn decompose_examples() {
        let q = p(11);
        let a = ResidueSequence::from_elements(q, &[1, 1, 7]).unwrap();
        let p17 = ResidueSequence::from_elements(q, &[1, 7]).unwrap();
        let p1 = ResidueSequence::from_elements(q, &[1]).unwrap();
        let p7 = ResidueSequence::from_elements(q, &[7]).unwrap();
        assert!(decompose_check(&a, &[p17.clone(), p1]).unwrap());
        assert!(!decompose_check(&a, &[p17, p7]).unwrap());
        assert!(decompose_check(&a, &[a.clone(), ResidueSequence::empty(q)]).unwrap());
        let other = ResidueSequence::from_elements(p(13), &[1]).unwrap();
        assert!(decompose_check(&a, &[other]).is_err());
    }

    #[test]
    fn multiplicity_cap_is_a_construction_error() {
        assert!(ResidueSequence::from_pairs(p(3), [(1, 3)]).is_ok());
        assert_eq!(
            ResidueSequence::from_pairs(p(3), [(1, 2), (1, 2)]),
            Err(Error::MultiplicityCap { element: 1, mult: 4, p: 3 })
        );
        assert!(ResidueSequence::from_pairs(p(3), [(3, 1)]).is_err());
        assert!(ResidueSequence::from_pairs(p(3), [(1, 0)]).is_err());
    }

    #[test]
    fn text_format() {
        let a: ResidueSequence = "p=11; A=1^2,7".parse().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.multiplicity(1), 2);
        assert_eq!(a.to_string(), "p=11; A=1^2,7");
        let neg: ResidueSequence = "p=11; A=-1,-2^3".parse().unwrap();
        assert_eq!(neg.to_string(), "p=11; A=9^3,10");
        let empty: ResidueSequence = "p=5; A=".parse().unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.to_string(), "p=5; A=");
        assert!("p=12; A=1".parse::<ResidueSequence>().is_err());
        assert!("p=11 A=1".parse::<ResidueSequence>().is_err());
        assert!("p=11; A=1^x".parse::<ResidueSequence>().is_err());
    }

    #[test]
    fn structured_format() {
        let a: ResidueSequence = "p=11; A=1^2,7".parse().unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"p":11,"elements":[[1,2],[7,1]]}"#);
        let back: ResidueSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<ResidueSequence>(r#"{"p":11,"elements":[[1,2],[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<ResidueSequence>(r#"{"p":11,"elements":[[11,1]]}"#).is_err());
        assert!(serde_json::from_str::<ResidueSequence>(r#"{"p":10,"elements":[]}"#).is_err());
    }
}
