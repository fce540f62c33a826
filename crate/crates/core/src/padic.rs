//! Words over `{0, …, p−1}`, disks in `Z_p`, eventually periodic points and
//! the p-adic norm on the rationals.
//!
//! A word `i_0 i_1 … i_{k−1}` is read little-endian: `i_0` is the units
//! digit of the p-adic integer `Σ i_j p^j`. Appending a digit on the right
//! selects a child disk, so "`a` is a prefix of `b`" is the same statement as
//! "the disk of `a` contains the disk of `b`".

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{pow_p, Rational};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<u32> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

pub(crate) fn same_prime(left: u32, right: u32) -> Result<u32> {
    if left == right {
        Ok(left)
    } else {
        Err(Error::PrimeMismatch { left, right })
    }
}

/// A finite digit string; both a Fock basis label and the center of a disk.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    p: u32,
    digits: Vec<u32>,
}

impl Word {
    pub fn new(p: u32, digits: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if let Some(&digit) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::DigitOutOfRange { digit, p });
        }
        Ok(Word { p, digits })
    }

    pub fn empty(p: u32) -> Self {
        Word { p, digits: Vec::new() }
    }

    /// Parses the little-endian comma form, e.g. `"0,1,1"`; `""` is the empty word.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        check_prime(p)?;
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty(p));
        }
        let digits = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse("word", format!("\"{s}\" has a non-digit entry \"{part}\"")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(p, digits)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn last(&self) -> Option<u32> {
        self.digits.last().copied()
    }

    pub fn child(&self, digit: u32) -> Result<Word> {
        if digit >= self.p {
            return Err(Error::DigitOutOfRange { digit, p: self.p });
        }
        let mut digits = Vec::with_capacity(self.digits.len() + 1);
        digits.extend_from_slice(&self.digits);
        digits.push(digit);
        Ok(Word { p: self.p, digits })
    }

    pub fn children(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.p).map(move |i| {
            let mut digits = self.digits.clone();
            digits.push(i);
            Word { p: self.p, digits }
        })
    }

    pub fn parent(&self) -> Option<Word> {
        if self.digits.is_empty() {
            None
        } else {
            Some(self.prefix(self.digits.len() - 1))
        }
    }

    /// The first `n` digits (the whole word when `n ≥ len`).
    pub fn prefix(&self, n: usize) -> Word {
        let n = n.min(self.digits.len());
        Word {
            p: self.p,
            digits: self.digits[..n].to_vec(),
        }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.p == other.p && other.digits.starts_with(&self.digits)
    }

    pub fn concat(&self, tail: &Word) -> Result<Word> {
        same_prime(self.p, tail.p)?;
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&tail.digits);
        Ok(Word { p: self.p, digits })
    }

    /// The integer `Σ i_j p^j`.
    pub fn to_integer(&self) -> BigUint {
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * self.p + d)
    }

    /// Residue of the word's integer modulo `p^len`, as a machine integer.
    pub fn residue(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }
}

/// Shortlex order: shorter words first, then lexicographic on digits.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.digits.len().cmp(&other.digits.len()))
            .then_with(|| self.digits.cmp(&other.digits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.digits.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(p={}, \"{}\")", self.p, self)
    }
}

pub fn longest_common_prefix(a: &Word, b: &Word) -> Result<Word> {
    same_prime(a.p, b.p)?;
    let n = a
        .digits
        .iter()
        .zip(&b.digits)
        .take_while(|(x, y)| x == y)
        .count();
    Ok(a.prefix(n))
}

/// All words of length `≤ max_len` in shortlex order.
pub fn words_up_to(p: u32, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(p)];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for k in start..end {
            let children: Vec<Word> = out[k].children().collect();
            out.extend(children);
        }
        start = end;
    }
    out
}

/// All words of length exactly `len` in lexicographic order.
pub fn words_of_len(p: u32, len: usize) -> Vec<Word> {
    let mut level = vec![Word::empty(p)];
    for _ in 0..len {
        level = level.iter().flat_map(|w| w.children()).collect();
    }
    level
}

/// The ball `D(I, p^{−|I|})`; the empty word is all of `Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Disk {
    center: Word,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskRelation {
    Equal,
    AContainsB,
    BContainsA,
    Disjoint,
}

impl Disk {
    pub fn new(center: Word) -> Self {
        Disk { center }
    }

    pub fn whole(p: u32) -> Self {
        Disk::new(Word::empty(p))
    }

    pub fn center(&self) -> &Word {
        &self.center
    }

    pub fn p(&self) -> u32 {
        self.center.p
    }

    pub fn depth(&self) -> usize {
        self.center.len()
    }

    /// Haar measure `p^{−depth}`, normalized so that `μ(Z_p) = 1`.
    pub fn measure(&self) -> Rational {
        haar_measure(self)
    }

    pub fn children(&self) -> impl Iterator<Item = Disk> + '_ {
        self.center.children().map(Disk::new)
    }

    pub fn relation(&self, other: &Disk) -> Result<DiskRelation> {
        disk_relation(self, other)
    }

    pub fn contains_point(&self, x: &PAdicPoint) -> bool {
        self.p() == x.p() && x.prefix(self.depth()) == self.center
    }

    /// Intersection of two disks, which is one of them or empty.
    pub fn intersection(&self, other: &Disk) -> Result<Option<Disk>> {
        Ok(match disk_relation(self, other)? {
            DiskRelation::Equal | DiskRelation::BContainsA => Some(self.clone()),
            DiskRelation::AContainsB => Some(other.clone()),
            DiskRelation::Disjoint => None,
        })
    }
}

impl From<Word> for Disk {
    fn from(center: Word) -> Self {
        Disk::new(center)
    }
}

pub fn disk_relation(a: &Disk, b: &Disk) -> Result<DiskRelation> {
    same_prime(a.p(), b.p())?;
    let (x, y) = (&a.center, &b.center);
    Ok(if x == y {
        DiskRelation::Equal
    } else if x.is_prefix_of(y) {
        DiskRelation::AContainsB
    } else if y.is_prefix_of(x) {
        DiskRelation::BContainsA
    } else {
        DiskRelation::Disjoint
    })
}

pub fn haar_measure(d: &Disk) -> Rational {
    pow_p(d.p(), -(d.depth() as i64))
}

/// An eventually periodic point of `Z_p`: `preperiod` followed by `period`
/// repeated forever (zeros forever when `period` is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdicPoint {
    preperiod: Word,
    period: Word,
}

impl PAdicPoint {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        same_prime(preperiod.p, period.p)?;
        Ok(PAdicPoint { preperiod, period })
    }

    pub fn zero(p: u32) -> Self {
        PAdicPoint {
            preperiod: Word::empty(p),
            period: Word::empty(p),
        }
    }

    /// Parses `"pre|period"`; a bare `"pre"` pads with zeros.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let (pre, period) = s.split_once('|').unwrap_or((s, ""));
        PAdicPoint::new(Word::parse(p, pre)?, Word::parse(p, period)?)
    }

    pub fn p(&self) -> u32 {
        self.preperiod.p
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn digit_at(&self, n: usize) -> u32 {
        let pre = self.preperiod.digits();
        if n < pre.len() {
            return pre[n];
        }
        let per = self.period.digits();
        if per.is_empty() {
            0
        } else {
            per[(n - pre.len()) % per.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word {
            p: self.p(),
            digits: (0..n).map(|k| self.digit_at(k)).collect(),
        }
    }

    /// The rational number this digit stream converges to in `Z_p`.
    pub fn to_rational(&self) -> Rational {
        let p = BigInt::from(self.p());
        let pre = Rational::from_integer(BigInt::from(self.preperiod.to_integer()));
        if self.period.is_empty() {
            return pre;
        }
        // x = pre + p^a · per / (1 − p^b)
        let per = Rational::from_integer(BigInt::from(self.period.to_integer()));
        let pa = Rational::from_integer(num_traits::pow(p.clone(), self.preperiod.len()));
        let pb = Rational::from_integer(num_traits::pow(p, self.period.len()));
        pre + pa * per / (Rational::one() - pb)
    }
}

impl fmt::Display for PAdicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.preperiod, self.period)
    }
}

/// Every point with `|preperiod| + |period| ≤ max_total`.
pub fn eventually_periodic_points(p: u32, max_total: usize) -> Vec<PAdicPoint> {
    let mut out = Vec::new();
    for pre_len in 0..=max_total {
        for per_len in 0..=(max_total - pre_len) {
            for pre in words_of_len(p, pre_len) {
                for per in words_of_len(p, per_len) {
                    out.push(PAdicPoint {
                        preperiod: pre.clone(),
                        period: per,
                    });
                }
            }
        }
    }
    out
}

/// Exact exponent `γ` of `p` in a nonzero rational `x = p^γ m/n`.
pub fn padic_valuation(x: &Rational, p: u32) -> Result<i64> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut k = 0i64;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    };
    Ok(count(x.numer()) - count(x.denom()))
}

/// `‖x‖_p = p^{−γ}` for nonzero `x`.
pub fn padic_norm(x: &Rational, p: u32) -> Result<Rational> {
    let gamma = padic_valuation(x, p)?;
    Ok(pow_p(p, -gamma))
}

/// Total variant with `‖0‖_p = 0`.
pub fn padic_norm_total(x: &Rational, p: u32) -> Result<Rational> {
    check_prime(p)?;
    if x.is_zero() {
        Ok(Rational::zero())
    } else {
        padic_norm(x, p)
    }
}
