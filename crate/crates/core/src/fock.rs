//! Free (Boltzmannian) Fock space over a `p`-dimensional one-particle space.
//!
//! Basis vectors `A†_I Ω` are labelled directly by words, with
//! `A†_I = A†_{i_{k−1}} ⋯ A†_{i_0}`. Applying `A†_i` therefore appends `i`
//! to the label, and `A_i` strips a trailing `i` (and kills anything else).
//! The basis is orthonormal, so vectors are sparse maps `Word → Scalar`.

use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::{same_prime, Word};
use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    p: u32,
    coeffs: BTreeMap<Word, Scalar>,
}

impl FockVector {
    pub fn zero(p: u32) -> Self {
        FockVector {
            p,
            coeffs: BTreeMap::new(),
        }
    }

    /// The vacuum `Ω`.
    pub fn vacuum(p: u32) -> Self {
        FockVector::basis(Word::empty(p))
    }

    /// The basis vector `A†_I Ω`.
    pub fn basis(word: Word) -> Self {
        let p = word.p();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(word, crate::scalar::one());
        FockVector { p, coeffs }
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Result<Self> {
        let mut v = FockVector::zero(p);
        for (word, c) in terms {
            same_prime(p, word.p())?;
            v.add_term(word, c);
        }
        Ok(v)
    }

    pub(crate) fn add_term(&mut self, word: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(word) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.coeffs.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero terms in (degree, lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest word length present; `None` for the zero vector.
    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Word::len).max()
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector> {
        same_prime(self.p, other.p)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<FockVector> {
        self.add(&other.scale(&crate::scalar::scalar(-1, 1)))
    }

    pub fn scale(&self, c: &Scalar) -> FockVector {
        if c.is_zero() {
            return FockVector::zero(self.p);
        }
        FockVector {
            p: self.p,
            coeffs: self.coeffs.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// `A†_i v`.
    pub fn create(&self, i: u32) -> Result<FockVector> {
        if i >= self.p {
            return Err(Error::DigitOutOfRange { digit: i, p: self.p });
        }
        let mut coeffs = BTreeMap::new();
        for (w, c) in &self.coeffs {
            coeffs.insert(w.child(i)?, c.clone());
        }
        Ok(FockVector { p: self.p, coeffs })
    }

    /// `A_i v`: `A†_{Ij} Ω ↦ δ_ij A†_I Ω`, `Ω ↦ 0`.
    pub fn annihilate(&self, i: u32) -> Result<FockVector> {
        if i >= self.p {
            return Err(Error::DigitOutOfRange { digit: i, p: self.p });
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(w, _)| w.last() == Some(i))
            .map(|(w, c)| (w.prefix(w.len() - 1), c.clone()))
            .collect();
        Ok(FockVector { p: self.p, coeffs })
    }

    /// `A = Σ_i A_i`: strips the last digit of every word, summing collisions.
    pub fn annihilation_sum(&self) -> FockVector {
        let mut out = FockVector::zero(self.p);
        for (w, c) in &self.coeffs {
            if let Some(parent) = w.parent() {
                out.add_term(parent, c.clone());
            }
        }
        out
    }

    /// `Σ_i A†_i`.
    pub fn creation_sum(&self) -> FockVector {
        let mut out = FockVector::zero(self.p);
        for (w, c) in &self.coeffs {
            for child in w.children() {
                out.add_term(child, c.clone());
            }
        }
        out
    }

    /// `⟨v, w⟩ = Σ_I v_I · conj(w_I)`.
    pub fn inner(&self, other: &FockVector) -> Result<Scalar> {
        same_prime(self.p, other.p)?;
        let (small, large, swap) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = Scalar::zero();
        for (w, a) in &small.coeffs {
            if let Some(b) = large.coeffs.get(w) {
                acc += if swap { b * a.conj() } else { a * b.conj() };
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> Scalar {
        self.coeffs
            .values()
            .map(|c| c * c.conj())
            .fold(Scalar::zero(), |acc, x| acc + x)
    }

    /// Keeps only the words of length `≤ max_degree`.
    pub fn project_degrees(&self, max_degree: usize) -> FockVector {
        FockVector {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() <= max_degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Words of exactly one degree.
    pub fn degree_part(&self, degree: usize) -> FockVector {
        FockVector {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// One `word → re/im` line per nonzero term, sorted by degree then word.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (w, c) in &self.coeffs {
            let _ = writeln!(out, "({w}) → re {} im {}", c.re, c.im);
        }
        out
    }
}

impl std::fmt::Display for FockVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})·[{}]", format_scalar(c), w)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{one, scalar};

    fn w(p: u32, d: &[u32]) -> Word {
        Word::new(p, d.to_vec()).unwrap()
    }

    #[test]
    fn create_examples() {
        let omega = FockVector::vacuum(2);
        assert_eq!(omega.create(1).unwrap(), FockVector::basis(w(2, &[1])));
        // A†_0 A†_1 Ω = A†_{(1,0)} Ω
        let v = FockVector::basis(w(2, &[1])).create(0).unwrap();
        assert_eq!(v, FockVector::basis(w(2, &[1, 0])));
        assert_eq!(omega.create(2), Err(Error::DigitOutOfRange { digit: 2, p: 2 }));
    }

    #[test]
    fn annihilate_examples() {
        let v = FockVector::basis(w(2, &[0, 1]));
        assert!(v.annihilate(0).unwrap().is_zero());
        assert_eq!(v.annihilate(1).unwrap(), FockVector::basis(w(2, &[0])));
        assert!(FockVector::vacuum(3).annihilate(2).unwrap().is_zero());
        assert!(v.annihilate(5).is_err());
    }

    #[test]
    fn inner_examples() {
        let a = FockVector::basis(w(2, &[0, 1]));
        let b = FockVector::basis(w(2, &[1, 0]));
        assert_eq!(a.inner(&a).unwrap(), one());
        assert!(a.inner(&b).unwrap().is_zero());
        assert!(a.inner(&FockVector::vacuum(3)).is_err());
    }

    #[test]
    fn annihilation_sum_examples() {
        assert_eq!(
            FockVector::basis(w(2, &[0, 1])).annihilation_sum(),
            FockVector::basis(w(2, &[0]))
        );
        let v = FockVector::basis(w(2, &[0])).add(&FockVector::basis(w(2, &[1]))).unwrap();
        assert_eq!(v.annihilation_sum(), FockVector::vacuum(2).scale(&scalar(2, 1)));
        assert!(FockVector::vacuum(2).annihilation_sum().is_zero());
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = FockVector::basis(w(3, &[2]));
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.sub(&a).unwrap().support_len(), 0);
    }

    #[test]
    fn dump_is_sorted_by_degree() {
        let v = FockVector::from_terms(
            2,
            [
                (w(2, &[1, 0]), scalar(1, 2)),
                (w(2, &[]), scalar(3, 1)),
                (w(2, &[1]), scalar(-1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(v.dump(), "() → re 3 im 0\n(1) → re -1 im 0\n(1,0) → re 1/2 im 0\n");
        assert_eq!(v.max_degree(), Some(2));
    }
}
