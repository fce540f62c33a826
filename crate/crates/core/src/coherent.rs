//! Degree-truncated free coherent states.
//!
//! Every state here has the form `Σ_K λ^{|K|} c_K A†_K Ω` with `c` a cascade
//! function. States are parameterized by `t = λ²/p ∈ (0, 1)`; since `λ` is
//! irrational for most rational `t`, only the reduced coefficients `c_K` are
//! stored and every inner product weighs degree `d` by `λ^{2d} = (pt)^d`.
//!
//! Below its *resolution* depth a state carries explicit values; past it the
//! value of a word splits uniformly over its `p` children, which is how the
//! indicator states `X_I` behave past `|I|`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::lc_space::CascadeTree;
use crate::padic::{check_prime, same_prime, PAdicPoint, Word};
use crate::scalar::{norm_sq, pow_p, rational_pow, rational_to_f64, real, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Cascade,
    Indicator(Word),
    DeltaPath(PAdicPoint),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedState {
    p: u32,
    family: Family,
    t: Rational,
    trunc_degree: usize,
    resolution: usize,
    profile: BTreeMap<Word, Scalar>,
}

pub(crate) fn check_t(t: &Rational) -> Result<()> {
    if t > &Rational::zero() && t < &Rational::one() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(t.to_string()))
    }
}

impl TruncatedState {
    fn build(
        p: u32,
        family: Family,
        t: &Rational,
        trunc_degree: usize,
        resolution: usize,
        profile: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Self> {
        check_prime(p)?;
        check_t(t)?;
        debug_assert!(resolution <= trunc_degree);
        Ok(TruncatedState {
            p,
            family,
            t: t.clone(),
            trunc_degree,
            resolution,
            profile: profile.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// `λ² = p·t`.
    pub fn lambda_sq(&self) -> Rational {
        &self.t * Rational::from_integer(self.p.into())
    }

    pub fn trunc_degree(&self) -> usize {
        self.trunc_degree
    }

    /// Depth up to which coefficients are stored explicitly.
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Explicit nonzero reduced coefficients, all of length `≤ resolution`.
    pub fn profile(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.profile.iter()
    }

    /// `c_K`, the coefficient of `A†_K Ω` divided by `λ^{|K|}`.
    pub fn reduced_coefficient(&self, word: &Word) -> Scalar {
        if word.p() != self.p || word.len() > self.trunc_degree {
            return Scalar::zero();
        }
        if word.len() <= self.resolution {
            return self.profile.get(word).cloned().unwrap_or_else(Scalar::zero);
        }
        let anchor = word.prefix(self.resolution);
        match self.profile.get(&anchor) {
            Some(c) => c * real(pow_p(self.p, -((word.len() - self.resolution) as i64))),
            None => Scalar::zero(),
        }
    }

    /// The coefficient itself, `λ^{|K|} c_K`, in floating point.
    pub fn coefficient_f64(&self, word: &Word) -> Complex64 {
        let c = self.reduced_coefficient(word);
        let lambda = (rational_to_f64(&self.lambda_sq())).sqrt();
        Complex64::new(rational_to_f64(&c.re), rational_to_f64(&c.im)) * lambda.powi(word.len() as i32)
    }

    /// Materializes all reduced coefficients up to the truncation degree.
    ///
    /// The support grows like `p^{N − resolution}`; keep `N` small.
    pub fn reduced_vector(&self) -> FockVector {
        let mut terms: Vec<(Word, Scalar)> = Vec::new();
        for (w, c) in &self.profile {
            terms.push((w.clone(), c.clone()));
            if w.len() == self.resolution {
                let mut frontier = vec![w.clone()];
                for extra in 1..=(self.trunc_degree - self.resolution) {
                    frontier = frontier.iter().flat_map(|f| f.children()).collect();
                    let share = c * real(pow_p(self.p, -(extra as i64)));
                    terms.extend(frontier.iter().map(|f| (f.clone(), share.clone())));
                }
            }
        }
        FockVector::from_terms(self.p, terms).expect("words share p")
    }

    /// Per-degree sums `S_d = Σ_{|K| = d} c_K · conj(c'_K)` for `d ≤` both truncations.
    pub fn degree_pairings(&self, other: &TruncatedState) -> Result<Vec<Scalar>> {
        same_prime(self.p, other.p)?;
        let a = self.reduced_vector();
        let b = other.reduced_vector();
        let top = self.trunc_degree.min(other.trunc_degree);
        (0..=top)
            .map(|d| a.degree_part(d).inner(&b.degree_part(d)))
            .collect()
    }

    /// Exact Fock inner product of the two truncated vectors, `Σ_d (pt)^d S_d`.
    pub fn fock_inner(&self, other: &TruncatedState) -> Result<Scalar> {
        if self.t != other.t {
            return Err(Error::Invalid(format!(
                "states use different t: {} vs {}",
                self.t, other.t
            )));
        }
        let lambda_sq = self.lambda_sq();
        let mut acc = Scalar::zero();
        for (d, s) in self.degree_pairings(other)?.into_iter().enumerate() {
            acc += s * real(rational_pow(&lambda_sq, d));
        }
        Ok(acc)
    }
}

/// `Ψ = Σ_{|K| ≤ N} λ^{|K|} Ψ_K A†_K Ω`.
///
/// The tree is used as given, so an inconsistent tree yields a state with a
/// nonzero [`eigen_residual`].
pub fn coherent_from_cascade(tree: &CascadeTree, t: &Rational, n: usize) -> Result<TruncatedState> {
    if n > tree.depth() {
        return Err(Error::Resolution {
            requested: n,
            depth: tree.depth(),
        });
    }
    let profile = tree
        .values()
        .filter(|(w, _)| w.len() <= n)
        .map(|(w, v)| (w.clone(), v.clone()));
    TruncatedState::build(tree.p(), Family::Cascade, t, n, n, profile)
}

/// Like [`coherent_from_cascade`], but allows `N` past the tree depth by
/// continuing each leaf value with uniform splitting.
pub fn coherent_with_uniform_extension(
    tree: &CascadeTree,
    t: &Rational,
    n: usize,
) -> Result<TruncatedState> {
    let resolution = n.min(tree.depth());
    let profile = tree
        .values()
        .filter(|(w, _)| w.len() <= resolution)
        .map(|(w, v)| (w.clone(), v.clone()));
    TruncatedState::build(tree.p(), Family::Cascade, t, n, resolution, profile)
}

/// `X_I` truncated at degree `N`: `c_K = 1` on prefixes of `I`,
/// `p^{−(|K|−|I|)}` on descendants of `I`, `0` elsewhere.
pub fn indicator_state(word: &Word, t: &Rational, n: usize) -> Result<TruncatedState> {
    if n < word.len() {
        return Err(Error::Truncation {
            degree: n,
            required: word.len(),
        });
    }
    let profile = (0..=word.len()).map(|k| (word.prefix(k), Scalar::one()));
    TruncatedState::build(
        word.p(),
        Family::Indicator(word.clone()),
        t,
        n,
        word.len(),
        profile,
    )
}

/// `X_I` built by literally applying the operator products
/// `(p^{-1} Σ A†_i)^k` and `(Σ A_i)^l` to `A†_I Ω`, as reduced coefficients.
pub fn indicator_state_by_operators(word: &Word, n: usize) -> Result<FockVector> {
    if n < word.len() {
        return Err(Error::Truncation {
            degree: n,
            required: word.len(),
        });
    }
    let p = word.p();
    let base = FockVector::basis(word.clone());
    let inv_p = real(pow_p(p, -1));
    let mut total = FockVector::zero(p);

    // λ^k · λ^{|I|} (p^{-1} Σ A†)^k A†_I Ω lives in degree |I| + k.
    let mut up = base.clone();
    for k in 0..=(n - word.len()) {
        if k > 0 {
            up = up.creation_sum().scale(&inv_p);
        }
        debug_assert!(up.terms().all(|(w, _)| w.len() == word.len() + k));
        total = total.add(&up)?;
    }
    // λ^{-l} · λ^{|I|} (Σ A)^l A†_I Ω lives in degree |I| − l.
    let mut down = base;
    for _ in 1..=word.len() {
        down = down.annihilation_sum();
        total = total.add(&down)?;
    }
    Ok(total)
}

/// `X_x = Σ_{k ≤ N} λ^k A†_{x_k} Ω` along the digit stream of `x`.
pub fn delta_path_state(x: &PAdicPoint, t: &Rational, n: usize) -> Result<TruncatedState> {
    let profile = (0..=n).map(|k| (x.prefix(k), Scalar::one()));
    TruncatedState::build(x.p(), Family::DeltaPath(x.clone()), t, n, n, profile)
}

/// Reduced residual `(A c)_K − c_K` on degrees `< N`; degree `N` is where
/// truncation cuts the children off, so it is excluded.
fn reduced_residual(s: &TruncatedState) -> FockVector {
    let c = s.reduced_vector();
    let top = s.trunc_degree.saturating_sub(1);
    if s.trunc_degree == 0 {
        return FockVector::zero(s.p);
    }
    c.annihilation_sum()
        .sub(&c)
        .expect("same p")
        .project_degrees(top)
}

/// `‖P_{<N} (A − λ) s‖²`, exact.
///
/// At word `K` the residual is `λ^{|K|+1} (Σ_j c_{Kj} − c_K)`, so the result
/// is `Σ_K (pt)^{|K|+1} |Σ_j c_{Kj} − c_K|²`.
pub fn eigen_residual(s: &TruncatedState) -> Rational {
    let lambda_sq = s.lambda_sq();
    reduced_residual(s)
        .terms()
        .map(|(w, r)| norm_sq(r) * rational_pow(&lambda_sq, w.len() + 1))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Degree-`d` part of [`eigen_residual`] divided by `λ^{2d}`:
/// `pt · Σ_{|K| = d} |Σ_j c_{Kj} − c_K|²`, for `d < N`.
pub fn residual_by_degree(s: &TruncatedState) -> Vec<Rational> {
    let lambda_sq = s.lambda_sq();
    let mut out = vec![Rational::zero(); s.trunc_degree];
    for (w, r) in reduced_residual(s).terms() {
        out[w.len()] += norm_sq(r) * &lambda_sq;
    }
    out
}
