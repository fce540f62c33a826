//! Exact pairings as rational functions of `t = λ²/p`, their regularized
//! limit at `t → 1⁻`, and the map `φ` to locally constant functions and
//! distributions.
//!
//! Every pairing of a coherent state with an indicator state is a polynomial
//! in `t` followed by a geometric tail:
//!
//! ```text
//! value(t) = Σ_{i<m} a_i t^i + c · t^m / (1 − t)
//! ```
//!
//! so `(1 − t)·value(t) → c`, read off without any numeric extrapolation.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coherent::{check_t, TruncatedState};
use crate::error::{Error, Result};
use crate::lc_space::{normalized_indicator, CascadeTree, Distribution, LCFunction};
use crate::padic::{haar_measure, longest_common_prefix, same_prime, Disk, PAdicPoint, Word};
use crate::scalar::{format_scalar, l1_abs, pow_p, rational_pow, rational_to_f64, real, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingCase {
    Nested,
    Disjoint,
    Delta,
    Cascade,
}

impl fmt::Display for PairingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairingCase::Nested => "nested",
            PairingCase::Disjoint => "disjoint",
            PairingCase::Delta => "delta",
            PairingCase::Cascade => "cascade",
        })
    }
}

/// `Σ_{i<m} a_i t^i + c · t^m/(1 − t)` in canonical form (`poly.len() == m`).
#[derive(Clone, Debug, PartialEq)]
pub struct PairingValue {
    p: u32,
    case: PairingCase,
    poly: Vec<Scalar>,
    tail_coeff: Scalar,
    tail_start: usize,
}

impl PairingValue {
    /// Canonicalizes: pads `poly` to `tail_start`, or moves the tail start up
    /// to `poly.len()` by unrolling the first tail terms into the polynomial.
    pub fn new(
        p: u32,
        case: PairingCase,
        mut poly: Vec<Scalar>,
        tail_coeff: Scalar,
        tail_start: usize,
    ) -> Self {
        for a in poly.iter_mut().skip(tail_start) {
            *a += &tail_coeff;
        }
        let start = poly.len().max(tail_start);
        poly.resize(start, Scalar::zero());
        PairingValue {
            p,
            case,
            poly,
            tail_coeff,
            tail_start: start,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn case(&self) -> PairingCase {
        self.case
    }

    pub fn poly(&self) -> &[Scalar] {
        &self.poly
    }

    pub fn tail_coeff(&self) -> &Scalar {
        &self.tail_coeff
    }

    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    /// Coefficient of `t^i` in the series expansion.
    pub fn series_coefficient(&self, i: usize) -> Scalar {
        if i < self.tail_start {
            self.poly[i].clone()
        } else {
            self.tail_coeff.clone()
        }
    }

    /// Exact `value(t)` for `t ∈ (0, 1)`.
    pub fn evaluate(&self, t: &Rational) -> Result<Scalar> {
        check_t(t)?;
        let mut acc = Scalar::zero();
        let mut power = Rational::one();
        for a in &self.poly {
            acc += a * real(power.clone());
            power *= t;
        }
        acc += &self.tail_coeff * real(power / (Rational::one() - t));
        Ok(acc)
    }

    /// Partial sum of the series through degree `n`.
    pub fn truncated(&self, t: &Rational, n: usize) -> Scalar {
        let mut acc = Scalar::zero();
        let mut power = Rational::one();
        for i in 0..=n {
            acc += self.series_coefficient(i) * real(power.clone());
            power *= t;
        }
        acc
    }

    /// `(1 − t) · value(t)`.
    pub fn scaled(&self, t: &Rational) -> Result<Scalar> {
        Ok(self.evaluate(t)? * real(Rational::one() - t))
    }

    /// `C` with `|(1 − t)·value(t) − c| ≤ C·(1 − t)` on `(0, 1)`.
    ///
    /// `(1 − t)·value(t) − c = (1 − t) Σ_{i<m} (a_i − c) t^i`, so the `ℓ¹`
    /// mass of `a_i − c` (real and imaginary parts separately) bounds it.
    pub fn error_constant(&self) -> Rational {
        self.poly
            .iter()
            .map(|a| l1_abs(&(a - &self.tail_coeff)))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report()).expect("pairing serializes")
    }

    pub fn report(&self) -> PairingReport {
        PairingReport {
            p: self.p,
            case: self.case,
            poly: self.poly.iter().map(format_scalar).collect(),
            tail_coeff: format_scalar(&self.tail_coeff),
            tail_start: self.tail_start,
            limit: format_scalar(&regularized_limit(self)),
        }
    }
}

/// JSON form of a pairing; every rational is a `"num/den"` string.
#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub p: u32,
    pub case: PairingCase,
    pub poly: Vec<String>,
    pub tail_coeff: String,
    pub tail_start: usize,
    pub limit: String,
}

/// `lim_{t→1⁻} (1 − t)·value(t)`: the polynomial part is killed, the tail survives.
pub fn regularized_limit(v: &PairingValue) -> Scalar {
    v.tail_coeff.clone()
}

fn powers_of_p(p: u32, n: usize) -> Vec<Scalar> {
    (0..n).map(|i| real(pow_p(p, i as i64))).collect()
}

/// `(X_I, X_J)` as a function of `t`.
pub fn pairing_indicators(a: &Word, b: &Word) -> Result<PairingValue> {
    let p = same_prime(a.p(), b.p())?;
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.is_prefix_of(long) {
        // a_i = p^i below |I|, p^{|I|} between |I| and |J|; tail p^{|I|} from |J| on.
        let top = real(pow_p(p, short.len() as i64));
        let mut poly = powers_of_p(p, short.len());
        poly.resize(long.len(), top.clone());
        Ok(PairingValue::new(p, PairingCase::Nested, poly, top, long.len()))
    } else {
        // Supports only meet on the common-prefix chain.
        let common = longest_common_prefix(a, b)?;
        let poly = powers_of_p(p, common.len() + 1);
        let m = poly.len();
        Ok(PairingValue::new(p, PairingCase::Disjoint, poly, Scalar::zero(), m))
    }
}

/// `(X_x, X_J)` for the path state of a point `x`.
pub fn pairing_delta(x: &PAdicPoint, j: &Word) -> Result<PairingValue> {
    let p = same_prime(x.p(), j.p())?;
    let along = x.prefix(j.len());
    if &along == j {
        let poly = powers_of_p(p, j.len());
        let tail = real(pow_p(p, j.len() as i64));
        Ok(PairingValue::new(p, PairingCase::Delta, poly, tail, j.len()))
    } else {
        let common = longest_common_prefix(&along, j)?;
        let poly = powers_of_p(p, common.len() + 1);
        let m = poly.len();
        Ok(PairingValue::new(p, PairingCase::Delta, poly, Scalar::zero(), m))
    }
}

/// `(Ψ, X_I)` as a bilinear pairing: ancestors contribute `p^d Ψ_{I_d}`,
/// and every level from `|I|` on contributes `p^{|I|} Ψ_I`.
pub fn pairing_coherent(tree: &CascadeTree, word: &Word) -> Result<PairingValue> {
    let p = same_prime(tree.p(), word.p())?;
    let psi = tree.value(word)?;
    let poly = (0..word.len())
        .map(|d| Ok(real(pow_p(p, d as i64)) * tree.value(&word.prefix(d))?))
        .collect::<Result<Vec<_>>>()?;
    let tail = real(pow_p(p, word.len() as i64)) * psi;
    Ok(PairingValue::new(p, PairingCase::Cascade, poly, tail, word.len()))
}

/// `μ(D_I) · lim (1 − t)(Ψ, X_I)`: the distribution's value on the disk of `I`.
pub fn theorem_witness(tree: &CascadeTree, word: &Word) -> Result<Scalar> {
    let limit = regularized_limit(&pairing_coherent(tree, word)?);
    Ok(real(haar_measure(&Disk::new(word.clone()))) * limit)
}

/// `X_I ↦ θ_{|I|}(x − I) / μ(D_I)`.
pub fn phi_indicator(word: &Word) -> LCFunction {
    normalized_indicator(&Disk::new(word.clone()))
}

pub fn phi_coherent(tree: &CascadeTree) -> Distribution {
    Distribution::Cascade(tree.clone())
}

/// `φ` of the path state of `x`: the point mass at `x`.
pub fn phi_delta(x: &PAdicPoint) -> Distribution {
    Distribution::Delta(x.clone())
}

/// One row of a `t → 1⁻` convergence sweep at `t = 1 − 2^{−k}`.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub k: u32,
    pub t: Rational,
    pub value: Scalar,
    pub truncated_value: Scalar,
    pub scaled_value: Scalar,
    pub limit: Scalar,
    pub abs_error: Rational,
}

pub const SWEEP_HEADER: &str =
    "k,t,value,truncated_value,scaled_value,limit,abs_error,t_f64,value_f64,scaled_value_f64,abs_error_f64";

impl SweepRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.17e},{:.17e},{:.17e},{:.17e}",
            self.k,
            self.t,
            format_scalar(&self.value),
            format_scalar(&self.truncated_value),
            format_scalar(&self.scaled_value),
            format_scalar(&self.limit),
            self.abs_error,
            rational_to_f64(&self.t),
            rational_to_f64(&self.value.re),
            rational_to_f64(&self.scaled_value.re),
            rational_to_f64(&self.abs_error),
        )
    }
}

/// Rows for `k = k_min..=k_max`; `truncated_value` sums the series through
/// degree `trunc_degree`. `abs_error` is the `ℓ¹` distance of the scaled value to the limit.
pub fn sweep(v: &PairingValue, k_min: u32, k_max: u32, trunc_degree: usize) -> Vec<SweepRow> {
    let limit = regularized_limit(v);
    (k_min..=k_max)
        .map(|k| {
            let t = Rational::one() - pow_p(2, -(k as i64));
            let value = v.evaluate(&t).expect("t in (0,1)");
            let scaled = &value * real(Rational::one() - &t);
            let abs_error = l1_abs(&(&scaled - &limit));
            SweepRow {
                k,
                truncated_value: v.truncated(&t, trunc_degree),
                t,
                value,
                scaled_value: scaled,
                limit: limit.clone(),
                abs_error,
            }
        })
        .collect()
}

/// Floating-point Fock inner product `⟨a, b⟩` of two truncated states,
/// summed degree by degree through `min(N_a, N_b)`.
///
/// Beyond a state's resolution its coefficients are constant across the
/// descendants of each resolved word, so a degree-`d` sum over `p^d` words
/// collapses to a sum over the explicit words of the finer state.
pub fn numeric_oracle(a: &TruncatedState, b: &TruncatedState) -> Result<Complex64> {
    let p = same_prime(a.p(), b.p())?;
    if a.t() != b.t() {
        return Err(Error::Invalid(format!(
            "states use different t: {} vs {}",
            a.t(),
            b.t()
        )));
    }
    let lambda_sq = rational_to_f64(&a.lambda_sq());
    let top = a.trunc_degree().min(b.trunc_degree());
    let fine = a.resolution().max(b.resolution());

    let explicit = |s: &TruncatedState, d: usize| -> Vec<(Word, Complex64)> {
        s.profile()
            .filter(|(w, _)| w.len() == d)
            .map(|(w, c)| (w.clone(), to_c64(c)))
            .collect()
    };
    let value = |s: &TruncatedState, w: &Word| to_c64(&s.reduced_coefficient(w));
    // Σ_{|K| = d} a_K conj(b_K) for d ≤ fine, walking whichever state is explicit there.
    let level_sum = |d: usize| -> Complex64 {
        if d <= a.resolution() {
            explicit(a, d)
                .into_iter()
                .map(|(w, x)| x * value(b, &w).conj())
                .sum()
        } else {
            explicit(b, d)
                .into_iter()
                .map(|(w, y)| value(a, &w) * y.conj())
                .sum()
        }
    };

    let mut total = Complex64::new(0.0, 0.0);
    let mut weight = 1.0f64;
    let mut at_fine = Complex64::new(0.0, 0.0);
    for d in 0..=top {
        let s = if d <= fine {
            let s = level_sum(d);
            if d == fine {
                at_fine = s;
            }
            s
        } else {
            // p^{d−fine} words per resolved word, each weighted p^{−2(d−fine)}.
            at_fine * (p as f64).powi(-((d - fine) as i32))
        };
        total += s * weight;
        weight *= lambda_sq;
    }
    Ok(total)
}

fn to_c64(z: &Scalar) -> Complex64 {
    Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// Upper bound on what a degree-`N` truncation leaves out:
/// `Σ_{N<i<m} |a_i| t^i + |c| t^{max(N+1, m)} / (1 − t)`, with `ℓ¹` moduli.
pub fn tail_bound(v: &PairingValue, t: &Rational, n: usize) -> Rational {
    let mut bound = Rational::zero();
    for i in (n + 1)..v.tail_start() {
        bound += l1_abs(&v.poly()[i]) * rational_pow(t, i);
    }
    let start = (n + 1).max(v.tail_start());
    bound + l1_abs(v.tail_coeff()) * rational_pow(t, start) / (Rational::one() - t)
}
