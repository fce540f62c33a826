//! Verification suites: each one enumerates or samples a grid of inputs,
//! checks an exact identity on every point, and stops at the first
//! counterexample.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coherent::{
    coherent_from_cascade, coherent_with_uniform_extension, eigen_residual, indicator_state,
};
use crate::error::Result;
use crate::fock::FockVector;
use crate::lc_space::{act, indicator, l2_inner, random_cascade, CascadeTree};
use crate::limit::{
    numeric_oracle, pairing_coherent, pairing_delta, pairing_indicators, phi_coherent, phi_delta,
    phi_indicator, regularized_limit, tail_bound, theorem_witness,
};
use crate::padic::{
    disk_relation, eventually_periodic_points, padic_norm_total, words_of_len, words_up_to, Disk,
    DiskRelation, Word,
};
use crate::scalar::{format_scalar, pow_p, rat, rational_to_f64, real, Rational, Scalar};

/// Upper bound on the number of `(I, J)` pairs the `lemma1` suite checks per prime.
pub const LEMMA1_PAIR_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub unit: &'static str,
    pub checked: usize,
    pub passed: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn new(name: &'static str, unit: &'static str) -> Self {
        SuiteReport {
            name,
            unit,
            checked: 0,
            passed: 0,
            failure: None,
        }
    }

    pub fn ok(&self) -> bool {
        self.failure.is_none() && self.passed == self.checked
    }

    /// Records one check; keeps only the first counterexample.
    fn record(&mut self, passed: bool, describe: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if passed {
            self.passed += 1;
        } else if self.failure.is_none() {
            self.failure = Some(describe());
        }
        passed
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: {}/{} {} OK", self.name, self.passed, self.checked, self.unit),
            Some(why) => write!(
                f,
                "{}: FAILED {}/{} {}; first counterexample: {}",
                self.name, self.passed, self.checked, self.unit, why
            ),
        }
    }
}

fn is_nested(a: &Word, b: &Word) -> bool {
    a.is_prefix_of(b) || b.is_prefix_of(a)
}

/// Pairs of words up to `max_len`: all of them when at most `cap`, otherwise
/// half the budget on evenly strided nested pairs and half on evenly strided
/// pairs from the full lexicographic list.
pub fn lemma1_pairs(p: u32, max_len: usize, cap: usize) -> Vec<(Word, Word)> {
    let words = words_up_to(p, max_len);
    let n = words.len();
    let total = n * n;
    if total <= cap {
        return words
            .iter()
            .flat_map(|a| words.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
    }
    // Nested pairs come from the prefix chains, both orders, without a quadratic scan.
    let index: std::collections::HashMap<&Word, usize> =
        words.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut nested: Vec<(usize, usize)> = Vec::new();
    for (j, word) in words.iter().enumerate() {
        for len in 0..=word.len() {
            let i = index[&word.prefix(len)];
            nested.push((i, j));
            if i != j {
                nested.push((j, i));
            }
        }
    }
    nested.sort_unstable();
    let half = cap / 2;
    let mut out = Vec::with_capacity(cap);
    let stride = nested.len().div_ceil(half).max(1);
    out.extend(nested.iter().step_by(stride).map(|&(i, j)| (words[i].clone(), words[j].clone())));
    let rest = cap - out.len();
    let stride = total.div_ceil(rest).max(1);
    out.extend(
        (0..total)
            .step_by(stride)
            .map(|k| (words[k / n].clone(), words[k % n].clone())),
    );
    out
}

/// Regularized limit of `(X_I, X_J)` against `min(p^{|I|}, p^{|J|})` or `0`,
/// and against the `L₂` product of the `φ`-images.
pub fn lemma1(p: u32, max_len: usize, cap: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma1", "pairs");
    for (a, b) in lemma1_pairs(p, max_len, cap) {
        let limit = regularized_limit(&pairing_indicators(&a, &b)?);
        let expected = if is_nested(&a, &b) {
            real(pow_p(p, a.len().min(b.len()) as i64))
        } else {
            Scalar::zero()
        };
        let l2 = l2_inner(&phi_indicator(&a), &phi_indicator(&b))?;
        report.record(limit == expected && limit == l2, || {
            format!(
                "p={p} I=\"{a}\" J=\"{b}\": limit {} expected {} L2 {}",
                format_scalar(&limit),
                format_scalar(&expected),
                format_scalar(&l2)
            )
        });
    }
    Ok(report)
}

/// Path states of eventually periodic points (`|pre| + |period| ≤ max_total`)
/// against every `X_J` with `|J| ≤ max_len`.
pub fn lemma2(p: u32, max_total: usize, max_len: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma2", "point/disk pairs");
    let words = words_up_to(p, max_len);
    for x in eventually_periodic_points(p, max_total) {
        let delta = phi_delta(&x);
        for j in &words {
            let limit = regularized_limit(&pairing_delta(&x, j)?);
            let inside = Disk::new(j.clone()).contains_point(&x);
            let expected = if inside {
                real(pow_p(p, j.len() as i64))
            } else {
                Scalar::zero()
            };
            let acted = act(&delta, &phi_indicator(j))?;
            report.record(limit == expected && limit == acted, || {
                format!(
                    "p={p} x={x} J=\"{j}\": limit {} expected {} act {}",
                    format_scalar(&limit),
                    format_scalar(&expected),
                    format_scalar(&acted)
                )
            });
        }
    }
    Ok(report)
}

/// The level recursion `S_{|I|+k} = S_{|I|+k−1} / p` of `(Ψ, X_I)` on
/// materialized states, and the convergence of the series for `t < 1`
/// through the floating-point oracle.
pub fn lemma3(p: u32, depth: usize, seed: u64, trees: usize, t: &Rational) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma3", "tree/word pairs");
    let inv_p = real(pow_p(p, -1));
    const ORACLE_DEGREE: usize = 40;
    for k in 0..trees {
        let tree_seed = seed.wrapping_add(k as u64);
        let tree = random_cascade(p, depth, tree_seed)?;
        let psi = coherent_from_cascade(&tree, t, depth)?;
        let psi_long = coherent_with_uniform_extension(&tree, t, ORACLE_DEGREE)?;
        for word in words_up_to(p, depth) {
            let x = indicator_state(&word, t, depth)?;
            let levels = psi.degree_pairings(&x)?;
            let recursion = (word.len() + 1..=depth).all(|d| levels[d] == &levels[d - 1] * &inv_p);

            let exact = pairing_coherent(&tree, &word)?;
            let full = rational_to_f64(&exact.evaluate(t)?.re);
            let x_long = indicator_state(&word, t, ORACLE_DEGREE)?;
            let oracle = numeric_oracle(&psi_long, &x_long)?.re;
            let bound = rational_to_f64(&tail_bound(&exact, t, ORACLE_DEGREE));
            let converges = (oracle - full).abs() <= bound + 1e-9 * full.abs().max(1.0);

            report.record(recursion && converges, || {
                format!(
                    "p={p} tree seed {tree_seed} I=\"{word}\": recursion {recursion}, |oracle − value| = {:e} vs bound {bound:e}",
                    (oracle - full).abs()
                )
            });
        }
    }
    Ok(report)
}

/// `μ(D_I) · lim (1 − t)(Ψ, X_I) = Ψ_I` on every node of each tree, the
/// distribution `φ(Ψ)` agreeing with it, and the leaf-level extension
/// property: any level assignment comes from some cascade.
pub fn theorem_for_tree(tree: &CascadeTree, label: &str, report: &mut SuiteReport) -> Result<bool> {
    let p = tree.p();
    let dist = phi_coherent(tree);
    let mut first_bad: Option<String> = None;
    for (word, psi) in tree.values() {
        let witness = theorem_witness(tree, word)?;
        let acted = act(&dist, &indicator(&Disk::new(word.clone())))?;
        // μ(D_I)·φ(X_I) is the plain indicator, so the pairing reproduces Ψ_I.
        let scaled = act(&dist, &phi_indicator(word))? * real(pow_p(p, -(word.len() as i64)));
        if (&witness != psi || &acted != psi || &scaled != psi) && first_bad.is_none() {
            first_bad = Some(format!(
                "{label} I=\"{word}\": expected {} got {}",
                format_scalar(psi),
                format_scalar(&witness)
            ));
        }
    }
    Ok(report.record(first_bad.is_none(), || first_bad.unwrap_or_default()))
}

pub fn theorem(p: u32, depth: usize, seed: u64, trees: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("theorem", "trees");
    for k in 0..trees {
        let tree_seed = seed.wrapping_add(k as u64);
        let tree = random_cascade(p, depth, tree_seed)?;
        theorem_for_tree(&tree, &format!("p={p} tree seed {tree_seed}"), &mut report)?;
    }
    Ok(report)
}

/// Any assignment on the `p^N` level-`N` disks is the restriction of some
/// `φ(Ψ)`.
pub fn surjectivity(p: u32, level: usize, seed: u64, samples: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("surjectivity", "assignments");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let leaves = words_of_len(p, level);
    for _ in 0..samples {
        let values: Vec<Scalar> = leaves.iter().map(|_| random_scalar(&mut rng)).collect();
        let tree = CascadeTree::from_leaves(p, level, values.clone())?;
        let dist = phi_coherent(&tree);
        let mut ok = tree.validate().is_ok();
        for (leaf, v) in leaves.iter().zip(&values) {
            ok &= &act(&dist, &indicator(&Disk::new(leaf.clone())))? == v;
        }
        report.record(ok, || format!("p={p} level {level}: assignment not reproduced"));
    }
    Ok(report)
}

/// `eigen_residual = 0` on random cascade states.
pub fn eigen(p: u32, depth: usize, seed: u64, trees: usize, t: &Rational) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("eigen", "states");
    for k in 0..trees {
        let tree_seed = seed.wrapping_add(k as u64);
        let tree = random_cascade(p, depth, tree_seed)?;
        let residual = eigen_residual(&coherent_from_cascade(&tree, t, depth)?);
        report.record(residual.is_zero(), || {
            format!("p={p} tree seed {tree_seed}: residual {residual}")
        });
    }
    Ok(report)
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=9);
    rat(num, den)
}

fn random_scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::new(random_rational(rng), random_rational(rng))
}

/// Sparse random vector with up to `terms` words of length `≤ max_degree`.
pub fn random_fock_vector(p: u32, max_degree: usize, terms: usize, rng: &mut impl Rng) -> FockVector {
    let mut v = FockVector::zero(p);
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_degree);
        let digits = (0..len).map(|_| rng.gen_range(0..p)).collect();
        let word = Word::new(p, digits).expect("digits below p");
        v = v
            .add(&FockVector::basis(word).scale(&random_scalar(rng)))
            .expect("same p");
    }
    v
}

/// `A_i A†_j = δ_ij`, adjointness of `A_i` and `A†_i`, isometry of `A†_i`,
/// and a witness that `A†_i A_j ≠ δ_ij`.
pub fn fock(p: u32, seed: u64, vectors: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("fock", "vectors");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..vectors {
        let v = random_fock_vector(p, 5, 8, &mut rng);
        let w = random_fock_vector(p, 5, 8, &mut rng);
        let mut ok = true;
        for i in 0..p {
            let created = v.create(i)?;
            ok &= created.inner(&created)? == v.inner(&v)?;
            ok &= created.inner(&w)? == v.inner(&w.annihilate(i)?)?;
            for j in 0..p {
                let back = v.create(j)?.annihilate(i)?;
                ok &= if i == j { back == v } else { back.is_zero() };
            }
        }
        report.record(ok, || format!("p={p} vector #{k}: {v}"));
    }
    // A†_0 A_0 Ω = 0 ≠ Ω
    let omega = FockVector::vacuum(p);
    let witness = omega.annihilate(0)?.create(0)?;
    report.record(witness != omega, || "A†_0 A_0 acts as identity on Ω".to_string());
    Ok(report)
}

/// Random nonzero rational `±p^e · m/n`.
pub fn random_padic_rational(p: u32, rng: &mut impl Rng) -> Rational {
    let e: i64 = rng.gen_range(-4..=4);
    let m: i64 = rng.gen_range(1..=60);
    let n: i64 = rng.gen_range(1..=60);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    pow_p(p, e) * rat(sign * m, n)
}

/// Strong triangle inequality and multiplicativity on random triples, and
/// disk trichotomy against explicit residue sets modulo `p^D`.
pub fn padic(p: u32, seed: u64, triples: usize, max_depth: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("padic", "checks");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..triples {
        let (x, y, z) = (
            random_padic_rational(p, &mut rng),
            random_padic_rational(p, &mut rng),
            random_padic_rational(p, &mut rng),
        );
        let lhs = padic_norm_total(&(&x - &y), p)?;
        let rhs = padic_norm_total(&(&x - &z), p)?.max(padic_norm_total(&(&z - &y), p)?);
        let product = padic_norm_total(&(&x * &y), p)?;
        let factors = padic_norm_total(&x, p)? * padic_norm_total(&y, p)?;
        report.record(lhs <= rhs && product == factors, || {
            format!("p={p} x={x} y={y} z={z}: ‖x−y‖ = {lhs}, max = {rhs}")
        });
    }
    let trichotomy = trichotomy_check(p, max_depth)?;
    report.checked += trichotomy.checked;
    report.passed += trichotomy.passed;
    if report.failure.is_none() {
        report.failure = trichotomy.failure;
    }
    Ok(report)
}

/// Every pair of disks of depth `≤ depth`, compared with the relation of
/// their residue sets modulo `p^depth`.
pub fn trichotomy_check(p: u32, depth: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("trichotomy", "disk pairs");
    let modulus = (p as u64).pow(depth as u32);
    let words = words_up_to(p, depth);
    let residues: Vec<Vec<bool>> = words
        .iter()
        .map(|w| {
            let step = (p as u64).pow(w.len() as u32);
            let mut set = vec![false; modulus as usize];
            let mut r = w.residue();
            while r < modulus {
                set[r as usize] = true;
                r += step;
            }
            set
        })
        .collect();
    for (a, ra) in words.iter().zip(&residues) {
        for (b, rb) in words.iter().zip(&residues) {
            let a_in_b = ra.iter().zip(rb).all(|(x, y)| !x || *y);
            let b_in_a = ra.iter().zip(rb).all(|(x, y)| !y || *x);
            let meet = ra.iter().zip(rb).any(|(x, y)| *x && *y);
            let expected = match (a_in_b, b_in_a, meet) {
                (true, true, _) => Some(DiskRelation::Equal),
                (false, true, _) => Some(DiskRelation::AContainsB),
                (true, false, _) => Some(DiskRelation::BContainsA),
                (false, false, false) => Some(DiskRelation::Disjoint),
                // overlap without containment: never valid in an ultrametric space
                (false, false, true) => None,
            };
            let got = disk_relation(&Disk::new(a.clone()), &Disk::new(b.clone()))?;
            report.record(expected == Some(got), || {
                format!("p={p} \"{a}\" vs \"{b}\": residues say {expected:?}, relation {got:?}")
            });
        }
    }
    Ok(report)
}

/// Largest depth `D ≤ cap` with `p^D ≤ limit`.
pub fn residue_depth(p: u32, cap: usize, limit: u64) -> usize {
    let mut d = 0;
    while d < cap && (p as u64).pow(d as u32 + 1) <= limit {
        d += 1;
    }
    d
}
