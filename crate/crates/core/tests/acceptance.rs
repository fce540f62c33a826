//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line; run with `--nocapture` to see them.
//!
//! Expected values come from small oracles written here against the raw
//! digit representation, not from the library's own verification suites.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use padic_coherent::coherent::{
    coherent_from_cascade, coherent_with_uniform_extension, eigen_residual, indicator_state,
    residual_by_degree,
};
use padic_coherent::fock::FockVector;
use padic_coherent::lc_space::{l2_inner, random_cascade, random_complex_cascade, CascadeTree};
use padic_coherent::limit::{
    numeric_oracle, pairing_coherent, pairing_delta, pairing_indicators, phi_indicator,
    regularized_limit, sweep,
};
use padic_coherent::padic::{
    disk_relation, eventually_periodic_points, haar_measure, padic_norm_total, words_up_to, Disk,
    DiskRelation, PAdicPoint, Word,
};
use padic_coherent::scalar::{to_complex64, Rational, Scalar};
use padic_coherent::verify::{lemma1_pairs, random_fock_vector, random_padic_rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, ok: bool, elapsed: Duration, budget: Option<Duration>, detail: &str) {
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let status = if ok && in_time { "PASS" } else { "FAIL" };
    let limit = budget.map_or(String::new(), |b| format!(" (limit {:.0?})", b));
    println!("criterion {n}: {status} {detail} in {elapsed:.2?}{limit}");
    assert!(ok, "criterion {n}: {detail}");
    assert!(in_time, "criterion {n}: took {elapsed:?}");
}

fn p_pow(p: u32, e: usize) -> Rational {
    Rational::from_integer(BigInt::from(p).pow(e as u32))
}

fn re(r: Rational) -> Scalar {
    Scalar::new(r, Rational::zero())
}

fn starts_with(long: &Word, short: &Word) -> bool {
    long.digits().starts_with(short.digits())
}

/// `n`-th digit of `pre|period`, read off the two digit lists directly.
fn point_digit(x: &PAdicPoint, n: usize) -> u32 {
    let pre = x.preperiod().digits();
    let per = x.period().digits();
    if n < pre.len() {
        pre[n]
    } else if per.is_empty() {
        0
    } else {
        per[(n - pre.len()) % per.len()]
    }
}

#[test]
fn criterion_1_lemma1_exactness() {
    let start = Instant::now();
    // 127² pairs for p = 2 exhaustively; the rest of the 10⁵ budget split between p = 3 and 5.
    let exhaustive = words_up_to(2, 6).len().pow(2);
    let share = (100_000 - exhaustive) / 2;
    let mut total = 0;
    let mut nested = 0;
    let mut bad: Option<String> = None;
    for (p, cap) in [(2, exhaustive), (3, share), (5, share)] {
        for (a, b) in lemma1_pairs(p, 6, cap) {
            total += 1;
            let is_nested = starts_with(&a, &b) || starts_with(&b, &a);
            let expected = if is_nested {
                nested += 1;
                re(p_pow(p, a.len().min(b.len())))
            } else {
                Scalar::zero()
            };
            let limit = regularized_limit(&pairing_indicators(&a, &b).unwrap());
            let l2 = l2_inner(&phi_indicator(&a), &phi_indicator(&b)).unwrap();
            if (limit != expected || l2 != expected) && bad.is_none() {
                bad = Some(format!("p={p} I=\"{a}\" J=\"{b}\": {limit} / {l2} vs {expected}"));
            }
        }
    }
    assert!(total <= 100_000);
    let detail = match &bad {
        None => format!("lemma1 exact on {total} pairs ({nested} nested)"),
        Some(why) => format!("lemma1 mismatch: {why}"),
    };
    verdict(1, bad.is_none(), start.elapsed(), Some(Duration::from_secs(60)), &detail);
}

#[test]
fn criterion_2_lemma2_exactness() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad: Option<String> = None;
    for p in [2, 3] {
        let words = words_up_to(p, 5);
        for x in eventually_periodic_points(p, 4) {
            for j in &words {
                checked += 1;
                let inside = j.digits().iter().enumerate().all(|(n, &d)| point_digit(&x, n) == d);
                let expected = if inside { re(p_pow(p, j.len())) } else { Scalar::zero() };
                let limit = regularized_limit(&pairing_delta(&x, j).unwrap());
                if limit != expected && bad.is_none() {
                    bad = Some(format!("p={p} x={x} J=\"{j}\": {limit} vs {expected}"));
                }
            }
        }
    }
    let detail = match &bad {
        None => format!("lemma2 exact on {checked} point/disk pairs"),
        Some(why) => format!("lemma2 mismatch: {why}"),
    };
    verdict(2, bad.is_none(), start.elapsed(), Some(Duration::from_secs(10)), &detail);
}

/// Each node equals the sum of its children, checked from the raw value map.
fn cascade_consistent(tree: &CascadeTree) -> bool {
    tree.values().filter(|(w, _)| w.len() < tree.depth()).all(|(w, v)| {
        let sum = w
            .children()
            .map(|c| tree.value(&c).unwrap().clone())
            .fold(Scalar::zero(), |a, b| a + b);
        &sum == v
    })
}

#[test]
fn criterion_3_theorem_round_trip() {
    let start = Instant::now();
    let mut trees = 0;
    let mut nodes = 0;
    let mut bad: Option<String> = None;
    for p in [2, 3] {
        for seed in 0..100u64 {
            let tree = random_cascade(p, 5, seed).unwrap();
            trees += 1;
            assert!(cascade_consistent(&tree));
            for (word, psi) in tree.values() {
                nodes += 1;
                let mu = haar_measure(&Disk::new(word.clone()));
                assert_eq!(mu, Rational::one() / p_pow(p, word.len()));
                let limit = regularized_limit(&pairing_coherent(&tree, word).unwrap());
                if &(re(mu) * limit.clone()) != psi && bad.is_none() {
                    bad = Some(format!("p={p} seed {seed} I=\"{word}\": limit {limit}, Ψ_I {psi}"));
                }
            }
        }
    }
    let detail = match &bad {
        None => format!("μ·limit = Ψ_I on {trees} trees, {nodes} nodes"),
        Some(why) => format!("theorem mismatch: {why}"),
    };
    verdict(3, bad.is_none(), start.elapsed(), Some(Duration::from_secs(60)), &detail);
}

#[test]
fn criterion_4_eigenvector_identity() {
    let start = Instant::now();
    let n = 5;
    let mut ok = true;
    let mut states = 0;
    let mut notes = Vec::new();
    for p in [2u32, 3] {
        for (k, t) in [Rational::new(1.into(), 3.into()), Rational::new(1.into(), 2.into())]
            .iter()
            .cycle()
            .take(50)
            .enumerate()
        {
            let seed = 1000 + k as u64;
            let tree = if k % 2 == 0 {
                random_cascade(p, n, seed).unwrap()
            } else {
                random_complex_cascade(p, n, seed).unwrap()
            };
            states += 1;
            let state = coherent_from_cascade(&tree, t, n).unwrap();
            if !eigen_residual(&state).is_zero() {
                ok = false;
                notes.push(format!("p={p} seed {seed}: nonzero residual"));
            }
        }

        // Power: perturb one node by ε and compare with p·t·ε² per affected degree.
        let t = Rational::new(1.into(), 2.into());
        let eps = Scalar::new(Rational::new(3.into(), 7.into()), Rational::new((-1).into(), 5.into()));
        let eps_sq = &eps.re * &eps.re + &eps.im * &eps.im;
        let pt = &t * Rational::from_integer(p.into());
        let tree = random_cascade(p, n, 99).unwrap();
        for depth in [0usize, 2, n] {
            let node = Word::new(p, vec![p - 1; depth]).unwrap();
            let bumped = tree.value(&node).unwrap() + &eps;
            let broken = tree.with_value_unchecked(&node, bumped).unwrap();
            let state = coherent_from_cascade(&broken, &t, n).unwrap();
            let by_degree = residual_by_degree(&state);
            // The node's own equation breaks at degree `depth` (if below N),
            // its parent's at `depth − 1`.
            let mut expected = vec![Rational::zero(); n];
            if depth < n {
                expected[depth] = &pt * &eps_sq;
            }
            if depth > 0 {
                expected[depth - 1] = &pt * &eps_sq;
            }
            let total: Rational = expected
                .iter()
                .enumerate()
                .map(|(d, r)| r * num_traits::pow(pt.clone(), d))
                .fold(Rational::zero(), |a, b| a + b);
            let hit = by_degree == expected && eigen_residual(&state) == total;
            if !hit {
                ok = false;
                notes.push(format!("p={p} node depth {depth}: {by_degree:?} vs {expected:?}"));
            }
        }
    }
    let detail = if ok {
        format!("residual 0 on {states} cascade states; ε-violations give p·t·ε² per degree")
    } else {
        format!("eigen residual: {}", notes.join("; "))
    };
    verdict(4, ok, start.elapsed(), None, &detail);
}

/// Plain map model of the operators: `A†_j` appends `j`, `A_i` keeps words
/// ending in `i` and drops that digit.
mod model {
    use super::*;
    use std::collections::BTreeMap;

    pub type Vector = BTreeMap<Vec<u32>, Scalar>;

    pub fn from(v: &FockVector) -> Vector {
        v.terms().map(|(w, c)| (w.digits().to_vec(), c.clone())).collect()
    }

    pub fn create(v: &Vector, j: u32) -> Vector {
        v.iter()
            .map(|(w, c)| {
                let mut w = w.clone();
                w.push(j);
                (w, c.clone())
            })
            .collect()
    }

    pub fn annihilate(v: &Vector, i: u32) -> Vector {
        v.iter()
            .filter(|(w, _)| w.last() == Some(&i))
            .map(|(w, c)| (w[..w.len() - 1].to_vec(), c.clone()))
            .collect()
    }

    pub fn inner(v: &Vector, w: &Vector) -> Scalar {
        v.iter()
            .filter_map(|(k, a)| w.get(k).map(|b| a * b.conj()))
            .fold(Scalar::zero(), |x, y| x + y)
    }
}

#[test]
fn criterion_5_operator_relations() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = true;
    let mut vectors = 0;
    for k in 0..100 {
        let p = [2u32, 3, 5][k % 3];
        let v = random_fock_vector(p, 5, 8, &mut rng);
        let w = random_fock_vector(p, 5, 8, &mut rng);
        vectors += 1;
        let (mv, mw) = (model::from(&v), model::from(&w));
        for i in 0..p {
            ok &= model::from(&v.create(i).unwrap()) == model::create(&mv, i);
            ok &= model::from(&v.annihilate(i).unwrap()) == model::annihilate(&mv, i);
            let lhs = v.create(i).unwrap().inner(&w).unwrap();
            let rhs = v.inner(&w.annihilate(i).unwrap()).unwrap();
            ok &= lhs == rhs && lhs == model::inner(&model::create(&mv, i), &mw);
            for j in 0..p {
                let back = v.create(j).unwrap().annihilate(i).unwrap();
                ok &= if i == j { back == v } else { back.is_zero() };
            }
        }
    }
    let detail = format!("A_i A†_j = δ_ij and adjointness on {vectors} vector pairs");
    verdict(5, ok, start.elapsed(), None, &detail);
}

fn random_word(p: u32, max_len: usize, rng: &mut impl Rng) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(p, (0..len).map(|_| rng.gen_range(0..p)).collect()).unwrap()
}

fn relative(oracle: Complex64, exact: Complex64) -> f64 {
    (oracle - exact).norm() / exact.norm()
}

#[test]
fn criterion_6_numeric_oracle() {
    let start = Instant::now();
    const N: usize = 60;
    const TOL: f64 = 1e-9;
    let ts = [(1, 3), (1, 2), (3, 4)].map(|(a, b)| Rational::new(a.into(), b.into()));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut compared = 0;
    let mut bad: Option<String> = None;

    for k in 0..50 {
        let p = [2u32, 3, 5][k % 3];
        let (a, b) = (random_word(p, 6, &mut rng), random_word(p, 6, &mut rng));
        let exact = pairing_indicators(&a, &b).unwrap();
        for t in &ts {
            let x = indicator_state(&a, t, N).unwrap();
            let y = indicator_state(&b, t, N).unwrap();
            let oracle = numeric_oracle(&x, &y).unwrap();
            let err = relative(oracle, to_complex64(&exact.truncated(t, N)));
            worst = worst.max(err);
            compared += 1;
            if err > TOL && bad.is_none() {
                bad = Some(format!("p={p} I=\"{a}\" J=\"{b}\" t={t}: rel {err:e}"));
            }
        }
    }

    for k in 0..20 {
        let p = [2u32, 3][k % 2];
        let tree = random_cascade(p, 4, 600 + k as u64).unwrap();
        let word = random_word(p, 4, &mut rng);
        let exact = pairing_coherent(&tree, &word).unwrap();
        for t in &ts {
            let psi = coherent_with_uniform_extension(&tree, t, N).unwrap();
            let x = indicator_state(&word, t, N).unwrap();
            let oracle = numeric_oracle(&psi, &x).unwrap();
            let err = relative(oracle, to_complex64(&exact.truncated(t, N)));
            worst = worst.max(err);
            compared += 1;
            if err > TOL && bad.is_none() {
                bad = Some(format!("p={p} tree {k} I=\"{word}\" t={t}: rel {err:e}"));
            }
        }
    }
    let detail = match &bad {
        None => format!("oracle vs exact at N={N} on {compared} evaluations, worst rel {worst:.1e}"),
        Some(why) => format!("oracle disagreement: {why}"),
    };
    verdict(6, bad.is_none(), start.elapsed(), None, &detail);
}

#[test]
fn criterion_7_limit_convergence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rows = 0;
    let mut bad: Option<String> = None;
    for k in 0..20 {
        let p = [2u32, 3, 5][k % 3];
        let long = random_word(p, 6, &mut rng);
        let short = long.prefix(rng.gen_range(0..=long.len()));
        let (a, b) = if k % 2 == 0 { (short, long) } else { (long, short) };
        let v = pairing_indicators(&a, &b).unwrap();
        let limit = re(p_pow(p, a.len().min(b.len())));
        // C = Σ |a_i − c| over the polynomial part, |·| taken as ℓ¹ of re/im.
        let c: Rational = v
            .poly()
            .iter()
            .map(|x| {
                let d = x - v.tail_coeff();
                d.re.abs() + d.im.abs()
            })
            .fold(Rational::zero(), |s, x| s + x);
        for row in sweep(&v, 2, 20, 0) {
            rows += 1;
            let err = {
                let d = &row.scaled_value - &limit;
                d.re.abs() + d.im.abs()
            };
            let bound = &c * (Rational::one() - &row.t);
            if (row.limit != limit || err > bound) && bad.is_none() {
                bad = Some(format!("p={p} I=\"{a}\" J=\"{b}\" k={}: error {err} > {bound}", row.k));
            }
        }
    }
    let detail = match &bad {
        None => format!("|(1−t)v − limit| ≤ C(1−t) on {rows} sweep rows (20 pairs, k=2..20)"),
        Some(why) => format!("convergence bound broken: {why}"),
    };
    verdict(7, bad.is_none(), start.elapsed(), None, &detail);
}

/// `v_p` of a nonzero rational by repeated division.
fn valuation(x: &Rational, p: u32) -> i64 {
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut k = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        k
    };
    count(x.numer().clone()) - count(x.denom().clone())
}

fn norm_oracle(x: &Rational, p: u32) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let v = valuation(x, p);
    let base = Rational::from_integer(p.into());
    if v >= 0 {
        Rational::one() / num_traits::pow(base, v as usize)
    } else {
        num_traits::pow(base, (-v) as usize)
    }
}

#[test]
fn criterion_8_padic_substrate() {
    let start = Instant::now();
    let mut ok = true;
    let mut triples = 0;
    for p in [2u32, 3, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(8 + p as u64);
        for _ in 0..10_000 {
            let x = random_padic_rational(p, &mut rng);
            let y = random_padic_rational(p, &mut rng);
            let z = random_padic_rational(p, &mut rng);
            triples += 1;
            for d in [&x - &y, &x - &z, &z - &y] {
                ok &= padic_norm_total(&d, p).unwrap() == norm_oracle(&d, p);
            }
            let lhs = norm_oracle(&(&x - &y), p);
            let rhs = norm_oracle(&(&x - &z), p).max(norm_oracle(&(&z - &y), p));
            ok &= lhs <= rhs;
        }
    }

    // Disks mod 2⁶ as residue sets: D(w) ↔ {r < 64 : r ≡ Σ w_k 2^k mod 2^{|w|}}.
    let words = words_up_to(2, 6);
    let residues = |w: &Word| -> Vec<bool> {
        let base: u64 = w.digits().iter().rev().fold(0, |acc, &d| acc * 2 + d as u64);
        let step = 1u64 << w.len();
        (0..64).map(|r| r % step == base).collect()
    };
    let sets: Vec<Vec<bool>> = words.iter().map(residues).collect();
    let mut pairs = 0;
    for (a, sa) in words.iter().zip(&sets) {
        for (b, sb) in words.iter().zip(&sets) {
            pairs += 1;
            let a_sub_b = sa.iter().zip(sb).all(|(x, y)| !x || *y);
            let b_sub_a = sa.iter().zip(sb).all(|(x, y)| !y || *x);
            let meet = sa.iter().zip(sb).any(|(x, y)| *x && *y);
            let expected = match (a_sub_b, b_sub_a) {
                (true, true) => DiskRelation::Equal,
                (false, true) => DiskRelation::AContainsB,
                (true, false) => DiskRelation::BContainsA,
                (false, false) => {
                    ok &= !meet;
                    DiskRelation::Disjoint
                }
            };
            ok &= disk_relation(&Disk::new(a.clone()), &Disk::new(b.clone())).unwrap() == expected;
        }
    }
    let detail = format!(
        "strong triangle on {triples} triples; trichotomy on all {pairs} disk pairs mod 2⁶"
    );
    verdict(8, ok, start.elapsed(), None, &detail);
}
