use num_bigint::BigInt;
use num_traits::{One, Zero};
use padic_coherent::coherent::indicator_state;
use padic_coherent::fock::FockVector;
use padic_coherent::lc_space::{act, indicator, l2_inner, random_complex_cascade, Distribution, LCFunction};
use padic_coherent::limit::pairing_indicators;
use padic_coherent::padic::{longest_common_prefix, padic_norm_total, Disk, Word};
use padic_coherent::scalar::{Rational, Scalar};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)]
}

fn word_for(p: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..p, 0..=max_len).prop_map(move |d| Word::new(p, d).unwrap())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=50).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=500, 1i64..=500, any::<bool>()).prop_map(|(n, d, neg)| {
        let n = if neg { -n } else { n };
        Rational::new(n.into(), d.into())
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| Scalar::new(a, b))
}

fn lc_function(p: u32) -> impl Strategy<Value = LCFunction> {
    prop::collection::vec((word_for(p, 4), scalar()), 0..6).prop_map(move |terms| {
        LCFunction::from_terms(p, terms.into_iter().map(|(w, c)| (Disk::new(w), c))).unwrap()
    })
}

fn fock_vector(p: u32) -> impl Strategy<Value = FockVector> {
    prop::collection::vec((word_for(p, 4), scalar()), 0..6)
        .prop_map(move |terms| FockVector::from_terms(p, terms).unwrap())
}

fn mu(p: u32, depth: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(p).pow(depth as u32))
}

proptest! {
    #[test]
    fn strong_triangle_and_multiplicativity(
        p in prime(), x in nonzero_rational(), y in nonzero_rational(), z in nonzero_rational()
    ) {
        let n = |r: &Rational| padic_norm_total(r, p).unwrap();
        prop_assert!(n(&(&x - &y)) <= n(&(&x - &z)).max(n(&(&z - &y))));
        prop_assert_eq!(n(&(&x * &y)), n(&x) * n(&y));
        prop_assert_eq!(n(&(&x + &y)) <= n(&x).max(n(&y)), true);
    }

    #[test]
    fn children_measures_add_up(p in prime(), w in (0usize..=8).prop_flat_map(|len| {
        prop::collection::vec(0u32..2, len)
    })) {
        let word = Word::new(2, w).unwrap();
        let disk = Disk::new(word.clone());
        let sum = disk.children().map(|c| c.measure()).fold(Rational::zero(), |a, b| a + b);
        prop_assert_eq!(&sum, &disk.measure());
        prop_assert_eq!(disk.measure(), mu(2, word.len()));
        let q = Disk::new(Word::new(p, vec![0; word.len()]).unwrap());
        let sum = q.children().map(|c| c.measure()).fold(Rational::zero(), |a, b| a + b);
        prop_assert_eq!(sum, q.measure());
    }

    #[test]
    fn lcp_matches_scan((a, b) in prime().prop_flat_map(|p| (word_for(p, 8), word_for(p, 8)))) {
        let common = a.digits().iter().zip(b.digits()).take_while(|(x, y)| x == y).count();
        prop_assert_eq!(longest_common_prefix(&a, &b).unwrap().len(), common);
    }

    #[test]
    fn l2_is_hermitian_linear_and_positive(
        (f, g, h) in prime().prop_flat_map(|p| (lc_function(p), lc_function(p), lc_function(p))),
        c in scalar(),
    ) {
        prop_assert_eq!(l2_inner(&f, &g).unwrap(), l2_inner(&g, &f).unwrap().conj());
        let lhs = l2_inner(&f.scale(&c).add(&g).unwrap(), &h).unwrap();
        let rhs = c * l2_inner(&f, &h).unwrap() + l2_inner(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
        let square = l2_inner(&f, &f).unwrap();
        prop_assert!(square.im.is_zero() && square.re >= Rational::zero());
        prop_assert_eq!(square.is_zero(), f.is_empty());
    }

    #[test]
    fn act_is_linear(
        (f, g) in prop_oneof![Just(2u32), Just(3)].prop_flat_map(|p| (lc_function(p), lc_function(p))),
        c in scalar(),
        seed in 0u64..1000,
    ) {
        let tree = random_complex_cascade(f.p(), 4, seed).unwrap();
        let d = Distribution::Cascade(tree);
        let lhs = act(&d, &f.scale(&c).add(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, c * act(&d, &f).unwrap() + act(&d, &g).unwrap());
        let haar = Distribution::Haar { p: f.p() };
        prop_assert_eq!(act(&haar, &f).unwrap(), l2_inner(&f, &LCFunction::constant(f.p(), Scalar::one())).unwrap());
    }

    #[test]
    fn cascade_level_sums(p in prop_oneof![Just(2u32), Just(3)], seed in 0u64..1000, len in 0usize..=4) {
        let tree = random_complex_cascade(p, 4, seed).unwrap();
        let word = Word::new(p, vec![p - 1; len]).unwrap();
        for j in 0..=(4 - len) {
            prop_assert_eq!(&tree.level_sum(&word, j).unwrap(), tree.value(&word).unwrap());
        }
        prop_assert_eq!(act(&Distribution::Cascade(tree.clone()), &indicator(&Disk::new(word.clone()))).unwrap(),
            tree.value(&word).unwrap().clone());
    }

    #[test]
    fn creation_is_adjoint_to_annihilation(
        (v, w, i) in prime().prop_flat_map(|p| (fock_vector(p), fock_vector(p), 0..p)),
    ) {
        let lhs = v.create(i).unwrap().inner(&w).unwrap();
        prop_assert_eq!(lhs, v.inner(&w.annihilate(i).unwrap()).unwrap());
        prop_assert_eq!(v.create(i).unwrap().annihilate(i).unwrap(), v);
    }

    #[test]
    fn truncated_pairing_matches_materialized_states(
        (a, b) in prop_oneof![Just(2u32), Just(3)].prop_flat_map(|p| (word_for(p, 3), word_for(p, 3))),
        n in 3usize..=5,
        t in prop_oneof![Just((1i64, 3i64)), Just((1, 2)), Just((3, 4))],
    ) {
        let t = Rational::new(t.0.into(), t.1.into());
        let x = indicator_state(&a, &t, n).unwrap();
        let y = indicator_state(&b, &t, n).unwrap();
        let exact = pairing_indicators(&a, &b).unwrap().truncated(&t, n);
        prop_assert_eq!(x.fock_inner(&y).unwrap(), exact);
    }
}
