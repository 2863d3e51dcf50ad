//! Cross-module property tests.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use crate::algebraic::{is_pv, pv_decay};
use crate::automaton::FactorAutomaton;
use crate::cantor::{numeric_value, representation};
use crate::crystal::{euler_phi, hiller};
use crate::quantum::{apply_first_kind, quantum_complexity, second_kind_limit, QuantumState};
use crate::roots::root_count;
use crate::spacing::{gap_statistics, substitution_spacing, substitution_spacing_counts, AngleList};
use crate::words::{complexity, empirical_frequencies, PrefixStream};
use crate::{Alphabet, IntPolynomial, Letter, PisotMode, Substitution, Word};

fn letters(size: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0..size as Letter, 0..=max_len)
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    (2usize..=4).prop_flat_map(move |k| {
        letters(k, max_len).prop_map(move |l| Word::new(&Alphabet::with_size(k).unwrap(), l).unwrap())
    })
}

fn substitution_of(k: usize) -> impl Strategy<Value = Substitution> {
    prop::collection::vec(prop::collection::vec(0..k as Letter, 1..=4), k).prop_map(move |rules| {
        let a = Alphabet::with_size(k).unwrap();
        Substitution::new(&a, rules.into_iter().map(|r| Word::new(&a, r).unwrap()).collect()).unwrap()
    })
}

fn substitution() -> impl Strategy<Value = Substitution> {
    (2usize..=4).prop_flat_map(substitution_of)
}

fn brute_counts(l: &[Letter], n_max: usize) -> Vec<u64> {
    (1..=n_max).map(|n| l.windows(n).collect::<BTreeSet<_>>().len() as u64).collect()
}

fn parikh_image(m: &crate::IntMatrix, v: &[u64]) -> Vec<u64> {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.get(i, j) as u64 * v[j]).sum()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn automaton_matches_windows(w in word(300)) {
        let n_max = w.len().max(1);
        let counts = FactorAutomaton::build(w.letters()).distinct_counts(n_max);
        prop_assert_eq!(counts, brute_counts(w.letters(), n_max));
    }

    #[test]
    fn complexity_bounds(w in word(200), n in 1usize..12) {
        prop_assume!(n <= w.len());
        let p = complexity(&w, n).unwrap();
        let cap = (w.alphabet().len() as u64).saturating_pow(n as u32).min((w.len() - n + 1) as u64);
        prop_assert!(1 <= p && p <= cap);
    }

    #[test]
    fn frequencies_sum_to_one(w in word(200)) {
        prop_assume!(!w.is_empty());
        let total = empirical_frequencies(&w).unwrap().into_iter().fold(num_rational::Ratio::zero(), |a, b| a + b);
        prop_assert_eq!(total, num_rational::Ratio::one());
    }

    #[test]
    fn periodic_words_have_bounded_complexity(w in word(8), n in 1usize..30) {
        prop_assume!(!w.is_empty());
        let prefix = PrefixStream::periodic(&w).unwrap().prefix(200);
        prop_assert!(complexity(&prefix, n).unwrap() <= w.len() as u64);
    }

    #[test]
    fn apply_is_a_morphism(sigma in substitution(), u in letters(4, 20), v in letters(4, 20)) {
        let k = sigma.alphabet().len() as Letter;
        let a = sigma.alphabet();
        let u = Word::new(a, u.into_iter().map(|x| x % k).collect()).unwrap();
        let v = Word::new(a, v.into_iter().map(|x| x % k).collect()).unwrap();
        let joined = sigma.apply(&u.concat(&v).unwrap()).unwrap();
        prop_assert_eq!(&joined, &sigma.apply(&u).unwrap().concat(&sigma.apply(&v).unwrap()).unwrap());
        let m = sigma.incidence_matrix();
        prop_assert_eq!(joined.parikh(), parikh_image(&m, &u.concat(&v).unwrap().parikh()));
    }

    #[test]
    fn incidence_is_functorial(pair in (2usize..=4).prop_flat_map(|k| (substitution_of(k), substitution_of(k)))) {
        let (s, t) = pair;
        let composed = s.compose(&t).unwrap().incidence_matrix();
        prop_assert_eq!(composed, s.incidence_matrix().checked_mul(&t.incidence_matrix()).unwrap());
        let m = s.incidence_matrix();
        prop_assert_eq!(s.power(2).unwrap().incidence_matrix(), m.checked_mul(&m).unwrap());
    }

    #[test]
    fn pisot_class_survives_relabeling(sigma in substitution_of(3), perm in Just(vec![0u8, 1, 2]).prop_shuffle()) {
        let a = sigma.classify_pisot(PisotMode::Strict);
        let b = sigma.relabel(&perm).unwrap().classify_pisot(PisotMode::Strict);
        prop_assert_eq!(a.primitive, b.primitive);
        prop_assert_eq!(a.pisot_loose, b.pisot_loose);
        prop_assert_eq!(a.pisot_strict, b.pisot_strict);
        prop_assert_eq!(&a.char_poly, &b.char_poly);
        prop_assert!(a.leading_eigenvalue.overlaps(&b.leading_eigenvalue));
    }

    #[test]
    fn fixed_point_prefix_extends_iterates(sigma in substitution(), len in 1usize..400) {
        prop_assume!(sigma.has_fixed_point(0));
        let prefix = sigma.fixed_point_prefix(0, len).unwrap();
        let mut k = 1;
        while sigma.iterate_length(0, k).unwrap() < BigInt::from(len) {
            k += 1;
        }
        prop_assert!(sigma.iterate(0, k).unwrap().starts_with(&prefix));
    }

    #[test]
    fn root_counts_respect_symmetries(c in prop::collection::vec(-5i64..=5, 1..=6)) {
        let mut c = c;
        c.push(1);
        let p = IntPolynomial::from_i64(&c).unwrap();
        let r = root_count(&p);
        prop_assert_eq!(r.degree(), p.degree());
        // z -> -z keeps moduli
        let flipped: Vec<i64> = c.iter().enumerate().map(|(i, &x)| if i % 2 == 1 { -x } else { x }).collect();
        prop_assert_eq!(root_count(&IntPolynomial::from_i64(&flipped).unwrap()), r);
        // z -> 1/z swaps inside and outside
        if c[0] != 0 {
            let rev: Vec<i64> = c.iter().rev().copied().collect();
            let s = root_count(&IntPolynomial::from_i64(&rev).unwrap());
            prop_assert_eq!((s.inside, s.on_circle, s.outside), (r.outside, r.on_circle, r.inside));
        }
    }

    #[test]
    fn integers_above_one_are_pv(k in 2i64..10_000) {
        prop_assert!(is_pv(&IntPolynomial::from_i64(&[-k, 1]).unwrap()).unwrap());
    }

    #[test]
    fn gap_statistics_ignore_rotation(angles in prop::collection::vec(0.0f64..core::f64::consts::TAU, 2..60), c in 0.0f64..10.0) {
        let list = AngleList::new(angles).unwrap();
        let a = gap_statistics(&list, 1e-9).unwrap();
        let b = gap_statistics(&list.rotated(c), 1e-9).unwrap();
        prop_assert!((a.mean - b.mean).abs() < 1e-9);
        prop_assert!((a.variance - b.variance).abs() < 1e-9);
        prop_assert!((a.min_gap - b.min_gap).abs() < 1e-9);
        prop_assert!((a.max_gap - b.max_gap).abs() < 1e-9);
    }

    #[test]
    fn spacing_paths_agree(b0 in 0.0f64..6.28, b1 in 0.0f64..6.28, n in 1usize..2000) {
        for sigma in [Substitution::fibonacci(), Substitution::pell()] {
            let x = substitution_spacing(&sigma, &[b0, b1], n).unwrap();
            let y = substitution_spacing_counts(&sigma, &[b0, b1], n).unwrap();
            for (p, q) in x.angles().iter().zip(y.angles()) {
                let d = (p - q).abs();
                prop_assert!(d.min(core::f64::consts::TAU - d) < 1e-9);
            }
        }
    }

    #[test]
    fn representation_round_trip(k in 2usize..=16, num in 0u64..1_000_000, extra in 0u64..1_000_000, digits in 1usize..60) {
        let q = BigRational::new(BigInt::from(num), BigInt::from(num + extra).max(BigInt::one()));
        let w = representation(&Alphabet::with_size(k).unwrap(), &q, digits).unwrap();
        let back = numeric_value(&w).unwrap();
        let bound = BigRational::new(BigInt::one(), BigInt::from(k).pow(digits as u32));
        prop_assert!(back <= q && back >= &q - bound);
    }

    #[test]
    fn totient_is_multiplicative(a in 1u64..5000, b in 1u64..5000) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        prop_assert_eq!(euler_phi(a * b).unwrap(), euler_phi(a).unwrap() * euler_phi(b).unwrap());
    }

    #[test]
    fn first_kind_keeps_basis_orthonormal(ws in prop::collection::vec(letters(2, 12), 1..8)) {
        let fib = Substitution::fibonacci();
        let a = Alphabet::binary();
        let ws: Vec<Word> = ws.into_iter().map(|l| Word::new(&a, l).unwrap()).collect();
        for x in &ws {
            for y in &ws {
                let sx = apply_first_kind(&fib, &QuantumState::basis(x)).unwrap().state;
                let sy = apply_first_kind(&fib, &QuantumState::basis(y)).unwrap().state;
                let want = if x == y { 1.0 } else { 0.0 };
                prop_assert_eq!(sx.inner(&sy), Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn basis_complexity_is_classical(w in word(100), n in 1usize..10) {
        prop_assume!(n <= w.len());
        let q = quantum_complexity(&QuantumState::basis(&w), n).unwrap();
        prop_assert_eq!(q, complexity(&w, n).unwrap() as f64);
    }
}

#[test]
fn hiller_on_prime_powers() {
    for p in [3u64, 5, 7, 11, 13] {
        let mut q = p;
        while q < 1_000_000 {
            assert_eq!(hiller(q).unwrap(), euler_phi(q).unwrap());
            q *= p;
        }
    }
    assert_eq!(hiller(2).unwrap(), 0);
    for a in 2..20 {
        assert_eq!(hiller(1 << a).unwrap(), euler_phi(1 << a).unwrap());
    }
}

#[test]
fn quadratic_pv_decay_is_geometric() {
    // conjugate moduli of tau and 1 + sqrt 2
    for (c, m) in [([-1i64, -1, 1], 0.618_033_988_749_895), ([-1, -2, 1], 0.414_213_562_373_095)] {
        let p = IntPolynomial::from_i64(&c).unwrap();
        for n in 1..60 {
            let a = pv_decay(&p, n, None).unwrap().upper_f64();
            let b = pv_decay(&p, n + 1, None).unwrap().upper_f64();
            assert!(b <= m * a * (1.0 + 1e-9), "n = {n}");
        }
    }
}

#[test]
fn second_kind_residuals_shrink_at_the_spectral_ratio() {
    let cases = [
        (Substitution::fibonacci(), 0.618_033_988_749_895 / 1.618_033_988_749_895),
        (Substitution::pell(), 0.414_213_562_373_095 / 2.414_213_562_373_095),
        (Substitution::padovan(), 0.868_836_961_832_709 / 1.324_717_957_244_746),
    ];
    for (sigma, ratio) in cases {
        let lim = second_kind_limit(&sigma.incidence_matrix(), 0, 60, 0.0).unwrap();
        let r = &lim.residuals;
        for (k, &x) in r.iter().enumerate().filter(|(_, &x)| x > 1e-13) {
            let envelope = 10.0 * r[0] * libm::pow(ratio + 0.02, k as f64);
            assert!(x <= envelope, "{sigma}: step {k} residual {x} above {envelope}");
        }
    }
}
