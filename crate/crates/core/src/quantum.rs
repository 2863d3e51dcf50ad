//! Finite superpositions of words and the two kinds of quantum substitution
//! operators.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::FactorAutomaton;
use crate::spacing::{wrap_angle, AngleList};
use crate::substitution::{perron_vector, PisotMode};
use crate::words::log_base;
use crate::{Alphabet, Error, IntMatrix, Letter, RealApprox, Result, Substitution, Word};

/// Default bound on the number of basis words in a generated state.
pub const DEFAULT_SUPPORT_CAP: u128 = 1 << 20;

/// A finite superposition `sum_x a_x |x>` over words of one alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    alphabet: Alphabet,
    amps: BTreeMap<Vec<Letter>, Complex64>,
}

impl QuantumState {
    /// Builds a state from (word, amplitude) pairs; repeated words add up.
    /// The result is not normalized.
    pub fn from_terms<I>(alphabet: &Alphabet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Complex64)>,
    {
        let mut amps: BTreeMap<Vec<Letter>, Complex64> = BTreeMap::new();
        for (w, a) in terms {
            if w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            *amps.entry(w.into_letters()).or_default() += a;
        }
        amps.retain(|_, a| a.norm_sqr() > 0.0);
        Ok(QuantumState { alphabet: alphabet.clone(), amps })
    }

    /// The basis state `|w>`.
    pub fn basis(w: &Word) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(w.letters().to_vec(), Complex64::new(1.0, 0.0));
        QuantumState { alphabet: w.alphabet().clone(), amps }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    /// Basis words with their amplitudes, in lexicographic order of letters.
    pub fn terms(&self) -> impl Iterator<Item = (Word, Complex64)> + '_ {
        self.amps.iter().map(|(k, &a)| (Word::from_trusted(&self.alphabet, k.clone()), a))
    }

    pub fn amplitude(&self, w: &Word) -> Complex64 {
        self.amps.get(w.letters()).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(Complex64::norm_sqr).sum()
    }

    pub fn normalized(&self) -> Result<QuantumState> {
        let n = libm::sqrt(self.norm_sqr());
        if self.amps.is_empty() || n == 0.0 {
            return Err(Error::EmptySupport);
        }
        let amps = self.amps.iter().map(|(k, a)| (k.clone(), a / n)).collect();
        Ok(QuantumState { alphabet: self.alphabet.clone(), amps })
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amps
            .iter()
            .filter_map(|(k, a)| other.amps.get(k).map(|b| a.conj() * b))
            .sum()
    }

    /// `(word, re, im)` records in basis order.
    pub fn records(&self) -> Vec<(String, f64, f64)> {
        self.terms().map(|(w, a)| (alloc::format!("{w}"), a.re, a.im)).collect()
    }
}

/// Result of applying a first-kind operator.
#[derive(Clone, Debug, PartialEq)]
pub struct Evolved {
    pub state: QuantumState,
    /// Distinct basis words collided, so the state had to be renormalized.
    pub renormalized: bool,
}

/// `|x> -> |sigma(x)>`, extended linearly.
pub fn apply_first_kind(sigma: &Substitution, psi: &QuantumState) -> Result<Evolved> {
    if psi.amps.is_empty() {
        return Err(Error::EmptySupport);
    }
    if psi.alphabet() != sigma.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut amps: BTreeMap<Vec<Letter>, Complex64> = BTreeMap::new();
    let mut collided = false;
    for (k, a) in &psi.amps {
        let image = sigma.apply(&Word::from_trusted(&psi.alphabet, k.clone()))?.into_letters();
        match amps.get_mut(&image) {
            Some(slot) => {
                *slot += a;
                collided = true;
            }
            None => {
                amps.insert(image, *a);
            }
        }
    }
    let raw = QuantumState { alphabet: psi.alphabet.clone(), amps };
    if collided {
        Ok(Evolved { state: raw.normalized()?, renormalized: true })
    } else {
        Ok(Evolved { state: raw, renormalized: false })
    }
}

/// `|S, n>`: equal amplitudes on every word of length `n`.
pub fn symmetric_state(alphabet: &Alphabet, n: usize, cap: u128) -> Result<QuantumState> {
    if n == 0 {
        return Err(Error::OutOfRange("n"));
    }
    let k = alphabet.len() as u128;
    let mut size: u128 = 1;
    for _ in 0..n {
        size = size.saturating_mul(k);
        if size > cap {
            return Err(Error::SupportCapExceeded { size, cap });
        }
    }
    // sqrt of the reciprocal is correctly rounded whenever 1/size is exact
    let amp = Complex64::new(libm::sqrt(1.0 / size as f64), 0.0);
    let mut amps = BTreeMap::new();
    let mut word = vec![0 as Letter; n];
    loop {
        amps.insert(word.clone(), amp);
        // odometer increment
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(QuantumState { alphabet: alphabet.clone(), amps });
            }
            i -= 1;
            if (word[i] as usize) + 1 < alphabet.len() {
                word[i] += 1;
                break;
            }
            word[i] = 0;
        }
    }
}

/// `sum_x |a_x|^2 p_n(x)` over the support.
pub fn quantum_complexity(psi: &QuantumState, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::OutOfRange("n"));
    }
    if psi.amps.is_empty() {
        return Err(Error::EmptySupport);
    }
    let mut total = 0.0;
    for (k, a) in &psi.amps {
        if k.len() < n {
            return Err(Error::WordTooShort { len: k.len(), n });
        }
        let p = FactorAutomaton::build(k).distinct_counts(n)[n - 1];
        total += a.norm_sqr() * p as f64;
    }
    Ok(total)
}

/// `log_|A|(quantum_complexity) / n`.
pub fn quantum_entropy_estimate(psi: &QuantumState, n: usize) -> Result<f64> {
    let c = quantum_complexity(psi, n)?;
    Ok(log_base(c, psi.alphabet.len()) / n as f64)
}

/// Vector in the letter space `C^|A|`.
#[derive(Clone, Debug, PartialEq)]
pub struct LetterVector(pub Vec<Complex64>);

impl LetterVector {
    pub fn basis(dim: usize, a: Letter) -> Result<Self> {
        if a as usize >= dim {
            return Err(Error::LetterOutOfRange { letter: a as usize, size: dim });
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[a as usize] = Complex64::new(1.0, 0.0);
        Ok(LetterVector(v))
    }

    pub fn from_real(v: &[f64]) -> Self {
        LetterVector(v.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.0.iter().map(Complex64::norm_sqr).sum())
    }

    pub fn normalized(&self) -> Option<LetterVector> {
        let n = self.norm();
        (n > 0.0).then(|| LetterVector(self.0.iter().map(|z| z / n).collect()))
    }

    /// `|<a|v>|^2 / <v|v>`.
    pub fn probabilities(&self) -> Vec<f64> {
        let total: f64 = self.0.iter().map(Complex64::norm_sqr).sum();
        self.0.iter().map(|z| z.norm_sqr() / total).collect()
    }

    fn distance(&self, other: &LetterVector) -> f64 {
        libm::sqrt(self.0.iter().zip(&other.0).map(|(a, b)| (a - b).norm_sqr()).sum())
    }
}

/// `M v`, unnormalized.
pub fn second_kind_step(m: &IntMatrix, v: &LetterVector) -> Result<LetterVector> {
    let n = m.dim();
    if v.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (i, slot) in out.iter_mut().enumerate() {
        for (j, x) in v.0.iter().enumerate() {
            let e = m.get(i, j);
            if e != 0 {
                *slot += x * e as f64;
            }
        }
    }
    Ok(LetterVector(out))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecondKindLimit {
    /// Unit vector reached by normalized power iteration.
    pub vector: LetterVector,
    pub probabilities: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// `|v_(k+1) - v_k|` for every step taken.
    pub residuals: Vec<f64>,
}

/// Iterates `v <- M v / |M v|` from `|start>` until successive vectors are
/// closer than `tol` or `n_max` steps were taken.
pub fn second_kind_limit(m: &IntMatrix, start: Letter, n_max: usize, tol: f64) -> Result<SecondKindLimit> {
    if !m.is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    let mut v = LetterVector::basis(m.dim(), start)?;
    let mut residuals = Vec::new();
    let mut converged = false;
    for _ in 0..n_max {
        let next = second_kind_step(m, &v)?.normalized().ok_or(Error::NotPrimitive)?;
        let r = next.distance(&v);
        residuals.push(r);
        v = next;
        if r < tol {
            converged = true;
            break;
        }
    }
    Ok(SecondKindLimit {
        probabilities: v.probabilities(),
        iterations: residuals.len(),
        converged,
        vector: v,
        residuals,
    })
}

/// Limit measurement probabilities from the Perron eigenvector, evaluated in
/// interval arithmetic with `bits` of precision on the eigenvalue.
pub fn perron_probabilities(m: &IntMatrix, bits: u32) -> Option<Vec<RealApprox>> {
    let v = perron_vector(m, bits)?;
    let squares: Vec<RealApprox> = v.iter().map(|x| x.pow(2)).collect();
    let total = squares.iter().fold(RealApprox::from_i64(0), |acc, x| &acc + x);
    squares.iter().map(|s| s.div(&total).ok()).collect()
}

/// Seedable generator used by the measurement simulation.
pub fn measurement_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform value in `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn sample(probs: &[f64], u: f64) -> Letter {
    let mut acc = 0.0;
    for (a, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return a as Letter;
        }
    }
    (probs.len() - 1) as Letter
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationRun {
    pub angles: AngleList,
    pub outcomes: Vec<Letter>,
    pub counts: Vec<u64>,
}

impl SimulationRun {
    /// Share of steps with each outcome.
    pub fn rates(&self) -> Vec<f64> {
        let n = self.outcomes.len().max(1) as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }
}

/// Step `k` measures the normalized `sigma^(k-1) |0>` in the letter basis and
/// advances the angle by the beta of the outcome.
pub fn quantum_spacing_simulate(sigma: &Substitution, betas: &[f64], count: usize, seed: u64) -> Result<SimulationRun> {
    let dim = sigma.alphabet().len();
    if betas.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: betas.len() });
    }
    if betas.iter().any(|b| !(0.0..TAU).contains(b)) {
        return Err(Error::OutOfRange("angle"));
    }
    if !sigma.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if !sigma.classify_pisot(PisotMode::Loose).pisot_loose {
        return Err(Error::NotPisot);
    }
    let m = sigma.incidence_matrix();
    let mut rng = measurement_rng(seed);
    let mut v = LetterVector::basis(dim, 0)?;
    let mut theta = 0.0;
    let mut angles = Vec::with_capacity(count);
    let mut outcomes = Vec::with_capacity(count);
    let mut counts = vec![0u64; dim];
    for k in 0..count {
        if k > 0 {
            v = second_kind_step(&m, &v)?.normalized().ok_or(Error::NotPrimitive)?;
        }
        let a = sample(&v.probabilities(), uniform(&mut rng));
        counts[a as usize] += 1;
        outcomes.push(a);
        theta = wrap_angle(theta + betas[a as usize]);
        angles.push(theta);
    }
    Ok(SimulationRun { angles: AngleList::new(angles)?, outcomes, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAU_G: f64 = 1.618_033_988_749_895;
    const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn word(s: &str) -> Word {
        Word::parse(&Alphabet::binary(), s).unwrap()
    }

    fn close(a: Complex64, b: f64) -> bool {
        (a.re - b).abs() < 1e-12 && a.im.abs() < 1e-12
    }

    #[test]
    fn first_kind_on_symmetric_state() {
        let fib = Substitution::fibonacci();
        let s1 = symmetric_state(&Alphabet::binary(), 1, DEFAULT_SUPPORT_CAP).unwrap();
        let once = apply_first_kind(&fib, &s1).unwrap();
        assert!(!once.renormalized);
        assert!(close(once.state.amplitude(&word("01")), FRAC_1_SQRT_2));
        assert!(close(once.state.amplitude(&word("0")), FRAC_1_SQRT_2));
        let twice = apply_first_kind(&fib, &once.state).unwrap().state;
        assert!(close(twice.amplitude(&word("010")), FRAC_1_SQRT_2));
        assert!(close(twice.amplitude(&word("01")), FRAC_1_SQRT_2));
        let b = apply_first_kind(&fib, &QuantumState::basis(&word("0"))).unwrap().state;
        assert_eq!(b.support_len(), 1);
        assert!((b.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collisions_renormalize() {
        // 0 -> 0, 1 -> 0 merges |0> and |1>
        let sigma = Substitution::from_strs(&Alphabet::binary(), &["0", "0"]).unwrap();
        let s1 = symmetric_state(&Alphabet::binary(), 1, DEFAULT_SUPPORT_CAP).unwrap();
        let out = apply_first_kind(&sigma, &s1).unwrap();
        assert!(out.renormalized);
        assert!(close(out.state.amplitude(&word("0")), 1.0));
        let empty = QuantumState::from_terms(&Alphabet::binary(), []).unwrap();
        assert_eq!(apply_first_kind(&sigma, &empty), Err(Error::EmptySupport));
    }

    #[test]
    fn symmetric_states() {
        let s2 = symmetric_state(&Alphabet::binary(), 2, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(s2.support_len(), 4);
        assert!(s2.terms().all(|(_, a)| close(a, 0.5)));
        let s3 = symmetric_state(&Alphabet::with_size(3).unwrap(), 1, DEFAULT_SUPPORT_CAP).unwrap();
        assert!(s3.terms().all(|(_, a)| close(a, 1.0 / libm::sqrt(3.0))));
        assert!(matches!(
            symmetric_state(&Alphabet::binary(), 21, DEFAULT_SUPPORT_CAP),
            Err(Error::SupportCapExceeded { .. })
        ));
    }

    #[test]
    fn complexities() {
        let ghz = QuantumState::from_terms(
            &Alphabet::binary(),
            [
                (word(&"0".repeat(20)), Complex64::new(FRAC_1_SQRT_2, 0.0)),
                (word(&"1".repeat(20)), Complex64::new(FRAC_1_SQRT_2, 0.0)),
            ],
        )
        .unwrap();
        assert!((quantum_complexity(&ghz, 5).unwrap() - 1.0).abs() < 1e-12);
        assert!(quantum_entropy_estimate(&ghz, 5).unwrap().abs() < 1e-12);
        assert_eq!(quantum_complexity(&ghz, 21), Err(Error::WordTooShort { len: 20, n: 21 }));
    }

    #[test]
    fn second_kind_examples() {
        let fib = Substitution::fibonacci().incidence_matrix();
        let v = second_kind_step(&fib, &LetterVector::basis(2, 0).unwrap()).unwrap();
        assert_eq!(v, LetterVector::from_real(&[1.0, 1.0]));
        let pell = Substitution::pell().incidence_matrix();
        let v = second_kind_step(&pell, &LetterVector::basis(2, 1).unwrap()).unwrap();
        assert_eq!(v, LetterVector::from_real(&[2.0, 1.0]));
        let lim = second_kind_limit(&fib, 0, 200, 1e-15).unwrap();
        assert!(lim.converged);
        assert!((lim.probabilities[0] - TAU_G * TAU_G / (TAU_G + 2.0)).abs() < 1e-12);
        let lim = second_kind_limit(&pell, 0, 200, 1e-15).unwrap();
        assert!((lim.probabilities[0] - 2.0 / 3.0).abs() < 1e-12);
        let exact = perron_probabilities(&pell, 100).unwrap();
        assert!(exact[0].contains(&num_rational::BigRational::new(2.into(), 3.into())));
        let diag = IntMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(second_kind_limit(&diag, 0, 10, 1e-12), Err(Error::NotPrimitive));
    }

    #[test]
    fn simulation_is_seeded() {
        let fib = Substitution::fibonacci();
        let a = quantum_spacing_simulate(&fib, &[1.0, 2.0], 500, 7).unwrap();
        let b = quantum_spacing_simulate(&fib, &[1.0, 2.0], 500, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.outcomes[0], 0);
        let c = quantum_spacing_simulate(&fib, &[1.0, 2.0], 500, 8).unwrap();
        assert_ne!(a.outcomes, c.outcomes);
        assert_eq!(
            quantum_spacing_simulate(&Substitution::thue_morse(), &[1.0, 2.0], 5, 1).map(|_| ()),
            Ok(())
        );
    }
}
