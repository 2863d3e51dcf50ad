//! Substitutions, their iterates, fixed points and Pisot classification.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::irreducible;
use crate::interval::{rat, RealApprox};
use crate::roots::{conjugate_modulus_bound, count_with_multiplicity, largest_real_root};
use crate::words::{entropy_estimate, EntropyEstimate, LetterSource, PrefixStream};
use crate::{Alphabet, Error, IntMatrix, IntPolynomial, Letter, Result, RootCount, Word};

/// A non-erasing morphism `A -> A+`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    alphabet: Alphabet,
    rules: Vec<Vec<Letter>>,
}

impl Substitution {
    /// One nonempty image per letter, in alphabet order.
    pub fn new(alphabet: &Alphabet, rules: Vec<Word>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::DimensionMismatch { expected: alphabet.len(), found: rules.len() });
        }
        let mut out = Vec::with_capacity(rules.len());
        for (a, w) in rules.into_iter().enumerate() {
            if w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            if w.is_empty() {
                return Err(Error::EmptyRule(alphabet.symbol(a as Letter).into()));
            }
            out.push(w.into_letters());
        }
        Ok(Substitution { alphabet: alphabet.clone(), rules: out })
    }

    /// Builds from token strings, e.g. `&["01", "0"]`.
    pub fn from_strs(alphabet: &Alphabet, rules: &[&str]) -> Result<Self> {
        let words = rules.iter().map(|r| Word::parse(alphabet, r)).collect::<Result<Vec<_>>>()?;
        Substitution::new(alphabet, words)
    }

    /// `0 -> 01, 1 -> 0`.
    pub fn fibonacci() -> Self {
        Substitution::from_strs(&Alphabet::binary(), &["01", "0"]).unwrap()
    }

    /// `0 -> 01, 1 -> 001`.
    pub fn pell() -> Self {
        Substitution::from_strs(&Alphabet::binary(), &["01", "001"]).unwrap()
    }

    /// `0 -> 12, 1 -> 2, 2 -> 0`.
    pub fn padovan() -> Self {
        Substitution::from_strs(&Alphabet::with_size(3).unwrap(), &["12", "2", "0"]).unwrap()
    }

    /// `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Self {
        Substitution::from_strs(&Alphabet::binary(), &["01", "10"]).unwrap()
    }

    /// Looks up one of the named substitutions above.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "fibonacci" => Some(Substitution::fibonacci()),
            "pell" => Some(Substitution::pell()),
            "padovan" => Some(Substitution::padovan()),
            "thue-morse" | "thue_morse" => Some(Substitution::thue_morse()),
            _ => None,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rule(&self, a: Letter) -> &[Letter] {
        &self.rules[a as usize]
    }

    pub fn rule_word(&self, a: Letter) -> Word {
        Word::from_trusted(&self.alphabet, self.rules[a as usize].clone())
    }

    fn check_letter(&self, a: Letter) -> Result<()> {
        if a as usize >= self.alphabet.len() {
            return Err(Error::LetterOutOfRange { letter: a as usize, size: self.alphabet.len() });
        }
        Ok(())
    }

    fn apply_letters(&self, w: &[Letter]) -> Vec<Letter> {
        let len = w.iter().map(|&a| self.rules[a as usize].len()).sum();
        let mut out = Vec::with_capacity(len);
        for &a in w {
            out.extend_from_slice(&self.rules[a as usize]);
        }
        out
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Word::from_trusted(&self.alphabet, self.apply_letters(w.letters())))
    }

    /// `sigma^k(a)`; `k = 0` gives the letter itself.
    pub fn iterate(&self, a: Letter, k: usize) -> Result<Word> {
        self.check_letter(a)?;
        let mut w = vec![a];
        for _ in 0..k {
            w = self.apply_letters(&w);
        }
        Ok(Word::from_trusted(&self.alphabet, w))
    }

    /// Letter counts of `sigma^k(a)` without building the word.
    pub fn iterate_parikh(&self, a: Letter, k: usize) -> Result<Vec<BigInt>> {
        self.check_letter(a)?;
        let m = self.incidence_matrix();
        let n = self.alphabet.len();
        let mut v = vec![BigInt::zero(); n];
        v[a as usize] = BigInt::one();
        for _ in 0..k {
            let mut next = vec![BigInt::zero(); n];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    let e = m.get(i, j);
                    if e != 0 && !vj.is_zero() {
                        *slot += vj * e;
                    }
                }
            }
            v = next;
        }
        Ok(v)
    }

    /// `|sigma^k(a)|`.
    pub fn iterate_length(&self, a: Letter, k: usize) -> Result<BigInt> {
        Ok(self.iterate_parikh(a, k)?.into_iter().sum())
    }

    /// `self` after `other`: `a -> self(other(a))`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let rules = other.rules.iter().map(|r| self.apply_letters(r)).collect();
        Ok(Substitution { alphabet: self.alphabet.clone(), rules })
    }

    /// `sigma^p` for `p >= 1`.
    pub fn power(&self, p: usize) -> Result<Substitution> {
        if p == 0 {
            return Err(Error::OutOfRange("substitution power"));
        }
        let mut acc = self.clone();
        for _ in 1..p {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Renames letter `a` to `perm[a]`, carrying the symbols along.
    pub fn relabel(&self, perm: &[Letter]) -> Result<Substitution> {
        let n = self.alphabet.len();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: perm.len() });
        }
        for &p in perm {
            if p as usize >= n || seen[p as usize] {
                return Err(Error::OutOfRange("permutation"));
            }
            seen[p as usize] = true;
        }
        let mut symbols = vec![String::new(); n];
        let mut rules = vec![Vec::new(); n];
        for a in 0..n {
            symbols[perm[a] as usize] = self.alphabet.symbols()[a].clone();
            rules[perm[a] as usize] = self.rules[a].iter().map(|&b| perm[b as usize]).collect();
        }
        Ok(Substitution { alphabet: Alphabet::new(symbols)?, rules })
    }

    /// `M[i][j] = |sigma(a_j)|_(a_i)`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let n = self.alphabet.len();
        let mut m = IntMatrix::zeros(n);
        for (j, rule) in self.rules.iter().enumerate() {
            for &i in rule {
                m.set(i as usize, j, m.get(i as usize, j) + 1);
            }
        }
        m
    }

    pub fn is_primitive(&self) -> bool {
        self.incidence_matrix().is_primitive().expect("incidence entries are nonnegative")
    }

    /// `sigma(a)` starts with `a` and is longer than one letter.
    pub fn has_fixed_point(&self, a: Letter) -> bool {
        let r = &self.rules[a as usize];
        r[0] == a && r.len() >= 2
    }

    /// Smallest `p <= |A| + 1` such that `sigma^p` has a fixed point starting
    /// with `a`.
    pub fn fixed_point_power(&self, a: Letter) -> Option<usize> {
        let mut first = a;
        for p in 1..=self.alphabet.len() + 1 {
            first = self.rules[first as usize][0];
            if first == a && self.iterate_length(a, p).ok()? >= BigInt::from(2) {
                return Some(p);
            }
        }
        None
    }

    /// The fixed point `lim sigma^k(a)` as a lazily extended stream.
    pub fn fixed_point(&self, a: Letter) -> Result<PrefixStream> {
        self.check_letter(a)?;
        if !self.has_fixed_point(a) {
            return Err(Error::NoFixedPoint {
                letter: self.alphabet.symbol(a).into(),
                suggested_power: self.fixed_point_power(a),
            });
        }
        let source = FixedPointSource { sigma: self.clone(), seed: a, next: 0 };
        Ok(PrefixStream::new(&self.alphabet, Box::new(source)))
    }

    /// First `len` letters of the fixed point starting with `a`.
    pub fn fixed_point_prefix(&self, a: Letter, len: usize) -> Result<Word> {
        Ok(self.fixed_point(a)?.prefix(len))
    }

    /// Letters with a fixed point of `sigma` itself.
    pub fn fixed_point_letters(&self) -> Vec<Letter> {
        self.alphabet.letters().filter(|&a| self.has_fixed_point(a)).collect()
    }

    /// Finite-`n` entropy: the sum of the estimates for every fixed point,
    /// each taken on a prefix of length `prefix_len`.
    ///
    /// If no letter has a fixed point, the fixed points of the smallest power
    /// `sigma^p` that has one are used instead and `power` records `p`.
    pub fn entropy_estimate(&self, n: usize, prefix_len: usize) -> Result<SubstitutionEntropy> {
        let (sigma, power) = {
            let own = self.fixed_point_letters();
            if !own.is_empty() {
                (self.clone(), None)
            } else {
                let p = self
                    .alphabet
                    .letters()
                    .filter_map(|a| self.fixed_point_power(a))
                    .min()
                    .ok_or(Error::NoFixedPoint { letter: self.alphabet.symbol(0).into(), suggested_power: None })?;
                (self.power(p)?, Some(p))
            }
        };
        let mut terms = Vec::new();
        for a in sigma.fixed_point_letters() {
            let prefix = sigma.fixed_point_prefix(a, prefix_len)?;
            terms.push((a, entropy_estimate(&prefix, n)?));
        }
        let value = terms.iter().map(|(_, e)| e.value).sum();
        Ok(SubstitutionEntropy { n, value, terms, power })
    }

    /// Spectral analysis of the incidence matrix.
    pub fn classify_pisot(&self, mode: PisotMode) -> PisotReport {
        classify(self, mode)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.alphabet.letters() {
            if a > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} -> {}", self.alphabet.symbol(a), self.rule_word(a))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Substitution({self})")
    }
}

/// Expands `u = sigma(u_0) sigma(u_1) ...` behind the cache.
struct FixedPointSource {
    sigma: Substitution,
    seed: Letter,
    next: usize,
}

impl LetterSource for FixedPointSource {
    fn extend(&mut self, cache: &mut Vec<Letter>, target: usize) {
        if cache.is_empty() {
            cache.extend_from_slice(self.sigma.rule(self.seed));
            self.next = 1;
        }
        while cache.len() < target {
            let a = cache[self.next];
            cache.extend_from_slice(self.sigma.rule(a));
            self.next += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubstitutionEntropy {
    pub n: usize,
    pub value: f64,
    pub terms: Vec<(Letter, EntropyEstimate)>,
    /// Set when the estimate used the fixed points of `sigma^p`.
    pub power: Option<usize>,
}

/// Which Pisot condition a report's verdict refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PisotMode {
    /// One simple real eigenvalue `> 1`, all others inside the unit disk.
    Loose,
    /// `Loose` plus an irreducible characteristic polynomial.
    Strict,
}

#[derive(Clone, Debug)]
pub struct PisotReport {
    pub mode: PisotMode,
    pub primitive: bool,
    pub char_poly: IntPolynomial,
    /// Interval around the Perron root.
    pub leading_eigenvalue: RealApprox,
    /// Interval around the largest modulus among the other eigenvalues.
    pub conjugate_moduli_bound: RealApprox,
    pub root_counts: RootCount,
    pub irreducible: Option<bool>,
    pub pisot_loose: bool,
    pub pisot_strict: bool,
    /// Perron eigenvector scaled to sum 1, from the adjugate of `x I - M`.
    pub frequencies: Option<Vec<RealApprox>>,
    /// Same vector from power iteration.
    pub frequencies_iterative: Vec<f64>,
    /// The two frequency computations agree to `1e-9`.
    pub frequencies_agree: bool,
}

impl PisotReport {
    pub fn is_pisot(&self) -> bool {
        match self.mode {
            PisotMode::Loose => self.pisot_loose,
            PisotMode::Strict => self.pisot_strict,
        }
    }
}

const EIGEN_BITS: u32 = 128;
const BOUND_BITS: u32 = 40;

fn classify(sigma: &Substitution, mode: PisotMode) -> PisotReport {
    let m = sigma.incidence_matrix();
    let primitive = sigma.is_primitive();
    let (char_poly, adj_terms) = m.leverrier();
    let qp = char_poly.to_qpoly();
    let root_counts = count_with_multiplicity(&qp);
    let root = largest_real_root(&char_poly).expect("nonnegative matrices have a real spectral radius");
    let lambda = root.approx(EIGEN_BITS);
    let conj = conjugate_modulus_bound(&qp, BOUND_BITS);
    let irr = irreducible(&char_poly);
    let pisot_loose = root_counts.outside == 1 && root_counts.on_circle == 0 && lambda.lower() > &rat(1);
    let pisot_strict = pisot_loose && irr == Some(true);
    let frequencies = adjugate_frequencies(&m, &adj_terms, &lambda);
    let frequencies_iterative = power_iteration(&m);
    let frequencies_agree = frequencies.as_ref().is_some_and(|f| {
        f.iter().zip(&frequencies_iterative).all(|(iv, &x)| (iv.to_f64() - x).abs() < 1e-9)
    });
    PisotReport {
        mode,
        primitive,
        char_poly,
        leading_eigenvalue: lambda,
        conjugate_moduli_bound: conj,
        root_counts,
        irreducible: irr,
        pisot_loose,
        pisot_strict,
        frequencies,
        frequencies_iterative,
        frequencies_agree,
    }
}

/// Perron eigenvector of a nonnegative matrix scaled to sum 1, evaluated from
/// the adjugate at an interval of width `2^-bits` around the Perron root.
pub fn perron_vector(m: &IntMatrix, bits: u32) -> Option<Vec<RealApprox>> {
    let (p, terms) = m.leverrier();
    let lambda = largest_real_root(&p)?.approx(bits);
    adjugate_frequencies(m, &terms, &lambda)
}

/// A nonzero column of `adj(lambda I - M)` spans the eigenspace when
/// `lambda` is simple.
fn adjugate_frequencies(m: &IntMatrix, terms: &[Vec<BigInt>], lambda: &RealApprox) -> Option<Vec<RealApprox>> {
    let n = m.dim();
    let mut pows = vec![RealApprox::from_i64(1)];
    for k in 1..n {
        pows.push(&pows[k - 1] * lambda);
    }
    let entry = |i: usize, j: usize| -> RealApprox {
        let mut acc = RealApprox::from_i64(0);
        for (k, t) in terms.iter().enumerate() {
            let c = &t[i * n + j];
            if !c.is_zero() {
                acc = &acc + &pows[n - 1 - k].scale(&BigRational::from_integer(c.clone()));
            }
        }
        acc
    };
    let mut best: Option<(BigRational, Vec<RealApprox>)> = None;
    for j in 0..n {
        let mut col: Vec<RealApprox> = (0..n).map(|i| entry(i, j)).collect();
        if col.iter().all(|v| v.upper().is_negative()) {
            col = col.iter().map(|v| -v).collect();
        }
        if !col.iter().all(RealApprox::is_positive) {
            continue;
        }
        let min = col.iter().map(|v| v.lower().clone()).min().unwrap();
        if best.as_ref().is_none_or(|(b, _)| &min > b) {
            best = Some((min, col));
        }
    }
    let (_, col) = best?;
    let total = col.iter().fold(RealApprox::from_i64(0), |acc, v| &acc + v);
    col.iter().map(|v| v.div(&total).ok()).collect()
}

/// Power iteration on `M + I`, normalized to sum 1.
fn power_iteration(m: &IntMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..100_000 {
        let mut w = v.clone();
        for (i, wi) in w.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                *wi += m.get(i, j) as f64 * vj;
            }
        }
        let s: f64 = w.iter().sum();
        if s <= 0.0 {
            return v;
        }
        w.iter_mut().for_each(|x| *x /= s);
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < 1e-16 {
            break;
        }
    }
    v
}
