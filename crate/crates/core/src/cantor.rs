//! Numeric values of words, base changes and generalized Cantor functions.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::interval::RealApprox;
use crate::{Alphabet, Error, Letter, Result, Word};

fn base(alphabet: &Alphabet) -> BigRational {
    BigRational::from_integer(BigInt::from(alphabet.len()))
}

fn value_in_base(letters: impl Iterator<Item = u64>, b: u64) -> BigRational {
    let b = BigInt::from(b);
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for d in letters {
        num = num * &b + d;
        den *= &b;
    }
    BigRational::new(num, den)
}

/// `sum_n lex(x_n) / |A|^n` over the word.
///
/// Any infinite continuation has a value in `[result, result + |A|^-|w|]`.
pub fn numeric_value(prefix: &Word) -> Result<BigRational> {
    if prefix.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(value_in_base(prefix.letters().iter().map(|&l| l as u64), prefix.alphabet().len() as u64))
}

/// Value of the infinite word `prefix t t t ...`.
pub fn constant_tail_value(prefix: &Word, tail: Letter) -> Result<BigRational> {
    let a = prefix.alphabet();
    if tail as usize >= a.len() {
        return Err(Error::LetterOutOfRange { letter: tail as usize, size: a.len() });
    }
    let b = base(a);
    let head = if prefix.is_empty() { BigRational::zero() } else { numeric_value(prefix)? };
    let scale = num_traits::pow(b.clone(), prefix.len()).recip();
    let tail_value = BigRational::from_integer(BigInt::from(tail)) / (b - BigRational::one());
    Ok(head + tail_value * scale)
}

/// First `digits` letters of the expansion of `q` in base `|A|`, choosing the
/// nonterminating expansion when two exist.
pub fn representation(alphabet: &Alphabet, q: &BigRational, digits: usize) -> Result<Word> {
    if q.is_negative() || q > &BigRational::one() {
        return Err(Error::OutOfRange("value"));
    }
    let b = base(alphabet);
    let mut q = q.clone();
    let mut out = Vec::with_capacity(digits);
    for _ in 0..digits {
        if q.is_zero() {
            out.push(0);
            continue;
        }
        let scaled = &q * &b;
        let d = scaled.ceil() - BigRational::one();
        q = scaled - &d;
        out.push(d.to_integer().try_into().expect("digit fits in a letter"));
    }
    Word::new(alphabet, out)
}

/// Result of re-expanding a value in another alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub word: Word,
    /// The source prefix pins its value down to within this bound.
    pub truncation_bound: BigRational,
}

/// Reads `prefix` as a number and expands it over `target`.
pub fn alphabet_transition(prefix: &Word, target: &Alphabet, digits: usize) -> Result<Transition> {
    let v = numeric_value(prefix)?;
    let bound = num_traits::pow(base(prefix.alphabet()), prefix.len()).recip();
    Ok(Transition { word: representation(target, &v, digits)?, truncation_bound: bound })
}

/// The alphabet `A` together with a letter excluded from the expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorSpec {
    alphabet: Alphabet,
    excluded: Letter,
}

impl CantorSpec {
    pub fn new(alphabet: &Alphabet, excluded: Letter) -> Result<Self> {
        if excluded as usize >= alphabet.len() {
            return Err(Error::LetterOutOfRange { letter: excluded as usize, size: alphabet.len() });
        }
        Ok(CantorSpec { alphabet: alphabet.clone(), excluded })
    }

    /// Ternary alphabet without the middle letter.
    pub fn middle_third() -> Self {
        CantorSpec::new(&Alphabet::with_size(3).unwrap(), 1).unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn excluded(&self) -> Letter {
        self.excluded
    }

    /// `|B| = |A| - 1`.
    pub fn kept(&self) -> usize {
        self.alphabet.len() - 1
    }

    fn lex_b(&self, l: Letter) -> u64 {
        (l - u8::from(l > self.excluded)) as u64
    }

    fn check_interior(&self) -> Result<()> {
        if self.excluded == 0 || self.excluded as usize >= self.alphabet.len() - 1 {
            return Err(Error::OutOfRange("excluded letter"));
        }
        Ok(())
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        if w.letters().contains(&self.excluded) {
            return Err(Error::ExcludedLetter);
        }
        Ok(())
    }

    /// `v_B(w)`: the word read in base `|B|` after dropping the excluded letter.
    pub fn value_b(&self, w: &Word) -> Result<BigRational> {
        self.check_word(w)?;
        Ok(value_in_base(w.letters().iter().map(|&l| self.lex_b(l)), self.kept() as u64))
    }

    /// True if no letter of `w` is the excluded one.
    pub fn is_member_prefix(&self, w: &Word) -> bool {
        !w.letters().contains(&self.excluded)
    }
}

/// `log(|A| - 1) / log |A|`.
pub fn hausdorff_dimension(spec: &CantorSpec) -> Result<RealApprox> {
    let n = spec.alphabet.len();
    if n < 3 {
        return Err(Error::OutOfRange("alphabet size"));
    }
    let v = libm::log((n - 1) as f64) / libm::log(n as f64);
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 48u32);
    let mid = BigRational::from_float(v).expect("finite");
    Ok(RealApprox::new(&mid - &eps, &mid + &eps))
}

/// `f(w) = v_B(w) + |B|^-|w|` for a word avoiding the excluded letter, which
/// must be neither the first nor the last letter of `A`.
pub fn cantor_function_value(spec: &CantorSpec, w: &Word) -> Result<BigRational> {
    spec.check_interior()?;
    let v = spec.value_b(w)?;
    let step = num_traits::pow(BigRational::from_integer(BigInt::from(spec.kept())), w.len()).recip();
    Ok(v + step)
}

/// Value of the staircase function on the reals encoded by an `A`-word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StaircaseValue {
    /// The word enters a removed interval, where the function is constant.
    Plateau(BigRational),
    /// The word stays in the Cantor set so far; the value lies in `[lo, hi]`.
    Bounds(BigRational, BigRational),
}

/// Evaluates the Cantor staircase on an arbitrary nonempty `A`-word.
pub fn cantor_staircase(spec: &CantorSpec, w: &Word) -> Result<StaircaseValue> {
    spec.check_interior()?;
    if w.alphabet() != &spec.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    match w.letters().iter().position(|&l| l == spec.excluded) {
        Some(i) => {
            let mut head = w.letters()[..i].to_vec();
            head.push(spec.excluded - 1);
            let u = Word::new(&spec.alphabet, head)?;
            Ok(StaircaseValue::Plateau(cantor_function_value(spec, &u)?))
        }
        None => Ok(StaircaseValue::Bounds(spec.value_b(w)?, cantor_function_value(spec, w)?)),
    }
}

/// Staircase value at a rational point, via its first `digits` letters.
pub fn cantor_function_at(spec: &CantorSpec, q: &BigRational, digits: usize) -> Result<StaircaseValue> {
    cantor_staircase(spec, &representation(&spec.alphabet, q, digits)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn word(size: usize, s: &str) -> Word {
        Word::parse(&Alphabet::with_size(size).unwrap(), s).unwrap()
    }

    #[test]
    fn values() {
        assert_eq!(numeric_value(&word(2, "1")).unwrap(), r(1, 2));
        assert_eq!(numeric_value(&word(10, "2,5")).unwrap(), r(1, 4));
        assert_eq!(numeric_value(&word(3, "202")).unwrap(), r(20, 27));
        assert_eq!(numeric_value(&Word::empty(&Alphabet::binary())), Err(Error::EmptyWord));
    }

    #[test]
    fn nonterminating_expansions() {
        let bin = Alphabet::binary();
        let dec = Alphabet::with_size(10).unwrap();
        assert_eq!(representation(&bin, &r(1, 2), 4).unwrap(), word(2, "0111"));
        assert_eq!(representation(&dec, &r(1, 5), 3).unwrap(), word(10, "1,9,9"));
        assert_eq!(representation(&bin, &r(0, 1), 3).unwrap(), word(2, "000"));
        assert_eq!(representation(&bin, &r(1, 1), 3).unwrap(), word(2, "111"));
        assert!(representation(&bin, &r(3, 2), 3).is_err());
    }

    #[test]
    fn transitions() {
        let t = alphabet_transition(&word(2, "1"), &Alphabet::with_size(3).unwrap(), 3).unwrap();
        assert_eq!(t.word, word(3, "111"));
        assert_eq!(t.truncation_bound, r(1, 2));
    }

    #[test]
    fn non_injectivity() {
        // w a_i a_max a_max ... and w a_(i+1) a_0 a_0 ... share a value
        for (head, i) in [("", 0u8), ("12", 1), ("0", 2)] {
            let mut lo = word(4, head).into_letters();
            let mut hi = lo.clone();
            lo.push(i);
            hi.push(i + 1);
            let a = Alphabet::with_size(4).unwrap();
            let lo = constant_tail_value(&Word::new(&a, lo).unwrap(), 3).unwrap();
            let hi = constant_tail_value(&Word::new(&a, hi).unwrap(), 0).unwrap();
            assert_eq!(lo, hi);
        }
    }

    #[test]
    fn middle_third() {
        let spec = CantorSpec::middle_third();
        let d = hausdorff_dimension(&spec).unwrap();
        assert!((d.to_f64() - libm::log(2.0) / libm::log(3.0)).abs() < 1e-12);
        assert_eq!(cantor_function_value(&spec, &word(3, "0")).unwrap(), r(1, 2));
        assert_eq!(cantor_function_value(&spec, &word(3, "00")).unwrap(), r(1, 4));
        assert_eq!(cantor_function_value(&spec, &word(3, "1")), Err(Error::ExcludedLetter));
        for w in ["1", "10", "12", "111", "1202"] {
            assert_eq!(cantor_staircase(&spec, &word(3, w)).unwrap(), StaircaseValue::Plateau(r(1, 2)));
        }
        assert_eq!(cantor_staircase(&spec, &word(3, "21")).unwrap(), StaircaseValue::Plateau(r(3, 4)));
        let edge = CantorSpec::new(&Alphabet::with_size(3).unwrap(), 0).unwrap();
        assert!(cantor_function_value(&edge, &word(3, "1")).is_err());
        assert!(hausdorff_dimension(&CantorSpec::new(&Alphabet::binary(), 1).unwrap()).is_err());
    }
}
