//! Alphabets, finite words, factor languages and subword complexity.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::automaton::FactorAutomaton;
use crate::{Error, Result};

/// Index of a symbol in its alphabet (its lexicographic rank).
pub type Letter = u8;

/// Ordered list of distinct printable tokens.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 || symbols.len() > 256 {
            return Err(Error::AlphabetSize(symbols.len()));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if s.is_empty() || s.chars().any(|c| c == ',' || c == '"' || c.is_whitespace() || c.is_control()) {
                return Err(Error::InvalidSymbol(s.clone()));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet(symbols.into()))
    }

    /// The alphabet `{0, 1, .., n-1}` written in decimal.
    pub fn with_size(n: usize) -> Result<Self> {
        Alphabet::new((0..n).map(|i| i.to_string()))
    }

    pub fn binary() -> Self {
        Alphabet::with_size(2).expect("two symbols")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.0[letter as usize]
    }

    /// Lexicographic index of `token`.
    pub fn lex(&self, token: &str) -> Option<Letter> {
        self.0.iter().position(|s| s == token).map(|i| i as Letter)
    }

    /// All tokens are one character long, so words print without separators.
    pub fn single_char(&self) -> bool {
        self.0.iter().all(|s| s.chars().count() == 1)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(|l| l as Letter)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A finite word over an [`Alphabet`].
///
/// The empty word is representable; operations defined on nonempty words
/// reject it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(alphabet: &Alphabet, letters: Vec<Letter>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.len()) {
            return Err(Error::LetterOutOfRange { letter: bad as usize, size: alphabet.len() });
        }
        Ok(Word { letters, alphabet: alphabet.clone() })
    }

    pub(crate) fn from_trusted(alphabet: &Alphabet, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.len()));
        Word { letters, alphabet: alphabet.clone() }
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Word { letters: Vec::new(), alphabet: alphabet.clone() }
    }

    pub fn single(alphabet: &Alphabet, letter: Letter) -> Result<Self> {
        Word::new(alphabet, alloc::vec![letter])
    }

    /// Parses tokens concatenated without separators (single-character
    /// alphabets) or separated by commas.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut letters = Vec::new();
        if text.is_empty() {
            return Ok(Word::empty(alphabet));
        }
        if alphabet.single_char() && !text.contains(',') {
            let mut buf = [0u8; 4];
            for c in text.chars() {
                let tok: &str = c.encode_utf8(&mut buf);
                letters.push(alphabet.lex(tok).ok_or_else(|| Error::UnknownToken(tok.to_string()))?);
            }
        } else {
            for tok in text.split(',') {
                let tok = tok.trim();
                letters.push(alphabet.lex(tok).ok_or_else(|| Error::UnknownToken(tok.to_string()))?);
            }
        }
        Ok(Word { letters, alphabet: alphabet.clone() })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn prefix(&self, n: usize) -> Word {
        let n = n.min(self.len());
        Word { letters: self.letters[..n].to_vec(), alphabet: self.alphabet.clone() }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word { letters, alphabet: self.alphabet.clone() })
    }

    /// Number of (possibly overlapping) occurrences of `needle`.
    pub fn occurrences(&self, needle: &Word) -> Result<usize> {
        if self.alphabet != needle.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if needle.is_empty() {
            return Err(Error::EmptyNeedle);
        }
        Ok(self.letters.windows(needle.len()).filter(|w| *w == needle.letters()).count())
    }

    /// Occurrences of a single letter.
    pub fn count_letter(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    /// Per-letter occurrence counts, indexed by letter.
    pub fn parikh(&self) -> Vec<u64> {
        let mut counts = alloc::vec![0u64; self.alphabet.len()];
        for &l in &self.letters {
            counts[l as usize] += 1;
        }
        counts
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet && self.letters.starts_with(&other.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.alphabet.single_char() { "" } else { "," };
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(self.alphabet.symbol(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Source of letters for a [`PrefixStream`].
pub trait LetterSource: Send + Sync {
    /// Appends letters to `cache` until it holds at least `target` of them.
    ///
    /// `cache` holds every letter produced so far, in order.
    fn extend(&mut self, cache: &mut Vec<Letter>, target: usize);
}

struct FnSource<F>(F);

impl<F> LetterSource for FnSource<F>
where
    F: FnMut(usize) -> Letter + Send + Sync,
{
    fn extend(&mut self, cache: &mut Vec<Letter>, target: usize) {
        while cache.len() < target {
            let next = (self.0)(cache.len());
            cache.push(next);
        }
    }
}

/// Lazily materialized prefix of an infinite sequence.
///
/// Asking for a prefix of length `L` always yields the same `L` letters.
pub struct PrefixStream {
    alphabet: Alphabet,
    source: Box<dyn LetterSource>,
    cache: Vec<Letter>,
}

impl PrefixStream {
    pub fn new(alphabet: &Alphabet, source: Box<dyn LetterSource>) -> Self {
        PrefixStream { alphabet: alphabet.clone(), source, cache: Vec::new() }
    }

    /// Stream whose `n`-th letter (0-based) is `f(n)`. Letters must be valid for `alphabet`.
    pub fn from_fn<F>(alphabet: &Alphabet, f: F) -> Self
    where
        F: FnMut(usize) -> Letter + Send + Sync + 'static,
    {
        PrefixStream::new(alphabet, Box::new(FnSource(f)))
    }

    /// The purely periodic sequence `w w w ...`.
    pub fn periodic(word: &Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let period = word.letters().to_vec();
        Ok(PrefixStream::from_fn(word.alphabet(), move |n| period[n % period.len()]))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cached_len(&self) -> usize {
        self.cache.len()
    }

    /// Letters materialized so far, without extending.
    pub fn cached(&self) -> &[Letter] {
        &self.cache
    }

    fn fill(&mut self, len: usize) {
        if self.cache.len() < len {
            self.source.extend(&mut self.cache, len);
            debug_assert!(self.cache.len() >= len);
        }
    }

    /// The first `len` letters.
    pub fn prefix(&mut self, len: usize) -> Word {
        self.fill(len);
        Word::from_trusted(&self.alphabet, self.cache[..len].to_vec())
    }

    /// Letter at 0-based position `index`.
    pub fn letter(&mut self, index: usize) -> Letter {
        self.fill(index + 1);
        self.cache[index]
    }

    /// Materialized letters, as a borrowed slice of at least `len` letters.
    pub fn slice(&mut self, len: usize) -> &[Letter] {
        self.fill(len);
        &self.cache[..len]
    }
}

impl fmt::Debug for PrefixStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrefixStream")
            .field("alphabet", &self.alphabet)
            .field("cached", &self.cache.len())
            .finish()
    }
}

/// `log_base(x)`, using the dedicated routines for bases 2 and 10.
pub(crate) fn log_base(x: f64, base: usize) -> f64 {
    match base {
        2 => libm::log2(x),
        10 => libm::log10(x),
        b => libm::log(x) / libm::log(b as f64),
    }
}

/// Finite-`n` topological entropy estimate `log_|A|(p_n) / n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyEstimate {
    pub n: usize,
    pub value: f64,
    /// `|A|^n` exceeds the number of length-`n` windows, so `p_n` cannot reach
    /// its maximum and the value is only a lower bound of the window-limited
    /// estimate.
    pub truncated: bool,
}

fn windows_saturate(alphabet_size: usize, n: usize, windows: usize) -> bool {
    // true when |A|^n > windows
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(alphabet_size as u128);
        if acc > windows as u128 {
            return true;
        }
    }
    false
}

/// Distinct-factor counts `p_1..p_N` of a finite prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    pub prefix_length: usize,
    pub alphabet_size: usize,
    /// `values[n - 1] = p_n`.
    pub values: Vec<u64>,
}

impl ComplexityProfile {
    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn entropy(&self, n: usize) -> Option<EntropyEstimate> {
        let p = self.get(n)?;
        Some(EntropyEstimate {
            n,
            value: log_base(p as f64, self.alphabet_size) / n as f64,
            truncated: windows_saturate(self.alphabet_size, n, self.prefix_length + 1 - n),
        })
    }

    /// `p_n == n + 1`.
    pub fn is_sturmian_at(&self, n: usize) -> bool {
        self.get(n) == Some(n as u64 + 1)
    }
}

fn check_range(prefix: &Word, n: usize) -> Result<()> {
    if n == 0 || n > prefix.len() {
        return Err(Error::LengthOutOfRange { n, len: prefix.len() });
    }
    Ok(())
}

/// The set of distinct length-`n` factors of `prefix`.
pub fn factors(prefix: &Word, n: usize) -> Result<BTreeSet<Word>> {
    check_range(prefix, n)?;
    let set: BTreeSet<&[Letter]> = prefix.letters().windows(n).collect();
    Ok(set
        .into_iter()
        .map(|w| Word::from_trusted(prefix.alphabet(), w.to_vec()))
        .collect())
}

/// `p_n`, the number of distinct length-`n` factors of `prefix`.
pub fn complexity(prefix: &Word, n: usize) -> Result<u64> {
    check_range(prefix, n)?;
    let sa = FactorAutomaton::build(prefix.letters());
    Ok(sa.distinct_counts(n)[n - 1])
}

/// `p_1..p_{n_max}` in one pass over a suffix automaton.
pub fn complexity_profile(prefix: &Word, n_max: usize) -> Result<ComplexityProfile> {
    check_range(prefix, n_max)?;
    let sa = FactorAutomaton::build(prefix.letters());
    Ok(ComplexityProfile {
        prefix_length: prefix.len(),
        alphabet_size: prefix.alphabet().len(),
        values: sa.distinct_counts(n_max),
    })
}

pub fn entropy_estimate(prefix: &Word, n: usize) -> Result<EntropyEstimate> {
    let profile = complexity_profile(prefix, n)?;
    Ok(profile.entropy(n).expect("n within profile"))
}

/// Letter frequencies of `prefix` as exact fractions summing to one.
pub fn empirical_frequencies(prefix: &Word) -> Result<Vec<Ratio<u64>>> {
    if prefix.is_empty() {
        return Err(Error::EmptyWord);
    }
    let total = prefix.len() as u64;
    Ok(prefix.parikh().into_iter().map(|c| Ratio::new(c, total)).collect())
}

/// Frequencies of every length-`n` factor among the `|prefix| - n + 1` windows.
pub fn factor_frequencies(prefix: &Word, n: usize) -> Result<BTreeMap<Word, Ratio<u64>>> {
    check_range(prefix, n)?;
    let windows = (prefix.len() - n + 1) as u64;
    let mut counts: BTreeMap<&[Letter], u64> = BTreeMap::new();
    for w in prefix.letters().windows(n) {
        *counts.entry(w).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(w, c)| (Word::from_trusted(prefix.alphabet(), w.to_vec()), Ratio::new(c, windows)))
        .collect())
}

/// True iff `p_n = n + 1` for every `1 <= n <= max_n`.
///
/// Needs `|prefix| >= 2 * max_n` so window counts are not truncation artifacts.
pub fn sturmian_check(prefix: &Word, max_n: usize) -> Result<bool> {
    if max_n == 0 {
        return Err(Error::LengthOutOfRange { n: 0, len: prefix.len() });
    }
    if prefix.len() < 2 * max_n {
        return Err(Error::PrefixTooShort { needed: 2 * max_n, actual: prefix.len() });
    }
    let profile = complexity_profile(prefix, max_n)?;
    Ok((1..=max_n).all(|n| profile.is_sturmian_at(n)))
}

/// Smallest `n <= |prefix| / 2` with `p_n <= n`, if any.
///
/// For `n` up to half the prefix length there are more than `n` windows, so a
/// hit is not forced by truncation and signals a prefix consistent with an
/// ultimately periodic sequence.
pub fn morse_hedlund_witness(prefix: &Word) -> Option<usize> {
    let max_n = prefix.len() / 2;
    if max_n == 0 {
        return None;
    }
    let profile = complexity_profile(prefix, max_n).ok()?;
    (1..=max_n).find(|&n| profile.get(n).unwrap() <= n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bin(s: &str) -> Word {
        Word::parse(&Alphabet::binary(), s).unwrap()
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(Alphabet::new(["0"]).unwrap_err(), Error::AlphabetSize(1));
        assert!(matches!(Alphabet::new(["a", "a"]), Err(Error::DuplicateSymbol(_))));
        assert!(matches!(Alphabet::new(["a", "b,c"]), Err(Error::InvalidSymbol(_))));
        let ab = Alphabet::new(["x", "y", "z"]).unwrap();
        assert_eq!(ab.lex("z"), Some(2));
        assert!(ab.single_char());
        assert!(!Alphabet::with_size(11).unwrap().single_char());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(bin("01").concat(&bin("0")).unwrap(), bin("010"));
        let w = bin("0110");
        assert_eq!(w.concat(&Word::empty(&Alphabet::binary())).unwrap(), w);
        assert_eq!(bin("0").concat(&bin("01001")).unwrap(), bin("001001"));
        let other = Word::parse(&Alphabet::new(["a", "b"]).unwrap(), "ab").unwrap();
        assert_eq!(bin("0").concat(&other), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(bin("01001").occurrences(&bin("0")).unwrap(), 3);
        assert_eq!(bin("01001").occurrences(&bin("01001")).unwrap(), 1);
        assert_eq!(bin("0000").occurrences(&bin("00")).unwrap(), 3);
        assert_eq!(bin("01").occurrences(&bin("")), Err(Error::EmptyNeedle));
    }

    #[test]
    fn factor_examples() {
        let f: Vec<Word> = factors(&bin("010"), 2).unwrap().into_iter().collect();
        assert_eq!(f, vec![bin("01"), bin("10")]);
        assert_eq!(factors(&bin("000"), 1).unwrap().len(), 1);
        let f3 = factors(&bin("01001"), 3).unwrap();
        assert_eq!(f3, [bin("010"), bin("100"), bin("001")].into_iter().collect());
        assert!(factors(&bin("01"), 3).is_err());
        assert!(factors(&bin("01"), 0).is_err());
    }

    #[test]
    fn constant_word_has_complexity_one_and_zero_entropy() {
        let w = bin(&"0".repeat(64));
        for n in 1..=20 {
            assert_eq!(complexity(&w, n).unwrap(), 1);
        }
        assert_eq!(entropy_estimate(&w, 10).unwrap().value, 0.0);
    }

    #[test]
    fn full_binary_factor_set_gives_entropy_one() {
        // de Bruijn sequence B(2, 10) followed by its first 9 letters, so every
        // length-10 window is distinct and all 1024 words appear.
        let k = 10;
        let mut seq = Vec::new();
        let mut a = vec![0u8; 2 * k];
        fn db(t: usize, p: usize, k: usize, a: &mut Vec<u8>, seq: &mut Vec<u8>) {
            if t > k {
                if k % p == 0 {
                    seq.extend_from_slice(&a[1..=p]);
                }
            } else {
                a[t] = a[t - p];
                db(t + 1, p, k, a, seq);
                for j in (a[t - p] + 1)..2 {
                    a[t] = j;
                    db(t + 1, t, k, a, seq);
                }
            }
        }
        db(1, 1, k, &mut a, &mut seq);
        let head: Vec<u8> = seq[..k - 1].to_vec();
        seq.extend(head);
        let w = Word::new(&Alphabet::binary(), seq).unwrap();
        assert_eq!(complexity(&w, 1).unwrap(), 2);
        assert_eq!(complexity(&w, 10).unwrap(), 1024);
        let e = entropy_estimate(&w, 10).unwrap();
        assert_eq!(e.value, 1.0);
        assert!(!e.truncated);
    }

    #[test]
    fn frequencies_are_exact() {
        let f = empirical_frequencies(&bin("01001")).unwrap();
        assert_eq!(f, vec![Ratio::new(3, 5), Ratio::new(2, 5)]);
        let f = empirical_frequencies(&bin("0101")).unwrap();
        assert_eq!(f, vec![Ratio::new(1, 2), Ratio::new(1, 2)]);
        assert_eq!(empirical_frequencies(&bin("")), Err(Error::EmptyWord));
    }

    #[test]
    fn morse_hedlund_examples() {
        assert_eq!(morse_hedlund_witness(&bin(&"01".repeat(50))), Some(2));
        assert_eq!(morse_hedlund_witness(&bin(&"0001".repeat(25))), Some(4));
        assert_eq!(morse_hedlund_witness(&bin("0")), None);
        assert_eq!(morse_hedlund_witness(&bin(&"0".repeat(10))), Some(1));
    }

    #[test]
    fn sturmian_check_needs_long_prefix() {
        assert!(matches!(sturmian_check(&bin("0101"), 3), Err(Error::PrefixTooShort { .. })));
        assert!(!sturmian_check(&bin("00"), 1).unwrap());
    }

    #[test]
    fn multi_char_tokens_use_commas() {
        let ab = Alphabet::with_size(12).unwrap();
        let w = Word::parse(&ab, "0,11,3").unwrap();
        assert_eq!(w.letters(), &[0, 11, 3]);
        assert_eq!(alloc::format!("{w}"), "0,11,3");
    }

    #[test]
    fn prefix_stream_is_deterministic() {
        let mut s = PrefixStream::periodic(&bin("001")).unwrap();
        let a = s.prefix(7);
        let b = s.prefix(4);
        assert_eq!(a, bin("0010010"));
        assert_eq!(b, a.prefix(4));
        assert_eq!(s.letter(8), 1);
    }
}
