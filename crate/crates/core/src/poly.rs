//! Integer and rational univariate polynomials (constant term first).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Integer polynomial with nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from coefficients, constant term first. Trailing
    /// zeros are dropped; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - k`.
    pub fn linear(k: i64) -> Self {
        IntPolynomial::from_i64(&[-k, 1]).expect("nonzero")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.to_qpoly().eval(x)
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Cauchy root bound `1 + max |a_i / a_n|`, rounded up to an integer.
    pub fn cauchy_bound(&self) -> BigInt {
        let lc = self.leading().abs();
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs().div_ceil(&lc))
            .max()
            .unwrap_or_else(BigInt::zero);
        m + 1
    }

    pub fn derivative(&self) -> Option<IntPolynomial> {
        let d: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::new(d).ok()
    }

    /// True when `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> bool {
        self.to_qpoly().is_squarefree()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Polynomial over the rationals. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: BigRational) -> Self {
        QPoly::from_coeffs(vec![-r, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign(&self.eval(x))
    }

    pub fn sign_at_pos_inf(&self) -> i32 {
        sign(&self.lc())
    }

    pub fn sign_at_neg_inf(&self) -> i32 {
        let s = sign(&self.lc());
        if self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    /// Euclidean division: `self = quot * d + rem` with `deg rem < deg d`.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lc_inv = d.lc().recip();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, d: &QPoly) -> QPoly {
        let (quot, rem) = self.div_rem(d);
        debug_assert!(rem.is_zero());
        quot
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Positive rational multiple with coprime integer coefficients.
    ///
    /// The sign of every value is preserved, so the result can stand in for
    /// `self` in sign-variation counts.
    pub fn primitive_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        QPoly::from_coeffs(ints.into_iter().map(|c| BigRational::from_integer(c / &g)).collect())
    }

    /// Integer polynomial proportional to `self` with positive content removed.
    pub fn to_int_primitive(&self) -> Option<IntPolynomial> {
        let p = self.primitive_part();
        IntPolynomial::new(p.coeffs.iter().map(|c| c.to_integer()).collect()).ok()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// `gcd(p, p')`-free part with the same roots.
    pub fn squarefree_part(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Yun's algorithm: `self = c * prod f_i^i` with squarefree, pairwise
    /// coprime monic `f_i`. Returns the nonconstant `(f_i, i)`.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            if b.degree() == 0 {
                break;
            }
            c = d.div_exact(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// `z^n p(1/z)` for `n = deg p`: the coefficient list reversed.
    pub fn reversed(&self) -> QPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        QPoly::from_coeffs(c)
    }

    /// `p(r z)`.
    pub fn scale_argument(&self, r: &BigRational) -> QPoly {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= r;
        }
        QPoly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| alloc::format!("{c}")).collect();
        write!(f, "QPoly[{}]", parts.join(", "))
    }
}

/// Signed remainder (Sturm) sequence `f0, f1, -rem(f0, f1), ...`.
///
/// Every entry is replaced by its positive primitive multiple, which keeps
/// coefficients small and leaves sign-variation counts unchanged.
pub fn sturm_sequence(f0: &QPoly, f1: &QPoly) -> Vec<QPoly> {
    let mut seq = Vec::new();
    if f0.is_zero() {
        return seq;
    }
    seq.push(f0.primitive_part());
    if f1.is_zero() {
        return seq;
    }
    seq.push(f1.primitive_part());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push((-&r).primitive_part());
    }
    seq
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign variations of a Sturm sequence at a point.
pub fn variations_at(seq: &[QPoly], x: &BigRational) -> usize {
    variations(seq.iter().map(|p| p.sign_at(x)))
}

pub fn variations_at_pos_inf(seq: &[QPoly]) -> usize {
    variations(seq.iter().map(QPoly::sign_at_pos_inf))
}

pub fn variations_at_neg_inf(seq: &[QPoly]) -> usize {
    variations(seq.iter().map(QPoly::sign_at_neg_inf))
}

/// Sturm sequence of a polynomial and its derivative, for real-root counting.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<QPoly>,
}

impl SturmChain {
    /// `p` must be squarefree and nonzero.
    pub fn new(p: &QPoly) -> Self {
        SturmChain { seq: sturm_sequence(p, &p.derivative()) }
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        variations_at(&self.seq, a).saturating_sub(variations_at(&self.seq, b))
    }

    /// Number of distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        variations_at(&self.seq, a).saturating_sub(variations_at_pos_inf(&self.seq))
    }

    pub fn count_real(&self) -> usize {
        variations_at_neg_inf(&self.seq).saturating_sub(variations_at_pos_inf(&self.seq))
    }
}

/// Positive divisors of `n > 0` by trial division. Callers keep `n` small.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    out.extend(small);
    out.extend(large.into_iter().rev());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn display_is_readable() {
        let f = IntPolynomial::from_i64(&[-1, -1, 1]).unwrap();
        assert_eq!(alloc::format!("{f}"), "x^2 - x - 1");
        let g = IntPolynomial::from_i64(&[1, 0, -3, 2]).unwrap();
        assert_eq!(alloc::format!("{g}"), "2x^3 - 3x^2 + 1");
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(IntPolynomial::from_i64(&[0, 0]), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn division_and_gcd() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (quo, rem) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(quo, p(&[2, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn yun_decomposition() {
        // x (x - 1)^2 (x + 1)^3
        let f = &(&p(&[0, 1]) * &p(&[-1, 1]).pow(2)) * &p(&[1, 1]).pow(3);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, alloc::vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[1, 1]), 3)]);
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), &(&p(&[0, 1]) * &p(&[-1, 1])) * &p(&[1, 1]));
    }

    #[test]
    fn sturm_counts_real_roots() {
        // (x - 1)(x - 2)(x + 5)(x^2 + 1)
        let f = &(&(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[5, 1])) * &p(&[1, 0, 1]);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_real(), 3);
        assert_eq!(chain.count_in(&q(0), &q(2)), 2);
        assert_eq!(chain.count_in(&q(1), &q(2)), 1);
        assert_eq!(chain.count_above(&q(-10)), 3);
    }

    #[test]
    fn cauchy_bound_dominates_roots() {
        let f = IntPolynomial::from_i64(&[-6, 1, 1]).unwrap(); // roots 2, -3
        assert!(f.cauchy_bound() > BigInt::from(3));
    }
}
