//! Closed rational intervals with outward rounding.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// A real number known to lie in `[lower, upper]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealApprox {
    lo: BigRational,
    hi: BigRational,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

impl RealApprox {
    /// Panics if `lower > upper`.
    pub fn new(lower: BigRational, upper: BigRational) -> Self {
        assert!(lower <= upper, "interval endpoints out of order");
        RealApprox { lo: lower, hi: upper }
    }

    pub fn exact(x: BigRational) -> Self {
        RealApprox { lo: x.clone(), hi: x }
    }

    pub fn from_i64(x: i64) -> Self {
        RealApprox::exact(rat(x))
    }

    /// The exact value of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(RealApprox::exact)
    }

    pub fn lower(&self) -> &BigRational {
        &self.lo
    }

    pub fn upper(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Containment test for a float, exact in the float's value.
    pub fn contains_f64(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|q| self.contains(&q))
    }

    pub fn overlaps(&self, other: &RealApprox) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Nearest f64 to the midpoint.
    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn lower_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn upper_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    /// Widens both endpoints to multiples of `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> RealApprox {
        let scale = BigRational::from_integer(pow2(bits));
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        RealApprox { lo, hi }
    }

    pub fn abs(&self) -> RealApprox {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = (-&self.lo).max(self.hi.clone());
            RealApprox { lo: BigRational::zero(), hi: m }
        } else if self.hi.is_positive() || self.hi.is_zero() && !self.lo.is_negative() {
            self.clone()
        } else {
            -self
        }
    }

    /// Integer power; even powers of intervals straddling zero start at zero.
    pub fn pow(&self, e: u32) -> RealApprox {
        if e == 0 {
            return RealApprox::from_i64(1);
        }
        let a = num_traits::pow(self.lo.clone(), e as usize);
        let b = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 {
            RealApprox { lo: a, hi: b }
        } else if self.contains_zero() {
            RealApprox { lo: BigRational::zero(), hi: a.max(b) }
        } else {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            RealApprox { lo, hi }
        }
    }

    /// Power with endpoint rounding to `2^-bits` after every squaring, which
    /// keeps denominators bounded for large exponents. Requires `lower >= 0`.
    pub fn pow_rounded(&self, mut e: u32, bits: u32) -> RealApprox {
        debug_assert!(!self.lo.is_negative());
        let mut base = self.clone();
        let mut acc = RealApprox::from_i64(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).round_outward(bits);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).round_outward(bits);
            }
        }
        acc
    }

    pub fn recip(&self) -> Result<RealApprox> {
        if self.contains_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RealApprox { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &RealApprox) -> Result<RealApprox> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, k: &BigRational) -> RealApprox {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            RealApprox { lo: a, hi: b }
        } else {
            RealApprox { lo: b, hi: a }
        }
    }

    pub fn hull(&self, other: &RealApprox) -> RealApprox {
        RealApprox {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Integer parts of the endpoints, if they agree.
    pub fn floor(&self) -> Option<BigInt> {
        let a = self.lo.floor().to_integer();
        let b = self.hi.floor().to_integer();
        (a == b).then_some(a)
    }

    /// Interval for `sqrt(x)` with endpoints accurate to `2^-bits`. Requires
    /// `lower >= 0`.
    pub fn sqrt(&self, bits: u32) -> RealApprox {
        RealApprox { lo: sqrt_floor(&self.lo, bits), hi: sqrt_ceil(&self.hi, bits) }
    }
}

fn isqrt_floor(n: &BigInt) -> BigInt {
    n.sqrt()
}

fn sqrt_floor(x: &BigRational, bits: u32) -> BigRational {
    // floor(sqrt(x * 4^bits)) / 2^bits <= sqrt(x)
    let scaled = (x * BigRational::from_integer(pow2(2 * bits))).floor().to_integer();
    BigRational::new(isqrt_floor(&scaled.max(BigInt::zero())), pow2(bits))
}

fn sqrt_ceil(x: &BigRational, bits: u32) -> BigRational {
    let scaled = (x * BigRational::from_integer(pow2(2 * bits))).ceil().to_integer();
    let r = isqrt_floor(&scaled);
    let r = if &r * &r < scaled { r + 1 } else { r };
    BigRational::new(r, pow2(bits))
}

impl Add for &RealApprox {
    type Output = RealApprox;
    fn add(self, rhs: &RealApprox) -> RealApprox {
        RealApprox { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &RealApprox {
    type Output = RealApprox;
    fn sub(self, rhs: &RealApprox) -> RealApprox {
        RealApprox { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &RealApprox {
    type Output = RealApprox;
    fn mul(self, rhs: &RealApprox) -> RealApprox {
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        RealApprox { lo, hi }
    }
}

impl Neg for &RealApprox {
    type Output = RealApprox;
    fn neg(self) -> RealApprox {
        RealApprox { lo: -&self.hi, hi: -&self.lo }
    }
}

impl fmt::Display for RealApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lower_f64(), self.upper_f64())
    }
}

impl fmt::Debug for RealApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealApprox[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_encloses_results() {
        let a = RealApprox::new(r(1, 1), r(2, 1));
        let b = RealApprox::new(r(-3, 1), r(1, 2));
        let p = &a * &b;
        assert_eq!(p.lower(), &r(-6, 1));
        assert_eq!(p.upper(), &r(1, 1));
        assert_eq!((&a - &b).lower(), &r(1, 2));
        assert!(b.recip().is_err());
        assert_eq!(b.pow(2).lower(), &r(0, 1));
        assert_eq!(b.abs().upper(), &r(3, 1));
    }

    #[test]
    fn sqrt_two_bracket() {
        let s = RealApprox::from_i64(2).sqrt(60);
        assert!(s.contains_f64(core::f64::consts::SQRT_2) || s.width() < r(1, 1 << 50));
        assert!(s.lower_f64() <= 1.4142135623730951 && s.upper_f64() >= 1.414213562373095);
        let sq = s.pow(2);
        assert!(sq.contains(&r(2, 1)));
    }

    #[test]
    fn outward_rounding_contains_original() {
        let x = RealApprox::new(r(1, 3), r(2, 3));
        let y = x.round_outward(8);
        assert!(y.lower() <= x.lower() && y.upper() >= x.upper());
        assert!(y.width() < x.width() + r(1, 64));
    }
}
