//! Pisot–Vijayaraghavan certification, power sums and linear recurrences.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::{rat, RealApprox};
use crate::poly::{divisors, IntPolynomial};
use crate::roots::{count_real_roots_in, largest_real_root, root_count, AlgebraicReal};
use crate::{Error, Result, RootCount};

/// Irreducibility over the rationals.
///
/// Exact up to degree 4. Above that, `Some(true)` comes from an irreducible
/// reduction modulo a small prime and `None` means undecided.
pub fn irreducible(p: &IntPolynomial) -> Option<bool> {
    let d = p.degree();
    if d == 0 {
        return Some(false);
    }
    if d == 1 {
        return Some(true);
    }
    if d <= 4 {
        if let Some(found) = has_rational_root(p) {
            if found {
                return Some(false);
            }
            if d <= 3 {
                return Some(true);
            }
            if let Some(split) = splits_into_quadratics(p) {
                return Some(!split);
            }
        }
    }
    if irreducible_mod_small_prime(p) {
        return Some(true);
    }
    None
}

// Divisor enumeration gets slow past this; fall back to modular tests.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn small_enough(x: &BigInt) -> bool {
    x.abs() <= BigInt::from(DIVISOR_LIMIT)
}

/// `Some(true)` if a rational root exists, `None` if the search is too large.
fn has_rational_root(p: &IntPolynomial) -> Option<bool> {
    let c = p.coeffs();
    if c[0].is_zero() {
        return Some(true);
    }
    let lc = p.leading();
    if !small_enough(&c[0]) || !small_enough(lc) {
        return None;
    }
    let qp = p.to_qpoly();
    for num in divisors(&c[0].abs()) {
        for den in divisors(&lc.abs()) {
            if !num.gcd(&den).is_one() {
                continue;
            }
            let r = BigRational::new(num.clone(), den.clone());
            if qp.eval(&r).is_zero() || qp.eval(&-r).is_zero() {
                return Some(true);
            }
        }
    }
    Some(false)
}

/// Quartic with no rational root: does it factor as two quadratics?
fn splits_into_quadratics(p: &IntPolynomial) -> Option<bool> {
    let c = p.coeffs();
    let a = p.leading().clone();
    // a^3 p(y / a) is monic with the same factorization pattern
    let a3 = c[3].clone();
    let a2 = &a * &c[2];
    let a1 = &a * &a * &c[1];
    let a0 = &a * &a * &a * &c[0];
    if !small_enough(&a0) {
        return None;
    }
    // (y^2 + u y + q)(y^2 + r y + s)
    for q_abs in divisors(&a0.abs()) {
        for q in [q_abs.clone(), -q_abs] {
            let s = &a0 / &q;
            if s != q {
                let num = &a1 - &q * &a3;
                let den = &s - &q;
                if !(num.is_multiple_of(&den)) {
                    continue;
                }
                let u = num / den;
                let r = &a3 - &u;
                if &q + &s + &u * &r == a2 {
                    return Some(true);
                }
            } else {
                if a1 != &q * &a3 {
                    continue;
                }
                // u + r = a3, u r = a2 - 2q
                let disc = &a3 * &a3 - BigInt::from(4) * (&a2 - BigInt::from(2) * &q);
                if disc.is_negative() {
                    continue;
                }
                let root = disc.sqrt();
                if &root * &root == disc && (&a3 + &root).is_even() {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

const SMALL_PRIMES: [u64; 24] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];

fn irreducible_mod_small_prime(p: &IntPolynomial) -> bool {
    SMALL_PRIMES.iter().any(|&m| {
        let lc = p.leading().mod_floor(&BigInt::from(m));
        if lc.is_zero() {
            return false;
        }
        let f: Vec<u64> = p.coeffs().iter().map(|c| c.mod_floor(&BigInt::from(m)).to_u64().unwrap()).collect();
        fp::ben_or(&fp::monic(f, m), m)
    })
}

/// Dense polynomials over a small prime field.
mod fp {
    use alloc::vec;
    use alloc::vec::Vec;

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn monic(f: Vec<u64>, p: u64) -> Vec<u64> {
        let f = trim(f);
        let li = inv(*f.last().unwrap(), p);
        f.into_iter().map(|c| c * li % p).collect()
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        while r.len() > dm {
            let c = r.last().copied().unwrap() * li % p;
            let shift = r.len() - 1 - dm;
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * mc % p) % p;
            }
            r = trim(r);
        }
        trim(r)
    }

    fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&trim(out), m, p)
    }

    fn pow_x(e: u64, m: &[u64], p: u64, base: &[u64]) -> Vec<u64> {
        // base^e mod m
        let mut acc = vec![1u64];
        let mut b = base.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// No irreducible factor of degree at most `deg f / 2`.
    pub fn ben_or(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        let x = rem(&[0, 1], f, p);
        let mut xp = x.clone();
        for _ in 1..=n / 2 {
            xp = pow_x(p, f, p, &xp);
            let mut h = xp.clone();
            h.resize(h.len().max(2), 0);
            h[1] = (h[1] + p - 1) % p;
            let g = gcd(f, &trim(h), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Outcome of a PV test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PvVerdict {
    Pv,
    /// Root conditions hold but irreducibility could not be decided.
    Conditional,
    NotPv,
}

/// Full PV analysis of a monic polynomial.
#[derive(Clone, Debug)]
pub struct PvAnalysis {
    pub verdict: PvVerdict,
    pub root_counts: RootCount,
    pub irreducible: Option<bool>,
}

pub fn pv_analysis(p: &IntPolynomial) -> Result<PvAnalysis> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let counts = root_count(p);
    let irreducible = irreducible(p);
    let roots_ok = counts.outside == 1 && counts.on_circle == 0 && {
        let b = BigRational::from_integer(p.cauchy_bound());
        count_real_roots_in(p, &rat(1), &b) >= 1
    };
    let verdict = match (roots_ok, irreducible) {
        (false, _) | (true, Some(false)) => PvVerdict::NotPv,
        (true, Some(true)) => PvVerdict::Pv,
        (true, None) => PvVerdict::Conditional,
    };
    Ok(PvAnalysis { verdict, root_counts: counts, irreducible })
}

/// PV test. `Conditional` verdicts count as PV: the root conditions alone
/// already make the dominant root a PV number.
pub fn is_pv(p: &IntPolynomial) -> Result<bool> {
    Ok(pv_analysis(p)?.verdict != PvVerdict::NotPv)
}

/// The dominant real root of a PV polynomial.
pub fn pv_root(p: &IntPolynomial) -> Result<AlgebraicReal> {
    if !is_pv(p)? {
        return Err(Error::NotPisot);
    }
    largest_real_root(p).ok_or(Error::NotPisot)
}

/// Power sums `s_1..s_n` of the roots of a monic polynomial.
pub fn power_sum_sequence(p: &IntPolynomial, n: usize) -> Result<Vec<BigInt>> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = p.degree();
    let a = p.coeffs();
    let mut s: Vec<BigInt> = Vec::with_capacity(n + 1);
    s.push(BigInt::from(d));
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=(k - 1).min(d) {
            acc += &a[d - i] * &s[k - i];
        }
        if k <= d {
            acc += &a[d - k] * BigInt::from(k);
        }
        s.push(-acc);
    }
    s.remove(0);
    Ok(s)
}

/// `s_n`, the sum of the n-th powers of all roots.
pub fn power_sums(p: &IntPolynomial, n: usize) -> Result<BigInt> {
    if n == 0 {
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        return Ok(BigInt::from(p.degree()));
    }
    Ok(power_sum_sequence(p, n)?.pop().unwrap())
}

/// Default working precision for [`pv_decay`]: `2 n log2(lambda) + 64` bits.
pub fn default_decay_precision(p: &IntPolynomial, n: usize) -> Result<u32> {
    let lambda = pv_root(p)?.to_f64();
    Ok(decay_bits(lambda, n))
}

fn decay_bits(lambda: f64, n: usize) -> u32 {
    libm::ceil(2.0 * n as f64 * libm::log2(lambda.max(1.0))) as u32 + 64
}

/// Certified interval for `|s_n - lambda^n|`, the distance contributed by
/// the conjugates of the PV root `lambda`.
pub fn pv_decay(p: &IntPolynomial, n: usize, precision: Option<u32>) -> Result<RealApprox> {
    let root = pv_root(p)?;
    let bits = match precision {
        Some(b) => b,
        None => decay_bits(root.to_f64(), n),
    };
    let s = BigRational::from_integer(power_sums(p, n)?);
    let work = bits + 2 * (usize::BITS - n.leading_zeros()) + 8;
    let lam = root.approx(work);
    let lam_n = lam.pow_rounded(n as u32, work);
    Ok((&RealApprox::exact(s) - &lam_n).abs())
}

/// `f_n = c_1 f_(n-1) + ... + c_d f_(n-d)` with given initial terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<BigInt>,
    initial: Vec<BigInt>,
}

impl Recurrence {
    pub fn new(coeffs: Vec<BigInt>, initial: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::OutOfRange("recurrence order"));
        }
        if coeffs.len() != initial.len() {
            return Err(Error::DimensionMismatch { expected: coeffs.len(), found: initial.len() });
        }
        Ok(Recurrence { coeffs, initial })
    }

    pub fn from_i64(coeffs: &[i64], initial: &[i64]) -> Result<Self> {
        Recurrence::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            initial.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    /// `F_0 = 0, F_1 = 1`.
    pub fn fibonacci() -> Self {
        Recurrence::from_i64(&[1, 1], &[0, 1]).unwrap()
    }

    /// `P_0 = P_1 = P_2 = 1, P_n = P_(n-2) + P_(n-3)`.
    pub fn padovan() -> Self {
        Recurrence::from_i64(&[0, 1, 1], &[1, 1, 1]).unwrap()
    }

    /// `a_0 = 0, a_1 = 1, a_n = 2 a_(n-1) + a_(n-2)`.
    pub fn pell() -> Self {
        Recurrence::from_i64(&[2, 1], &[0, 1]).unwrap()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    /// `x^d - c_1 x^(d-1) - ... - c_d`.
    pub fn characteristic_polynomial(&self) -> IntPolynomial {
        let d = self.order();
        let mut c = vec![BigInt::zero(); d + 1];
        c[d] = BigInt::one();
        for (k, ck) in self.coeffs.iter().enumerate() {
            c[d - 1 - k] = -ck;
        }
        IntPolynomial::new(c).expect("monic")
    }

    /// `f_0..=f_n`.
    pub fn terms(&self, n: usize) -> Vec<BigInt> {
        let mut f: Vec<BigInt> = self.initial.iter().take(n + 1).cloned().collect();
        while f.len() <= n {
            let k = f.len();
            let v = self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| c * &f[k - 1 - i])
                .sum();
            f.push(v);
        }
        f
    }
}

pub fn recurrence_term(r: &Recurrence, n: usize) -> BigInt {
    r.terms(n).pop().unwrap()
}

/// Interval for `|f_n / f_(n-1) - lambda|` with `lambda` the PV root of `p`.
pub fn ratio_limit_check(r: &Recurrence, p: &IntPolynomial, n: usize) -> Result<RealApprox> {
    if n == 0 {
        return Err(Error::OutOfRange("n"));
    }
    let f = r.terms(n);
    let den = &f[n - 1];
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let ratio = BigRational::new(f[n].clone(), den.clone());
    let bits = 4 * n as u32 + 64;
    let lam = pv_root(p)?.approx(bits);
    Ok((&RealApprox::exact(ratio) - &lam).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c).unwrap()
    }

    const TAU: f64 = 1.618_033_988_749_895;

    #[test]
    fn pv_examples() {
        assert!(is_pv(&ip(&[-1, -1, 1])).unwrap());
        assert!(is_pv(&ip(&[-1, -1, 0, 1])).unwrap());
        assert!(is_pv(&ip(&[-1, -2, 1])).unwrap());
        assert!(!is_pv(&ip(&[-3, 0, 1])).unwrap());
        assert!(!is_pv(&ip(&[-1, 1])).unwrap());
        assert!(!is_pv(&ip(&[0, -2, 1])).unwrap());
        assert_eq!(is_pv(&ip(&[-1, 2])), Err(Error::NotMonic));
        for k in 2..20 {
            assert_eq!(pv_analysis(&ip(&[-k, 1])).unwrap().verdict, PvVerdict::Pv);
        }
        // largest root of x^3 - x - 1 is positive; -x^3 ... negative dominant root is rejected
        assert!(!is_pv(&ip(&[1, -1, 1])).unwrap()); // x^2 - x + 1: on the circle
        assert!(!is_pv(&ip(&[-1, 2, 1])).unwrap()); // x^2 + 2x - 1: dominant root negative
    }

    #[test]
    fn irreducibility_small_degree() {
        assert_eq!(irreducible(&ip(&[-1, -1, 1])), Some(true));
        assert_eq!(irreducible(&ip(&[0, -2, 1])), Some(false));
        assert_eq!(irreducible(&ip(&[1, 0, 0, 0, 1])), Some(true));
        // (x^2 + 1)(x^2 - 2)
        assert_eq!(irreducible(&ip(&[-2, 0, -1, 0, 1])), Some(false));
        // (x^2 + x + 1)(x^2 + x + 1) and (x^2 + 3x + 1)(x^2 - x + 1)
        assert_eq!(irreducible(&ip(&[1, 2, 3, 2, 1])), Some(false));
        assert_eq!(irreducible(&ip(&[1, 2, -1, 2, 1])), Some(false));
        // (2x^2 + 1)(x^2 + 3)
        assert_eq!(irreducible(&ip(&[3, 0, 7, 0, 2])), Some(false));
        // (2x - 1)(x^2 + 1)
        assert_eq!(irreducible(&ip(&[-1, 2, -1, 2])), Some(false));
        // x^5 - x - 1 is irreducible mod 5
        assert_eq!(irreducible(&ip(&[-1, -1, 0, 0, 0, 1])), Some(true));
        // (x^2 + 1)(x^3 - x - 1) cannot be certified either way
        assert_eq!(irreducible(&ip(&[-1, -1, -1, 0, 0, 1])), None);
    }

    #[test]
    fn power_sum_examples() {
        let fib = ip(&[-1, -1, 1]);
        let s: Vec<i64> = power_sum_sequence(&fib, 4).unwrap().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(s, [1, 3, 4, 7]);
        assert_eq!(power_sums(&ip(&[-1, -2, 1]), 2).unwrap(), BigInt::from(6));
        // x^3 - x - 1: s_1 = 0, s_2 = 2, s_3 = 3
        let s: Vec<i64> = power_sum_sequence(&ip(&[-1, -1, 0, 1]), 3).unwrap().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(s, [0, 2, 3]);
    }

    #[test]
    fn decay_examples() {
        let d = pv_decay(&ip(&[-1, -1, 1]), 10, None).unwrap();
        assert!((d.to_f64() - libm::pow(TAU, -10.0)).abs() < 1e-15);
        let d1 = pv_decay(&ip(&[-1, -1, 1]), 1, None).unwrap();
        assert!((d1.to_f64() - 0.618_033_988_749_895).abs() < 1e-12);
        let d8 = pv_decay(&ip(&[-1, -2, 1]), 8, None).unwrap();
        assert!((d8.to_f64() - libm::pow(core::f64::consts::SQRT_2 - 1.0, 8.0)).abs() < 1e-15);
        assert_eq!(pv_decay(&ip(&[-3, 0, 1]), 3, None), Err(Error::NotPisot));
    }

    #[test]
    fn recurrences() {
        assert_eq!(recurrence_term(&Recurrence::fibonacci(), 7), BigInt::from(13));
        assert_eq!(recurrence_term(&Recurrence::padovan(), 5), BigInt::from(3));
        assert_eq!(recurrence_term(&Recurrence::pell(), 5), BigInt::from(29));
        assert_eq!(Recurrence::padovan().characteristic_polynomial(), ip(&[-1, -1, 0, 1]));
        let r = Recurrence::from_i64(&[1, 1], &[0, 0]).unwrap();
        assert_eq!(ratio_limit_check(&r, &ip(&[-1, -1, 1]), 3), Err(Error::ZeroDenominator));
    }

    #[test]
    fn binet_residual_fibonacci() {
        // |F_n sqrt(5) - tau^n| < 2 tau^-n
        let f = Recurrence::fibonacci().terms(30);
        let sqrt5 = RealApprox::from_i64(5).sqrt(200);
        let tau = pv_root(&ip(&[-1, -1, 1])).unwrap().approx(200);
        for (n, fnv) in f.iter().enumerate() {
            let lhs = (&sqrt5.scale(&BigRational::from_integer(fnv.clone())) - &tau.pow(n as u32)).abs();
            assert!(lhs.upper_f64() < 2.0 * libm::pow(TAU, -(n as f64)), "n = {n}");
        }
    }
}
