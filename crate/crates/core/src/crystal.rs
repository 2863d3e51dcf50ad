//! Euler's totient, Hiller's function and the crystallographic restriction.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest accepted input.
pub const MAX_INPUT: u64 = i64::MAX as u64;

/// One factor `prime^exponent` of a factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorizationEntry {
    pub prime: u64,
    pub exponent: u32,
}

impl FactorizationEntry {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    /// `phi(p^a) = p^(a-1) (p - 1)`.
    pub fn phi(&self) -> u64 {
        self.prime.pow(self.exponent - 1) * (self.prime - 1)
    }
}

fn check(n: u64) -> Result<()> {
    if n == 0 || n > MAX_INPUT {
        return Err(Error::OutOfRange("n"));
    }
    Ok(())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A nontrivial factor of an odd composite `n` (Pollard rho, Brent cycle).
fn rho(n: u64) -> u64 {
    let mut c = 1;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    split(d, out);
    split(n / d, out);
}

/// Prime factorization in increasing order of primes.
pub fn factorize(n: u64) -> Result<Vec<FactorizationEntry>> {
    check(n)?;
    let mut n = n;
    let mut primes = Vec::new();
    for p in 2..1000u64 {
        if p * p > n {
            break;
        }
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    split(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<FactorizationEntry> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some(e) if e.prime == p => e.exponent += 1,
            _ => out.push(FactorizationEntry { prime: p, exponent: 1 }),
        }
    }
    Ok(out)
}

/// Euler's totient, with `phi(1) = 1`.
pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.iter().map(FactorizationEntry::phi).product())
}

/// Smallest dimension of an integer matrix of order `n`: the sum of
/// `phi(p^a)` over the prime powers of `n` other than `2` itself, with
/// `Hil(1) = Hil(2) = 0`.
pub fn hiller(n: u64) -> Result<u64> {
    check(n)?;
    if n <= 2 {
        return Ok(0);
    }
    Ok(factorize(n)?
        .iter()
        .filter(|e| !(e.prime == 2 && e.exponent == 1))
        .map(FactorizationEntry::phi)
        .sum())
}

/// Orders `n <= n_max` realizable by a lattice symmetry in dimension `d`.
pub fn allowed_orders(d: u64, n_max: u64) -> BTreeSet<u64> {
    (1..=n_max.min(MAX_INPUT)).filter(|&n| hiller(n).is_ok_and(|h| h <= d)).collect()
}

/// A rotational symmetry of this order forces a quasicrystal in dimension `d`.
pub fn is_quasicrystalline_order(order: u64, d: u64) -> Result<bool> {
    Ok(hiller(order)? > d)
}
