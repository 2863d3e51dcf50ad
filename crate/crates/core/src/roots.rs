//! Exact root location: unit-disk counts and real-root isolation.

use alloc::vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::interval::{pow2, rat, RealApprox};
use crate::poly::{sturm_sequence, variations_at_neg_inf, variations_at_pos_inf, IntPolynomial, QPoly, SturmChain};
use crate::{Error, Result};

/// Roots of a polynomial sorted by modulus relative to 1, with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct RootCount {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
}

impl RootCount {
    pub fn degree(&self) -> usize {
        self.inside + self.on_circle + self.outside
    }

    fn add_scaled(&mut self, other: RootCount, k: usize) {
        self.inside += k * other.inside;
        self.on_circle += k * other.on_circle;
        self.outside += k * other.outside;
    }
}

/// Exact unit-circle root count for a squarefree integer polynomial.
///
/// The computation never leaves the rationals. Roots on the circle and
/// reciprocal pairs are split off through `gcd(p, z^d p(1/z))`; the rest is
/// mapped to the left half plane by `z = (1 + w) / (1 - w)` and counted with a
/// Cauchy index.
pub fn schur_cohn(p: &IntPolynomial) -> Result<RootCount> {
    let qp = p.to_qpoly();
    if !qp.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(count_squarefree(&qp))
}

/// Unit-circle root count with multiplicity, for any nonzero polynomial.
pub fn root_count(p: &IntPolynomial) -> RootCount {
    count_with_multiplicity(&p.to_qpoly())
}

pub(crate) fn count_with_multiplicity(p: &QPoly) -> RootCount {
    let mut total = RootCount::default();
    for (f, k) in p.squarefree_decomposition() {
        total.add_scaled(count_squarefree(&f), k);
    }
    total
}

fn count_squarefree(p: &QPoly) -> RootCount {
    let mut count = RootCount::default();
    let mut p = p.clone();
    // z = 0 has multiplicity at most one here
    if p.degree() > 0 && p.coeff(0).is_zero() {
        count.inside += 1;
        p = p.div_exact(&QPoly::from_i64(&[0, 1]));
    }
    if p.degree() == 0 {
        return count;
    }

    let g = p.gcd(&p.reversed());
    let g_count = reciprocal_part_count(&g);
    count.inside += g_count.inside;
    count.on_circle += g_count.on_circle;
    count.outside += g_count.outside;

    let rest = p.div_exact(&g);
    let n = rest.degree();
    if n > 0 {
        let inside = half_plane_count(&rest);
        count.inside += inside;
        count.outside += n - inside;
    }
    count
}

/// Counts for a squarefree polynomial whose root set is closed under `z -> 1/z`.
fn reciprocal_part_count(g: &QPoly) -> RootCount {
    let mut count = RootCount::default();
    let mut g = g.monic();
    for r in [1i64, -1] {
        let lin = QPoly::linear_root(rat(r));
        if g.degree() > 0 && g.eval(&rat(r)).is_zero() {
            g = g.div_exact(&lin);
            count.on_circle += 1;
        }
    }
    let d = g.degree();
    if d == 0 {
        return count;
    }
    debug_assert!(d % 2 == 0);
    let m = d / 2;
    // z^-m g(z) = h(z + 1/z)
    let x = QPoly::from_i64(&[0, 1]);
    let mut dk_prev = QPoly::from_i64(&[2]);
    let mut dk = x.clone();
    let mut h = QPoly::constant(g.coeff(m));
    for k in 1..=m {
        if k > 1 {
            let next = &(&x * &dk) - &dk_prev;
            dk_prev = dk;
            dk = next;
        }
        h = &h + &dk.scale(&g.coeff(m + k));
    }
    let on_pairs = SturmChain::new(&h).count_in(&rat(-2), &rat(2));
    count.on_circle += 2 * on_pairs;
    let off = d - 2 * on_pairs;
    count.inside += off / 2;
    count.outside += off / 2;
    count
}

/// Number of roots with `|z| < 1` of a polynomial with no roots on the
/// circle.
fn half_plane_count(q: &QPoly) -> usize {
    let n = q.degree();
    // Q(w) = sum_j q_j (1 + w)^j (1 - w)^(n - j)
    let plus = QPoly::from_i64(&[1, 1]);
    let minus = QPoly::from_i64(&[1, -1]);
    let mut plus_pows = vec![QPoly::one()];
    let mut minus_pows = vec![QPoly::one()];
    for i in 0..n {
        plus_pows.push(&plus_pows[i] * &plus);
        minus_pows.push(&minus_pows[i] * &minus);
    }
    let mut big_q = QPoly::zero();
    for j in 0..=n {
        let c = q.coeff(j);
        if c.is_zero() {
            continue;
        }
        big_q = &big_q + &(&plus_pows[j] * &minus_pows[n - j]).scale(&c);
    }
    // Q(iy) = A(y) + i B(y)
    let mut a = vec![BigRational::zero(); n + 1];
    let mut b = vec![BigRational::zero(); n + 1];
    for (k, c) in big_q.coeffs().iter().enumerate() {
        match k % 4 {
            0 => a[k] += c,
            1 => b[k] += c,
            2 => a[k] -= c,
            _ => b[k] -= c,
        }
    }
    let a = QPoly::from_coeffs(a);
    let b = QPoly::from_coeffs(b);
    // n_left - n_right from the winding of Q(iy)
    let diff: i64 = if n % 2 == 0 { -cauchy_index(&b, &a) } else { cauchy_index(&a, &b) };
    let left = (n as i64 + diff) / 2;
    left as usize
}

/// Cauchy index of `num / den` over the whole real line.
fn cauchy_index(num: &QPoly, den: &QPoly) -> i64 {
    if num.is_zero() {
        return 0;
    }
    let seq = sturm_sequence(den, num);
    variations_at_neg_inf(&seq) as i64 - variations_at_pos_inf(&seq) as i64
}

/// A real algebraic number: the unique root of `poly` in `(lower, upper]`
/// (or exactly `lower` when the interval is degenerate).
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    poly: QPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicReal {
    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn interval(&self) -> RealApprox {
        RealApprox::new(self.lo.clone(), self.hi.clone())
    }

    /// Halves the isolating interval until its width is below `2^-bits`.
    pub fn refine(&mut self, bits: u32) {
        let target = BigRational::new(BigInt::one(), pow2(bits));
        let s_hi = self.poly.sign_at(&self.hi);
        if s_hi == 0 {
            self.lo = self.hi.clone();
            return;
        }
        while &self.hi - &self.lo > target {
            let mid = (&self.lo + &self.hi) / rat(2);
            let s = self.poly.sign_at(&mid);
            if s == 0 {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if s == s_hi {
                self.hi = mid;
            } else {
                self.lo = mid;
            }
        }
    }

    /// Interval of width below `2^-bits`.
    pub fn approx(&self, bits: u32) -> RealApprox {
        let mut c = self.clone();
        c.refine(bits);
        c.interval()
    }

    pub fn to_f64(&self) -> f64 {
        self.approx(60).to_f64()
    }
}

/// Largest real root, or `None` if the polynomial has no real roots.
pub fn largest_real_root(p: &IntPolynomial) -> Option<AlgebraicReal> {
    largest_real_root_q(&p.to_qpoly())
}

pub(crate) fn largest_real_root_q(p: &QPoly) -> Option<AlgebraicReal> {
    let sf = p.squarefree_part();
    if sf.degree() == 0 {
        return None;
    }
    let chain = SturmChain::new(&sf);
    let bound = cauchy_bound_q(&sf);
    let mut lo = -bound.clone();
    let mut hi = bound;
    if chain.count_in(&lo, &hi) == 0 {
        return None;
    }
    while chain.count_in(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / rat(2);
        if chain.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(AlgebraicReal { poly: sf, lo, hi })
}

/// Number of distinct real roots in `(a, b]`.
pub fn count_real_roots_in(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> usize {
    let sf = p.to_qpoly().squarefree_part();
    SturmChain::new(&sf).count_in(a, b)
}

pub(crate) fn cauchy_bound_q(p: &QPoly) -> BigRational {
    let lc = p.lc();
    let mut m = BigRational::zero();
    for c in &p.coeffs()[..p.degree()] {
        let v = num_traits::Signed::abs(&(c / &lc));
        if v > m {
            m = v;
        }
    }
    m.ceil() + BigRational::one()
}

/// Number of roots (with multiplicity) with `|z| < r`, for rational `r > 0`.
pub(crate) fn count_inside_radius(p: &QPoly, r: &BigRational) -> usize {
    count_with_multiplicity(&p.scale_argument(r)).inside
}

/// Interval containing the largest modulus among all roots of `p` except one
/// copy of `lambda`, the positive dominant root. Width below `2^-bits`.
pub(crate) fn conjugate_modulus_bound(p: &QPoly, bits: u32) -> RealApprox {
    let d = p.degree();
    if d <= 1 {
        return RealApprox::from_i64(0);
    }
    let mut lo = BigRational::zero();
    let mut hi = cauchy_bound_q(p);
    let target = BigRational::new(BigInt::one(), pow2(bits));
    while &hi - &lo > target {
        let mid = (&lo + &hi) / rat(2);
        if count_inside_radius(p, &mid) >= d - 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RealApprox::new(lo, hi)
}
