//! Points on the unit circle: gap statistics, roots of unity, diagonal
//! intersections of the regular polygon, PV cusp curves and
//! substitution-driven spacing.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_rational::{BigRational, Ratio};

use crate::algebraic::pv_root;
use crate::interval::RealApprox;
use crate::{Error, IntPolynomial, Result, Substitution};

/// Reduces an angle to `[0, 2pi)`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut r = libm::fmod(x, TAU);
    if r < 0.0 {
        r += TAU;
    }
    if r >= TAU {
        r = 0.0;
    }
    r
}

fn check_angle(a: f64) -> Result<()> {
    if (0.0..TAU).contains(&a) {
        Ok(())
    } else {
        Err(Error::OutOfRange("angle"))
    }
}

/// Arc length between two points of the unit circle, in `[0, pi]`.
pub fn geodesic_distance(a: f64, b: f64) -> Result<f64> {
    check_angle(a)?;
    check_angle(b)?;
    Ok(geodesic(a, b))
}

fn geodesic(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(TAU - d)
}

/// Angles in `[0, 2pi)`, optionally carrying exact values in turns.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleList {
    angles: Vec<f64>,
    turns: Option<Vec<Ratio<u64>>>,
}

impl AngleList {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        for &a in &angles {
            check_angle(a)?;
        }
        Ok(AngleList { angles, turns: None })
    }

    /// Angles given exactly as fractions of a full turn, each in `[0, 1)`.
    pub fn from_turns(turns: Vec<Ratio<u64>>) -> Result<Self> {
        if turns.iter().any(|t| *t.numer() >= *t.denom()) {
            return Err(Error::OutOfRange("turn"));
        }
        let angles = turns.iter().map(|t| wrap_angle(TAU * *t.numer() as f64 / *t.denom() as f64)).collect();
        Ok(AngleList { angles, turns: Some(turns) })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn turns(&self) -> Option<&[Ratio<u64>]> {
        self.turns.as_deref()
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Every angle shifted by `c`.
    pub fn rotated(&self, c: f64) -> AngleList {
        AngleList { angles: self.angles.iter().map(|&a| wrap_angle(a + c)).collect(), turns: None }
    }

    /// Points `e^(i theta)` on the unit circle.
    pub fn points(&self) -> Vec<PlanarPoint> {
        self.angles.iter().map(|&a| PlanarPoint::polar(1.0, a)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanarPoint { x, y }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        PlanarPoint { x: r * libm::cos(theta), y: r * libm::sin(theta) }
    }

    pub fn norm(&self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn arg(&self) -> f64 {
        wrap_angle(libm::atan2(self.y, self.x))
    }

    pub fn dist(&self, other: &PlanarPoint) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// The n-th roots of unity `2 pi k / n`, `k = 1..=n`.
pub fn roots_of_unity(n: usize) -> Result<AngleList> {
    if n < 2 {
        return Err(Error::OutOfRange("n"));
    }
    let n64 = n as u64;
    AngleList::from_turns((1..=n64).map(|k| Ratio::new(k % n64, n64)).collect())
}

/// Sum of the n-th roots of unity.
pub fn cyclotomic_sum(n: usize) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::OutOfRange("n"));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let t = TAU * k as f64 / n as f64;
        s += Complex64::new(libm::cos(t), libm::sin(t));
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapStats {
    pub count: usize,
    pub mean: f64,
    /// Population variance of the gaps.
    pub variance: f64,
    pub min_gap: f64,
    pub max_gap: f64,
    /// Gap values left after merging values within the tolerance.
    pub distinct_gaps: usize,
}

pub const DEFAULT_GAP_TOLERANCE: f64 = 1e-9;

/// Cyclic geodesic gaps between circularly consecutive angles.
pub fn gap_statistics(list: &AngleList, tolerance: f64) -> Result<GapStats> {
    if list.len() < 2 {
        return Err(Error::OutOfRange("angle count"));
    }
    if let Some(turns) = list.turns() {
        return Ok(exact_gap_statistics(turns));
    }
    let mut a = list.angles.clone();
    a.sort_by(f64::total_cmp);
    let n = a.len();
    let gaps: Vec<f64> = (0..n).map(|i| geodesic(a[i], a[(i + 1) % n])).collect();
    let mean = gaps.iter().sum::<f64>() / n as f64;
    let variance = gaps.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>() / n as f64;
    let mut sorted = gaps.clone();
    sorted.sort_by(f64::total_cmp);
    let distinct = 1 + sorted.windows(2).filter(|w| w[1] - w[0] > tolerance).count();
    Ok(GapStats {
        count: n,
        mean,
        variance,
        min_gap: sorted[0],
        max_gap: sorted[n - 1],
        distinct_gaps: distinct,
    })
}

fn exact_gap_statistics(turns: &[Ratio<u64>]) -> GapStats {
    let mut t: Vec<Ratio<u64>> = turns.to_vec();
    t.sort();
    let n = t.len();
    let one = Ratio::from_integer(1u64);
    let half = Ratio::new(1u64, 2);
    let gaps: Vec<Ratio<u64>> = (0..n)
        .map(|i| {
            let (a, b) = (t[i], t[(i + 1) % n]);
            let d = if b >= a { b - a } else { a - b };
            if d > half {
                one - d
            } else {
                d
            }
        })
        .collect();
    let sum = gaps.iter().fold(Ratio::from_integer(0u64), |acc, g| acc + g);
    let mean = sum / Ratio::from_integer(n as u64);
    let var = gaps
        .iter()
        .map(|g| {
            let d = if *g >= mean { g - mean } else { mean - g };
            d * d
        })
        .fold(Ratio::from_integer(0u64), |acc, x| acc + x)
        / Ratio::from_integer(n as u64);
    let mut sorted = gaps.clone();
    sorted.sort();
    sorted.dedup();
    let to_rad = |r: &Ratio<u64>| TAU * *r.numer() as f64 / *r.denom() as f64;
    let min = gaps.iter().min().unwrap();
    let max = gaps.iter().max().unwrap();
    GapStats {
        count: n,
        mean: to_rad(&mean),
        variance: TAU * TAU * (*var.numer() as f64 / *var.denom() as f64),
        min_gap: to_rad(min),
        max_gap: to_rad(max),
        distinct_gaps: sorted.len(),
    }
}

/// Self-similarity of the inner intersection ring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelfSimilarity {
    pub scaling: f64,
    pub rotation: f64,
}

#[derive(Clone, Debug)]
pub struct DiagonalPolygon {
    pub vertices: Vec<PlanarPoint>,
    /// Distinct proper intersection points of diagonals.
    pub intersections: Vec<PlanarPoint>,
    /// Intersections at minimal distance from the center.
    pub inner_ring: Vec<PlanarPoint>,
    pub self_similar: Option<SelfSimilarity>,
}

const GEOM_TOL: f64 = 1e-9;

/// Intersections of the diagonals of the regular n-gon on the roots of unity.
///
/// The inner ring is the set of intersection points closest to the center.
/// When it is a regular n-gon, `self_similar` gives the scaling and the
/// rotation (the candidate closest to `pi`) carrying the outer polygon onto it.
pub fn diagonal_polygon(n: usize) -> Result<DiagonalPolygon> {
    if n < 5 {
        return Err(Error::OutOfRange("n"));
    }
    let vertices: Vec<PlanarPoint> = (1..=n).map(|k| PlanarPoint::polar(1.0, TAU * (k % n) as f64 / n as f64)).collect();
    let mut diags = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            diags.push((i, j));
        }
    }
    let mut points = Vec::new();
    for (x, &(i, j)) in diags.iter().enumerate() {
        for &(k, l) in &diags[x + 1..] {
            if i == k || i == l || j == k || j == l {
                continue;
            }
            // endpoints interleave around the circle
            let k_in = i < k && k < j;
            let l_in = i < l && l < j;
            if k_in == l_in {
                continue;
            }
            if let Some(p) = intersect(vertices[i], vertices[j], vertices[k], vertices[l]) {
                points.push(p);
            }
        }
    }
    let intersections = dedup_points(points);
    let rmin = intersections.iter().map(PlanarPoint::norm).fold(f64::INFINITY, f64::min);
    let inner_ring: Vec<PlanarPoint> = intersections
        .iter()
        .copied()
        .filter(|p| p.norm() - rmin <= GEOM_TOL * rmin.max(1.0))
        .collect();
    let self_similar = regular_ring(&inner_ring, n);
    Ok(DiagonalPolygon { vertices, intersections, inner_ring, self_similar })
}

fn intersect(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint, d: PlanarPoint) -> Option<PlanarPoint> {
    let r = (b.x - a.x, b.y - a.y);
    let s = (d.x - c.x, d.y - c.y);
    let den = r.0 * s.1 - r.1 * s.0;
    if den.abs() < 1e-15 {
        return None;
    }
    let t = ((c.x - a.x) * s.1 - (c.y - a.y) * s.0) / den;
    Some(PlanarPoint::new(a.x + t * r.0, a.y + t * r.1))
}

fn dedup_points(mut pts: Vec<PlanarPoint>) -> Vec<PlanarPoint> {
    pts.sort_by(|p, q| p.x.total_cmp(&q.x));
    let mut kept: Vec<PlanarPoint> = Vec::new();
    for p in pts {
        let dup = kept.iter().rev().take_while(|q| p.x - q.x <= GEOM_TOL).any(|q| q.dist(&p) <= GEOM_TOL);
        if !dup {
            kept.push(p);
        }
    }
    kept
}

fn regular_ring(ring: &[PlanarPoint], n: usize) -> Option<SelfSimilarity> {
    if ring.len() != n {
        return None;
    }
    let r = ring[0].norm();
    if r < GEOM_TOL {
        return None;
    }
    if ring.iter().any(|p| (p.norm() - r).abs() > GEOM_TOL * r) {
        return None;
    }
    let mut sorted = ring.to_vec();
    sorted.sort_by(|p, q| p.arg().total_cmp(&q.arg()));
    let sides: Vec<f64> = (0..n).map(|i| sorted[i].dist(&sorted[(i + 1) % n])).collect();
    let s0 = sides[0];
    if sides.iter().any(|s| (s - s0).abs() > GEOM_TOL * s0) {
        return None;
    }
    // rotations carrying vertex 0 (angle 0) onto some ring vertex
    let step = TAU / n as f64;
    let offset = libm::fmod(sorted[0].arg(), step);
    let mut best = offset;
    let mut k = offset;
    while k < TAU {
        if (k - PI).abs() < (best - PI).abs() {
            best = k;
        }
        k += step;
    }
    Some(SelfSimilarity { scaling: r, rotation: best })
}

/// Guard bits kept below the unit when evaluating `lambda^k`.
pub const DEFAULT_CUSP_PRECISION: u32 = 64;

/// `theta_k = 2 pi frac(lambda^k)` for `k = 1..=count`, where `lambda` is the
/// PV root of `p`. Fractional parts are certified: the working precision is
/// raised until the integer part of every `lambda^k` is decided.
pub fn cusp_curve(p: &IntPolynomial, count: usize, precision: u32) -> Result<AngleList> {
    let root = pv_root(p)?;
    let log_lambda = libm::log2(root.to_f64().max(1.0));
    let mut bits = (libm::ceil(count as f64 * log_lambda) as u32) + precision + 2 * usize::BITS - count.leading_zeros();
    'outer: loop {
        let lam = root.approx(bits);
        let mut pow = RealApprox::from_i64(1);
        let mut angles = Vec::with_capacity(count);
        for _ in 0..count {
            pow = (&pow * &lam).round_outward(bits);
            let Some(fl) = pow.floor() else {
                bits *= 2;
                continue 'outer;
            };
            let fl = BigRational::from_integer(fl);
            let frac = RealApprox::new(pow.lower() - &fl, pow.upper() - &fl);
            angles.push(wrap_angle(TAU * frac.to_f64()));
        }
        return AngleList::new(angles);
    }
}

/// Walk driven by the fixed point of `sigma` from letter 0: `theta_0 = 0`
/// and `theta_k = theta_(k-1) + betas[u_k]` modulo `2 pi`, for `k = 1..=count`.
pub fn substitution_spacing(sigma: &Substitution, betas: &[f64], count: usize) -> Result<AngleList> {
    check_betas(sigma, betas)?;
    let mut stream = sigma.fixed_point(0)?;
    let digits = stream.slice(count);
    let mut theta = 0.0;
    let mut out = Vec::with_capacity(count);
    for &d in digits {
        theta = wrap_angle(theta + betas[d as usize]);
        out.push(theta);
    }
    AngleList::new(out)
}

/// Same walk evaluated from letter counts: `theta_k = sum_a c_a(k) beta_a`.
pub fn substitution_spacing_counts(sigma: &Substitution, betas: &[f64], count: usize) -> Result<AngleList> {
    check_betas(sigma, betas)?;
    let mut stream = sigma.fixed_point(0)?;
    let digits = stream.slice(count);
    let mut counts = vec![0u64; betas.len()];
    let mut out = Vec::with_capacity(count);
    for &d in digits {
        counts[d as usize] += 1;
        let total: f64 = counts.iter().zip(betas).map(|(&c, &b)| c as f64 * b).sum();
        out.push(wrap_angle(total));
    }
    AngleList::new(out)
}

fn check_betas(sigma: &Substitution, betas: &[f64]) -> Result<()> {
    if betas.len() != sigma.alphabet().len() {
        return Err(Error::DimensionMismatch { expected: sigma.alphabet().len(), found: betas.len() });
    }
    betas.iter().try_for_each(|&b| check_angle(b))
}

/// Largest pointwise geodesic distance between two angle lists of equal length.
pub fn max_angle_deviation(a: &AngleList, b: &AngleList) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.angles.iter().zip(&b.angles).map(|(&x, &y)| geodesic(x, y)).fold(0.0, f64::max))
}
