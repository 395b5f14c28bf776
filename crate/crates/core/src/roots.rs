//! Simultaneous root refinement (Aberth–Ehrlich) for univariate polynomials.
//!
//! Roots at the origin are split off exactly from the coefficient list. The
//! cofactor is refined from starting points on a circle whose radius is the
//! Cauchy root bound. Near-coincident approximations are merged into
//! clusters reported with a multiplicity, and for real polynomials roots
//! that are their own conjugate partner are snapped onto the real axis.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{bail_arg, Error, Result};
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

pub const MAX_SWEEPS: usize = 2000;
/// Corrections below `STEP_TOL · bound` count as converged.
pub const STEP_TOL: f64 = 1e-13;
/// Approximations closer than `CLUSTER_TOL · bound` are merged.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Largest accepted normalized residual `|p(z)| / Σ|a_j||z|^j`.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Relative tolerance on the sum and product of the roots.
pub const VIETA_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Root {
    pub z: Complex64,
    pub mult: usize,
}

impl Root {
    pub fn modulus(&self) -> f64 {
        self.z.norm()
    }

    /// Argument in `(−π, π]`.
    pub fn arg(&self) -> f64 {
        let a = self.z.im.atan2(self.z.re);
        if a == -PI {
            PI
        } else {
            a
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// Nonzero roots with multiplicities.
    pub roots: Vec<Root>,
    pub origin_multiplicity: usize,
    /// Largest normalized residual over the reported roots.
    pub residual: f64,
    /// Residual and coefficient checks passed.
    pub verified: bool,
    /// Radius of the starting circle.
    pub bound: f64,
    pub sweeps: usize,
}

impl RootSet {
    /// Total number of roots with multiplicity, including the origin.
    pub fn count(&self) -> usize {
        self.origin_multiplicity + self.roots.iter().map(|r| r.mult).sum::<usize>()
    }

    /// Nonzero roots expanded by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| core::iter::repeat_n(r.z, r.mult))
            .collect()
    }

    /// All roots including the origin, expanded by multiplicity.
    pub fn all_expanded(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.origin_multiplicity];
        v.extend(self.expanded());
        v
    }
}

fn horner_with_derivative(a: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn magnitude_scale(a: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    a.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Positive root of `|a_n| x^n − Σ_{j<n} |a_j| x^j`.
fn cauchy_bound(a: &[Complex64]) -> f64 {
    let n = a.len() - 1;
    let lead = a[n].norm();
    let mags: Vec<f64> = a.iter().map(|c| c.norm() / lead).collect();
    let f = |x: f64| {
        let mut s = 1.0;
        for (j, m) in mags[..n].iter().enumerate() {
            s -= m / x.powi((n - j) as i32);
        }
        s
    };
    // f increases on (0, ∞): bisect between a lower and an upper bound.
    let hi0 = 1.0 + mags[..n].iter().cloned().fold(0.0, f64::max);
    let (mut lo, mut hi) = (0.0f64, hi0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= 0.0 || mid == lo || mid == hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Simple deterministic angular jitter in `[0, 1)`.
fn jitter(k: usize) -> f64 {
    let x = (k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    (x >> 11) as f64 / (1u64 << 53) as f64
}

/// Refine all roots of a polynomial with nonzero constant and leading
/// coefficients. Returns the approximations and the sweep count.
fn aberth(a: &[Complex64], bound: f64) -> Result<(Vec<Complex64>, usize)> {
    let n = a.len() - 1;
    let eps = f64::EPSILON;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * (k as f64 + 0.25 * jitter(k)) / n as f64 + 0.4;
            Complex64::from_polar(bound, theta)
        })
        .collect();
    let mut done = vec![false; n];
    for sweep in 1..=MAX_SWEEPS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner_with_derivative(a, z[i]);
            let noise = 4.0 * (n as f64 + 1.0) * eps * magnitude_scale(a, z[i]);
            if p.norm() <= noise {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // derivative vanished or two approximations collided
                step = Complex64::from_polar(bound * 1e-3, 1.0 + i as f64);
            }
            z[i] -= step;
            if step.norm() < STEP_TOL * bound {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done && done.iter().all(|&d| d) {
            return Ok((z, sweep));
        }
    }
    let residual = z
        .iter()
        .map(|&x| {
            horner_with_derivative(a, x).0.norm() / magnitude_scale(a, x).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    Err(Error::Numerical {
        message: format!("no convergence after {MAX_SWEEPS} sweeps"),
        best: z,
        residual,
    })
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let next = self.0[j];
            self.0[j] = r;
            j = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Merge approximations of a multiple root. Two approximations join when
/// they are within `CLUSTER_TOL · bound` or their Newton inclusion disks
/// `n |p(z)| / |p'(z)|` overlap.
fn cluster(a: &[Complex64], z: &[Complex64], bound: f64) -> Vec<Root> {
    let n = z.len();
    let radius: Vec<f64> = z
        .iter()
        .map(|&x| {
            let (p, dp) = horner_with_derivative(a, x);
            let r = n as f64 * p.norm() / dp.norm();
            if r.is_finite() {
                r.min(bound)
            } else {
                bound
            }
        })
        .collect();
    let mut dsu = Dsu((0..n).collect());
    for i in 0..n {
        for j in i + 1..n {
            let d = (z[i] - z[j]).norm();
            if d < CLUSTER_TOL * bound || d < radius[i] + radius[j] {
                dsu.union(i, j);
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = dsu.find(i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += z[i];
                g.2 += 1;
            }
            None => groups.push((r, z[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, s, m)| Root {
            z: s / m as f64,
            mult: m,
        })
        .collect()
}

/// Polish the centre of a cluster of multiplicity `m` by Newton's method on
/// `p^(m-1)`, where the multiple root is simple. The centroid is kept when
/// the iteration wanders off.
fn polish_multiple(a: &[Complex64], root: &mut Root, reach: f64) {
    if root.mult < 2 {
        return;
    }
    let mut d: Vec<Complex64> = a.to_vec();
    for _ in 1..root.mult {
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c * j as f64)
            .collect();
    }
    let start = root.z;
    let mut z = start;
    for _ in 0..50 {
        let (p, dp) = horner_with_derivative(&d, z);
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            return;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    if (z - start).norm() <= reach {
        root.z = z;
    }
}

/// Newton steps for simple roots of an exactly known polynomial, with the
/// value `p(z)` computed in rational arithmetic at the float point `z`. This
/// removes the error of rounding the coefficients to floats.
fn polish_exact(p: &UniPoly, a: &[Complex64], roots: &mut [Root], reach: f64) {
    for r in roots.iter_mut().filter(|r| r.mult == 1) {
        let start = r.z;
        let mut z = start;
        for _ in 0..3 {
            let (Some(re), Some(im)) =
                (BigRational::from_float(z.re), BigRational::from_float(z.im))
            else {
                return;
            };
            let value = p.eval(&Scalar::gaussian(re, im)).to_complex();
            let (_, dp) = horner_with_derivative(a, z);
            let step = value / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            z -= step;
            if step.norm() <= 2.0 * f64::EPSILON * z.norm() {
                break;
            }
        }
        if (z - start).norm() <= reach {
            r.z = z;
        }
    }
}

/// For a real polynomial, a root whose conjugate is best approximated by
/// itself is real; drop its imaginary part.
fn snap_real(roots: &mut [Root]) {
    let centers: Vec<Complex64> = roots.iter().map(|r| r.z).collect();
    for (i, r) in roots.iter_mut().enumerate() {
        let im = r.z.im.abs();
        if im == 0.0 || im > 1e-6 * r.z.norm() {
            continue;
        }
        let mirror = r.z.conj();
        let own = (centers[i] - mirror).norm();
        let nearest_other = centers
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| (c - mirror).norm())
            .fold(f64::INFINITY, f64::min);
        if nearest_other > 2.0 * own {
            r.z = Complex64::new(r.z.re, 0.0);
        }
    }
}

/// Compare sum and product of the roots with the coefficients.
fn vieta_ok(a: &[Complex64], roots: &[Root]) -> bool {
    let n = a.len() - 1;
    let lead = a[n];
    let sum: Complex64 = roots.iter().map(|r| r.z * r.mult as f64).sum();
    let abs_sum: f64 = roots.iter().map(|r| r.z.norm() * r.mult as f64).sum();
    let want_sum = -a[n - 1] / lead;
    let sum_ok =
        (sum - want_sum).norm() <= VIETA_TOL * abs_sum.max(want_sum.norm()).max(f64::MIN_POSITIVE);

    // Compare products in log-modulus and argument to avoid overflow.
    let log_mod: f64 = roots.iter().map(|r| r.mult as f64 * r.z.norm().ln()).sum();
    let want = a[0] / lead * if n % 2 == 1 { -1.0 } else { 1.0 };
    let mod_ok = (log_mod - want.norm().ln()).abs() <= VIETA_TOL * (1.0 + n as f64);
    let arg: f64 = roots
        .iter()
        .map(|r| r.mult as f64 * r.z.im.atan2(r.z.re))
        .sum();
    let d = arg - want.im.atan2(want.re);
    let darg = d - 2.0 * PI * (d / (2.0 * PI)).floor();
    let arg_ok = darg.min(2.0 * PI - darg) <= VIETA_TOL * (1.0 + n as f64);
    sum_ok && mod_ok && arg_ok
}

/// All roots of a nonzero polynomial.
pub fn find_roots(p: &UniPoly) -> Result<RootSet> {
    if p.is_zero() {
        bail_arg!("the zero polynomial has no finite root set");
    }
    let all = p.to_complex_coeffs();
    let origin = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let a = &all[origin..];
    if a.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Numerical {
            message: "coefficient not representable as a finite float".into(),
            best: Vec::new(),
            residual: f64::INFINITY,
        });
    }
    let n = a.len() - 1;
    let mut out = RootSet {
        roots: Vec::new(),
        origin_multiplicity: origin,
        residual: 0.0,
        verified: true,
        bound: 0.0,
        sweeps: 0,
    };
    if n == 0 {
        return Ok(out);
    }
    if n == 1 {
        out.roots.push(Root {
            z: -a[0] / a[1],
            mult: 1,
        });
        out.bound = out.roots[0].z.norm();
        return Ok(out);
    }
    let bound = cauchy_bound(a);
    let (z, sweeps) = aberth(a, bound)?;
    let mut roots = cluster(a, &z, bound);
    for r in &mut roots {
        polish_multiple(a, r, CLUSTER_TOL * bound);
    }
    if p.is_exact() {
        let shifted = UniPoly::new(p.coeffs()[origin..].to_vec());
        polish_exact(&shifted, a, &mut roots, CLUSTER_TOL * bound);
    }
    if p.is_real() {
        snap_real(&mut roots);
    }
    roots.sort_by(|x, y| {
        x.arg()
            .partial_cmp(&y.arg())
            .unwrap()
            .then(x.modulus().partial_cmp(&y.modulus()).unwrap())
    });
    out.residual = roots
        .iter()
        .map(|r| horner_with_derivative(a, r.z).0.norm() / magnitude_scale(a, r.z))
        .fold(0.0, f64::max);
    out.verified = out.residual <= RESIDUAL_TOL && vieta_ok(a, &roots);
    out.roots = roots;
    out.bound = bound;
    out.sweeps = sweeps;
    Ok(out)
}
