//! Key polynomials `K(z) = Σ_j binom(d, j) u_j z^j`, the named key families,
//! and the root data used as theorem hypotheses.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use crate::error::{bail_arg, Error, Result};
use crate::regions::{Verdict, ANGLE_SLACK, RADIUS_SLACK};
use crate::roots::{find_roots, Root};
use crate::scalar::{parse_rational, Scalar};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct KeyPolynomial {
    d: usize,
    u: Vec<Scalar>,
    poly: UniPoly,
}

impl KeyPolynomial {
    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn activities(&self) -> &[Scalar] {
        &self.u
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    /// `deg K = d`, decided on the exact top activity.
    pub fn is_degree_full(&self) -> bool {
        !self.u[self.d].is_zero()
    }
}

pub fn key_from_activities(u: &[Scalar], d: usize) -> Result<KeyPolynomial> {
    if u.len() != d + 1 {
        bail_arg!(
            "a degree-{d} key needs {} activities, got {}",
            d + 1,
            u.len()
        );
    }
    let poly = UniPoly::new(
        u.iter()
            .enumerate()
            .map(|(j, uj)| &Scalar::binomial(d, j) * uj)
            .collect(),
    );
    Ok(KeyPolynomial {
        d,
        u: u.to_vec(),
        poly,
    })
}

/// Activity families that can be instantiated at any vertex degree.
#[derive(Clone, Debug, PartialEq)]
pub enum KeyFamily {
    /// `u_0 = u_1 = 1`, zero above: matchings.
    Matching,
    /// `u_k = 1` for `lower ≤ k ≤ upper`, else 0. `upper` is clamped to
    /// the degree.
    Interval { lower: usize, upper: usize },
    /// `u_0 = u_2 = 1`, `u_1 = u`, zero above.
    Ruelle(Scalar),
    /// Degree `2k` keys `1 + binom(2k, k) z^k + u z^{2k}`.
    Symmetric2k(Scalar),
    /// `u_j = 1 / binom(d, j)`, so `K(z) = 1 + z + … + z^d`.
    Reciprocal,
    /// Fixed activities; only fits vertices of degree `len − 1`.
    Explicit(Vec<Scalar>),
}

impl KeyFamily {
    pub fn activities(&self, d: usize) -> Result<Vec<Scalar>> {
        let mut u = vec![Scalar::zero(); d + 1];
        match self {
            KeyFamily::Matching => {
                for uj in u.iter_mut().take(2) {
                    *uj = Scalar::one();
                }
            }
            KeyFamily::Interval { lower, upper } => {
                if *lower > d {
                    return Err(Error::InfeasibleKey {
                        lower: *lower,
                        degree: d,
                    });
                }
                for uj in &mut u[*lower..=(*upper).min(d)] {
                    *uj = Scalar::one();
                }
            }
            KeyFamily::Ruelle(x) => {
                u[0] = Scalar::one();
                if d >= 1 {
                    u[1] = x.clone();
                }
                if d >= 2 {
                    u[2] = Scalar::one();
                }
            }
            KeyFamily::Symmetric2k(x) => {
                if d == 0 || d % 2 == 1 {
                    bail_arg!("symmetric 2k keys need a positive even degree, got {d}");
                }
                u[0] = Scalar::one();
                u[d / 2] = Scalar::one();
                u[d] = x.clone();
            }
            KeyFamily::Reciprocal => {
                for (j, uj) in u.iter_mut().enumerate() {
                    *uj = &Scalar::one() / &Scalar::binomial(d, j);
                }
            }
            KeyFamily::Explicit(v) => {
                if v.len() != d + 1 {
                    bail_arg!(
                        "explicit activities have length {} but vertex degree is {d}",
                        v.len()
                    );
                }
                u.clone_from(v);
            }
        }
        Ok(u)
    }

    pub fn key(&self, d: usize) -> Result<KeyPolynomial> {
        key_from_activities(&self.activities(d)?, d)
    }
}

pub fn matching_key(d: usize) -> KeyPolynomial {
    KeyFamily::Matching
        .key(d)
        .expect("matching fits every degree")
}

/// `u_k = 1` for `f ≤ k ≤ g` (with `g` clamped to `d`).
pub fn interval_key(f: usize, g: usize, d: usize) -> Result<KeyPolynomial> {
    if f > g {
        bail_arg!("empty interval {f}..{g}");
    }
    KeyFamily::Interval { lower: f, upper: g }.key(d)
}

/// `1 + d·u·z + binom(d, 2) z²`.
pub fn ruelle_key(u: Scalar, d: usize) -> KeyPolynomial {
    KeyFamily::Ruelle(u)
        .key(d)
        .expect("ruelle fits every degree")
}

/// `1 + binom(2k, k) z^k + u z^{2k}`.
pub fn symmetric_key_2k(u: Scalar, k: usize) -> Result<KeyPolynomial> {
    if k == 0 {
        bail_arg!("symmetric keys need k >= 1");
    }
    KeyFamily::Symmetric2k(u).key(2 * k)
}

/// `1 + z + … + z^d`.
pub fn reciprocal_key(d: usize) -> KeyPolynomial {
    KeyFamily::Reciprocal
        .key(d)
        .expect("reciprocal fits every degree")
}

impl fmt::Display for KeyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyFamily::Matching => write!(f, "matching"),
            KeyFamily::Interval { lower, upper } => write!(f, "interval:{lower}..{upper}"),
            KeyFamily::Ruelle(u) => write!(f, "ruelle:{u}"),
            KeyFamily::Symmetric2k(u) => write!(f, "sym2k:{u}"),
            KeyFamily::Reciprocal => write!(f, "reciprocal"),
            KeyFamily::Explicit(v) => {
                write!(f, "explicit:[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// `matching`, `interval:f..g`, `ruelle:u`, `sym2k:u`, `reciprocal`,
/// `explicit:[u0,u1,...]`.
impl FromStr for KeyFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad key family {s:?}"));
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a.trim())),
            None => (s, None),
        };
        let family = match (name, arg) {
            ("matching", None) => KeyFamily::Matching,
            ("reciprocal", None) => KeyFamily::Reciprocal,
            ("interval", Some(a)) => {
                let (lo, hi) = a.split_once("..").ok_or_else(bad)?;
                let lower = lo.trim().parse().map_err(|_| bad())?;
                let upper = hi.trim().parse().map_err(|_| bad())?;
                if lower > upper {
                    return Err(Error::Parse(format!("empty interval in {s:?}")));
                }
                KeyFamily::Interval { lower, upper }
            }
            ("ruelle", Some(a)) => KeyFamily::Ruelle(Scalar::rational(parse_rational(a)?)),
            ("sym2k", Some(a)) => KeyFamily::Symmetric2k(Scalar::rational(parse_rational(a)?)),
            ("explicit", Some(a)) => {
                let inner = a
                    .strip_prefix('[')
                    .and_then(|x| x.strip_suffix(']'))
                    .ok_or_else(bad)?;
                let vals = inner
                    .split(',')
                    .map(|t| parse_rational(t.trim().trim_matches('"')).map(Scalar::rational))
                    .collect::<Result<Vec<_>>>()?;
                KeyFamily::Explicit(vals)
            }
            _ => return Err(bad()),
        };
        Ok(family)
    }
}

/// Root data of a key polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct KeyAnalysis {
    /// Nonzero roots with multiplicity.
    pub roots: Vec<Root>,
    pub origin_multiplicity: usize,
    /// `min |arg ζ|` over nonzero roots ζ; `π` when every nonzero root lies
    /// on the negative real axis or there is none.
    pub sector_max: f64,
    /// Smallest root modulus (`0` with a root at the origin, `+∞` without
    /// roots).
    pub disk_radius: f64,
    /// Largest root modulus (`0` without roots).
    pub exterior_radius: f64,
    pub degree_full: bool,
    /// Root finder residual and coefficient checks passed.
    pub verified: bool,
}

pub fn analyze_key(k: &KeyPolynomial) -> Result<KeyAnalysis> {
    if k.poly.is_zero() {
        return Err(Error::ZeroKey);
    }
    let rs = find_roots(&k.poly)?;
    let sector_max = rs.roots.iter().map(|r| r.arg().abs()).fold(PI, f64::min);
    let moduli = rs.roots.iter().map(Root::modulus);
    let disk_radius = if rs.origin_multiplicity > 0 {
        0.0
    } else {
        moduli.clone().fold(f64::INFINITY, f64::min)
    };
    let exterior_radius = moduli.fold(0.0, f64::max);
    Ok(KeyAnalysis {
        roots: rs.roots,
        origin_multiplicity: rs.origin_multiplicity,
        sector_max,
        disk_radius,
        exterior_radius,
        degree_full: k.is_degree_full(),
        verified: rs.verified,
    })
}

impl KeyAnalysis {
    /// Number of roots with multiplicity, origin included.
    pub fn root_count(&self) -> usize {
        self.origin_multiplicity + self.roots.iter().map(|r| r.mult).sum::<usize>()
    }

    /// Is the key `S[theta]`-nonvanishing?
    pub fn sector_nonvanishing(&self, theta: f64) -> Verdict {
        if self.sector_max >= PI && theta <= PI {
            return Verdict::Holds;
        }
        graded(self.sector_max - theta, ANGLE_SLACK)
    }

    /// Is the key `κD`-nonvanishing?
    pub fn disk_nonvanishing(&self, kappa: f64) -> Verdict {
        if self.disk_radius.is_infinite() {
            return Verdict::Holds;
        }
        graded((self.disk_radius - kappa) / kappa, RADIUS_SLACK)
    }

    /// Is the key `κE`-nonvanishing? (Degree-fullness is checked separately.)
    pub fn exterior_nonvanishing(&self, kappa: f64) -> Verdict {
        if self.exterior_radius == 0.0 {
            return Verdict::Holds;
        }
        graded((kappa - self.exterior_radius) / kappa, RADIUS_SLACK)
    }
}

fn graded(margin: f64, slack: f64) -> Verdict {
    if margin > slack {
        Verdict::Holds
    } else if margin < -slack {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    }
}

/// Exact activities as `"p/q"` strings, for diagnostics.
pub fn describe_activities(u: &[Scalar]) -> String {
    let parts: Vec<String> = u.iter().map(|x| format!("{x}")).collect();
    parts.join(",")
}
