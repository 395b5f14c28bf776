//! Open sectors, disks and disk exteriors, and nonvanishing predicates for
//! univariate polynomials on them.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{bail_arg, Result};
use crate::roots::{find_roots, Root, RootSet};
use crate::unipoly::UniPoly;

/// Absolute slack on angles.
pub const ANGLE_SLACK: f64 = 1e-9;
/// Relative slack on radii.
pub const RADIUS_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "type", rename_all = "snake_case"))]
pub enum Region {
    /// `{z ≠ 0 : |arg z| < theta}`, `0 < theta ≤ π`.
    Sector { theta: f64 },
    /// `{|z| < kappa}`.
    Disk { kappa: f64 },
    /// `{|z| > kappa}`.
    Exterior { kappa: f64 },
}

impl Region {
    pub fn sector(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= PI) {
            bail_arg!("sector angle {theta} outside (0, π]");
        }
        Ok(Region::Sector { theta })
    }

    /// `kappa` may be `+∞` (the whole plane).
    pub fn disk(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) {
            bail_arg!("disk radius {kappa} must be positive");
        }
        Ok(Region::Disk { kappa })
    }

    pub fn exterior(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            bail_arg!("exterior radius {kappa} must be positive and finite");
        }
        Ok(Region::Exterior { kappa })
    }

    /// Exact open-region membership.
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Region::Sector { theta } => {
                (z.re != 0.0 || z.im != 0.0) && z.im.atan2(z.re).abs() < theta
            }
            Region::Disk { kappa } => z.norm() < kappa,
            Region::Exterior { kappa } => z.norm() > kappa,
        }
    }

    /// Where a root sits relative to the region, with the boundary widened
    /// by the slack.
    pub fn classify(&self, root: &Root) -> RootStatus {
        let z = root.z;
        match *self {
            Region::Sector { theta } => {
                if z.re == 0.0 && z.im == 0.0 {
                    return RootStatus::Outside;
                }
                let a = root.arg().abs();
                // a root exactly on the negative axis is outside S[π]
                if a >= theta && a == PI {
                    return RootStatus::Outside;
                }
                band(theta - a, ANGLE_SLACK)
            }
            Region::Disk { kappa } => {
                if kappa.is_infinite() {
                    return RootStatus::Inside;
                }
                band((kappa - z.norm()) / kappa, RADIUS_SLACK)
            }
            Region::Exterior { kappa } => band((z.norm() - kappa) / kappa, RADIUS_SLACK),
        }
    }
}

/// `depth` is how far inside the region the point is.
fn band(depth: f64, slack: f64) -> RootStatus {
    if depth > slack {
        RootStatus::Inside
    } else if depth < -slack {
        RootStatus::Outside
    } else {
        RootStatus::Boundary
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Region::Sector { theta } => {
                if (theta - PI).abs() < 1e-15 {
                    write!(f, "S[pi]")
                } else {
                    write!(f, "S[{theta}]")
                }
            }
            Region::Disk { kappa } => write!(f, "{kappa}D"),
            Region::Exterior { kappa } => write!(f, "{kappa}E"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RootStatus {
    Inside,
    Boundary,
    Outside,
}

/// Three-valued outcome of a region or hypothesis check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Nonvanishing {
    pub verdict: Verdict,
    /// A root inside the region (or on its boundary when inconclusive).
    pub witness: Option<Root>,
    /// Every nonzero root with its status.
    pub statuses: Vec<(Root, RootStatus)>,
    /// `None` for the zero polynomial.
    pub roots: Option<RootSet>,
}

/// Whether `p` has no zero in `r`. The zero polynomial is nonvanishing on
/// every region. A root at the origin obstructs only disks.
pub fn nonvanishing_on(p: &UniPoly, r: &Region) -> Result<Nonvanishing> {
    if p.is_zero() {
        return Ok(Nonvanishing {
            verdict: Verdict::Holds,
            witness: None,
            statuses: Vec::new(),
            roots: None,
        });
    }
    let rs = find_roots(p)?;
    let mut statuses: Vec<(Root, RootStatus)> =
        rs.roots.iter().map(|x| (*x, r.classify(x))).collect();
    if rs.origin_multiplicity > 0 {
        let origin = Root {
            z: Complex64::new(0.0, 0.0),
            mult: rs.origin_multiplicity,
        };
        let status = match r {
            Region::Disk { .. } => RootStatus::Inside,
            _ => RootStatus::Outside,
        };
        statuses.insert(0, (origin, status));
    }
    let find = |s: RootStatus| statuses.iter().find(|(_, st)| *st == s).map(|(x, _)| *x);
    let (verdict, witness) = if let Some(w) = find(RootStatus::Inside) {
        (Verdict::Fails, Some(w))
    } else if let Some(w) = find(RootStatus::Boundary) {
        (Verdict::Inconclusive, Some(w))
    } else {
        (Verdict::Holds, None)
    };
    Ok(Nonvanishing {
        verdict,
        witness,
        statuses,
        roots: Some(rs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert!(Region::sector(PI / 2.0)
            .unwrap()
            .contains(Complex64::new(1.0, 0.999)));
        assert!(!Region::sector(PI)
            .unwrap()
            .contains(Complex64::new(-1.0, 0.0)));
        assert!(!Region::sector(PI)
            .unwrap()
            .contains(Complex64::new(0.0, 0.0)));
        assert!(Region::disk(1.0)
            .unwrap()
            .contains(Complex64::new(0.0, 0.0)));
        assert!(!Region::exterior(1.0)
            .unwrap()
            .contains(Complex64::new(0.0, 0.0)));
        assert!(Region::sector(0.0).is_err());
        assert!(Region::sector(4.0).is_err());
        assert!(Region::disk(-1.0).is_err());
    }

    #[test]
    fn nonvanishing_examples() {
        let p = UniPoly::from_ints(&[1, 2]);
        let nv = nonvanishing_on(&p, &Region::sector(PI).unwrap()).unwrap();
        assert_eq!(nv.verdict, Verdict::Holds);

        let q = UniPoly::from_ints(&[1, 2, 4]);
        let nv = nonvanishing_on(&q, &Region::disk(0.4999).unwrap()).unwrap();
        assert_eq!(nv.verdict, Verdict::Holds);
        let nv = nonvanishing_on(&q, &Region::disk(0.5001).unwrap()).unwrap();
        assert_eq!(nv.verdict, Verdict::Fails);
        assert!((nv.witness.unwrap().modulus() - 0.5).abs() < 1e-14);
        let nv = nonvanishing_on(&q, &Region::disk(0.5).unwrap()).unwrap();
        assert_eq!(nv.verdict, Verdict::Inconclusive);

        for r in [
            Region::sector(1.0).unwrap(),
            Region::disk(3.0).unwrap(),
            Region::exterior(0.1).unwrap(),
        ] {
            assert_eq!(
                nonvanishing_on(&UniPoly::zero(), &r).unwrap().verdict,
                Verdict::Holds
            );
        }
    }

    #[test]
    fn origin_roots_only_obstruct_disks() {
        let p = UniPoly::from_ints(&[0, 1]);
        assert_eq!(
            nonvanishing_on(&p, &Region::disk(0.1).unwrap())
                .unwrap()
                .verdict,
            Verdict::Fails
        );
        assert_eq!(
            nonvanishing_on(&p, &Region::sector(PI).unwrap())
                .unwrap()
                .verdict,
            Verdict::Holds
        );
        assert_eq!(
            nonvanishing_on(&p, &Region::exterior(0.1).unwrap())
                .unwrap()
                .verdict,
            Verdict::Holds
        );
    }
}
