//! Zero-free region conclusions from key analyses, numerical certification
//! of the univariate conclusions, random falsification probes for the
//! multivariate ones, and log-concavity checks of coefficient sequences.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{bail_arg, Error, Result};
use crate::graph::{random_simple_graph, Graph, VertexId};
use crate::keys::{analyze_key, key_from_activities, KeyAnalysis};
use crate::multipoly::MultiPoly;
use crate::regions::{Region, RootStatus, Verdict};
use crate::roots::{find_roots, Root};
use crate::scalar::Scalar;
use crate::subgraph::{z_compose, z_univariate, ActivityTable};
use crate::unipoly::UniPoly;

/// Admissible edge weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightClass {
    NonnegReal,
    BoundedModulus(f64),
    ModulusAtLeast(f64),
}

impl WeightClass {
    pub fn bounded_modulus(lambda_max: f64) -> Result<Self> {
        if !(lambda_max > 0.0 && lambda_max.is_finite()) {
            bail_arg!("lambda_max must be positive and finite, got {lambda_max}");
        }
        Ok(WeightClass::BoundedModulus(lambda_max))
    }

    pub fn modulus_at_least(lambda_min: f64) -> Result<Self> {
        if !(lambda_min > 0.0 && lambda_min.is_finite()) {
            bail_arg!("lambda_min must be positive and finite, got {lambda_min}");
        }
        Ok(WeightClass::ModulusAtLeast(lambda_min))
    }

    pub fn admits(&self, w: &Scalar) -> bool {
        use core::cmp::Ordering;
        match *self {
            WeightClass::NonnegReal => w.is_nonneg_real(),
            WeightClass::BoundedModulus(m) => w.cmp_modulus(m) != Ordering::Greater,
            WeightClass::ModulusAtLeast(m) => w.cmp_modulus(m) != Ordering::Less,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightReport {
    pub ok: bool,
    /// Indices into `g.edges()` of the weights outside the class.
    pub failing_edges: Vec<usize>,
}

pub fn check_weight_class(g: &Graph, class: &WeightClass) -> WeightReport {
    let failing_edges: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !class.admits(&e.weight))
        .map(|(i, _)| i)
        .collect();
    WeightReport {
        ok: failing_edges.is_empty(),
        failing_edges,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subject {
    Vertex(VertexId),
    Edge(usize),
    Parameter,
}

/// One hypothesis that did not hold.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub subject: Subject,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Conclusion {
    pub class: WeightClass,
    /// The `α` (sector case) or `κ` (disk and exterior cases) in use.
    pub parameter: f64,
    /// Region for `Z(G, λ, u; x)`; `None` unless the hypotheses hold.
    pub multivariate_region: Option<Region>,
    /// Region for `Z(y)`; `None` unless the hypotheses hold.
    pub univariate_region: Option<Region>,
    pub hypotheses_ok: bool,
    pub diagnostics: Vec<Diagnostic>,
}

/// Root data of every vertex key.
pub fn analyze_activities(u: &ActivityTable) -> Result<BTreeMap<VertexId, KeyAnalysis>> {
    u.iter()
        .map(|(v, acts)| {
            let k = key_from_activities(acts, acts.len() - 1)?;
            Ok((v, analyze_key(&k)?))
        })
        .collect()
}

/// Region conclusions for the weight class. `param` is `α` for
/// [`WeightClass::NonnegReal`] and `κ` otherwise; `None` picks the best
/// value the keys allow.
pub fn conclude(
    g: &Graph,
    class: &WeightClass,
    analyses: &BTreeMap<VertexId, KeyAnalysis>,
    param: Option<f64>,
) -> Result<Conclusion> {
    let keys: Vec<(VertexId, &KeyAnalysis)> = g
        .vertices()
        .iter()
        .map(|v| {
            analyses
                .get(v)
                .map(|a| (*v, a))
                .ok_or_else(|| Error::Argument(format!("no key analysis for vertex {v}")))
        })
        .collect::<Result<_>>()?;

    let mut diagnostics: Vec<Diagnostic> = check_weight_class(g, class)
        .failing_edges
        .into_iter()
        .map(|i| Diagnostic {
            subject: Subject::Edge(i),
            verdict: Verdict::Fails,
            detail: format!("weight {} outside {class:?}", g.edges()[i].weight),
        })
        .collect();

    // An auto-selected parameter satisfies the region hypotheses by
    // construction; only explicit values are compared with slack.
    let auto = param.is_none();
    let mut vertex_checks = |check: &dyn Fn(&KeyAnalysis) -> (Verdict, String)| {
        for (v, a) in &keys {
            let (verdict, detail) = check(a);
            if verdict != Verdict::Holds {
                diagnostics.push(Diagnostic {
                    subject: Subject::Vertex(*v),
                    verdict,
                    detail,
                });
            }
        }
    };

    let (parameter, regions) = match *class {
        WeightClass::NonnegReal => {
            let best = PI - keys.iter().map(|(_, a)| a.sector_max).fold(PI, f64::min);
            let alpha = match param {
                Some(a) if !(0.0..PI / 2.0).contains(&a) => {
                    bail_arg!("alpha must lie in [0, π/2), got {a}")
                }
                Some(a) => a,
                None => best.max(0.0),
            };
            vertex_checks(&|a: &KeyAnalysis| {
                (
                    if auto {
                        Verdict::Holds
                    } else {
                        a.sector_nonvanishing(PI - alpha)
                    },
                    format!(
                        "key sector_max {} below π − α = {}",
                        a.sector_max,
                        PI - alpha
                    ),
                )
            });
            let regions = if alpha < PI / 2.0 {
                Some((
                    Region::sector(PI / 2.0 - alpha)?,
                    Region::sector(PI - 2.0 * alpha)?,
                ))
            } else {
                None
            };
            (alpha, regions)
        }
        WeightClass::BoundedModulus(lmax) => {
            let best = keys
                .iter()
                .map(|(_, a)| a.disk_radius)
                .fold(f64::INFINITY, f64::min);
            let kappa = positive_radius(param, best)?;
            vertex_checks(&|a: &KeyAnalysis| {
                (
                    if auto {
                        Verdict::Holds
                    } else {
                        a.disk_nonvanishing(kappa)
                    },
                    format!(
                        "key root of modulus {} inside the disk of radius {kappa}",
                        a.disk_radius
                    ),
                )
            });
            let regions = if kappa > 0.0 {
                Some((
                    Region::disk(kappa / lmax.sqrt())?,
                    Region::disk(kappa * kappa / lmax)?,
                ))
            } else {
                None
            };
            (kappa, regions)
        }
        WeightClass::ModulusAtLeast(lmin) => {
            let best = keys
                .iter()
                .map(|(_, a)| a.exterior_radius)
                .fold(0.0, f64::max);
            let kappa = positive_radius(param, best)?;
            vertex_checks(&|a: &KeyAnalysis| {
                if !a.degree_full {
                    return (
                        Verdict::Fails,
                        String::from("key degree below vertex degree"),
                    );
                }
                (
                    if auto {
                        Verdict::Holds
                    } else {
                        a.exterior_nonvanishing(kappa)
                    },
                    format!(
                        "key root of modulus {} outside the disk of radius {kappa}",
                        a.exterior_radius
                    ),
                )
            });
            let regions = if kappa > 0.0 && kappa.is_finite() {
                Some((
                    Region::exterior(kappa / lmin.sqrt())?,
                    Region::exterior(kappa * kappa / lmin)?,
                ))
            } else {
                None
            };
            (kappa, regions)
        }
    };

    if regions.is_none() {
        diagnostics.push(Diagnostic {
            subject: Subject::Parameter,
            verdict: Verdict::Fails,
            detail: format!("no admissible parameter (best value {parameter})"),
        });
    }
    let hypotheses_ok = diagnostics.is_empty();
    let (multivariate_region, univariate_region) = match regions {
        Some((m, u)) if hypotheses_ok => (Some(m), Some(u)),
        _ => (None, None),
    };
    Ok(Conclusion {
        class: *class,
        parameter,
        multivariate_region,
        univariate_region,
        hypotheses_ok,
        diagnostics,
    })
}

fn positive_radius(param: Option<f64>, auto: f64) -> Result<f64> {
    match param {
        Some(k) if !(k > 0.0) => bail_arg!("kappa must be positive, got {k}"),
        Some(k) => Ok(k),
        None => Ok(auto),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certification {
    pub outcome: Outcome,
    /// `Z(y) ≡ 0`, nonvanishing everywhere by convention.
    pub degenerate: bool,
    pub region: Region,
    pub polynomial: UniPoly,
    /// Every root (the origin included) with its position relative to the
    /// region.
    pub roots: Vec<(Root, RootStatus)>,
    pub verified: bool,
}

/// Compute `Z(y)`, find its roots and test them against `region`.
///
/// Fails when a root lies inside the region. Roots within the slack of the
/// boundary do not fail the check but are listed as
/// [`RootStatus::Boundary`]. An unverified root set makes the outcome
/// inconclusive.
pub fn certify_univariate(g: &Graph, u: &ActivityTable, region: &Region) -> Result<Certification> {
    let polynomial = z_univariate(g, u)?;
    certify_polynomial(polynomial, region)
}

pub fn certify_polynomial(polynomial: UniPoly, region: &Region) -> Result<Certification> {
    if polynomial.is_zero() {
        return Ok(Certification {
            outcome: Outcome::Pass,
            degenerate: true,
            region: *region,
            polynomial,
            roots: Vec::new(),
            verified: true,
        });
    }
    let rs = find_roots(&polynomial)?;
    let mut roots: Vec<(Root, RootStatus)> = Vec::new();
    if rs.origin_multiplicity > 0 {
        let origin = Root {
            z: Complex64::new(0.0, 0.0),
            mult: rs.origin_multiplicity,
        };
        let status = match region {
            Region::Disk { .. } => RootStatus::Inside,
            _ => RootStatus::Outside,
        };
        roots.push((origin, status));
    }
    roots.extend(rs.roots.iter().map(|r| (*r, region.classify(r))));
    let outcome = if roots.iter().any(|(_, s)| *s == RootStatus::Inside) {
        Outcome::Fail
    } else if !rs.verified {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    };
    Ok(Certification {
        outcome,
        degenerate: false,
        region: *region,
        polynomial,
        roots,
        verified: rs.verified,
    })
}

/// Normalized values below this flag a counterexample candidate.
pub const CANDIDATE_THRESHOLD: f64 = 1e-12;

/// Independent generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random point of the region: sectors and the unbounded disk use a
/// log-uniform radius over `[10^-2, 10^2]`, bounded disks a uniform
/// modulus in `[0, κ)`, exteriors a uniform modulus in `(κ, 10κ]`.
pub fn sample_region<R: Rng>(rng: &mut R, region: &Region) -> Complex64 {
    let log_radius = |rng: &mut R| 10f64.powf(rng.gen_range(-2.0..2.0));
    match *region {
        Region::Sector { theta } => {
            let r = log_radius(rng);
            Complex64::from_polar(r, rng.gen_range(-theta..theta))
        }
        Region::Disk { kappa } => {
            let r = if kappa.is_infinite() {
                log_radius(rng)
            } else {
                rng.gen_range(0.0..kappa)
            };
            Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
        }
        Region::Exterior { kappa } => {
            let r = kappa + (9.0 * kappa) * (1.0 - rng.gen::<f64>());
            Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
        }
    }
}

/// One falsification sample.
#[derive(Clone, Debug, PartialEq)]
pub struct Probe {
    pub index: usize,
    /// `|Z(x)|` divided by the largest term magnitude at `x`.
    pub normalized: f64,
    pub point: BTreeMap<VertexId, Complex64>,
}

impl Probe {
    /// Smaller value wins; ties go to the earlier sample.
    pub fn better_than(&self, other: &Probe) -> bool {
        (self.normalized, self.index) < (other.normalized, other.index)
    }
}

pub fn probe(z: &MultiPoly, region: &Region, seed: u64, index: usize) -> Result<Probe> {
    let mut rng = trial_rng(seed, index as u64);
    let point: BTreeMap<VertexId, Complex64> = z
        .vars()
        .iter()
        .map(|&v| (v, sample_region(&mut rng, region)))
        .collect();
    let (value, scale) = z.eval_complex(&point)?;
    let normalized = if scale > 0.0 {
        value.norm() / scale
    } else {
        0.0
    };
    Ok(Probe {
        index,
        normalized,
        point,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Falsification {
    pub samples: usize,
    /// `Z ≡ 0`; nothing to sample.
    pub degenerate: bool,
    pub best: Option<Probe>,
    /// The best normalized value fell below [`CANDIDATE_THRESHOLD`].
    pub candidate: bool,
    /// Normalized `|Z|` at the candidate point, re-evaluated exactly.
    pub recheck: Option<f64>,
    /// The exact re-evaluation is zero.
    pub confirmed: bool,
}

/// Summarize the best of `samples` probes, re-evaluating a candidate in
/// exact arithmetic.
pub fn finish_falsification(
    z: &MultiPoly,
    samples: usize,
    best: Option<Probe>,
) -> Result<Falsification> {
    let candidate = best
        .as_ref()
        .is_some_and(|p| p.normalized < CANDIDATE_THRESHOLD);
    let mut recheck = None;
    let mut confirmed = false;
    if let (true, Some(p)) = (candidate, &best) {
        let exact: BTreeMap<VertexId, Scalar> =
            p.point.iter().map(|(&v, x)| (v, exact_point(*x))).collect();
        let value = z.eval(&exact)?;
        let (_, scale) = z.eval_complex(&p.point)?;
        confirmed = value.is_exact() && value.is_zero();
        recheck = Some(if scale > 0.0 {
            value.modulus() / scale
        } else {
            0.0
        });
    }
    Ok(Falsification {
        samples,
        degenerate: false,
        best,
        candidate,
        recheck,
        confirmed,
    })
}

fn exact_point(x: Complex64) -> Scalar {
    let r = |f: f64| BigRational::from_float(f).unwrap_or_else(BigRational::zero);
    Scalar::gaussian(r(x.re), r(x.im))
}

/// Sample `n` points of `region^V` and report the smallest normalized
/// `|Z|`. Sampling can only refute a nonvanishing claim.
pub fn falsify_multivariate(
    g: &Graph,
    u: &ActivityTable,
    region: &Region,
    n: usize,
    seed: u64,
) -> Result<Falsification> {
    let z = z_compose(g, u)?;
    falsify_polynomial(&z, region, n, seed)
}

pub fn falsify_polynomial(
    z: &MultiPoly,
    region: &Region,
    n: usize,
    seed: u64,
) -> Result<Falsification> {
    if z.is_zero() {
        return Ok(Falsification {
            samples: n,
            degenerate: true,
            best: None,
            candidate: false,
            recheck: None,
            confirmed: false,
        });
    }
    let mut best: Option<Probe> = None;
    for i in 0..n {
        let p = probe(z, region, seed, i)?;
        if best.as_ref().is_none_or(|b| p.better_than(b)) {
            best = Some(p);
        }
    }
    finish_falsification(z, n, best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcViolation {
    /// A zero strictly between two nonzero entries.
    InternalZero,
    /// `N_j² < N_{j−1} N_{j+1}`.
    Inequality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogConcavity {
    Pass,
    Fail {
        index: usize,
        reason: LcViolation,
    },
    /// Entry `index` is not a nonnegative real.
    NotApplicable {
        index: usize,
    },
}

/// Exact check that the sequence is log-concave with no internal zeros.
/// Float entries are taken at their exact binary value.
pub fn logconcavity_check(seq: &[Scalar]) -> LogConcavity {
    let mut vals: Vec<BigRational> = Vec::with_capacity(seq.len());
    for (i, x) in seq.iter().enumerate() {
        let r = match x {
            Scalar::Exact { re, im } if im.is_zero() => Some(re.clone()),
            Scalar::Float(z) if z.im == 0.0 => BigRational::from_float(z.re),
            _ => None,
        };
        match r {
            Some(r) if !r.is_negative() => vals.push(r),
            _ => return LogConcavity::NotApplicable { index: i },
        }
    }
    let first = vals.iter().position(|x| !x.is_zero());
    let last = vals.iter().rposition(|x| !x.is_zero());
    for j in 1..vals.len().saturating_sub(1) {
        if let (Some(f), Some(l)) = (first, last) {
            if f < j && j < l && vals[j].is_zero() {
                return LogConcavity::Fail {
                    index: j,
                    reason: LcViolation::InternalZero,
                };
            }
        }
        if &vals[j] * &vals[j] < &vals[j - 1] * &vals[j + 1] {
            return LogConcavity::Fail {
                index: j,
                reason: LcViolation::Inequality,
            };
        }
    }
    LogConcavity::Pass
}

/// Random instances for the log-concavity scan: simple graphs with unit
/// weights and per-vertex degree windows `f(v) ≤ k ≤ g(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanSpec {
    pub max_vertices: u32,
    pub max_edges: u32,
    /// Largest `g(v) − f(v)`; `None` lets `g(v)` range up to the degree.
    pub max_width: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanTrial {
    pub index: usize,
    pub seed: u64,
    pub graph: Graph,
    /// `(f(v), g(v))` aligned with `graph.vertices()`.
    pub windows: Vec<(usize, usize)>,
    pub activities: ActivityTable,
    pub coefficients: Option<UniPoly>,
    pub verdict: Option<LogConcavity>,
    pub skipped: Option<String>,
}

/// Trial `index` of a scan seeded with `seed`; depends on nothing else.
pub fn scan_trial(spec: &ScanSpec, seed: u64, index: usize) -> Result<ScanTrial> {
    let mut rng = trial_rng(seed, index as u64);
    let graph = random_simple_graph(&mut rng, spec.max_vertices, spec.max_edges);
    let mut windows = Vec::with_capacity(graph.num_vertices());
    let mut table = BTreeMap::new();
    for (&v, d) in graph.vertices().iter().zip(graph.degrees()) {
        let f = rng.gen_range(0..=d);
        let g = match spec.max_width {
            Some(w) => (f + rng.gen_range(0..=w)).min(d),
            None => rng.gen_range(f..=d),
        };
        windows.push((f, g));
        table.insert(
            v,
            (0..=d)
                .map(|k| {
                    if (f..=g).contains(&k) {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect(),
        );
    }
    let activities = ActivityTable::new(&graph, table)?;
    let (coefficients, verdict, skipped) = match z_univariate(&graph, &activities) {
        Ok(p) => {
            let v = logconcavity_check(p.coeffs());
            (Some(p), Some(v), None)
        }
        Err(e @ Error::Resource(_)) => (None, None, Some(format!("{e}"))),
        Err(e) => return Err(e),
    };
    Ok(ScanTrial {
        index,
        seed,
        graph,
        windows,
        activities,
        coefficients,
        verdict,
        skipped,
    })
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ScanReport {
    pub trials: usize,
    pub passes: usize,
    pub not_applicable: usize,
    pub violations: Vec<ScanTrial>,
    pub skipped: Vec<(usize, String)>,
}

/// Fold trials, in index order, into a report.
pub fn collect_scan(trials: impl IntoIterator<Item = ScanTrial>) -> ScanReport {
    let mut report = ScanReport::default();
    for t in trials {
        report.trials += 1;
        match (&t.verdict, &t.skipped) {
            (_, Some(reason)) => report.skipped.push((t.index, reason.clone())),
            (Some(LogConcavity::Pass), _) => report.passes += 1,
            (Some(LogConcavity::NotApplicable { .. }), _) => report.not_applicable += 1,
            (Some(LogConcavity::Fail { .. }), _) => report.violations.push(t),
            (None, None) => {}
        }
    }
    report
}

pub fn conjecture_scan(spec: &ScanSpec, trials: usize, seed: u64) -> Result<ScanReport> {
    let all = (0..trials)
        .map(|i| scan_trial(spec, seed, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(collect_scan(all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, GraphKind};
    use crate::keys::{symmetric_key_2k, KeyFamily};
    use alloc::vec;

    fn k3() -> Graph {
        GraphKind::Cycle(3).generate().unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn weight_class_examples() {
        let g = k3();
        assert!(check_weight_class(&g, &WeightClass::NonnegReal).ok);
        let neg = Graph::new([0, 1], vec![Edge::new(0, 1, Scalar::from_int(-1))]).unwrap();
        let r = check_weight_class(&neg, &WeightClass::NonnegReal);
        assert_eq!((r.ok, r.failing_edges), (false, vec![0]));
        let i = Scalar::gaussian(BigRational::zero(), BigRational::from_integer(1.into()));
        let gi = Graph::new([0, 1], vec![Edge::new(0, 1, i)]).unwrap();
        assert!(check_weight_class(&gi, &WeightClass::bounded_modulus(1.0).unwrap()).ok);
        assert!(check_weight_class(&gi, &WeightClass::modulus_at_least(1.0).unwrap()).ok);
        assert!(!check_weight_class(&gi, &WeightClass::bounded_modulus(0.5).unwrap()).ok);
        assert!(WeightClass::bounded_modulus(0.0).is_err());
    }

    #[test]
    fn matching_keys_give_half_plane_and_real_axis() {
        let g = GraphKind::Petersen.generate().unwrap();
        let u = ActivityTable::matching(&g);
        let c = conclude(
            &g,
            &WeightClass::NonnegReal,
            &analyze_activities(&u).unwrap(),
            None,
        )
        .unwrap();
        assert!(c.hypotheses_ok);
        assert_eq!(c.parameter, 0.0);
        assert_eq!(
            c.multivariate_region,
            Some(Region::Sector { theta: PI / 2.0 })
        );
        assert_eq!(c.univariate_region, Some(Region::Sector { theta: PI }));
    }

    #[test]
    fn explicit_alpha_for_width_two_intervals() {
        let g = GraphKind::Complete(5).generate().unwrap();
        let u =
            ActivityTable::from_family(&g, &KeyFamily::Interval { lower: 1, upper: 3 }).unwrap();
        let a = analyze_activities(&u).unwrap();
        let c = conclude(&g, &WeightClass::NonnegReal, &a, Some(PI / 3.0)).unwrap();
        assert!(c.hypotheses_ok, "{:?}", c.diagnostics);
        let Some(Region::Sector { theta }) = c.multivariate_region else {
            panic!()
        };
        assert!((theta - PI / 6.0).abs() < 1e-15);
        let Some(Region::Sector { theta }) = c.univariate_region else {
            panic!()
        };
        assert!((theta - PI / 3.0).abs() < 1e-15);
        // the auto value is at most π/3
        let auto = conclude(&g, &WeightClass::NonnegReal, &a, None).unwrap();
        assert!(auto.parameter <= PI / 3.0 + 1e-12);
        // a smaller alpha than the keys allow is rejected at some vertex
        let bad = conclude(
            &g,
            &WeightClass::NonnegReal,
            &a,
            Some(auto.parameter - 1e-6),
        )
        .unwrap();
        assert!(!bad.hypotheses_ok);
        assert!(bad.univariate_region.is_none());
        assert!(matches!(bad.diagnostics[0].subject, Subject::Vertex(_)));
    }

    #[test]
    fn symmetric_keys_pin_the_modulus() {
        let g = GraphKind::Cycle(5).generate().unwrap();
        let k = symmetric_key_2k(Scalar::from_int(4), 1).unwrap();
        let u = ActivityTable::uniform(&g, k.activities()).unwrap();
        let a = analyze_activities(&u).unwrap();
        for class in [
            WeightClass::BoundedModulus(1.0),
            WeightClass::ModulusAtLeast(1.0),
        ] {
            let c = conclude(&g, &class, &a, None).unwrap();
            assert!(c.hypotheses_ok, "{:?}", c.diagnostics);
            let r = c.univariate_region.unwrap();
            let radius = match r {
                Region::Disk { kappa } | Region::Exterior { kappa } => kappa,
                Region::Sector { .. } => panic!(),
            };
            assert!((radius - 0.25).abs() < 1e-14);
            let cert = certify_univariate(&g, &u, &r).unwrap();
            assert_eq!(cert.outcome, Outcome::Pass);
            for (root, _) in &cert.roots {
                assert!((root.modulus() - 0.25).abs() < 1e-10);
            }
        }
        // an outward-perturbed kappa flips the disk hypothesis
        let c = conclude(
            &g,
            &WeightClass::BoundedModulus(1.0),
            &a,
            Some(0.5 * (1.0 + 1e-8)),
        )
        .unwrap();
        assert!(!c.hypotheses_ok);
    }

    #[test]
    fn exterior_needs_full_degree() {
        let g = k3();
        let u = ActivityTable::matching(&g);
        let c = conclude(
            &g,
            &WeightClass::ModulusAtLeast(1.0),
            &analyze_activities(&u).unwrap(),
            None,
        )
        .unwrap();
        assert!(!c.hypotheses_ok);
        assert_eq!(c.diagnostics.len(), 3);
    }

    #[test]
    fn certify_examples() {
        let g = k3();
        let cert = certify_univariate(
            &g,
            &ActivityTable::matching(&g),
            &Region::Sector { theta: PI },
        )
        .unwrap();
        assert_eq!(cert.outcome, Outcome::Pass);
        assert_eq!(cert.roots.len(), 1);
        assert!((cert.roots[0].0.z - Complex64::new(-1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert_eq!(cert.roots[0].1, RootStatus::Outside);

        let u = ActivityTable::from_family(&g, &KeyFamily::Reciprocal).unwrap();
        for r in [Region::Disk { kappa: 1.0 }, Region::Exterior { kappa: 1.0 }] {
            let cert = certify_univariate(&g, &u, &r).unwrap();
            assert_eq!(cert.outcome, Outcome::Pass);
            assert!(cert.roots.iter().all(|(_, s)| *s == RootStatus::Boundary));
        }
        let zero = ActivityTable::uniform(&g, &ints(&[0, 0, 0])).unwrap();
        let cert = certify_univariate(&g, &zero, &Region::Disk { kappa: 1.0 }).unwrap();
        assert!(cert.degenerate);
        assert_eq!(cert.outcome, Outcome::Pass);

        // a region that the conclusion does not support
        let cert = certify_univariate(
            &g,
            &ActivityTable::matching(&g),
            &Region::Disk { kappa: 1.0 },
        )
        .unwrap();
        assert_eq!(cert.outcome, Outcome::Fail);
    }

    #[test]
    fn falsify_examples() {
        let g = k3();
        let u = ActivityTable::matching(&g);
        let s = Region::Sector { theta: PI / 2.0 };
        let f = falsify_multivariate(&g, &u, &s, 2000, 7).unwrap();
        assert!(!f.candidate);
        assert!(f.best.as_ref().unwrap().normalized > 1e-12);
        assert_eq!(f, falsify_multivariate(&g, &u, &s, 2000, 7).unwrap());
        let empty = falsify_multivariate(&g, &u, &s, 0, 7).unwrap();
        assert!(empty.best.is_none() && !empty.candidate);
    }

    #[test]
    fn falsify_rechecks_candidates_exactly() {
        // 1 + x0 vanishes at x0 = -1; the sampler never lands there exactly
        let z = MultiPoly::from_terms(
            [0u32],
            [
                (crate::multipoly::DegreeVector::new(), Scalar::one()),
                (
                    crate::multipoly::DegreeVector::from_pairs([(0, 1)]),
                    Scalar::one(),
                ),
            ],
        );
        let probe = Probe {
            index: 0,
            normalized: 0.0,
            point: [(0, Complex64::new(-1.0, 0.0))].into_iter().collect(),
        };
        let f = finish_falsification(&z, 1, Some(probe)).unwrap();
        assert!(f.candidate && f.confirmed);
    }

    #[test]
    fn samples_stay_in_region() {
        let mut rng = trial_rng(3, 0);
        for r in [
            Region::Sector { theta: 0.3 },
            Region::Disk { kappa: 0.5 },
            Region::Disk {
                kappa: f64::INFINITY,
            },
            Region::Exterior { kappa: 2.0 },
        ] {
            for _ in 0..1000 {
                let z = sample_region(&mut rng, &r);
                assert!(r.contains(z), "{z} not in {r}");
            }
        }
    }

    #[test]
    fn logconcavity_examples() {
        assert_eq!(logconcavity_check(&ints(&[1, 6, 3])), LogConcavity::Pass);
        assert_eq!(
            logconcavity_check(&ints(&[1, 0, 1])),
            LogConcavity::Fail {
                index: 1,
                reason: LcViolation::InternalZero
            }
        );
        assert_eq!(logconcavity_check(&ints(&[1, 2, 4, 8])), LogConcavity::Pass);
        assert_eq!(
            logconcavity_check(&ints(&[1, 1, 2])),
            LogConcavity::Fail {
                index: 1,
                reason: LcViolation::Inequality
            }
        );
        assert_eq!(
            logconcavity_check(&ints(&[1, -1])),
            LogConcavity::NotApplicable { index: 1 }
        );
        assert_eq!(
            logconcavity_check(&ints(&[0, 0, 1, 2, 1, 0])),
            LogConcavity::Pass
        );
        assert_eq!(logconcavity_check(&[]), LogConcavity::Pass);
    }

    #[test]
    fn narrow_scans_find_nothing() {
        let spec = ScanSpec {
            max_vertices: 7,
            max_edges: 10,
            max_width: Some(1),
        };
        let r = conjecture_scan(&spec, 100, 11).unwrap();
        assert_eq!(r.trials, 100);
        assert!(r.violations.is_empty());
        assert_eq!(r, conjecture_scan(&spec, 100, 11).unwrap());
        assert_eq!(
            conjecture_scan(&spec, 0, 11).unwrap(),
            ScanReport::default()
        );
    }

    #[test]
    fn scan_trials_are_independent_of_each_other() {
        let spec = ScanSpec {
            max_vertices: 6,
            max_edges: 8,
            max_width: None,
        };
        let full = conjecture_scan(&spec, 20, 5).unwrap();
        let t13 = scan_trial(&spec, 5, 13).unwrap();
        assert_eq!(full.trials, 20);
        assert_eq!(t13, scan_trial(&spec, 5, 13).unwrap());
    }
}
