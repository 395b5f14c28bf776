//! Spanning subgraphs of a regular graph as a canonical ensemble.
//!
//! A subgraph `H` has energy `U(H) = J·#H + Σ_j μ_j·#V_j(H)`, where
//! `V_j(H)` are the vertices of degree `j` in `H`, and Boltzmann weight
//! `e^{-βU(H)}`. With `y = e^{-βJ}` and `u_j = e^{-βμ_j}` the partition
//! function is `Z(G, 1, u; y^{1/2})`. Units have `k_B = 1`; `μ_j = +∞`
//! forbids degree `j`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;

use crate::error::{bail_arg, Error, Result};
use crate::graph::{Graph, GraphKind, SubgraphMask};
use crate::keys::{analyze_key, key_from_activities, KeyAnalysis, KeyPolynomial};
use crate::regions::{ANGLE_SLACK, RADIUS_SLACK};
use crate::scalar::Scalar;
use crate::subgraph::{z_univariate, ActivityTable};

/// Largest relative disagreement tolerated between the two routes to `Z`.
pub const ROUTE_TOL: f64 = 1e-10;
/// Step of the finite-difference derivative checks.
pub const FD_STEP: f64 = 1e-5;
/// Tolerance of the finite-difference checks, relative to
/// `max(|expectation|, 1)`.
pub const FD_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    pub beta: f64,
    pub j: f64,
    /// `μ_0, …, μ_d`; `f64::INFINITY` forbids a degree.
    pub mu: Vec<f64>,
}

impl ModelParams {
    pub fn new(beta: f64, j: f64, mu: Vec<f64>) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            bail_arg!("beta must be positive and finite, got {beta}");
        }
        if !j.is_finite() {
            bail_arg!("J must be finite, got {j}");
        }
        if let Some(m) = mu.iter().find(|m| m.is_nan() || **m == f64::NEG_INFINITY) {
            bail_arg!("chemical potentials must be real or +inf, got {m}");
        }
        Ok(ModelParams { beta, j, mu })
    }

    pub fn degree(&self) -> usize {
        self.mu.len().saturating_sub(1)
    }

    fn with_j(&self, j: f64) -> Self {
        ModelParams { j, ..self.clone() }
    }

    fn with_mu(&self, idx: usize, m: f64) -> Self {
        let mut p = self.clone();
        p.mu[idx] = m;
        p
    }
}

fn check_regular(g: &Graph, p: &ModelParams) -> Result<usize> {
    let Some(d) = g.regular_degree() else {
        bail_arg!("the ensemble is defined on regular graphs only");
    };
    if p.mu.len() != d + 1 {
        bail_arg!(
            "a {d}-regular graph needs {} chemical potentials, got {}",
            d + 1,
            p.mu.len()
        );
    }
    Ok(d)
}

/// `U(H)`, or `+∞` when `H` has a vertex of forbidden degree.
pub fn energy(g: &Graph, h: &SubgraphMask, p: &ModelParams) -> Result<f64> {
    check_regular(g, p)?;
    let degs = g.subgraph_degrees(h)?;
    let mut counts = vec![0usize; p.mu.len()];
    counts[0] = g.num_vertices();
    for (_, k) in degs.iter() {
        counts[0] -= 1;
        counts[k as usize] += 1;
    }
    Ok(class_energy(p, h.count(), &counts))
}

fn class_energy(p: &ModelParams, edges: usize, counts: &[usize]) -> f64 {
    let mut u = p.j * edges as f64;
    for (m, &c) in p.mu.iter().zip(counts) {
        if c > 0 {
            u += m * c as f64;
        }
    }
    u
}

/// `y = e^{-βJ}` and `u_j = e^{-βμ_j}`. Zero energies and infinite
/// potentials give the exact values 1 and 0.
pub fn activities_from_potentials(p: &ModelParams) -> (Scalar, Vec<Scalar>) {
    let boltzmann = |e: f64| {
        if e == 0.0 {
            Scalar::one()
        } else if e == f64::INFINITY {
            Scalar::zero()
        } else {
            Scalar::float((-p.beta * e).exp())
        }
    };
    (boltzmann(p.j), p.mu.iter().map(|&m| boltzmann(m)).collect())
}

/// Subgraphs grouped by edge count and degree counts; everything the
/// ensemble needs from a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub vertices: usize,
    pub edges: usize,
    pub degree: usize,
    /// `(#H, #V_0(H), …, #V_d(H))` to the number of subgraphs.
    pub classes: BTreeMap<(usize, Vec<usize>), u64>,
}

impl Census {
    pub fn new(g: &Graph) -> Result<Self> {
        let Some(d) = g.regular_degree() else {
            bail_arg!("the ensemble is defined on regular graphs only");
        };
        g.check_edge_cap()?;
        let ends = g.endpoint_indices();
        let m = ends.len();
        let mut deg = vec![0usize; g.num_vertices()];
        let mut counts = vec![0usize; d + 1];
        counts[0] = g.num_vertices();
        let mut present = vec![false; m];
        let mut edges = 0usize;
        let mut classes = BTreeMap::new();
        classes.insert((0, counts.clone()), 1u64);
        // Gray code order: one edge toggles per step.
        for i in 1u64..(1u64 << m) {
            let e = i.trailing_zeros() as usize;
            let (a, b) = ends[e];
            let add = !present[e];
            present[e] = add;
            for v in [a, b] {
                counts[deg[v]] -= 1;
                if add {
                    deg[v] += 1;
                } else {
                    deg[v] -= 1;
                }
                counts[deg[v]] += 1;
            }
            if add {
                edges += 1;
            } else {
                edges -= 1;
            }
            *classes.entry((edges, counts.clone())).or_insert(0) += 1;
        }
        Ok(Census {
            vertices: g.num_vertices(),
            edges: m,
            degree: d,
            classes,
        })
    }

    /// `(log multiplicity − βU, #H, counts)` for every allowed class.
    fn log_weights<'a>(
        &'a self,
        p: &'a ModelParams,
    ) -> impl Iterator<Item = (f64, usize, &'a [usize])> + 'a {
        self.classes.iter().filter_map(move |((e, counts), &mult)| {
            let u = class_energy(p, *e, counts);
            (u != f64::INFINITY).then(|| ((mult as f64).ln() - p.beta * u, *e, counts.as_slice()))
        })
    }

    /// `log Z` by log-sum-exp over the Boltzmann weights.
    pub fn log_partition(&self, p: &ModelParams) -> Result<f64> {
        self.check(p)?;
        let lw: Vec<f64> = self.log_weights(p).map(|(w, _, _)| w).collect();
        if lw.is_empty() {
            return Err(Error::DegenerateModel(String::from(
                "every spanning subgraph has a forbidden degree",
            )));
        }
        Ok(log_sum_exp(&lw))
    }

    fn check(&self, p: &ModelParams) -> Result<()> {
        if p.mu.len() != self.degree + 1 {
            bail_arg!(
                "a {}-regular graph needs {} chemical potentials, got {}",
                self.degree,
                self.degree + 1,
                p.mu.len()
            );
        }
        Ok(())
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Partition function and expectations at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct Observables {
    /// `Z`, exact when every activity and `y` are exact.
    pub partition: Scalar,
    pub log_partition: f64,
    pub expected_edges: Scalar,
    pub expected_degree_counts: Vec<Scalar>,
    /// `−log Z / (β |V|)`.
    pub free_energy: f64,
    /// `−(1/β) ∂ log Z / ∂J` by central differences.
    pub fd_edges: f64,
    /// `−(1/β) ∂ log Z / ∂μ_j` by central differences; `None` for
    /// forbidden degrees.
    pub fd_degree_counts: Vec<Option<f64>>,
}

/// `log Z` through the polynomial `Z(y)`. Float activities are rescaled
/// by the largest one to keep the coefficients in range.
fn polynomial_log_partition(g: &Graph, p: &ModelParams) -> Result<(f64, Option<Scalar>)> {
    let (y, u) = activities_from_potentials(p);
    if y.is_exact() && u.iter().all(Scalar::is_exact) {
        let z = z_univariate(g, &ActivityTable::uniform(g, &u)?)?.eval(&y);
        let r = z.as_rational().cloned().unwrap_or_default();
        return Ok((rat_ln(&r), Some(z)));
    }
    let logs: Vec<f64> = p.mu.iter().map(|m| -p.beta * m).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return Ok((f64::NEG_INFINITY, None));
    }
    let shifted: Vec<Scalar> = logs
        .iter()
        .map(|&l| {
            if l == f64::NEG_INFINITY {
                Scalar::zero()
            } else {
                Scalar::float((l - top).exp())
            }
        })
        .collect();
    let poly = z_univariate(g, &ActivityTable::uniform(g, &shifted)?)?;
    let log_y = -p.beta * p.j;
    let terms: Vec<f64> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c.to_complex().re.ln() + k as f64 * log_y)
        .collect();
    Ok((g.num_vertices() as f64 * top + log_sum_exp(&terms), None))
}

fn rat_ln(r: &BigRational) -> f64 {
    // ln(p/q) from the bit lengths, safe for huge numerators.
    let (n, d) = (r.numer(), r.denom());
    let shift = |x: &num_bigint::BigInt| x.bits().saturating_sub(60);
    let (sn, sd) = (shift(n), shift(d));
    let nf = (n >> sn).to_f64().unwrap_or(f64::NAN);
    let df = (d >> sd).to_f64().unwrap_or(f64::NAN);
    nf.ln() - df.ln() + (sn as f64 - sd as f64) * core::f64::consts::LN_2
}

/// `Z_G(β, J, μ)` by both routes, which must agree to [`ROUTE_TOL`].
/// Returns the polynomial route as a float.
pub fn partition(g: &Graph, p: &ModelParams) -> Result<f64> {
    Ok(observables(g, p)?.log_partition.exp())
}

pub fn log_partition(g: &Graph, p: &ModelParams) -> Result<f64> {
    Ok(observables(g, p)?.log_partition)
}

pub fn expected_edges(g: &Graph, p: &ModelParams) -> Result<Scalar> {
    Ok(observables(g, p)?.expected_edges)
}

pub fn expected_degree_counts(g: &Graph, p: &ModelParams) -> Result<Vec<Scalar>> {
    Ok(observables(g, p)?.expected_degree_counts)
}

pub fn observables(g: &Graph, p: &ModelParams) -> Result<Observables> {
    check_regular(g, p)?;
    observables_with(g, &Census::new(g)?, p)
}

/// As [`observables`] with a precomputed census of `g`.
pub fn observables_with(g: &Graph, census: &Census, p: &ModelParams) -> Result<Observables> {
    check_regular(g, p)?;
    let direct = census.log_partition(p)?;
    let (poly, exact_z) = polynomial_log_partition(g, p)?;
    if !((direct - poly).abs() <= ROUTE_TOL) {
        return Err(Error::Consistency(format!(
            "log Z by enumeration {direct} and by the polynomial {poly} disagree"
        )));
    }

    let d = census.degree;
    let (expected_edges, expected_degree_counts, partition) = match exact_z {
        Some(z) => {
            let (e, c) = exact_expectations(census, p, &z);
            (e, c, z)
        }
        None => {
            let mut e = 0.0;
            let mut c = vec![0.0; d + 1];
            for (w, edges, counts) in census.log_weights(p) {
                let prob = (w - poly).exp();
                e += prob * edges as f64;
                for (acc, &n) in c.iter_mut().zip(counts) {
                    *acc += prob * n as f64;
                }
            }
            (
                Scalar::float(e),
                c.into_iter().map(Scalar::float).collect(),
                Scalar::float(poly.exp()),
            )
        }
    };

    let fd = |lo: ModelParams, hi: ModelParams, h: f64| -> Result<f64> {
        Ok(-(census.log_partition(&hi)? - census.log_partition(&lo)?) / (2.0 * h * p.beta))
    };
    let fd_edges = fd(p.with_j(p.j - FD_STEP), p.with_j(p.j + FD_STEP), FD_STEP)?;
    check_fd("<#H>", expected_edges.to_complex().re, fd_edges)?;
    let mut fd_degree_counts = Vec::with_capacity(d + 1);
    for (j, m) in p.mu.iter().enumerate() {
        if m.is_infinite() {
            fd_degree_counts.push(None);
            continue;
        }
        let v = fd(
            p.with_mu(j, m - FD_STEP),
            p.with_mu(j, m + FD_STEP),
            FD_STEP,
        )?;
        check_fd(
            &format!("<#V_{j}>"),
            expected_degree_counts[j].to_complex().re,
            v,
        )?;
        fd_degree_counts.push(Some(v));
    }

    Ok(Observables {
        partition,
        log_partition: poly,
        expected_edges,
        expected_degree_counts,
        free_energy: -poly / (p.beta * census.vertices as f64),
        fd_edges,
        fd_degree_counts,
    })
}

fn exact_expectations(census: &Census, p: &ModelParams, z: &Scalar) -> (Scalar, Vec<Scalar>) {
    let (y, u) = activities_from_potentials(p);
    let mut e = Scalar::zero();
    let mut c = vec![Scalar::zero(); census.degree + 1];
    for ((edges, counts), &mult) in &census.classes {
        let mut w = &Scalar::from_int(mult as i64) * &y.pow(*edges as u32);
        for (uj, &n) in u.iter().zip(counts) {
            w = &w * &uj.pow(n as u32);
        }
        if w.is_zero() {
            continue;
        }
        e = &e + &(&w * &Scalar::from_int(*edges as i64));
        for (acc, &n) in c.iter_mut().zip(counts) {
            *acc = &*acc + &(&w * &Scalar::from_int(n as i64));
        }
    }
    let div = |x: Scalar| x.checked_div(z).unwrap_or_else(Scalar::zero);
    (div(e), c.into_iter().map(div).collect())
}

fn check_fd(what: &str, exact: f64, fd: f64) -> Result<()> {
    if (exact - fd).abs() <= FD_TOL * exact.abs().max(1.0) {
        Ok(())
    } else {
        Err(Error::Consistency(format!(
            "{what} = {exact} but the finite difference gives {fd}"
        )))
    }
}

/// Families of regular graphs indexed by a size parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    Cycle,
    Complete,
    /// Tori `C_n^r`.
    Torus {
        r: u32,
    },
    RandomRegular {
        d: u32,
        seed: u64,
    },
}

impl GraphFamily {
    pub fn member(&self, n: u32) -> GraphKind {
        match *self {
            GraphFamily::Cycle => GraphKind::Cycle(n),
            GraphFamily::Complete => GraphKind::Complete(n),
            GraphFamily::Torus { r } => GraphKind::Torus { n, r },
            GraphFamily::RandomRegular { d, seed } => GraphKind::RandomRegular { n, d, seed },
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Cycle => write!(f, "cycle"),
            GraphFamily::Complete => write!(f, "complete"),
            GraphFamily::Torus { r } => write!(f, "torus:{r}"),
            GraphFamily::RandomRegular { d, seed } => write!(f, "random-regular:{d}:{seed}"),
        }
    }
}

/// `cycle`, `complete`, `torus:r`, `random-regular:d:seed`.
impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |x: &str| {
            x.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad number {x:?} in family {s:?}")))
        };
        Ok(match parts.as_slice() {
            ["cycle"] => GraphFamily::Cycle,
            ["complete"] => GraphFamily::Complete,
            ["torus", r] => GraphFamily::Torus { r: num(r)? as u32 },
            ["random-regular", d, seed] => GraphFamily::RandomRegular {
                d: num(d)? as u32,
                seed: num(seed)?,
            },
            _ => return Err(Error::Parse(format!("unknown graph family {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeEnergyPoint {
    pub n: u32,
    pub vertices: usize,
    pub free_energy: Option<f64>,
    /// Why this size was skipped.
    pub error: Option<String>,
}

/// `f_n = −log Z_{G_n} / (β |V(G_n)|)` for each size. Sizes that cannot be
/// built or enumerated are reported and skipped.
pub fn free_energy_point(family: &GraphFamily, p: &ModelParams, n: u32) -> FreeEnergyPoint {
    let result = family
        .member(n)
        .generate()
        .and_then(|g| Ok((g.num_vertices(), log_partition(&g, p)?)));
    match result {
        Ok((v, logz)) => FreeEnergyPoint {
            n,
            vertices: v,
            free_energy: Some(-logz / (p.beta * v as f64)),
            error: None,
        },
        Err(e) => FreeEnergyPoint {
            n,
            vertices: 0,
            free_energy: None,
            error: Some(format!("{e}")),
        },
    }
}

pub fn free_energy_sequence(
    family: &GraphFamily,
    p: &ModelParams,
    sizes: &[u32],
) -> Vec<FreeEnergyPoint> {
    sizes
        .iter()
        .map(|&n| free_energy_point(family, p, n))
        .collect()
}

/// Values of `J` (at fixed `β`, `μ`) where the limiting free energy may
/// fail to be analytic, as far as the key polynomial can tell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TransitionWindow {
    /// Analytic for every real `J`.
    Empty,
    Point(f64),
    /// Closed interval; either end may be infinite.
    Interval {
        lower: f64,
        upper: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticityReport {
    pub degree: usize,
    pub beta: f64,
    pub activities: Vec<Scalar>,
    pub key: KeyPolynomial,
    pub analysis: KeyAnalysis,
    /// Sector clause: the `ε` with `K` nonvanishing on `S[π/2 + ε]`.
    pub sector_epsilon: Option<f64>,
    /// Disk clause: `(κ, J_0)`, analytic for `J > J_0`.
    pub disk: Option<(f64, f64)>,
    /// Exterior clause: `(κ, J_0)`, analytic for `J < J_0`.
    pub exterior: Option<(f64, f64)>,
    /// What the disk and exterior clauses alone leave open.
    pub modulus_window: Option<TransitionWindow>,
    /// Combined verdict of all applicable clauses.
    pub window: TransitionWindow,
}

/// Which zero-free region clauses the key `K(β, μ; z)` supports and what
/// they say about analyticity in `J`.
pub fn analyticity_report(d: usize, beta: f64, mu: &[f64]) -> Result<AnalyticityReport> {
    let p = ModelParams::new(beta, 0.0, mu.to_vec())?;
    if mu.len() != d + 1 {
        bail_arg!(
            "degree {d} needs {} chemical potentials, got {}",
            d + 1,
            mu.len()
        );
    }
    let (_, activities) = activities_from_potentials(&p);
    let key = key_from_activities(&activities, d)?;
    let analysis = match analyze_key(&key) {
        Ok(a) => a,
        Err(Error::ZeroKey) => {
            return Err(Error::DegenerateModel(String::from(
                "every degree is forbidden, so the key polynomial vanishes",
            )))
        }
        Err(e) => return Err(e),
    };

    let eps = analysis.sector_max - PI / 2.0;
    let sector_epsilon = (eps > ANGLE_SLACK).then_some(eps);
    let threshold = |kappa: f64| -2.0 / beta * kappa.ln();
    let disk = (analysis.disk_radius > 0.0).then(|| {
        let k = analysis.disk_radius;
        (k, threshold(k))
    });
    let exterior = (analysis.degree_full && analysis.exterior_radius > 0.0).then(|| {
        let k = analysis.exterior_radius;
        (k, threshold(k))
    });

    let modulus_window = (disk.is_some() || exterior.is_some()).then(|| {
        let upper = disk.map_or(f64::INFINITY, |(_, j)| j);
        let lower = exterior.map_or(f64::NEG_INFINITY, |(_, j)| j);
        let same_radius = matches!(
            (disk, exterior),
            (Some((a, _)), Some((b, _))) if (a - b).abs() <= RADIUS_SLACK * a.max(b)
        );
        if same_radius {
            TransitionWindow::Point(0.5 * (lower + upper))
        } else if lower > upper {
            TransitionWindow::Empty
        } else {
            TransitionWindow::Interval { lower, upper }
        }
    });
    let window = if sector_epsilon.is_some() {
        TransitionWindow::Empty
    } else {
        modulus_window.unwrap_or(TransitionWindow::Interval {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
        })
    };

    Ok(AnalyticityReport {
        degree: d,
        beta,
        activities,
        key,
        analysis,
        sector_epsilon,
        disk,
        exterior,
        modulus_window,
        window,
    })
}
