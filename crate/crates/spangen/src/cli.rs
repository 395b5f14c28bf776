//! Command-line surface. `main` only parses arguments and maps errors to
//! exit codes; everything else lives here so it can be driven from tests.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use spangen_core::keys::analyze_key;
use spangen_core::roots::find_roots;
use spangen_core::statmech::{analyticity_report, GraphFamily};
use spangen_core::subgraph::{omega, z_compose, z_univariate};
use spangen_core::theorem::{
    analyze_activities, certify_univariate, conclude, logconcavity_check, LogConcavity, Outcome,
    ScanSpec,
};
use spangen_core::{ActivityTable, Graph, GraphKind, KeyFamily};

use crate::error::{CliError, Result};
use crate::json::{
    activities_from_json, all_roots, graph_from_json, graph_to_json, multipoly_to_json,
    parse_region, root_to_json, roots_csv, unipoly_from_json, unipoly_from_list, unipoly_to_json,
};
use crate::parallel::{falsify, scan, sweep, thread_pool};
use crate::report::{
    analyticity_json, certification_json, conclusion_json, falsification_json, key_report,
    logconcavity_json, observables_json, parse_weight_class, scan_json,
};

#[derive(Debug, Parser)]
#[command(
    name = "spangen",
    version,
    about = "Degree-constrained subgraph polynomials and their zeros"
)]
pub struct Cli {
    /// Worker threads for falsify, scan and statmech (default: $SPANGEN_THREADS or all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Master seed for anything random.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// CSV instead of JSON where supported (roots, statmech).
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph JSON file; `-` or absent reads standard input.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KeyArg {
    /// Key family applied at every vertex, e.g. `matching`, `interval:1..2`, `ruelle:1`.
    #[arg(long, conflicts_with = "activities")]
    pub keys: Option<String>,

    /// Activity table JSON file.
    #[arg(long)]
    pub activities: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassArg {
    /// Edge weight class: `nonneg`, `bounded:L` or `atleast:L`.
    #[arg(long, default_value = "nonneg")]
    pub class: String,

    /// Explicit α (nonneg) or κ (bounded, atleast); default is the best value the keys allow.
    #[arg(long)]
    pub param: Option<f64>,

    /// Test this region instead of the concluded one: `S[theta]`, `kD` or `kE`.
    #[arg(long)]
    pub region: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the subgraph polynomial Z (or Ω, or the univariate Z(y)).
    Poly {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        keys: KeyArg,
        /// Diagonal specialization Z(y) with all x_v = y^(1/2).
        #[arg(long)]
        univariate: bool,
        /// The edge product Ω instead of Z.
        #[arg(long, conflicts_with_all = ["univariate", "keys", "activities"])]
        omega: bool,
    },
    /// Roots of a univariate polynomial or of Z(y).
    Roots {
        /// Comma-separated coefficients, lowest degree first.
        #[arg(long, conflicts_with = "poly")]
        coefficients: Option<String>,
        /// Univariate polynomial JSON file.
        #[arg(long)]
        poly: Option<PathBuf>,
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        keys: KeyArg,
    },
    /// Analyze the key polynomial of a family at one degree.
    Keys {
        #[arg(long)]
        family: String,
        #[arg(long)]
        degree: usize,
    },
    /// Conclude a zero-free region and check the roots of Z(y) against it.
    Certify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        keys: KeyArg,
        #[command(flatten)]
        class: ClassArg,
    },
    /// Sample the multivariate region looking for zeros of Z.
    Falsify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        keys: KeyArg,
        #[command(flatten)]
        class: ClassArg,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Log-concavity (no internal zeros) of the coefficients of Z(y).
    Logcc {
        /// Check this sequence instead of a graph polynomial.
        #[arg(long)]
        coefficients: Option<String>,
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        keys: KeyArg,
    },
    /// Random search for log-concavity violations with interval keys.
    Scan {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_vertices: u32,
        #[arg(long, default_value_t = 10)]
        max_edges: u32,
        /// Largest g − f per vertex, or `any`.
        #[arg(long, default_value = "any")]
        width: String,
    },
    /// Partition function, expectations and the analyticity report.
    Statmech {
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long = "J", default_value_t = 0.0, allow_hyphen_values = true)]
        j: f64,
        /// Chemical potentials μ_0..μ_d, comma-separated; `inf` forbids a degree.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Regular graph family: `cycle`, `complete`, `torus:r`, `random-regular:d:seed`.
        #[arg(long, conflicts_with = "graph")]
        family: Option<String>,
        /// Family sizes, comma-separated.
        #[arg(long, requires = "family")]
        sizes: Option<String>,
        /// A single regular graph instead of a family.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Grid, e.g. `beta=0.5:2:4,J=-1:1:5` (start:stop:count, inclusive).
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
    },
    /// Emit a generated graph as JSON.
    Generate {
        /// `path:n`, `cycle:n`, `complete:n`, `torus:n:r`, `petersen`,
        /// `random_regular:n:d[:seed]`, `gnm:n:m[:seed]`.
        #[arg(long)]
        kind: String,
    },
}

/// Output of one run.
pub struct Run {
    pub code: i32,
    pub text: String,
}

impl Run {
    fn json(v: Value, code: i32) -> Self {
        let mut text = serde_json::to_string_pretty(&v).expect("values serialize");
        text.push('\n');
        Run { code, text }
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Run> {
    let pool = thread_pool(cli.threads)?;
    let seed = cli.seed;
    match &cli.command {
        Command::Generate { kind } => {
            let g = generate(kind, seed)?;
            Ok(Run::json(graph_to_json(&g), 0))
        }
        Command::Poly {
            graph,
            keys,
            univariate,
            omega: want_omega,
        } => {
            let g = read_graph(graph, stdin)?;
            if *want_omega {
                return Ok(Run::json(multipoly_to_json(&omega(&g)?), 0));
            }
            let u = read_keys(keys, &g)?;
            if *univariate {
                Ok(Run::json(unipoly_to_json(&z_univariate(&g, &u)?, "y"), 0))
            } else {
                Ok(Run::json(multipoly_to_json(&z_compose(&g, &u)?), 0))
            }
        }
        Command::Roots {
            coefficients,
            poly,
            graph,
            keys,
        } => {
            let p = match (coefficients, poly) {
                (Some(c), _) => unipoly_from_list(c)?,
                (None, Some(path)) => unipoly_from_json(&read_json(&Some(path.clone()), stdin)?)?,
                (None, None) => {
                    let g = read_graph(graph, stdin)?;
                    z_univariate(&g, &read_keys(keys, &g)?)?
                }
            };
            let rs = find_roots(&p)?;
            let roots = all_roots(&rs);
            if cli.csv {
                return Ok(Run {
                    code: 0,
                    text: roots_csv(&roots),
                });
            }
            Ok(Run::json(
                json!({
                    "polynomial": unipoly_to_json(&p, "y"),
                    "roots": roots.iter().map(root_to_json).collect::<Vec<_>>(),
                    "verified": rs.verified,
                    "residual": rs.residual,
                }),
                0,
            ))
        }
        Command::Keys { family, degree } => {
            let fam: KeyFamily = family.parse()?;
            let key = fam.key(*degree)?;
            let a = analyze_key(&key)?;
            Ok(Run::json(key_report(&fam, &key, &a), 0))
        }
        Command::Certify { graph, keys, class } => {
            let g = read_graph(graph, stdin)?;
            let u = read_keys(keys, &g)?;
            let wc = parse_weight_class(&class.class)?;
            let conclusion = conclude(&g, &wc, &analyze_activities(&u)?, class.param)?;
            let region = match &class.region {
                Some(r) => Some(parse_region(r)?),
                None => conclusion.univariate_region,
            };
            let mut report = json!({ "conclusion": conclusion_json(&conclusion) });
            let code = match region {
                None => {
                    report["verdict"] = json!("no_region");
                    1
                }
                Some(region) => {
                    let cert = certify_univariate(&g, &u, &region)?;
                    let body = certification_json(&cert);
                    for (k, v) in body.as_object().expect("object") {
                        report[k] = v.clone();
                    }
                    match cert.outcome {
                        Outcome::Pass => 0,
                        Outcome::Fail => 1,
                        Outcome::Inconclusive => 3,
                    }
                }
            };
            Ok(Run::json(report, code))
        }
        Command::Falsify {
            graph,
            keys,
            class,
            samples,
        } => {
            let g = read_graph(graph, stdin)?;
            let u = read_keys(keys, &g)?;
            let region = match &class.region {
                Some(r) => parse_region(r)?,
                None => {
                    let wc = parse_weight_class(&class.class)?;
                    let c = conclude(&g, &wc, &analyze_activities(&u)?, class.param)?;
                    c.multivariate_region.ok_or_else(|| {
                        CliError::Usage(
                            "the hypotheses fail, so there is no region to test; pass --region"
                                .into(),
                        )
                    })?
                }
            };
            let z = z_compose(&g, &u)?;
            let f = pool.install(|| falsify(&z, &region, *samples, seed))?;
            Ok(Run::json(
                falsification_json(&f, &region, seed),
                i32::from(f.confirmed),
            ))
        }
        Command::Logcc {
            coefficients,
            graph,
            keys,
        } => {
            let p = match coefficients {
                Some(c) => unipoly_from_list(c)?,
                None => {
                    let g = read_graph(graph, stdin)?;
                    z_univariate(&g, &read_keys(keys, &g)?)?
                }
            };
            let v = logconcavity_check(p.coeffs());
            let mut report = logconcavity_json(&v);
            report["coefficients"] = unipoly_to_json(&p, "y")["coefficients"].clone();
            let code = i32::from(matches!(v, LogConcavity::Fail { .. }));
            Ok(Run::json(report, code))
        }
        Command::Scan {
            trials,
            max_vertices,
            max_edges,
            width,
        } => {
            let max_width = match width.as_str() {
                "any" => None,
                w => Some(
                    w.parse()
                        .map_err(|_| CliError::Usage(format!("bad --width {w:?}")))?,
                ),
            };
            let spec = ScanSpec {
                max_vertices: *max_vertices,
                max_edges: *max_edges,
                max_width,
            };
            let report = pool.install(|| scan(&spec, *trials, seed))?;
            let code = i32::from(!report.violations.is_empty());
            Ok(Run::json(scan_json(&report, seed), code))
        }
        Command::Statmech {
            beta,
            j,
            mu,
            family,
            sizes,
            graph,
            sweep: grid,
        } => {
            let mu = parse_mu(mu)?;
            let (betas, js) = match grid {
                Some(s) => parse_sweep(s, *beta, *j)?,
                None => (vec![*beta], vec![*j]),
            };
            let graphs: Vec<(Option<u32>, Graph)> = match (family, graph) {
                (Some(f), _) => {
                    let fam: GraphFamily = f.parse()?;
                    let sizes = sizes
                        .as_deref()
                        .ok_or_else(|| CliError::Usage("--family needs --sizes".into()))?;
                    parse_list::<u32>(sizes, "--sizes")?
                        .into_iter()
                        .map(|n| Ok((Some(n), fam.member(n).generate()?)))
                        .collect::<Result<_>>()?
                }
                (None, Some(p)) => vec![(
                    None,
                    read_graph(
                        &GraphArg {
                            graph: Some(p.clone()),
                        },
                        stdin,
                    )?,
                )],
                (None, None) => Vec::new(),
            };
            let rows = pool.install(|| sweep(&graphs, &mu, &betas, &js))?;
            if cli.csv {
                return Ok(Run {
                    code: 0,
                    text: sweep_csv(&rows, mu.len()),
                });
            }
            let d = mu.len() - 1;
            let reports = betas
                .iter()
                .map(|&b| analyticity_report(d, b, &mu).map(|r| analyticity_json(&r)))
                .collect::<Result<Vec<_>, _>>()?;
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut v =
                        json!({ "beta": r.beta, "J": r.j, "n": r.n, "vertices": r.vertices });
                    match &r.result {
                        Ok(o) => v["observables"] = observables_json(o),
                        Err(e) => v["error"] = CliError::from(e.clone()).to_json()["error"].clone(),
                    }
                    v
                })
                .collect();
            Ok(Run::json(
                json!({ "mu": mu_json(&mu), "rows": rows, "analyticity": reports }),
                0,
            ))
        }
    }
}

fn mu_json(mu: &[f64]) -> Value {
    mu.iter()
        .map(|&m| {
            if m.is_infinite() {
                json!("inf")
            } else {
                json!(m)
            }
        })
        .collect()
}

fn sweep_csv(rows: &[crate::parallel::SweepRow], width: usize) -> String {
    let mut out = String::from("beta,J,n,vertices,Z,log_Z,expected_edges");
    for j in 0..width {
        out.push_str(&format!(",expected_V{j}"));
    }
    out.push_str(",free_energy,error\n");
    for r in rows {
        let n = r.n.map_or(String::new(), |n| n.to_string());
        out.push_str(&format!("{},{},{},{}", r.beta, r.j, n, r.vertices));
        match &r.result {
            Ok(o) => {
                let re = |s: &spangen_core::Scalar| s.to_complex().re;
                out.push_str(&format!(
                    ",{},{},{}",
                    re(&o.partition),
                    o.log_partition,
                    re(&o.expected_edges)
                ));
                for c in &o.expected_degree_counts {
                    out.push_str(&format!(",{}", re(c)));
                }
                out.push_str(&format!(",{},\n", o.free_energy));
            }
            Err(e) => {
                out.push_str(&",".repeat(width + 4));
                out.push_str(&format!(",{}\n", e.kind()));
            }
        }
    }
    out
}

fn parse_list<T: std::str::FromStr>(s: &str, flag: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad value {t:?} in {flag}")))
        })
        .collect()
}

/// Comma-separated reals; `inf` (or `+inf`) forbids the degree.
pub fn parse_mu(s: &str) -> Result<Vec<f64>> {
    let mu: Vec<f64> = s
        .split(',')
        .map(|t| match t.trim() {
            "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
            x => x
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("bad chemical potential {x:?}"))),
        })
        .collect::<Result<_>>()?;
    if mu.is_empty() {
        return Err(CliError::Usage("--mu needs at least one value".into()));
    }
    Ok(mu)
}

/// `beta=a:b:n,J=a:b:n`; a missing axis keeps the single default value.
pub fn parse_sweep(s: &str, beta: f64, j: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mut betas, mut js) = (vec![beta], vec![j]);
    for axis in s.split(',').filter(|a| !a.trim().is_empty()) {
        let bad = || {
            CliError::Usage(format!(
                "bad sweep axis {axis:?}; expected name=start:stop:count"
            ))
        };
        let (name, range) = axis.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(bad());
        };
        let (a, b): (f64, f64) = (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        );
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let vals: Vec<f64> = (0..n)
            .map(|i| {
                if n == 1 {
                    a
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect();
        match name.trim() {
            "beta" => betas = vals,
            "J" | "j" => js = vals,
            _ => return Err(bad()),
        }
    }
    Ok((betas, js))
}

/// Random kinds without an explicit seed take the master seed.
fn generate(kind: &str, seed: u64) -> Result<Graph> {
    let parts = kind.split([':', ' ']).filter(|p| !p.is_empty()).count();
    let seeded = match kind.trim() {
        k if (k.starts_with("random_regular") || k.starts_with("gnm")) && parts == 3 => {
            format!("{k}:{seed}")
        }
        k => k.to_string(),
    };
    Ok(seeded.parse::<GraphKind>()?.generate()?)
}

fn read_text(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
        }
    }
    Ok(text)
}

fn read_json(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Value> {
    Ok(serde_json::from_str(&read_text(path, stdin)?)?)
}

fn read_graph(arg: &GraphArg, stdin: &mut dyn Read) -> Result<Graph> {
    graph_from_json(&read_json(&arg.graph, stdin)?)
}

fn read_keys(arg: &KeyArg, g: &Graph) -> Result<ActivityTable> {
    match (&arg.keys, &arg.activities) {
        (Some(f), _) => Ok(ActivityTable::from_family(g, &f.parse::<KeyFamily>()?)?),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            activities_from_json(g, &serde_json::from_str(&text)?)
        }
        (None, None) => Err(CliError::Usage(
            "pass --keys FAMILY or --activities FILE".into(),
        )),
    }
}

/// Write a run's output, flushing so that piped readers see it.
pub fn emit(out: &mut dyn Write, text: &str) -> std::io::Result<()> {
    out.write_all(text.as_bytes())?;
    out.flush()
}
