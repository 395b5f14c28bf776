//! Worker-count invariant parallel versions of the sampling, scanning and
//! parameter-sweep loops. Every unit of work derives its randomness from
//! the master seed and its own index, and results are merged by index.

use rayon::prelude::*;
use spangen_core::statmech::{observables_with, Census, ModelParams, Observables};
use spangen_core::theorem::{
    collect_scan, finish_falsification, probe, scan_trial, Falsification, Probe, ScanReport,
    ScanSpec,
};
use spangen_core::{Graph, MultiPoly, Region};

use crate::error::{CliError, Result};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "SPANGEN_THREADS";

pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let n = threads.unwrap_or_else(default_threads);
    if n == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))
}

/// Parallel counterpart of `falsify_polynomial`; same result for any
/// number of workers.
pub fn falsify(z: &MultiPoly, region: &Region, samples: usize, seed: u64) -> Result<Falsification> {
    if z.is_zero() {
        return Ok(spangen_core::theorem::falsify_polynomial(
            z, region, samples, seed,
        )?);
    }
    let best = (0..samples)
        .into_par_iter()
        .map(|i| probe(z, region, seed, i))
        .try_reduce_with(|a: Probe, b: Probe| Ok(if b.better_than(&a) { b } else { a }))
        .transpose()?;
    Ok(finish_falsification(z, samples, best)?)
}

pub fn scan(spec: &ScanSpec, trials: usize, seed: u64) -> Result<ScanReport> {
    let all = (0..trials)
        .into_par_iter()
        .map(|i| scan_trial(spec, seed, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(collect_scan(all))
}

/// One `(β, J)` grid point on one graph.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub beta: f64,
    pub j: f64,
    /// Family size parameter, when the graph came from a family.
    pub n: Option<u32>,
    pub vertices: usize,
    pub result: Result<Observables, spangen_core::Error>,
}

/// Rows ordered by graph, then `β`, then `J`.
pub fn sweep(
    graphs: &[(Option<u32>, Graph)],
    mu: &[f64],
    betas: &[f64],
    js: &[f64],
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for (n, g) in graphs {
        let census = Census::new(g)?;
        let grid: Vec<(f64, f64)> = betas
            .iter()
            .flat_map(|&b| js.iter().map(move |&j| (b, j)))
            .collect();
        let part: Vec<SweepRow> = grid
            .par_iter()
            .map(|&(beta, j)| {
                let result = ModelParams::new(beta, j, mu.to_vec())
                    .and_then(|p| observables_with(g, &census, &p));
                SweepRow {
                    beta,
                    j,
                    n: *n,
                    vertices: g.num_vertices(),
                    result,
                }
            })
            .collect();
        rows.extend(part);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spangen_core::subgraph::z_compose;
    use spangen_core::{ActivityTable, GraphKind};

    #[test]
    fn worker_count_does_not_change_results() {
        let g = GraphKind::Complete(4).generate().unwrap();
        let z = z_compose(&g, &ActivityTable::matching(&g)).unwrap();
        let region = Region::sector(std::f64::consts::FRAC_PI_2).unwrap();
        let run = |t| {
            thread_pool(Some(t))
                .unwrap()
                .install(|| falsify(&z, &region, 500, 3).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
        let serial = spangen_core::theorem::falsify_polynomial(&z, &region, 500, 3).unwrap();
        assert_eq!(one, serial);

        let spec = ScanSpec {
            max_vertices: 6,
            max_edges: 8,
            max_width: None,
        };
        let scan_with = |t| {
            thread_pool(Some(t))
                .unwrap()
                .install(|| scan(&spec, 40, 9).unwrap())
        };
        assert_eq!(scan_with(1), scan_with(3));
        assert_eq!(
            scan_with(2),
            spangen_core::theorem::conjecture_scan(&spec, 40, 9).unwrap()
        );
    }

    #[test]
    fn sweep_rows_are_ordered() {
        let g = GraphKind::Cycle(4).generate().unwrap();
        let rows = sweep(
            &[(Some(4), g)],
            &[0.0, 0.5, 0.0],
            &[1.0, 2.0],
            &[-1.0, 0.0, 1.0],
        )
        .unwrap();
        let keys: Vec<(f64, f64)> = rows.iter().map(|r| (r.beta, r.j)).collect();
        assert_eq!(keys[..3], [(1.0, -1.0), (1.0, 0.0), (1.0, 1.0)]);
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.result.is_ok()));
    }
}
