#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spangen_core::graph::random_simple_graph;
use spangen_core::{Graph, GraphKind, Scalar};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Small exact rationals, zero included.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Scalar::ratio(n, d))
}

pub fn nonneg_scalar() -> impl Strategy<Value = Scalar> {
    (0i64..=12, 1i64..=6).prop_map(|(n, d)| Scalar::ratio(n, d))
}

pub fn positive_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=12, 1i64..=6).prop_map(|(n, d)| Scalar::ratio(n, d))
}

/// Gaussian rational on the grid `(a + bi) / 8`.
pub fn grid_point(re: i64, im: i64) -> Scalar {
    Scalar::gaussian(rat(re, 8), rat(im, 8))
}

/// Paths, cycles C3..C8, K4, K5, Petersen and ten random simple graphs
/// with at most twelve edges.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut kinds = vec![GraphKind::Path(2), GraphKind::Path(5)];
    kinds.extend((3..=8).map(GraphKind::Cycle));
    kinds.extend([
        GraphKind::Complete(4),
        GraphKind::Complete(5),
        GraphKind::Petersen,
    ]);
    for k in kinds {
        out.push((k.to_string(), k.generate().unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..10 {
        let g = random_simple_graph(&mut rng, 8, 12);
        out.push((format!("random#{i}"), g));
    }
    out
}

/// Greedy matching of two multisets of complex numbers; the largest
/// relative distance between partners.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .fold((usize::MAX, f64::INFINITY), |acc, c| {
                if c.1 < acc.1 {
                    c
                } else {
                    acc
                }
            });
        used[j] = true;
        worst = worst.max(d / x.norm().max(1.0));
    }
    worst
}
