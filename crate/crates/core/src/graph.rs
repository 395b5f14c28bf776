//! Finite multigraphs with loops and per-edge weights.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{bail_arg, Error, Result};
use crate::multipoly::DegreeVector;
use crate::scalar::Scalar;

pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Scalar,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, weight: Scalar) -> Self {
        Edge { u, v, weight }
    }

    pub fn unit(u: VertexId, v: VertexId) -> Self {
        Edge::new(u, v, Scalar::one())
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// Vertices are kept in ascending id order; a loop adds two to the degree
/// of its vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, edges: Vec<Edge>) -> Result<Self> {
        let mut vertices: Vec<VertexId> = vertices.into_iter().collect();
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            bail_arg!("duplicate vertex id {}", w[0]);
        }
        for (i, e) in edges.iter().enumerate() {
            for end in [e.u, e.v] {
                if vertices.binary_search(&end).is_err() {
                    bail_arg!("edge {i} references unknown vertex {end}");
                }
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// Vertices `0..n` and unit-weight edges.
    pub fn from_pairs(n: u32, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        Graph::new(0..n, pairs.iter().map(|&(u, v)| Edge::unit(u, v)).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Position of `v` in [`Graph::vertices`].
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub(crate) fn endpoint_indices(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|e| (self.index_of(e.u).unwrap(), self.index_of(e.v).unwrap()))
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        if self.index_of(v).is_none() {
            bail_arg!("unknown vertex {v}");
        }
        Ok(self
            .edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum())
    }

    /// Degrees aligned with [`Graph::vertices`].
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertices.len()];
        for (a, b) in self.endpoint_indices() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        match deg.first() {
            None => Some(0),
            Some(&d) => deg.iter().all(|&x| x == d).then_some(d),
        }
    }

    pub fn subgraph_degrees(&self, h: &SubgraphMask) -> Result<DegreeVector> {
        if h.len() != self.edges.len() {
            bail_arg!(
                "mask has length {} but graph has {} edges",
                h.len(),
                self.edges.len()
            );
        }
        Ok(DegreeVector::from_pairs(h.iter_ones().flat_map(|i| {
            [(self.edges[i].u, 1), (self.edges[i].v, 1)]
        })))
    }

    /// Same graph with every weight replaced by `f(edge index)`.
    pub fn with_weights(&self, mut f: impl FnMut(usize) -> Scalar) -> Graph {
        Graph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| Edge::new(e.u, e.v, f(i)))
                .collect(),
        }
    }

    pub(crate) fn check_edge_cap(&self) -> Result<()> {
        if self.edges.len() > crate::EDGE_CAP {
            return Err(Error::Resource(format!(
                "{} edges exceeds the exhaustive-enumeration cap of {}",
                self.edges.len(),
                crate::EDGE_CAP
            )));
        }
        Ok(())
    }
}

/// A set of edge indices, i.e. a spanning subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgraphMask {
    len: usize,
    words: Vec<u64>,
}

impl SubgraphMask {
    pub fn empty(len: usize) -> Self {
        SubgraphMask {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut m = SubgraphMask::empty(len);
        for i in 0..len {
            m.insert(i);
        }
        m
    }

    /// Low `len` bits of `bits`; `len <= 64`.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        SubgraphMask {
            len,
            words: if len == 0 { vec![] } else { vec![bits & mask] },
        }
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut m = SubgraphMask::empty(len);
        for i in idx {
            m.insert(i);
        }
        m
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Panics if `i >= len`.
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "edge index {i} out of range");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }
}

/// The graph families the generator knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Path(u32),
    Cycle(u32),
    Complete(u32),
    /// Cartesian product of `r` cycles of length `n`.
    Torus {
        n: u32,
        r: u32,
    },
    Petersen,
    /// Uniform pairing model, loops and multi-edges rejected.
    RandomRegular {
        n: u32,
        d: u32,
        seed: u64,
    },
    /// Simple graph with `m` edges chosen uniformly.
    Gnm {
        n: u32,
        m: u32,
        seed: u64,
    },
}

const PAIRING_RETRIES: usize = 1000;

impl GraphKind {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GraphKind::Path(n) => {
                if n == 0 {
                    return Err(Error::Generation("path needs at least one vertex".into()));
                }
                Graph::from_pairs(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
            }
            GraphKind::Cycle(n) => {
                if n < 3 {
                    return Err(Error::Generation(format!("cycle length {n} < 3")));
                }
                Graph::from_pairs(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
            }
            GraphKind::Complete(n) => {
                let pairs: Vec<_> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .collect();
                Graph::from_pairs(n, &pairs)
            }
            GraphKind::Torus { n, r } => torus(n, r),
            GraphKind::Petersen => {
                let mut pairs = Vec::with_capacity(15);
                for i in 0..5 {
                    pairs.push((i, (i + 1) % 5));
                    pairs.push((i, i + 5));
                    pairs.push((5 + i, 5 + (i + 2) % 5));
                }
                Graph::from_pairs(10, &pairs)
            }
            GraphKind::RandomRegular { n, d, seed } => random_regular(n, d, seed),
            GraphKind::Gnm { n, m, seed } => gnm(n, m, seed),
        }
    }
}

fn torus(n: u32, r: u32) -> Result<Graph> {
    if n < 3 || r == 0 {
        return Err(Error::Generation(format!(
            "torus needs n >= 3 and r >= 1, got n={n} r={r}"
        )));
    }
    let count = (n as u64)
        .checked_pow(r)
        .filter(|&c| c <= u32::MAX as u64)
        .ok_or_else(|| Error::Generation(format!("torus {n}^{r} has too many vertices")))?
        as u32;
    let mut pairs = Vec::with_capacity((count * r) as usize);
    for v in 0..count {
        let mut stride = 1u32;
        for _ in 0..r {
            let coord = (v / stride) % n;
            let next = if coord + 1 == n {
                v - (n - 1) * stride
            } else {
                v + stride
            };
            pairs.push((v, next));
            stride *= n;
        }
    }
    Graph::from_pairs(count, &pairs)
}

fn random_regular(n: u32, d: u32, seed: u64) -> Result<Graph> {
    if (n as u64 * d as u64) % 2 == 1 || (d > 0 && n <= d) {
        return Err(Error::Generation(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<u32> = (0..n)
        .flat_map(|v| core::iter::repeat_n(v, d as usize))
        .collect();
    'attempt: for _ in 0..PAIRING_RETRIES {
        points.shuffle(&mut rng);
        let mut seen = alloc::collections::BTreeSet::new();
        let mut pairs = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !seen.insert((a, b)) {
                continue 'attempt;
            }
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        return Graph::from_pairs(n, &pairs);
    }
    Err(Error::Generation(format!(
        "pairing model rejected {PAIRING_RETRIES} times for n={n} d={d}"
    )))
}

fn gnm(n: u32, m: u32, seed: u64) -> Result<Graph> {
    let all: Vec<(u32, u32)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    if m as usize > all.len() {
        return Err(Error::Generation(format!(
            "{m} edges do not fit in a simple graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<(u32, u32)> = all.choose_multiple(&mut rng, m as usize).copied().collect();
    chosen.sort_unstable();
    Graph::from_pairs(n, &chosen)
}

/// Random simple graph on at most `max_vertices` vertices with at most
/// `max_edges` edges.
pub fn random_simple_graph<R: Rng>(rng: &mut R, max_vertices: u32, max_edges: u32) -> Graph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let cap = (n * n.saturating_sub(1) / 2).min(max_edges);
    let m = rng.gen_range(0..=cap);
    gnm(n, m, rng.gen()).expect("edge count within capacity")
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Path(n) => write!(f, "path {n}"),
            GraphKind::Cycle(n) => write!(f, "cycle {n}"),
            GraphKind::Complete(n) => write!(f, "complete {n}"),
            GraphKind::Torus { n, r } => write!(f, "torus {n} {r}"),
            GraphKind::Petersen => write!(f, "petersen"),
            GraphKind::RandomRegular { n, d, seed } => write!(f, "random_regular {n} {d} {seed}"),
            GraphKind::Gnm { n, m, seed } => write!(f, "gnm {n} {m} {seed}"),
        }
    }
}

/// Accepts `"torus 3 2"` or `"torus:3:2"`.
impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .split(|c: char| c == ':' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        let bad = || Error::Parse(format!("bad graph kind {s:?}"));
        let num = |i: usize| -> Result<u64> {
            parts
                .get(i)
                .ok_or_else(bad)?
                .parse::<u64>()
                .map_err(|_| bad())
        };
        let small = |i: usize| -> Result<u32> { u32::try_from(num(i)?).map_err(|_| bad()) };
        let arity = |k: usize| {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let kind = match *parts.first().ok_or_else(bad)? {
            "path" => {
                arity(1)?;
                GraphKind::Path(small(1)?)
            }
            "cycle" => {
                arity(1)?;
                GraphKind::Cycle(small(1)?)
            }
            "complete" => {
                arity(1)?;
                GraphKind::Complete(small(1)?)
            }
            "torus" => {
                arity(2)?;
                GraphKind::Torus {
                    n: small(1)?,
                    r: small(2)?,
                }
            }
            "petersen" => {
                arity(0)?;
                GraphKind::Petersen
            }
            "random_regular" => {
                arity(3)?;
                GraphKind::RandomRegular {
                    n: small(1)?,
                    d: small(2)?,
                    seed: num(3)?,
                }
            }
            "gnm" => {
                arity(3)?;
                GraphKind::Gnm {
                    n: small(1)?,
                    m: small(2)?,
                    seed: num(3)?,
                }
            }
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn degrees_and_loops() {
        let k3 = GraphKind::Cycle(3).generate().unwrap();
        for &v in k3.vertices() {
            assert_eq!(k3.degree(v).unwrap(), 2);
        }
        let lp = Graph::from_pairs(1, &[(0, 0)]).unwrap();
        assert_eq!(lp.degree(0).unwrap(), 2);
        let pet = GraphKind::Petersen.generate().unwrap();
        assert_eq!(pet.regular_degree(), Some(3));
        assert_eq!(pet.num_edges(), 15);
        assert!(matches!(k3.degree(7), Err(Error::Argument(_))));
    }

    #[test]
    fn subgraph_degree_examples() {
        let k3 = GraphKind::Cycle(3).generate().unwrap();
        assert!(k3
            .subgraph_degrees(&SubgraphMask::empty(3))
            .unwrap()
            .is_zero());
        let full = k3.subgraph_degrees(&SubgraphMask::full(3)).unwrap();
        assert_eq!(full, DegreeVector::from_pairs([(0, 2), (1, 2), (2, 2)]));
        let one = k3
            .subgraph_degrees(&SubgraphMask::from_indices(3, [0]))
            .unwrap();
        assert_eq!(one, DegreeVector::from_pairs([(0, 1), (1, 1)]));
        assert!(k3.subgraph_degrees(&SubgraphMask::empty(2)).is_err());
    }

    #[test]
    fn generator_shapes() {
        let c3 = GraphKind::Cycle(3).generate().unwrap();
        assert_eq!(
            (c3.num_vertices(), c3.num_edges(), c3.regular_degree()),
            (3, 3, Some(2))
        );
        assert_eq!(GraphKind::Torus { n: 3, r: 1 }.generate().unwrap(), c3);
        let k4 = GraphKind::Complete(4).generate().unwrap();
        assert_eq!((k4.num_edges(), k4.regular_degree()), (6, Some(3)));
        for (n, r) in [(3, 2), (4, 2), (3, 3), (5, 1)] {
            let t = GraphKind::Torus { n, r }.generate().unwrap();
            assert_eq!(t.regular_degree(), Some(2 * r as usize), "torus {n} {r}");
            assert_eq!(t.num_edges(), (n.pow(r) * r) as usize);
        }
        let t = GraphKind::Torus { n: 3, r: 2 }.generate().unwrap();
        let mut pairs: Vec<_> = t
            .edges()
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(pairs.len(), 18, "torus 3 2 is simple");
        assert_eq!(GraphKind::Path(4).generate().unwrap().num_edges(), 3);
    }

    #[test]
    fn random_regular_is_reproducible_and_regular() {
        let kind = GraphKind::RandomRegular {
            n: 10,
            d: 3,
            seed: 42,
        };
        let a = kind.generate().unwrap();
        assert_eq!(a, kind.generate().unwrap());
        assert_eq!(a.regular_degree(), Some(3));
        assert!(a.edges().iter().all(|e| !e.is_loop()));
        assert!(GraphKind::RandomRegular {
            n: 5,
            d: 3,
            seed: 1
        }
        .generate()
        .is_err());
        assert!(GraphKind::RandomRegular {
            n: 3,
            d: 3,
            seed: 1
        }
        .generate()
        .is_err());
    }

    #[test]
    fn handshake_on_every_mask() {
        let graphs = [
            GraphKind::Cycle(4).generate().unwrap(),
            GraphKind::Complete(4).generate().unwrap(),
            Graph::from_pairs(2, &[(0, 0), (0, 1), (0, 1)]).unwrap(),
        ];
        for g in &graphs {
            let m = g.num_edges();
            for bits in 0..1u64 << m {
                let h = SubgraphMask::from_bits(m, bits);
                let deg = g.subgraph_degrees(&h).unwrap();
                assert_eq!(deg.total() as usize, 2 * h.count());
            }
        }
    }

    #[test]
    fn dangling_endpoints_are_rejected() {
        assert!(Graph::new([0, 1], vec![Edge::unit(0, 5)]).is_err());
        assert!(Graph::new([0, 0], vec![]).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!(
            "torus 3 2".parse::<GraphKind>().unwrap(),
            GraphKind::Torus { n: 3, r: 2 }
        );
        assert_eq!("cycle:5".parse::<GraphKind>().unwrap(), GraphKind::Cycle(5));
        assert_eq!(
            "petersen".parse::<GraphKind>().unwrap(),
            GraphKind::Petersen
        );
        assert!("torus 3".parse::<GraphKind>().is_err());
        assert!("moebius 4".parse::<GraphKind>().is_err());
        let k = GraphKind::RandomRegular {
            n: 8,
            d: 3,
            seed: 9,
        };
        assert_eq!(k.to_string().parse::<GraphKind>().unwrap(), k);
    }
}
