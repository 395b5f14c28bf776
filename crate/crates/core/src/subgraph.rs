//! Spanning-subgraph generating polynomials.
//!
//! `Ω(G, λ; x) = Π_e (1 + λ_e x_v x_w)` is expanded as a product, and the
//! activity-weighted `Z(G, λ, u; x)` is produced twice: once by reweighting
//! the expanded product vertex by vertex ([`z_compose`]) and once by
//! enumerating spanning subgraphs directly ([`z_bruteforce`]).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail_arg, Result};
use crate::graph::{Graph, VertexId};
use crate::keys::KeyFamily;
use crate::multipoly::{DegreeVector, MultiPoly};
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

/// Activities `u^(v) = (u_0, …, u_d)` for each vertex, `d = deg(G, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ActivityTable {
    table: BTreeMap<VertexId, Vec<Scalar>>,
}

impl ActivityTable {
    /// Lengths must be exactly `deg(G, v) + 1` at every vertex of `g`.
    pub fn new(g: &Graph, table: BTreeMap<VertexId, Vec<Scalar>>) -> Result<Self> {
        for (&v, d) in g.vertices().iter().zip(g.degrees()) {
            match table.get(&v) {
                None => bail_arg!("no activities for vertex {v}"),
                Some(u) if u.len() != d + 1 => {
                    bail_arg!("vertex {v} has degree {d} but {} activities", u.len())
                }
                Some(_) => {}
            }
        }
        if let Some(v) = table.keys().find(|&&v| g.index_of(v).is_none()) {
            bail_arg!("activities given for unknown vertex {v}");
        }
        Ok(ActivityTable { table })
    }

    /// One sequence for every vertex; every vertex must have degree
    /// `u.len() - 1`.
    pub fn uniform(g: &Graph, u: &[Scalar]) -> Result<Self> {
        let table = g.vertices().iter().map(|&v| (v, u.to_vec())).collect();
        ActivityTable::new(g, table)
    }

    /// Activities of a key family, instantiated at each vertex's degree.
    pub fn from_family(g: &Graph, family: &KeyFamily) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (&v, d) in g.vertices().iter().zip(g.degrees()) {
            table.insert(v, family.activities(d)?);
        }
        Ok(ActivityTable { table })
    }

    /// Matching activities `u_0 = u_1 = 1`, zero above.
    pub fn matching(g: &Graph) -> Self {
        ActivityTable::from_family(g, &KeyFamily::Matching).expect("matching fits every degree")
    }

    pub fn get(&self, v: VertexId) -> Option<&[Scalar]> {
        self.table.get(&v).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[Scalar])> {
        self.table.iter().map(|(&v, u)| (v, u.as_slice()))
    }

    fn check(&self, g: &Graph) -> Result<()> {
        ActivityTable::new(g, self.table.clone()).map(|_| ())
    }

    /// Activities aligned with `g.vertices()`.
    fn dense(&self, g: &Graph) -> Vec<&[Scalar]> {
        g.vertices()
            .iter()
            .map(|v| self.table[v].as_slice())
            .collect()
    }
}

type DenseTerms = BTreeMap<Vec<u8>, Scalar>;

fn expand_product(g: &Graph) -> DenseTerms {
    let n = g.num_vertices();
    let mut cur: DenseTerms = BTreeMap::new();
    cur.insert(vec![0u8; n], Scalar::one());
    for (e, (a, b)) in g.edges().iter().zip(g.endpoint_indices()) {
        if e.weight.is_zero() {
            continue;
        }
        let mut next = cur.clone();
        for (k, c) in &cur {
            let mut shifted = k.clone();
            shifted[a] += 1;
            shifted[b] += 1;
            let t = c * &e.weight;
            match next.get_mut(&shifted) {
                Some(acc) => *acc = &*acc + &t,
                None => {
                    next.insert(shifted, t);
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur
}

fn to_multipoly(g: &Graph, terms: DenseTerms) -> MultiPoly {
    let ids = g.vertices();
    MultiPoly::from_terms(
        ids.iter().copied(),
        terms
            .into_iter()
            .map(|(k, c)| (DegreeVector::from_dense(ids, &k), c)),
    )
}

/// `Ω(G, λ; x)` by expanding the edge product.
pub fn omega(g: &Graph) -> Result<MultiPoly> {
    g.check_edge_cap()?;
    Ok(to_multipoly(g, expand_product(g)))
}

/// `Z(G, λ, u; x)` from the expanded `Ω`, composing one vertex at a time in
/// ascending id order.
pub fn z_compose(g: &Graph, u: &ActivityTable) -> Result<MultiPoly> {
    z_compose_in_order(g, u, g.vertices())
}

/// As [`z_compose`] with an explicit vertex processing order, which must be
/// a permutation of the vertices.
pub fn z_compose_in_order(g: &Graph, u: &ActivityTable, order: &[VertexId]) -> Result<MultiPoly> {
    g.check_edge_cap()?;
    u.check(g)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != g.vertices() {
        bail_arg!("processing order is not a permutation of the vertices");
    }
    let mut terms = expand_product(g);
    for &v in order {
        // Schur–Szegő step in x_v: the coefficient of x_v^j picks up u_j.
        let idx = g.index_of(v).unwrap();
        let act = u.get(v).unwrap();
        for (k, c) in terms.iter_mut() {
            *c = &*c * &act[k[idx] as usize];
        }
        terms.retain(|_, c| !c.is_zero());
    }
    Ok(to_multipoly(g, terms))
}

/// Depth-first walk over all edge subsets, calling `leaf` with the degree
/// vector, edge count and weight `λ^H · u_{deg(H)}` of every subset whose
/// weight is nonzero. Branches are cut as soon as a vertex is forced into a
/// zero activity.
fn enumerate_weighted<F>(g: &Graph, u: &ActivityTable, mut leaf: F) -> Result<()>
where
    F: FnMut(&[u8], usize, &Scalar),
{
    g.check_edge_cap()?;
    u.check(g)?;
    let n = g.num_vertices();
    let m = g.num_edges();
    let ends = g.endpoint_indices();
    let act = u.dense(g);

    // Vertices whose last incident edge is `i` close after deciding edge i.
    let mut closes_at: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut start = Scalar::one();
    for v in 0..n {
        match ends.iter().rposition(|&(a, b)| a == v || b == v) {
            Some(i) => closes_at[i].push(v),
            None => start = &start * &act[v][0],
        }
    }
    if start.is_zero() {
        return Ok(());
    }
    // Highest degree with nonzero activity, for early cut-off.
    let ceiling: Vec<usize> = act
        .iter()
        .map(|a| a.iter().rposition(|x| !x.is_zero()).map_or(0, |j| j + 1))
        .collect();

    struct Walk<'a, F> {
        g: &'a Graph,
        ends: &'a [(usize, usize)],
        act: &'a [&'a [Scalar]],
        closes_at: &'a [Vec<usize>],
        ceiling: &'a [usize],
        deg: Vec<u8>,
        leaf: F,
    }

    impl<F: FnMut(&[u8], usize, &Scalar)> Walk<'_, F> {
        fn go(&mut self, i: usize, count: usize, weight: Scalar) {
            if i == self.ends.len() {
                (self.leaf)(&self.deg, count, &weight);
                return;
            }
            let (a, b) = self.ends[i];
            // exclude edge i
            if let Some(w) = self.close(i, weight.clone()) {
                self.go(i + 1, count, w);
            }
            // include edge i
            let lambda = &self.g.edges()[i].weight;
            if lambda.is_zero() {
                return;
            }
            self.deg[a] += 1;
            self.deg[b] += 1;
            let within = |v: usize, deg: &[u8]| (deg[v] as usize) < self.ceiling[v];
            if within(a, &self.deg) && within(b, &self.deg) {
                if let Some(w) = self.close(i, &weight * lambda) {
                    self.go(i + 1, count + 1, w);
                }
            }
            self.deg[a] -= 1;
            self.deg[b] -= 1;
        }

        fn close(&self, i: usize, mut weight: Scalar) -> Option<Scalar> {
            for &v in &self.closes_at[i] {
                weight = &weight * &self.act[v][self.deg[v] as usize];
                if weight.is_zero() {
                    return None;
                }
            }
            Some(weight)
        }
    }

    let mut walk = Walk {
        g,
        ends: &ends,
        act: &act,
        closes_at: &closes_at,
        ceiling: &ceiling,
        deg: vec![0u8; n],
        leaf: &mut leaf,
    };
    walk.go(0, 0, start);
    Ok(())
}

/// `Z(G, λ, u; x)` as an explicit sum over spanning subgraphs.
pub fn z_bruteforce(g: &Graph, u: &ActivityTable) -> Result<MultiPoly> {
    let mut terms: DenseTerms = BTreeMap::new();
    enumerate_weighted(g, u, |deg, _, w| match terms.get_mut(deg) {
        Some(acc) => *acc = &*acc + w,
        None => {
            terms.insert(deg.to_vec(), w.clone());
        }
    })?;
    terms.retain(|_, c| !c.is_zero());
    Ok(to_multipoly(g, terms))
}

/// `Z(G, λ, u; y^{1/2}·1)`: coefficient `k` sums the weights of the
/// `k`-edge spanning subgraphs.
pub fn z_univariate(g: &Graph, u: &ActivityTable) -> Result<UniPoly> {
    let mut coeffs = vec![Scalar::zero(); g.num_edges() + 1];
    enumerate_weighted(g, u, |_, k, w| coeffs[k] = &coeffs[k] + w)?;
    Ok(UniPoly::new(coeffs))
}

/// Every spanning subgraph weight, for callers that need per-subgraph data.
pub fn for_each_weighted_subgraph<F>(g: &Graph, u: &ActivityTable, leaf: F) -> Result<()>
where
    F: FnMut(&[u8], usize, &Scalar),
{
    enumerate_weighted(g, u, leaf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::{Edge, GraphKind};

    fn k3() -> Graph {
        GraphKind::Cycle(3).generate().unwrap()
    }

    fn dv(pairs: &[(u32, u32)]) -> DegreeVector {
        DegreeVector::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn omega_single_edge_and_loop() {
        let lam = Scalar::ratio(2, 3);
        let g = Graph::new([0, 1], vec![Edge::new(0, 1, lam.clone())]).unwrap();
        let expected = MultiPoly::from_terms(
            [0, 1],
            [
                (dv(&[]), Scalar::one()),
                (dv(&[(0, 1), (1, 1)]), lam.clone()),
            ],
        );
        assert_eq!(omega(&g).unwrap(), expected);

        let g = Graph::new([0], vec![Edge::new(0, 0, lam.clone())]).unwrap();
        let expected = MultiPoly::from_terms([0], [(dv(&[]), Scalar::one()), (dv(&[(0, 2)]), lam)]);
        assert_eq!(omega(&g).unwrap(), expected);
    }

    #[test]
    fn omega_triangle() {
        let one = Scalar::one;
        let expected = MultiPoly::from_terms(
            [0, 1, 2],
            [
                (dv(&[]), one()),
                (dv(&[(0, 1), (1, 1)]), one()),
                (dv(&[(0, 1), (2, 1)]), one()),
                (dv(&[(1, 1), (2, 1)]), one()),
                (dv(&[(0, 2), (1, 1), (2, 1)]), one()),
                (dv(&[(0, 1), (1, 2), (2, 1)]), one()),
                (dv(&[(0, 1), (1, 1), (2, 2)]), one()),
                (dv(&[(0, 2), (1, 2), (2, 2)]), one()),
            ],
        );
        assert_eq!(omega(&k3()).unwrap(), expected);
    }

    #[test]
    fn triangle_matching_polynomial_both_routes() {
        let g = k3();
        let u = ActivityTable::matching(&g);
        let expected = MultiPoly::from_terms(
            [0, 1, 2],
            [
                (dv(&[]), Scalar::one()),
                (dv(&[(0, 1), (1, 1)]), Scalar::one()),
                (dv(&[(0, 1), (2, 1)]), Scalar::one()),
                (dv(&[(1, 1), (2, 1)]), Scalar::one()),
            ],
        );
        assert_eq!(z_bruteforce(&g, &u).unwrap(), expected);
        assert_eq!(z_compose(&g, &u).unwrap(), expected);
        assert_eq!(z_univariate(&g, &u).unwrap(), UniPoly::from_ints(&[1, 3]));
        assert_eq!(
            expected.diagonal_halved().unwrap(),
            UniPoly::from_ints(&[1, 3])
        );
    }

    #[test]
    fn single_edge_matching() {
        let lam = Scalar::ratio(5, 7);
        let g = Graph::new([0, 1], vec![Edge::new(0, 1, lam.clone())]).unwrap();
        let u = ActivityTable::matching(&g);
        let expected = MultiPoly::from_terms(
            [0, 1],
            [
                (dv(&[]), Scalar::one()),
                (dv(&[(0, 1), (1, 1)]), lam.clone()),
            ],
        );
        assert_eq!(z_bruteforce(&g, &u).unwrap(), expected);
        assert_eq!(
            z_univariate(&g, &u).unwrap(),
            UniPoly::new(vec![Scalar::one(), lam])
        );
    }

    #[test]
    fn only_empty_subgraph_survives() {
        let g = GraphKind::Complete(4).generate().unwrap();
        let table = g
            .vertices()
            .iter()
            .map(|&v| {
                let mut u = vec![Scalar::zero(); 4];
                u[0] = Scalar::one();
                (v, u)
            })
            .collect();
        let u = ActivityTable::new(&g, table).unwrap();
        assert_eq!(
            z_bruteforce(&g, &u).unwrap(),
            MultiPoly::constant([], Scalar::one())
        );
        assert_eq!(
            z_compose(&g, &u).unwrap(),
            MultiPoly::constant([], Scalar::one())
        );
    }

    #[test]
    fn all_ones_activities_give_omega() {
        let g = GraphKind::Complete(4).generate().unwrap();
        let u = ActivityTable::from_family(
            &g,
            &KeyFamily::Interval {
                lower: 0,
                upper: usize::MAX,
            },
        )
        .unwrap();
        assert_eq!(z_compose(&g, &u).unwrap(), omega(&g).unwrap());
    }

    #[test]
    fn edgeless_graph_is_constant() {
        let g = Graph::new([0, 1, 2], vec![]).unwrap();
        let table = [
            (0, vec![Scalar::from_int(2)]),
            (1, vec![Scalar::from_int(3)]),
            (2, vec![Scalar::ratio(1, 2)]),
        ]
        .into_iter()
        .collect();
        let u = ActivityTable::new(&g, table).unwrap();
        assert_eq!(
            z_compose(&g, &u).unwrap(),
            MultiPoly::constant([], Scalar::from_int(3))
        );
        assert_eq!(
            z_bruteforce(&g, &u).unwrap(),
            MultiPoly::constant([], Scalar::from_int(3))
        );
    }

    #[test]
    fn reciprocal_keys_on_triangle() {
        let g = k3();
        let u = ActivityTable::from_family(&g, &KeyFamily::Reciprocal).unwrap();
        let expected = UniPoly::new(vec![
            Scalar::one(),
            Scalar::ratio(3, 4),
            Scalar::ratio(3, 4),
            Scalar::one(),
        ]);
        assert_eq!(z_univariate(&g, &u).unwrap(), expected);
        assert_eq!(
            z_compose(&g, &u).unwrap().diagonal_halved().unwrap(),
            expected
        );
    }

    #[test]
    fn shape_errors() {
        let g = k3();
        let bad: BTreeMap<_, _> = g
            .vertices()
            .iter()
            .map(|&v| (v, vec![Scalar::one(); 4]))
            .collect();
        assert!(ActivityTable::new(&g, bad).is_err());
        let missing: BTreeMap<_, _> = [(0, vec![Scalar::one(); 3])].into_iter().collect();
        assert!(ActivityTable::new(&g, missing).is_err());
        let big = GraphKind::Complete(8).generate().unwrap();
        let u = ActivityTable::matching(&big);
        assert!(matches!(z_bruteforce(&big, &u), Err(Error::Resource(_))));
        assert!(matches!(omega(&big), Err(Error::Resource(_))));
    }

    #[test]
    fn compose_order_must_be_a_permutation() {
        let g = k3();
        let u = ActivityTable::matching(&g);
        assert!(z_compose_in_order(&g, &u, &[0, 1]).is_err());
        assert_eq!(
            z_compose_in_order(&g, &u, &[2, 0, 1]).unwrap(),
            z_compose(&g, &u).unwrap()
        );
    }
}
