//! Sparse multivariate polynomials keyed by per-vertex exponent vectors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{bail_arg, Error, Result};
use crate::graph::VertexId;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

/// Exponent of each variable; absent variables have exponent zero.
///
/// Stored as `(id, exponent)` pairs sorted by id, with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeVector(Vec<(VertexId, u32)>);

impl DegreeVector {
    pub fn new() -> Self {
        DegreeVector(Vec::new())
    }

    /// Pairs may come in any order; repeated ids are summed, zeros dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexId, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0u32) += e;
        }
        DegreeVector(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// Build from a dense exponent list aligned with `ids`.
    pub fn from_dense(ids: &[VertexId], exps: &[u8]) -> Self {
        DegreeVector(
            ids.iter()
                .zip(exps)
                .filter(|(_, &e)| e > 0)
                .map(|(&v, &e)| (v, u32::from(e)))
                .collect(),
        )
    }

    pub fn get(&self, v: VertexId) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(id, _)| id)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn without(&self, v: VertexId) -> (DegreeVector, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .copied()
            .filter(|&(id, x)| {
                if id == v {
                    e = x;
                    false
                } else {
                    true
                }
            })
            .collect();
        (DegreeVector(rest), e)
    }

    fn plus(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector::from_pairs(self.iter().chain(other.iter()))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: BTreeSet<VertexId>,
    terms: BTreeMap<DegreeVector, Scalar>,
}

/// Equality is equality of the term maps; the variable universe is ignored.
impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl MultiPoly {
    pub fn zero(vars: impl IntoIterator<Item = VertexId>) -> Self {
        MultiPoly {
            vars: vars.into_iter().collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: impl IntoIterator<Item = VertexId>, c: Scalar) -> Self {
        MultiPoly::from_terms(vars, [(DegreeVector::new(), c)])
    }

    /// Sums repeated monomials and drops zero coefficients. Variables that
    /// occur in a term join the universe automatically.
    pub fn from_terms(
        vars: impl IntoIterator<Item = VertexId>,
        terms: impl IntoIterator<Item = (DegreeVector, Scalar)>,
    ) -> Self {
        let mut vars: BTreeSet<VertexId> = vars.into_iter().collect();
        let mut map: BTreeMap<DegreeVector, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            vars.extend(m.iter().map(|(v, _)| v));
            match map.get_mut(&m) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms: map }
    }

    pub fn vars(&self) -> &BTreeSet<VertexId> {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<DegreeVector, Scalar> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Scalar::is_exact)
    }

    pub fn coeff(&self, m: &DegreeVector) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(DegreeVector::total).max()
    }

    /// Every exponent is at most one.
    pub fn is_multiaffine(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|(_, e)| e <= 1))
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        MultiPoly::from_terms(
            self.vars.iter().chain(&other.vars).copied(),
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.push((ma.plus(mb), ca * cb));
            }
        }
        MultiPoly::from_terms(self.vars.iter().chain(&other.vars).copied(), out)
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        MultiPoly::from_terms(
            self.vars.iter().copied(),
            self.terms.iter().map(|(m, c)| (m.clone(), c * s)),
        )
    }

    /// Rename variables; ids missing from `map` keep their name.
    pub fn rename_vars(&self, map: &BTreeMap<VertexId, VertexId>) -> MultiPoly {
        let r = |v: VertexId| *map.get(&v).unwrap_or(&v);
        MultiPoly::from_terms(
            self.vars.iter().map(|&v| r(v)),
            self.terms.iter().map(|(m, c)| {
                (
                    DegreeVector::from_pairs(m.iter().map(|(v, e)| (r(v), e))),
                    c.clone(),
                )
            }),
        )
    }

    /// Substitute `x_v = val`; `v` leaves the variable universe.
    pub fn specialize(&self, v: VertexId, val: &Scalar) -> Result<MultiPoly> {
        if !self.vars.contains(&v) {
            bail_arg!("variable {v} is not in the polynomial's universe");
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let (rest, e) = m.without(v);
            (rest, c * &val.pow(e))
        });
        let vars = self.vars.iter().copied().filter(|&w| w != v);
        Ok(MultiPoly::from_terms(vars, terms))
    }

    /// Evaluate exactly (or in floats if any input is a float). Variables
    /// absent from `values` are an error.
    pub fn eval(&self, values: &BTreeMap<VertexId, Scalar>) -> Result<Scalar> {
        self.check_point(values.keys())?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.iter()
                    .fold(c.clone(), |acc, (v, e)| &acc * &values[&v].pow(e))
            })
            .sum())
    }

    /// Float evaluation. Returns the value together with the largest term
    /// magnitude `max |c_m x^m|`, a natural scale for the value.
    pub fn eval_complex(&self, values: &BTreeMap<VertexId, Complex64>) -> Result<(Complex64, f64)> {
        self.check_point(values.keys())?;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for (m, c) in &self.terms {
            let t = m.iter().fold(c.to_complex(), |acc, (v, e)| {
                acc * values[&v].powi(e as i32)
            });
            scale = scale.max(t.norm());
            sum += t;
        }
        Ok((sum, scale))
    }

    fn check_point<'a>(&self, keys: impl Iterator<Item = &'a VertexId>) -> Result<()> {
        let given: BTreeSet<VertexId> = keys.copied().collect();
        if let Some(v) = self.vars.iter().find(|v| !given.contains(v)) {
            bail_arg!("no value supplied for variable {v}");
        }
        Ok(())
    }

    /// Set every variable to the same `z`: coefficient `k` collects all
    /// terms of total degree `k`.
    pub fn diagonal(&self) -> UniPoly {
        let top = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = alloc::vec![Scalar::zero(); top + 1];
        for (m, c) in &self.terms {
            let k = m.total() as usize;
            coeffs[k] = &coeffs[k] + c;
        }
        UniPoly::new(coeffs)
    }

    /// Set every variable to `y^{1/2}`. Requires every term to have even
    /// total degree, which the handshake lemma guarantees for subgraph
    /// polynomials.
    pub fn diagonal_halved(&self) -> Result<UniPoly> {
        if let Some(m) = self.terms.keys().find(|m| m.total() % 2 == 1) {
            return Err(Error::InvariantViolation(format!(
                "monomial {m:?} has odd total degree {}",
                m.total()
            )));
        }
        let top = self.total_degree().unwrap_or(0) as usize / 2;
        let mut coeffs = alloc::vec![Scalar::zero(); top + 1];
        for (m, c) in &self.terms {
            let k = m.total() as usize / 2;
            coeffs[k] = &coeffs[k] + c;
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Float magnitude of the largest coefficient.
    pub fn max_coeff_modulus(&self) -> f64 {
        self.terms.values().map(Scalar::modulus).fold(0.0, f64::max)
    }
}
