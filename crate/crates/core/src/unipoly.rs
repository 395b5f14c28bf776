//! Dense univariate polynomials, elementary symmetric functions,
//! polarization and Schur–Szegő composition.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{bail_arg, Error, Result};
use crate::multipoly::{DegreeVector, MultiPoly};
use crate::scalar::Scalar;
use crate::POLARIZE_CAP;

/// `Σ_j coeffs[j]·z^j`; trailing zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    /// Monic polynomial with the given roots, `Π (z - r)`.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        let mut coeffs = vec![Scalar::one()];
        for r in roots {
            let mut next = vec![Scalar::zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                next[j + 1] = &next[j + 1] + c;
                next[j] = &next[j] - &(c * r);
            }
            coeffs = next;
        }
        UniPoly::new(coeffs)
    }

    /// `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `z^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Scalar {
        self.coeffs.get(j).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    /// All coefficients have exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_real)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * z) + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex())
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(Scalar::to_complex).collect()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|j| &self.coeff(j) + &other.coeff(j)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, s: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

/// `e_j(vals)`, via the coefficients of `Π (1 + v_i t)` truncated at `t^j`.
pub fn elem_sym(j: usize, vals: &[Scalar]) -> Result<Scalar> {
    if j > vals.len() {
        bail_arg!(
            "elementary symmetric index {j} exceeds {} values",
            vals.len()
        );
    }
    let mut e = vec![Scalar::zero(); j + 1];
    e[0] = Scalar::one();
    for (seen, v) in vals.iter().enumerate() {
        let top = (seen + 1).min(j);
        for k in (1..=top).rev() {
            e[k] = &e[k] + &(&e[k - 1] * v);
        }
    }
    Ok(e.swap_remove(j))
}

/// The `d`-th polarization of `p`: every `z^j` becomes
/// `binom(d, j)^{-1} e_j(z_0, …, z_{d-1})`. Variables are numbered `0..d`.
pub fn polarize(p: &UniPoly, d: usize) -> Result<MultiPoly> {
    if let Some(deg) = p.degree() {
        if deg > d {
            bail_arg!("cannot polarize a degree-{deg} polynomial in {d} variables");
        }
    }
    if d > POLARIZE_CAP {
        return Err(Error::Resource(alloc::format!(
            "polarization degree {d} exceeds cap {POLARIZE_CAP}"
        )));
    }
    let weights: Vec<Scalar> = (0..=d)
        .map(|j| &p.coeff(j) / &Scalar::binomial(d, j))
        .collect();
    let mut terms = Vec::new();
    for subset in 0u32..(1u32 << d) {
        let j = subset.count_ones() as usize;
        if weights[j].is_zero() {
            continue;
        }
        let exps = (0..d as u32)
            .filter(|&i| subset >> i & 1 == 1)
            .map(|i| (i, 1u32));
        terms.push((DegreeVector::from_pairs(exps), weights[j].clone()));
    }
    Ok(MultiPoly::from_terms(0..d as u32, terms))
}

/// Schur–Szegő composition of `p` with the key `Σ_j binom(d, j) u_j z^j`:
/// the polynomial `Σ_j u_j c_j z^j`.
pub fn schur_szego(p: &UniPoly, u: &[Scalar], d: usize) -> Result<UniPoly> {
    if u.len() != d + 1 {
        bail_arg!("expected {} activities, got {}", d + 1, u.len());
    }
    if let Some(deg) = p.degree() {
        if deg > d {
            bail_arg!("polynomial degree {deg} exceeds composition degree {d}");
        }
    }
    Ok(UniPoly::new(
        p.coeffs().iter().zip(u).map(|(c, uj)| c * uj).collect(),
    ))
}
