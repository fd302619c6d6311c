//! Barycentric coordinates on `K` and on its subdivision `Sd K`.
//!
//! A point of `|K|` with coordinates `ν_0 ≥ … ≥ ν_m > 0` on vertices
//! `w_0, …, w_m` lies in the subdivision simplex spanned by the barycenters of
//! `τ_i = {w_0, …, w_i}`, with weights `μ_i = (i+1)(ν_i − ν_{i+1})` and
//! `μ_m = (m+1)ν_m`. Conversely a weight `μ_j` on the barycenter of `τ_j`
//! contributes `μ_j / |τ_j|` to every vertex of `τ_j`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};

use super::simplex::{Simplex, VertexId};
use super::subdivision::Subdivision;
use crate::error::{NerveError, Result};

/// Scalar type for barycentric weights: exact rationals or floats.
pub trait Weight: Clone + PartialOrd + Num + FromPrimitive + Debug {
    /// Whether a sum of weights counts as one.
    fn is_unit(&self) -> bool;
}

impl Weight for BigRational {
    fn is_unit(&self) -> bool {
        *self == BigRational::from_integer(BigInt::from(1))
    }
}

impl Weight for f64 {
    fn is_unit(&self) -> bool {
        (self - 1.0).abs() <= 1e-9
    }
}

/// A point of `|K|` given by barycentric weights on the vertices of its support.
#[derive(Clone, Debug, PartialEq)]
pub struct BarycentricPoint<T> {
    support: Simplex,
    coords: Vec<T>,
}

impl<T: Weight> BarycentricPoint<T> {
    pub fn new(support: Simplex, coords: Vec<T>) -> Result<Self> {
        if coords.len() != support.len() {
            return Err(NerveError::DimensionMismatch { expected: support.len(), found: coords.len() });
        }
        if coords.iter().any(|c| *c < T::zero()) {
            return Err(NerveError::Inconsistent("negative barycentric coordinate".into()));
        }
        let sum = coords.iter().cloned().fold(T::zero(), |a, b| a + b);
        if !sum.is_unit() {
            return Err(NerveError::Inconsistent(format!("barycentric coordinates sum to {sum:?}")));
        }
        Ok(BarycentricPoint { support, coords })
    }

    /// Vertex with full weight.
    pub fn at_vertex(v: VertexId) -> Self {
        BarycentricPoint { support: Simplex::vertex(v), coords: vec![T::one()] }
    }

    pub fn support(&self) -> &Simplex {
        &self.support
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// Weight at a vertex, zero outside the support.
    pub fn coord(&self, v: VertexId) -> T {
        match self.support.vertices().binary_search(&v) {
            Ok(i) => self.coords[i].clone(),
            Err(_) => T::zero(),
        }
    }

    /// Drops zero weights so the support is the minimal carrier.
    pub fn normalized(&self) -> Self {
        let (vs, cs): (Vec<_>, Vec<_>) = self
            .support
            .vertices()
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&v, c)| (v, c.clone()))
            .unzip();
        BarycentricPoint { support: Simplex::from_sorted(vs), coords: cs }
    }

    /// Vertices of the support sorted by descending weight, ties by ascending id,
    /// with zero weights dropped.
    pub fn descending(&self) -> Vec<(VertexId, T)> {
        let mut pairs: Vec<(VertexId, T)> = self
            .support
            .vertices()
            .iter()
            .copied()
            .zip(self.coords.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        pairs.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("comparable weights").then(a.0.cmp(&b.0)));
        pairs
    }

    /// Whether the weight at `v` is maximal among all weights (ties allowed).
    pub fn is_maximal_at(&self, v: VertexId) -> bool {
        let cv = self.coord(v);
        !cv.is_zero() && self.coords.iter().all(|c| *c <= cv)
    }

    /// Maximality of the weight at `v` up to an absolute tolerance.
    pub fn is_maximal_at_within(&self, v: VertexId, tol: T) -> bool {
        let cv = self.coord(v);
        self.coords.iter().all(|c| c.clone() <= cv.clone() + tol.clone())
    }
}

/// The flag `τ_0 ⊂ … ⊂ τ_m` carrying `x` in the subdivision, with the weight of each barycenter.
///
/// Barycenters with zero weight are omitted.
pub fn sd_chain_coords<T: Weight>(x: &BarycentricPoint<T>) -> Vec<(Simplex, T)> {
    let nu = x.descending();
    let m = nu.len() - 1;
    let mut out = Vec::with_capacity(nu.len());
    let mut prefix: Vec<VertexId> = Vec::with_capacity(nu.len());
    for i in 0..=m {
        prefix.push(nu[i].0);
        let factor = T::from_usize(i + 1).expect("small integer");
        let mu = if i < m { factor * (nu[i].1.clone() - nu[i + 1].1.clone()) } else { factor * nu[m].1.clone() };
        if !mu.is_zero() {
            out.push((Simplex::new(prefix.iter().copied()).expect("non-empty prefix"), mu));
        }
    }
    out
}

/// Converts a point of `|K|` into barycentric coordinates of `Sd K`.
pub fn base_to_sd_coords<T: Weight>(x: &BarycentricPoint<T>, sub: &Subdivision) -> Result<BarycentricPoint<T>> {
    if !sub.base().contains(&x.support) {
        return Err(NerveError::NotASimplex(x.support.clone()));
    }
    let mut chain = Vec::new();
    let mut weights = Vec::new();
    for (tau, mu) in sd_chain_coords(x) {
        chain.push(sub.vertex_of(&tau).ok_or_else(|| NerveError::NotASimplex(tau.clone()))?);
        weights.push(mu);
    }
    // Prefix sets grow in size, and subdivision vertices are numbered by size first,
    // so the chain is already increasing.
    debug_assert!(chain.windows(2).all(|w| w[0] < w[1]));
    Ok(BarycentricPoint { support: Simplex::from_sorted(chain), coords: weights })
}

/// Converts a point of `|Sd K|` back into barycentric coordinates of `K`.
pub fn sd_to_base_coords<T: Weight>(x: &BarycentricPoint<T>, sub: &Subdivision) -> Result<BarycentricPoint<T>> {
    if !sub.complex().contains(&x.support) {
        return Err(NerveError::NotASimplex(x.support.clone()));
    }
    let cells = sub.flag_of(&x.support);
    let top = cells.last().expect("non-empty chain");
    let mut nu = vec![T::zero(); top.len()];
    for (cell, mu) in cells.iter().zip(&x.coords) {
        let share = mu.clone() / T::from_usize(cell.len()).expect("small integer");
        for &w in cell.vertices() {
            let i = top.vertices().binary_search(&w).expect("chain members are faces of the top cell");
            nu[i] = nu[i].clone() + share.clone();
        }
    }
    Ok(BarycentricPoint { support: (*top).clone(), coords: nu }.normalized())
}

/// Exact rational from a small fraction, for tests and examples.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
