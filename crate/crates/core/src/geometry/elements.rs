use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::cloud::dist;
use crate::error::{NerveError, Result};

/// A closed convex subset of `ℝ^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoverElement {
    Ball { center: Vec<f64>, radius: f64 },
    /// Convex hull of the listed vertices, in dimension at most 3.
    Polytope { vertices: Vec<Vec<f64>> },
}

impl CoverElement {
    pub fn ball(center: Vec<f64>, radius: f64) -> Self {
        CoverElement::Ball { center, radius }
    }

    pub fn polytope(vertices: Vec<Vec<f64>>) -> Self {
        CoverElement::Polytope { vertices }
    }

    pub fn dim(&self) -> usize {
        match self {
            CoverElement::Ball { center, .. } => center.len(),
            CoverElement::Polytope { vertices } => vertices.first().map_or(0, Vec::len),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoverElement::Ball { center, radius } => {
                if !radius.is_finite() || *radius < 0.0 || center.iter().any(|x| !x.is_finite()) {
                    return Err(NerveError::Schema(format!("invalid ball radius {radius}")));
                }
            }
            CoverElement::Polytope { vertices } => {
                let d = self.dim();
                if vertices.is_empty() {
                    return Err(NerveError::Schema("polytope without vertices".into()));
                }
                if d > 3 {
                    return Err(NerveError::Unsupported(format!("polytope in dimension {d}")));
                }
                if let Some(v) = vertices.iter().find(|v| v.len() != d) {
                    return Err(NerveError::DimensionMismatch { expected: d, found: v.len() });
                }
            }
        }
        Ok(())
    }

    /// A point inside the element.
    pub fn anchor(&self) -> Vec<f64> {
        match self {
            CoverElement::Ball { center, .. } => center.clone(),
            CoverElement::Polytope { vertices } => centroid(vertices),
        }
    }

    /// Closest point of the element.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        match self {
            CoverElement::Ball { center, radius } => {
                let r = dist(x, center);
                if r <= *radius {
                    return x.to_vec();
                }
                center.iter().zip(x).map(|(c, xi)| c + (xi - c) * radius / r).collect()
            }
            CoverElement::Polytope { vertices } => closest_point_in_hull(vertices, x),
        }
    }

    /// Distance from `x` to the element.
    pub fn distance(&self, x: &[f64]) -> f64 {
        match self {
            CoverElement::Ball { center, radius } => (dist(x, center) - radius).max(0.0),
            CoverElement::Polytope { .. } => dist(x, &self.project(x)),
        }
    }

    /// Length scale used to make tolerances relative: one plus the radius or the diameter.
    pub fn scale(&self) -> f64 {
        match self {
            CoverElement::Ball { radius, .. } => 1.0 + radius,
            CoverElement::Polytope { vertices } => {
                1.0 + vertices.iter().flat_map(|v| vertices.iter().map(move |w| dist(v, w))).fold(0.0, f64::max)
            }
        }
    }

    /// Membership up to `tol` relative to the element's scale.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.distance(x) <= tol * self.scale()
    }

    /// Distance from a point of the element to its topological boundary in `ℝ^d`.
    pub fn boundary_distance(&self, x: &[f64]) -> f64 {
        match self {
            CoverElement::Ball { center, radius } => (radius - dist(x, center)).max(0.0),
            CoverElement::Polytope { vertices } => {
                let facets = hull_facets(vertices);
                if facets.is_empty() {
                    return 0.0;
                }
                facets.iter().map(|(n, b)| (b - dot(n, x)).max(0.0)).fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Whether `x` lies in the element, within `tol`.
pub fn element_membership(x: &[f64], e: &CoverElement, tol: f64) -> Result<bool> {
    Ok(element_distance(x, e)? <= tol * e.scale())
}

pub fn element_distance(x: &[f64], e: &CoverElement) -> Result<f64> {
    e.validate()?;
    if x.len() != e.dim() {
        return Err(NerveError::DimensionMismatch { expected: e.dim(), found: x.len() });
    }
    Ok(e.distance(x))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn centroid(vs: &[Vec<f64>]) -> Vec<f64> {
    let d = vs[0].len();
    let mut c = vec![0.0; d];
    for v in vs {
        for (ci, vi) in c.iter_mut().zip(v) {
            *ci += vi / vs.len() as f64;
        }
    }
    c
}

/// Orthogonal projection of `x` onto the affine hull of `pts`, with its affine weights.
///
/// `None` when the points are affinely dependent.
fn affine_projection(pts: &[&Vec<f64>], x: &[f64]) -> Option<(Vec<f64>, Vec<f64>)> {
    let p0 = pts[0];
    let k = pts.len() - 1;
    if k == 0 {
        return Some((p0.clone(), vec![1.0]));
    }
    let vs: Vec<Vec<f64>> = pts[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    let w: Vec<f64> = x.iter().zip(p0).map(|(a, b)| a - b).collect();
    let gram = DMatrix::from_fn(k, k, |i, j| dot(&vs[i], &vs[j]));
    let rhs = DVector::from_fn(k, |i, _| dot(&vs[i], &w));
    let scale = vs.iter().map(|v| dot(v, v)).fold(0.0, f64::max);
    let lu = gram.full_piv_lu();
    if scale == 0.0 || lu.determinant().abs().is_nan() || lu.determinant().abs() <= 1e-12 * scale.powi(k as i32) {
        return None;
    }
    let lambda = lu.solve(&rhs)?;
    let mut y = p0.clone();
    for (l, v) in lambda.iter().zip(&vs) {
        for (yi, vi) in y.iter_mut().zip(v) {
            *yi += l * vi;
        }
    }
    let mut weights = vec![1.0 - lambda.iter().sum::<f64>()];
    weights.extend(lambda.iter());
    Some((y, weights))
}

/// Closest point of the convex hull: the best projection onto a face spanned by at most
/// `d + 1` vertices whose affine weights are non-negative.
fn closest_point_in_hull(vertices: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let d = x.len();
    let mut best = vertices[0].clone();
    let mut best_d = dist(x, &best);
    let mut subset: Vec<usize> = Vec::new();
    fn rec(
        vs: &[Vec<f64>],
        x: &[f64],
        start: usize,
        max: usize,
        subset: &mut Vec<usize>,
        best: &mut Vec<f64>,
        best_d: &mut f64,
    ) {
        if !subset.is_empty() {
            let pts: Vec<&Vec<f64>> = subset.iter().map(|&i| &vs[i]).collect();
            if let Some((y, w)) = affine_projection(&pts, x) {
                if w.iter().all(|&l| l >= -1e-12) {
                    let dy = dist(x, &y);
                    if dy < *best_d {
                        *best_d = dy;
                        *best = y;
                    }
                }
            }
        }
        if subset.len() == max {
            return;
        }
        for i in start..vs.len() {
            subset.push(i);
            rec(vs, x, i + 1, max, subset, best, best_d);
            subset.pop();
        }
    }
    rec(vertices, x, 0, (d + 1).min(vertices.len()), &mut subset, &mut best, &mut best_d);
    best
}

/// Supporting half-spaces `n·y ≤ b` (unit `n`) of a full-dimensional hull; empty otherwise.
fn hull_facets(vertices: &[Vec<f64>]) -> Vec<(Vec<f64>, f64)> {
    let d = vertices[0].len();
    let spread = vertices.iter().flat_map(|v| vertices.iter().map(move |w| dist(v, w))).fold(0.0, f64::max);
    let tol = 1e-12 * (1.0 + spread);
    let mut out: Vec<(Vec<f64>, f64)> = Vec::new();
    let normal = |idx: &[usize]| -> Option<Vec<f64>> {
        let n = match d {
            1 => vec![1.0],
            2 => {
                let (p, q) = (&vertices[idx[0]], &vertices[idx[1]]);
                vec![-(q[1] - p[1]), q[0] - p[0]]
            }
            3 => {
                let (p, q, r) = (&vertices[idx[0]], &vertices[idx[1]], &vertices[idx[2]]);
                let u: Vec<f64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
                let v: Vec<f64> = r.iter().zip(p).map(|(a, b)| a - b).collect();
                vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
            }
            _ => return None,
        };
        let len = dot(&n, &n).sqrt();
        (len > tol).then(|| n.iter().map(|c| c / len).collect())
    };
    let mut idx = Vec::new();
    fn subsets(m: usize, k: usize, start: usize, idx: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if idx.len() == k {
            f(idx);
            return;
        }
        for i in start..m {
            idx.push(i);
            subsets(m, k, i + 1, idx, f);
            idx.pop();
        }
    }
    let mut full_dim = false;
    subsets(vertices.len(), d, 0, &mut idx, &mut |s| {
        let Some(n) = normal(s) else { return };
        let b = dot(&n, &vertices[s[0]]);
        let side: Vec<f64> = vertices.iter().map(|v| dot(&n, v) - b).collect();
        let (lo, hi) = side.iter().fold((0.0f64, 0.0f64), |(lo, hi), &t| (lo.min(t), hi.max(t)));
        if hi - lo > tol {
            full_dim = true;
        }
        if hi <= tol {
            out.push((n, b));
        } else if lo >= -tol {
            out.push((n.iter().map(|c| -c).collect(), -b));
        }
    });
    if full_dim {
        out
    } else {
        Vec::new()
    }
}
