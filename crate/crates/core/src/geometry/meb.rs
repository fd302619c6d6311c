use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::cloud::dist;
use crate::error::{NerveError, Result};

/// Containment tolerance for enclosing balls.
pub const MEB_TOL: f64 = 1e-9;

/// A closed ball.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        dist(&self.center, x) <= self.radius + tol * (1.0 + self.radius)
    }
}

/// The smallest ball with every given point on its boundary, centered in their affine hull.
///
/// `None` when the points are affinely dependent.
pub fn circumball(pts: &[&[f64]]) -> Option<Ball> {
    let p0 = pts.first()?;
    let k = pts.len() - 1;
    if k == 0 {
        return Some(Ball { center: p0.to_vec(), radius: 0.0 });
    }
    let vs: Vec<Vec<f64>> = pts[1..].iter().map(|p| p.iter().zip(p0.iter()).map(|(a, b)| a - b).collect()).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let gram = DMatrix::from_fn(k, k, |i, j| 2.0 * dot(&vs[i], &vs[j]));
    let rhs = DVector::from_fn(k, |i, _| dot(&vs[i], &vs[i]));
    let scale = vs.iter().map(|v| dot(v, v)).fold(0.0, f64::max);
    let lu = gram.clone().full_piv_lu();
    // Reject nearly dependent configurations relative to their size.
    let det = lu.determinant().abs();
    if scale == 0.0 || det.is_nan() || det <= 1e-12 * (2.0 * scale).powi(k as i32) {
        return None;
    }
    let lambda = lu.solve(&rhs)?;
    let mut center = p0.to_vec();
    for (l, v) in lambda.iter().zip(&vs) {
        for (c, x) in center.iter_mut().zip(v) {
            *c += l * x;
        }
    }
    if center.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let radius = pts.iter().map(|p| dist(&center, p)).fold(0.0, f64::max);
    Some(Ball { center, radius })
}

/// Minimal enclosing ball by Welzl's move-to-front recursion.
pub fn meb(points: &[Vec<f64>]) -> Result<Ball> {
    let first = points.first().ok_or_else(|| NerveError::Geometry("minimal enclosing ball of no points".into()))?;
    let d = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(NerveError::DimensionMismatch { expected: d, found: p.len() });
    }
    let mut pts = points.to_vec();
    let n = pts.len();
    let mut boundary = Vec::with_capacity(d + 1);
    mtf(&mut pts, n, &mut boundary, d).ok_or_else(|| NerveError::Geometry("enclosing ball recursion failed".into()))
}

fn mtf(pts: &mut Vec<Vec<f64>>, n: usize, boundary: &mut Vec<Vec<f64>>, d: usize) -> Option<Ball> {
    let mut ball = boundary_ball(boundary);
    if boundary.len() == d + 1 {
        return ball;
    }
    for i in 0..n {
        if ball.as_ref().is_some_and(|b| b.contains(&pts[i], MEB_TOL)) {
            continue;
        }
        boundary.push(pts[i].clone());
        ball = mtf(pts, i, boundary, d);
        boundary.pop();
        let p = pts.remove(i);
        pts.insert(0, p);
    }
    ball
}

fn boundary_ball(boundary: &[Vec<f64>]) -> Option<Ball> {
    if boundary.is_empty() {
        return None;
    }
    let refs: Vec<&[f64]> = boundary.iter().map(Vec::as_slice).collect();
    circumball(&refs).or_else(|| meb_brute_force(boundary))
}

/// Smallest ball among circumballs of subsets of size at most `d + 1` that contains every point.
///
/// Exponential; intended for small inputs and as a reference.
pub fn meb_brute_force(points: &[Vec<f64>]) -> Option<Ball> {
    let d = points.first()?.len();
    let n = points.len();
    let mut best: Option<Ball> = None;
    let mut subset = Vec::new();
    fn rec(
        points: &[Vec<f64>],
        start: usize,
        max: usize,
        subset: &mut Vec<usize>,
        best: &mut Option<Ball>,
    ) {
        if !subset.is_empty() {
            let refs: Vec<&[f64]> = subset.iter().map(|&i| points[i].as_slice()).collect();
            if let Some(b) = circumball(&refs) {
                let better = best.as_ref().is_none_or(|c| b.radius < c.radius);
                if better && points.iter().all(|p| b.contains(p, MEB_TOL)) {
                    *best = Some(b);
                }
            }
        }
        if subset.len() == max {
            return;
        }
        for i in start..points.len() {
            subset.push(i);
            rec(points, i + 1, max, subset, best);
            subset.pop();
        }
    }
    rec(points, 0, (d + 1).min(n), &mut subset, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointCloud;

    #[test]
    fn small_examples() {
        let b = meb(&[vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert!((b.radius - 1.0).abs() < 1e-12 && dist(&b.center, &[1.0, 0.0]) < 1e-12);
        let b = meb(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!((b.radius - 0.5f64.sqrt()).abs() < 1e-12 && dist(&b.center, &[0.5, 0.5]) < 1e-12);
        assert_eq!(meb(&[vec![3.0, 4.0]]).unwrap().radius, 0.0);
        assert!(meb(&[]).is_err());
    }

    #[test]
    fn obtuse_triangle_uses_long_side() {
        let b = meb(&[vec![0.0, 0.0], vec![4.0, 0.0], vec![2.0, 0.5]]).unwrap();
        assert!((b.radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn duplicates_and_collinear_points() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 0.0], vec![3.0, 0.0], vec![2.0, 0.0]];
        assert!((meb(&pts).unwrap().radius - 1.5).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_brute_force() {
        for seed in 0..40 {
            let d = 2 + (seed as usize % 2);
            let cloud = PointCloud::random(3 + seed as usize % 6, d, 1.0, seed);
            let fast = meb(cloud.points()).unwrap();
            let slow = meb_brute_force(cloud.points()).unwrap();
            assert!((fast.radius - slow.radius).abs() < 1e-9, "seed {seed}: {} vs {}", fast.radius, slow.radius);
            assert!(cloud.points().iter().all(|p| fast.contains(p, MEB_TOL)));
        }
    }
}
