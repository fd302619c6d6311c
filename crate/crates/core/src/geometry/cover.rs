use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::cech::{cech_nerve, grow};
use super::cloud::{dist, PointCloud};
use super::elements::CoverElement;
use super::meb::meb;
use crate::complex::{Simplex, SimplicialComplex};
use crate::covers::CoverIndex;
use crate::error::{NerveError, Result};

/// Default tolerance for geometric membership tests.
pub const GEOM_TOL: f64 = 1e-9;

const PROJECTION_ITERS: usize = 4000;

/// A finite family of closed convex sets in `ℝ^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricCover {
    d: usize,
    elements: BTreeMap<CoverIndex, CoverElement>,
}

impl GeometricCover {
    pub fn new(d: usize, elements: BTreeMap<CoverIndex, CoverElement>) -> Result<Self> {
        for e in elements.values() {
            e.validate()?;
            if e.dim() != d {
                return Err(NerveError::DimensionMismatch { expected: d, found: e.dim() });
            }
        }
        Ok(GeometricCover { d, elements })
    }

    /// Closed balls of a common radius around the cloud points, indexed by position.
    pub fn balls(cloud: &PointCloud, r: f64) -> Result<Self> {
        let elements = cloud.points().iter().enumerate().map(|(i, p)| (i, CoverElement::ball(p.clone(), r))).collect();
        Self::new(cloud.dim(), elements)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_set(&self) -> Vec<CoverIndex> {
        self.elements.keys().copied().collect()
    }

    pub fn element(&self, i: CoverIndex) -> Result<&CoverElement> {
        self.elements.get(&i).ok_or(NerveError::UnknownIndex(i))
    }

    pub fn elements(&self) -> &BTreeMap<CoverIndex, CoverElement> {
        &self.elements
    }

    /// Elements indexed by the vertices of `s`.
    pub fn select(&self, s: &Simplex) -> Result<Vec<&CoverElement>> {
        s.vertices().iter().map(|&i| self.element(i)).collect()
    }

    /// Whether `x` lies in the union of the elements.
    pub fn covers_point(&self, x: &[f64], tol: f64) -> bool {
        self.elements.values().any(|e| e.contains(x, tol))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("cover serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: GeometricCover = serde_json::from_str(s).map_err(|e| NerveError::Schema(e.to_string()))?;
        Self::new(raw.d, raw.elements)
    }
}

/// A point approximately common to a family of elements, with its largest distance to them.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonPoint {
    pub point: Vec<f64>,
    pub residual: f64,
    /// `sqrt(Σ d(point, C_i)² / |J|)`, a lower estimate of how far the family is from meeting.
    pub rms: f64,
}

fn equal_radius_balls(elems: &[&CoverElement]) -> Option<(Vec<Vec<f64>>, f64)> {
    let mut radius = None;
    let mut centers = Vec::with_capacity(elems.len());
    for e in elems {
        match e {
            CoverElement::Ball { center, radius: r } if radius.is_none_or(|q| q == *r) => {
                radius = Some(*r);
                centers.push(center.clone());
            }
            _ => return None,
        }
    }
    Some((centers, radius?))
}

/// Best point for a family: the enclosing-ball center for equal balls, otherwise the limit
/// of averaged projections (which minimizes the sum of squared distances).
pub fn common_point(elems: &[&CoverElement]) -> Result<CommonPoint> {
    if elems.is_empty() {
        return Err(NerveError::Geometry("common point of no elements".into()));
    }
    if let Some((centers, r)) = equal_radius_balls(elems) {
        let b = meb(&centers)?;
        let gap = (b.radius - r).max(0.0);
        return Ok(CommonPoint { point: b.center, residual: gap, rms: gap });
    }
    let d = elems[0].dim();
    let k = elems.len() as f64;
    let mut x = vec![0.0; d];
    for e in elems {
        for (xi, ai) in x.iter_mut().zip(e.anchor()) {
            *xi += ai / k;
        }
    }
    for _ in 0..PROJECTION_ITERS {
        let mut next = vec![0.0; d];
        for e in elems {
            for (ni, pi) in next.iter_mut().zip(e.project(&x)) {
                *ni += pi / k;
            }
        }
        let step = dist(&next, &x);
        x = next;
        if step <= 1e-15 * (1.0 + x.iter().map(|c| c.abs()).fold(0.0, f64::max)) {
            break;
        }
    }
    let ds: Vec<f64> = elems.iter().map(|e| e.distance(&x)).collect();
    let residual = ds.iter().copied().fold(0.0, f64::max);
    let rms = (ds.iter().map(|t| t * t).sum::<f64>() / k).sqrt();
    Ok(CommonPoint { point: x, residual, rms })
}

/// Whether the elements share a point, up to `tol` relative to their scale.
pub fn intersects(elems: &[&CoverElement], tol: f64) -> Result<bool> {
    let cp = common_point(elems)?;
    Ok(elems.iter().all(|e| e.contains(&cp.point, tol)))
}

struct Analysis {
    nerve: SimplicialComplex,
    min_gap: Option<f64>,
}

fn analyze(cover: &GeometricCover, max_dim: Option<usize>, tol: f64) -> Result<Analysis> {
    let keys = cover.index_set();
    let n = keys.len();
    let d = cover.dim();
    let min_gap: Mutex<Option<f64>> = Mutex::new(None);
    let entries = grow(n, max_dim.unwrap_or(n.saturating_sub(1)), |s, _| {
        // Helly: beyond d + 1 elements, presence of all facets decides.
        if s.len() > d + 1 {
            return Ok(Some(0.0));
        }
        let elems: Vec<&CoverElement> = s.vertices().iter().map(|&p| &cover.elements[&keys[p]]).collect();
        let cp = common_point(&elems)?;
        if elems.iter().all(|e| e.contains(&cp.point, tol)) {
            return Ok(Some(0.0));
        }
        // A minimal non-face: every facet meets, the family does not. For equal balls and
        // pairs the estimate is exact; otherwise it is halved as a safety margin.
        let exact = s.len() == 2 || equal_radius_balls(&elems).is_some();
        let gap = if exact { cp.rms } else { 0.5 * cp.rms };
        let mut g = min_gap.lock().expect("gap lock");
        *g = Some(g.map_or(gap, |h| h.min(gap)));
        Ok(None)
    })?;
    let nerve = SimplicialComplex::from_closed_unchecked(
        entries.into_iter().map(|(s, _)| Simplex::from_sorted(s.vertices().iter().map(|&p| keys[p]).collect())).collect(),
    );
    Ok(Analysis { nerve, min_gap: min_gap.into_inner().expect("gap lock") })
}

/// Nerve of a geometric cover, with Helly truncation beyond `d + 1` elements.
pub fn geometric_nerve(cover: &GeometricCover, max_dim: Option<usize>) -> Result<SimplicialComplex> {
    Ok(analyze(cover, max_dim, GEOM_TOL)?.nerve)
}

/// Radius `ε` of open metric thickenings `U_i = {x : d(x, C_i) < ε}` with the same nerve.
///
/// Half the smallest distance at which a minimal non-face would start to meet; `1` when the
/// nerve is a full simplex.
pub fn thickening_epsilon(cover: &GeometricCover) -> Result<f64> {
    let a = analyze(cover, Some(cover.dim()), GEOM_TOL)?;
    Ok(a.min_gap.map_or(1.0, |g| 0.5 * g))
}

/// A cover with a chosen point `p_σ` in every non-empty intersection.
#[derive(Clone, Debug)]
pub struct PointedGeometricCover {
    cover: GeometricCover,
    nerve: SimplicialComplex,
    points: BTreeMap<Simplex, Vec<f64>>,
    epsilon: f64,
}

impl PointedGeometricCover {
    /// Validates that each `p_σ` lies in every element indexed by `σ`.
    pub fn new(cover: GeometricCover, nerve: SimplicialComplex, points: BTreeMap<Simplex, Vec<f64>>) -> Result<Self> {
        for s in nerve.iter() {
            let p = points.get(s).ok_or_else(|| NerveError::NotASimplex(s.clone()))?;
            for &i in s.vertices() {
                if !cover.element(i)?.contains(p, GEOM_TOL) {
                    return Err(NerveError::NotCarried { index: i, target: i });
                }
            }
        }
        let epsilon = thickening_epsilon(&cover)?;
        Ok(PointedGeometricCover { cover, nerve, points, epsilon })
    }

    /// Points each intersection with the common point found for it.
    pub fn from_cover(cover: GeometricCover) -> Result<Self> {
        let nerve = geometric_nerve(&cover, None)?;
        let mut points = BTreeMap::new();
        for s in nerve.iter() {
            points.insert(s.clone(), common_point(&cover.select(s)?)?.point);
        }
        Self::new(cover, nerve, points)
    }

    pub fn cover(&self) -> &GeometricCover {
        &self.cover
    }

    pub fn nerve(&self) -> &SimplicialComplex {
        &self.nerve
    }

    pub fn point(&self, s: &Simplex) -> Option<&Vec<f64>> {
        self.points.get(s)
    }

    pub fn points(&self) -> &BTreeMap<Simplex, Vec<f64>> {
        &self.points
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Closed balls of radius `r` around the cloud, pointed by enclosing-ball centers.
pub fn pointed_cech_cover(cloud: &PointCloud, r: f64) -> Result<PointedGeometricCover> {
    let cover = GeometricCover::balls(cloud, r)?;
    let nerve = cech_nerve(cloud, r, None)?;
    let mut points = BTreeMap::new();
    for s in nerve.iter() {
        points.insert(s.clone(), meb(&cloud.select(s.vertices()))?.center);
    }
    PointedGeometricCover::new(cover, nerve, points)
}
