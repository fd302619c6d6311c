use std::collections::BTreeMap;

use serde::Serialize;

use super::cover::{GeometricCover, PointedGeometricCover, GEOM_TOL};
use crate::complex::{sd_chain_coords, BarycentricPoint, Simplex, SimplicialComplex, Subdivision};
use crate::covers::CoverIndex;
use crate::error::{NerveError, Result};

/// The map `|Sd N| → ℝ^d` sending the barycenter of `J` to `p_J`, affine on each simplex.
///
/// Subdivision vertices are nerve simplices, so the map is stored as `J ↦ p_J` and the
/// subdivision itself is never built.
#[derive(Clone, Debug)]
pub struct GammaMap {
    nerve: SimplicialComplex,
    points: BTreeMap<Simplex, Vec<f64>>,
}

impl GammaMap {
    pub fn nerve(&self) -> &SimplicialComplex {
        &self.nerve
    }

    /// The vertex assignment `J ↦ p_J`.
    pub fn assignment(&self) -> &BTreeMap<Simplex, Vec<f64>> {
        &self.points
    }

    /// Replaces `p_J`, for building counterexamples.
    pub fn with_point(mut self, j: &Simplex, p: Vec<f64>) -> Result<Self> {
        let slot = self.points.get_mut(j).ok_or_else(|| NerveError::NotASimplex(j.clone()))?;
        *slot = p;
        Ok(self)
    }

    /// Evaluates at a point of `|Sd N|` given as barycenters of nerve simplices with weights.
    pub fn eval_chain(&self, chain: &[(Simplex, f64)]) -> Result<Vec<f64>> {
        let d = self.points.values().next().map_or(0, Vec::len);
        let mut out = vec![0.0; d];
        for (j, w) in chain {
            let p = self.points.get(j).ok_or_else(|| NerveError::NotASimplex(j.clone()))?;
            for (o, c) in out.iter_mut().zip(p) {
                *o += w * c;
            }
        }
        Ok(out)
    }

    /// Evaluates at a point of `|Sd N|` given in the coordinates of an explicit subdivision.
    pub fn eval_sd(&self, y: &BarycentricPoint<f64>, sub: &Subdivision) -> Result<Vec<f64>> {
        let chain: Vec<(Simplex, f64)> =
            y.support().vertices().iter().zip(y.coords()).map(|(&v, &w)| (sub.cell(v).clone(), w)).collect();
        self.eval_chain(&chain)
    }

    /// Evaluates at a point of `|N|`, read in `|Sd N|` through its barycentric coordinates.
    pub fn eval_base(&self, x: &BarycentricPoint<f64>) -> Result<Vec<f64>> {
        if !self.nerve.contains(x.support()) {
            return Err(NerveError::NotASimplex(x.support().clone()));
        }
        self.eval_chain(&sd_chain_coords(x))
    }
}

pub fn gamma_map(pc: &PointedGeometricCover) -> Result<GammaMap> {
    let points = pc
        .nerve()
        .iter()
        .map(|j| Ok((j.clone(), pc.point(j).cloned().ok_or_else(|| NerveError::NotASimplex(j.clone()))?)))
        .collect::<Result<_>>()?;
    Ok(GammaMap { nerve: pc.nerve().clone(), points })
}

/// Outcome of a carried-ness check, with the first offending pair `(i, J)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaCarried {
    pub carried: bool,
    pub witness: Option<(CoverIndex, Simplex)>,
}

/// Checks `p_J ∈ C_i` for every `i ∈ J`; by convexity this covers every simplex of `bst v_i`.
pub fn check_gamma_carried(g: &GammaMap, cover: &GeometricCover, tol: f64) -> Result<GammaCarried> {
    for (j, p) in &g.points {
        for &i in j.vertices() {
            if !cover.element(i)?.contains(p, tol) {
                return Ok(GammaCarried { carried: false, witness: Some((i, j.clone())) });
            }
        }
    }
    Ok(GammaCarried { carried: true, witness: None })
}

/// Normalized Urysohn functions of the thickenings `d(x, C_i) < ε`, as a point of `|N|`.
pub fn psi_eval(x: &[f64], cover: &GeometricCover, epsilon: f64) -> Result<BarycentricPoint<f64>> {
    let mut phis: Vec<(CoverIndex, f64)> = Vec::new();
    let mut inside = false;
    for (&i, e) in cover.elements() {
        if x.len() != e.dim() {
            return Err(NerveError::DimensionMismatch { expected: e.dim(), found: x.len() });
        }
        let mut dc = e.distance(x);
        if dc <= GEOM_TOL * e.scale() {
            dc = 0.0;
            inside = true;
        }
        if dc >= epsilon {
            continue;
        }
        // Distance to the complement of the thickening, exact for convex elements.
        let dout = if dc > 0.0 { epsilon - dc } else { epsilon + e.boundary_distance(x) };
        let phi = dout / (dc + dout);
        if phi > 0.0 {
            phis.push((i, phi));
        }
    }
    if !inside {
        return Err(NerveError::Geometry(format!("point {x:?} lies outside every element")));
    }
    let total: f64 = phis.iter().map(|p| p.1).sum();
    if total <= 0.0 {
        return Err(NerveError::Geometry(format!("all Urysohn functions vanish at {x:?}")));
    }
    let support = Simplex::from_sorted(phis.iter().map(|p| p.0).collect());
    BarycentricPoint::new(support, phis.iter().map(|p| p.1 / total).collect())
}

/// `x ∈ C_i` implies the coordinate of `Ψ(x)` at `i` is maximal, within `tol`.
pub fn check_psi_carried(x: &[f64], i: CoverIndex, cover: &GeometricCover, epsilon: f64, tol: f64) -> Result<bool> {
    if !cover.element(i)?.contains(x, GEOM_TOL) {
        return Ok(true);
    }
    Ok(psi_eval(x, cover, epsilon)?.is_maximal_at_within(i, tol))
}

/// An index `i` with both `x` and `Γ(Ψ(x))` in `C_i`, so the segment between them stays in `C_i`.
pub fn homotopy_witness(x: &[f64], pc: &PointedGeometricCover, g: &GammaMap) -> Result<CoverIndex> {
    let psi = psi_eval(x, pc.cover(), pc.epsilon())?;
    let image = g.eval_base(&psi)?;
    let mut tried = Vec::new();
    for (&i, e) in pc.cover().elements() {
        if e.contains(x, GEOM_TOL) {
            if e.contains(&image, GEOM_TOL) {
                return Ok(i);
            }
            tried.push((i, e.distance(&image)));
        }
    }
    Err(NerveError::Geometry(format!(
        "no common element for x = {x:?} and its image {image:?}; distances of the image to elements containing x: {tried:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pointed_cech_cover, CoverElement, PointCloud};

    fn equilateral() -> PointCloud {
        PointCloud::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]]).unwrap()
    }

    #[test]
    fn gamma_is_carried_and_detects_corruption() {
        let pc = pointed_cech_cover(&equilateral(), 0.5).unwrap();
        let g = gamma_map(&pc).unwrap();
        assert!(check_gamma_carried(&g, pc.cover(), 1e-9).unwrap().carried);
        let j = Simplex::new([0, 1]).unwrap();
        let bad = g.with_point(&j, vec![0.5, 0.6]).unwrap();
        let r = check_gamma_carried(&bad, pc.cover(), 1e-9).unwrap();
        assert_eq!(r.witness, Some((0, j)));
    }

    #[test]
    fn one_element_cover_has_constant_gamma() {
        let pc = pointed_cech_cover(&PointCloud::new(2, vec![vec![1.0, 2.0]]).unwrap(), 0.3).unwrap();
        let g = gamma_map(&pc).unwrap();
        assert_eq!(g.eval_base(&BarycentricPoint::at_vertex(0)).unwrap(), vec![1.0, 2.0]);
        assert!(check_gamma_carried(&g, pc.cover(), 1e-9).unwrap().carried);
    }

    #[test]
    fn chain_evaluation_matches_explicit_subdivision() {
        let pc = pointed_cech_cover(&equilateral(), 0.6).unwrap();
        let g = gamma_map(&pc).unwrap();
        let sub = crate::complex::sd(pc.nerve());
        let x = BarycentricPoint::new(Simplex::new([0, 1, 2]).unwrap(), vec![0.5, 0.3, 0.2]).unwrap();
        let y = crate::complex::base_to_sd_coords(&x, &sub).unwrap();
        let a = g.eval_base(&x).unwrap();
        let b = g.eval_sd(&y, &sub).unwrap();
        assert!(crate::geometry::distance(&a, &b) < 1e-12);
    }

    #[test]
    fn psi_examples() {
        let cloud = PointCloud::new(2, vec![vec![0.0, 0.0], vec![1.5, 0.0], vec![10.0, 0.0]]).unwrap();
        let pc = pointed_cech_cover(&cloud, 1.0).unwrap();
        let eps = pc.epsilon();
        let iso = psi_eval(&[10.0, 0.0], pc.cover(), eps).unwrap();
        assert_eq!(iso.support(), &Simplex::vertex(2));
        let both = psi_eval(&[0.75, 0.0], pc.cover(), eps).unwrap();
        assert_eq!(both.coords(), &[0.5, 0.5]);
        let x = [-0.5, 0.0];
        assert!(check_psi_carried(&x, 0, pc.cover(), eps, 1e-9).unwrap());
        assert!(psi_eval(&[5.0, 5.0], pc.cover(), eps).is_err());
    }

    #[test]
    fn witness_for_cloud_points() {
        let pc = pointed_cech_cover(&equilateral(), 0.55).unwrap();
        let g = gamma_map(&pc).unwrap();
        for i in 0..3 {
            let x = equilateral().point(i).to_vec();
            let w = homotopy_witness(&x, &pc, &g).unwrap();
            assert!(pc.cover().element(w).unwrap().contains(&x, 1e-9));
        }
    }

    #[test]
    fn polytope_cover_witnesses() {
        let tri = |dx: f64| CoverElement::polytope(vec![vec![dx, 0.0], vec![dx + 2.0, 0.0], vec![dx + 1.0, 2.0]]);
        let cover = GeometricCover::new(2, BTreeMap::from([(0, tri(0.0)), (1, tri(1.0)), (2, tri(2.5))])).unwrap();
        let pc = PointedGeometricCover::from_cover(cover).unwrap();
        let g = gamma_map(&pc).unwrap();
        assert!(check_gamma_carried(&g, pc.cover(), 1e-9).unwrap().carried);
        for x in [[1.0, 0.5], [2.0, 0.2], [3.4, 0.1], [0.2, 0.1]] {
            let w = homotopy_witness(&x, &pc, &g).unwrap();
            assert!(pc.cover().element(w).unwrap().contains(&x, 1e-9));
        }
    }
}
