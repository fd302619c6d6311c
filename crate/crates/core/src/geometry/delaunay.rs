use std::collections::{BTreeSet, HashMap, HashSet};

use super::cech::CECH_TOL;
use super::cloud::{dist, PointCloud};
use super::meb::circumball;
use super::predicates::{incircle_perturbed, orient2d};
use crate::complex::{closure, Simplex, SimplicialComplex};
use crate::error::{NerveError, Result};
use crate::homology::InclusionFiltration;

/// Vertex at infinity closing every hull edge into a ghost triangle.
const GHOST: usize = usize::MAX;

fn check_planar(cloud: &PointCloud) -> Result<()> {
    if cloud.dim() != 2 {
        return Err(NerveError::Unsupported(format!("Delaunay triangulation in dimension {}", cloud.dim())));
    }
    if cloud.is_empty() {
        return Err(NerveError::Geometry("Delaunay triangulation of no points".into()));
    }
    let mut sorted: Vec<&Vec<f64>> = cloud.points().iter().collect();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(NerveError::Geometry(format!("duplicate point {:?}", w[0])));
    }
    Ok(())
}

/// Incremental Bowyer–Watson insertion with ghost triangles.
struct Triangulation<'a> {
    pts: &'a [Vec<f64>],
    tris: Vec<[usize; 3]>,
}

impl Triangulation<'_> {
    fn in_conflict(&self, t: &[usize; 3], p: usize) -> bool {
        let pt = &self.pts[p];
        if t[2] == GHOST {
            let (u, v) = (&self.pts[t[0]], &self.pts[t[1]]);
            return match orient2d(u, v, pt) {
                0 => strictly_between(u, v, pt),
                o => o > 0,
            };
        }
        incircle_perturbed(self.pts, t[0], t[1], t[2], p) > 0
    }

    fn insert(&mut self, p: usize) -> Result<()> {
        let (conflict, keep): (Vec<[usize; 3]>, Vec<[usize; 3]>) =
            self.tris.iter().partition(|t| self.in_conflict(t, p));
        if conflict.is_empty() {
            return Err(NerveError::Inconsistent(format!("point {p} conflicts with no triangle")));
        }
        let edges: HashSet<(usize, usize)> =
            conflict.iter().flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]).collect();
        let mut fresh = Vec::new();
        for &(a, b) in &edges {
            if edges.contains(&(b, a)) {
                continue;
            }
            let t = if a == GHOST {
                [b, p, GHOST]
            } else if b == GHOST {
                [p, a, GHOST]
            } else {
                if orient2d(&self.pts[a], &self.pts[b], &self.pts[p]) <= 0 {
                    return Err(NerveError::Inconsistent(format!("cavity of point {p} is not star-shaped")));
                }
                [a, b, p]
            };
            fresh.push(t);
        }
        self.tris = keep;
        self.tris.extend(fresh);
        Ok(())
    }

    fn real_triangles(&self) -> Vec<Simplex> {
        self.tris
            .iter()
            .filter(|t| t[2] != GHOST)
            .map(|t| Simplex::new(t.iter().copied()).expect("non-empty"))
            .collect()
    }
}

fn strictly_between(u: &[f64], v: &[f64], p: &[f64]) -> bool {
    let inside = |a: f64, b: f64, x: f64| (a < x && x < b) || (b < x && x < a);
    if u[0] != v[0] {
        inside(u[0], v[0], p[0])
    } else {
        inside(u[1], v[1], p[1])
    }
}

/// Delaunay triangles, or the path through the points when they are all collinear.
fn delaunay_facets(cloud: &PointCloud) -> Result<Vec<Simplex>> {
    check_planar(cloud)?;
    let pts = cloud.points();
    let n = pts.len();
    let third = (2..n).find(|&k| orient2d(&pts[0], &pts[1], &pts[k]) != 0);
    let Some(k) = third else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| pts[a][0].total_cmp(&pts[b][0]).then(pts[a][1].total_cmp(&pts[b][1])));
        if n == 1 {
            return Ok(vec![Simplex::vertex(0)]);
        }
        return Ok(order.windows(2).map(|w| Simplex::new([w[0], w[1]]).expect("edge")).collect());
    };
    let (a, b) = if orient2d(&pts[0], &pts[1], &pts[k]) > 0 { (0, 1) } else { (1, 0) };
    let mut tri = Triangulation { pts, tris: vec![[a, b, k], [b, a, GHOST], [k, b, GHOST], [a, k, GHOST]] };
    for p in (2..n).filter(|&p| p != k) {
        tri.insert(p)?;
    }
    Ok(tri.real_triangles())
}

/// Delaunay triangulation of a planar cloud, with cocircular ties broken by index.
pub fn delaunay_2d(cloud: &PointCloud) -> Result<SimplicialComplex> {
    Ok(closure(delaunay_facets(cloud)?))
}

/// Each Delaunay simplex with the radius of its smallest empty circumscribing ball.
pub fn alpha_values_2d(cloud: &PointCloud) -> Result<Vec<(Simplex, f64)>> {
    let facets = delaunay_facets(cloud)?;
    let k = closure(facets.iter().cloned());
    let pts = cloud.points();
    let mut tri_value: HashMap<Simplex, f64> = HashMap::new();
    let mut edge_cofaces: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
    for t in k.simplices_of_dim(2) {
        let refs: Vec<&[f64]> = t.vertices().iter().map(|&i| pts[i].as_slice()).collect();
        let ball = circumball(&refs).ok_or_else(|| NerveError::Geometry(format!("degenerate triangle {t}")))?;
        tri_value.insert(t.clone(), ball.radius);
        for e in t.facets() {
            edge_cofaces.entry(e).or_default().push(t.clone());
        }
    }
    let mut values: HashMap<Simplex, f64> = HashMap::new();
    for e in k.simplices_of_dim(1) {
        let (p, q) = (&pts[e.vertices()[0]], &pts[e.vertices()[1]]);
        let mid: Vec<f64> = p.iter().zip(q.iter()).map(|(x, y)| 0.5 * (x + y)).collect();
        let half = 0.5 * dist(p, q);
        let gabriel = pts
            .iter()
            .enumerate()
            .filter(|(i, _)| !e.contains(*i))
            .all(|(_, x)| dist(&mid, x) >= half);
        let v = if gabriel || !edge_cofaces.contains_key(e) {
            half
        } else {
            edge_cofaces[e].iter().map(|t| tri_value[t]).fold(f64::INFINITY, f64::min)
        };
        values.insert(e.clone(), v);
    }
    let mut out: Vec<(Simplex, f64)> = Vec::with_capacity(k.len());
    for s in k.iter() {
        let v = match s.len() {
            1 => 0.0,
            2 => values[s],
            _ => s.facets().map(|e| values[&e]).fold(tri_value[s], f64::max),
        };
        out.push((s.clone(), v));
    }
    Ok(out)
}

/// Delaunay simplices with alpha value at most `r`.
pub fn alpha_complex_2d(cloud: &PointCloud, r: f64) -> Result<SimplicialComplex> {
    let kept: BTreeSet<Simplex> =
        alpha_values_2d(cloud)?.into_iter().filter(|(_, v)| *v <= r + CECH_TOL).map(|(s, _)| s).collect();
    SimplicialComplex::from_closed(kept)
}

pub fn alpha_filtration_2d(cloud: &PointCloud) -> Result<InclusionFiltration> {
    InclusionFiltration::from_values(&alpha_values_2d(cloud)?)
}
