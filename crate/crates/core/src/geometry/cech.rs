use std::collections::HashMap;

use rayon::prelude::*;

use super::cloud::PointCloud;
use super::meb::meb;
use crate::complex::{Simplex, SimplicialComplex};
use crate::covers::NERVE_SUBSET_CAP;
use crate::error::{NerveError, Result};
use crate::homology::InclusionFiltration;

/// Tolerance on `meb radius ≤ r`.
pub const CECH_TOL: f64 = 1e-9;

/// Grows simplices level by level. `value` receives a candidate whose facets are all present
/// together with their values, and returns its own value or `None` to reject it.
pub(crate) fn grow<F>(n: usize, max_dim: usize, value: F) -> Result<Vec<(Simplex, f64)>>
where
    F: Fn(&Simplex, f64) -> Result<Option<f64>> + Sync,
{
    let mut out: Vec<(Simplex, f64)> = Vec::new();
    let mut level: Vec<(Simplex, f64)> = Vec::new();
    for v in 0..n {
        let s = Simplex::vertex(v);
        if let Some(x) = value(&s, 0.0)? {
            level.push((s, x));
        }
    }
    let mut seen = 0usize;
    for _ in 0..max_dim {
        if level.is_empty() {
            break;
        }
        let lookup: HashMap<&Simplex, f64> = level.iter().map(|(s, x)| (s, *x)).collect();
        let mut candidates: Vec<(Simplex, f64)> = Vec::new();
        for (s, _) in &level {
            let top = *s.vertices().last().expect("non-empty");
            for v in top + 1..n {
                seen += 1;
                if seen > NERVE_SUBSET_CAP {
                    return Err(NerveError::ResourceLimit { what: "Cech candidate simplices", limit: NERVE_SUBSET_CAP });
                }
                let c = s.with_vertex(v);
                let mut facet_max = 0.0f64;
                let all = c.facets().all(|f| match lookup.get(&f) {
                    Some(&x) => {
                        facet_max = facet_max.max(x);
                        true
                    }
                    None => false,
                });
                if all {
                    candidates.push((c, facet_max));
                }
            }
        }
        let next: Result<Vec<Option<(Simplex, f64)>>> = candidates
            .into_par_iter()
            .map(|(c, fm)| Ok(value(&c, fm)?.map(|x| (c, x))))
            .collect();
        out.append(&mut level);
        level = next?.into_iter().flatten().collect();
    }
    out.append(&mut level);
    Ok(out)
}

/// Radius of the smallest ball around the points indexed by `s`.
pub fn meb_radius(cloud: &PointCloud, s: &Simplex) -> Result<f64> {
    Ok(meb(&cloud.select(s.vertices()))?.radius)
}

/// Nerve of the closed balls of radius `r` around the cloud points, up to dimension `max_dim`.
///
/// Simplices with more than `d + 1` vertices are decided by their facets (Helly).
pub fn cech_nerve(cloud: &PointCloud, r: f64, max_dim: Option<usize>) -> Result<SimplicialComplex> {
    if r < 0.0 || r.is_nan() {
        return Err(NerveError::Geometry(format!("negative radius {r}")));
    }
    let n = cloud.len();
    let d = cloud.dim();
    let entries = grow(n, max_dim.unwrap_or(n.saturating_sub(1)), |s, _| {
        if s.len() > d + 1 {
            return Ok(Some(0.0));
        }
        Ok((meb_radius(cloud, s)? <= r + CECH_TOL).then_some(0.0))
    })?;
    Ok(SimplicialComplex::from_closed_unchecked(entries.into_iter().map(|(s, _)| s).collect()))
}

/// Every simplex up to `max_dim` with its birth radius, monotone along faces.
pub fn cech_values(cloud: &PointCloud, max_dim: usize) -> Result<Vec<(Simplex, f64)>> {
    let d = cloud.dim();
    grow(cloud.len(), max_dim, |s, facet_max| {
        if s.len() > d + 1 {
            return Ok(Some(facet_max));
        }
        Ok(Some(meb_radius(cloud, s)?.max(facet_max)))
    })
}

pub fn cech_filtration(cloud: &PointCloud, max_dim: usize) -> Result<InclusionFiltration> {
    InclusionFiltration::from_values(&cech_values(cloud, max_dim)?)
}

/// Čech nerve by testing every subset directly, without Helly truncation.
pub fn cech_nerve_exhaustive(cloud: &PointCloud, r: f64, max_dim: usize) -> Result<SimplicialComplex> {
    let n = cloud.len();
    if n > 20 {
        return Err(NerveError::ResourceLimit { what: "exhaustive Cech points", limit: 20 });
    }
    let mut found = std::collections::BTreeSet::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > max_dim + 1 {
            continue;
        }
        let s = Simplex::from_sorted((0..n).filter(|i| mask >> i & 1 == 1).collect());
        if meb_radius(cloud, &s)? <= r + CECH_TOL {
            found.insert(s);
        }
    }
    SimplicialComplex::from_closed(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equilateral() -> PointCloud {
        PointCloud::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]]).unwrap()
    }

    #[test]
    fn equilateral_radii() {
        let c = equilateral();
        assert_eq!(cech_nerve(&c, 0.4, None).unwrap().f_vector(), vec![3]);
        assert_eq!(cech_nerve(&c, 0.5, None).unwrap().f_vector(), vec![3, 3]);
        assert_eq!(cech_nerve(&c, 0.58, None).unwrap().f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn square_birth_values() {
        let c = PointCloud::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let vals = cech_values(&c, 3).unwrap();
        let h = 0.5f64.sqrt();
        for (s, v) in &vals {
            let expect = match s.len() {
                1 => 0.0,
                2 if (s.vertices()[1] - s.vertices()[0]) % 2 == 1 => 0.5,
                _ => h,
            };
            assert!((v - expect).abs() < 1e-12, "{s}: {v}");
        }
        assert_eq!(vals.len(), 15);
        let f = cech_filtration(&c, 2).unwrap();
        assert_eq!(f.values().len(), 3);
    }

    #[test]
    fn helly_truncation_matches_exhaustive() {
        for seed in 0..12 {
            let c = PointCloud::random(6 + seed as usize % 5, 2, 1.0, 100 + seed);
            for r in [0.1, 0.2, 0.3, 0.45] {
                let fast = cech_nerve(&c, r, None).unwrap();
                let slow = cech_nerve_exhaustive(&c, r, c.len()).unwrap();
                assert_eq!(fast, slow, "seed {seed} r {r}");
            }
        }
    }

    #[test]
    fn monotone_in_radius() {
        let c = PointCloud::random(8, 2, 1.0, 7);
        let mut prev = cech_nerve(&c, 0.0, Some(3)).unwrap();
        for r in [0.1, 0.2, 0.3, 0.5, 1.0] {
            let next = cech_nerve(&c, r, Some(3)).unwrap();
            assert!(prev.is_subcomplex_of(&next));
            prev = next;
        }
    }
}
