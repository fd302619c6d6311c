//! Small named instances and seeded random ones, shared by examples, tests and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{closure, Simplex, SimplicialComplex};
use crate::covers::IndexedCover;
use crate::geometry::PointCloud;

fn s(v: &[usize]) -> Simplex {
    Simplex::new(v.iter().copied()).expect("non-empty")
}

pub fn edge() -> SimplicialComplex {
    closure([s(&[0, 1])])
}

pub fn triangle_boundary() -> SimplicialComplex {
    closure([s(&[0, 1]), s(&[1, 2]), s(&[0, 2])])
}

pub fn full_triangle() -> SimplicialComplex {
    closure([s(&[0, 1, 2])])
}

/// Boundary of the octahedron: vertices 0/1 = ±e1, 2/3 = ±e2, 4/5 = ±e3.
pub fn octahedron() -> SimplicialComplex {
    let mut tris = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                tris.push(s(&[a, b, c]));
            }
        }
    }
    closure(tris)
}

/// The 7-vertex triangulation of the torus.
pub fn torus7() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7 {
        tris.push(s(&[i, (i + 1) % 7, (i + 3) % 7]));
        tris.push(s(&[i, (i + 2) % 7, (i + 3) % 7]));
    }
    closure(tris)
}

pub fn hexagon() -> SimplicialComplex {
    closure((0..6).map(|i| s(&[i, (i + 1) % 6])))
}

/// Three arcs 0-1-2, 2-3-4 and 4-5-0 covering the hexagon.
pub fn hexagon_arcs() -> IndexedCover {
    IndexedCover::from_list(
        hexagon(),
        vec![closure([s(&[0, 1]), s(&[1, 2])]), closure([s(&[2, 3]), s(&[3, 4])]), closure([s(&[4, 5]), s(&[0, 5])])],
    )
    .expect("arcs cover the hexagon")
}

/// The octahedron covered by its upper and lower cones, meeting in the equatorial 4-cycle.
pub fn octahedron_hemispheres() -> IndexedCover {
    let k = octahedron();
    let upper = closure(k.simplices_of_dim(2).filter(|t| t.contains(4)).cloned());
    let lower = closure(k.simplices_of_dim(2).filter(|t| t.contains(5)).cloned());
    IndexedCover::from_list(k, vec![upper, lower]).expect("hemispheres cover the octahedron")
}

/// A seeded random complex of dimension at most two with at most `max_simplices` simplices.
pub fn random_2_complex(seed: u64, max_simplices: usize) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=7);
    let vertices: Vec<usize> = (0..n).collect();
    let mut k = closure([Simplex::vertex(0)]);
    for _ in 0..40 {
        let size = if rng.gen_bool(0.6) { 3 } else { 2 };
        let pick: Vec<usize> = vertices.choose_multiple(&mut rng, size).copied().collect();
        let mut grown = k.clone();
        grown.insert_closed(Simplex::new(pick).expect("non-empty"));
        if grown.len() <= max_simplices {
            k = grown;
        }
    }
    k
}

/// Named complexes followed by `randoms` seeded random 2-complexes with at most 40 simplices.
pub fn complex_corpus(randoms: u64) -> Vec<(String, SimplicialComplex)> {
    let mut out = vec![
        ("edge".to_string(), edge()),
        ("triangle-boundary".to_string(), triangle_boundary()),
        ("full-triangle".to_string(), full_triangle()),
        ("octahedron".to_string(), octahedron()),
        ("torus7".to_string(), torus7()),
    ];
    out.extend((0..randoms).map(|seed| (format!("random-2-complex-{seed}"), random_2_complex(seed, 40))));
    out
}

pub fn equilateral() -> PointCloud {
    PointCloud::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]]).expect("planar points")
}

pub fn unit_square() -> PointCloud {
    PointCloud::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).expect("planar points")
}

/// A seeded planar cloud of `n` points in the unit square.
pub fn random_cloud(seed: u64, n: usize) -> PointCloud {
    PointCloud::random(n, 2, 1.0, seed)
}

/// A named complex: one of the fixed instances or `random-2-complex-<seed>`.
pub fn complex_by_name(name: &str) -> Option<SimplicialComplex> {
    if let Some(seed) = name.strip_prefix("random-2-complex-") {
        return seed.parse().ok().map(|s| random_2_complex(s, 40));
    }
    Some(match name {
        "edge" => edge(),
        "triangle-boundary" => triangle_boundary(),
        "full-triangle" => full_triangle(),
        "octahedron" => octahedron(),
        "torus7" => torus7(),
        "hexagon" => hexagon(),
        _ => return None,
    })
}

/// A named cover: `hexagon-arcs` or `octahedron-hemispheres`.
pub fn cover_by_name(name: &str) -> Option<IndexedCover> {
    match name {
        "hexagon-arcs" => Some(hexagon_arcs()),
        "octahedron-hemispheres" => Some(octahedron_hemispheres()),
        _ => None,
    }
}

/// A named cloud: `equilateral`, `unit-square` or `random-<seed>-<n>`.
pub fn cloud_by_name(name: &str) -> Option<PointCloud> {
    match name {
        "equilateral" => Some(equilateral()),
        "unit-square" => Some(unit_square()),
        _ => {
            let (seed, n) = name.strip_prefix("random-")?.split_once('-')?;
            Some(random_cloud(seed.parse().ok()?, n.parse().ok()?))
        }
    }
}

/// Cover of `K` by the closed stars of its vertices together with one extra element that
/// lies inside the star of vertex 0.
pub fn cover_with_duplicate(k: &SimplicialComplex) -> (IndexedCover, usize, usize) {
    let stars: Vec<SimplicialComplex> =
        k.vertices().into_iter().map(|v| crate::complex::closed_star(k, v)).collect();
    let inner = closure(k.maximal_simplices().into_iter().filter(|m| m.contains(0)).take(1));
    let mut elements = stars;
    let extra = elements.len();
    elements.push(inner);
    let c = IndexedCover::from_list(k.clone(), elements).expect("stars cover the complex");
    (c, extra, k.vertices().iter().position(|&v| v == 0).expect("vertex 0"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_z2;

    #[test]
    fn named_complexes_have_expected_homology() {
        assert_eq!(betti_z2(&octahedron()), *[1usize, 0, 1].as_slice());
        assert_eq!(betti_z2(&torus7()), *[1usize, 2, 1].as_slice());
        assert_eq!(torus7().f_vector(), vec![7, 21, 14]);
        assert_eq!(betti_z2(&hexagon()), *[1usize, 1].as_slice());
    }

    #[test]
    fn random_complexes_respect_size_cap() {
        for seed in 0..50 {
            let k = random_2_complex(seed, 40);
            assert!(k.len() <= 40 && k.dim().unwrap() <= 2);
        }
        assert_eq!(random_2_complex(3, 40), random_2_complex(3, 40));
    }

    #[test]
    fn hemispheres_meet_in_the_equator() {
        let c = octahedron_hemispheres();
        let eq = crate::covers::intersection(&c, &s(&[0, 1])).unwrap();
        assert_eq!(eq.f_vector(), vec![4, 4]);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(complex_by_name("torus7"), Some(torus7()));
        assert_eq!(complex_by_name("random-2-complex-4"), Some(random_2_complex(4, 40)));
        assert!(cover_by_name("hexagon-arcs").is_some());
        assert_eq!(cloud_by_name("random-3-7").unwrap().len(), 7);
        assert!(cloud_by_name("random-x").is_none());
    }

    #[test]
    fn duplicate_cover_is_contained() {
        let (c, j, l) = cover_with_duplicate(&torus7());
        assert!(c.element(j).unwrap().is_subcomplex_of(c.element(l).unwrap()));
    }
}
