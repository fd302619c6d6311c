//! Point clouds, enclosing balls, Čech and alpha complexes, and the maps between a convex
//! cover and its nerve.

mod cech;
mod cloud;
mod cover;
mod delaunay;
mod elements;
mod maps;
mod meb;
pub mod predicates;
mod svg;

pub use cech::{cech_filtration, cech_nerve, cech_nerve_exhaustive, cech_values, meb_radius, CECH_TOL};
pub use cloud::PointCloud;
pub use cover::{
    common_point, geometric_nerve, intersects, pointed_cech_cover, thickening_epsilon, CommonPoint, GeometricCover,
    PointedGeometricCover, GEOM_TOL,
};
pub use delaunay::{alpha_complex_2d, alpha_filtration_2d, alpha_values_2d, delaunay_2d};
pub use elements::{element_distance, element_membership, CoverElement};
pub use maps::{check_gamma_carried, check_psi_carried, gamma_map, homotopy_witness, psi_eval, GammaCarried, GammaMap};
pub use meb::{circumball, meb, meb_brute_force, Ball, MEB_TOL};
pub use svg::{cloud_svg, SvgOptions};

/// Euclidean distance.
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    cloud::dist(a, b)
}
