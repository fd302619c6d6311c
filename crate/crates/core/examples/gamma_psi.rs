//! Maps between a convex cover and its nerve: Γ through chosen points, Ψ through
//! partition-of-unity coordinates, and straight-line homotopy witnesses.
//!
//! cargo run --example gamma_psi

use std::collections::BTreeMap;

use nervelab::geometry::{
    check_gamma_carried, gamma_map, homotopy_witness, pointed_cech_cover, psi_eval, CoverElement, GeometricCover,
    PointCloud, PointedGeometricCover, GEOM_TOL,
};

fn main() -> nervelab::Result<()> {
    let cloud = PointCloud::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.9], vec![2.2, 0.4]])?;
    let pc = pointed_cech_cover(&cloud, 0.55)?;
    let g = gamma_map(&pc)?;
    println!("balls of radius 0.55: nerve {:?}", pc.nerve().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("thickening epsilon {:.6}", pc.epsilon());
    println!("gamma carried: {}", check_gamma_carried(&g, pc.cover(), GEOM_TOL)?.carried);
    for x in [[0.2, 0.1], [0.5, 0.0], [0.5, 0.45], [2.3, 0.5]] {
        let psi = psi_eval(&x, pc.cover(), pc.epsilon())?;
        let i = homotopy_witness(&x, &pc, &g)?;
        println!("  x = {x:?}: psi on {} = {:?}, segment to its image stays in C_{i}", psi.support(), psi.coords());
    }

    let tri = |dx: f64| CoverElement::polytope(vec![vec![dx, 0.0], vec![dx + 2.0, 0.0], vec![dx + 1.0, 2.0]]);
    let cover = GeometricCover::new(2, BTreeMap::from([(0, tri(0.0)), (1, tri(1.2)), (2, tri(2.6))]))?;
    let pc = PointedGeometricCover::from_cover(cover)?;
    let g = gamma_map(&pc)?;
    println!("three triangles: nerve {:?}", pc.nerve().iter().map(ToString::to_string).collect::<Vec<_>>());
    for (j, p) in g.assignment() {
        println!("  p_{j} = [{:.4}, {:.4}]", p[0], p[1]);
    }
    Ok(())
}
