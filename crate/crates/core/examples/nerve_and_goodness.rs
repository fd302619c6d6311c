//! Nerves of simplicial covers and certificates that every intersection is collapsible.
//!
//! cargo run --example nerve_and_goodness

use nervelab::complex::sd;
use nervelab::corpus;
use nervelab::covers::{bst_cover, goodness_report, intersection, nerve, Goodness};
use nervelab::homology::betti_z2;

fn main() -> nervelab::Result<()> {
    let arcs = corpus::hexagon_arcs();
    let n = nerve(&arcs)?;
    println!("hexagon covered by three arcs");
    println!("  nerve simplices: {:?}", n.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  Betti(hexagon) = {:?}, Betti(nerve) = {:?}", betti_z2(arcs.base()).0, betti_z2(&n).0);

    let k = corpus::torus7();
    let cover = bst_cover(&k)?;
    let cert = goodness_report(&cover)?;
    let collapsible = cert.entries.values().filter(|g| g.is_collapsible()).count();
    println!("closed barycentric stars of the 7-vertex torus");
    println!("  subdivision size: {}", sd(&k).complex().len());
    println!("  nerve equals the torus: {}", nerve(&cover)? == k);
    println!("  collapsible intersections: {collapsible} of {}", cert.entries.len());
    let (j, g) = cert.entries.iter().next().expect("non-empty nerve");
    if let Goodness::Collapsible { seed, field } = g {
        let kj = intersection(&cover, j)?;
        println!("  e.g. K_{j} has {} simplices, gradient from seed {seed} with {} pairs", kj.len(), field.num_pairs());
    }
    Ok(())
}
