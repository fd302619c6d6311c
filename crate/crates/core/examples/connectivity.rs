//! Connectivity transfer from a space to the nerve of a cover whose intersections are
//! sufficiently connected, on the octahedron covered by two cones.
//!
//! cargo run --example connectivity

use nervelab::corpus;
use nervelab::verify::verify_bjorner;

fn main() {
    let report = verify_bjorner("octahedron-hemispheres", &corpus::octahedron_hemispheres(), 1);
    for c in &report.checks {
        println!("{:<24} {:?}  {}", c.name, c.status, c.witness);
    }
}
