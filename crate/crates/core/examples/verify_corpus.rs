//! Runs every verification suite over the built-in corpus and prints one line per check.
//!
//! cargo run --release --example verify_corpus [-- --json]

use nervelab::corpus;
use nervelab::verify::{self, VerificationReport};

fn main() {
    let mut reports: Vec<VerificationReport> = Vec::new();
    for (name, k) in corpus::complex_corpus(5) {
        reports.push(verify::verify_bst(&format!("bst/{name}"), &k));
        let (c, j, l) = corpus::cover_with_duplicate(&k);
        reports.push(verify::verify_duplicate(&format!("duplicate/{name}"), &c, j, l));
        reports.push(verify::verify_coordinates(&format!("coordinates/{name}"), &k, 200, 0));
    }
    reports.push(verify::verify_blowup("blowup/hexagon-arcs", &corpus::hexagon_arcs()));
    reports.push(verify::verify_bjorner("bjorner/octahedron-hemispheres", &corpus::octahedron_hemispheres(), 1));
    for (name, cloud) in [("equilateral", corpus::equilateral()), ("unit-square", corpus::unit_square()), ("random-0-6", corpus::random_cloud(0, 6))] {
        reports.push(verify::verify_cech_alpha(&format!("cech-alpha/{name}"), &cloud, 1e-9));
        reports.push(verify::verify_functorial(&format!("functorial/{name}"), &cloud, None));
        reports.push(verify::verify_gamma_psi(&format!("gamma-psi/{name}"), &cloud, 1000, 0));
    }
    if std::env::args().any(|a| a == "--json") {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
        return;
    }
    for r in &reports {
        for c in &r.checks {
            println!("{:<40} {:<34} {:?} {:>9.2} ms", r.instance, c.name, c.status, c.ms);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} reports, {failed} with failures", reports.len());
}
