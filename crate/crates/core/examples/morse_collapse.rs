//! Greedy discrete gradients, V-path heights and validated collapse sequences.
//!
//! cargo run --example morse_collapse [-- --dot]

use nervelab::complex::sd;
use nervelab::corpus;
use nervelab::homology::betti_z2;
use nervelab::morse::{collapse, default_seeds, element_heights, greedy_gradient_search, is_gradient, HasseDiagram};

fn main() -> nervelab::Result<()> {
    for (name, k) in [("torus7", corpus::torus7()), ("sd full triangle", sd(&corpus::full_triangle()).complex().clone())] {
        let g = greedy_gradient_search(&k, &default_seeds());
        let heights = element_heights(&k, &g.field)?;
        println!(
            "{name}: {} simplices, {} critical (seed {}), gradient: {}, max height {}",
            k.len(),
            g.num_critical(),
            g.seed,
            is_gradient(&k, &g.field)?,
            heights.max_height()
        );
        let crit_dims: Vec<usize> = g.field.critical().iter().map(|s| s.dim()).collect();
        println!("  critical dimensions {crit_dims:?}, Betti {:?}", betti_z2(&k).0);
        if g.is_collapsible_certificate() {
            let trace = collapse(&k, &g.field)?;
            println!("  collapses to a point in {} steps", trace.steps.len());
            if std::env::args().any(|a| a == "--dot") {
                print!("{}", HasseDiagram::new(&k).to_dot(Some(&g.field)));
            }
        }
    }
    Ok(())
}
