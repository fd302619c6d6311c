//! Exact barycentric coordinates in a complex and in its subdivision.
//!
//! cargo run --example coordinates

use nervelab::complex::{base_to_sd_coords, bst, ratio, sd, sd_to_base_coords, BarycentricPoint, Simplex};
use nervelab::corpus;

fn main() -> nervelab::Result<()> {
    let k = corpus::full_triangle();
    let sub = sd(&k);
    let x = BarycentricPoint::new(Simplex::new([0, 1, 2])?, vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)])?;
    let y = base_to_sd_coords(&x, &sub)?;
    let cells: Vec<String> = y.support().vertices().iter().map(|&v| sub.cell(v).to_string()).collect();
    println!("x = {:?}", x.coords().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("in Sd: cells {cells:?} with weights {:?}", y.coords().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("round trip exact: {}", sd_to_base_coords(&y, &sub)? == x);
    for v in 0..3 {
        println!("vertex {v}: maximal coordinate {}, in bst {}", x.is_maximal_at(v), bst(&sub, v)?.contains(y.support()));
    }
    Ok(())
}
