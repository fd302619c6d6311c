//! The bar poset of a cover, its subcomplex T, and the collapse of the flag complex onto T.
//!
//! cargo run --example blowup [-- --dot]

use nervelab::blowup::{literal_rule_check, Blowup};
use nervelab::corpus;
use nervelab::homology::betti_z2;
use nervelab::morse::collapse;

fn main() -> nervelab::Result<()> {
    let cover = corpus::hexagon_arcs();
    let b = Blowup::new(&cover)?;
    if std::env::args().any(|a| a == "--dot") {
        print!("{}", b.pobar.to_dot());
        return Ok(());
    }
    let r = b.report();
    println!("PoBar: {} elements, flag complex: {} simplices, T: {} simplices", r.pobar_size, r.flag_size, r.t_size);
    let trace = collapse(&b.flag, &b.pairing)?;
    println!("collapse pairing: {} pairs, {} elementary collapses, ends at T: {}", r.paired, trace.steps.len(), trace.result == b.t);
    for (h, n) in &trace.strata {
        println!("  height {h}: {n} collapses");
    }
    let literal = literal_rule_check(&b.pobar, &b.flag);
    println!("chains left unpaired by the single-rule pairing: {}", literal.unpaired.len());
    println!("Betti(T) = {:?}, Betti(base) = {:?}, Betti(nerve) = {:?}", betti_z2(&b.t).0, betti_z2(cover.base()).0, betti_z2(b.pobar.nerve()).0);
    Ok(())
}
