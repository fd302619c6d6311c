//! Čech and alpha filtrations of a planar cloud, their barcodes, and an SVG figure.
//!
//! cargo run --example cech_alpha [-- figure.svg]

use nervelab::corpus;
use nervelab::geometry::{alpha_values_2d, cech_nerve, cech_values, cloud_svg, meb, SvgOptions};
use nervelab::homology::barcode_from_entries;

fn main() -> nervelab::Result<()> {
    let square = corpus::unit_square();
    let ball = meb(square.points())?;
    println!("unit square: enclosing ball radius {:.6} at {:?}", ball.radius, ball.center);
    for (name, entries) in [("cech", cech_values(&square, 2)?), ("alpha", alpha_values_2d(&square)?)] {
        let bars = barcode_from_entries(&entries).without_short_bars(1e-9);
        println!("  {name}: H0 {:?}", bars.degree(0));
        println!("  {name}: H1 {:?}", bars.degree(1));
    }

    let cloud = corpus::random_cloud(7, 12);
    let c = barcode_from_entries(&cech_values(&cloud, 2)?).without_short_bars(1e-9);
    let a = barcode_from_entries(&alpha_values_2d(&cloud)?).without_short_bars(1e-9);
    println!("random 12-point cloud: degree 0 and 1 barcodes agree: {}", c.degree_matches(&a, 0, 1e-9) && c.degree_matches(&a, 1, 1e-9));

    if let Some(path) = std::env::args().nth(1) {
        let r = 0.18;
        let k = cech_nerve(&cloud, r, Some(2))?;
        std::fs::write(&path, cloud_svg(&cloud, Some(&k), &SvgOptions { radius: Some(r), ..Default::default() })?)?;
        println!("wrote {path}");
    }
    Ok(())
}
