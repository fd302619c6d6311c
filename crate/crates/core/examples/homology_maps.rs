//! Z/2 homology, induced maps and commutativity of squares.
//!
//! cargo run --example homology_maps

use nervelab::blowup::{f_to_sd, lambda_n_to_sd, lambda_s_to_sd, pobar, t_complex};
use nervelab::complex::sd;
use nervelab::corpus;
use nervelab::homology::{check_square, induced_homology_map, Homology};

fn main() -> nervelab::Result<()> {
    let cover = corpus::octahedron_hemispheres();
    let p = pobar(&cover)?;
    let t = t_complex(&p)?;
    let (sd_base, sd_nerve) = (sd(cover.base()), sd(p.nerve()));
    let ls = lambda_s_to_sd(&p, &t, &sd_base)?;
    let ln = lambda_n_to_sd(&p, &t, &sd_nerve)?;
    let f = f_to_sd(&p, &sd_base, &sd_nerve)?;

    let h = Homology::new(sd_base.complex(), 2);
    println!("octahedron Betti {:?}; a 2-cycle has {} triangles", h.betti().0, h.representatives(2)[0].len());
    for (name, m) in [("lambda_S", &ls), ("lambda_N", &ln), ("f", &f)] {
        let ind = induced_homology_map(m, 2)?;
        let iso: Vec<bool> = (0..=2).map(|n| ind.is_isomorphism_in(n)).collect();
        println!("{name}: ranks {:?}, isomorphism per degree {iso:?}", ind.ranks());
    }
    // f ∘ λ_S and λ_N induce the same maps in homology.
    let id_t = nervelab::complex::SimplicialMap::identity(&t);
    let square = check_square(&id_t, &f, &ls, &ln, 2)?;
    println!("square T -> Sd K -> Sd N against T -> Sd N commutes in degrees 0..2: {square:?}");
    Ok(())
}
