//! Finite abstract simplicial complexes, face posets, flag complexes and
//! barycentric subdivision.

mod coords;
mod poset;
mod simplex;
mod simplicial;
mod subdivision;

pub use coords::{base_to_sd_coords, ratio, sd_chain_coords, sd_to_base_coords, BarycentricPoint, Weight};
pub use poset::{flag, flag_capped, pos, Poset, PosetMap, DEFAULT_CHAIN_CAP};
pub use simplex::{Simplex, VertexId};
pub use simplicial::{closure, ComplexJson, SimplicialComplex, SimplicialMap};
pub use subdivision::{bst, closed_star, is_cone_with_apex, link, sd, sd_map, sd_map_between, Subdivision};
