use super::poset::{flag, pos, Poset, PosetMap};
use super::simplex::{Simplex, VertexId};
use super::simplicial::{SimplicialComplex, SimplicialMap};
use crate::error::{NerveError, Result};

/// Barycentric subdivision `Sd K = Flag(Pos K)`.
///
/// Vertex `i` of the subdivision is the barycenter of `cell(i)`, the `i`-th
/// simplex of `K` in canonical order.
#[derive(Clone, Debug)]
pub struct Subdivision {
    base: SimplicialComplex,
    poset: Poset<Simplex>,
    complex: SimplicialComplex,
}

impl Subdivision {
    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn poset(&self) -> &Poset<Simplex> {
        &self.poset
    }

    /// Simplex of the base whose barycenter is subdivision vertex `v`.
    pub fn cell(&self, v: VertexId) -> &Simplex {
        self.poset.element(v)
    }

    pub fn vertex_of(&self, cell: &Simplex) -> Option<VertexId> {
        self.poset.index_of(cell)
    }

    /// The base simplices of a subdivision simplex, smallest first.
    pub fn flag_of(&self, s: &Simplex) -> Vec<&Simplex> {
        s.vertices().iter().map(|&v| self.cell(v)).collect()
    }
}

pub fn sd(k: &SimplicialComplex) -> Subdivision {
    let poset = pos(k);
    let complex = flag(&poset);
    Subdivision { base: k.clone(), poset, complex }
}

/// Subdivision of a simplicial map: the barycenter of `σ` goes to the barycenter of `f(σ)`.
pub fn sd_map(f: &SimplicialMap) -> Result<SimplicialMap> {
    let src = sd(f.source());
    let tgt = sd(f.target());
    sd_map_between(f, &src, &tgt)
}

/// As [`sd_map`], reusing subdivisions the caller already built.
pub fn sd_map_between(f: &SimplicialMap, src: &Subdivision, tgt: &Subdivision) -> Result<SimplicialMap> {
    let pm = PosetMap::from_fn(&src.poset, &tgt.poset, |s| f.image(s))?;
    pm.flag_map(&src.complex, &tgt.complex)
}

/// Closed barycentric star of a vertex: the closure of the star of `{v}` in `Sd K`,
/// i.e. all chains whose members all contain `v`.
pub fn bst(sub: &Subdivision, v: VertexId) -> Result<SimplicialComplex> {
    if !sub.base.contains_vertex(v) {
        return Err(NerveError::UnknownVertex(v));
    }
    Ok(sub.complex.filter(|chain| chain.vertices().iter().all(|&c| sub.cell(c).contains(v))))
}

/// Link of a vertex: simplices avoiding `v` whose join with `v` lies in `K`.
pub fn link(k: &SimplicialComplex, v: VertexId) -> Result<SimplicialComplex> {
    if !k.contains_vertex(v) {
        return Err(NerveError::UnknownVertex(v));
    }
    Ok(k.filter(|s| !s.contains(v) && k.contains(&s.with_vertex(v))))
}

/// Whether every simplex of `l` joined with `w` stays in `l`.
pub fn is_cone_with_apex(l: &SimplicialComplex, w: VertexId) -> bool {
    l.iter().all(|s| l.contains(&s.with_vertex(w)))
}

/// Closed star of a vertex in `K`.
pub fn closed_star(k: &SimplicialComplex, v: VertexId) -> SimplicialComplex {
    super::closure(k.iter().filter(|s| s.contains(v)).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::closure;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn sd_of_edge_is_path_on_three_vertices() {
        let k = closure([s(&[0, 1])]);
        let sub = sd(&k);
        assert_eq!(sub.complex().f_vector(), vec![3, 2]);
        let mid = sub.vertex_of(&s(&[0, 1])).unwrap();
        assert!(sub.complex().contains(&Simplex::new([sub.vertex_of(&s(&[0])).unwrap(), mid]).unwrap()));
    }

    #[test]
    fn sd_of_triangle() {
        let sub = sd(&closure([s(&[0, 1, 2])]));
        assert_eq!(sub.complex().f_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn sd_of_empty() {
        assert!(sd(&SimplicialComplex::empty()).complex().is_empty());
    }

    #[test]
    fn sd_map_of_identity_is_identity() {
        let k = closure([s(&[0, 1, 2])]);
        let f = sd_map(&SimplicialMap::identity(&k)).unwrap();
        assert!(f.vertex_map().iter().all(|(a, b)| a == b));
    }

    #[test]
    fn sd_map_of_collapse_is_constant() {
        let edge = closure([s(&[0, 1])]);
        let point = closure([s(&[9])]);
        let f = SimplicialMap::new(edge, point, [(0, 9), (1, 9)].into_iter().collect()).unwrap();
        let g = sd_map(&f).unwrap();
        assert_eq!(g.source().vertices().len(), 3);
        assert!(g.vertex_map().values().all(|&v| v == 0));
    }

    #[test]
    fn sd_map_of_inclusion_keeps_chains() {
        let edge = closure([s(&[0, 1])]);
        let tri = closure([s(&[0, 1, 2])]);
        let inc = SimplicialMap::inclusion(&edge, &tri).unwrap();
        let g = sd_map(&inc).unwrap();
        let src = sd(&edge);
        let tgt = sd(&tri);
        let chain = Simplex::new([src.vertex_of(&s(&[0])).unwrap(), src.vertex_of(&s(&[0, 1])).unwrap()]).unwrap();
        let image = g.image(&chain);
        let expected = Simplex::new([tgt.vertex_of(&s(&[0])).unwrap(), tgt.vertex_of(&s(&[0, 1])).unwrap()]).unwrap();
        assert_eq!(image, expected);
    }

    #[test]
    fn bst_of_edge_endpoint() {
        let sub = sd(&closure([s(&[0, 1])]));
        let star = bst(&sub, 0).unwrap();
        let a = sub.vertex_of(&s(&[0])).unwrap();
        let ab = sub.vertex_of(&s(&[0, 1])).unwrap();
        assert_eq!(star, closure([Simplex::new([a, ab]).unwrap()]));
        assert!(bst(&sub, 5).is_err());
    }

    #[test]
    fn bst_of_single_vertex() {
        let sub = sd(&closure([s(&[3])]));
        assert_eq!(bst(&sub, 3).unwrap().len(), 1);
    }

    #[test]
    fn bst_in_triangle_has_two_triangles() {
        let sub = sd(&closure([s(&[0, 1, 2])]));
        let star = bst(&sub, 0).unwrap();
        assert_eq!(star.simplices_of_dim(2).count(), 2);
        assert!(star.is_subcomplex_of(sub.complex()));
    }

    #[test]
    fn links_and_cones() {
        // cone over edge 12 with apex 0
        let cone = closure([s(&[0, 1, 2])]);
        assert_eq!(link(&cone, 0).unwrap(), closure([s(&[1, 2])]));
        let boundary = closure([s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]);
        let lk = link(&boundary, 0).unwrap();
        assert_eq!(lk.len(), 2);
        assert_eq!(lk.dim(), Some(0));
        assert!(!is_cone_with_apex(&lk, 1));
        assert!(is_cone_with_apex(&SimplicialComplex::empty(), 0));
    }
}
