use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::simplex::{Simplex, VertexId};
use crate::error::{NerveError, Result};

/// A finite abstract simplicial complex, stored as its full face-closed set of simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

/// Smallest face-closed complex containing every generator.
pub fn closure<I>(generators: I) -> SimplicialComplex
where
    I: IntoIterator<Item = Simplex>,
{
    let mut simplices = BTreeSet::new();
    for g in generators {
        if simplices.contains(&g) {
            continue;
        }
        simplices.extend(g.faces());
    }
    SimplicialComplex { simplices }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Full simplex on the given vertices together with all its faces.
    pub fn full_simplex(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        Ok(closure([Simplex::new(vertices)?]))
    }

    /// Builds a complex from a set already known to be face-closed.
    ///
    /// Returns an error naming the first simplex with a missing facet.
    pub fn from_closed(simplices: BTreeSet<Simplex>) -> Result<Self> {
        for s in &simplices {
            if let Some(missing) = s.facets().find(|f| !simplices.contains(f)) {
                return Err(NerveError::NotASimplex(missing));
            }
        }
        Ok(SimplicialComplex { simplices })
    }

    pub(crate) fn from_closed_unchecked(simplices: BTreeSet<Simplex>) -> Self {
        debug_assert!(simplices.iter().all(|s| s.facets().all(|f| simplices.contains(&f))));
        SimplicialComplex { simplices }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.simplices.contains(&Simplex::vertex(v))
    }

    /// Simplices in canonical order (by size, then lexicographic).
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.simplices
            .iter()
            .take_while(|s| s.len() == 1)
            .map(|s| s.vertices()[0])
            .collect()
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    pub fn simplices_of_dim(&self, n: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().filter(move |s| s.dim() == n)
    }

    /// Number of simplices per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    /// Maximal simplices in canonical order.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut has_coface: BTreeSet<&Simplex> = BTreeSet::new();
        let mut facets = Vec::new();
        for s in &self.simplices {
            facets.extend(s.facets());
        }
        let facets: BTreeSet<Simplex> = facets.into_iter().collect();
        for s in &self.simplices {
            if facets.contains(s) {
                has_coface.insert(s);
            }
        }
        self.simplices.iter().filter(|s| !has_coface.contains(s)).cloned().collect()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self.simplices.intersection(&other.simplices).cloned().collect(),
        }
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        }
    }

    /// Subcomplex of simplices satisfying a downward-closed predicate.
    pub fn filter(&self, mut keep: impl FnMut(&Simplex) -> bool) -> SimplicialComplex {
        let simplices: BTreeSet<Simplex> = self.simplices.iter().filter(|s| keep(s)).cloned().collect();
        SimplicialComplex::from_closed_unchecked(simplices)
    }

    pub fn insert_closed(&mut self, s: Simplex) {
        if !self.simplices.contains(&s) {
            self.simplices.extend(s.faces());
        }
    }

    /// The `n`-skeleton.
    pub fn skeleton(&self, n: usize) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self.simplices.iter().filter(|s| s.dim() <= n).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices(),
            simplices: self.maximal_simplices().into_iter().map(Simplex::into_vec).collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let mut out = SimplicialComplex::empty();
        for &v in &json.vertices {
            out.insert_closed(Simplex::vertex(v));
        }
        for s in &json.simplices {
            let simplex = Simplex::new(s.iter().copied())
                .map_err(|_| NerveError::Schema("empty simplex in complex JSON".into()))?;
            out.insert_closed(simplex);
        }
        Ok(out)
    }

    /// Relabels vertices through an injective map.
    pub fn relabel(&self, map: &impl Fn(VertexId) -> VertexId) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self
                .simplices
                .iter()
                .map(|s| Simplex::new(s.vertices().iter().map(|&v| map(v))).expect("non-empty"))
                .collect(),
        }
    }
}

impl FromIterator<Simplex> for SimplicialComplex {
    fn from_iter<T: IntoIterator<Item = Simplex>>(iter: T) -> Self {
        closure(iter)
    }
}

/// Complex interchange format: vertex list plus maximal simplices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(default)]
    pub vertices: Vec<VertexId>,
    pub simplices: Vec<Vec<VertexId>>,
}

/// A vertex map between two complexes that sends simplices to simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: BTreeMap<VertexId, VertexId>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<VertexId, VertexId>,
    ) -> Result<Self> {
        for v in source.vertices() {
            if !vertex_map.contains_key(&v) {
                return Err(NerveError::UnmappedVertex(v));
            }
        }
        let map = SimplicialMap { source, target, vertex_map };
        for s in map.source.iter() {
            let image = map.image(s);
            if !map.target.contains(&image) {
                return Err(NerveError::NotSimplicial { source_simplex: s.clone(), image });
            }
        }
        Ok(map)
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        let vertex_map = k.vertices().into_iter().map(|v| (v, v)).collect();
        SimplicialMap { source: k.clone(), target: k.clone(), vertex_map }
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(sub: &SimplicialComplex, sup: &SimplicialComplex) -> Result<Self> {
        let vertex_map = sub.vertices().into_iter().map(|v| (v, v)).collect();
        SimplicialMap::new(sub.clone(), sup.clone(), vertex_map)
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    pub fn apply_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[&v]
    }

    /// Image of a simplex after deduplicating repeated vertices.
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| self.vertex_map[v])).expect("non-empty")
    }

    /// Whether the simplex keeps its dimension under the map.
    pub fn is_nondegenerate_on(&self, s: &Simplex) -> bool {
        self.image(s).len() == s.len()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != other.source {
            return Err(NerveError::Inconsistent("composing maps with mismatched complexes".into()));
        }
        let vertex_map = self.vertex_map.iter().map(|(&v, w)| (v, other.vertex_map[w])).collect();
        Ok(SimplicialMap { source: self.source.clone(), target: other.target.clone(), vertex_map })
    }

    /// Image subcomplex of the source.
    pub fn image_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed_unchecked(self.source.iter().map(|s| self.image(s)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn closure_of_triangle() {
        let k = closure([s(&[0, 1, 2])]);
        assert_eq!(k.len(), 7);
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn closure_of_nothing_is_empty() {
        let k = closure(Vec::new());
        assert!(k.is_empty());
        assert_eq!(k.dim(), None);
    }

    #[test]
    fn closure_of_path_matches_subset_enumeration() {
        let k = closure([s(&[0, 1]), s(&[1, 2])]);
        let expected: BTreeSet<Simplex> =
            [s(&[0]), s(&[1]), s(&[2]), s(&[0, 1]), s(&[1, 2])].into_iter().collect();
        assert_eq!(k.simplices(), &expected);
    }

    #[test]
    fn closure_is_idempotent() {
        let k = closure([s(&[0, 1, 2]), s(&[2, 3])]);
        assert_eq!(closure(k.iter().cloned()), k);
    }

    #[test]
    fn from_closed_rejects_missing_faces() {
        let set: BTreeSet<Simplex> = [s(&[0]), s(&[0, 1])].into_iter().collect();
        assert!(SimplicialComplex::from_closed(set).is_err());
    }

    #[test]
    fn json_round_trip_keeps_isolated_vertices() {
        let mut k = closure([s(&[0, 1])]);
        k.insert_closed(s(&[7]));
        let json = k.to_json();
        assert_eq!(json.simplices, vec![vec![7], vec![0, 1]]);
        assert_eq!(SimplicialComplex::from_json(&json).unwrap(), k);
    }

    #[test]
    fn simplicial_map_validation() {
        let edge = closure([s(&[0, 1])]);
        let two_points = closure([s(&[5]), s(&[6])]);
        let collapse: BTreeMap<_, _> = [(0, 5), (1, 5)].into_iter().collect();
        assert!(SimplicialMap::new(edge.clone(), two_points.clone(), collapse).is_ok());
        let split: BTreeMap<_, _> = [(0, 5), (1, 6)].into_iter().collect();
        assert!(matches!(
            SimplicialMap::new(edge, two_points, split),
            Err(NerveError::NotSimplicial { .. })
        ));
    }
}
