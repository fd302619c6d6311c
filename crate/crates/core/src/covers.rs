//! Indexed covers by subcomplexes, nerves, covered-space morphisms, closed
//! barycentric star covers and goodness certification.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{bst, sd, ComplexJson, Simplex, SimplicialComplex, SimplicialMap, Subdivision, VertexId};
use crate::error::{NerveError, Result};
use crate::homology::betti_z2;
use crate::morse::{collapse, greedy_gradient_search, DiscreteVectorField, ElementaryCollapse};

pub type CoverIndex = usize;

/// Largest number of candidate index subsets examined while building a nerve.
pub const NERVE_SUBSET_CAP: usize = 1 << 20;

/// A cover of a complex by subcomplexes, indexed by integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedCover {
    base: SimplicialComplex,
    elements: BTreeMap<CoverIndex, SimplicialComplex>,
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    base: ComplexJson,
    elements: BTreeMap<String, ComplexJson>,
}

impl IndexedCover {
    /// Validates that each element is a subcomplex and that the elements cover the base.
    pub fn new(base: SimplicialComplex, elements: BTreeMap<CoverIndex, SimplicialComplex>) -> Result<Self> {
        for (&i, e) in &elements {
            if !e.is_subcomplex_of(&base) {
                return Err(NerveError::NotASubcomplex(i));
            }
        }
        let covered: BTreeSet<&Simplex> = elements.values().flat_map(|e| e.iter()).collect();
        if let Some(s) = base.iter().find(|s| !covered.contains(s)) {
            return Err(NerveError::NotACover(s.clone()));
        }
        Ok(IndexedCover { base, elements })
    }

    /// Cover indexed `0..n` in the given order.
    pub fn from_list(base: SimplicialComplex, elements: Vec<SimplicialComplex>) -> Result<Self> {
        Self::new(base, elements.into_iter().enumerate().collect())
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn index_set(&self) -> Vec<CoverIndex> {
        self.elements.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: CoverIndex) -> Result<&SimplicialComplex> {
        self.elements.get(&i).ok_or(NerveError::UnknownIndex(i))
    }

    pub fn elements(&self) -> &BTreeMap<CoverIndex, SimplicialComplex> {
        &self.elements
    }

    /// The cover with index `j` removed, if the rest still covers the base.
    pub fn without(&self, j: CoverIndex) -> Result<IndexedCover> {
        self.element(j)?;
        let mut elements = self.elements.clone();
        elements.remove(&j);
        IndexedCover::new(self.base.clone(), elements)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = CoverJson {
            base: self.base.to_json(),
            elements: self.elements.iter().map(|(i, e)| (i.to_string(), e.to_json())).collect(),
        };
        serde_json::to_value(json).expect("cover serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let json: CoverJson =
            serde_json::from_value(v.clone()).map_err(|e| NerveError::Schema(format!("cover JSON: {e}")))?;
        let base = SimplicialComplex::from_json(&json.base)?;
        let mut elements = BTreeMap::new();
        for (k, e) in &json.elements {
            let i: CoverIndex = k.parse().map_err(|_| NerveError::Schema(format!("cover index {k:?} is not an integer")))?;
            elements.insert(i, SimplicialComplex::from_json(e)?);
        }
        IndexedCover::new(base, elements)
    }
}

/// `K_J`, the intersection of the elements indexed by `J`.
pub fn intersection(c: &IndexedCover, j: &Simplex) -> Result<SimplicialComplex> {
    let mut it = j.vertices().iter();
    let first = *it.next().expect("simplices are non-empty");
    let mut out = c.element(first)?.clone();
    for &i in it {
        out = out.intersection(c.element(i)?);
    }
    Ok(out)
}

/// Nerve of a cover with the default subset cap.
pub fn nerve(c: &IndexedCover) -> Result<SimplicialComplex> {
    nerve_capped(c, NERVE_SUBSET_CAP)
}

/// Nerve enumerated level by level in cardinality; a candidate is examined only
/// if all its facets are already in the nerve.
///
/// Two subcomplexes intersect iff they share a vertex, so only vertex sets are compared.
pub fn nerve_capped(c: &IndexedCover, cap: usize) -> Result<SimplicialComplex> {
    let verts: BTreeMap<CoverIndex, BTreeSet<VertexId>> = c
        .elements
        .iter()
        .filter(|(_, e)| !e.is_empty())
        .map(|(&i, e)| (i, e.vertices().into_iter().collect()))
        .collect();
    let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
    let mut level: Vec<(Simplex, BTreeSet<VertexId>)> =
        verts.iter().map(|(&i, vs)| (Simplex::vertex(i), vs.clone())).collect();
    let mut examined = level.len();
    while !level.is_empty() {
        simplices.extend(level.iter().map(|(s, _)| s.clone()));
        let mut next = Vec::new();
        for (s, common) in &level {
            let last = *s.vertices().last().expect("non-empty");
            for (&i, vs) in verts.range(last + 1..) {
                let candidate = s.with_vertex(i);
                if !candidate.facets().all(|f| simplices.contains(&f)) {
                    continue;
                }
                examined += 1;
                if examined > cap {
                    return Err(NerveError::ResourceLimit { what: "nerve candidate subsets", limit: cap });
                }
                let shared: BTreeSet<VertexId> = common.intersection(vs).copied().collect();
                if !shared.is_empty() {
                    next.push((candidate, shared));
                }
            }
        }
        level = next;
    }
    SimplicialComplex::from_closed(simplices)
}

/// Whether `f(K_i) ⊆ L_{φ(i)}` for every index `i` of `src`.
pub fn check_carried(
    f: &SimplicialMap,
    phi: &BTreeMap<CoverIndex, CoverIndex>,
    src: &IndexedCover,
    dst: &IndexedCover,
) -> Result<bool> {
    Ok(first_uncarried(f, phi, src, dst)?.is_none())
}

fn first_uncarried(
    f: &SimplicialMap,
    phi: &BTreeMap<CoverIndex, CoverIndex>,
    src: &IndexedCover,
    dst: &IndexedCover,
) -> Result<Option<(CoverIndex, CoverIndex)>> {
    if f.source() != src.base() || f.target() != dst.base() {
        return Err(NerveError::Inconsistent("map does not run between the cover bases".into()));
    }
    for (&i, k_i) in &src.elements {
        let j = *phi.get(&i).ok_or(NerveError::UnknownIndex(i))?;
        let l_j = dst.element(j)?;
        if k_i.maximal_simplices().iter().any(|s| !l_j.contains(&f.image(s))) {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

/// A simplicial map between cover bases together with a carried index map.
#[derive(Clone, Debug)]
pub struct CoveredSpaceMorphism {
    f: SimplicialMap,
    phi: BTreeMap<CoverIndex, CoverIndex>,
    src: IndexedCover,
    dst: IndexedCover,
}

impl CoveredSpaceMorphism {
    pub fn new(
        f: SimplicialMap,
        phi: BTreeMap<CoverIndex, CoverIndex>,
        src: IndexedCover,
        dst: IndexedCover,
    ) -> Result<Self> {
        if let Some((index, target)) = first_uncarried(&f, &phi, &src, &dst)? {
            return Err(NerveError::NotCarried { index, target });
        }
        Ok(CoveredSpaceMorphism { f, phi, src, dst })
    }

    pub fn identity(c: &IndexedCover) -> Self {
        CoveredSpaceMorphism {
            f: SimplicialMap::identity(c.base()),
            phi: c.index_set().into_iter().map(|i| (i, i)).collect(),
            src: c.clone(),
            dst: c.clone(),
        }
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.f
    }

    pub fn index_map(&self) -> &BTreeMap<CoverIndex, CoverIndex> {
        &self.phi
    }

    pub fn source(&self) -> &IndexedCover {
        &self.src
    }

    pub fn target(&self) -> &IndexedCover {
        &self.dst
    }

    pub fn then(&self, other: &CoveredSpaceMorphism) -> Result<CoveredSpaceMorphism> {
        if self.dst != other.src {
            return Err(NerveError::Inconsistent("morphisms are not composable".into()));
        }
        let phi = self.phi.iter().map(|(&i, j)| (i, other.phi[j])).collect();
        CoveredSpaceMorphism::new(self.f.then(&other.f)?, phi, self.src.clone(), other.dst.clone())
    }
}

/// The nerve map `φ_*` between nerves.
pub fn induced_nerve_map(m: &CoveredSpaceMorphism) -> Result<SimplicialMap> {
    induced_nerve_map_between(m, &nerve(&m.src)?, &nerve(&m.dst)?)
}

/// As [`induced_nerve_map`], with the nerves already computed.
pub fn induced_nerve_map_between(
    m: &CoveredSpaceMorphism,
    src_nerve: &SimplicialComplex,
    dst_nerve: &SimplicialComplex,
) -> Result<SimplicialMap> {
    let vertex_map = src_nerve.vertices().into_iter().map(|i| (i, m.phi[&i])).collect();
    SimplicialMap::new(src_nerve.clone(), dst_nerve.clone(), vertex_map)
}

/// Cover of `Sd K` by closed barycentric stars, indexed by the vertices of `K`.
pub fn bst_cover(k: &SimplicialComplex) -> Result<IndexedCover> {
    bst_cover_of(&sd(k))
}

/// As [`bst_cover`], reusing a subdivision.
pub fn bst_cover_of(sub: &Subdivision) -> Result<IndexedCover> {
    if sub.base().is_empty() {
        return Err(NerveError::Inconsistent("closed barycentric star cover of an empty complex".into()));
    }
    let elements = sub.base().vertices().into_iter().map(|v| Ok((v, bst(sub, v)?))).collect::<Result<_>>()?;
    IndexedCover::new(sub.complex().clone(), elements)
}

/// Result of removing an index whose element lies inside another element.
#[derive(Clone, Debug)]
pub struct DropDuplicate {
    pub steps: Vec<ElementaryCollapse>,
    pub reduced: IndexedCover,
    pub nerve: SimplicialComplex,
}

/// Removes index `j` when `K_j ⊆ K_l`, returning the collapse of the nerve
/// that pairs each `J ∋ j` without `l` with `J ∪ {l}`.
pub fn drop_duplicate(c: &IndexedCover, j: CoverIndex, l: CoverIndex) -> Result<DropDuplicate> {
    if j == l {
        return Err(NerveError::Inconsistent("cannot drop an index in favour of itself".into()));
    }
    if !c.element(j)?.is_subcomplex_of(c.element(l)?) {
        return Err(NerveError::NotContained { inner: j, outer: l });
    }
    let full = nerve(c)?;
    let pairs: Vec<(Simplex, Simplex)> = full
        .iter()
        .filter(|s| s.contains(j) && !s.contains(l))
        .map(|s| (s.clone(), s.with_vertex(l)))
        .collect();
    let critical = full.iter().filter(|s| !s.contains(j)).cloned();
    let field = DiscreteVectorField::new(pairs, critical);
    let trace = collapse(&full, &field)?;
    let reduced = c.without(j)?;
    let nerve = nerve(&reduced)?;
    if trace.result != nerve {
        return Err(NerveError::Inconsistent("collapse does not end in the reduced nerve".into()));
    }
    Ok(DropDuplicate { steps: trace.steps, reduced, nerve })
}

/// Certified status of one intersection `K_J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Goodness {
    /// A gradient field with a single critical vertex; `K_J` collapses to that vertex.
    Collapsible { seed: u64, field: DiscreteVectorField },
    /// Reduced Z/2 homology vanishes but no collapse was found.
    Z2Acyclic,
    /// Not certified. A nonzero entry in `reduced_betti` shows `K_J` is not acyclic.
    Unknown { reduced_betti: Vec<usize> },
}

impl Goodness {
    pub fn is_collapsible(&self) -> bool {
        matches!(self, Goodness::Collapsible { .. })
    }

    pub fn is_acyclic(&self) -> bool {
        !matches!(self, Goodness::Unknown { .. })
    }
}

/// Goodness status for every nerve simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessCertificate {
    pub entries: BTreeMap<Simplex, Goodness>,
}

impl GoodnessCertificate {
    pub fn all_collapsible(&self) -> bool {
        self.entries.values().all(Goodness::is_collapsible)
    }

    pub fn all_acyclic(&self) -> bool {
        self.entries.values().all(Goodness::is_acyclic)
    }

    /// JSON object keyed by nerve simplex, e.g. `"[0,1]"`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(s, g)| (s.to_string(), serde_json::to_value(g).expect("goodness serializes")))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Certifies each `K_J` with the given seed list.
pub fn goodness_report_with_seeds(c: &IndexedCover, seeds: &[u64]) -> Result<GoodnessCertificate> {
    let n = nerve(c)?;
    let simplices: Vec<Simplex> = n.iter().cloned().collect();
    let entries = simplices
        .into_par_iter()
        .map(|j| {
            let k_j = intersection(c, &j)?;
            let best = greedy_gradient_search(&k_j, seeds);
            let status = if best.is_collapsible_certificate() {
                Goodness::Collapsible { seed: best.seed, field: best.field }
            } else {
                let reduced = betti_z2(&k_j).reduced().expect("nerve intersections are non-empty");
                if reduced.iter().all(|&b| b == 0) {
                    Goodness::Z2Acyclic
                } else {
                    Goodness::Unknown { reduced_betti: reduced }
                }
            };
            Ok((j, status))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(GoodnessCertificate { entries })
}

/// Certifies each `K_J` using 32 greedy restarts with seeds `0..32`.
pub fn goodness_report(c: &IndexedCover) -> Result<GoodnessCertificate> {
    goodness_report_with_seeds(c, &crate::morse::default_seeds())
}

/// A simplicial cover with, for each nerve simplex `J`, a simplex of the base
/// whose barycenter lies in `K_J`.
#[derive(Clone, Debug)]
pub struct PointedSimplicialCover {
    cover: IndexedCover,
    points: BTreeMap<Simplex, Simplex>,
}

impl PointedSimplicialCover {
    /// Validates that each nerve simplex has a point and that the point lies in `K_J`.
    pub fn new(cover: IndexedCover, points: BTreeMap<Simplex, Simplex>) -> Result<Self> {
        for j in nerve(&cover)?.iter() {
            let p = points.get(j).ok_or_else(|| NerveError::Inconsistent(format!("no point for nerve simplex {j}")))?;
            if !intersection(&cover, j)?.contains(p) {
                return Err(NerveError::Inconsistent(format!("point {p} of {j} is not in the intersection")));
            }
        }
        Ok(PointedSimplicialCover { cover, points })
    }

    pub fn cover(&self) -> &IndexedCover {
        &self.cover
    }

    pub fn point(&self, j: &Simplex) -> Option<&Simplex> {
        self.points.get(j)
    }

    pub fn points(&self) -> &BTreeMap<Simplex, Simplex> {
        &self.points
    }
}

/// The closed barycentric star cover of `Sd K`, pointed by barycenters: the
/// nerve simplex `σ` (a simplex of `K`) gets the vertex of `Sd K` at its barycenter.
pub fn pointed_bst_cover(k: &SimplicialComplex) -> Result<PointedSimplicialCover> {
    let sub = sd(k);
    let cover = bst_cover_of(&sub)?;
    let points = k
        .iter()
        .map(|s| (s.clone(), Simplex::vertex(sub.vertex_of(s).expect("simplex of the base"))))
        .collect();
    PointedSimplicialCover::new(cover, points)
}
