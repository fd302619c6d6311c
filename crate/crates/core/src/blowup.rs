//! The poset `PoBar` of pairs `(σ, J)` with `σ ∈ K_J`, its projections to the
//! face posets of the base and the nerve, and the subcomplex `T` of its flag
//! complex that triangulates the blowup, with a gradient field collapsing the
//! flag complex onto `T`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::complex::{pos, Poset, PosetMap, Simplex, SimplicialComplex, SimplicialMap, Subdivision, DEFAULT_CHAIN_CAP};
use crate::covers::{intersection, nerve, CoveredSpaceMorphism, IndexedCover};
use crate::error::{NerveError, Result};
use crate::morse::{is_gradient, DiscreteVectorField};

/// An element `(σ, J)` of `PoBar`: a simplex `σ` of the base lying in `K_J`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarElement {
    pub sigma: Simplex,
    pub j: Simplex,
}

impl fmt::Display for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.sigma, self.j)
    }
}

/// `PoBar` of a cover, with `(σ,J) ≤ (σ',J')` iff `σ ⊆ σ'` and `J ⊇ J'`.
#[derive(Clone, Debug)]
pub struct PoBar {
    cover: IndexedCover,
    nerve: SimplicialComplex,
    intersections: HashMap<Simplex, SimplicialComplex>,
    poset: Poset<BarElement>,
    pos_base: Poset<Simplex>,
    pos_nerve_op: Poset<Simplex>,
}

/// Builds `PoBar` from the single-step relations: grow `σ` by a vertex inside
/// `K_J`, or shrink `J` by one index.
pub fn pobar(c: &IndexedCover) -> Result<PoBar> {
    let n = nerve(c)?;
    let mut intersections = HashMap::with_capacity(n.len());
    for j in n.iter() {
        intersections.insert(j.clone(), intersection(c, j)?);
    }
    let mut elements = Vec::new();
    let mut edges = Vec::new();
    for j in n.iter() {
        let k_j = &intersections[j];
        for sigma in k_j.iter() {
            let e = BarElement { sigma: sigma.clone(), j: j.clone() };
            for f in sigma.facets() {
                edges.push((BarElement { sigma: f, j: j.clone() }, e.clone()));
            }
            if j.len() > 1 {
                for smaller in j.facets() {
                    edges.push((e.clone(), BarElement { sigma: sigma.clone(), j: smaller }));
                }
            }
            elements.push(e);
        }
    }
    let poset = Poset::from_generating_relation(elements, edges)?;
    Ok(PoBar {
        pos_base: pos(c.base()),
        pos_nerve_op: pos(&n).opposite(),
        cover: c.clone(),
        nerve: n,
        intersections,
        poset,
    })
}

impl PoBar {
    pub fn cover(&self) -> &IndexedCover {
        &self.cover
    }

    pub fn nerve(&self) -> &SimplicialComplex {
        &self.nerve
    }

    pub fn poset(&self) -> &Poset<BarElement> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn element(&self, i: usize) -> &BarElement {
        self.poset.element(i)
    }

    pub fn index_of(&self, e: &BarElement) -> Option<usize> {
        self.poset.index_of(e)
    }

    /// Face poset of the base.
    pub fn pos_base(&self) -> &Poset<Simplex> {
        &self.pos_base
    }

    /// Opposite of the face poset of the nerve.
    pub fn pos_nerve_op(&self) -> &Poset<Simplex> {
        &self.pos_nerve_op
    }

    /// `K_J` for a nerve simplex `J`.
    pub fn k_of(&self, j: &Simplex) -> Option<&SimplicialComplex> {
        self.intersections.get(j)
    }

    fn in_k(&self, sigma: &Simplex, j: &Simplex) -> bool {
        self.intersections.get(j).is_some_and(|k| k.contains(sigma))
    }

    /// Whether a chain of element indices lies in `T`: its top simplex is in `K` of its bottom index set.
    pub fn chain_in_t(&self, chain: &Simplex) -> bool {
        let v = chain.vertices();
        let bottom = self.element(v[0]);
        let top = self.element(*v.last().expect("non-empty"));
        self.in_k(&top.sigma, &bottom.j)
    }

    pub fn chain_elements(&self, chain: &Simplex) -> Vec<&BarElement> {
        chain.vertices().iter().map(|&i| self.element(i)).collect()
    }

    /// Flag complex of `PoBar` with the default chain cap.
    pub fn flag(&self) -> Result<SimplicialComplex> {
        crate::complex::flag_capped(&self.poset, DEFAULT_CHAIN_CAP)
    }

    pub fn to_dot(&self) -> String {
        self.poset.to_dot(|e| e.to_string())
    }
}

/// `λ_S(σ, J) = σ` into the face poset of the base.
pub fn lambda_s(p: &PoBar) -> Result<PosetMap> {
    PosetMap::from_fn(&p.poset, &p.pos_base, |e| e.sigma.clone())
}

/// `λ_N(σ, J) = J` into the opposite face poset of the nerve.
pub fn lambda_n(p: &PoBar) -> Result<PosetMap> {
    PosetMap::from_fn(&p.poset, &p.pos_nerve_op, |e| e.j.clone())
}

/// `f(σ) = { i | σ ∈ K_i }` from the face poset of the base to the opposite nerve poset.
pub fn f_map(p: &PoBar) -> Result<PosetMap> {
    PosetMap::from_fn(&p.pos_base, &p.pos_nerve_op, |s| carrier(&p.cover, s))
}

fn carrier(c: &IndexedCover, s: &Simplex) -> Simplex {
    Simplex::new(c.elements().iter().filter(|(_, e)| e.contains(s)).map(|(&i, _)| i))
        .expect("every simplex lies in some cover element")
}

/// Section `μ(σ) = (σ, f(σ))` of `λ_S`.
pub fn mu_section(p: &PoBar) -> Result<PosetMap> {
    PosetMap::from_fn(&p.pos_base, &p.poset, |s| BarElement { sigma: s.clone(), j: carrier(&p.cover, s) })
}

/// `T(𝒜)`: chains `(σ_0,J_0) < … < (σ_m,J_m)` of `PoBar` with `σ_m ∈ K_{J_0}`.
pub fn t_complex(p: &PoBar) -> Result<SimplicialComplex> {
    t_complex_capped(p, DEFAULT_CHAIN_CAP)
}

pub fn t_complex_capped(p: &PoBar, cap: usize) -> Result<SimplicialComplex> {
    let chains = p.poset.chains_where(cap, |bottom, next| p.in_k(&p.element(next).sigma, &p.element(bottom).j))?;
    SimplicialComplex::from_closed(chains.into_iter().map(Simplex::from_sorted).collect())
}

/// Simplicial map from a subcomplex of `Flag(PoBar)` to `Sd K` induced by `λ_S`.
pub fn lambda_s_to_sd(p: &PoBar, domain: &SimplicialComplex, sd_base: &Subdivision) -> Result<SimplicialMap> {
    let map = domain
        .vertices()
        .into_iter()
        .map(|v| Ok((v, sd_base.vertex_of(&p.element(v).sigma).ok_or(NerveError::UnknownVertex(v))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    SimplicialMap::new(domain.clone(), sd_base.complex().clone(), map)
}

/// Simplicial map from a subcomplex of `Flag(PoBar)` to `Sd Nrv` induced by `λ_N`.
pub fn lambda_n_to_sd(p: &PoBar, domain: &SimplicialComplex, sd_nerve: &Subdivision) -> Result<SimplicialMap> {
    let map = domain
        .vertices()
        .into_iter()
        .map(|v| Ok((v, sd_nerve.vertex_of(&p.element(v).j).ok_or(NerveError::UnknownVertex(v))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    SimplicialMap::new(domain.clone(), sd_nerve.complex().clone(), map)
}

/// Simplicial map `Sd K → Sd Nrv` induced by `f`.
pub fn f_to_sd(p: &PoBar, sd_base: &Subdivision, sd_nerve: &Subdivision) -> Result<SimplicialMap> {
    let map = sd_base
        .complex()
        .vertices()
        .into_iter()
        .map(|v| {
            let j = carrier(&p.cover, sd_base.cell(v));
            Ok((v, sd_nerve.vertex_of(&j).ok_or_else(|| NerveError::NotASimplex(j.clone()))?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    SimplicialMap::new(sd_base.complex().clone(), sd_nerve.complex().clone(), map)
}

/// What the collapse pairing does to one chain outside `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingMove {
    /// The chain is the lower simplex; its partner has one more element.
    Insert(Simplex),
    /// The chain is the upper simplex; its partner has one element fewer.
    Delete(Simplex),
}

/// Partner of a chain outside `T` under the collapse pairing, or `None` for chains in `T`.
///
/// Let `i` be the first position with `σ_i ∉ K_{J_0}`, `J* = J_i`, and `b` the
/// last position before `i` with `J_b ≠ J*`. The pivot `(σ_b, J*)` is deleted
/// if it sits at position `b+1` and inserted there otherwise. When
/// `J_{i-1} ≠ J_i` this is the insertion of `(σ_{i-1}, J_i)`.
pub fn pairing_move(p: &PoBar, chain: &Simplex) -> Option<PairingMove> {
    let els = p.chain_elements(chain);
    let j0 = &els[0].j;
    let i = els.iter().position(|e| !p.in_k(&e.sigma, j0))?;
    let j_star = &els[i].j;
    let b = (0..i).rev().find(|&b| els[b].j != *j_star).expect("J_0 differs from J_i");
    let pivot = BarElement { sigma: els[b].sigma.clone(), j: j_star.clone() };
    let x = p.index_of(&pivot).expect("pivot is an element of PoBar");
    let v = chain.vertices();
    if v[b + 1] == x {
        Some(PairingMove::Delete(chain.without_vertex(x).expect("chain keeps its bottom")))
    } else {
        Some(PairingMove::Insert(chain.with_vertex(x)))
    }
}

/// Outcome of applying the literal rule (insert `(σ_{i-1}, J_i)` when
/// `J_{i-1} ≠ J_i`, else delete) to every chain outside `T`.
#[derive(Clone, Debug, Default)]
pub struct LiteralRuleCheck {
    /// Chains outside `T` that the literal rule leaves without a partner.
    pub unpaired: Vec<Simplex>,
    /// Number of pairs the literal rule produces.
    pub pairs: usize,
}

impl LiteralRuleCheck {
    pub fn is_complete(&self) -> bool {
        self.unpaired.is_empty()
    }
}

/// Checks whether the insertion rule alone pairs every chain outside `T`.
pub fn literal_rule_check(p: &PoBar, flag: &SimplicialComplex) -> LiteralRuleCheck {
    let mut lowers = BTreeSet::new();
    let mut uppers = BTreeSet::new();
    let mut outside = Vec::new();
    for chain in flag.iter() {
        let els = p.chain_elements(chain);
        let j0 = &els[0].j;
        let Some(i) = els.iter().position(|e| !p.in_k(&e.sigma, j0)) else { continue };
        outside.push(chain);
        if els[i - 1].j != els[i].j {
            let x = p
                .index_of(&BarElement { sigma: els[i - 1].sigma.clone(), j: els[i].j.clone() })
                .expect("inserted element lies in PoBar");
            lowers.insert(chain.clone());
            uppers.insert(chain.with_vertex(x));
        }
    }
    let unpaired = outside.into_iter().filter(|c| !lowers.contains(*c) && !uppers.contains(*c)).cloned().collect();
    LiteralRuleCheck { unpaired, pairs: lowers.len() }
}

/// Gradient field on `Flag(PoBar)` whose critical simplices are exactly `T`.
///
/// The pairing is checked to be a fixed-point-free involution on the chains
/// outside `T`, and the result is checked to be a gradient.
pub fn collapse_pairing(p: &PoBar, flag: &SimplicialComplex) -> Result<DiscreteVectorField> {
    let mut pairs = Vec::new();
    let mut critical = Vec::new();
    for chain in flag.iter() {
        match pairing_move(p, chain) {
            None => critical.push(chain.clone()),
            Some(PairingMove::Insert(up)) => {
                if !flag.contains(&up) || pairing_move(p, &up) != Some(PairingMove::Delete(chain.clone())) {
                    return Err(NerveError::Inconsistent(format!("pairing is not an involution at {chain}")));
                }
                pairs.push((chain.clone(), up));
            }
            Some(PairingMove::Delete(down)) => {
                if pairing_move(p, &down) != Some(PairingMove::Insert(chain.clone())) {
                    return Err(NerveError::Inconsistent(format!("pairing is not an involution at {chain}")));
                }
            }
        }
    }
    let field = DiscreteVectorField::new(pairs, critical);
    if !is_gradient(flag, &field)? {
        return Err(NerveError::Inconsistent("collapse pairing has a closed V-path".into()));
    }
    Ok(field)
}

/// Poset map `(σ, J) ↦ (f(σ), φ(J))` induced by a covered-space morphism.
pub fn induced_pobar_map(m: &CoveredSpaceMorphism, src: &PoBar, dst: &PoBar) -> Result<PosetMap> {
    if src.cover() != m.source() || dst.cover() != m.target() {
        return Err(NerveError::Inconsistent("PoBar posets do not belong to the morphism's covers".into()));
    }
    let phi = m.index_map();
    PosetMap::from_fn(&src.poset, &dst.poset, |e| BarElement {
        sigma: m.map().image(&e.sigma),
        j: Simplex::new(e.j.vertices().iter().map(|i| phi[i])).expect("non-empty"),
    })
}

/// Sizes reported for a blowup computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub pobar_size: usize,
    pub t_size: usize,
    pub flag_size: usize,
    pub paired: usize,
    pub critical: usize,
}

/// Everything computed for a cover: `PoBar`, its flag complex, `T` and the collapse pairing.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub pobar: PoBar,
    pub flag: SimplicialComplex,
    pub t: SimplicialComplex,
    pub pairing: DiscreteVectorField,
}

impl Blowup {
    pub fn new(c: &IndexedCover) -> Result<Self> {
        let pobar = pobar(c)?;
        let flag = pobar.flag()?;
        let t = t_complex(&pobar)?;
        let pairing = collapse_pairing(&pobar, &flag)?;
        Ok(Blowup { pobar, flag, t, pairing })
    }

    pub fn report(&self) -> BlowupReport {
        BlowupReport {
            pobar_size: self.pobar.len(),
            t_size: self.t.len(),
            flag_size: self.flag.len(),
            paired: self.pairing.num_pairs(),
            critical: self.pairing.critical().len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{closure, flag, sd};
    use crate::covers::bst_cover;
    use crate::homology::betti_z2;
    use crate::morse::collapse;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn edge_cover() -> IndexedCover {
        IndexedCover::from_list(closure([s(&[0, 1])]), vec![closure([s(&[0])]), closure([s(&[0, 1])])]).unwrap()
    }

    fn hexagon_arcs() -> IndexedCover {
        let hex = closure((0..6).map(|i| s(&[i, (i + 1) % 6])));
        IndexedCover::from_list(
            hex,
            vec![closure([s(&[0, 1]), s(&[1, 2])]), closure([s(&[2, 3]), s(&[3, 4])]), closure([s(&[4, 5]), s(&[0, 5])])],
        )
        .unwrap()
    }

    /// Triangle with a small element on one edge: the literal rule misses chains here.
    fn triangle_with_edge() -> IndexedCover {
        let tri = closure([s(&[0, 1, 2])]);
        IndexedCover::from_list(tri.clone(), vec![closure([s(&[0, 1])]), tri]).unwrap()
    }

    fn brute_force_pobar(c: &IndexedCover) -> BTreeSet<BarElement> {
        let idx = c.index_set();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << idx.len()) {
            let j = Simplex::new((0..idx.len()).filter(|b| mask & (1 << b) != 0).map(|b| idx[b])).unwrap();
            for sigma in c.base().iter() {
                if j.vertices().iter().all(|&i| c.element(i).unwrap().contains(sigma)) {
                    out.insert(BarElement { sigma: sigma.clone(), j: j.clone() });
                }
            }
        }
        out
    }

    #[test]
    fn edge_example_elements() {
        let p = pobar(&edge_cover()).unwrap();
        let got: BTreeSet<BarElement> = p.poset().elements().iter().cloned().collect();
        let expected: BTreeSet<BarElement> = [
            (vec![0], vec![0]),
            (vec![0], vec![1]),
            (vec![1], vec![1]),
            (vec![0, 1], vec![1]),
            (vec![0], vec![0, 1]),
        ]
        .into_iter()
        .map(|(a, b)| BarElement { sigma: s(&a), j: s(&b) })
        .collect();
        assert_eq!(got, expected);
        let a01 = p.index_of(&BarElement { sigma: s(&[0]), j: s(&[0, 1]) }).unwrap();
        let a0 = p.index_of(&BarElement { sigma: s(&[0]), j: s(&[0]) }).unwrap();
        let ab1 = p.index_of(&BarElement { sigma: s(&[0, 1]), j: s(&[1]) }).unwrap();
        assert!(p.poset().lt(a01, a0));
        assert!(p.poset().lt(a01, ab1));
        assert!(!p.poset().comparable(a0, ab1));
    }

    #[test]
    fn pobar_matches_brute_force() {
        for c in [hexagon_arcs(), triangle_with_edge(), bst_cover(&closure([s(&[0, 1, 2])])).unwrap()] {
            let p = pobar(&c).unwrap();
            let got: BTreeSet<BarElement> = p.poset().elements().iter().cloned().collect();
            assert_eq!(got, brute_force_pobar(&c));
            // order check against the defining relation
            for a in 0..p.len() {
                for b in 0..p.len() {
                    let (x, y) = (p.element(a), p.element(b));
                    assert_eq!(p.poset().leq(a, b), x.sigma.is_face_of(&y.sigma) && y.j.is_face_of(&x.j));
                }
            }
        }
    }

    #[test]
    fn one_element_cover_is_face_poset() {
        let k = closure([s(&[0, 1, 2])]);
        let c = IndexedCover::from_list(k.clone(), vec![k.clone()]).unwrap();
        let b = Blowup::new(&c).unwrap();
        assert_eq!(b.pobar.len(), k.len());
        assert_eq!(b.t, b.flag);
        assert_eq!(b.t.f_vector(), sd(&k).complex().f_vector());
        assert_eq!(b.pairing.num_pairs(), 0);
        let f = f_map(&b.pobar).unwrap();
        assert!(f.table().iter().all(|&x| x == f.table()[0]));
    }

    #[test]
    fn lambda_fibers() {
        let p = pobar(&edge_cover()).unwrap();
        let ls = lambda_s(&p).unwrap();
        let a = p.pos_base().index_of(&s(&[0])).unwrap();
        assert_eq!(ls.table().iter().filter(|&&x| x == a).count(), 3);
        let image: BTreeSet<usize> = ls.table().iter().copied().collect();
        assert_eq!(image.len(), p.pos_base().len());
        let ln = lambda_n(&p).unwrap();
        for j in p.nerve().iter() {
            let jj = p.pos_nerve_op().index_of(j).unwrap();
            let fiber = ln.table().iter().filter(|&&x| x == jj).count();
            assert_eq!(fiber, p.k_of(j).unwrap().len());
        }
    }

    #[test]
    fn section_and_f_inequalities() {
        for c in [edge_cover(), hexagon_arcs(), triangle_with_edge()] {
            let p = pobar(&c).unwrap();
            let ls = lambda_s(&p).unwrap();
            let ln = lambda_n(&p).unwrap();
            let f = f_map(&p).unwrap();
            let mu = mu_section(&p).unwrap();
            // μ ∘ λ_S ≤ id on PoBar, λ_S ∘ μ = id on Pos K
            let id = PosetMap::from_fn(p.poset(), p.poset(), |e| e.clone()).unwrap();
            assert!(ls.then(&mu).pointwise_leq(&id, p.poset()));
            assert!(mu.then(&ls).table().iter().enumerate().all(|(i, &x)| i == x));
            // f ∘ λ_S ≤ λ_N in the opposite nerve poset
            assert!(ls.then(&f).pointwise_leq(&ln, p.pos_nerve_op()));
        }
    }

    #[test]
    fn bst_cover_f_map() {
        let k = closure([s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]);
        let sub = sd(&k);
        let c = bst_cover(&k).unwrap();
        let p = pobar(&c).unwrap();
        let f = f_map(&p).unwrap();
        for v in sub.complex().vertices() {
            let cell = sub.cell(v);
            let image = p.pos_nerve_op().element(f.apply(p.pos_base().index_of(&Simplex::vertex(v)).unwrap()));
            assert_eq!(image, cell);
        }
    }

    #[test]
    fn edge_example_t() {
        let p = pobar(&edge_cover()).unwrap();
        let t = t_complex(&p).unwrap();
        let a01 = p.index_of(&BarElement { sigma: s(&[0]), j: s(&[0, 1]) }).unwrap();
        for chain in flag(p.poset()).iter().filter(|ch| ch.contains(a01)) {
            let top = &p.element(*chain.vertices().last().unwrap()).sigma;
            assert_eq!(t.contains(chain), *top == s(&[0]));
        }
    }

    #[test]
    fn hexagon_t_is_a_circle() {
        let b = Blowup::new(&hexagon_arcs()).unwrap();
        assert_eq!(betti_z2(&b.t), *[1usize, 1].as_slice());
        assert_eq!(betti_z2(&b.flag), *[1usize, 1].as_slice());
        let trace = collapse(&b.flag, &b.pairing).unwrap();
        assert_eq!(trace.result, b.t);
        let r = b.report();
        assert_eq!(r.flag_size, 2 * r.paired + r.critical);
        assert_eq!(r.critical, r.t_size);
    }

    #[test]
    fn edge_pairing_is_gradient_and_collapses() {
        let b = Blowup::new(&edge_cover()).unwrap();
        assert!(is_gradient(&b.flag, &b.pairing).unwrap());
        assert_eq!(collapse(&b.flag, &b.pairing).unwrap().result, b.t);
        assert!(literal_rule_check(&b.pobar, &b.flag).is_complete());
    }

    #[test]
    fn literal_rule_gap_is_reported() {
        let b = Blowup::new(&triangle_with_edge()).unwrap();
        let check = literal_rule_check(&b.pobar, &b.flag);
        let a01 = b.pobar.index_of(&BarElement { sigma: s(&[0]), j: s(&[0, 1]) }).unwrap();
        let ab1 = b.pobar.index_of(&BarElement { sigma: s(&[0, 1]), j: s(&[1]) }).unwrap();
        let abc1 = b.pobar.index_of(&BarElement { sigma: s(&[0, 1, 2]), j: s(&[1]) }).unwrap();
        assert!(check.unpaired.contains(&Simplex::new([a01, ab1, abc1]).unwrap()));
        // the generalized rule still pairs everything and collapses onto T
        assert_eq!(collapse(&b.flag, &b.pairing).unwrap().result, b.t);
    }

    #[test]
    fn identity_induces_identity_pobar_map() {
        let c = hexagon_arcs();
        let p = pobar(&c).unwrap();
        let g = induced_pobar_map(&CoveredSpaceMorphism::identity(&c), &p, &p).unwrap();
        assert!(g.table().iter().enumerate().all(|(i, &x)| i == x));
    }

    #[test]
    fn merging_indices_commutes_with_projections() {
        let base = closure([s(&[0, 1])]);
        let c = IndexedCover::from_list(base.clone(), vec![closure([s(&[0])]), base.clone(), base.clone()]).unwrap();
        let d = IndexedCover::from_list(base.clone(), vec![closure([s(&[0])]), base.clone()]).unwrap();
        let m = CoveredSpaceMorphism::new(
            SimplicialMap::identity(&base),
            [(0, 0), (1, 1), (2, 1)].into_iter().collect(),
            c.clone(),
            d.clone(),
        )
        .unwrap();
        let (pc, pd) = (pobar(&c).unwrap(), pobar(&d).unwrap());
        let g = induced_pobar_map(&m, &pc, &pd).unwrap();
        assert!(pd.len() < pc.len());
        // λ_S ∘ g = λ_S since f is the identity
        let lhs = g.then(&lambda_s(&pd).unwrap());
        let rhs = lambda_s(&pc).unwrap();
        let same = (0..pc.len()).all(|i| pd.pos_base().element(lhs.apply(i)) == pc.pos_base().element(rhs.apply(i)));
        assert!(same);
        // λ_N ∘ g = φ_* ∘ λ_N
        let ln_d = g.then(&lambda_n(&pd).unwrap());
        for i in 0..pc.len() {
            let j = &pc.element(i).j;
            let image = Simplex::new(j.vertices().iter().map(|v| m.index_map()[v])).unwrap();
            assert_eq!(pd.pos_nerve_op().element(ln_d.apply(i)), &image);
        }
    }
}
