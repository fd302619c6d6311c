//! Discrete vector fields, gradient checks, V-path and element heights, and
//! collapses executed stratum by stratum.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{NerveError, Result};

/// A partition of a complex into critical simplices and facet/coface pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteVectorField {
    /// Lower simplex to upper simplex.
    #[serde(with = "pair_list")]
    pairs: BTreeMap<Simplex, Simplex>,
    critical: BTreeSet<Simplex>,
    #[serde(skip)]
    down: BTreeMap<Simplex, Simplex>,
}

mod pair_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<Simplex, Simplex>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(&Simplex, &Simplex)> = m.iter().collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<Simplex, Simplex>, D::Error> {
        let v = Vec::<(Simplex, Simplex)>::deserialize(d)?;
        Ok(v.into_iter().collect())
    }
}

impl DiscreteVectorField {
    /// Builds a field from pairs `(τ, σ)` and critical simplices without validating it.
    pub fn new(pairs: impl IntoIterator<Item = (Simplex, Simplex)>, critical: impl IntoIterator<Item = Simplex>) -> Self {
        let pairs: BTreeMap<Simplex, Simplex> = pairs.into_iter().collect();
        let down = pairs.iter().map(|(t, s)| (s.clone(), t.clone())).collect();
        DiscreteVectorField { pairs, critical: critical.into_iter().collect(), down }
    }

    /// Every simplex critical.
    pub fn all_critical(k: &SimplicialComplex) -> Self {
        Self::new([], k.iter().cloned())
    }

    /// Pairs `(τ, σ)` with `τ` the lower simplex.
    pub fn pairs(&self) -> impl Iterator<Item = (&Simplex, &Simplex)> + '_ {
        self.pairs.iter()
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn critical(&self) -> &BTreeSet<Simplex> {
        &self.critical
    }

    pub fn is_critical(&self, s: &Simplex) -> bool {
        self.critical.contains(s)
    }

    /// Upper partner of a lower simplex.
    pub fn up(&self, tau: &Simplex) -> Option<&Simplex> {
        self.pairs.get(tau)
    }

    /// Lower partner of an upper simplex.
    pub fn down(&self, sigma: &Simplex) -> Option<&Simplex> {
        self.down.get(sigma)
    }

    pub fn is_paired(&self, tau: &Simplex, sigma: &Simplex) -> bool {
        self.pairs.get(tau) == Some(sigma)
    }

    /// Critical simplices as a complex, if face-closed.
    pub fn critical_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_closed(self.critical.clone())
            .map_err(|e| match e {
                NerveError::NotASimplex(s) => NerveError::CriticalNotClosed(s),
                other => other,
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("vector field serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: DiscreteVectorField = serde_json::from_value(v.clone())?;
        Ok(Self::new(raw.pairs, raw.critical))
    }
}

/// Hasse diagram of the face poset with codimension-one arcs.
#[derive(Clone, Debug)]
pub struct HasseDiagram {
    nodes: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    facets: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
}

impl HasseDiagram {
    pub fn new(k: &SimplicialComplex) -> Self {
        let nodes: Vec<Simplex> = k.iter().cloned().collect();
        let index: HashMap<Simplex, usize> = nodes.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut facets = vec![Vec::new(); nodes.len()];
        let mut cofaces = vec![Vec::new(); nodes.len()];
        for (i, s) in nodes.iter().enumerate() {
            for f in s.facets() {
                let j = index[&f];
                facets[i].push(j);
                cofaces[j].push(i);
            }
        }
        HasseDiagram { nodes, index, facets, cofaces }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Simplex {
        &self.nodes[i]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn facets_of(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    pub fn cofaces_of(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    /// Arcs `(facet, coface)` of the plain diagram.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| self.facets[i].iter().map(move |&f| (f, i))).collect()
    }

    /// Successors in the modified diagram: arcs go from a simplex down to its
    /// facets, except matched arcs, which point up.
    fn modified_successors(&self, v: &DiscreteVectorField) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|i| {
                let s = &self.nodes[i];
                let mut out: Vec<usize> =
                    self.facets[i].iter().copied().filter(|&f| !v.is_paired(&self.nodes[f], s)).collect();
                if let Some(up) = v.up(s) {
                    out.push(self.index[up]);
                }
                out
            })
            .collect()
    }

    /// DOT export; with a field, matched arcs are reversed and drawn in red.
    pub fn to_dot(&self, v: Option<&DiscreteVectorField>) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, s) in self.nodes.iter().enumerate() {
            let shape = match v {
                Some(v) if v.is_critical(s) => ", shape=box",
                _ => "",
            };
            out.push_str(&format!("  n{i} [label=\"{s}\"{shape}];\n"));
        }
        for (f, c) in self.arcs() {
            let matched = v.is_some_and(|v| v.is_paired(&self.nodes[f], &self.nodes[c]));
            if matched {
                out.push_str(&format!("  n{f} -> n{c} [color=red, penwidth=2];\n"));
            } else if v.is_some() {
                out.push_str(&format!("  n{c} -> n{f};\n"));
            } else {
                out.push_str(&format!("  n{f} -> n{c};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Whether `v` partitions `k` into critical simplices and facet/coface pairs.
pub fn is_vector_field(k: &SimplicialComplex, v: &DiscreteVectorField) -> bool {
    let mut seen: BTreeSet<&Simplex> = BTreeSet::new();
    for (t, s) in v.pairs() {
        if !k.contains(t) || !k.contains(s) || s.len() != t.len() + 1 || !t.is_face_of(s) {
            return false;
        }
        if !seen.insert(t) || !seen.insert(s) {
            return false;
        }
    }
    for c in v.critical() {
        if !k.contains(c) || !seen.insert(c) {
            return false;
        }
    }
    seen.len() == k.len()
}

fn require_vector_field(k: &SimplicialComplex, v: &DiscreteVectorField) -> Result<()> {
    if is_vector_field(k, v) {
        Ok(())
    } else {
        Err(NerveError::InvalidVectorField("not a partition into critical simplices and facet pairs".into()))
    }
}

/// Finds a node on a directed cycle, using an explicit stack.
fn find_cycle(succ: &[Vec<usize>]) -> Option<usize> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; succ.len()];
    for root in 0..succ.len() {
        if color[root] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        color[root] = GREY;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&child) = succ[node].get(*next) {
                *next += 1;
                match color[child] {
                    WHITE => {
                        color[child] = GREY;
                        stack.push((child, 0));
                    }
                    GREY => return Some(child),
                    _ => {}
                }
            } else {
                color[node] = BLACK;
                stack.pop();
            }
        }
    }
    None
}

/// Whether the modified Hasse diagram is acyclic.
pub fn is_gradient(k: &SimplicialComplex, v: &DiscreteVectorField) -> Result<bool> {
    require_vector_field(k, v)?;
    let h = HasseDiagram::new(k);
    Ok(find_cycle(&h.modified_successors(v)).is_none())
}

/// Longest V-path `σ = τ_0 → μ_0 ← τ_1 → … ← τ_n` starting at `σ`, measured by `n`.
pub fn v_path_height(k: &SimplicialComplex, v: &DiscreteVectorField, sigma: &Simplex) -> Result<usize> {
    Ok(v_path_heights(k, v)?[sigma])
}

/// V-path heights of every simplex.
pub fn v_path_heights(k: &SimplicialComplex, v: &DiscreteVectorField) -> Result<HashMap<Simplex, usize>> {
    require_vector_field(k, v)?;
    let h = HasseDiagram::new(k);
    // next[i]: simplices reachable from τ_i in one V-path step.
    let next: Vec<Vec<usize>> = (0..h.len())
        .map(|i| match v.up(h.node(i)) {
            Some(mu) => {
                let m = h.index[mu];
                h.facets_of(m).iter().copied().filter(|&f| f != i).collect()
            }
            None => Vec::new(),
        })
        .collect();
    let mut height: Vec<Option<usize>> = vec![None; h.len()];
    let mut on_stack = vec![false; h.len()];
    for root in 0..h.len() {
        if height[root].is_some() {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        on_stack[root] = true;
        while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
            if let Some(&child) = next[node].get(*pos) {
                *pos += 1;
                if on_stack[child] {
                    return Err(NerveError::CycleDetected(h.node(child).clone()));
                }
                if height[child].is_none() {
                    on_stack[child] = true;
                    stack.push((child, 0));
                }
            } else {
                let best = next[node].iter().map(|&c| height[c].expect("child finished") + 1).max();
                height[node] = Some(if v.up(h.node(node)).is_some() { best.unwrap_or(1) } else { 0 });
                on_stack[node] = false;
                stack.pop();
            }
        }
    }
    Ok((0..h.len()).map(|i| (h.node(i).clone(), height[i].expect("all visited"))).collect())
}

/// An element of a vector field: a critical singleton or a pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Element {
    Critical(Simplex),
    Pair(Simplex, Simplex),
}

impl Element {
    /// The smaller simplex of the element.
    pub fn lower(&self) -> &Simplex {
        match self {
            Element::Critical(s) | Element::Pair(s, _) => s,
        }
    }

    /// The larger simplex of the element.
    pub fn upper(&self) -> &Simplex {
        match self {
            Element::Critical(s) | Element::Pair(_, s) => s,
        }
    }
}

/// Heights of all elements under the induced order on the field.
#[derive(Clone, Debug)]
pub struct ElementHeights {
    elements: Vec<Element>,
    heights: Vec<usize>,
    of_simplex: HashMap<Simplex, usize>,
}

impl ElementHeights {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn height(&self, i: usize) -> usize {
        self.heights[i]
    }

    /// Height of the element containing `s`.
    pub fn height_of(&self, s: &Simplex) -> Option<usize> {
        self.of_simplex.get(s).map(|&i| self.heights[i])
    }

    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, usize)> + '_ {
        self.elements.iter().zip(self.heights.iter().copied())
    }
}

/// Computes `ht(A)` for every element: the longest strictly descending chain below `A`.
pub fn element_heights(k: &SimplicialComplex, v: &DiscreteVectorField) -> Result<ElementHeights> {
    require_vector_field(k, v)?;
    let mut elements: Vec<Element> = v.critical().iter().cloned().map(Element::Critical).collect();
    elements.extend(v.pairs().map(|(t, s)| Element::Pair(t.clone(), s.clone())));
    elements.sort();
    let mut of_simplex = HashMap::with_capacity(k.len());
    for (i, e) in elements.iter().enumerate() {
        of_simplex.insert(e.lower().clone(), i);
        of_simplex.insert(e.upper().clone(), i);
    }
    let n = elements.len();
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for s in k.iter() {
        let d = of_simplex[s];
        for f in s.facets() {
            let c = of_simplex[&f];
            if c != d {
                below[d].insert(c);
            }
        }
    }
    let succ: Vec<Vec<usize>> = below.iter().map(|b| b.iter().copied().collect()).collect();
    if let Some(c) = find_cycle(&succ) {
        return Err(NerveError::CycleDetected(elements[c].lower().clone()));
    }
    let mut heights: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        let mut stack = vec![root];
        while let Some(&node) = stack.last() {
            if heights[node].is_some() {
                stack.pop();
                continue;
            }
            let pending: Vec<usize> = succ[node].iter().copied().filter(|&c| heights[c].is_none()).collect();
            if pending.is_empty() {
                heights[node] = Some(succ[node].iter().map(|&c| heights[c].unwrap() + 1).max().unwrap_or(0));
                stack.pop();
            } else {
                stack.extend(pending);
            }
        }
    }
    Ok(ElementHeights { elements, heights: heights.into_iter().map(Option::unwrap).collect(), of_simplex })
}

/// `ht(A)` for the element containing `a`.
pub fn element_height(k: &SimplicialComplex, v: &DiscreteVectorField, a: &Simplex) -> Result<usize> {
    element_heights(k, v)?.height_of(a).ok_or_else(|| NerveError::NotASimplex(a.clone()))
}

/// One elementary collapse: removal of a free facet together with its unique coface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryCollapse {
    pub free_facet: Simplex,
    pub coface: Simplex,
}

/// A validated collapse sequence and the complex it ends in.
#[derive(Clone, Debug)]
pub struct CollapseTrace {
    pub steps: Vec<ElementaryCollapse>,
    pub result: SimplicialComplex,
    /// Number of elementary collapses executed at each height, highest first.
    pub strata: Vec<(usize, usize)>,
}

impl CollapseTrace {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.steps).expect("trace serializes")
    }
}

/// Working copy of a complex that supports elementary collapses with freeness checks.
pub struct CollapsibleComplex {
    hasse: HasseDiagram,
    alive: Vec<bool>,
    coface_count: Vec<usize>,
}

impl CollapsibleComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let hasse = HasseDiagram::new(k);
        let coface_count = (0..hasse.len()).map(|i| hasse.cofaces_of(i).len()).collect();
        let alive = vec![true; hasse.len()];
        CollapsibleComplex { hasse, alive, coface_count }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.hasse.index_of(s).is_some_and(|i| self.alive[i])
    }

    /// Whether `tau` is a facet of `sigma` and `sigma` is its only proper coface.
    pub fn is_free_pair(&self, tau: &Simplex, sigma: &Simplex) -> bool {
        match (self.hasse.index_of(tau), self.hasse.index_of(sigma)) {
            (Some(t), Some(s)) => {
                self.alive[t]
                    && self.alive[s]
                    && sigma.len() == tau.len() + 1
                    && tau.is_face_of(sigma)
                    && self.coface_count[t] == 1
                    && self.coface_count[s] == 0
            }
            _ => false,
        }
    }

    fn remove_index(&mut self, i: usize) {
        debug_assert!(self.alive[i] && self.coface_count[i] == 0);
        self.alive[i] = false;
        for &f in self.hasse.facets_of(i) {
            self.coface_count[f] -= 1;
        }
    }

    /// Performs an elementary collapse, failing if the pair is not free.
    pub fn collapse(&mut self, tau: &Simplex, sigma: &Simplex) -> Result<()> {
        if !self.is_free_pair(tau, sigma) {
            return Err(NerveError::NotFree { free: tau.clone(), coface: sigma.clone() });
        }
        let (t, s) = (self.hasse.index[tau], self.hasse.index[sigma]);
        self.remove_index(s);
        self.remove_index(t);
        Ok(())
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed_unchecked(
            (0..self.hasse.len()).filter(|&i| self.alive[i]).map(|i| self.hasse.node(i).clone()).collect(),
        )
    }
}

/// Collapses `k` onto the critical subcomplex of `v`, executing the pairs of
/// each height together, highest height first, lexicographically by top
/// simplex within a height. Every step is checked for freeness.
pub fn collapse(k: &SimplicialComplex, v: &DiscreteVectorField) -> Result<CollapseTrace> {
    require_vector_field(k, v)?;
    let critical = v.critical_complex()?;
    if !is_gradient(k, v)? {
        return Err(NerveError::InvalidVectorField("field is not a gradient".into()));
    }
    let heights = element_heights(k, v)?;
    let mut by_height: BTreeMap<usize, Vec<(&Simplex, &Simplex)>> = BTreeMap::new();
    for (e, h) in heights.iter() {
        if let Element::Pair(t, s) = e {
            by_height.entry(h).or_default().push((t, s));
        }
    }
    let mut work = CollapsibleComplex::new(k);
    let mut steps = Vec::with_capacity(v.num_pairs());
    let mut strata = Vec::new();
    for (&h, pairs) in by_height.iter_mut().rev() {
        pairs.sort_by(|a, b| a.1.cmp(b.1));
        for &(t, s) in pairs.iter() {
            work.collapse(t, s).map_err(|_| {
                NerveError::Inconsistent(format!("pair ({t}, {s}) of height {h} is not free in its stratum"))
            })?;
            steps.push(ElementaryCollapse { free_facet: t.clone(), coface: s.clone() });
        }
        strata.push((h, pairs.len()));
    }
    let result = work.to_complex();
    if result != critical {
        return Err(NerveError::Inconsistent("collapse did not end at the critical subcomplex".into()));
    }
    Ok(CollapseTrace { steps, result, strata })
}

/// Replays an elementary-collapse sequence on `k`, checking freeness at each step.
pub fn replay_collapses(k: &SimplicialComplex, steps: &[ElementaryCollapse]) -> Result<SimplicialComplex> {
    let mut work = CollapsibleComplex::new(k);
    for st in steps {
        work.collapse(&st.free_facet, &st.coface)?;
    }
    Ok(work.to_complex())
}

/// Outcome of one greedy search run.
#[derive(Clone, Debug)]
pub struct GreedyGradient {
    pub field: DiscreteVectorField,
    pub seed: u64,
}

impl GreedyGradient {
    pub fn num_critical(&self) -> usize {
        self.field.critical().len()
    }

    /// Whether the only critical simplex is a single vertex, certifying collapsibility.
    pub fn is_collapsible_certificate(&self) -> bool {
        self.field.critical().len() == 1 && self.field.critical().iter().all(|s| s.len() == 1)
    }
}

/// Greedy random discrete Morse run: collapse free pairs while possible and,
/// when stuck, declare a top-dimensional simplex critical and remove it.
///
/// Seed 0 processes simplices in lexicographic order; other seeds shuffle it.
pub fn greedy_gradient(k: &SimplicialComplex, seed: u64) -> GreedyGradient {
    let mut work = CollapsibleComplex::new(k);
    let n = work.hasse.len();
    let mut rank: Vec<usize> = (0..n).collect();
    if seed != 0 {
        rank.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut free: BTreeSet<(usize, usize)> =
        (0..n).filter(|&i| work.coface_count[i] == 1).map(|i| (rank[i], i)).collect();
    let mut pairs = Vec::new();
    let mut critical = Vec::new();
    let mut remaining = n;
    let update = |work: &CollapsibleComplex, free: &mut BTreeSet<(usize, usize)>, i: usize| {
        for &f in work.hasse.facets_of(i) {
            if work.alive[f] && work.coface_count[f] == 1 {
                free.insert((rank[f], f));
            } else {
                free.remove(&(rank[f], f));
            }
        }
    };
    while remaining > 0 {
        if let Some((r, t)) = free.pop_first() {
            debug_assert_eq!(r, rank[t]);
            if !work.alive[t] || work.coface_count[t] != 1 {
                continue;
            }
            let s = *work.hasse.cofaces_of(t).iter().find(|&&c| work.alive[c]).expect("one live coface");
            work.remove_index(s);
            update(&work, &mut free, s);
            work.remove_index(t);
            free.remove(&(rank[t], t));
            update(&work, &mut free, t);
            pairs.push((work.hasse.node(t).clone(), work.hasse.node(s).clone()));
            remaining -= 2;
        } else {
            let top = (0..n)
                .filter(|&i| work.alive[i])
                .max_by_key(|&i| (work.hasse.node(i).len(), std::cmp::Reverse(rank[i])))
                .expect("non-empty");
            work.remove_index(top);
            update(&work, &mut free, top);
            critical.push(work.hasse.node(top).clone());
            remaining -= 1;
        }
    }
    GreedyGradient { field: DiscreteVectorField::new(pairs, critical), seed }
}

/// Runs [`greedy_gradient`] for each seed in parallel and keeps the field with
/// fewest critical simplices, ties going to the earliest seed in the list.
pub fn greedy_gradient_search(k: &SimplicialComplex, seeds: &[u64]) -> GreedyGradient {
    let runs: Vec<GreedyGradient> = seeds.par_iter().map(|&s| greedy_gradient(k, s)).collect();
    runs.into_iter()
        .enumerate()
        .min_by_key(|(i, g)| (g.num_critical(), *i))
        .map(|(_, g)| g)
        .unwrap_or_else(|| greedy_gradient(k, 0))
}

/// The standard seed list `0..32`.
pub fn default_seeds() -> Vec<u64> {
    (0..32).collect()
}
