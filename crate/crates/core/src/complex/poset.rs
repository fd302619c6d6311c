use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt::{Debug, Write as _};
use std::hash::Hash;

use fixedbitset::FixedBitSet;

use super::simplex::Simplex;
use super::simplicial::{SimplicialComplex, SimplicialMap};
use crate::error::{NerveError, Result};

/// Default cap on the number of chains enumerated by flag-complex constructions.
pub const DEFAULT_CHAIN_CAP: usize = 10_000_000;

/// A finite poset stored as strict cover edges plus memoized reachability bitsets.
///
/// Elements are indexed in a linear extension of the order: `i < j` whenever
/// element `i` is strictly below element `j`. A chain is therefore the same
/// thing as an increasing list of pairwise comparable indices.
#[derive(Clone, Debug)]
pub struct Poset<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    up: Vec<FixedBitSet>,
    covers: Vec<Vec<usize>>,
}

impl<T: Clone + Ord + Hash + Debug> Poset<T> {
    /// Builds the poset generated by `edges` (each `(a, b)` meaning `a < b`).
    ///
    /// Every cover relation of the intended order must appear among the edges;
    /// additional non-cover edges are allowed.
    pub fn from_generating_relation(
        elements: Vec<T>,
        edges: impl IntoIterator<Item = (T, T)>,
    ) -> Result<Self> {
        let n = elements.len();
        let input_index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if input_index.len() != n {
            return Err(NerveError::NotAPartialOrder("duplicate elements".into()));
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for (a, b) in edges {
            let ia = *input_index
                .get(&a)
                .ok_or_else(|| NerveError::NotAPartialOrder(format!("unknown element {a:?}")))?;
            let ib = *input_index
                .get(&b)
                .ok_or_else(|| NerveError::NotAPartialOrder(format!("unknown element {b:?}")))?;
            if ia == ib {
                return Err(NerveError::NotAPartialOrder(format!("{a:?} < {a:?}")));
            }
            succ[ia].push(ib);
        }
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
            for &b in s.iter() {
                indeg[b] += 1;
            }
        }

        // Kahn's algorithm, smallest element first, for a deterministic linear extension.
        let mut heap: BinaryHeap<Reverse<(&T, usize)>> = BinaryHeap::new();
        for (i, e) in elements.iter().enumerate() {
            if indeg[i] == 0 {
                heap.push(Reverse((e, i)));
            }
        }
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse((_, i))) = heap.pop() {
            order.push(i);
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    heap.push(Reverse((&elements[j], j)));
                }
            }
        }
        if order.len() != n {
            return Err(NerveError::NotAPartialOrder("strict relation has a cycle".into()));
        }
        let mut new_index = vec![0usize; n];
        for (pos, &old) in order.iter().enumerate() {
            new_index[old] = pos;
        }
        let sorted: Vec<T> = order.iter().map(|&i| elements[i].clone()).collect();
        let mut new_succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (old, s) in succ.iter().enumerate() {
            let mut v: Vec<usize> = s.iter().map(|&j| new_index[j]).collect();
            v.sort_unstable();
            new_succ[new_index[old]] = v;
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for x in (0..n).rev() {
            let mut set = FixedBitSet::with_capacity(n);
            for &y in &new_succ[x] {
                set.insert(y);
                set.union_with(&up[y]);
            }
            up[x] = set;
        }
        let covers = (0..n)
            .map(|x| {
                new_succ[x]
                    .iter()
                    .copied()
                    .filter(|&y| !new_succ[x].iter().any(|&z| z != y && up[z].contains(y)))
                    .collect()
            })
            .collect();
        let index = sorted.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Poset { elements: sorted, index, up, covers })
    }

    /// Builds a poset from a full order predicate, verifying the partial-order axioms.
    pub fn from_leq(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let n = elements.len();
        let mut strict = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            if !leq(&elements[i], &elements[i]) {
                return Err(NerveError::NotAPartialOrder(format!("{:?} not reflexive", elements[i])));
            }
            for j in 0..n {
                if i != j && leq(&elements[i], &elements[j]) {
                    if leq(&elements[j], &elements[i]) {
                        return Err(NerveError::NotAPartialOrder(format!(
                            "{:?} and {:?} violate antisymmetry",
                            elements[i], elements[j]
                        )));
                    }
                    strict[i].insert(j);
                }
            }
        }
        for i in 0..n {
            for j in strict[i].ones() {
                if !strict[j].is_subset(&strict[i]) {
                    return Err(NerveError::NotAPartialOrder(format!(
                        "transitivity fails above {:?}",
                        elements[i]
                    )));
                }
            }
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in strict[i].ones() {
                edges.push((elements[i].clone(), elements[j].clone()));
            }
        }
        Self::from_generating_relation(elements, edges)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &T) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Strict up-set of element `i` as a bitset over element indices.
    pub fn strict_up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// Elements covering `i`.
    pub fn covers_of(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&j| (i, j)))
            .collect()
    }

    /// The same elements with the order reversed.
    pub fn opposite(&self) -> Poset<T> {
        let edges = self
            .cover_edges()
            .into_iter()
            .map(|(i, j)| (self.elements[j].clone(), self.elements[i].clone()));
        Self::from_generating_relation(self.elements.clone(), edges).expect("opposite of a poset is a poset")
    }

    /// Whether the given indices form a chain.
    pub fn is_chain(&self, chain: &[usize]) -> bool {
        chain.iter().enumerate().all(|(a, &i)| chain[a + 1..].iter().all(|&j| i != j && self.comparable(i, j)))
    }

    /// Enumerates all non-empty chains whose elements after the bottom one
    /// satisfy `keep(bottom, next)`. Chains are increasing index lists.
    pub fn chains_where(
        &self,
        cap: usize,
        keep: impl Fn(usize, usize) -> bool,
    ) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize)> = Vec::new();
        for bottom in 0..self.len() {
            stack.push((vec![bottom], bottom));
            while let Some((chain, last)) = stack.pop() {
                for next in self.up[last].ones().rev() {
                    if keep(bottom, next) {
                        let mut c = chain.clone();
                        c.push(next);
                        stack.push((c, next));
                    }
                }
                out.push(chain);
                if out.len() > cap {
                    return Err(NerveError::ResourceLimit { what: "flag complex chains", limit: cap });
                }
            }
        }
        Ok(out)
    }

    pub fn chains(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        self.chains_where(cap, |_, _| true)
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self, label: impl Fn(&T) -> String) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(e).replace('"', "\\\""));
        }
        for (i, j) in self.cover_edges() {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Face poset of a complex, ordered by inclusion.
pub fn pos(k: &SimplicialComplex) -> Poset<Simplex> {
    let elements: Vec<Simplex> = k.iter().cloned().collect();
    let edges: Vec<(Simplex, Simplex)> =
        k.iter().flat_map(|s| s.facets().map(move |f| (f, s.clone()))).collect();
    Poset::from_generating_relation(elements, edges).expect("face inclusion is a partial order")
}

/// Flag complex: vertices are poset indices, simplices are non-empty chains.
pub fn flag<T: Clone + Ord + Hash + Debug>(p: &Poset<T>) -> SimplicialComplex {
    flag_capped(p, DEFAULT_CHAIN_CAP).expect("flag complex exceeds the default chain cap")
}

pub fn flag_capped<T: Clone + Ord + Hash + Debug>(p: &Poset<T>, cap: usize) -> Result<SimplicialComplex> {
    let chains = p.chains(cap)?;
    Ok(SimplicialComplex::from_closed_unchecked(chains.into_iter().map(Simplex::from_sorted).collect()))
}

/// An order-preserving map between posets, as a table from source to target indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    map: Vec<usize>,
}

impl PosetMap {
    pub fn new<S, T>(source: &Poset<S>, target: &Poset<T>, map: Vec<usize>) -> Result<Self>
    where
        S: Clone + Ord + Hash + Debug,
        T: Clone + Ord + Hash + Debug,
    {
        if map.len() != source.len() {
            return Err(NerveError::DimensionMismatch { expected: source.len(), found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&m| m >= target.len()) {
            return Err(NerveError::UnknownVertex(bad));
        }
        for (i, c) in source.covers.iter().enumerate() {
            for &j in c {
                if !target.leq(map[i], map[j]) {
                    return Err(NerveError::NotOrderPreserving(i, j));
                }
            }
        }
        Ok(PosetMap { map })
    }

    pub fn from_fn<S, T>(source: &Poset<S>, target: &Poset<T>, f: impl Fn(&S) -> T) -> Result<Self>
    where
        S: Clone + Ord + Hash + Debug,
        T: Clone + Ord + Hash + Debug,
    {
        let mut map = Vec::with_capacity(source.len());
        for e in source.elements() {
            let image = f(e);
            let idx = target
                .index_of(&image)
                .ok_or_else(|| NerveError::Inconsistent(format!("{image:?} is not an element of the target")))?;
            map.push(idx);
        }
        Self::new(source, target, map)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn then(&self, other: &PosetMap) -> PosetMap {
        PosetMap { map: self.map.iter().map(|&i| other.map[i]).collect() }
    }

    /// `self(x) <= other(x)` in the target for every `x`.
    pub fn pointwise_leq<T: Clone + Ord + Hash + Debug>(&self, other: &PosetMap, target: &Poset<T>) -> bool {
        self.map.len() == other.map.len()
            && self.map.iter().zip(&other.map).all(|(&a, &b)| target.leq(a, b))
    }

    /// The induced simplicial map between flag complexes.
    pub fn flag_map(&self, source_flag: &SimplicialComplex, target_flag: &SimplicialComplex) -> Result<SimplicialMap> {
        let vertex_map: BTreeMap<usize, usize> =
            source_flag.vertices().into_iter().map(|v| (v, self.map[v])).collect();
        SimplicialMap::new(source_flag.clone(), target_flag.clone(), vertex_map)
    }
}
