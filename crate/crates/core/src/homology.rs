//! Z/2 simplicial homology, induced maps, commuting squares, connected
//! components and persistence barcodes of inclusion filtrations.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap, VertexId};
use crate::error::{NerveError, Result};

/// Sparse Z/2 column: sorted row indices with coefficient one.
pub type Column = Vec<usize>;

fn add_columns(a: &[usize], b: &[usize]) -> Column {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Order used for the simplex basis in each degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BasisOrder {
    /// Canonical lexicographic order.
    #[default]
    Canonical,
    /// Reverse lexicographic order; gives a second, independent choice of
    /// homology representatives.
    Reversed,
}

/// Chain complex of a simplicial complex over Z/2.
#[derive(Clone, Debug)]
pub struct ChainComplexZ2 {
    bases: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    /// `boundaries[n]` has one column per `n`-simplex, rows indexing `(n-1)`-simplices.
    boundaries: Vec<Vec<Column>>,
}

impl ChainComplexZ2 {
    pub fn new(k: &SimplicialComplex) -> Self {
        Self::with_order(k, BasisOrder::Canonical)
    }

    pub fn with_order(k: &SimplicialComplex, order: BasisOrder) -> Self {
        let top = k.dim().map_or(0, |d| d + 1);
        let mut bases: Vec<Vec<Simplex>> = (0..top).map(|n| k.simplices_of_dim(n).cloned().collect()).collect();
        if order == BasisOrder::Reversed {
            for b in bases.iter_mut() {
                b.reverse();
            }
        }
        let index: Vec<HashMap<Simplex, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let boundaries = (0..top)
            .map(|n| {
                bases[n]
                    .iter()
                    .map(|s| {
                        if n == 0 {
                            return Vec::new();
                        }
                        let mut col: Column = s.facets().map(|f| index[n - 1][&f]).collect();
                        col.sort_unstable();
                        col
                    })
                    .collect()
            })
            .collect();
        ChainComplexZ2 { bases, index, boundaries }
    }

    /// Number of degrees with a non-empty basis.
    pub fn top_degree(&self) -> usize {
        self.bases.len()
    }

    pub fn basis(&self, n: usize) -> &[Simplex] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim()).and_then(|m| m.get(s).copied())
    }

    pub fn boundary(&self, n: usize) -> &[Column] {
        self.boundaries.get(n).map_or(&[], Vec::as_slice)
    }

    /// Checks `∂_{n-1} ∘ ∂_n = 0` in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.top_degree()).all(|n| {
            self.boundaries[n].iter().all(|col| {
                col.iter().fold(Vec::new(), |acc: Column, &r| add_columns(&acc, &self.boundaries[n - 1][r])).is_empty()
            })
        })
    }
}

/// Result of reducing one boundary matrix: reduced columns and the column operations.
struct Reduction {
    reduced: Vec<Column>,
    ops: Vec<Column>,
    low_to_col: HashMap<usize, usize>,
}

fn reduce(columns: &[Column], track_ops: bool) -> Reduction {
    let mut reduced: Vec<Column> = columns.to_vec();
    let mut ops: Vec<Column> = if track_ops { (0..columns.len()).map(|j| vec![j]).collect() } else { Vec::new() };
    let mut low_to_col: HashMap<usize, usize> = HashMap::new();
    for j in 0..reduced.len() {
        while let Some(&low) = reduced[j].last() {
            match low_to_col.get(&low) {
                Some(&k) => {
                    reduced[j] = add_columns(&reduced[j], &reduced[k]);
                    if track_ops {
                        ops[j] = add_columns(&ops[j], &ops[k]);
                    }
                }
                None => {
                    low_to_col.insert(low, j);
                    break;
                }
            }
        }
    }
    Reduction { reduced, ops, low_to_col }
}

/// Ranks of `H_n(K; Z/2)` by degree.
///
/// Equality ignores trailing zeros.
#[derive(Clone, Debug, Serialize)]
pub struct BettiVector(pub Vec<usize>);

impl PartialEq for BettiVector {
    fn eq(&self, other: &BettiVector) -> bool {
        *self == *other.0.as_slice()
    }
}

impl Eq for BettiVector {}

impl BettiVector {
    pub fn get(&self, n: usize) -> usize {
        self.0.get(n).copied().unwrap_or(0)
    }

    /// Reduced Betti numbers (degree zero lowered by one); `None` for the empty complex.
    pub fn reduced(&self) -> Option<Vec<usize>> {
        let b0 = *self.0.first()?;
        let mut out = self.0.clone();
        out[0] = b0 - 1;
        Some(out)
    }

    /// Whether all reduced Betti numbers vanish.
    pub fn is_acyclic(&self) -> bool {
        self.reduced().is_some_and(|r| r.iter().all(|&b| b == 0))
    }

    /// Compares Betti numbers up to the given degree (inclusive), padding with zeros.
    pub fn agrees_up_to(&self, other: &BettiVector, degree: usize) -> bool {
        (0..=degree).all(|n| self.get(n) == other.get(n))
    }
}

impl PartialEq<[usize]> for BettiVector {
    fn eq(&self, other: &[usize]) -> bool {
        let n = self.0.len().max(other.len());
        (0..n).all(|i| self.get(i) == other.get(i).copied().unwrap_or(0))
    }
}

pub fn betti_z2(k: &SimplicialComplex) -> BettiVector {
    let cc = ChainComplexZ2::new(k);
    let top = cc.top_degree();
    let ranks: Vec<usize> = (0..top)
        .map(|n| reduce(cc.boundary(n), false).reduced.iter().filter(|c| !c.is_empty()).count())
        .collect();
    BettiVector(
        (0..top)
            .map(|n| cc.basis(n).len() - ranks[n] - ranks.get(n + 1).copied().unwrap_or(0))
            .collect(),
    )
}

/// Reduced Betti numbers; the empty complex reports `None`.
pub fn reduced_betti_z2(k: &SimplicialComplex) -> Option<Vec<usize>> {
    betti_z2(k).reduced()
}

/// Homology of one degree with chosen cycle representatives and a lookup
/// table for expressing any cycle in that basis.
#[derive(Clone, Debug)]
struct DegreeHomology {
    representatives: Vec<Column>,
    /// low row -> (column, Some(representative) or None for a boundary)
    lookup: HashMap<usize, (Column, Option<usize>)>,
}

/// Homology of a complex with fixed representatives in degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct Homology {
    chains: ChainComplexZ2,
    degrees: Vec<DegreeHomology>,
}

impl Homology {
    pub fn new(k: &SimplicialComplex, max_degree: usize) -> Self {
        Self::with_order(k, max_degree, BasisOrder::Canonical)
    }

    pub fn with_order(k: &SimplicialComplex, max_degree: usize, order: BasisOrder) -> Self {
        let chains = ChainComplexZ2::with_order(k, order);
        let degrees = (0..=max_degree)
            .map(|n| {
                let cols = chains.boundary(n);
                let red = reduce(cols, true);
                let positive: Vec<usize> = (0..cols.len()).filter(|&j| red.reduced[j].is_empty()).collect();
                let higher = reduce(chains.boundary(n + 1), false);
                let mut lookup = HashMap::new();
                for col in higher.reduced.into_iter().filter(|c| !c.is_empty()) {
                    lookup.insert(*col.last().expect("non-empty"), (col, None));
                }
                let mut representatives = Vec::new();
                for j in positive {
                    if lookup.contains_key(&j) {
                        continue;
                    }
                    let rep = red.ops[j].clone();
                    debug_assert_eq!(rep.last(), Some(&j));
                    lookup.insert(j, (rep.clone(), Some(representatives.len())));
                    representatives.push(rep);
                }
                let _ = red.low_to_col;
                DegreeHomology { representatives, lookup }
            })
            .collect();
        Homology { chains, degrees }
    }

    pub fn chains(&self) -> &ChainComplexZ2 {
        &self.chains
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.representatives.len())
    }

    pub fn betti(&self) -> BettiVector {
        BettiVector((0..self.degrees.len()).map(|n| self.rank(n)).collect())
    }

    /// Representative cycles in degree `n`, as simplices.
    pub fn representatives(&self, n: usize) -> Vec<Vec<Simplex>> {
        self.degrees[n]
            .representatives
            .iter()
            .map(|c| c.iter().map(|&i| self.chains.basis(n)[i].clone()).collect())
            .collect()
    }

    /// Coordinates of a degree-`n` cycle in the homology basis.
    ///
    /// Errors if the chain is not a cycle.
    pub fn coordinates(&self, n: usize, chain: &[usize]) -> Result<Vec<bool>> {
        let deg = &self.degrees[n];
        let mut z: Column = chain.to_vec();
        z.sort_unstable();
        let mut coeffs = vec![false; deg.representatives.len()];
        while let Some(&low) = z.last() {
            let (col, rep) = deg
                .lookup
                .get(&low)
                .ok_or_else(|| NerveError::Inconsistent(format!("chain in degree {n} is not a cycle")))?;
            if let Some(r) = rep {
                coeffs[*r] ^= true;
            }
            z = add_columns(&z, col);
        }
        Ok(coeffs)
    }

    /// Coordinates of a cycle given as a list of simplices (repeated simplices cancel).
    pub fn coordinates_of_simplices(&self, n: usize, chain: &[Simplex]) -> Result<Vec<bool>> {
        let mut col: Column = Vec::new();
        for s in chain {
            let i = self.chains.index_of(s).ok_or_else(|| NerveError::NotASimplex(s.clone()))?;
            col = add_columns(&col, &[i]);
        }
        self.coordinates(n, &col)
    }
}

/// Dense Z/2 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2Matrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Vec<bool>>,
}

impl Z2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Z2Matrix { rows, cols, entries: vec![vec![false; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = true;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.entries[r][c] = v;
    }

    pub fn mul(&self, other: &Z2Matrix) -> Result<Z2Matrix> {
        if self.cols != other.rows {
            return Err(NerveError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Z2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k] {
                    for j in 0..other.cols {
                        out.entries[i][j] ^= other.entries[k][j];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.entries.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if let Some(p) = (rank..self.rows).find(|&r| rows[r][c]) {
                rows.swap(rank, p);
                for r in 0..self.rows {
                    if r != rank && rows[r][c] {
                        let pivot = rows[rank].clone();
                        for (x, y) in rows[r].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Nonzero entries as `(row, col, 1)` triplets.
    pub fn triplets(&self) -> Vec<(usize, usize, u8)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.entries[r][c] {
                    out.push((r, c, 1));
                }
            }
        }
        out
    }
}

/// Matrices of the map induced on homology, one per degree, in the chosen bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub matrices: Vec<Z2Matrix>,
}

impl InducedMap {
    pub fn degree(&self, n: usize) -> &Z2Matrix {
        &self.matrices[n]
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.matrices.iter().map(Z2Matrix::rank).collect()
    }

    pub fn is_isomorphism_in(&self, n: usize) -> bool {
        self.matrices[n].is_invertible()
    }

    pub fn then(&self, other: &InducedMap) -> Result<InducedMap> {
        let matrices =
            self.matrices.iter().zip(&other.matrices).map(|(a, b)| b.mul(a)).collect::<Result<Vec<_>>>()?;
        Ok(InducedMap { matrices })
    }
}

/// Induced map on homology with the given precomputed homologies of source and target.
pub fn induced_homology_map_with(f: &SimplicialMap, src: &Homology, tgt: &Homology) -> Result<InducedMap> {
    let top = src.max_degree().min(tgt.max_degree());
    let mut matrices = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut m = Z2Matrix::zeros(tgt.rank(n), src.rank(n));
        for (c, rep) in src.degrees[n].representatives.iter().enumerate() {
            let mut image: Column = Vec::new();
            for &i in rep {
                let s = &src.chains.basis(n)[i];
                let fs = f.image(s);
                if fs.len() == s.len() {
                    let j = tgt.chains.index_of(&fs).ok_or_else(|| NerveError::NotASimplex(fs.clone()))?;
                    image = add_columns(&image, &[j]);
                }
            }
            for (r, bit) in tgt.coordinates(n, &image)?.into_iter().enumerate() {
                m.set(r, c, bit);
            }
        }
        matrices.push(m);
    }
    Ok(InducedMap { matrices })
}

/// Induced map on Z/2 homology in degrees `0..=max_degree`.
pub fn induced_homology_map(f: &SimplicialMap, max_degree: usize) -> Result<InducedMap> {
    let src = Homology::new(f.source(), max_degree);
    let tgt = Homology::new(f.target(), max_degree);
    induced_homology_map_with(f, &src, &tgt)
}

/// Checks per degree whether the square
///
/// ```text
///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C -bottom-> D
/// ```
///
/// commutes on homology: `H(right)·H(top) = H(bottom)·H(left)`.
///
/// The answer is recomputed with a second basis choice and an error is
/// returned if the two disagree.
pub fn check_square(
    top: &SimplicialMap,
    bottom: &SimplicialMap,
    left: &SimplicialMap,
    right: &SimplicialMap,
    max_degree: usize,
) -> Result<Vec<bool>> {
    let first = check_square_with_order(top, bottom, left, right, max_degree, BasisOrder::Canonical)?;
    let second = check_square_with_order(top, bottom, left, right, max_degree, BasisOrder::Reversed)?;
    if first != second {
        return Err(NerveError::Inconsistent("square commutativity depends on the homology basis".into()));
    }
    Ok(first)
}

pub fn check_square_with_order(
    top: &SimplicialMap,
    bottom: &SimplicialMap,
    left: &SimplicialMap,
    right: &SimplicialMap,
    max_degree: usize,
    order: BasisOrder,
) -> Result<Vec<bool>> {
    let same = |a: &SimplicialComplex, b: &SimplicialComplex, what: &str| {
        if a == b {
            Ok(())
        } else {
            Err(NerveError::Inconsistent(format!("square corners do not match at {what}")))
        }
    };
    same(top.source(), left.source(), "A")?;
    same(top.target(), right.source(), "B")?;
    same(left.target(), bottom.source(), "C")?;
    same(bottom.target(), right.target(), "D")?;
    let a = Homology::with_order(top.source(), max_degree, order);
    let b = Homology::with_order(top.target(), max_degree, order);
    let c = Homology::with_order(left.target(), max_degree, order);
    let d = Homology::with_order(right.target(), max_degree, order);
    let upper = induced_homology_map_with(top, &a, &b)?.then(&induced_homology_map_with(right, &b, &d)?)?;
    let lower = induced_homology_map_with(left, &a, &c)?.then(&induced_homology_map_with(bottom, &c, &d)?)?;
    Ok(upper.matrices.iter().zip(&lower.matrices).map(|(x, y)| x == y).collect())
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Connected components as sorted vertex classes, ordered by smallest vertex.
pub fn components(k: &SimplicialComplex) -> Vec<Vec<VertexId>> {
    let vertices = k.vertices();
    let pos: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(vertices.len());
    for e in k.simplices_of_dim(1) {
        uf.union(pos[&e.vertices()[0]], pos[&e.vertices()[1]]);
    }
    let mut classes: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        let root = uf.find(i);
        classes.entry(root).or_default().push(v);
    }
    let mut out: Vec<Vec<VertexId>> = classes.into_values().collect();
    out.sort();
    out
}

/// A nested sequence of complexes indexed by increasing parameter values.
#[derive(Clone, Debug)]
pub struct InclusionFiltration {
    values: Vec<f64>,
    steps: Vec<SimplicialComplex>,
}

impl InclusionFiltration {
    pub fn new(values: Vec<f64>, steps: Vec<SimplicialComplex>) -> Result<Self> {
        if values.len() != steps.len() {
            return Err(NerveError::DimensionMismatch { expected: values.len(), found: steps.len() });
        }
        if values.windows(2).any(|w| w[0] >= w[1] || w[0].is_nan()) {
            return Err(NerveError::Inconsistent("filtration values must increase strictly".into()));
        }
        for (i, w) in steps.windows(2).enumerate() {
            if !w[0].is_subcomplex_of(&w[1]) {
                return Err(NerveError::Inconsistent(format!("filtration step {i} is not included in step {}", i + 1)));
            }
        }
        Ok(InclusionFiltration { values, steps })
    }

    /// Builds the filtration whose step at `t` holds every simplex with value at most `t`.
    ///
    /// Values must be monotone along faces.
    pub fn from_values(entries: &[(Simplex, f64)]) -> Result<Self> {
        let lookup: HashMap<&Simplex, f64> = entries.iter().map(|(s, v)| (s, *v)).collect();
        for (s, v) in entries {
            for f in s.facets() {
                match lookup.get(&f) {
                    Some(fv) if fv <= v => {}
                    _ => return Err(NerveError::Inconsistent(format!("facet {f} of {s} enters later or is missing"))),
                }
            }
        }
        let mut values: Vec<f64> = entries.iter().map(|(_, v)| *v).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        let mut sorted: Vec<&(Simplex, f64)> = entries.iter().collect();
        sorted.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let mut steps = Vec::with_capacity(values.len());
        let mut current = SimplicialComplex::empty();
        let mut it = sorted.into_iter().peekable();
        for &t in &values {
            while let Some((s, _)) = it.next_if(|(_, v)| *v <= t) {
                current.insert_closed(s.clone());
            }
            steps.push(current.clone());
        }
        Self::new(values, steps)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn steps(&self) -> &[SimplicialComplex] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The complex present at parameter `t` (empty before the first step).
    pub fn at(&self, t: f64) -> SimplicialComplex {
        match self.values.iter().rposition(|&v| v <= t) {
            Some(i) => self.steps[i].clone(),
            None => SimplicialComplex::empty(),
        }
    }

    /// Each simplex with its birth value, ordered by (birth, dimension, lexicographic).
    pub fn entries(&self) -> Vec<(Simplex, f64)> {
        let mut out = Vec::new();
        let mut prev = SimplicialComplex::empty();
        for (t, k) in self.values.iter().zip(&self.steps) {
            for s in k.iter() {
                if !prev.contains(s) {
                    out.push((s.clone(), *t));
                }
            }
            prev = k.clone();
        }
        out.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }
}

/// Persistence intervals `[birth, death)` per degree; `None` death means infinite.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Barcode {
    bars: BTreeMap<usize, Vec<(f64, Option<f64>)>>,
}

#[derive(Serialize)]
struct BarcodeDegreeJson<'a> {
    degree: usize,
    bars: &'a [(f64, Option<f64>)],
}

impl Barcode {
    pub fn degree(&self, n: usize) -> &[(f64, Option<f64>)] {
        self.bars.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.bars.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.values().all(Vec::is_empty)
    }

    /// Number of bars of degree `n` alive at `t`.
    pub fn betti_at(&self, n: usize, t: f64) -> usize {
        self.degree(n).iter().filter(|(b, d)| *b <= t && d.is_none_or(|d| t < d)).count()
    }

    /// Drops bars no longer than `tol`.
    pub fn without_short_bars(&self, tol: f64) -> Barcode {
        let bars = self
            .bars
            .iter()
            .map(|(&n, v)| (n, v.iter().copied().filter(|(b, d)| d.is_none_or(|d| d - b > tol)).collect()))
            .collect();
        Barcode { bars }
    }

    /// Bar-by-bar comparison of degree `n` after sorting, with endpoint tolerance.
    pub fn degree_matches(&self, other: &Barcode, n: usize, tol: f64) -> bool {
        let sorted = |bars: &[(f64, Option<f64>)]| {
            let mut v = bars.to_vec();
            v.sort_by(|a, b| {
                a.0.total_cmp(&b.0).then_with(|| a.1.unwrap_or(f64::INFINITY).total_cmp(&b.1.unwrap_or(f64::INFINITY)))
            });
            v
        };
        let (a, b) = (sorted(self.degree(n)), sorted(other.degree(n)));
        a.len() == b.len()
            && a.iter().zip(&b).all(|(x, y)| {
                (x.0 - y.0).abs() <= tol
                    && match (x.1, y.1) {
                        (None, None) => true,
                        (Some(p), Some(q)) => (p - q).abs() <= tol,
                        _ => false,
                    }
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<BarcodeDegreeJson> =
            self.bars.iter().map(|(&degree, bars)| BarcodeDegreeJson { degree, bars }).collect();
        serde_json::to_value(v).expect("barcode serializes")
    }
}

/// Standard Z/2 persistence reduction with simplices ordered by (birth, dimension, lexicographic).
pub fn barcode(f: &InclusionFiltration) -> Barcode {
    barcode_from_entries(&f.entries())
}

/// Barcode of a filtration given directly as sorted `(simplex, birth)` entries.
pub fn barcode_from_entries(entries: &[(Simplex, f64)]) -> Barcode {
    let mut order: Vec<&(Simplex, f64)> = entries.iter().collect();
    order.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let index: HashMap<&Simplex, usize> = order.iter().enumerate().map(|(i, (s, _))| (s, i)).collect();
    let columns: Vec<Column> = order
        .iter()
        .map(|(s, _)| {
            let mut c: Column = s.facets().map(|f| index[&f]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let red = reduce(&columns, false);
    let mut bars: BTreeMap<usize, Vec<(f64, Option<f64>)>> = BTreeMap::new();
    let mut paired = vec![false; order.len()];
    for (&low, &j) in &red.low_to_col {
        paired[low] = true;
        paired[j] = true;
        let (birth, death) = (order[low].1, order[j].1);
        if death > birth {
            bars.entry(order[low].0.dim()).or_default().push((birth, Some(death)));
        }
    }
    for (i, (s, v)) in order.iter().enumerate() {
        if !paired[i] {
            bars.entry(s.dim()).or_default().push((*v, None));
        }
    }
    for v in bars.values_mut() {
        v.sort_by(|a, b| {
            a.0.total_cmp(&b.0).then_with(|| a.1.unwrap_or(f64::INFINITY).total_cmp(&b.1.unwrap_or(f64::INFINITY)))
        });
    }
    Barcode { bars }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::closure;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn hollow_triangle() -> SimplicialComplex {
        closure([s(&[0, 1]), s(&[1, 2]), s(&[0, 2])])
    }

    fn octahedron() -> SimplicialComplex {
        let mut tris = Vec::new();
        for &a in &[0, 1] {
            for &b in &[2, 3] {
                for &c in &[4, 5] {
                    tris.push(s(&[a, b, c]));
                }
            }
        }
        closure(tris)
    }

    #[test]
    fn betti_of_basic_complexes() {
        assert_eq!(betti_z2(&hollow_triangle()), *[1usize, 1].as_slice());
        assert_eq!(betti_z2(&octahedron()), *[1usize, 0, 1].as_slice());
        assert_eq!(betti_z2(&closure([s(&[0, 1, 2, 3])])), *[1usize].as_slice());
        assert!(betti_z2(&SimplicialComplex::empty()).0.is_empty());
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        assert!(ChainComplexZ2::new(&octahedron()).boundary_squares_to_zero());
        assert!(ChainComplexZ2::new(&closure([s(&[0, 1, 2, 3, 4])])).boundary_squares_to_zero());
    }

    #[test]
    fn identity_induces_identity() {
        let k = octahedron();
        let m = induced_homology_map(&SimplicialMap::identity(&k), 2).unwrap();
        assert_eq!(m.matrices[0], Z2Matrix::identity(1));
        assert_eq!(m.matrices[1], Z2Matrix::identity(0));
        assert_eq!(m.matrices[2], Z2Matrix::identity(1));
    }

    #[test]
    fn hollow_into_full_kills_the_loop() {
        let inc = SimplicialMap::inclusion(&hollow_triangle(), &closure([s(&[0, 1, 2])])).unwrap();
        let m = induced_homology_map(&inc, 1).unwrap();
        assert_eq!((m.matrices[1].rows, m.matrices[1].cols), (0, 1));
        assert_eq!(m.matrices[1].rank(), 0);
    }

    #[test]
    fn hexagon_into_partially_filled_hexagon_keeps_the_loop() {
        let hex: Vec<Simplex> = (0..6).map(|i| s(&[i, (i + 1) % 6])).collect();
        let hexagon = closure(hex.clone());
        let mut filled_gens = hex;
        filled_gens.push(s(&[0, 1, 2]));
        let filled = closure(filled_gens);
        let m = induced_homology_map(&SimplicialMap::inclusion(&hexagon, &filled).unwrap(), 1).unwrap();
        assert_eq!(m.matrices[1], Z2Matrix::identity(1));
        // the explicit loop 0-1-2-3-4-5 maps to a nonzero class, and so does 0-2-3-4-5
        let h = Homology::new(&filled, 1);
        let short = [s(&[0, 2]), s(&[2, 3]), s(&[3, 4]), s(&[4, 5]), s(&[0, 5])];
        assert_eq!(h.coordinates_of_simplices(1, &short).unwrap(), vec![true]);
        // the triangle boundary is null-homologous
        let tri = [s(&[0, 1]), s(&[1, 2]), s(&[0, 2])];
        assert_eq!(h.coordinates_of_simplices(1, &tri).unwrap(), vec![false]);
    }

    #[test]
    fn non_cycles_are_rejected() {
        let h = Homology::new(&hollow_triangle(), 1);
        assert!(h.coordinates_of_simplices(1, &[s(&[0, 1])]).is_err());
    }

    #[test]
    fn squares_of_identities_commute() {
        let k = hollow_triangle();
        let id = SimplicialMap::identity(&k);
        assert_eq!(check_square(&id, &id, &id, &id, 1).unwrap(), vec![true, true]);
    }

    #[test]
    fn a_wrong_square_is_detected() {
        // circle -> circle by identity vs. by a map collapsing one edge: H_1 differs.
        let k = hollow_triangle();
        let id = SimplicialMap::identity(&k);
        let fold = SimplicialMap::new(k.clone(), k.clone(), [(0, 0), (1, 0), (2, 2)].into_iter().collect()).unwrap();
        assert_eq!(check_square(&id, &fold, &id, &id, 1).unwrap(), vec![true, false]);
    }

    #[test]
    fn components_count() {
        let three = closure([s(&[0]), s(&[1]), s(&[2])]);
        assert_eq!(components(&three).len(), 3);
        let hex = closure((0..6).map(|i| s(&[i, (i + 1) % 6])));
        assert_eq!(components(&hex), vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn single_step_barcode_matches_betti() {
        let f = InclusionFiltration::new(vec![0.0], vec![hollow_triangle()]).unwrap();
        let b = barcode(&f);
        assert_eq!(b.degree(0), &[(0.0, None)]);
        assert_eq!(b.degree(1), &[(0.0, None)]);
    }

    #[test]
    fn empty_filtration_has_empty_barcode() {
        let f = InclusionFiltration::new(vec![], vec![]).unwrap();
        assert!(barcode(&f).is_empty());
    }

    #[test]
    fn non_inclusions_are_rejected() {
        let a = closure([s(&[0, 1])]);
        let b = closure([s(&[2])]);
        assert!(InclusionFiltration::new(vec![0.0, 1.0], vec![a, b]).is_err());
    }

    #[test]
    fn induced_maps_compose() {
        let hex = closure((0..6).map(|i| s(&[i, (i + 1) % 6])));
        let tri = hollow_triangle();
        // wrap the hexagon once around the triangle, then fold the triangle onto an edge
        let f = SimplicialMap::new(hex.clone(), tri.clone(), (0..6).map(|v| (v, v / 2)).collect()).unwrap();
        let g = SimplicialMap::new(tri.clone(), tri.clone(), [(0, 0), (1, 1), (2, 1)].into_iter().collect()).unwrap();
        let gf = f.then(&g).unwrap();
        let composite = induced_homology_map(&gf, 1).unwrap();
        let separate = induced_homology_map(&f, 1).unwrap().then(&induced_homology_map(&g, 1).unwrap()).unwrap();
        assert_eq!(composite, separate);
        assert_eq!(induced_homology_map(&f, 1).unwrap().matrices[1].rank(), 1);
        assert_eq!(composite.matrices[1].rank(), 0);
    }

    #[test]
    fn barcode_counts_match_betti_at_every_step() {
        let entries: Vec<(Simplex, f64)> = vec![
            (s(&[0]), 0.0),
            (s(&[1]), 0.0),
            (s(&[2]), 0.0),
            (s(&[3]), 0.5),
            (s(&[0, 1]), 1.0),
            (s(&[1, 2]), 1.0),
            (s(&[0, 2]), 1.5),
            (s(&[2, 3]), 2.0),
            (s(&[0, 1, 2]), 3.0),
        ];
        let f = InclusionFiltration::from_values(&entries).unwrap();
        let b = barcode(&f);
        for (t, k) in f.values().iter().zip(f.steps()) {
            let betti = betti_z2(k);
            for n in 0..3 {
                assert_eq!(b.betti_at(n, *t), betti.get(n), "degree {n} at {t}");
            }
        }
        assert_eq!(b.degree(1), &[(1.5, Some(3.0))]);
    }

    #[test]
    fn components_match_dfs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let edges: Vec<Simplex> =
                (0..8).map(|_| s(&[rng.gen_range(0..12), rng.gen_range(0..12)])).collect();
            let k = closure(edges.into_iter().chain((0..12).map(Simplex::vertex)));
            let mut seen = BTreeMap::new();
            let mut count = 0;
            for v in k.vertices() {
                if seen.contains_key(&v) {
                    continue;
                }
                let mut stack = vec![v];
                seen.insert(v, count);
                while let Some(x) = stack.pop() {
                    for e in k.simplices_of_dim(1).filter(|e| e.contains(x)) {
                        for &y in e.vertices() {
                            if let std::collections::btree_map::Entry::Vacant(slot) = seen.entry(y) {
                                slot.insert(count);
                                stack.push(y);
                            }
                        }
                    }
                }
                count += 1;
            }
            let comps = components(&k);
            assert_eq!(comps.len(), count);
            for c in comps {
                assert!(c.iter().all(|v| seen[v] == seen[&c[0]]));
            }
        }
    }

    #[test]
    fn second_basis_choice_gives_same_ranks() {
        let k = octahedron();
        let h1 = Homology::with_order(&k, 2, BasisOrder::Canonical);
        let h2 = Homology::with_order(&k, 2, BasisOrder::Reversed);
        assert_eq!(h1.betti(), h2.betti());
    }
}
