//! Labeled multigraphs with stable edge identities, deletion/contraction,
//! spanning trees, cut-set nondegeneracy, and brute-force canonical forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Hard cap on vertices for the brute-force permutation routines.
pub const PERMUTATION_GUARD: usize = 8;

/// Edge labels are small integers assigned at construction and never
/// renumbered by deletion or contraction, so polynomial variables stay
/// aligned across a graph and its minors. Labels must fit in a `u64` mask.
pub type EdgeLabel = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: EdgeLabel,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// Complete graphs and census enumerations require n >= 3.
    TooFewVertices { n: usize },
    /// Census range guard (3 <= n <= 6).
    RangeGuard { n: usize },
    LabelOutOfRange { label: EdgeLabel },
    DuplicateLabel { label: EdgeLabel },
    InvalidEndpoint { vertex: usize, vertex_count: usize },
    UnknownEdgeLabel { label: EdgeLabel },
    /// Contracting the given set would collapse a cycle (some stage hits a loop).
    LoopContraction,
    /// Subset mask refers to a different ambient edge universe.
    ForeignSubset,
    /// Permutation routines are guarded at 8 vertices.
    SizeGuard { vertices: usize },
    /// Automorphism and canonical-form routines require a simple graph.
    NotSimple,
    Disconnected,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::TooFewVertices { n } => write!(f, "need at least 3 vertices, got {n}"),
            GraphError::RangeGuard { n } => write!(f, "census supports 3 <= n <= 6, got {n}"),
            GraphError::LabelOutOfRange { label } => write!(f, "edge label {label} exceeds 63"),
            GraphError::DuplicateLabel { label } => write!(f, "duplicate edge label {label}"),
            GraphError::InvalidEndpoint { vertex, vertex_count } => {
                write!(f, "endpoint {vertex} out of range for {vertex_count} vertices")
            }
            GraphError::UnknownEdgeLabel { label } => write!(f, "no edge with label {label}"),
            GraphError::LoopContraction => write!(f, "contraction set contains a cycle"),
            GraphError::ForeignSubset => write!(f, "edge subset belongs to a different graph"),
            GraphError::SizeGuard { vertices } => {
                write!(f, "permutation routines are guarded at {PERMUTATION_GUARD} vertices, got {vertices}")
            }
            GraphError::NotSimple => write!(f, "operation requires a simple graph"),
            GraphError::Disconnected => write!(f, "graph is disconnected"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A subset of the edges of a fixed ambient graph, stored as a bitmask over
/// edge labels. `universe` is the label mask of the ambient graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSubset {
    pub mask: u64,
    pub universe: u64,
}

impl EdgeSubset {
    pub fn new(mask: u64, universe: u64) -> Self {
        debug_assert_eq!(mask & !universe, 0, "subset escapes its universe");
        EdgeSubset { mask, universe }
    }

    pub fn empty(universe: u64) -> Self {
        EdgeSubset { mask: 0, universe }
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, label: EdgeLabel) -> bool {
        self.mask >> label & 1 == 1
    }

    pub fn labels(&self) -> impl Iterator<Item = EdgeLabel> + '_ {
        let mut rest = self.mask;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let label = rest.trailing_zeros();
                rest &= rest - 1;
                Some(label)
            }
        })
    }
}

/// A labeled multigraph. Loops (tadpoles) and parallel edges are allowed;
/// vertices are `0..vertex_count` and never dropped by deletion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(EdgeLabel, usize, usize)>) -> Result<Self, GraphError> {
        let mut seen: u64 = 0;
        let mut out = Vec::with_capacity(edges.len());
        for (label, u, v) in edges {
            if label >= 64 {
                return Err(GraphError::LabelOutOfRange { label });
            }
            if seen >> label & 1 == 1 {
                return Err(GraphError::DuplicateLabel { label });
            }
            seen |= 1 << label;
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::InvalidEndpoint { vertex: w, vertex_count });
                }
            }
            out.push(Edge { label, u, v });
        }
        Ok(Graph { vertex_count, edges: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Bitmask of all edge labels present.
    pub fn label_mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, e| m | 1 << e.label)
    }

    pub fn edge_by_label(&self, label: EdgeLabel) -> Option<&Edge> {
        self.edges.iter().find(|e| e.label == label)
    }

    pub fn full_subset(&self) -> EdgeSubset {
        EdgeSubset::new(self.label_mask(), self.label_mask())
    }

    pub fn subset(&self, mask: u64) -> Result<EdgeSubset, GraphError> {
        let universe = self.label_mask();
        if mask & !universe != 0 {
            let label = (mask & !universe).trailing_zeros();
            return Err(GraphError::UnknownEdgeLabel { label });
        }
        Ok(EdgeSubset::new(mask, universe))
    }

    fn check_subset(&self, s: &EdgeSubset) -> Result<(), GraphError> {
        let universe = self.label_mask();
        if s.mask & !universe != 0 {
            let label = (s.mask & !universe).trailing_zeros();
            return Err(GraphError::UnknownEdgeLabel { label });
        }
        Ok(())
    }

    /// Removes the edges in `s`, leaving all vertices in place.
    pub fn delete_edges(&self, s: &EdgeSubset) -> Result<Graph, GraphError> {
        self.check_subset(s)?;
        Ok(Graph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().filter(|e| !s.contains(e.label)).copied().collect(),
        })
    }

    /// Contracts the edges in `s` one at a time. The set must be a forest:
    /// if any stage would contract a loop the whole call fails atomically.
    /// Surviving edges keep their labels; parallel edges and loops may appear.
    pub fn contract_edges(&self, s: &EdgeSubset) -> Result<Graph, GraphError> {
        self.check_subset(s)?;
        // Forest-ness up front: a cycle inside s is exactly the condition
        // under which some contraction order hits a loop.
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            if s.contains(e.label) && !uf.union(e.u, e.v) {
                return Err(GraphError::LoopContraction);
            }
        }
        // Renumber merged classes by their minimum original vertex.
        let mut new_index = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            let r = uf.find(v);
            if new_index[r] == usize::MAX {
                new_index[r] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| !s.contains(e.label))
            .map(|e| Edge { label: e.label, u: new_index[uf.find(e.u)], v: new_index[uf.find(e.v)] })
            .collect();
        Ok(Graph { vertex_count: next, edges })
    }

    /// True iff the graph has a single component counting all vertices, so
    /// an isolated vertex disconnects.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.component_count()
    }

    /// First Betti number |E| - |V| + #components.
    pub fn loop_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    /// All spanning trees as label subsets, ascending by mask. Loops are
    /// never part of a tree; the list is empty iff the graph is disconnected.
    pub fn spanning_trees(&self) -> Vec<EdgeSubset> {
        let universe = self.label_mask();
        if self.vertex_count == 0 {
            return Vec::new();
        }
        let need = self.vertex_count - 1;
        if need > self.edges.len() {
            return Vec::new();
        }
        let mut trees = Vec::new();
        let mut pick = Vec::with_capacity(need);
        self.tree_search(0, need, &mut pick, universe, &mut trees);
        trees.sort_unstable_by_key(|s| s.mask);
        trees
    }

    fn tree_search(
        &self,
        from: usize,
        need: usize,
        pick: &mut Vec<usize>,
        universe: u64,
        out: &mut Vec<EdgeSubset>,
    ) {
        if pick.len() == need {
            let mut uf = UnionFind::new(self.vertex_count);
            let mut mask = 0u64;
            for &i in pick.iter() {
                let e = &self.edges[i];
                if !uf.union(e.u, e.v) {
                    return; // cycle
                }
                mask |= 1 << e.label;
            }
            if uf.component_count() == 1 {
                out.push(EdgeSubset::new(mask, universe));
            }
            return;
        }
        let remaining = need - pick.len();
        let mut i = from;
        while i + remaining <= self.edges.len() {
            if !self.edges[i].is_loop() {
                pick.push(i);
                self.tree_search(i + 1, need, pick, universe, out);
                pick.pop();
            }
            i += 1;
        }
    }

    /// True iff the edges of `s` contain no cycle (loops count as cycles).
    pub fn is_forest_subset(&self, s: &EdgeSubset) -> Result<bool, GraphError> {
        self.check_subset(s)?;
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            if s.contains(e.label) && !uf.union(e.u, e.v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = alloc::collections::BTreeSet::new();
        for e in &self.edges {
            if e.is_loop() {
                return false;
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    fn adjacency_bits(&self) -> u64 {
        let n = self.vertex_count;
        let mut bits = 0u64;
        for e in &self.edges {
            let (a, b) = (e.u.min(e.v), e.u.max(e.v));
            bits |= 1 << pair_index(a, b, n);
        }
        bits
    }

    fn permutation_guard(&self) -> Result<(), GraphError> {
        if self.vertex_count > PERMUTATION_GUARD {
            return Err(GraphError::SizeGuard { vertices: self.vertex_count });
        }
        if !self.is_simple() {
            return Err(GraphError::NotSimple);
        }
        Ok(())
    }

    /// Order of the vertex-permutation group preserving the edge set,
    /// by exhaustive check over all permutations. Simple graphs with at
    /// most 8 vertices only.
    pub fn automorphism_order(&self) -> Result<u64, GraphError> {
        self.permutation_guard()?;
        let bits = self.adjacency_bits();
        let n = self.vertex_count;
        let mut order = 0u64;
        for_each_permutation(n, |perm| {
            if permute_bits(bits, perm, n) == bits {
                order += 1;
            }
        });
        Ok(order)
    }

    /// Canonical isomorphism key: the minimum adjacency encoding over all
    /// vertex permutations. Equal keys iff isomorphic (simple, <= 8 vertices).
    pub fn canonical_key(&self) -> Result<CanonicalKey, GraphError> {
        self.permutation_guard()?;
        let bits = self.adjacency_bits();
        let n = self.vertex_count;
        let mut best = u64::MAX;
        for_each_permutation(n, |perm| {
            let b = permute_bits(bits, perm, n);
            if b < best {
                best = b;
            }
        });
        Ok(CanonicalKey { vertex_count: self.vertex_count as u8, bits: best })
    }
}

/// Upper-triangular pair index for vertices a < b of an n-vertex graph.
fn pair_index(a: usize, b: usize, n: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn permute_bits(bits: u64, perm: &[usize], n: usize) -> u64 {
    let mut out = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            if bits >> pair_index(a, b, n) & 1 == 1 {
                let (pa, pb) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
                out |= 1 << pair_index(pa, pb, n);
            }
        }
    }
    out
}

fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permute(&mut perm, n, &mut f);
}

fn heap_permute<F: FnMut(&[usize])>(perm: &mut Vec<usize>, k: usize, f: &mut F) {
    if k <= 1 {
        f(perm);
        return;
    }
    for i in 0..k {
        heap_permute(perm, k - 1, f);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// Opaque isomorphism key for small simple graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub vertex_count: u8,
    pub bits: u64,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:x}", self.vertex_count, self.bits)
    }
}

/// The complete graph on n >= 3 vertices, edges e_ij (i < j) labeled
/// 0..C(n,2) in lexicographic order.
pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooFewVertices { n });
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    let mut label = 0;
    for i in 0..n {
        for j in i + 1..n {
            edges.push((label, i, j));
            label += 1;
        }
    }
    Graph::new(n, edges)
}

/// All cut subsets S of the complete graph on n vertices (including the
/// empty set) such that deleting S leaves the graph connected on all n
/// vertices. Ascending by mask.
pub fn nondegenerate_cut_subsets(n: usize) -> Result<Vec<EdgeSubset>, GraphError> {
    let g = complete_graph(n)?;
    let universe = g.label_mask();
    let e = g.edge_count();
    let mut out = Vec::new();
    for mask in 0..1u64 << e {
        let s = EdgeSubset::new(mask, universe);
        if g.delete_edges(&s).expect("subset of own universe").is_connected() {
            out.push(s);
        }
    }
    Ok(out)
}

/// True iff `e` is a nondegenerate cut of the complete graph on n vertices,
/// `e` and `f` are disjoint, and the edges of `f` do not support a cycle.
pub fn is_nondegenerate_pair(n: usize, e: &EdgeSubset, f: &EdgeSubset) -> Result<bool, GraphError> {
    let g = complete_graph(n)?;
    g.check_subset(e)?;
    g.check_subset(f)?;
    if e.mask & f.mask != 0 {
        return Ok(false);
    }
    if !g.delete_edges(e)?.is_connected() {
        return Ok(false);
    }
    g.is_forest_subset(f)
}

/// Representatives of all connected simple graphs on `v` labeled vertices,
/// one per isomorphism class, deterministic order. Corpus helper for the
/// identity suites; guarded like the other permutation routines.
pub fn connected_simple_graphs(v: usize) -> Result<Vec<Graph>, GraphError> {
    if v > PERMUTATION_GUARD {
        return Err(GraphError::SizeGuard { vertices: v });
    }
    if v == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect();
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs.len() {
        let edges: Vec<(EdgeLabel, usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(i, &(a, b))| (i as EdgeLabel, a, b))
            .collect();
        let g = Graph::new(v, edges).expect("valid construction");
        if !g.is_connected() {
            continue;
        }
        if seen.insert(g.canonical_key()?) {
            out.push(g);
        }
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), count: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if x and y were already connected.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry)] = rx.min(ry);
        self.count -= 1;
        true
    }

    fn component_count(&self) -> usize {
        self.count
    }
}
