//! Symmetric matrix pencils attached to a graph: the cycle-space side built
//! from fundamental cycles of a spanning tree, the vertex side from the
//! reduced incidence decomposition, and exact symbolic determinants.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeLabel, EdgeSubset, Graph, GraphError};
use crate::poly::EdgePoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PencilSide {
    /// Quadratic forms restricted to the cycle space; dimension = loop number.
    Cycle,
    /// Quadratic forms on the vertex space modulo the ground vertex;
    /// dimension = vertex count - 1.
    Vertex,
}

/// Where the pencil's basis came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilBasis {
    SpanningTree(EdgeSubset),
    GroundVertex(usize),
}

/// One integer symmetric matrix per edge, all of the same dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    dim: usize,
    side: PencilSide,
    basis: PencilBasis,
    /// (label, row-major dim*dim entries), ascending by label.
    matrices: Vec<(EdgeLabel, Vec<i64>)>,
}

impl Pencil {
    pub fn new(dim: usize, side: PencilSide, basis: PencilBasis, matrices: Vec<(EdgeLabel, Vec<i64>)>) -> Self {
        for (_, m) in &matrices {
            assert_eq!(m.len(), dim * dim);
            for i in 0..dim {
                for j in 0..dim {
                    assert_eq!(m[i * dim + j], m[j * dim + i], "pencil matrices must be symmetric");
                }
            }
        }
        Pencil { dim, side, basis, matrices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> PencilSide {
        self.side
    }

    pub fn basis(&self) -> &PencilBasis {
        &self.basis
    }

    pub fn matrices(&self) -> &[(EdgeLabel, Vec<i64>)] {
        &self.matrices
    }

    pub fn matrix(&self, label: EdgeLabel) -> Option<&[i64]> {
        self.matrices.iter().find(|(l, _)| *l == label).map(|(_, m)| m.as_slice())
    }

    pub fn label_mask(&self) -> u64 {
        self.matrices.iter().fold(0, |acc, (l, _)| acc | 1 << l)
    }

    /// Exact integer rank of the span of the matrices inside the space of
    /// symmetric dim x dim matrices.
    pub fn span_rank(&self) -> usize {
        let d = self.dim;
        let cols = d * (d + 1) / 2;
        let mut rows: Vec<Vec<i128>> = self
            .matrices
            .iter()
            .map(|(_, m)| {
                let mut r = Vec::with_capacity(cols);
                for i in 0..d {
                    for j in i..d {
                        r.push(m[i * d + j] as i128);
                    }
                }
                r
            })
            .collect();
        integer_rank(&mut rows)
    }
}

/// Fraction-free row elimination rank over the integers.
fn integer_rank(rows: &mut [Vec<i128>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                let g = gcd(a, b);
                let (fa, fb) = (b / g, a / g);
                for k in c..cols {
                    rows[r][k] = rows[r][k] * fb - rows[rank][k] * fa;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Pencil of the cycle side: a basis of fundamental cycles of the greedy
/// lowest-label spanning tree; each edge's matrix is the outer product of
/// its row in the cycle matrix.
pub fn cycle_pencil(g: &Graph) -> Result<Pencil, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.vertex_count();
    // Greedy lowest-label spanning tree.
    let mut order: Vec<usize> = (0..g.edges().len()).collect();
    order.sort_unstable_by_key(|&i| g.edges()[i].label);
    let mut parent_uf: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut tree_mask = 0u64;
    let mut tree_edges: Vec<usize> = Vec::new();
    let mut cobasis: Vec<usize> = Vec::new();
    for i in order {
        let e = &g.edges()[i];
        let (ru, rv) = (find(&mut parent_uf, e.u), find(&mut parent_uf, e.v));
        if ru != rv {
            parent_uf[ru.max(rv)] = ru.min(rv);
            tree_mask |= 1 << e.label;
            tree_edges.push(i);
        } else {
            cobasis.push(i);
        }
    }
    cobasis.sort_unstable_by_key(|&i| g.edges()[i].label);

    // Tree adjacency for path walks; orientation is u -> v as stored.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, edge idx)
    for &i in &tree_edges {
        let e = &g.edges()[i];
        adj[e.u].push((e.v, i));
        adj[e.v].push((e.u, i));
    }
    let m = g.loop_number();
    debug_assert_eq!(m, cobasis.len());

    // Cycle vectors: one row per basis cycle, one signed entry per edge.
    let mut cycle_rows: Vec<BTreeMap<usize, i64>> = Vec::with_capacity(m);
    for &i in &cobasis {
        let e = &g.edges()[i];
        let mut row = BTreeMap::new();
        row.insert(i, 1i64);
        if !e.is_loop() {
            // tree path from e.v back to e.u closes the cycle
            let path = tree_path(g, &adj, n, e.v, e.u);
            for (edge_idx, forward) in path {
                let sign = if forward { 1 } else { -1 };
                *row.entry(edge_idx).or_insert(0) += sign;
            }
        }
        cycle_rows.push(row);
    }

    let matrices = g
        .edges()
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            let col: Vec<i64> = cycle_rows.iter().map(|r| r.get(&idx).copied().unwrap_or(0)).collect();
            let mut mat = vec![0i64; m * m];
            for a in 0..m {
                for b in 0..m {
                    mat[a * m + b] = col[a] * col[b];
                }
            }
            (e.label, mat)
        })
        .collect();
    Ok(Pencil::new(
        m,
        PencilSide::Cycle,
        PencilBasis::SpanningTree(EdgeSubset::new(tree_mask, g.label_mask())),
        matrices,
    ))
}

/// Walks the unique tree path from `from` to `to`, reporting each edge index
/// and whether it was traversed in its stored orientation.
fn tree_path(g: &Graph, adj: &[Vec<(usize, usize)>], n: usize, from: usize, to: usize) -> Vec<(usize, bool)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n]; // (parent vertex, edge idx)
    let mut stack = vec![from];
    let mut seen = vec![false; n];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if v == to {
            break;
        }
        for &(w, ei) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, ei));
                stack.push(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let (p, ei) = prev[v].expect("tree is connected");
        // edge traversed p -> v; forward iff its stored orientation is (p, v)
        path.push((ei, g.edges()[ei].u == p));
        v = p;
    }
    path.reverse();
    path
}

/// Pencil of the vertex side with the given ground vertex: basis is the
/// remaining vertices in increasing order; each edge contributes the outer
/// product of its reduced incidence vector. Tadpoles give the zero matrix.
pub fn vertex_pencil(g: &Graph, ground: usize) -> Result<Pencil, GraphError> {
    if ground >= g.vertex_count() {
        return Err(GraphError::InvalidEndpoint { vertex: ground, vertex_count: g.vertex_count() });
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.vertex_count();
    let m = n - 1;
    let coord = |v: usize| -> Option<usize> {
        use core::cmp::Ordering::*;
        match v.cmp(&ground) {
            Less => Some(v),
            Equal => None,
            Greater => Some(v - 1),
        }
    };
    let matrices = g
        .edges()
        .iter()
        .map(|e| {
            let mut d = vec![0i64; m];
            if !e.is_loop() {
                if let Some(i) = coord(e.u) {
                    d[i] += 1;
                }
                if let Some(j) = coord(e.v) {
                    d[j] -= 1;
                }
            }
            let mut mat = vec![0i64; m * m];
            for a in 0..m {
                for b in 0..m {
                    mat[a * m + b] = d[a] * d[b];
                }
            }
            (e.label, mat)
        })
        .collect();
    Ok(Pencil::new(m, PencilSide::Vertex, PencilBasis::GroundVertex(ground), matrices))
}

/// Exact symbolic determinant of sum(A_e * M_e), expanded into an edge
/// polynomial. Cofactor expansion along rows, memoized on column subsets.
///
/// Intermediate cofactors may transiently carry squared variables; they are
/// tracked with full exponents and must cancel in the final determinant,
/// which the rank-one structure of both pencil sides guarantees.
pub fn pencil_det(p: &Pencil) -> EdgePoly {
    let m = p.dim;
    let vars = p.label_mask();
    if m == 0 {
        return EdgePoly::constant(vars, 1);
    }
    // Entry (i, j) as a sparse linear form: list of (label, coefficient).
    let entry = |i: usize, j: usize| -> Vec<(EdgeLabel, i64)> {
        p.matrices
            .iter()
            .filter_map(|(l, mat)| {
                let c = mat[i * m + j];
                (c != 0).then_some((*l, c))
            })
            .collect()
    };
    let entries: Vec<Vec<Vec<(EdgeLabel, i64)>>> =
        (0..m).map(|i| (0..m).map(|j| entry(i, j)).collect()).collect();

    // Monomials with explicit exponents: sorted (label, exponent) pairs.
    type Mono = Vec<(EdgeLabel, u8)>;
    type Poly = BTreeMap<Mono, i64>;

    let mut dp: Vec<Poly> = vec![Poly::new(); 1 << m];
    dp[0].insert(Vec::new(), 1);
    for mask in 1..1u64 << m {
        let k = mask.count_ones() as usize; // rows 0..k consumed
        let mut acc = Poly::new();
        let mut rest = mask;
        let mut pos = 0;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let sign = if (k - 1 + pos) % 2 == 0 { 1 } else { -1 };
            let sub = &dp[(mask & !(1 << c)) as usize];
            for (label, coeff) in &entries[k - 1][c] {
                for (mono, mc) in sub {
                    let mut m2 = mono.clone();
                    match m2.binary_search_by_key(label, |&(l, _)| l) {
                        Ok(i) => m2[i].1 += 1,
                        Err(i) => m2.insert(i, (*label, 1)),
                    }
                    let e = acc.entry(m2).or_insert(0);
                    *e += sign * coeff * mc;
                }
            }
            pos += 1;
        }
        acc.retain(|_, c| *c != 0);
        dp[mask as usize] = acc;
    }

    let full = &dp[(1u64 << m) as usize - 1];
    let mut out = EdgePoly::zero(vars);
    for (mono, c) in full {
        let mut mask = 0u64;
        for &(l, e) in mono {
            assert!(e <= 1, "pencil determinant is not multilinear");
            mask |= 1 << l;
        }
        out.add_term(mask, *c);
    }
    out
}
