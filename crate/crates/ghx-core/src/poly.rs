//! Multilinear edge polynomials: spanning-tree sums, restriction and
//! partial derivatives, and the monomial-complement duality check.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeLabel, Graph};

/// A multilinear integer polynomial whose variables are indexed by edge
/// labels. A monomial is the product of `A_e` over a label subset, stored
/// as a bitmask; the zero polynomial is the empty map. `vars` is the
/// ambient variable set the polynomial lives in, which matters for point
/// counting even when some variables do not occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePoly {
    vars: u64,
    terms: BTreeMap<u64, i64>,
}

impl EdgePoly {
    pub fn zero(vars: u64) -> Self {
        EdgePoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: u64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(0, c);
        }
        EdgePoly { vars, terms }
    }

    pub fn from_terms(vars: u64, entries: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut p = EdgePoly::zero(vars);
        for (mask, c) in entries {
            p.add_term(mask, c);
        }
        p
    }

    pub fn vars(&self) -> u64 {
        self.vars
    }

    pub fn var_count(&self) -> usize {
        self.vars.count_ones() as usize
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&0))
    }

    pub fn coefficient(&self, mask: u64) -> i64 {
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, mask: u64, c: i64) {
        debug_assert_eq!(mask & !self.vars, 0, "monomial escapes ambient variables");
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(mask).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&mask);
        }
    }

    /// True iff every monomial has the same total degree (and the
    /// polynomial is nonzero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.count_ones());
        match degrees.next() {
            None => false,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Drops every monomial containing `e` and removes `e` from the
    /// ambient variable set (the A_e = 0 restriction).
    pub fn restrict_zero(&self, e: EdgeLabel) -> EdgePoly {
        let bit = 1u64 << e;
        EdgePoly {
            vars: self.vars & !bit,
            terms: self.terms.iter().filter(|(m, _)| *m & bit == 0).map(|(&m, &c)| (m, c)).collect(),
        }
    }

    /// Keeps monomials containing `e`, deletes `e` from them, and removes
    /// `e` from the ambient variable set.
    pub fn partial_derivative(&self, e: EdgeLabel) -> EdgePoly {
        let bit = 1u64 << e;
        EdgePoly {
            vars: self.vars & !bit,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| *m & bit != 0)
                .map(|(&m, &c)| (m & !bit, c))
                .collect(),
        }
    }

    pub fn restrict_zero_all(&self, labels: impl IntoIterator<Item = EdgeLabel>) -> EdgePoly {
        let mut p = self.clone();
        for e in labels {
            p = p.restrict_zero(e);
        }
        p
    }

    /// Applies A_e -> A_e + A_eps, the substitution realizing a duplicate
    /// edge on the dual side.
    pub fn substitute_sum(&self, e: EdgeLabel, eps: EdgeLabel) -> EdgePoly {
        let ebit = 1u64 << e;
        let epsbit = 1u64 << eps;
        debug_assert_eq!(self.vars & epsbit, 0, "duplicate variable already present");
        let mut out = EdgePoly::zero(self.vars | epsbit);
        for (&m, &c) in &self.terms {
            out.add_term(m, c);
            if m & ebit != 0 {
                out.add_term(m & !ebit | epsbit, c);
            }
        }
        out
    }

    /// Extends the ambient variable set without changing the terms.
    pub fn extend_vars(&self, extra: u64) -> EdgePoly {
        EdgePoly { vars: self.vars | extra, terms: self.terms.clone() }
    }
}

impl fmt::Display for EdgePoly {
    /// Monomials ascending by bitmask, `+`-separated, variables printed
    /// `A<label>` and joined with `*`; the constant 1 prints as `1`, the
    /// zero polynomial as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&mask, &c)) in self.terms.iter().enumerate() {
            if c < 0 {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            format_term(f, mask, c.unsigned_abs())?;
        }
        Ok(())
    }
}

fn format_term(f: &mut fmt::Formatter<'_>, mask: u64, c: u64) -> fmt::Result {
    if mask == 0 {
        return write!(f, "{c}");
    }
    if c != 1 {
        write!(f, "{c}*")?;
    }
    let mut first = true;
    let mut rest = mask;
    while rest != 0 {
        let label = rest.trailing_zeros();
        rest &= rest - 1;
        if !first {
            write!(f, "*")?;
        }
        write!(f, "A{label}")?;
        first = false;
    }
    Ok(())
}

/// The spanning-tree-complement sum: one +1 monomial per spanning tree,
/// over the edges outside the tree. Zero iff the graph is disconnected.
pub fn psi(g: &Graph) -> EdgePoly {
    let universe = g.label_mask();
    let mut p = EdgePoly::zero(universe);
    for t in g.spanning_trees() {
        p.add_term(universe & !t.mask, 1);
    }
    p
}

/// The spanning-tree sum: one +1 monomial per spanning tree, over the
/// edges inside the tree. Zero iff the graph is disconnected.
pub fn psi_dual(g: &Graph) -> EdgePoly {
    let mut p = EdgePoly::zero(g.label_mask());
    for t in g.spanning_trees() {
        p.add_term(t.mask, 1);
    }
    p
}

/// Checks the monomial-complement duality with unit constant: the map
/// m -> vars \ m must send the dual tree sum bijectively onto the primal
/// one with all coefficients +1.
pub fn cremona_check(g: &Graph) -> bool {
    let p = psi(g);
    let d = psi_dual(g);
    let vars = p.vars();
    if p.term_count() != d.term_count() {
        return false;
    }
    d.terms().all(|(m, c)| c == 1 && p.coefficient(vars & !m) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, Graph};
    use alloc::format;
    use alloc::string::ToString;
    use alloc::vec;

    fn triangle() -> Graph {
        complete_graph(3).unwrap()
    }

    fn path3() -> Graph {
        Graph::new(3, vec![(0, 0, 1), (1, 1, 2)]).unwrap()
    }

    #[test]
    fn triangle_polynomials() {
        let g = triangle();
        let p = psi(&g);
        // A0 + A1 + A2
        assert_eq!(p, EdgePoly::from_terms(0b111, [(0b001, 1), (0b010, 1), (0b100, 1)]));
        let d = psi_dual(&g);
        // A0A1 + A0A2 + A1A2
        assert_eq!(d, EdgePoly::from_terms(0b111, [(0b011, 1), (0b101, 1), (0b110, 1)]));
    }

    #[test]
    fn path_psi_is_one() {
        let g = path3();
        assert_eq!(psi(&g), EdgePoly::constant(0b11, 1));
        assert_eq!(psi_dual(&g), EdgePoly::from_terms(0b11, [(0b11, 1)]));
    }

    #[test]
    fn disconnected_psi_is_zero() {
        let g = Graph::new(3, vec![(0, 0, 1)]).unwrap();
        assert!(psi(&g).is_zero());
        assert!(psi_dual(&g).is_zero());
    }

    #[test]
    fn single_edge_dual() {
        let g = Graph::new(2, vec![(0, 0, 1)]).unwrap();
        assert_eq!(psi_dual(&g), EdgePoly::from_terms(1, [(1, 1)]));
    }

    #[test]
    fn restriction_and_derivative_on_triangle() {
        let g = triangle();
        let d = psi_dual(&g);
        // dual restricted at e0 keeps the single tree {e1,e2}
        assert_eq!(d.restrict_zero(0), EdgePoly::from_terms(0b110, [(0b110, 1)]));
        // psi derivative at e0 is the constant 1
        assert_eq!(psi(&g).partial_derivative(0), EdgePoly::constant(0b110, 1));
    }

    #[test]
    fn restrict_and_derive_commute_for_distinct_edges() {
        let g = complete_graph(4).unwrap();
        let p = psi(&g);
        let a = p.restrict_zero(0).partial_derivative(3);
        let b = p.partial_derivative(3).restrict_zero(0);
        assert_eq!(a, b);
    }

    #[test]
    fn deletion_contraction_on_triangle() {
        let g = triangle();
        let e = 0;
        let s = g.subset(1 << e).unwrap();
        assert_eq!(psi(&g.contract_edges(&s).unwrap()), psi(&g).restrict_zero(e));
        assert_eq!(psi(&g.delete_edges(&s).unwrap()), psi(&g).partial_derivative(e));
        assert_eq!(psi_dual(&g.contract_edges(&s).unwrap()), psi_dual(&g).partial_derivative(e));
        assert_eq!(psi_dual(&g.delete_edges(&s).unwrap()), psi_dual(&g).restrict_zero(e));
    }

    #[test]
    fn degenerate_deletion_contraction_gives_zero() {
        // bridge edge: deleting disconnects, derivative of psi is zero
        let g = path3();
        assert!(psi(&g).partial_derivative(0).is_zero());
        // loop edge: restriction of psi is zero
        let lg = Graph::new(2, vec![(0, 0, 1), (1, 1, 1)]).unwrap();
        assert!(psi(&lg).restrict_zero(1).is_zero());
    }

    #[test]
    fn cremona_small_graphs() {
        assert!(cremona_check(&triangle()));
        assert!(cremona_check(&path3()));
        assert!(cremona_check(&complete_graph(4).unwrap()));
        let tree = Graph::new(4, vec![(0, 0, 1), (1, 1, 2), (2, 1, 3)]).unwrap();
        assert!(cremona_check(&tree));
    }

    #[test]
    fn duplicate_edge_substitution() {
        // triangle plus a duplicate of e0: the dual tree sum equals the
        // original dual after A_0 -> A_0 + A_3
        let g = triangle();
        let dup = Graph::new(3, vec![(0, 0, 1), (1, 0, 2), (2, 1, 2), (3, 0, 1)]).unwrap();
        assert_eq!(psi_dual(&dup), psi_dual(&g).substitute_sum(0, 3));
    }

    #[test]
    fn tadpole_extends_vars_only() {
        let g = triangle();
        let tad = Graph::new(3, vec![(0, 0, 1), (1, 0, 2), (2, 1, 2), (3, 2, 2)]).unwrap();
        assert_eq!(psi_dual(&tad), psi_dual(&g).extend_vars(1 << 3));
    }

    #[test]
    fn display_format() {
        let g = triangle();
        assert_eq!(psi(&g).to_string(), "A0+A1+A2");
        assert_eq!(psi_dual(&g).to_string(), "A0*A1+A0*A2+A1*A2");
        assert_eq!(psi(&path3()).to_string(), "1");
        assert_eq!(EdgePoly::zero(0b11).to_string(), "0");
        let m = EdgePoly::from_terms(0b101, [(0b101, -2), (0, 3)]);
        assert_eq!(format!("{m}"), "3-2*A0*A2");
    }
}
