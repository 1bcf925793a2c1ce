//! Chordality of 1-skeletons: perfect elimination orders via maximum
//! cardinality search, chordless cycle enumeration, and the structure of
//! missing edges.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Simple undirected graph on a set of labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: VertexSet,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `1..=m`.
    pub fn new(m: usize) -> Self {
        assert!(m <= MAX_VERTICES);
        Graph { vertices: VertexSet::full(m), adj: vec![VertexSet::EMPTY; MAX_VERTICES + 1] }
    }

    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(m);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// The 1-skeleton `K^1`.
    pub fn one_skeleton(k: &SimplicialComplex) -> Self {
        let mut g = Graph::new(k.vertex_count());
        for e in k.edges() {
            let v = e.to_vec();
            g.add_edge(v[0], v[1]);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        assert!(self.vertices.contains(u) && self.vertices.contains(v), "edge endpoint not a vertex");
        self.adj[u] = self.adj[u].with(v);
        self.adj[v] = self.adj[v].with(u);
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.iter().map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    /// Graph with vertex `v` and its edges removed. Other labels are kept.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let mut g = self.clone();
        g.vertices = g.vertices.without(v);
        for u in self.adj[v].iter() {
            g.adj[u] = g.adj[u].without(v);
        }
        g.adj[v] = VertexSet::EMPTY;
        g
    }

    /// Number of non-adjacent pairs inside `s`.
    pub fn missing_edges_within(&self, s: VertexSet) -> usize {
        let n = s.len();
        let present: usize = s.iter().map(|v| self.adj[v].intersection(s).len()).sum::<usize>() / 2;
        n * (n.saturating_sub(1)) / 2 - present
    }

    fn shortest_path(&self, from: usize, to: usize, allowed: VertexSet) -> Option<Vec<usize>> {
        let mut prev = vec![0usize; MAX_VERTICES + 1];
        let mut seen = VertexSet::singleton(from);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.adj[u].intersection(allowed).difference(seen).iter() {
                seen = seen.with(w);
                prev[w] = u;
                queue.push_back(w);
            }
        }
        None
    }
}

/// A vertex order in which every vertex's earlier neighbors form a clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder(pub Vec<usize>);

/// Outcome of the chordality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chordality {
    Chordal(EliminationOrder),
    /// A chordless cycle of length at least 4, canonically rotated.
    NotChordal(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Maximum cardinality search; ties go to the smallest label. Returns the
/// visit order.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let mut weight = vec![0usize; MAX_VERTICES + 1];
    let mut left = g.vertices;
    let mut order = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let v = left.iter().max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a))).expect("nonempty");
        order.push(v);
        left = left.without(v);
        for u in g.adj[v].intersection(left).iter() {
            weight[u] += 1;
        }
    }
    order
}

/// First violation `(v, x, y)` of the clique condition: `x`, `y` are
/// non-adjacent neighbors of `v` that both precede it.
pub fn elimination_violation(g: &Graph, order: &[usize]) -> Option<(usize, usize, usize)> {
    let mut earlier = VertexSet::EMPTY;
    for &v in order {
        let back = g.adj[v].intersection(earlier);
        for x in back.iter() {
            if let Some(y) = back.difference(g.adj[x]).without(x).iter().next() {
                return Some((v, x.min(y), x.max(y)));
            }
        }
        earlier = earlier.with(v);
    }
    None
}

fn check_order(g: &Graph, order: &[usize]) -> Result<()> {
    let as_set = VertexSet::from_vertices(order.iter().copied());
    if order.len() != g.vertex_count() || as_set != g.vertices {
        return Err(Error::InvalidEliminationOrder("not a permutation of the vertices".into()));
    }
    if let Some((v, x, y)) = elimination_violation(g, order) {
        return Err(Error::InvalidEliminationOrder(format!("earlier neighbors {x} and {y} of {v} are not adjacent")));
    }
    Ok(())
}

/// Chordality test with a certificate either way: a perfect elimination
/// order, or a chordless cycle found by BFS around a failed neighborhood.
pub fn is_chordal(g: &Graph) -> Chordality {
    let order = maximum_cardinality_search(g);
    match elimination_violation(g, &order) {
        None => Chordality::Chordal(EliminationOrder(order)),
        Some((v, x, y)) => {
            let cycle = cycle_through(g, v, x, y)
                .or_else(|| {
                    g.vertices.iter().find_map(|v| {
                        let n = g.adj[v];
                        n.iter().find_map(|x| {
                            n.difference(g.adj[x]).iter().filter(|&y| y > x).find_map(|y| cycle_through(g, v, x, y))
                        })
                    })
                })
                .expect("a graph without a perfect elimination order has a chordless cycle");
            Chordality::NotChordal(canonical_cycle(&cycle))
        }
    }
}

/// Chordless cycle `v, x, ..., y` avoiding the other neighbors of `v`.
fn cycle_through(g: &Graph, v: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let allowed = g.vertices.without(v).difference(g.adj[v]).with(x).with(y);
    let path = g.shortest_path(x, y, allowed)?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

/// Rotates a cycle to start at its smallest vertex and picks the direction
/// whose second vertex is smaller.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap_or(0);
    let fwd: Vec<usize> = (0..n).map(|i| cycle[(start + i) % n]).collect();
    let bwd: Vec<usize> = (0..n).map(|i| cycle[(start + n - i) % n]).collect();
    fwd.min(bwd)
}

/// Every induced cycle with `4 <= length <= max_len`, canonically
/// rotated and sorted. Exponential in the worst case.
pub fn find_chordless_cycles(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    assert!(max_len >= 4, "chordless cycles have length at least 4");
    let mut out = Vec::new();
    for s in g.vertices.iter() {
        let above = VertexSet::from_bits(g.vertices.bits() & !((2u64 << s) - 1)).unwrap();
        for p1 in g.adj[s].intersection(above).iter() {
            let mut path = vec![s, p1];
            extend_induced(g, s, above, max_len, &mut path, &mut out);
        }
    }
    out.sort();
    out
}

fn extend_induced(
    g: &Graph,
    s: usize,
    allowed: VertexSet,
    max_len: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    let interior = VertexSet::from_vertices(path[1..path.len() - 1].iter().copied());
    let on_path = VertexSet::from_vertices(path.iter().copied());
    for w in g.adj[last].intersection(allowed).difference(on_path).iter() {
        // w may only touch `last` (and `s`, which closes the cycle).
        if !g.adj[w].intersection(interior).is_empty() {
            continue;
        }
        if g.is_adjacent(w, s) {
            if path.len() + 1 >= 4 && path[1] < w {
                let mut cycle = path.clone();
                cycle.push(w);
                out.push(cycle);
            }
            continue;
        }
        if path.len() + 1 < max_len {
            path.push(w);
            extend_induced(g, s, allowed, max_len, path, out);
            path.pop();
        }
    }
}

/// Deletes the last vertex of a perfect elimination order. The restricted
/// order is again perfect.
pub fn peo_delete_last(g: &Graph, order: &EliminationOrder) -> Result<(Graph, EliminationOrder)> {
    check_order(g, &order.0)?;
    let Some((&last, rest)) = order.0.split_last() else {
        return Err(Error::InvalidEliminationOrder("empty order".into()));
    };
    let h = g.remove_vertex(last);
    let rest = EliminationOrder(rest.to_vec());
    debug_assert!(elimination_violation(&h, &rest.0).is_none());
    Ok((h, rest))
}

/// Missing edges `I_1, ..., I_r` of a complex and how they sit together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingEdgeReport {
    pub edges: Vec<VertexSet>,
    pub pairwise_disjoint: bool,
    /// Every two missing edges span a chordless 4-cycle.
    pub pairs_form_four_cycles: bool,
    /// `K_{I_1 ⊔ ... ⊔ I_r} = K_{I_1} * ... * K_{I_r}`, compared face by
    /// face; false whenever the edges are not disjoint.
    pub join_condition: bool,
}

impl MissingEdgeReport {
    pub fn count(&self) -> usize {
        self.edges.len()
    }
}

pub fn missing_edge_structure(k: &SimplicialComplex) -> MissingEdgeReport {
    let edges: Vec<VertexSet> = k.missing_faces(1).into_iter().map(|f| f.vertices).collect();
    let g = Graph::one_skeleton(k);
    let mut pairwise_disjoint = true;
    let mut pairs_form_four_cycles = true;
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            if !a.is_disjoint(*b) {
                pairwise_disjoint = false;
                pairs_form_four_cycles = false;
            } else if a.iter().any(|x| !b.is_subset(g.neighbors(x))) {
                pairs_form_four_cycles = false;
            }
        }
    }
    let join_condition = pairwise_disjoint && {
        let union = edges.iter().fold(VertexSet::EMPTY, |u, e| u.union(*e));
        let parts: Vec<_> = edges.iter().map(|e| k.full_subcomplex(*e)).collect();
        let mut joined = SimplicialComplex::empty();
        let mut labels = Vec::new();
        for p in &parts {
            joined = joined.join(&p.complex);
            labels.extend(&p.labels);
        }
        let mut expected: Vec<VertexSet> =
            joined.facets().iter().map(|f| VertexSet::from_vertices(f.iter().map(|v| labels[v - 1]))).collect();
        expected.sort_by(|a, b| a.lex_cmp(*b));
        k.restricted_facets(union) == expected
    };
    MissingEdgeReport { edges, pairwise_disjoint, pairs_form_four_cycles, join_condition }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(p: usize) -> Graph {
        Graph::one_skeleton(&SimplicialComplex::polygon(p))
    }

    #[test]
    fn chordality_examples() {
        assert_eq!(is_chordal(&cycle_graph(4)), Chordality::NotChordal(vec![1, 2, 3, 4]));
        let k5 = Graph::one_skeleton(&SimplicialComplex::simplex_boundary(5));
        assert!(is_chordal(&k5).is_chordal());
        let mut g = cycle_graph(5);
        g.add_edge(1, 3);
        assert_eq!(is_chordal(&g), Chordality::NotChordal(vec![1, 3, 4, 5]));
    }

    #[test]
    fn chordless_cycle_examples() {
        assert_eq!(find_chordless_cycles(&cycle_graph(5), 5), vec![vec![1, 2, 3, 4, 5]]);
        let j = SimplicialComplex::polygon(4).join(&SimplicialComplex::simplex_boundary(3));
        assert_eq!(find_chordless_cycles(&Graph::one_skeleton(&j), 7), vec![vec![1, 2, 3, 4]]);
        let k5 = Graph::one_skeleton(&SimplicialComplex::simplex_boundary(5));
        assert!(find_chordless_cycles(&k5, 5).is_empty());
        // Length bound is respected.
        assert!(find_chordless_cycles(&cycle_graph(6), 5).is_empty());
    }

    #[test]
    fn peo_deletion() {
        let k4 = Graph::one_skeleton(&SimplicialComplex::simplex_boundary(5).skeleton(1)).remove_vertex(5);
        let (h, o) = peo_delete_last(&k4, &EliminationOrder(vec![1, 2, 3, 4])).unwrap();
        assert_eq!(o.0, vec![1, 2, 3]);
        assert_eq!(h.edge_count(), 3);

        // With earlier neighbors required to be a clique, (1, 3, 2) is not
        // perfect for the path 1-2-3; (2, 1, 3) is, and deleting 3 leaves an edge.
        let path = Graph::from_edges(3, &[(1, 2), (2, 3)]);
        assert!(peo_delete_last(&path, &EliminationOrder(vec![1, 3, 2])).is_err());
        let (h, o) = peo_delete_last(&path, &EliminationOrder(vec![2, 1, 3])).unwrap();
        assert_eq!(o.0, vec![2, 1]);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.vertices().to_vec(), vec![1, 2]);

        let bad = peo_delete_last(&cycle_graph(4), &EliminationOrder(vec![1, 2, 3, 4]));
        assert!(matches!(bad, Err(Error::InvalidEliminationOrder(_))));
        let bad = peo_delete_last(&path, &EliminationOrder(vec![1, 2]));
        assert!(bad.is_err());
    }

    #[test]
    fn missing_edge_examples() {
        let r = missing_edge_structure(&SimplicialComplex::polygon(4));
        assert_eq!(r.count(), 2);
        assert!(r.pairwise_disjoint && r.pairs_form_four_cycles && r.join_condition);

        let r = missing_edge_structure(&SimplicialComplex::simplex_boundary(5));
        assert_eq!(r.count(), 0);
        assert!(r.join_condition);

        // Two cuts of the tetrahedron: three missing edges sharing vertices.
        let k = SimplicialComplex::simplex_boundary(4)
            .stellar_subdivide_facet(VertexSet::from_vertices([1, 2, 3]))
            .unwrap()
            .stellar_subdivide_facet(VertexSet::from_vertices([1, 2, 4]))
            .unwrap();
        let r = missing_edge_structure(&k);
        assert_eq!(r.count(), 3);
        assert!(!r.pairwise_disjoint);
        assert!(!r.join_condition);

        let x = SimplicialComplex::cross_polytope(4);
        let r = missing_edge_structure(&x);
        assert_eq!(r.count(), 4);
        assert!(r.pairwise_disjoint && r.pairs_form_four_cycles && r.join_condition);

        let c5j = SimplicialComplex::polygon(5).join(&SimplicialComplex::simplex_boundary(3));
        let r = missing_edge_structure(&c5j);
        assert_eq!(r.count(), 5);
        assert!(!r.pairwise_disjoint && !r.join_condition);
    }

    #[test]
    fn subdivided_octahedron_missing_edges() {
        // The apex misses the three opposite vertices.
        let k =
            SimplicialComplex::cross_polytope(3).stellar_subdivide_facet(VertexSet::from_vertices([1, 3, 5])).unwrap();
        let r = missing_edge_structure(&k);
        assert_eq!(r.count(), 6);
        assert!(!r.pairwise_disjoint);
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..11).prop_flat_map(|m| {
            prop::collection::vec(any::<bool>(), m * m).prop_map(move |bits| {
                let mut g = Graph::new(m);
                for u in 1..=m {
                    for v in u + 1..=m {
                        if bits[(u - 1) * m + (v - 1)] {
                            g.add_edge(u, v);
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn certificates_are_valid(g in arb_graph()) {
            match is_chordal(&g) {
                Chordality::Chordal(order) => {
                    prop_assert!(elimination_violation(&g, &order.0).is_none());
                    prop_assert!(find_chordless_cycles(&g, g.vertex_count().max(4)).is_empty());
                    if g.vertex_count() > 0 {
                        let (h, o) = peo_delete_last(&g, &order).unwrap();
                        prop_assert!(is_chordal(&h).is_chordal());
                        prop_assert!(elimination_violation(&h, &o.0).is_none());
                    }
                }
                Chordality::NotChordal(cycle) => {
                    prop_assert!(cycle.len() >= 4);
                    let s = VertexSet::from_vertices(cycle.iter().copied());
                    prop_assert_eq!(s.len(), cycle.len());
                    for (i, &v) in cycle.iter().enumerate() {
                        let next = cycle[(i + 1) % cycle.len()];
                        let prev = cycle[(i + cycle.len() - 1) % cycle.len()];
                        // Induced subgraph on the cycle is exactly the cycle.
                        prop_assert_eq!(g.neighbors(v).intersection(s), VertexSet::from_vertices([next, prev]));
                    }
                }
            }
        }

        #[test]
        fn chordless_cycles_have_expected_missing_edges(g in arb_graph()) {
            for c in find_chordless_cycles(&g, g.vertex_count().max(4)) {
                let p = c.len();
                let s = VertexSet::from_vertices(c.iter().copied());
                prop_assert_eq!(g.missing_edges_within(s), p * (p - 3) / 2);
                prop_assert_eq!(canonical_cycle(&c), c);
            }
        }
    }
}
