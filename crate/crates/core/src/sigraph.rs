//! Signed simple graphs.
//!
//! A [`Sigraph`] is an undirected simple graph on vertices `0..vertex_count`
//! whose edges each carry a [`Sign`]. Edges are kept in canonical order:
//! each edge has `a < b`, and the edge list is sorted by `(a, b)`. Per-vertex
//! adjacency is sorted by neighbor, which coincides with canonical edge order.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_positive(positive: bool) -> Sign {
        if positive {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub sign: Sign,
}

impl Edge {
    /// The endpoint opposite to `v`. `v` must be an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

/// One entry of a vertex's adjacency list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub neighbor: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EdgeCounts {
    pub positive: usize,
    pub negative: usize,
}

impl EdgeCounts {
    pub fn total(&self) -> usize {
        self.positive + self.negative
    }
}

/// A vertex sign assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Marking(pub Vec<Sign>);

impl Marking {
    pub fn all_positive(vertex_count: usize) -> Marking {
        Marking(vec![Sign::Positive; vertex_count])
    }

    pub fn get(&self, v: usize) -> Sign {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negative_vertices(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&v| self.0[v].is_negative())
            .collect()
    }
}

/// A cycle given as a closed vertex sequence, with `signs[i]` the sign of the
/// edge `vertices[i] -- vertices[i + 1]` and the closing edge last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub signs: Vec<Sign>,
}

impl Cycle {
    /// Reads the edge signs for a closed vertex sequence from `g`.
    pub fn from_vertices(g: &Sigraph, vertices: Vec<usize>) -> Result<Cycle> {
        let k = vertices.len();
        if k < 3 {
            return Err(Error::MalformedGraph(format!(
                "a cycle needs at least 3 vertices (got {k})"
            )));
        }
        let mut signs = Vec::with_capacity(k);
        for i in 0..k {
            let (x, y) = (vertices[i], vertices[(i + 1) % k]);
            let e = g
                .edge_between(x, y)
                .ok_or_else(|| Error::MalformedGraph(format!("no edge between {x} and {y}")))?;
            signs.push(e.sign);
        }
        Ok(Cycle { vertices, signs })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|s| s.is_negative()).count()
    }

    /// Product of the edge signs.
    pub fn sign(&self) -> Sign {
        Sign::from_positive(self.negative_count().is_multiple_of(2))
    }

    pub fn is_all_negative(&self) -> bool {
        self.signs.iter().all(|s| s.is_negative())
    }

    pub fn is_heterogeneous(&self) -> bool {
        self.signs.iter().any(|s| s.is_negative()) && self.signs.iter().any(|s| s.is_positive())
    }

    /// Rotates so the smallest vertex comes first and orients so that the
    /// second vertex is smaller than the last.
    pub fn canonical(&self) -> Cycle {
        let k = self.vertices.len();
        if k == 0 {
            return self.clone();
        }
        let r = (0..k).min_by_key(|&i| self.vertices[i]).unwrap();
        let mut vertices: Vec<usize> = (0..k).map(|i| self.vertices[(r + i) % k]).collect();
        let mut signs: Vec<Sign> = (0..k).map(|i| self.signs[(r + i) % k]).collect();
        if k > 2 && vertices[1] > vertices[k - 1] {
            vertices[1..].reverse();
            signs.reverse();
        }
        Cycle { vertices, signs }
    }

    /// Checks that this is a simple cycle of `g` with correctly recorded signs.
    pub fn is_valid_in(&self, g: &Sigraph) -> bool {
        let k = self.vertices.len();
        if k < 3 || self.signs.len() != k {
            return false;
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &self.vertices {
            if v >= g.vertex_count() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        (0..k).all(|i| {
            g.edge_between(self.vertices[i], self.vertices[(i + 1) % k])
                .is_some_and(|e| e.sign == self.signs[i])
        })
    }
}

/// Connected components, ids assigned in order of smallest contained vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    pub component_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SigraphRecord", into = "SigraphRecord")]
pub struct Sigraph {
    vertex_count: usize,
    labels: Option<Vec<String>>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Incidence>>,
}

#[derive(Serialize, Deserialize)]
struct SigraphRecord {
    vertex_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    edges: Vec<Edge>,
}

impl TryFrom<SigraphRecord> for Sigraph {
    type Error = Error;

    fn try_from(r: SigraphRecord) -> Result<Sigraph> {
        let g = Sigraph::new(
            r.vertex_count,
            r.edges.into_iter().map(|e| (e.a, e.b, e.sign)),
        )?;
        match r.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }
}

impl From<Sigraph> for SigraphRecord {
    fn from(g: Sigraph) -> SigraphRecord {
        SigraphRecord {
            vertex_count: g.vertex_count,
            labels: g.labels,
            edges: g.edges,
        }
    }
}

impl Sigraph {
    /// Builds a sigraph from `(x, y, sign)` triples in any orientation and order.
    /// Loops and repeated vertex pairs are rejected.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, Sign)>,
    ) -> Result<Sigraph> {
        let mut list = Vec::new();
        for (x, y, sign) in edges {
            for v in [x, y] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index: v,
                        vertex_count,
                    });
                }
            }
            if x == y {
                return Err(Error::MalformedGraph(format!("loop at vertex {x}")));
            }
            list.push(Edge {
                a: x.min(y),
                b: x.max(y),
                sign,
            });
        }
        list.sort_by_key(|e| (e.a, e.b));
        if let Some(w) = list
            .windows(2)
            .find(|w| (w[0].a, w[0].b) == (w[1].a, w[1].b))
        {
            return Err(Error::MalformedGraph(format!(
                "duplicate edge {{{}, {}}}",
                w[0].a, w[0].b
            )));
        }

        let mut adjacency = vec![Vec::new(); vertex_count];
        for (id, e) in list.iter().enumerate() {
            adjacency[e.a].push(Incidence {
                neighbor: e.b,
                edge: id,
            });
            adjacency[e.b].push(Incidence {
                neighbor: e.a,
                edge: id,
            });
        }
        for adj in &mut adjacency {
            adj.sort_by_key(|i| i.neighbor);
        }
        Ok(Sigraph {
            vertex_count,
            labels: None,
            edges: list,
            adjacency,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Sigraph> {
        if labels.len() != self.vertex_count {
            return Err(Error::MalformedGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
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

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v`, falling back to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn incidences(&self, v: usize) -> &[Incidence] {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|i| i.neighbor)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, x: usize, y: usize) -> Option<&Edge> {
        let adj = self.adjacency.get(x)?;
        adj.binary_search_by_key(&y, |i| i.neighbor)
            .ok()
            .map(|k| &self.edges[adj[k].edge])
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    pub fn neg_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v]
            .iter()
            .filter(|i| self.edges[i.edge].sign.is_negative())
            .count())
    }

    pub fn pos_degree(&self, v: usize) -> Result<usize> {
        Ok(self.degree_checked(v)? - self.neg_degree(v)?)
    }

    fn degree_checked(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degree(v))
    }

    pub fn edge_counts(&self) -> EdgeCounts {
        let negative = self.edges.iter().filter(|e| e.sign.is_negative()).count();
        EdgeCounts {
            positive: self.edges.len() - negative,
            negative,
        }
    }

    /// Connected components of the underlying graph, signs ignored.
    pub fn components(&self) -> Components {
        self.components_where(|_| true)
    }

    /// Connected components using only edges accepted by `keep`.
    pub(crate) fn components_where(&self, keep: impl Fn(&Edge) -> bool) -> Components {
        const UNSEEN: usize = usize::MAX;
        let mut component_of = vec![UNSEEN; self.vertex_count];
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..self.vertex_count {
            if component_of[root] != UNSEEN {
                continue;
            }
            let id = members.len();
            let mut comp = vec![root];
            component_of[root] = id;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for inc in &self.adjacency[x] {
                    if component_of[inc.neighbor] == UNSEEN && keep(&self.edges[inc.edge]) {
                        component_of[inc.neighbor] = id;
                        comp.push(inc.neighbor);
                        queue.push_back(inc.neighbor);
                    }
                }
            }
            comp.sort_unstable();
            members.push(comp);
        }
        Components {
            component_of,
            members,
        }
    }

    /// The sub-sigraph induced on `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Sigraph> {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.a] != usize::MAX && index[e.b] != usize::MAX)
            .map(|e| (index[e.a], index[e.b], e.sign));
        let g = Sigraph::new(vertices.len(), edges)?;
        match &self.labels {
            Some(l) => g.with_labels(vertices.iter().map(|&v| l[v].clone()).collect()),
            None => Ok(g),
        }
    }

    /// Re-signs every edge `uv` to `mu(u) * sign(uv) * mu(v)`.
    pub fn switch(&self, marking: &Marking) -> Result<Sigraph> {
        if marking.len() != self.vertex_count {
            return Err(Error::InvalidInput(format!(
                "marking has {} entries for {} vertices",
                marking.len(),
                self.vertex_count
            )));
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            e.sign = marking.get(e.a) * e.sign * marking.get(e.b);
        }
        Ok(g)
    }

    /// Line sigraph: one vertex per edge (in canonical edge order), adjacent
    /// when the edges share an endpoint, negative exactly when both edges are
    /// negative.
    pub fn line_sigraph(&self) -> Sigraph {
        let mut line_edges = Vec::new();
        for adj in &self.adjacency {
            for (i, first) in adj.iter().enumerate() {
                for second in &adj[i + 1..] {
                    let both_negative = self.edges[first.edge].sign.is_negative()
                        && self.edges[second.edge].sign.is_negative();
                    line_edges.push((first.edge, second.edge, Sign::from_positive(!both_negative)));
                }
            }
        }
        let labels = self
            .edges
            .iter()
            .map(|e| format!("{}{}", self.label(e.a), self.label(e.b)))
            .collect();
        Sigraph::new(self.edges.len(), line_edges)
            .and_then(|g| g.with_labels(labels))
            .expect("two edges of a simple graph share at most one endpoint")
    }

    /// Graphviz rendering: positive edges solid, negative edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph sigraph {\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(
                out,
                "  {v} [label=\"{}\"];",
                self.label(v).replace('"', "\\\"")
            );
        }
        for e in &self.edges {
            let style = match e.sign {
                Sign::Positive => "solid",
                Sign::Negative => "dashed",
            };
            let _ = writeln!(
                out,
                "  {} -- {} [style={style}, label=\"{}\"];",
                e.a, e.b, e.sign
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Negative as N, Positive as P};

    fn cycle_graph(signs: &[Sign]) -> Sigraph {
        let k = signs.len();
        Sigraph::new(k, (0..k).map(|i| (i, (i + 1) % k, signs[i]))).unwrap()
    }

    #[test]
    fn sign_multiplication_table() {
        assert_eq!(P * P, P);
        assert_eq!(P * N, N);
        assert_eq!(N * P, N);
        assert_eq!(N * N, P);
    }

    #[test]
    fn rejects_loops_duplicates_and_bad_indices() {
        assert!(matches!(
            Sigraph::new(3, [(1, 1, P)]),
            Err(Error::MalformedGraph(_))
        ));
        assert!(matches!(
            Sigraph::new(3, [(0, 1, P), (1, 0, N)]),
            Err(Error::MalformedGraph(_))
        ));
        assert!(matches!(
            Sigraph::new(3, [(0, 3, P)]),
            Err(Error::VertexOutOfRange { index: 3, .. })
        ));
    }

    #[test]
    fn edges_are_canonical() {
        let g = Sigraph::new(4, [(3, 0, P), (2, 1, N), (0, 1, P)]).unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.a, e.b)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (1, 2)]);
        let degree_sum: usize = (0..4).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn empty_graph_counts() {
        let g = Sigraph::new(0, []).unwrap();
        assert_eq!(g.edge_counts(), EdgeCounts::default());
        assert_eq!(g.components().count(), 0);
    }

    #[test]
    fn neg_degree_cases() {
        let g = Sigraph::new(4, [(0, 1, N), (0, 2, N), (0, 3, P)]).unwrap();
        assert_eq!(g.neg_degree(0).unwrap(), 2);
        assert_eq!(g.pos_degree(0).unwrap(), 1);
        let iso = Sigraph::new(2, []).unwrap();
        assert_eq!(iso.neg_degree(1).unwrap(), 0);
        assert!(matches!(
            iso.neg_degree(2),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn line_of_negative_hexagon_is_negative_hexagon() {
        let l = cycle_graph(&[N; 6]).line_sigraph();
        assert_eq!(l.vertex_count(), 6);
        assert_eq!(l.edge_count(), 6);
        assert!((0..6).all(|v| l.degree(v) == 2));
        assert_eq!(l.edge_counts().negative, 6);
    }

    #[test]
    fn line_of_positive_star_is_positive_triangle() {
        let star = Sigraph::new(4, [(0, 1, P), (0, 2, P), (0, 3, P)]).unwrap();
        let l = star.line_sigraph();
        assert_eq!(l.vertex_count(), 3);
        assert_eq!(l.edge_count(), 3);
        assert_eq!(l.edge_counts().negative, 0);
    }

    #[test]
    fn line_of_mixed_hexagon_has_one_negative_edge() {
        let l = cycle_graph(&[P, P, N, N, P, P]).line_sigraph();
        assert_eq!(l.edge_count(), 6);
        assert_eq!(l.edge_counts().negative, 1);
    }

    #[test]
    fn mixed_star_line_rule_is_not_the_product_rule() {
        // (+,-) pairs stay positive.
        let star = Sigraph::new(3, [(0, 1, P), (0, 2, N)]).unwrap();
        let l = star.line_sigraph();
        assert_eq!(l.edges()[0].sign, P);
    }

    #[test]
    fn dot_styles() {
        let g = Sigraph::new(2, [(0, 1, P)]).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph "));
        assert_eq!(dot.matches("style=solid").count(), 1);
        assert!(!dot.contains("dashed"));

        let g = Sigraph::new(2, [(0, 1, N)]).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert!(!dot.contains("solid"));
    }

    #[test]
    fn cycle_canonical_form() {
        let g = cycle_graph(&[P, N, P, N, N]);
        let c = Cycle::from_vertices(&g, vec![3, 2, 1, 0, 4]).unwrap();
        let canon = c.canonical();
        assert_eq!(canon.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(canon.signs, vec![P, N, P, N, N]);
        assert!(canon.is_valid_in(&g));
        assert_eq!(canon, canon.canonical());
        assert_eq!(c.negative_count(), 3);
        assert_eq!(c.sign(), N);
    }

    #[test]
    fn invalid_cycles_are_detected() {
        let g = cycle_graph(&[P, P, P, P]);
        assert!(Cycle::from_vertices(&g, vec![0, 2, 1]).is_err());
        let wrong_sign = Cycle {
            vertices: vec![0, 1, 2, 3],
            signs: vec![P, P, N, P],
        };
        assert!(!wrong_sign.is_valid_in(&g));
    }

    #[test]
    fn json_round_trip() {
        let g = Sigraph::new(3, [(0, 1, P), (1, 2, N)])
            .unwrap()
            .with_labels(vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.contains("\"sign\":\"-\""));
        let back: Sigraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Sigraph>(
            r#"{"vertex_count":2,"edges":[{"a":0,"b":0,"sign":"+"}]}"#
        )
        .is_err());
    }

    #[test]
    fn switching_is_an_involution() {
        let g = cycle_graph(&[P, N, N, P]);
        let m = Marking(vec![N, P, N, P]);
        assert_eq!(g.switch(&m).unwrap().switch(&m).unwrap(), g);
        assert!(g.switch(&Marking(vec![P])).is_err());
    }
}
