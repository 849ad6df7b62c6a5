//! Polynomial-time deciders and closed-form edge-count predictions.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::cayley::GroupSpec;
use crate::error::Result;
use crate::oracle::{self, negative_sections};
use crate::sigraph::{Cycle, Sign, Sigraph};

pub use crate::sigraph::Marking;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub balanced: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub switching_marking: Option<Marking>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_cycle: Option<Cycle>,
}

impl BalanceReport {
    /// Machine check of the report against `g`.
    pub fn is_valid_for(&self, g: &Sigraph) -> bool {
        match (self.balanced, &self.switching_marking, &self.witness_cycle) {
            (true, Some(m), None) => {
                m.len() == g.vertex_count()
                    && g.edges().iter().all(|e| e.sign == m.get(e.a) * m.get(e.b))
            }
            (false, None, Some(c)) => c.is_valid_in(g) && c.negative_count() % 2 == 1,
            _ => false,
        }
    }
}

/// Harary-style decision: propagate marks breadth-first so that every tree
/// edge satisfies `sign(xy) = mark(x) * mark(y)`. The first non-tree edge that
/// violates the constraint closes an odd-negative fundamental cycle.
pub fn check_balance(g: &Sigraph) -> BalanceReport {
    let n = g.vertex_count();
    let mut mark: Vec<Option<Sign>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();

    for root in 0..n {
        if mark[root].is_some() {
            continue;
        }
        mark[root] = Some(Sign::Positive);
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            let mx = mark[x].unwrap();
            for inc in g.incidences(x) {
                let w = inc.neighbor;
                let wanted = mx * g.edges()[inc.edge].sign;
                match mark[w] {
                    None => {
                        mark[w] = Some(wanted);
                        parent[w] = x;
                        depth[w] = depth[x] + 1;
                        queue.push_back(w);
                    }
                    Some(mw) if mw != wanted => {
                        let vertices = tree_cycle(x, w, &parent, &depth);
                        let cycle = Cycle::from_vertices(g, vertices)
                            .expect("tree path plus the closing edge is a cycle of g");
                        return BalanceReport {
                            balanced: false,
                            switching_marking: None,
                            witness_cycle: Some(cycle),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    BalanceReport {
        balanced: true,
        switching_marking: Some(Marking(mark.into_iter().map(Option::unwrap).collect())),
        witness_cycle: None,
    }
}

/// Vertices of the cycle formed by the tree paths from `x` and `y` to their
/// lowest common ancestor, closed by the edge `y -- x`.
fn tree_cycle(x: usize, y: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (x, y);
    let mut from_x = vec![a];
    let mut from_y = vec![b];
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a];
            from_x.push(a);
        } else {
            b = parent[b];
            from_y.push(b);
        }
    }
    from_y.pop();
    from_x.extend(from_y.into_iter().rev());
    from_x
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub clusterable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clusters: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_cycle: Option<Cycle>,
}

impl ClusterReport {
    pub fn is_valid_for(&self, g: &Sigraph) -> bool {
        match (self.clusterable, &self.clusters, &self.witness_cycle) {
            (true, Some(clusters), None) => {
                let mut cluster_of = vec![usize::MAX; g.vertex_count()];
                for (id, c) in clusters.iter().enumerate() {
                    for &v in c {
                        if v >= g.vertex_count() || cluster_of[v] != usize::MAX {
                            return false;
                        }
                        cluster_of[v] = id;
                    }
                }
                cluster_of.iter().all(|&c| c != usize::MAX)
                    && g.edges()
                        .iter()
                        .all(|e| (cluster_of[e.a] == cluster_of[e.b]) == e.sign.is_positive())
            }
            (false, None, Some(c)) => c.is_valid_in(g) && c.negative_count() == 1,
            _ => false,
        }
    }
}

/// Clusters are the components of the positive subgraph; the partition works
/// iff no negative edge falls inside one of them.
pub fn check_clusterability(g: &Sigraph) -> ClusterReport {
    let positive = g.components_where(|e| e.sign.is_positive());
    let clash = g
        .edges()
        .iter()
        .find(|e| e.sign.is_negative() && positive.component_of[e.a] == positive.component_of[e.b]);
    match clash {
        None => ClusterReport {
            clusterable: true,
            clusters: Some(positive.members),
            witness_cycle: None,
        },
        Some(e) => {
            let path = positive_path(g, e.a, e.b);
            let cycle = Cycle::from_vertices(g, path)
                .expect("positive path plus a negative edge is a cycle of g");
            ClusterReport {
                clusterable: false,
                clusters: None,
                witness_cycle: Some(cycle),
            }
        }
    }
}

/// Shortest path from `from` to `to` using positive edges only.
fn positive_path(g: &Sigraph, from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.vertex_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for inc in g.incidences(x) {
            if g.edges()[inc.edge].sign.is_positive() && parent[inc.neighbor] == usize::MAX {
                parent[inc.neighbor] = x;
                queue.push_back(inc.neighbor);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// A forbidden sub-sigraph: negative `x u`, positive `u v`, negative `v y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CompatWitness {
    /// Path `x, u, v, y` on four distinct vertices.
    Path {
        x: usize,
        u: usize,
        v: usize,
        y: usize,
    },
    /// The same with `x = y`.
    Triangle { x: usize, u: usize, v: usize },
}

impl CompatWitness {
    pub fn is_valid_in(&self, g: &Sigraph) -> bool {
        let signed =
            |a: usize, b: usize, s: Sign| g.edge_between(a, b).is_some_and(|e| e.sign == s);
        let (x, u, v, y) = match *self {
            CompatWitness::Path { x, u, v, y } => {
                let mut all = [x, u, v, y];
                all.sort_unstable();
                if all.windows(2).any(|w| w[0] == w[1]) {
                    return false;
                }
                (x, u, v, y)
            }
            CompatWitness::Triangle { x, u, v } => (x, u, v, x),
        };
        signed(x, u, Sign::Negative) && signed(u, v, Sign::Positive) && signed(v, y, Sign::Negative)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatReport {
    pub compatible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marking: Option<Marking>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<CompatWitness>,
}

impl CompatReport {
    pub fn is_valid_for(&self, g: &Sigraph) -> bool {
        match (self.compatible, &self.marking, &self.witness) {
            (true, Some(m), None) => {
                m.len() == g.vertex_count()
                    && g.edges().iter().all(|e| {
                        let both = m.get(e.a).is_negative() && m.get(e.b).is_negative();
                        both == e.sign.is_negative()
                    })
            }
            (false, None, Some(w)) => w.is_valid_in(g),
            _ => false,
        }
    }
}

/// The canonical marking puts `-` exactly on vertices that meet a negative
/// edge. It is the only candidate: any valid marking must do so, and marking
/// more vertices negative can only break positive edges.
pub fn check_sign_compatibility(g: &Sigraph) -> CompatReport {
    let touches_negative: Vec<bool> = (0..g.vertex_count())
        .map(|v| {
            g.incidences(v)
                .iter()
                .any(|i| g.edges()[i.edge].sign.is_negative())
        })
        .collect();
    let bad = g
        .edges()
        .iter()
        .find(|e| e.sign.is_positive() && touches_negative[e.a] && touches_negative[e.b]);
    match bad {
        None => CompatReport {
            compatible: true,
            marking: Some(Marking(
                touches_negative
                    .into_iter()
                    .map(|t| Sign::from_positive(!t))
                    .collect(),
            )),
            witness: None,
        },
        Some(e) => CompatReport {
            compatible: false,
            marking: None,
            witness: Some(forbidden_witness(g, e.a, e.b)),
        },
    }
}

fn forbidden_witness(g: &Sigraph, u: usize, v: usize) -> CompatWitness {
    let negative_neighbors = |w: usize| -> Vec<usize> {
        g.incidences(w)
            .iter()
            .filter(|i| g.edges()[i.edge].sign.is_negative())
            .map(|i| i.neighbor)
            .collect()
    };
    let xs = negative_neighbors(u);
    let ys = negative_neighbors(v);
    for &x in &xs {
        if let Some(&y) = ys.iter().find(|&&y| y != x) {
            return CompatWitness::Path { x, u, v, y };
        }
    }
    CompatWitness::Triangle { x: xs[0], u, v }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionStatus {
    Pass,
    Fail,
    /// Cycle enumeration was skipped because the graph is above the gate.
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCondition {
    pub status: ConditionStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Cycle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCondition {
    pub status: ConditionStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_vertex: Option<usize>,
}

/// The cycle and vertex conditions characterizing balance of the line sigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineConditionReport {
    /// All-negative cycles have even length.
    pub cond1a: CycleCondition,
    /// Heterogeneous cycles have an even number of even-length negative sections.
    pub cond1b: CycleCondition,
    /// Vertices of degree > 2 meet at most one negative edge.
    pub cond2: VertexCondition,
    pub exhaustive: bool,
}

impl LineConditionReport {
    /// Predicted balance of the line sigraph, or `None` when the cycle
    /// conditions were not enumerated and the vertex condition holds.
    pub fn verdict(&self) -> Option<bool> {
        let statuses = [self.cond1a.status, self.cond1b.status, self.cond2.status];
        if statuses.contains(&ConditionStatus::Fail) {
            Some(false)
        } else if statuses.contains(&ConditionStatus::Unchecked) {
            None
        } else {
            Some(true)
        }
    }
}

fn violates_cond1b(c: &Cycle) -> bool {
    negative_sections(c)
        .map(|sections| sections.iter().filter(|&&len| len % 2 == 0).count() % 2 == 1)
        .unwrap_or(false)
}

pub fn check_line_balance_conditions(g: &Sigraph, cycle_limit: usize) -> LineConditionReport {
    let cond2_witness =
        (0..g.vertex_count()).find(|&v| g.degree(v) > 2 && g.neg_degree(v).unwrap_or(0) > 1);
    let cond2 = VertexCondition {
        status: if cond2_witness.is_some() {
            ConditionStatus::Fail
        } else {
            ConditionStatus::Pass
        },
        witness_vertex: cond2_witness,
    };

    let mut odd_negative: Option<Cycle> = None;
    let mut bad_sections: Option<Cycle> = None;
    let enumerated = oracle::visit_simple_cycles::<()>(g, cycle_limit, |c| {
        if odd_negative.is_none() && c.is_all_negative() && c.len() % 2 == 1 {
            odd_negative = Some(c.clone());
        }
        if bad_sections.is_none() && c.is_heterogeneous() && violates_cond1b(c) {
            bad_sections = Some(c.clone());
        }
        if odd_negative.is_some() && bad_sections.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });

    let exhaustive = enumerated.is_ok();
    let cycle_condition = |witness: Option<Cycle>| CycleCondition {
        status: match (&witness, exhaustive) {
            (Some(_), _) => ConditionStatus::Fail,
            (None, true) => ConditionStatus::Pass,
            (None, false) => ConditionStatus::Unchecked,
        },
        witness,
    };
    LineConditionReport {
        cond1a: cycle_condition(odd_negative),
        cond1b: cycle_condition(bad_sections),
        cond2,
        exhaustive,
    }
}

/// Which closed-form edge count formula a prediction comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountRule {
    /// `2 | n`: `|Phi|^2` positive edges.
    Prop31Even,
    /// `p >= 3`: `|Phi|^2` positive edges, the rest negative.
    Prop31Odd,
    /// `n = p^a`, `p >= 3`: `p^(a-1) |Phi|` negative edges.
    Lemma33,
    /// `n = p q` with distinct odd primes: `|Phi| (2p + q - 3)` negative edges.
    Lemma36,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountPrediction {
    pub applicable_rule: CountRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_positive: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_negative: Option<u64>,
}

pub fn phi_size(spec: &GroupSpec) -> u64 {
    (spec.p - 1) * spec.n_factors.totient()
}

pub fn total_edges(spec: &GroupSpec) -> u64 {
    spec.order() * phi_size(spec) / 2
}

/// Every closed-form prediction whose hypotheses hold for `spec`. Overlapping
/// rules are all reported; none of them is trusted over another here.
pub fn predicted_counts(spec: &GroupSpec) -> Vec<CountPrediction> {
    let p = spec.p;
    let phi = phi_size(spec);
    let total = total_edges(spec);
    let mut out = Vec::new();

    if spec.has_factor_two() {
        out.push(CountPrediction {
            applicable_rule: CountRule::Prop31Even,
            predicted_positive: Some(phi * phi),
            predicted_negative: None,
        });
    }
    if p >= 3 {
        out.push(CountPrediction {
            applicable_rule: CountRule::Prop31Odd,
            predicted_positive: Some(phi * phi),
            predicted_negative: Some(total.saturating_sub(phi * phi)),
        });
        if spec.n_factors.is_prime_power() {
            let alpha = spec.n_factors.exponent_of(p);
            out.push(CountPrediction {
                applicable_rule: CountRule::Lemma33,
                predicted_positive: None,
                predicted_negative: Some(p.pow(alpha - 1) * phi),
            });
        }
        let f = &spec.n_factors;
        if f.factors.len() == 2 && f.is_squarefree() && !f.has_prime(2) {
            let q = f.primes().find(|&q| q != p).unwrap();
            out.push(CountPrediction {
                applicable_rule: CountRule::Lemma36,
                predicted_positive: None,
                predicted_negative: Some(phi * (2 * p + q - 3)),
            });
        }
    }
    if out.is_empty() {
        out.push(CountPrediction {
            applicable_rule: CountRule::None,
            predicted_positive: None,
            predicted_negative: None,
        });
    }
    out
}

/// Balance verdict of the line sigraph, decided directly on `L(g)`.
pub fn line_balance(g: &Sigraph) -> BalanceReport {
    check_balance(&g.line_sigraph())
}

/// Each connected component with its induced sub-sigraph.
pub fn component_subgraphs(g: &Sigraph) -> Result<Vec<(Vec<usize>, Sigraph)>> {
    g.components()
        .members
        .into_iter()
        .map(|m| g.induced_subgraph(&m).map(|s| (m, s)))
        .collect()
}
