//! Analysis documents and claim-by-claim verification over instance sweeps.
//!
//! Observed values always come from the deciders in [`crate::analysis`] or
//! the oracles in [`crate::oracle`]; predicted values come from closed forms
//! and theorem statements. A disagreement is a finding and is reported as
//! such, never corrected.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    check_balance, check_clusterability, check_line_balance_conditions, check_sign_compatibility,
    phi_size, predicted_counts, BalanceReport, ClusterReport, CompatReport, CountPrediction,
    CountRule, LineConditionReport,
};
use crate::arith::{is_prime, nonunit_runs, RunReport};
use crate::cayley::{build_sigraph, GroupSpec};
use crate::error::{Error, Result};
use crate::oracle::{
    balance_by_cycles, clusterability_by_cycles, sign_compat_exhaustive, DEFAULT_CYCLE_LIMIT,
    DEFAULT_MARKING_LIMIT,
};
use crate::sigraph::{Cycle, Edge, EdgeCounts, Sigraph};

pub const DEFAULT_SWEEP_MAX: u64 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Largest vertex count for simple-cycle enumeration.
    pub cycle_limit: usize,
    /// Largest vertex count for exhaustive marking search.
    pub marking_limit: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            cycle_limit: DEFAULT_CYCLE_LIMIT,
            marking_limit: DEFAULT_MARKING_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpecRecord {
    pub p: u64,
    pub n: u64,
}

impl From<&GroupSpec> for SpecRecord {
    fn from(s: &GroupSpec) -> Self {
        SpecRecord { p: s.p, n: s.n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub u: u64,
    pub v: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBalance {
    /// Verdict of the balance decider run on the line sigraph itself.
    pub balanced: bool,
    pub line_vertices: usize,
    pub line_edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_cycle: Option<Cycle>,
    pub conditions: LineConditionReport,
    /// Whether the condition report agrees with `balanced`; absent when the
    /// conditions were inconclusive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions_agree: Option<bool>,
}

/// Oracle verdicts; each is absent when the instance is above its gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OracleChecks {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balanced: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clusterable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compatible: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub spec: SpecRecord,
    pub counts: EdgeCounts,
    pub components: Vec<usize>,
    pub balance: BalanceReport,
    pub clusters: ClusterReport,
    pub compat: CompatReport,
    pub line_balance: LineBalance,
    pub lambda: RunReport,
    pub predictions: Vec<CountPrediction>,
    pub oracle: OracleChecks,
}

/// Top-level JSON form of an instance: the graph, optionally with its analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub spec: SpecRecord,
    pub phi_size: u64,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisDocument>,
}

impl GraphDocument {
    pub fn new(spec: &GroupSpec, g: &Sigraph, analysis: Option<AnalysisDocument>) -> Self {
        GraphDocument {
            spec: spec.into(),
            phi_size: phi_size(spec),
            vertices: (0..g.vertex_count())
                .map(|id| {
                    let w = spec.vertex(id);
                    VertexRecord { id, u: w.u, v: w.v }
                })
                .collect(),
            edges: g.edges().to_vec(),
            analysis,
        }
    }

    /// Rebuilds the sigraph described by the document.
    pub fn to_sigraph(&self) -> Result<Sigraph> {
        let labels = self
            .vertices
            .iter()
            .map(|w| format!("({},{})", w.u, w.v))
            .collect();
        Sigraph::new(
            self.vertices.len(),
            self.edges.iter().map(|e| (e.a, e.b, e.sign)),
        )?
        .with_labels(labels)
    }
}

/// Runs `check` on the whole graph if it fits under `limit`, otherwise on each
/// component separately provided every component fits. A property quantified
/// over cycles holds for a graph iff it holds on each component.
fn per_component(
    g: &Sigraph,
    limit: usize,
    check: impl Fn(&Sigraph, usize) -> Result<bool>,
) -> Result<Option<bool>> {
    if g.vertex_count() <= limit {
        return check(g, limit).map(Some);
    }
    let comps = g.components();
    if comps.members.iter().any(|m| m.len() > limit) {
        return Ok(None);
    }
    for m in &comps.members {
        if !check(&g.induced_subgraph(m)?, limit)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

pub fn oracle_checks(g: &Sigraph, options: &AnalysisOptions) -> Result<OracleChecks> {
    Ok(OracleChecks {
        balanced: per_component(g, options.cycle_limit, balance_by_cycles)?,
        clusterable: per_component(g, options.cycle_limit, clusterability_by_cycles)?,
        compatible: per_component(g, options.marking_limit, sign_compat_exhaustive)?,
    })
}

pub fn analyze_graph(
    spec: &GroupSpec,
    g: &Sigraph,
    options: &AnalysisOptions,
) -> Result<AnalysisDocument> {
    let line = g.line_sigraph();
    let line_report = check_balance(&line);
    let conditions = check_line_balance_conditions(g, options.cycle_limit);
    let conditions_agree = conditions.verdict().map(|v| v == line_report.balanced);
    Ok(AnalysisDocument {
        spec: spec.into(),
        counts: g.edge_counts(),
        components: g.components().sizes(),
        balance: check_balance(g),
        clusters: check_clusterability(g),
        compat: check_sign_compatibility(g),
        line_balance: LineBalance {
            balanced: line_report.balanced,
            line_vertices: line.vertex_count(),
            line_edges: line.edge_count(),
            witness_cycle: line_report.witness_cycle,
            conditions,
            conditions_agree,
        },
        lambda: nonunit_runs(spec.n)?,
        predictions: predicted_counts(spec),
        oracle: oracle_checks(g, options)?,
    })
}

pub fn analyze(spec: &GroupSpec, options: &AnalysisOptions) -> Result<AnalysisDocument> {
    analyze_graph(spec, &build_sigraph(spec), options)
}

/// Every valid `(p, n)` with `p * n <= max_order`, ordered by `(p, n)`.
pub fn sweep_specs(max_order: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for p in (2..=max_order).filter(|&p| is_prime(p)) {
        let mut n = p;
        while p * n <= max_order {
            out.push(GroupSpec::new(p, n).expect("p is prime and divides n"));
            n += p;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClaimId {
    #[serde(rename = "PROP31_EVEN")]
    Prop31Even,
    #[serde(rename = "PROP31_ODD")]
    Prop31Odd,
    #[serde(rename = "LEM33")]
    Lem33,
    #[serde(rename = "LEM36")]
    Lem36,
    #[serde(rename = "THM37")]
    Thm37,
    #[serde(rename = "THM39")]
    Thm39,
    #[serde(rename = "THM311")]
    Thm311,
    #[serde(rename = "SIGNCOMPAT")]
    SignCompat,
    #[serde(rename = "REMARK35")]
    Remark35,
}

impl ClaimId {
    pub const ALL: [ClaimId; 9] = [
        ClaimId::Prop31Even,
        ClaimId::Prop31Odd,
        ClaimId::Lem33,
        ClaimId::Lem36,
        ClaimId::Thm37,
        ClaimId::Thm39,
        ClaimId::Thm311,
        ClaimId::SignCompat,
        ClaimId::Remark35,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Prop31Even => "PROP31_EVEN",
            ClaimId::Prop31Odd => "PROP31_ODD",
            ClaimId::Lem33 => "LEM33",
            ClaimId::Lem36 => "LEM36",
            ClaimId::Thm37 => "THM37",
            ClaimId::Thm39 => "THM39",
            ClaimId::Thm311 => "THM311",
            ClaimId::SignCompat => "SIGNCOMPAT",
            ClaimId::Remark35 => "REMARK35",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClaimId> {
        let wanted = s.trim().to_ascii_uppercase();
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == wanted)
            .ok_or_else(|| Error::InvalidInput(format!("unknown claim id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Count(u64),
    Flag(bool),
    Runs { lambda: u64, maximal_runs: usize },
}

impl fmt::Display for ClaimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimValue::Count(c) => write!(f, "{c}"),
            ClaimValue::Flag(b) => write!(f, "{b}"),
            ClaimValue::Runs {
                lambda,
                maximal_runs,
            } => write!(f, "lambda={lambda},runs={maximal_runs}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimStatus {
    Agree,
    Disagree,
    NotApplicable,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Agree => "AGREE",
            ClaimStatus::Disagree => "DISAGREE",
            ClaimStatus::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim_id: ClaimId,
    pub instance: SpecRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<ClaimValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<ClaimValue>,
    pub status: ClaimStatus,
    /// Independent confirmation of the observed value by an exhaustive
    /// oracle, when the instance is within its gate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_confirms: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimVerdict {
    fn compare(
        claim_id: ClaimId,
        instance: SpecRecord,
        predicted: ClaimValue,
        observed: ClaimValue,
    ) -> Self {
        ClaimVerdict {
            claim_id,
            instance,
            predicted: Some(predicted),
            observed: Some(observed),
            status: if predicted == observed {
                ClaimStatus::Agree
            } else {
                ClaimStatus::Disagree
            },
            oracle_confirms: None,
            note: None,
        }
    }

    fn not_applicable(claim_id: ClaimId, instance: SpecRecord, reason: impl Into<String>) -> Self {
        ClaimVerdict {
            claim_id,
            instance,
            predicted: None,
            observed: None,
            status: ClaimStatus::NotApplicable,
            oracle_confirms: None,
            note: Some(reason.into()),
        }
    }

    fn confirmed_by(mut self, oracle: Option<bool>) -> Self {
        if let (Some(o), Some(ClaimValue::Flag(obs))) = (oracle, self.observed) {
            self.oracle_confirms = Some(o == obs);
        }
        self
    }
}

fn prediction(doc: &AnalysisDocument, rule: CountRule) -> Option<CountPrediction> {
    doc.predictions
        .iter()
        .copied()
        .find(|p| p.applicable_rule == rule)
}

/// Odd prime `q != p` with `n = p q`, both primes at least 3.
fn two_odd_prime_cofactor(spec: &GroupSpec) -> Option<u64> {
    let f = &spec.n_factors;
    if spec.p >= 3 && f.factors.len() == 2 && f.is_squarefree() && !f.has_prime(2) {
        f.primes().find(|&q| q != spec.p)
    } else {
        None
    }
}

/// Evaluates one claim on one analyzed instance.
pub fn evaluate_claim(claim: ClaimId, spec: &GroupSpec, doc: &AnalysisDocument) -> ClaimVerdict {
    let inst = SpecRecord::from(spec);
    let even = spec.has_factor_two();
    let count_claim = |rule: CountRule, why: &str| match prediction(doc, rule) {
        Some(CountPrediction {
            predicted_positive: Some(pos),
            ..
        }) if matches!(rule, CountRule::Prop31Even | CountRule::Prop31Odd) => {
            ClaimVerdict::compare(
                claim,
                inst,
                ClaimValue::Count(pos),
                ClaimValue::Count(doc.counts.positive as u64),
            )
        }
        Some(CountPrediction {
            predicted_negative: Some(neg),
            ..
        }) => ClaimVerdict::compare(
            claim,
            inst,
            ClaimValue::Count(neg),
            ClaimValue::Count(doc.counts.negative as u64),
        ),
        _ => ClaimVerdict::not_applicable(claim, inst, why),
    };

    match claim {
        ClaimId::Prop31Even => count_claim(CountRule::Prop31Even, "n is odd"),
        ClaimId::Prop31Odd => count_claim(CountRule::Prop31Odd, "p = 2"),
        ClaimId::Lem33 => count_claim(CountRule::Lemma33, "n is not a power of an odd p"),
        ClaimId::Lem36 => count_claim(CountRule::Lemma36, "n is not p q with distinct odd primes"),
        ClaimId::Thm37 => ClaimVerdict::compare(
            claim,
            inst,
            ClaimValue::Flag(even),
            ClaimValue::Flag(doc.balance.balanced),
        )
        .confirmed_by(doc.oracle.balanced),
        ClaimId::Thm39 => {
            let mut v = ClaimVerdict::compare(
                claim,
                inst,
                ClaimValue::Flag(even),
                ClaimValue::Flag(doc.line_balance.balanced),
            );
            v.oracle_confirms = doc.line_balance.conditions_agree;
            v
        }
        ClaimId::Thm311 => ClaimVerdict::compare(
            claim,
            inst,
            ClaimValue::Flag(doc.balance.balanced),
            ClaimValue::Flag(doc.clusters.clusterable),
        )
        .confirmed_by(doc.oracle.clusterable),
        ClaimId::SignCompat => ClaimVerdict::compare(
            claim,
            inst,
            ClaimValue::Flag(true),
            ClaimValue::Flag(doc.compat.compatible),
        )
        .confirmed_by(doc.oracle.compatible),
        ClaimId::Remark35 => match two_odd_prime_cofactor(spec) {
            Some(_) => ClaimVerdict::compare(
                claim,
                inst,
                ClaimValue::Runs {
                    lambda: 2,
                    maximal_runs: 2,
                },
                ClaimValue::Runs {
                    lambda: doc.lambda.lambda,
                    maximal_runs: doc.lambda.maximal_run_count(),
                },
            ),
            None => {
                ClaimVerdict::not_applicable(claim, inst, "n is not p q with distinct odd primes")
            }
        },
    }
}

/// Verdicts for `claims` on one instance. Claims whose hypotheses do not hold
/// are kept as NOT_APPLICABLE rows only when `keep_inapplicable` is set.
pub fn verify_instance(
    spec: &GroupSpec,
    doc: &AnalysisDocument,
    claims: &[ClaimId],
    keep_inapplicable: bool,
) -> Vec<ClaimVerdict> {
    claims
        .iter()
        .map(|&c| evaluate_claim(c, spec, doc))
        .filter(|v| keep_inapplicable || v.status != ClaimStatus::NotApplicable)
        .collect()
}

pub fn verify_specs(
    specs: &[GroupSpec],
    claims: &[ClaimId],
    keep_inapplicable: bool,
    options: &AnalysisOptions,
) -> Result<Vec<ClaimVerdict>> {
    let mut out = Vec::new();
    for spec in specs {
        let doc = analyze(spec, options)?;
        out.extend(verify_instance(spec, &doc, claims, keep_inapplicable));
    }
    Ok(out)
}
