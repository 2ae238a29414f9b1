//! The principalization driver.
//!
//! Charts are processed in index order. In a chart whose divisor misses
//! `q` any center may be blown up; otherwise centers of maximal `Ω` go
//! first, and once no F1 center is left, centers of maximal `ω`. Each step
//! blows up one center on one presentation and replaces it by its
//! descendants; principal descendants become leaves and are never touched
//! again.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::DriverError;
use crate::forms::{is_principal, MonomialPresentation};
use crate::invariants::{center_value, enumerate_centers, locus_report, ChartMaxima, InvariantKind, LocusReport};
use crate::row::exponent_serde;
use crate::transform::{blowup, Center, ChartLabel};

/// Stable identifier of a presentation within one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PresentationId(pub usize);

impl fmt::Display for PresentationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NodeStatus {
    /// Non-principal, waiting for a center through it to be blown up.
    Active,
    /// Principal; final.
    Leaf,
    /// Replaced by its descendants at the given step.
    Blown { step: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: PresentationId,
    pub parent: Option<PresentationId>,
    pub label: Option<ChartLabel>,
    pub presentation: MonomialPresentation,
    pub status: NodeStatus,
}

/// Which rule selected a step's center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Chart divisor misses `q`: any center.
    NotInE,
    /// Maximal `Ω` on a 1-point center.
    BigOmega,
    /// Maximal `ω` on a 2-point center, after `Ω` reached 0.
    SmallOmega,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialRecord {
    pub id: PresentationId,
    pub presentation: MonomialPresentation,
    pub principal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendantRecord {
    pub id: PresentationId,
    pub label: ChartLabel,
    pub presentation: MonomialPresentation,
    pub principal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub index: usize,
    pub chart_index: usize,
    pub phase: Phase,
    pub parent: PresentationId,
    pub parent_presentation: MonomialPresentation,
    pub center: Center,
    /// Invariant value of the targeted center.
    #[serde(with = "exponent_serde")]
    pub value: BigUint,
    pub before: ChartMaxima,
    pub after: ChartMaxima,
    pub descendants: Vec<DescendantRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Trace {
    pub initial: Vec<InitialRecord>,
    pub steps: Vec<TraceStep>,
    pub terminal_report: Option<LocusReport>,
}

/// The full symbolic state of a principalization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    n: usize,
    q_in_e: Vec<bool>,
    nodes: Vec<Node>,
    history: Trace,
}

impl Scenario {
    /// Checks chart indices, dimensions and chart consistency, then marks
    /// each presentation active or principal.
    pub fn new(
        n: usize,
        q_in_e: Vec<bool>,
        presentations: Vec<MonomialPresentation>,
    ) -> Result<Scenario, DriverError> {
        if q_in_e.is_empty() {
            return Err(DriverError::Scenario("at least one chart is required".into()));
        }
        let mut chart_kind: Vec<Option<u8>> = vec![None; q_in_e.len()];
        for (idx, p) in presentations.iter().enumerate() {
            let ctx = p.context();
            if ctx.chart_index == 0 || ctx.chart_index > q_in_e.len() {
                return Err(DriverError::Scenario(format!(
                    "presentation {idx}: chart index {} outside 1..={}",
                    ctx.chart_index,
                    q_in_e.len()
                )));
            }
            if ctx.q_in_e != q_in_e[ctx.chart_index - 1] {
                return Err(DriverError::Scenario(format!(
                    "presentation {idx}: chart {} has q_in_e = {}",
                    ctx.chart_index,
                    q_in_e[ctx.chart_index - 1]
                )));
            }
            if p.n() != n {
                return Err(DriverError::Scenario(format!(
                    "presentation {idx}: ambient dimension {} differs from n = {n}",
                    p.n()
                )));
            }
            let kind = p.form().base_branches();
            match chart_kind[ctx.chart_index - 1] {
                Some(k) if k != kind => {
                    return Err(DriverError::Scenario(format!(
                        "presentation {idx}: chart {} mixes forms with 1 and 2 divisor branches at q",
                        ctx.chart_index
                    )))
                }
                _ => chart_kind[ctx.chart_index - 1] = Some(kind),
            }
        }
        let nodes: Vec<Node> = presentations
            .into_iter()
            .enumerate()
            .map(|(i, presentation)| Node {
                id: PresentationId(i),
                parent: None,
                label: None,
                status: if is_principal(&presentation) {
                    NodeStatus::Leaf
                } else {
                    NodeStatus::Active
                },
                presentation,
            })
            .collect();
        let history = Trace {
            initial: nodes
                .iter()
                .map(|node| InitialRecord {
                    id: node.id,
                    presentation: node.presentation.clone(),
                    principal: node.status == NodeStatus::Leaf,
                })
                .collect(),
            steps: Vec::new(),
            terminal_report: None,
        };
        Ok(Scenario {
            n,
            q_in_e,
            nodes,
            history,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_charts(&self) -> usize {
        self.q_in_e.len()
    }

    pub fn q_in_e(&self) -> &[bool] {
        &self.q_in_e
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: PresentationId) -> Option<&Node> {
        self.nodes.get(id.0)
    }

    pub fn trace(&self) -> &Trace {
        &self.history
    }

    /// Non-principal presentations still awaiting a blowup.
    pub fn active(&self) -> impl Iterator<Item = (PresentationId, &MonomialPresentation)> {
        self.nodes
            .iter()
            .filter(|n| n.status == NodeStatus::Active)
            .map(|n| (n.id, &n.presentation))
    }

    /// Principal presentations that were never blown up.
    pub fn leaves(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(|n| n.status == NodeStatus::Leaf)
    }

    /// Default step budget: `16 · (ω_max + Ω_max + 1) · (presentations + 1)`.
    pub fn default_budget(&self) -> usize {
        let report = locus_report(self);
        let weight = (&report.omega_max + &report.bigomega_max + 1u32)
            .to_usize()
            .unwrap_or(usize::MAX);
        16usize
            .saturating_mul(weight)
            .saturating_mul(self.nodes.len() + 1)
    }

    /// Picks the next center by the phase policy.
    pub fn select(&self) -> Option<(PresentationId, Center, Phase)> {
        let report = locus_report(self);
        select_from_report(&report, &self.q_in_e)
    }

    /// Performs one blowup.
    pub fn step(&mut self) -> Result<&TraceStep, DriverError> {
        let (id, center, phase) = self.select().ok_or(DriverError::NoCenter)?;
        let parent = self.nodes[id.0].presentation.clone();
        let chart_index = parent.context().chart_index;
        let before = locus_report(self)
            .chart(chart_index)
            .cloned()
            .expect("chart present in report");
        let (_, value) = center_value(&parent, &center);
        let set = blowup(&parent, &center)?;

        let index = self.history.steps.len();
        self.nodes[id.0].status = NodeStatus::Blown { step: index };
        let mut descendants = Vec::with_capacity(set.len());
        for d in set.descendants {
            let new_id = PresentationId(self.nodes.len());
            let principal = is_principal(&d.presentation);
            descendants.push(DescendantRecord {
                id: new_id,
                label: d.label,
                presentation: d.presentation.clone(),
                principal,
            });
            self.nodes.push(Node {
                id: new_id,
                parent: Some(id),
                label: Some(d.label),
                presentation: d.presentation,
                status: if principal {
                    NodeStatus::Leaf
                } else {
                    NodeStatus::Active
                },
            });
        }
        let after = locus_report(self)
            .chart(chart_index)
            .cloned()
            .expect("chart present in report");
        self.history.steps.push(TraceStep {
            index,
            chart_index,
            phase,
            parent: id,
            parent_presentation: parent,
            center,
            value,
            before,
            after,
            descendants,
        });
        Ok(self.history.steps.last().expect("just pushed"))
    }

    /// Steps until the locus is empty or `max_steps` blowups were made.
    pub fn run(&mut self, max_steps: usize) -> Result<&Trace, DriverError> {
        let mut taken = 0;
        loop {
            let report = locus_report(self);
            if report.is_empty() {
                self.history.terminal_report = Some(report);
                return Ok(&self.history);
            }
            if taken >= max_steps {
                let remaining = report.centers.len();
                self.history.terminal_report = Some(report);
                return Err(DriverError::StepBudgetExceeded {
                    budget: max_steps,
                    remaining,
                });
            }
            self.step()?;
            taken += 1;
        }
    }
}

/// The phase policy on a precomputed report. Shared with trace
/// verification so both read the same rule.
pub fn select_from_report(report: &LocusReport, q_in_e: &[bool]) -> Option<(PresentationId, Center, Phase)> {
    let chart = report.centers.iter().map(|e| e.chart_index).min()?;
    let in_chart = report.centers.iter().filter(|e| e.chart_index == chart);
    if !q_in_e[chart - 1] {
        let e = report.centers.iter().find(|e| e.chart_index == chart)?;
        return Some((e.presentation, e.center, Phase::NotInE));
    }
    let (kind, phase) = if in_chart.clone().any(|e| e.kind == InvariantKind::BigOmega) {
        (InvariantKind::BigOmega, Phase::BigOmega)
    } else {
        (InvariantKind::SmallOmega, Phase::SmallOmega)
    };
    let candidates: Vec<_> = in_chart.filter(|e| e.kind == kind).collect();
    let max = candidates.iter().map(|e| &e.value).max()?;
    // ties: first in (presentation id, center) order, which the report is sorted by
    let e = candidates.iter().find(|e| &e.value == max)?;
    Some((e.presentation, e.center, phase))
}

/// Runs a copy of `s` to completion.
pub fn run(s: &Scenario, max_steps: usize) -> Result<(Scenario, Trace), DriverError> {
    let mut s = s.clone();
    s.run(max_steps)?;
    let trace = s.history.clone();
    Ok((s, trace))
}

/// Runs one step on a copy of `s`.
pub fn step(s: &Scenario) -> Result<Scenario, DriverError> {
    let mut s = s.clone();
    s.step()?;
    Ok(s)
}

/// Centers through a presentation, paired with their invariant values.
pub fn valued_centers(p: &MonomialPresentation) -> Vec<(Center, BigUint)> {
    enumerate_centers(p)
        .into_iter()
        .map(|c| {
            let v = center_value(p, &c).1;
            (c, v)
        })
        .collect()
}
