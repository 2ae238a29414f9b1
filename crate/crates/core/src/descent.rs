//! Lifting principalized presentations through the blowup `π: Y_1 → Y` of
//! the base point, and classifying the lifts against the toroidal templates.
//!
//! Points of the exceptional curve `F = π^{-1}(q)` are described by the
//! slope of `v/u`: the origin of the `u`-chart (`v = u v_1`), the origin of
//! the `v`-chart (`u = u_1 v`), or a generic point `v/u = α ≠ 0`. Only this
//! combinatorial descriptor is tracked, never the value of `α`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{DescentError, DriverError, RoundError};
use crate::forms::{is_principal, match_template, ChartContext, EBranchData, LocalForm, MonomialPresentation, ToroidalTemplate};
use crate::principalize::{PresentationId, Scenario, Trace};
use crate::row::{rank2, ExponentRow};

/// A point of the exceptional curve, by the slope `v/u` there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slope {
    /// `v/u = 0`: origin of the chart `u_1 = u`, `v_1 = v/u`.
    Zero,
    /// `u/v = 0`: origin of the chart `u_1 = u/v`, `v_1 = v`.
    Infinite,
    /// `v/u = α` with `α ≠ 0`.
    Generic,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slope::Zero => "[1:0]",
            Slope::Infinite => "[0:1]",
            Slope::Generic => "[1:α]",
        })
    }
}

/// Branches of `π^{-1}(E_i)` through a point of `F`, given the number of
/// branches of `E_i` through `q`.
///
/// `E_i` is `u = 0` (one branch) or `uv = 0` (two). Away from `q` it is
/// unchanged, so with no branch at `q` nothing of it meets `F`. Otherwise
/// `F` itself is a branch everywhere, the strict transform of `u = 0` passes
/// through the `v`-chart origin and that of `v = 0` through the `u`-chart
/// origin.
pub fn chart_branches_at(at_q: u8, image: Slope) -> u8 {
    match (at_q, image) {
        (0, _) => 0,
        (1, Slope::Infinite) => 2,
        (1, _) => 1,
        (_, Slope::Generic) => 1,
        (_, _) => 2,
    }
}

/// The divisor data at a base point: how many branches each chart divisor
/// has there, and where the strict transform of the global divisor `E`
/// meets the exceptional curve of its blowup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePoint {
    pub chart_branches: Vec<u8>,
    pub e_prime: BTreeSet<Slope>,
}

impl BasePoint {
    /// `E` is taken to be no larger than the chart divisors force it to be.
    pub fn from_charts(chart_branches: Vec<u8>) -> BasePoint {
        let e_prime = match chart_branches.iter().max().copied().unwrap_or(0) {
            0 => BTreeSet::new(),
            1 => BTreeSet::from([Slope::Infinite]),
            _ => BTreeSet::from([Slope::Zero, Slope::Infinite]),
        };
        BasePoint {
            chart_branches,
            e_prime,
        }
    }

    pub fn new(chart_branches: Vec<u8>, e_prime: BTreeSet<Slope>) -> Result<BasePoint, DescentError> {
        let b = BasePoint {
            chart_branches,
            e_prime,
        };
        b.validate()?;
        Ok(b)
    }

    /// Branch data of a scenario's charts, read off its presentations.
    /// A chart with no presentations counts one branch if `q ∈ E_i`.
    pub fn of_scenario(s: &Scenario) -> Vec<u8> {
        (1..=s.m_charts())
            .map(|chart| {
                s.nodes()
                    .iter()
                    .filter(|n| n.parent.is_none() && n.presentation.context().chart_index == chart)
                    .map(|n| n.presentation.form().base_branches())
                    .max()
                    .unwrap_or(u8::from(s.q_in_e()[chart - 1]))
            })
            .collect()
    }

    /// Every chart divisor must lie in `E`, and `E` has at most two
    /// branches at `q`.
    pub fn validate(&self) -> Result<(), DescentError> {
        if self.e_prime.len() > 2 {
            return Err(DescentError::BasePoint(
                "E has at most two branches at q".into(),
            ));
        }
        for (idx, &b) in self.chart_branches.iter().enumerate() {
            let needed: &[Slope] = match b {
                0 => &[],
                1 => &[Slope::Infinite],
                2 => &[Slope::Zero, Slope::Infinite],
                _ => {
                    return Err(DescentError::BasePoint(format!(
                        "chart {}: {b} branches at q",
                        idx + 1
                    )))
                }
            };
            if let Some(s) = needed.iter().find(|s| !self.e_prime.contains(s)) {
                return Err(DescentError::BasePoint(format!(
                    "chart {} divisor has a branch through {s} that E misses",
                    idx + 1
                )));
            }
        }
        Ok(())
    }

    pub fn q_in_e(&self) -> Vec<bool> {
        self.chart_branches.iter().map(|&b| b > 0).collect()
    }

    /// Branches of `π^{-1}(E) = F + Ẽ` through `image`.
    pub fn global_branches(&self, image: Slope) -> u8 {
        1 + u8::from(self.e_prime.contains(&image))
    }

    /// The data at `point` on the exceptional curve, as the base point of
    /// the next blowup. There `F` meets `E_1` along one direction and `Ẽ`,
    /// if it passes through, along the other.
    pub fn next(&self, point: Slope) -> BasePoint {
        let chart_branches = self
            .chart_branches
            .iter()
            .map(|&b| chart_branches_at(b, point))
            .collect();
        let mut e_prime = BTreeSet::new();
        let passes = self.e_prime.contains(&point);
        match point {
            Slope::Zero => {
                e_prime.insert(Slope::Infinite);
                if passes {
                    e_prime.insert(Slope::Zero);
                }
            }
            Slope::Infinite => {
                e_prime.insert(Slope::Zero);
                if passes {
                    e_prime.insert(Slope::Infinite);
                }
            }
            Slope::Generic => {
                e_prime.insert(Slope::Infinite);
                if passes {
                    e_prime.insert(Slope::Zero);
                }
            }
        }
        BasePoint {
            chart_branches,
            e_prime,
        }
    }
}

/// A principal presentation rewritten in the regular parameters `u_1, v_1`
/// of `Y_1` at its image point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedPresentation {
    pub source: Option<PresentationId>,
    pub chart_index: usize,
    pub image: Slope,
    /// `u_1, v_1` as a presentation, usable as input of the next round.
    pub lifted: MonomialPresentation,
    /// Branches of `π^{-1}(E_i)` at the image point.
    pub chart_branches: u8,
    /// Template with respect to `π^{-1}(E_i)` (or `F` alone when that is
    /// empty).
    pub template: ToroidalTemplate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remark: Option<String>,
}

fn to_f5_or_f4(u: ExponentRow, v: ExponentRow) -> LocalForm {
    if rank2(&u, &v) == 2 {
        LocalForm::F5 { u, v }
    } else {
        // proportional: u = (x^g)^m, v = (x^g)^t
        let (g, m) = u.primitive_part().expect("u nonzero");
        let t = v.gcd();
        LocalForm::f4(g, m, t)
    }
}

/// The substitution `u = u_1`, `v = u_1 v_1` or `u = u_1 v_1`, `v = v_1`,
/// whichever the divisibility of `u` and `v` allows (the first when both
/// do).
pub fn lift(p: &MonomialPresentation) -> Result<LiftedPresentation, DescentError> {
    if !is_principal(p) {
        return Err(DescentError::NotPrincipal(p.to_string()));
    }
    let mut remark = None;
    let (form, image) = match p.form() {
        LocalForm::F1 { u, .. } => {
            // principal forces a = b; v/u = x_{k+1}
            (
                LocalForm::F1 {
                    u: u.clone(),
                    v: ExponentRow::zeros(u.len()),
                },
                Slope::Zero,
            )
        }
        LocalForm::F2 { u, v } => {
            let d = u.checked_sub(v).expect("b <= a");
            (LocalForm::F5 { u: d, v: v.clone() }, Slope::Infinite)
        }
        LocalForm::F3 { u, v } => {
            let d = u.checked_sub(v).expect("b <= a");
            if d.is_zero() {
                // u/v = (x_{k+1} + α)^{-1} is a unit: v_1 = u/v - 1/α is a new
                // variable and u_1 = v
                (
                    LocalForm::F1 {
                        u: u.clone(),
                        v: ExponentRow::zeros(u.len()),
                    },
                    Slope::Generic,
                )
            } else {
                (to_f5_or_f4(d, v.clone()), Slope::Infinite)
            }
        }
        LocalForm::F4 { g, m, t } => match m.cmp(t) {
            std::cmp::Ordering::Less => (LocalForm::f4(g.clone(), m.clone(), t - m), Slope::Zero),
            std::cmp::Ordering::Equal => (
                LocalForm::F1 {
                    u: g.scaled(m),
                    v: ExponentRow::zeros(g.len()),
                },
                Slope::Generic,
            ),
            std::cmp::Ordering::Greater => (LocalForm::f4(g.clone(), m - t, t.clone()), Slope::Infinite),
        },
        LocalForm::F5 { u, v } => {
            remark = Some("comparable monomial pair of rank 2, classified by structure as T3".to_string());
            if let Some(d) = v.checked_sub(u) {
                (LocalForm::F5 { u: u.clone(), v: d }, Slope::Zero)
            } else {
                let d = u.checked_sub(v).expect("principal");
                (LocalForm::F5 { u: d, v: v.clone() }, Slope::Infinite)
            }
        }
        LocalForm::F7 { alpha_nonzero } => (
            LocalForm::F6,
            if *alpha_nonzero { Slope::Generic } else { Slope::Zero },
        ),
        LocalForm::F8 => (LocalForm::F6, Slope::Infinite),
        LocalForm::F6 => unreachable!("F6 is never principal"),
    };
    let ctx = p.context();
    let at_q = p.form().base_branches();
    let chart_branches = chart_branches_at(at_q, image);
    let lifted = MonomialPresentation::new(
        form,
        p.n(),
        ChartContext::new(ctx.chart_index, chart_branches > 0),
    )?;
    debug_assert_eq!(lifted.form().base_branches(), chart_branches);
    let template = match_template(
        &lifted,
        &EBranchData {
            branch_count: chart_branches.max(1),
            chart_branches,
        },
    )?;
    Ok(LiftedPresentation {
        source: None,
        chart_index: ctx.chart_index,
        image,
        lifted,
        chart_branches,
        template,
        remark,
    })
}

/// Classifies a lift against the whole divisor `π^{-1}(E)`.
///
/// Where the chart divisor and `π^{-1}(E)` agree the template is kept. At a
/// 2-point of `π^{-1}(E)` where the chart divisor has at most one branch,
/// `u_1 = x^a` and the second branch `ṽ = 0` of `E` extend to regular
/// parameters, giving T3 with rows `(a, 0)` and `(0, 1)`.
pub fn classify_global(l: &LiftedPresentation, e: &EBranchData) -> Result<ToroidalTemplate, DescentError> {
    if !(1..=2).contains(&e.branch_count) {
        return Err(DescentError::NoTemplateMatch(format!(
            "E must have 1 or 2 branches at the image point, not {}",
            e.branch_count
        )));
    }
    let out = if l.template.branches() == e.branch_count {
        l.template.clone()
    } else {
        match &l.template {
            ToroidalTemplate::T1 { row } if e.branch_count == 2 && e.chart_branches <= 1 => ToroidalTemplate::T3 {
                u: row.with_appended(BigUint::from(0u32)),
                v: ExponentRow::zeros(row.len()).with_appended(BigUint::from(1u32)),
            },
            t => {
                return Err(DescentError::NoTemplateMatch(format!(
                    "{t} at a point where E has {} branch(es)",
                    e.branch_count
                )))
            }
        }
    };
    out.check().map_err(DescentError::NoTemplateMatch)?;
    Ok(out)
}

/// One leaf of a principalized scenario, lifted and classified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafReport {
    pub id: PresentationId,
    pub presentation: MonomialPresentation,
    pub lift: LiftedPresentation,
    pub e: EBranchData,
    pub template: ToroidalTemplate,
}

/// Lifts and classifies every leaf of a principalized scenario.
pub fn descend(s: &Scenario, base: &BasePoint) -> Result<Vec<LeafReport>, DescentError> {
    if let Some((id, p)) = s.active().next() {
        return Err(DescentError::NotPrincipal(format!("{id} {p}")));
    }
    let mut out = Vec::new();
    for node in s.leaves() {
        let mut lift = lift(&node.presentation)?;
        lift.source = Some(node.id);
        let e = EBranchData {
            branch_count: base.global_branches(lift.image),
            chart_branches: lift.chart_branches,
        };
        let template = classify_global(&lift, &e)?;
        out.push(LeafReport {
            id: node.id,
            presentation: node.presentation.clone(),
            lift,
            e,
            template,
        });
    }
    Ok(out)
}

/// The next round's presentations: the lifts of the leaves imaged at
/// `point`.
pub fn next_presentations(leaves: &[LeafReport], point: Slope) -> Vec<MonomialPresentation> {
    leaves
        .iter()
        .filter(|l| l.lift.image == point)
        .map(|l| l.lift.lifted.clone())
        .collect()
}

/// One round: principalize at the base point, then lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub round: usize,
    pub base: BasePoint,
    pub trace: Trace,
    pub leaves: Vec<LeafReport>,
}

/// Step budget per round: explicit, or the scenario's default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RoundBudget(pub Option<usize>);

/// Principalizes and lifts, then for each entry of `y_blowups` repeats with
/// the lifts imaged at that point as the new initial data.
pub fn run_rounds(
    n: usize,
    base: BasePoint,
    presentations: Vec<MonomialPresentation>,
    y_blowups: &[Slope],
    budget: RoundBudget,
) -> Result<Vec<Round>, RoundError> {
    let mut rounds = Vec::new();
    let mut base = base;
    let mut presentations = presentations;
    for round in 0..=y_blowups.len() {
        let r = run_one_round(round, n, &base, presentations, budget)?;
        if let Some(&point) = y_blowups.get(round) {
            presentations = next_presentations(&r.leaves, point);
            base = base.next(point);
        } else {
            presentations = Vec::new();
        }
        rounds.push(r);
    }
    Ok(rounds)
}

/// Builds, runs and lifts one round.
pub fn run_one_round(
    round: usize,
    n: usize,
    base: &BasePoint,
    presentations: Vec<MonomialPresentation>,
    budget: RoundBudget,
) -> Result<Round, RoundError> {
    let (r, err) = attempt_round(round, n, base, presentations, budget);
    match err {
        Some(e) => Err(e),
        None => Ok(r),
    }
}

/// Like [`run_one_round`], but keeps whatever was recorded before a
/// failure: the partial trace when the budget runs out, the full trace when
/// a lift fails.
pub fn attempt_round(
    round: usize,
    n: usize,
    base: &BasePoint,
    presentations: Vec<MonomialPresentation>,
    budget: RoundBudget,
) -> (Round, Option<RoundError>) {
    let mut out = Round {
        round,
        base: base.clone(),
        trace: Trace::default(),
        leaves: Vec::new(),
    };
    let descent = |source| RoundError::Descent { round, source };
    let driver = |source| RoundError::Driver { round, source };
    if let Err(e) = base.validate() {
        return (out, Some(descent(e)));
    }
    let mut s = match Scenario::new(n, base.q_in_e(), presentations) {
        Ok(s) => s,
        Err(e) => return (out, Some(driver(e))),
    };
    out.trace = s.trace().clone();
    for node in s.nodes() {
        let chart = node.presentation.context().chart_index;
        let b = node.presentation.form().base_branches();
        if b != base.chart_branches[chart - 1] {
            let e = DriverError::Scenario(format!(
                "{}: chart {chart} has {} divisor branch(es) at q, the presentation {b}",
                node.id,
                base.chart_branches[chart - 1]
            ));
            return (out, Some(driver(e)));
        }
    }
    let max = budget.0.unwrap_or_else(|| s.default_budget());
    let ran = s.run(max).map(|_| ()).map_err(driver);
    out.trace = s.trace().clone();
    if let Err(e) = ran {
        return (out, Some(e));
    }
    match descend(&s, base) {
        Ok(leaves) => {
            out.leaves = leaves;
            (out, None)
        }
        Err(e) => (out, Some(descent(e))),
    }
}
