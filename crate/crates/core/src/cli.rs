//! The `run`, `verify` and `oracle` commands, as library functions writing
//! to caller-supplied streams. The `toroidal` binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 I/O, 2 scenario schema, 3 step budget or oracle
//! bound, 4 classification, 5 verification.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::descent::{attempt_round, classify_global, lift, next_presentations, BasePoint, Round, RoundBudget, Slope};
use crate::error::{OracleError, RoundError};
use crate::forms::{is_principal, EBranchData, LocalForm, MonomialPresentation, TemplateTag};
use crate::invariants::{center_value, enumerate_centers, InvariantKind, LocusReport};
use crate::oracle::{exhaustive_search, SearchBound, SearchResult};
use crate::principalize::{select_from_report, Phase, PresentationId};
use crate::scenario_file::{LoadError, ScenarioFile, SchemaError};
use crate::transform::{blowup, Center};

pub const TRACE_SCHEMA: &str = "toroidal-trace/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok,
    Io,
    Schema,
    Budget,
    Classification,
    Verify,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Io => 1,
            ExitStatus::Schema => 2,
            ExitStatus::Budget => 3,
            ExitStatus::Classification => 4,
            ExitStatus::Verify => 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    BudgetExceeded,
    ClassificationFailed,
    InvalidRound,
}

impl RunStatus {
    pub fn exit(self) -> ExitStatus {
        match self {
            RunStatus::Ok => ExitStatus::Ok,
            RunStatus::BudgetExceeded => ExitStatus::Budget,
            RunStatus::ClassificationFailed => ExitStatus::Classification,
            RunStatus::InvalidRound => ExitStatus::Schema,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub round: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub rounds: usize,
    pub steps: usize,
    pub leaves: usize,
    pub templates: BTreeMap<TemplateTag, usize>,
    /// Invariant maxima of the first round's initial data.
    #[serde(with = "crate::row::exponent_serde")]
    pub initial_omega_max: BigUint,
    #[serde(with = "crate::row::exponent_serde")]
    pub initial_bigomega_max: BigUint,
}

/// Everything that is a deterministic function of the scenario and flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalTrace {
    pub schema: String,
    pub scenario: ScenarioFile,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_steps: Option<usize>,
    pub status: RunStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure: Option<Failure>,
    pub rounds: Vec<Round>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub rounds_ms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub canonical: CanonicalTrace,
    pub timing: Timing,
}

impl TraceDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical).expect("trace serializes")
    }
}

fn summarize(file: &ScenarioFile, rounds: &[Round]) -> Summary {
    let initial = file
        .presentations()
        .map(|ps| {
            LocusReport::from_presentations(
                file.m_charts,
                ps.iter()
                    .enumerate()
                    .filter(|(_, p)| !is_principal(p))
                    .map(|(i, p)| (PresentationId(i), p)),
            )
        })
        .ok();
    let mut templates = BTreeMap::new();
    for leaf in rounds.iter().flat_map(|r| &r.leaves) {
        *templates.entry(leaf.template.tag()).or_insert(0) += 1;
    }
    Summary {
        rounds: rounds.len(),
        steps: rounds.iter().map(|r| r.trace.steps.len()).sum(),
        leaves: rounds.iter().map(|r| r.leaves.len()).sum(),
        templates,
        initial_omega_max: initial.as_ref().map(|r| r.omega_max.clone()).unwrap_or_default(),
        initial_bigomega_max: initial.map(|r| r.bigomega_max).unwrap_or_default(),
    }
}

/// Runs every round of a validated scenario file.
pub fn run_scenario(file: &ScenarioFile, max_steps: Option<usize>) -> TraceDocument {
    let start = Instant::now();
    let mut rounds = Vec::new();
    let mut rounds_ms = Vec::new();
    let mut status = RunStatus::Ok;
    let mut failure = None;

    let points = file.points();
    let mut base = file.base_point();
    let mut presentations = file.presentations();
    for round in 0..=points.len() {
        let t = Instant::now();
        let (b, ps) = match (base, presentations) {
            (Ok(b), Ok(ps)) => (b, ps),
            (Err(e), _) | (_, Err(e)) => {
                status = RunStatus::InvalidRound;
                failure = Some(Failure {
                    round,
                    message: e.to_string(),
                });
                break;
            }
        };
        let (r, err) = attempt_round(round, file.n, &b, ps, RoundBudget(max_steps));
        rounds_ms.push(t.elapsed().as_secs_f64() * 1e3);
        if let Some(e) = err {
            status = match &e {
                RoundError::Driver {
                    source: crate::error::DriverError::StepBudgetExceeded { .. },
                    ..
                } => RunStatus::BudgetExceeded,
                RoundError::Driver { .. } => RunStatus::InvalidRound,
                RoundError::Descent { .. } => RunStatus::ClassificationFailed,
            };
            failure = Some(Failure {
                round,
                message: e.to_string(),
            });
            rounds.push(r);
            break;
        }
        match points.get(round) {
            Some(&point) => {
                presentations = Ok(next_presentations(&r.leaves, point));
                base = Ok(b.next(point));
            }
            None => {
                presentations = Ok(Vec::new());
                base = Ok(b);
            }
        }
        rounds.push(r);
    }
    let summary = summarize(file, &rounds);
    TraceDocument {
        canonical: CanonicalTrace {
            schema: TRACE_SCHEMA.to_string(),
            scenario: file.clone(),
            max_steps,
            status,
            failure,
            rounds,
            summary,
        },
        timing: Timing {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            rounds_ms,
        },
    }
}

/// The first invariant a recorded trace violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub round: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    pub invariant: String,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "round {}", self.round)?;
        if let Some(s) = self.step {
            write!(f, ", step {s}")?;
        }
        write!(f, ": {}: {}", self.invariant, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rounds: usize,
    pub steps: usize,
    pub leaves: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Active,
    Leaf,
    Blown,
}

fn counts(values: impl IntoIterator<Item = BigUint>) -> BTreeMap<BigUint, usize> {
    let mut m = BTreeMap::new();
    for v in values {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// `a < b` in the multiset order: they differ, and every value occurring
/// more often in `a` is dominated by a larger value occurring more often in
/// `b`.
fn multiset_less(a: &BTreeMap<BigUint, usize>, b: &BTreeMap<BigUint, usize>) -> bool {
    if a == b {
        return false;
    }
    a.iter().all(|(x, &n)| {
        n <= b.get(x).copied().unwrap_or(0)
            || b
                .iter()
                .any(|(y, &m)| y > x && m > a.get(y).copied().unwrap_or(0))
    })
}

fn center_values(p: &MonomialPresentation) -> BTreeMap<BigUint, usize> {
    counts(enumerate_centers(p).iter().map(|c| center_value(p, c).1))
}

/// Replays a recorded trace and re-checks every claim it makes.
pub fn verify_trace(t: &CanonicalTrace) -> Result<VerifyReport, Violation> {
    let fail = |round: usize, step: Option<usize>, invariant: &str, detail: String| Violation {
        round,
        step,
        invariant: invariant.to_string(),
        detail,
    };
    if t.schema != TRACE_SCHEMA {
        return Err(fail(0, None, "schema", format!("unknown trace schema {:?}", t.schema)));
    }
    if t.status != RunStatus::Ok {
        let round = t.failure.as_ref().map_or(0, |f| f.round);
        return Err(fail(round, None, "run status", format!("run ended with {:?}", t.status)));
    }
    let file = &t.scenario;
    file.validate()
        .map_err(|e| fail(0, None, "scenario", e.to_string()))?;
    let points = file.points();
    if t.rounds.len() != points.len() + 1 {
        return Err(fail(
            t.rounds.len(),
            None,
            "rounds",
            format!("{} rounds recorded, {} expected", t.rounds.len(), points.len() + 1),
        ));
    }

    let mut steps_total = 0;
    let mut leaves_total = 0;
    for (r, round) in t.rounds.iter().enumerate() {
        if round.round != r {
            return Err(fail(r, None, "rounds", format!("round numbered {}", round.round)));
        }
        // base data and initial presentations follow from the previous round
        let (base, initial): (BasePoint, Vec<MonomialPresentation>) = if r == 0 {
            let b = file.base_point().map_err(|e| fail(r, None, "base point", e.to_string()))?;
            let ps = file.presentations().map_err(|e| fail(r, None, "initial data", e.to_string()))?;
            (b, ps)
        } else {
            let prev = &t.rounds[r - 1];
            let point = points[r - 1];
            (prev.base.next(point), next_presentations(&prev.leaves, point))
        };
        if round.base != base {
            return Err(fail(r, None, "base point", format!("recorded {:?}, expected {:?}", round.base, base)));
        }
        base.validate().map_err(|e| fail(r, None, "base point", e.to_string()))?;
        let q_in_e = base.q_in_e();
        let m_charts = q_in_e.len();

        let trace = &round.trace;
        let recorded: Vec<_> = trace.initial.iter().map(|i| i.presentation.clone()).collect();
        if recorded != initial {
            return Err(fail(r, None, "initial data", "initial presentations differ from the expected ones".into()));
        }
        let mut nodes: Vec<(MonomialPresentation, Status)> = Vec::new();
        for (idx, init) in trace.initial.iter().enumerate() {
            if init.id != PresentationId(idx) {
                return Err(fail(r, None, "ids", format!("initial presentation {idx} has id {}", init.id)));
            }
            let principal = is_principal(&init.presentation);
            if init.principal != principal {
                return Err(fail(r, None, "principal flag", format!("{} recorded principal = {}", init.id, init.principal)));
            }
            nodes.push((init.presentation.clone(), if principal { Status::Leaf } else { Status::Active }));
        }

        let report_of = |nodes: &[(MonomialPresentation, Status)]| {
            LocusReport::from_presentations(
                m_charts,
                nodes
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, s))| *s == Status::Active)
                    .map(|(i, (p, _))| (PresentationId(i), p)),
            )
        };

        for (s, step) in trace.steps.iter().enumerate() {
            let at = |inv: &str, detail: String| fail(r, Some(s), inv, detail);
            if step.index != s {
                return Err(at("step order", format!("step recorded with index {}", step.index)));
            }
            let pid = step.parent;
            let Some((parent, status)) = nodes.get(pid.0).cloned() else {
                return Err(at("ids", format!("unknown parent {pid}")));
            };
            match status {
                Status::Leaf => {
                    return Err(at(
                        "principality persistence",
                        format!("{pid} was principal and is blown up again"),
                    ))
                }
                Status::Blown => return Err(at("replay", format!("{pid} was already blown up"))),
                Status::Active => {}
            }
            if step.parent_presentation != parent {
                return Err(at("replay", format!("parent {pid} differs from the replayed presentation")));
            }
            if step.chart_index != parent.context().chart_index {
                return Err(at("replay", "chart index differs from the parent's".into()));
            }
            if !enumerate_centers(&parent).contains(&step.center) {
                return Err(at("center", format!("{} is not a center of {parent}", step.center)));
            }
            let (kind, value) = center_value(&parent, &step.center);
            if step.value != value {
                return Err(at("center value", format!("recorded {}, recomputed {value}", step.value)));
            }
            let report = report_of(&nodes);
            if Some(&step.before) != report.chart(step.chart_index) {
                return Err(at("chart maxima", "maxima before the step differ".into()));
            }
            if select_from_report(&report, &q_in_e) != Some((pid, step.center, step.phase)) {
                return Err(at("phase policy", format!("{pid} {} is not the policy's choice", step.center)));
            }
            let expected = blowup(&parent, &step.center).map_err(|e| at("replay", e.to_string()))?;
            if expected.len() != step.descendants.len() {
                return Err(at("replay", "wrong number of descendants".into()));
            }
            for (d, e) in step.descendants.iter().zip(expected.iter()) {
                if d.id != PresentationId(nodes.len()) {
                    return Err(at("ids", format!("descendant id {} is not fresh", d.id)));
                }
                if d.label != e.label || d.presentation != e.presentation {
                    return Err(at("replay", format!("descendant {} differs from the recomputed blowup", d.id)));
                }
                let principal = is_principal(&d.presentation);
                if d.principal != principal {
                    return Err(at("principal flag", format!("{} recorded principal = {}", d.id, d.principal)));
                }
                if !principal {
                    let closed = matches!(
                        (parent.form(), d.presentation.form()),
                        (LocalForm::F1 { .. }, LocalForm::F1 { .. }) | (LocalForm::F5 { .. }, LocalForm::F5 { .. })
                    );
                    if !closed {
                        return Err(at(
                            "closure",
                            format!("non-principal descendant {} of {} is {}", d.id, parent.tag().name(), d.presentation.tag().name()),
                        ));
                    }
                    match (step.phase, kind, &step.center, d.presentation.form()) {
                        (Phase::BigOmega, InvariantKind::BigOmega, Center::VarFree { i }, LocalForm::F1 { u, v }) => {
                            let omega = &u[*i] - &v[*i];
                            if omega + 1u32 != value {
                                return Err(at(
                                    "Ω exact drop",
                                    format!("descendant {} has Ω = {} after Ω = {value}", d.id, &u[*i] - &v[*i]),
                                ));
                            }
                        }
                        (Phase::SmallOmega, InvariantKind::SmallOmega, _, _) => {
                            let before = center_values(&parent);
                            let after = center_values(&d.presentation);
                            if after.keys().any(|x| x > &value) || !multiset_less(&after, &before) {
                                return Err(at(
                                    "ω descent",
                                    format!("descendant {} does not lower ω below {value}", d.id),
                                ));
                            }
                        }
                        _ => {}
                    }
                }
                nodes.push((d.presentation.clone(), if principal { Status::Leaf } else { Status::Active }));
            }
            nodes[pid.0].1 = Status::Blown;
            let after = report_of(&nodes);
            if Some(&step.after) != after.chart(step.chart_index) {
                return Err(at("chart maxima", "maxima after the step differ".into()));
            }
        }
        steps_total += trace.steps.len();

        let terminal = report_of(&nodes);
        if !terminal.is_empty() {
            return Err(fail(
                r,
                None,
                "final emptiness",
                format!("{} centers remain after the last step", terminal.centers.len()),
            ));
        }
        if trace.terminal_report.as_ref() != Some(&terminal) {
            return Err(fail(r, None, "final emptiness", "terminal report differs".into()));
        }

        let leaf_ids: Vec<PresentationId> = nodes
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| *s == Status::Leaf)
            .map(|(i, _)| PresentationId(i))
            .collect();
        let listed: Vec<PresentationId> = round.leaves.iter().map(|l| l.id).collect();
        if listed != leaf_ids {
            return Err(fail(r, None, "leaves", "leaf list differs from the replay".into()));
        }
        for leaf in &round.leaves {
            let bad = |detail: String| fail(r, None, "lift", format!("{}: {detail}", leaf.id));
            if leaf.presentation != nodes[leaf.id.0].0 {
                return Err(bad("presentation differs".into()));
            }
            let mut l = lift(&leaf.presentation).map_err(|e| bad(e.to_string()))?;
            l.source = Some(leaf.id);
            if l != leaf.lift {
                return Err(bad("lift differs from the recomputed one".into()));
            }
            let e = EBranchData {
                branch_count: base.global_branches(l.image),
                chart_branches: l.chart_branches,
            };
            if e != leaf.e {
                return Err(bad("divisor data differs".into()));
            }
            let template = classify_global(&l, &e).map_err(|e| bad(e.to_string()))?;
            if template != leaf.template {
                return Err(bad("template differs".into()));
            }
            template.check().map_err(bad)?;
        }
        leaves_total += round.leaves.len();
    }
    if summarize(file, &t.rounds) != t.summary {
        return Err(fail(t.rounds.len() - 1, None, "summary", "summary differs from the rounds".into()));
    }
    Ok(VerifyReport {
        rounds: t.rounds.len(),
        steps: steps_total,
        leaves: leaves_total,
    })
}

fn slope_list(set: &std::collections::BTreeSet<Slope>) -> String {
    if set.is_empty() {
        return "nowhere".into();
    }
    set.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
}

/// Human-readable step-by-step trace.
pub fn render_text(t: &CanonicalTrace) -> String {
    let mut s = String::new();
    for round in &t.rounds {
        let _ = writeln!(
            s,
            "round {}: chart branches at q {:?}; E meets the exceptional curve at {}",
            round.round,
            round.base.chart_branches,
            slope_list(&round.base.e_prime)
        );
        for init in &round.trace.initial {
            let _ = writeln!(
                s,
                "  {} {}{}",
                init.id,
                init.presentation,
                if init.principal { "  principal" } else { "" }
            );
        }
        for step in &round.trace.steps {
            let inv = match step.phase {
                Phase::NotInE => String::new(),
                Phase::BigOmega => format!("  Ω = {}", step.value),
                Phase::SmallOmega => format!("  ω = {}", step.value),
            };
            let _ = writeln!(
                s,
                "  step {}  chart {}  blow up {} on {}{inv}",
                step.index, step.chart_index, step.center, step.parent
            );
            for d in &step.descendants {
                let _ = writeln!(
                    s,
                    "    {:?} -> {} {}{}",
                    d.label,
                    d.id,
                    d.presentation.form(),
                    if d.principal { "  principal" } else { "" }
                );
            }
            let _ = writeln!(
                s,
                "    chart {} maxima: Ω {} -> {}, ω {} -> {}",
                step.chart_index, step.before.bigomega_max, step.after.bigomega_max, step.before.omega_max, step.after.omega_max
            );
        }
        let _ = writeln!(s, "  locus empty after {} step(s)", round.trace.steps.len());
        for leaf in &round.leaves {
            let _ = writeln!(
                s,
                "  lift {} at {}: {}  (E: {} branch(es), chart: {})",
                leaf.id, leaf.lift.image, leaf.template, leaf.e.branch_count, leaf.e.chart_branches
            );
            if let Some(r) = &leaf.lift.remark {
                let _ = writeln!(s, "    note: {r}");
            }
        }
    }
    let _ = writeln!(s, "status: {:?}", t.status);
    if let Some(f) = &t.failure {
        let _ = writeln!(s, "failure in round {}: {}", f.round, f.message);
    }
    s
}

#[derive(Serialize)]
struct SchemaReport<'a> {
    status: &'static str,
    #[serde(flatten)]
    error: &'a SchemaError,
}

fn load(path: &Path, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<ScenarioFile, ExitStatus> {
    match ScenarioFile::load(path) {
        Ok(f) => Ok(f),
        Err(LoadError::Io(e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            Err(ExitStatus::Io)
        }
        Err(LoadError::Schema(e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            if format == Format::Json {
                let report = SchemaReport {
                    status: "schema_error",
                    error: &e,
                };
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializes"));
            }
            Err(ExitStatus::Schema)
        }
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    status: RunStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: &'a Option<Failure>,
    summary: &'a Summary,
}

/// `toroidal run`: principalize and lift every round, write the trace.
///
/// With `trace_out` the trace goes to that file and stdout gets a summary
/// (json) or the rendered trace (text); without it the trace goes to stdout.
pub fn cmd_run(
    scenario: &Path,
    trace_out: Option<&Path>,
    max_steps: Option<usize>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> ExitStatus {
    let file = match load(scenario, format, out, err) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let doc = run_scenario(&file, max_steps);
    let c = &doc.canonical;
    if let Some(f) = &c.failure {
        let _ = writeln!(err, "error: round {}: {}", f.round, f.message);
    }
    match trace_out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, doc.to_json() + "\n") {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return ExitStatus::Io;
            }
            let _ = match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&RunReport {
                        status: c.status,
                        failure: &c.failure,
                        summary: &c.summary,
                    })
                    .expect("serializes")
                ),
                Format::Text => write!(out, "{}", render_text(c)),
            };
        }
        None => {
            let _ = match format {
                Format::Json => writeln!(out, "{}", doc.to_json()),
                Format::Text => write!(out, "{}", render_text(c)),
            };
        }
    }
    c.status.exit()
}

/// Reads a trace document written by [`cmd_run`].
pub fn read_trace(path: &Path) -> Result<TraceDocument, (ExitStatus, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| (ExitStatus::Io, e.to_string()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| (ExitStatus::Schema, format!("not JSON: {e}")))?;
    serde_path_to_error::deserialize(value).map_err(|e| (ExitStatus::Verify, format!("trace does not decode at {}: {}", e.path(), e.inner())))
}

/// `toroidal verify`: replay a trace and re-check it.
pub fn cmd_verify(trace: &Path, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let doc = match read_trace(trace) {
        Ok(d) => d,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {}: {msg}", trace.display());
            if format == Format::Json && code == ExitStatus::Verify {
                let _ = writeln!(out, "{}", serde_json::json!({"status": "invalid", "invariant": "trace format", "detail": msg}));
            }
            return code;
        }
    };
    match verify_trace(&doc.canonical) {
        Ok(report) => {
            let _ = match format {
                Format::Json => writeln!(out, "{}", serde_json::json!({"status": "valid", "report": report})),
                Format::Text => writeln!(
                    out,
                    "valid: {} round(s), {} step(s), {} leaves",
                    report.rounds, report.steps, report.leaves
                ),
            };
            ExitStatus::Ok
        }
        Err(v) => {
            let _ = writeln!(err, "error: {v}");
            let _ = match format {
                Format::Json => writeln!(out, "{}", serde_json::json!({"status": "invalid", "violation": v})),
                Format::Text => writeln!(out, "invalid: {v}"),
            };
            ExitStatus::Verify
        }
    }
}

#[derive(Serialize)]
struct OracleReport<'a> {
    status: &'static str,
    depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a SearchResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<&'a [crate::oracle::PathStep]>,
}

/// `toroidal oracle`: exhaustive search over all center choices for the
/// first round.
pub fn cmd_oracle(scenario: &Path, depth: usize, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let file = match load(scenario, format, out, err) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let s = match file.scenario() {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return ExitStatus::Schema;
        }
    };
    let result = exhaustive_search(&s, &SearchBound::depth(depth));
    let (code, report) = match &result {
        Ok(r) => (
            ExitStatus::Ok,
            OracleReport {
                status: "terminates",
                depth,
                result: Some(r),
                error: None,
                path: None,
            },
        ),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let path = match e {
                OracleError::BoundExceeded { path, .. } => Some(path.as_slice()),
                OracleError::OutOfBounds(_) => None,
            };
            (
                ExitStatus::Budget,
                OracleReport {
                    status: "bound_exceeded",
                    depth,
                    result: None,
                    error: Some(e.to_string()),
                    path,
                },
            )
        }
    };
    let _ = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializes")),
        Format::Text => match &result {
            Ok(r) => writeln!(
                out,
                "all paths terminate: {} to {} blowups over {} presentation(s), {} states",
                r.min_depth,
                r.max_depth,
                r.roots.len(),
                r.states
            ),
            Err(e) => writeln!(out, "{e}"),
        },
    };
    code
}
