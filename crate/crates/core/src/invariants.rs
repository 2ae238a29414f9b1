//! The non-principal locus as a finite list of centers, and the descent
//! invariants attached to them.
//!
//! Each center on a presentation stands for the generic point of one
//! codimension-2 component `Z` of the locus. A `x_i = x_{k+1} = 0` center
//! on F1 has a 1-point generic point `u = x_i^a`, `v = x_i^b x_{k+1}`, whose
//! value is `Ω = a - b`. A `x_i = x_j = 0` center on F5 has a 2-point generic
//! point carried by columns `i, j` alone, whose value is
//! `ω = (a_i - b_i)(b_j - a_j)`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::InvariantError;
use crate::forms::{is_principal, LocalForm, MonomialPresentation};
use crate::principalize::{PresentationId, Scenario};
use crate::row::exponent_serde;
use crate::transform::Center;

/// Every permissible center through `p`, in canonical order and
/// orientation.
pub fn enumerate_centers(p: &MonomialPresentation) -> Vec<Center> {
    match p.form() {
        LocalForm::F1 { u, v } => (0..u.len())
            .filter(|&i| v[i] < u[i])
            .map(|i| Center::VarFree { i })
            .collect(),
        LocalForm::F5 { u, v } => {
            let mut out = Vec::new();
            for i in 0..u.len() {
                for j in 0..u.len() {
                    if u[i] > v[i] && v[j] > u[j] {
                        out.push(Center::VarVar { i, j });
                    }
                }
            }
            out
        }
        LocalForm::F6 => vec![Center::VarFree { i: 0 }],
        _ => Vec::new(),
    }
}

/// Which descent invariant a center carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvariantKind {
    /// Center on an F1 presentation; value is `Ω`.
    BigOmega,
    /// Center on an F5 presentation; value is `ω`.
    SmallOmega,
    /// Center in a chart whose divisor misses `q`; no invariant.
    Smooth,
}

/// Kind and value of the invariant at the generic point of `c`.
pub fn center_value(p: &MonomialPresentation, c: &Center) -> (InvariantKind, BigUint) {
    match (p.form(), c) {
        (LocalForm::F1 { u, v }, Center::VarFree { i }) if v[*i] < u[*i] => {
            (InvariantKind::BigOmega, &u[*i] - &v[*i])
        }
        (LocalForm::F5 { u, v }, Center::VarVar { i, j }) => {
            let (i, j) = (*i, *j);
            let value = if u[i] > v[i] && v[j] > u[j] {
                (&u[i] - &v[i]) * (&v[j] - &u[j])
            } else if v[i] > u[i] && u[j] > v[j] {
                (&v[i] - &u[i]) * (&u[j] - &v[j])
            } else {
                BigUint::zero()
            };
            (InvariantKind::SmallOmega, value)
        }
        _ => (InvariantKind::Smooth, BigUint::zero()),
    }
}

/// `Ω = a - b` at a non-principal 1-point `u = x^a`, `v = x^b x_2`.
pub fn big_omega(p: &MonomialPresentation) -> Result<BigUint, InvariantError> {
    match p.form() {
        LocalForm::F1 { u, v } if u.len() == 1 && v[0] < u[0] => Ok(&u[0] - &v[0]),
        _ => Err(InvariantError::Domain(format!(
            "Ω is defined at non-principal 1-points of form F1, not at {}",
            p.form()
        ))),
    }
}

/// `ω = (a_1 - b_1)(b_2 - a_2) > 0` at a non-principal 2-point of form F5,
/// with the columns oriented to make it positive.
pub fn small_omega(p: &MonomialPresentation) -> Result<BigUint, InvariantError> {
    match p.form() {
        LocalForm::F5 { u, .. } if u.len() == 2 && !is_principal(p) => {
            let c = Center::VarVar { i: 0, j: 1 };
            Ok(center_value(p, &c).1)
        }
        _ => Err(InvariantError::Domain(format!(
            "ω is defined at non-principal 2-points of form F5, not at {}",
            p.form()
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterEntry {
    pub presentation: PresentationId,
    pub chart_index: usize,
    pub center: Center,
    pub kind: InvariantKind,
    #[serde(with = "exponent_serde")]
    pub value: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartMaxima {
    pub chart_index: usize,
    pub centers: usize,
    #[serde(with = "exponent_serde")]
    pub bigomega_max: BigUint,
    #[serde(with = "exponent_serde")]
    pub omega_max: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusReport {
    pub centers: Vec<CenterEntry>,
    #[serde(with = "exponent_serde")]
    pub omega_max: BigUint,
    #[serde(with = "exponent_serde")]
    pub bigomega_max: BigUint,
    pub per_chart: Vec<ChartMaxima>,
}

impl LocusReport {
    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn chart(&self, chart_index: usize) -> Option<&ChartMaxima> {
        self.per_chart.iter().find(|c| c.chart_index == chart_index)
    }

    pub fn from_presentations<'a>(
        m_charts: usize,
        active: impl IntoIterator<Item = (PresentationId, &'a MonomialPresentation)>,
    ) -> LocusReport {
        let mut centers = Vec::new();
        for (id, p) in active {
            for c in enumerate_centers(p) {
                let (kind, value) = center_value(p, &c);
                centers.push(CenterEntry {
                    presentation: id,
                    chart_index: p.context().chart_index,
                    center: c,
                    kind,
                    value,
                });
            }
        }
        centers.sort_by_key(|e| (e.presentation, e.center));

        let max_of = |kind: InvariantKind, chart: Option<usize>| {
            centers
                .iter()
                .filter(|e| e.kind == kind && chart.is_none_or(|c| e.chart_index == c))
                .map(|e| e.value.clone())
                .max()
                .unwrap_or_default()
        };
        let per_chart = (1..=m_charts)
            .map(|chart_index| ChartMaxima {
                chart_index,
                centers: centers.iter().filter(|e| e.chart_index == chart_index).count(),
                bigomega_max: max_of(InvariantKind::BigOmega, Some(chart_index)),
                omega_max: max_of(InvariantKind::SmallOmega, Some(chart_index)),
            })
            .collect();
        LocusReport {
            omega_max: max_of(InvariantKind::SmallOmega, None),
            bigomega_max: max_of(InvariantKind::BigOmega, None),
            per_chart,
            centers,
        }
    }
}

/// Aggregates the centers of all active presentations of `s`.
pub fn locus_report(s: &Scenario) -> LocusReport {
    LocusReport::from_presentations(s.m_charts(), s.active())
}
