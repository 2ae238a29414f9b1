//! Chart-level effect of blowing up a permissible codimension-2 center.
//!
//! Blowing up `x_i = x_j = 0` gives two affine charts:
//!
//! * chart (a): `x_i = x_j (x̄_i + α)`. At `α = 0` the column of `x_j`
//!   absorbs the column of `x_i`; at `α ≠ 0` the factor `x̄_i + α` is a
//!   unit and column `i` disappears into it.
//! * chart (b): `x_j = x_i x̄_j`, so column `i` absorbs column `j`.
//!
//! Only these three combinatorial point types are produced; closed points
//! with different nonzero `α` are not told apart.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::TransformError;
use crate::forms::{FormTag, LocalForm, MonomialPresentation};
use crate::row::{rank2, ExponentRow};

/// A permissible blowup center, by its local equations. Indices are
/// 0-based columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Center {
    /// `x_i = x_j = 0` between two toroidal variables; canonically `i` is
    /// the column with `a_i > b_i` and `j` the one with `b_j > a_j`.
    VarVar { i: usize, j: usize },
    /// `x_i = x_{k+1} = 0` for F1, or `x_1 = x_2 = 0` (with `i = 0`) for F6.
    VarFree { i: usize },
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::VarVar { i, j } => write!(f, "x{} = x{} = 0", i + 1, j + 1),
            Center::VarFree { i } => write!(f, "x{} = free = 0", i + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChartLabel {
    ChartAAlpha0,
    ChartAAlphaNonzero,
    ChartB,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descendant {
    pub label: ChartLabel,
    pub presentation: MonomialPresentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendantSet {
    pub descendants: Vec<Descendant>,
}

impl DescendantSet {
    pub fn len(&self) -> usize {
        self.descendants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.descendants.is_empty()
    }

    pub fn get(&self, label: ChartLabel) -> Option<&MonomialPresentation> {
        self.descendants
            .iter()
            .find(|d| d.label == label)
            .map(|d| &d.presentation)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Descendant> {
        self.descendants.iter()
    }
}

fn not_permissible(p: &MonomialPresentation, c: &Center, reason: impl Into<String>) -> TransformError {
    TransformError::Permissibility {
        form: p.tag(),
        center: c.to_string(),
        reason: reason.into(),
    }
}

/// Blows up `c` at `p`, dispatching on the form.
pub fn blowup(p: &MonomialPresentation, c: &Center) -> Result<DescendantSet, TransformError> {
    match p.tag() {
        FormTag::F1 => blowup_f1(p, c),
        FormTag::F5 => blowup_f5(p, c),
        FormTag::F6 => blowup_f6(p, c),
        _ => Err(not_permissible(p, c, "principal forms carry no permissible centers")),
    }
}

/// F1 along `x_i = x_{k+1} = 0` (requires `b_i < a_i`).
pub fn blowup_f1(p: &MonomialPresentation, c: &Center) -> Result<DescendantSet, TransformError> {
    let LocalForm::F1 { u, v } = p.form() else {
        return Err(not_permissible(p, c, "expected an F1 presentation"));
    };
    let Center::VarFree { i } = *c else {
        return Err(not_permissible(p, c, "F1 centers are of the form x_i = x_{k+1} = 0"));
    };
    if i >= u.len() {
        return Err(not_permissible(p, c, "index out of range"));
    }
    if v[i] >= u[i] {
        return Err(not_permissible(p, c, "needs b_i < a_i"));
    }
    let mut v_bumped = v.clone();
    v_bumped.set(i, &v[i] + 1u32);

    // chart (b): x_i = x̄_i x_{k+1}, and x_{k+1} joins the divisor
    let u_b = u.with_appended(u[i].clone());
    let v_b = v.with_appended(&v[i] + 1u32);

    Ok(DescendantSet {
        descendants: vec![
            Descendant {
                label: ChartLabel::ChartAAlpha0,
                presentation: p.with_form(LocalForm::F1 {
                    u: u.clone(),
                    v: v_bumped.clone(),
                })?,
            },
            Descendant {
                label: ChartLabel::ChartAAlphaNonzero,
                presentation: p.with_form(LocalForm::F3 {
                    u: u.clone(),
                    v: v_bumped,
                })?,
            },
            Descendant {
                label: ChartLabel::ChartB,
                presentation: p.with_form(LocalForm::F2 { u: u_b, v: v_b })?,
            },
        ],
    })
}

/// Orients a VarVar center so that `a_i > b_i` and `b_j > a_j`, or reports
/// why it is not permissible.
fn oriented(
    p: &MonomialPresentation,
    u: &ExponentRow,
    v: &ExponentRow,
    c: &Center,
) -> Result<(usize, usize), TransformError> {
    let Center::VarVar { i, j } = *c else {
        return Err(not_permissible(p, c, "F5 centers are of the form x_i = x_j = 0"));
    };
    if i == j || i >= u.len() || j >= u.len() {
        return Err(not_permissible(p, c, "indices must be distinct columns"));
    }
    if u[i] > v[i] && v[j] > u[j] {
        Ok((i, j))
    } else if v[i] > u[i] && u[j] > v[j] {
        Ok((j, i))
    } else {
        Err(not_permissible(p, c, "needs (a_i - b_i)(b_j - a_j) > 0"))
    }
}

fn summed(row: &ExponentRow, into: usize, from: usize) -> ExponentRow {
    let mut out = row.clone();
    out.set(into, &row[into] + &row[from]);
    out
}

/// F5 along `x_i = x_j = 0`; the 3-point case is the same substitution.
pub fn blowup_f5(p: &MonomialPresentation, c: &Center) -> Result<DescendantSet, TransformError> {
    let LocalForm::F5 { u, v } = p.form() else {
        return Err(not_permissible(p, c, "expected an F5 presentation"));
    };
    let (i, j) = oriented(p, u, v, c)?;

    let chart_a0 = LocalForm::F5 {
        u: summed(u, j, i),
        v: summed(v, j, i),
    };
    let chart_b = LocalForm::F5 {
        u: summed(u, i, j),
        v: summed(v, i, j),
    };
    let chart_a_unit = collapse(&summed(u, j, i).without(i), &summed(v, j, i).without(i));

    Ok(DescendantSet {
        descendants: vec![
            Descendant {
                label: ChartLabel::ChartAAlpha0,
                presentation: p.with_form(chart_a0)?,
            },
            Descendant {
                label: ChartLabel::ChartAAlphaNonzero,
                presentation: p.with_form(chart_a_unit)?,
            },
            Descendant {
                label: ChartLabel::ChartB,
                presentation: p.with_form(chart_b)?,
            },
        ],
    })
}

/// F5 at a 3-point or higher (`k >= 3`).
pub fn blowup_f5_3pt(p: &MonomialPresentation, c: &Center) -> Result<DescendantSet, TransformError> {
    if p.tag() == FormTag::F5 && p.k() < 3 {
        return Err(not_permissible(p, c, "expected at least three divisor variables"));
    }
    blowup_f5(p, c)
}

/// The matrix left after a column became a unit: F5 if it still has rank
/// 2, otherwise the rank-1 form F4 with its primitive row pulled out.
fn collapse(u: &ExponentRow, v: &ExponentRow) -> LocalForm {
    if u.len() >= 2 && rank2(u, v) == 2 {
        return LocalForm::F5 {
            u: u.clone(),
            v: v.clone(),
        };
    }
    // rank 1 with both rows nonzero: u = m·g, v = t·g for one primitive g
    match (u.primitive_part(), v.gcd()) {
        (Some((g, m)), t) if !t.is_zero() => LocalForm::F4 { g, m, t },
        // unreachable for permissible input; let validation report it
        _ => LocalForm::F4 {
            g: u.clone(),
            m: BigUint::one(),
            t: BigUint::zero(),
        },
    }
}

/// F6 along `x_1 = x_2 = 0`: chart (a) gives F7 for each kind of `α`,
/// chart (b) gives F8.
pub fn blowup_f6(p: &MonomialPresentation, c: &Center) -> Result<DescendantSet, TransformError> {
    if p.tag() != FormTag::F6 {
        return Err(not_permissible(p, c, "expected an F6 presentation"));
    }
    if *c != (Center::VarFree { i: 0 }) {
        return Err(not_permissible(p, c, "the only center at F6 is x1 = x2 = 0"));
    }
    Ok(DescendantSet {
        descendants: vec![
            Descendant {
                label: ChartLabel::ChartAAlpha0,
                presentation: p.with_form(LocalForm::F7 {
                    alpha_nonzero: false,
                })?,
            },
            Descendant {
                label: ChartLabel::ChartAAlphaNonzero,
                presentation: p.with_form(LocalForm::F7 {
                    alpha_nonzero: true,
                })?,
            },
            Descendant {
                label: ChartLabel::ChartB,
                presentation: p.with_form(LocalForm::F8)?,
            },
        ],
    })
}
