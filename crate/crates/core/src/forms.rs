//! Local monomial presentations of a morphism to a surface, point
//! classification, and the three toroidal target templates.
//!
//! A presentation records how the regular parameters `u, v` at the base
//! point `q` pull back to one point of the source, in one of eight shapes:
//!
//! | tag | shape |
//! |-----|-------|
//! | F1  | `u = x^a`, `v = x^b · x_{k+1}`, `b ≤ a` |
//! | F2  | `u = x^a`, `v = x^b` over `k+1` divisor variables, `b ≤ a` |
//! | F3  | `u = x^a`, `v = x^b · (x_{k+1} + α)`, `b ≤ a`, `α ≠ 0` |
//! | F4  | `u = (x^g)^m`, `v = (x^g)^t · (α + x_{k+1})`, `α ≠ 0` |
//! | F5  | `u = x^a`, `v = x^b`, every column nonzero, rank 2 |
//! | F6  | `u = x_1`, `v = x_2` |
//! | F7  | `u = x_1`, `v = x_1 (x_2 + α)` |
//! | F8  | `u = x_1 x_2`, `v = x_2` |
//!
//! F1–F5 occur in charts whose divisor `E_i` contains `q`; F6–F8 in charts
//! where it does not. Field elements `α` are never stored, only whether
//! they vanish.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DescentError, FormError};
use crate::row::{exponent_serde, rank2, ExponentRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormTag {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
}

impl FormTag {
    pub fn name(self) -> &'static str {
        match self {
            FormTag::F1 => "F1",
            FormTag::F2 => "F2",
            FormTag::F3 => "F3",
            FormTag::F4 => "F4",
            FormTag::F5 => "F5",
            FormTag::F6 => "F6",
            FormTag::F7 => "F7",
            FormTag::F8 => "F8",
        }
    }
}

/// The exponent data of one presentation, tagged by its shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "form")]
pub enum LocalForm {
    F1 {
        u: ExponentRow,
        v: ExponentRow,
    },
    F2 {
        u: ExponentRow,
        v: ExponentRow,
    },
    F3 {
        u: ExponentRow,
        v: ExponentRow,
    },
    F4 {
        g: ExponentRow,
        #[serde(with = "exponent_serde")]
        m: BigUint,
        #[serde(with = "exponent_serde")]
        t: BigUint,
    },
    F5 {
        u: ExponentRow,
        v: ExponentRow,
    },
    F6,
    F7 {
        alpha_nonzero: bool,
    },
    F8,
}

impl LocalForm {
    pub fn tag(&self) -> FormTag {
        match self {
            LocalForm::F1 { .. } => FormTag::F1,
            LocalForm::F2 { .. } => FormTag::F2,
            LocalForm::F3 { .. } => FormTag::F3,
            LocalForm::F4 { .. } => FormTag::F4,
            LocalForm::F5 { .. } => FormTag::F5,
            LocalForm::F6 => FormTag::F6,
            LocalForm::F7 { .. } => FormTag::F7,
            LocalForm::F8 => FormTag::F8,
        }
    }

    /// Builds an F4 form, moving the content of `g` into the powers so that
    /// the stored row is primitive.
    pub fn f4(g: ExponentRow, m: BigUint, t: BigUint) -> LocalForm {
        match g.primitive_part() {
            Some((g, c)) => LocalForm::F4 {
                g,
                m: m * &c,
                t: t * c,
            },
            None => LocalForm::F4 { g, m, t },
        }
    }

    pub fn f1(u: &[u64], v: &[u64]) -> LocalForm {
        LocalForm::F1 {
            u: ExponentRow::from_u64s(u),
            v: ExponentRow::from_u64s(v),
        }
    }

    pub fn f2(u: &[u64], v: &[u64]) -> LocalForm {
        LocalForm::F2 {
            u: ExponentRow::from_u64s(u),
            v: ExponentRow::from_u64s(v),
        }
    }

    pub fn f3(u: &[u64], v: &[u64]) -> LocalForm {
        LocalForm::F3 {
            u: ExponentRow::from_u64s(u),
            v: ExponentRow::from_u64s(v),
        }
    }

    pub fn f5(u: &[u64], v: &[u64]) -> LocalForm {
        LocalForm::F5 {
            u: ExponentRow::from_u64s(u),
            v: ExponentRow::from_u64s(v),
        }
    }

    /// Number of toroidal variables `k`. For F2 the divisor carries `k + 1`
    /// variables; F6–F8 report the two coordinates `u, v` are built from.
    pub fn k(&self) -> usize {
        match self {
            LocalForm::F1 { u, .. } | LocalForm::F3 { u, .. } | LocalForm::F5 { u, .. } => u.len(),
            LocalForm::F2 { u, .. } => u.len().saturating_sub(1),
            LocalForm::F4 { g, .. } => g.len(),
            LocalForm::F6 | LocalForm::F7 { .. } | LocalForm::F8 => 2,
        }
    }

    /// Smallest ambient dimension `n` that can host this form.
    pub fn min_ambient(&self) -> usize {
        match self {
            LocalForm::F1 { u, .. } | LocalForm::F3 { u, .. } => u.len() + 1,
            LocalForm::F4 { g, .. } => g.len() + 1,
            LocalForm::F2 { u, .. } | LocalForm::F5 { u, .. } => u.len(),
            LocalForm::F6 | LocalForm::F7 { .. } | LocalForm::F8 => 2,
        }
    }

    /// Number of branches of the chart divisor `E_i` through `q`: one for
    /// F1–F3 (`u = 0`), two for F4/F5 (`uv = 0`), none for F6–F8.
    pub fn base_branches(&self) -> u8 {
        match self.tag() {
            FormTag::F1 | FormTag::F2 | FormTag::F3 => 1,
            FormTag::F4 | FormTag::F5 => 2,
            FormTag::F6 | FormTag::F7 | FormTag::F8 => 0,
        }
    }

    pub fn validate(&self) -> Result<(), FormError> {
        let tag = self.tag();
        let err = |reason: &str| Err(FormError::invalid(tag, reason));
        match self {
            LocalForm::F1 { u, v } | LocalForm::F3 { u, v } => {
                if u.is_empty() || u.len() != v.len() {
                    return err("u and v rows must have the same length k >= 1");
                }
                if !u.all_positive() {
                    return err("every divisor variable must appear in u");
                }
                if !v.divides(u) {
                    return err("requires b_i <= a_i for all i");
                }
                if tag == FormTag::F3 && v.is_zero() {
                    return err("v must vanish at the point (b != 0)");
                }
            }
            LocalForm::F2 { u, v } => {
                if u.len() < 2 || u.len() != v.len() {
                    return err("u and v rows must have the same length k + 1 >= 2");
                }
                if !u.all_positive() {
                    return err("every divisor variable must appear in u");
                }
                if !v.divides(u) {
                    return err("requires b_i <= a_i for all i <= k + 1");
                }
                if v[v.len() - 1].is_zero() {
                    return err("v must contain the last divisor variable");
                }
                if rank2(u, v) != 2 {
                    return err("rank of [u; v] must be 2 (f is dominant)");
                }
            }
            LocalForm::F4 { g, m, t } => {
                if g.is_empty() || !g.all_positive() {
                    return err("g must be a nonempty row of positive entries");
                }
                if m.is_zero() || t.is_zero() {
                    return err("powers m and t must be positive");
                }
                if !g.gcd().is_one() {
                    return err("g must be primitive");
                }
            }
            LocalForm::F5 { u, v } => {
                if u.len() < 2 || u.len() != v.len() {
                    return err("u and v rows must have the same length k >= 2");
                }
                if u.iter().zip(v.iter()).any(|(a, b)| a.is_zero() && b.is_zero()) {
                    return err("requires a_i + b_i > 0 for all i");
                }
                if rank2(u, v) != 2 {
                    return err("rank of [u; v] must be 2");
                }
            }
            LocalForm::F6 | LocalForm::F7 { .. } | LocalForm::F8 => {}
        }
        Ok(())
    }

    /// Applies a column permutation (`perm[new] = old`). F2 keeps its last
    /// column in place so the new divisor variable stays last.
    pub fn permute_columns(&self, perm: &[usize]) -> LocalForm {
        match self {
            LocalForm::F1 { u, v } => LocalForm::F1 {
                u: u.permuted(perm),
                v: v.permuted(perm),
            },
            LocalForm::F2 { u, v } => {
                let mut full: Vec<usize> = perm.to_vec();
                full.push(u.len() - 1);
                LocalForm::F2 {
                    u: u.permuted(&full),
                    v: v.permuted(&full),
                }
            }
            LocalForm::F3 { u, v } => LocalForm::F3 {
                u: u.permuted(perm),
                v: v.permuted(perm),
            },
            LocalForm::F4 { g, m, t } => LocalForm::F4 {
                g: g.permuted(perm),
                m: m.clone(),
                t: t.clone(),
            },
            LocalForm::F5 { u, v } => LocalForm::F5 {
                u: u.permuted(perm),
                v: v.permuted(perm),
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for LocalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalForm::F1 { u, v } => write!(f, "F1 u={u} v={v}·x{}", u.len() + 1),
            LocalForm::F2 { u, v } => write!(f, "F2 u={u} v={v}"),
            LocalForm::F3 { u, v } => write!(f, "F3 u={u} v={v}·(x{}+α)", u.len() + 1),
            LocalForm::F4 { g, m, t } => write!(f, "F4 g={g} m={m} t={t}"),
            LocalForm::F5 { u, v } => write!(f, "F5 u={u} v={v}"),
            LocalForm::F6 => write!(f, "F6 u=x1 v=x2"),
            LocalForm::F7 { alpha_nonzero } => {
                let a = if *alpha_nonzero { "α" } else { "0" };
                write!(f, "F7 u=x1 v=x1(x2+{a})")
            }
            LocalForm::F8 => write!(f, "F8 u=x1x2 v=x2"),
        }
    }
}

/// Which base chart `i` a presentation lives in, and whether `q ∈ E_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChartContext {
    pub chart_index: usize,
    pub q_in_e: bool,
}

impl ChartContext {
    pub fn new(chart_index: usize, q_in_e: bool) -> Self {
        ChartContext {
            chart_index,
            q_in_e,
        }
    }
}

/// A validated local presentation: form data, ambient dimension and chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct MonomialPresentation {
    form: LocalForm,
    n: usize,
    context: ChartContext,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    n: usize,
    #[serde(flatten)]
    context: ChartContext,
    #[serde(flatten)]
    form: LocalForm,
}

impl TryFrom<RawPresentation> for MonomialPresentation {
    type Error = FormError;
    fn try_from(raw: RawPresentation) -> Result<Self, FormError> {
        MonomialPresentation::new(raw.form, raw.n, raw.context)
    }
}

impl From<MonomialPresentation> for RawPresentation {
    fn from(p: MonomialPresentation) -> Self {
        RawPresentation {
            n: p.n,
            context: p.context,
            form: p.form,
        }
    }
}

impl MonomialPresentation {
    pub fn new(form: LocalForm, n: usize, context: ChartContext) -> Result<Self, FormError> {
        let form = match form {
            LocalForm::F4 { g, m, t } => LocalForm::f4(g, m, t),
            other => other,
        };
        form.validate()?;
        if form.min_ambient() > n {
            return Err(FormError::invalid(
                form.tag(),
                format!("needs ambient dimension >= {}, got n = {n}", form.min_ambient()),
            ));
        }
        if context.chart_index == 0 {
            return Err(FormError::Context("chart indices start at 1".into()));
        }
        if context.q_in_e != (form.base_branches() > 0) {
            return Err(FormError::Context(format!(
                "{:?} cannot occur in a chart with q_in_e = {}",
                form.tag(),
                context.q_in_e
            )));
        }
        Ok(MonomialPresentation { form, n, context })
    }

    /// Convenience constructor for a chart containing `q` in its divisor
    /// exactly when the form requires it.
    pub fn in_chart(form: LocalForm, n: usize, chart_index: usize) -> Result<Self, FormError> {
        let q_in_e = form.base_branches() > 0;
        Self::new(form, n, ChartContext::new(chart_index, q_in_e))
    }

    pub fn form(&self) -> &LocalForm {
        &self.form
    }

    pub fn tag(&self) -> FormTag {
        self.form.tag()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.form.k()
    }

    pub fn context(&self) -> ChartContext {
        self.context
    }

    /// Same chart and dimension, different form data.
    pub fn with_form(&self, form: LocalForm) -> Result<Self, FormError> {
        MonomialPresentation::new(form, self.n, self.context)
    }

    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        MonomialPresentation {
            form: self.form.permute_columns(perm),
            n: self.n,
            context: self.context,
        }
    }
}

impl fmt::Display for MonomialPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [chart {}]", self.form, self.context.chart_index)
    }
}

/// Number of divisor components through the point.
///
/// F6–F8 live in charts whose divisor misses `q`, so they report 0.
pub fn classify_point(p: &MonomialPresentation) -> usize {
    match p.form() {
        LocalForm::F1 { u, v }
        | LocalForm::F2 { u, v }
        | LocalForm::F3 { u, v }
        | LocalForm::F5 { u, v } => u
            .iter()
            .zip(v.iter())
            .filter(|(a, b)| !a.is_zero() || !b.is_zero())
            .count(),
        LocalForm::F4 { g, .. } => g.iter().filter(|e| !e.is_zero()).count(),
        LocalForm::F6 | LocalForm::F7 { .. } | LocalForm::F8 => 0,
    }
}

/// Whether `(u, v)` generates a principal ideal at the point.
pub fn is_principal(p: &MonomialPresentation) -> bool {
    match p.form() {
        // (x^a, x^b x_{k+1}) is principal iff x^a divides x^b x_{k+1}, and
        // since x_{k+1} is not a divisor variable that means a <= b.
        LocalForm::F1 { u, v } => u.divides(v),
        LocalForm::F2 { .. } => true,
        LocalForm::F3 { u, v } | LocalForm::F5 { u, v } => u.divides(v) || v.divides(u),
        LocalForm::F4 { .. } => true,
        LocalForm::F6 => false,
        LocalForm::F7 { .. } | LocalForm::F8 => true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TemplateTag {
    T1,
    T2,
    T3,
}

/// A toroidal local form of a morphism to a surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "template")]
pub enum ToroidalTemplate {
    /// `u = x^row`, `v = x_{k+1}`.
    T1 { row: ExponentRow },
    /// `u = (x^g)^m`, `v = (x^g)^t (α + x_{k+1})`.
    T2 {
        g: ExponentRow,
        #[serde(with = "exponent_serde")]
        m: BigUint,
        #[serde(with = "exponent_serde")]
        t: BigUint,
    },
    /// `u = x^u`, `v = x^v` with rank 2.
    T3 { u: ExponentRow, v: ExponentRow },
}

impl ToroidalTemplate {
    pub fn tag(&self) -> TemplateTag {
        match self {
            ToroidalTemplate::T1 { .. } => TemplateTag::T1,
            ToroidalTemplate::T2 { .. } => TemplateTag::T2,
            ToroidalTemplate::T3 { .. } => TemplateTag::T3,
        }
    }

    /// Branches of the target divisor the template cuts out: `u = 0` for T1,
    /// `uv = 0` for T2 and T3.
    pub fn branches(&self) -> u8 {
        match self {
            ToroidalTemplate::T1 { .. } => 1,
            _ => 2,
        }
    }

    /// Checks positivity, primitivity and rank conditions.
    pub fn check(&self) -> Result<(), String> {
        match self {
            ToroidalTemplate::T1 { row } => {
                if row.is_empty() || !row.all_positive() {
                    return Err(format!("T1 row {row} must have positive entries"));
                }
            }
            ToroidalTemplate::T2 { g, m, t } => {
                if g.is_empty() || !g.all_positive() || !g.gcd().is_one() {
                    return Err(format!("T2 row {g} must be primitive and positive"));
                }
                if m.is_zero() || t.is_zero() {
                    return Err("T2 powers must be positive".into());
                }
            }
            ToroidalTemplate::T3 { u, v } => {
                if u.len() != v.len() || u.len() < 2 {
                    return Err("T3 rows must have equal length >= 2".into());
                }
                if u.iter().zip(v.iter()).any(|(a, b)| a.is_zero() && b.is_zero()) {
                    return Err("T3 needs a_i + b_i > 0 for every column".into());
                }
                if rank2(u, v) != 2 {
                    return Err(format!("T3 rows {u}, {v} must have rank 2"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ToroidalTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToroidalTemplate::T1 { row } => write!(f, "T1 u=x^{row} v=x{}", row.len() + 1),
            ToroidalTemplate::T2 { g, m, t } => write!(f, "T2 g={g} m={m} t={t}"),
            ToroidalTemplate::T3 { u, v } => write!(f, "T3 u={u} v={v}"),
        }
    }
}

/// How the target divisor looks at the image point of a lifted presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EBranchData {
    /// Branches of the full divisor `E` through the image point (1 or 2).
    pub branch_count: u8,
    /// Branches of the presentation's own chart divisor there (0, 1 or 2).
    pub chart_branches: u8,
}

/// Matches the local form of a lifted morphism against T1–T3.
///
/// `p` is read as a presentation of the lifted map (its `u, v` are the new
/// regular parameters); `e_local.branch_count` is the number of branches of
/// the divisor it must be toroidal for.
pub fn match_template(
    p: &MonomialPresentation,
    e_local: &EBranchData,
) -> Result<ToroidalTemplate, DescentError> {
    let template = match (p.form(), e_local.branch_count) {
        (LocalForm::F1 { u, v }, 1) if v.is_zero() => ToroidalTemplate::T1 { row: u.clone() },
        (LocalForm::F6, 1) => ToroidalTemplate::T1 {
            row: ExponentRow::from_u64s(&[1]),
        },
        (LocalForm::F4 { g, m, t }, 2) => ToroidalTemplate::T2 {
            g: g.clone(),
            m: m.clone(),
            t: t.clone(),
        },
        (LocalForm::F5 { u, v }, 2) => ToroidalTemplate::T3 {
            u: u.clone(),
            v: v.clone(),
        },
        (form, count) => {
            return Err(DescentError::NoTemplateMatch(format!(
                "{form} against a divisor with {count} branch(es)"
            )))
        }
    };
    template.check().map_err(DescentError::NoTemplateMatch)?;
    Ok(template)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(form: LocalForm, n: usize) -> MonomialPresentation {
        MonomialPresentation::in_chart(form, n, 1).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_point(&pres(LocalForm::f5(&[2, 0], &[0, 3]), 3)), 2);
        assert_eq!(classify_point(&pres(LocalForm::f1(&[3], &[1]), 2)), 1);
        assert_eq!(
            classify_point(&pres(LocalForm::f5(&[1, 2, 0], &[0, 1, 1]), 3)),
            3
        );
        assert_eq!(classify_point(&pres(LocalForm::f2(&[3, 1], &[1, 1]), 3)), 2);
        assert_eq!(classify_point(&pres(LocalForm::F6, 2)), 0);
    }

    #[test]
    fn principality_examples() {
        assert!(!is_principal(&pres(LocalForm::f5(&[2, 0], &[0, 3]), 2)));
        assert!(is_principal(&pres(LocalForm::f5(&[1, 1], &[2, 3]), 2)));
        assert!(!is_principal(&pres(LocalForm::f1(&[3], &[1]), 2)));
        assert!(is_principal(&pres(LocalForm::f2(&[3, 1], &[1, 1]), 2)));
        // all-equal F1 is (x^a)(1, x_{k+1}), principal
        assert!(is_principal(&pres(LocalForm::f1(&[2, 1], &[2, 1]), 3)));
        assert!(is_principal(&pres(LocalForm::f3(&[2], &[1]), 2)));
        assert!(!is_principal(&pres(LocalForm::F6, 2)));
        assert!(is_principal(&pres(LocalForm::F7 { alpha_nonzero: true }, 2)));
        assert!(is_principal(&pres(LocalForm::F8, 2)));
    }

    #[test]
    fn validation_rejects_bad_data() {
        let bad = |form: LocalForm, n: usize| MonomialPresentation::in_chart(form, n, 1).is_err();
        assert!(bad(LocalForm::f1(&[1], &[2]), 2)); // b > a
        assert!(bad(LocalForm::f1(&[0, 1], &[0, 0]), 3)); // missing divisor variable
        assert!(bad(LocalForm::f1(&[2], &[1]), 1)); // no room for x_{k+1}
        assert!(bad(LocalForm::f5(&[2, 4], &[1, 2]), 2)); // rank 1
        assert!(bad(LocalForm::f5(&[1, 0, 0], &[0, 1, 0]), 3)); // zero column
        assert!(bad(LocalForm::f3(&[2], &[0]), 2)); // v a unit
        assert!(bad(LocalForm::f2(&[2, 2], &[1, 0]), 2)); // v misses new variable
        assert!(bad(LocalForm::f2(&[2, 2], &[1, 1]), 2)); // rank 1
        assert!(bad(
            LocalForm::F4 {
                g: ExponentRow::from_u64s(&[1, 0]),
                m: 1u32.into(),
                t: 1u32.into()
            },
            3
        ));
        // wrong chart kind
        assert!(MonomialPresentation::new(LocalForm::F6, 2, ChartContext::new(1, true)).is_err());
        assert!(MonomialPresentation::new(LocalForm::f1(&[1], &[0]), 2, ChartContext::new(1, false)).is_err());
        assert!(MonomialPresentation::new(LocalForm::F6, 2, ChartContext::new(0, false)).is_err());
    }

    #[test]
    fn f4_is_primitivized() {
        let p = pres(
            LocalForm::F4 {
                g: ExponentRow::from_u64s(&[2]),
                m: 2u32.into(),
                t: 2u32.into(),
            },
            2,
        );
        assert_eq!(
            p.form(),
            &LocalForm::F4 {
                g: ExponentRow::from_u64s(&[1]),
                m: 4u32.into(),
                t: 4u32.into()
            }
        );
    }

    #[test]
    fn template_examples() {
        let one = EBranchData {
            branch_count: 1,
            chart_branches: 1,
        };
        let two = EBranchData {
            branch_count: 2,
            chart_branches: 2,
        };
        let t = match_template(&pres(LocalForm::f1(&[2, 1], &[0, 0]), 3), &one).unwrap();
        assert_eq!(t, ToroidalTemplate::T1 { row: ExponentRow::from_u64s(&[2, 1]) });
        let t = match_template(&pres(LocalForm::f5(&[1, 1], &[1, 2]), 2), &two).unwrap();
        assert_eq!(t.tag(), TemplateTag::T3);
        let f4 = LocalForm::F4 {
            g: ExponentRow::from_u64s(&[1, 1]),
            m: 2u32.into(),
            t: 3u32.into(),
        };
        let t = match_template(&pres(f4, 3), &two).unwrap();
        assert_eq!(t.tag(), TemplateTag::T2);
        // wrong branch count or non-template forms
        assert!(match_template(&pres(LocalForm::f5(&[1, 1], &[1, 2]), 2), &one).is_err());
        assert!(match_template(&pres(LocalForm::f1(&[2], &[1]), 2), &one).is_err());
    }

    #[test]
    fn presentation_json_shape() {
        let p = pres(LocalForm::f5(&[2, 0], &[0, 3]), 2);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"chart_index":1,"q_in_e":true,"form":"F5","u":[2,0],"v":[0,3]}"#
        );
        let back: MonomialPresentation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"n":2,"chart_index":1,"q_in_e":true,"form":"F5","u":[2,4],"v":[1,2]}"#;
        assert!(serde_json::from_str::<MonomialPresentation>(bad).is_err());
    }
}
