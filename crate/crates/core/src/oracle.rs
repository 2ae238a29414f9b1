//! Brute-force cross-checks for the engine.
//!
//! Nothing here calls the engine's classification, blowup or invariant
//! code. Points are flattened to a multiset of exponent columns `(a_i, b_i)`
//! of `u = ∏ x_i^{a_i}`, `v = ∏ x_i^{b_i}`: a variable appearing only in `v`
//! becomes a `(0, 1)` column and units are dropped. A point is principal
//! iff one of `u, v` divides the other, and a blowup center is any pair of
//! columns `(x, y)` with `a_x > b_x` and `b_y > a_y`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::forms::{LocalForm, MonomialPresentation};
use crate::principalize::{PresentationId, Scenario};
use crate::row::ExponentRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBound {
    pub max_entry: u64,
    pub max_k: usize,
    pub max_depth: usize,
}

impl SearchBound {
    pub fn new(max_entry: u64, max_k: usize, max_depth: usize) -> Result<Self, OracleError> {
        if max_entry == 0 || max_k == 0 || max_depth == 0 {
            return Err(OracleError::OutOfBounds("bounds must be positive".into()));
        }
        Ok(SearchBound {
            max_entry,
            max_k,
            max_depth,
        })
    }

    /// Only the depth is limited.
    pub fn depth(max_depth: usize) -> Self {
        SearchBound {
            max_entry: u64::MAX,
            max_k: usize::MAX,
            max_depth: max_depth.max(1),
        }
    }
}

/// Which generators carry the extra non-divisor variable `x_{k+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FreeVars {
    pub u: bool,
    pub v: bool,
}

/// Is `(x^u_row · x_{k+1}^{[free.u]}, x^v_row · x_{k+1}^{[free.v]})` a
/// principal ideal?
pub fn oracle_principal(u_row: &ExponentRow, v_row: &ExponentRow, free: FreeVars) -> bool {
    let len = u_row.len().max(v_row.len());
    let at = |r: &ExponentRow, i: usize| r.entries().get(i).cloned().unwrap_or_default();
    let mut u_divides_v = !free.u || free.v;
    let mut v_divides_u = !free.v || free.u;
    for i in 0..len {
        let (a, b) = (at(u_row, i), at(v_row, i));
        if a > b {
            u_divides_v = false;
        }
        if b > a {
            v_divides_u = false;
        }
    }
    u_divides_v || v_divides_u
}

/// Rank of the `2 × k` matrix `[u; v]`.
pub fn oracle_rank(u_row: &ExponentRow, v_row: &ExponentRow) -> usize {
    let u: Vec<BigInt> = u_row.iter().map(|x| BigInt::from(x.clone())).collect();
    let v: Vec<BigInt> = v_row.iter().map(|x| BigInt::from(x.clone())).collect();
    let k = u.len().min(v.len());
    for i in 0..k {
        for j in (i + 1)..k {
            if !(&u[i] * &v[j] - &u[j] * &v[i]).is_zero() {
                return 2;
            }
        }
    }
    if u.iter().chain(v.iter()).any(|x| !x.is_zero()) {
        1
    } else {
        0
    }
}

/// A point as a sorted multiset of exponent columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point(pub Vec<[u64; 2]>);

impl Point {
    pub fn new(mut cols: Vec<[u64; 2]>) -> Point {
        cols.retain(|c| c != &[0, 0]);
        cols.sort_unstable();
        Point(cols)
    }

    pub fn principal(&self) -> bool {
        self.0.iter().all(|c| c[0] <= c[1]) || self.0.iter().all(|c| c[1] <= c[0])
    }

    pub fn centers(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for (x, cx) in self.0.iter().enumerate() {
            for (y, cy) in self.0.iter().enumerate() {
                if cx[0] > cx[1] && cy[1] > cy[0] {
                    out.push([x, y]);
                }
            }
        }
        out
    }

    /// The three points over the blowup of `x_x = x_y = 0`: `x_y = x_x y'`,
    /// `x_x = x_y x'`, and `x_y = x_x (y' + α)` with `α ≠ 0`.
    pub fn children(&self, c: [usize; 2]) -> Result<[Point; 3], OracleError> {
        let [x, y] = c;
        let (cx, cy) = (self.0[x], self.0[y]);
        let sum = [
            cx[0].checked_add(cy[0]).ok_or_else(overflow)?,
            cx[1].checked_add(cy[1]).ok_or_else(overflow)?,
        ];
        let mut first = self.0.clone();
        first[x] = sum;
        let mut second = self.0.clone();
        second[y] = sum;
        let mut third: Vec<[u64; 2]> = self
            .0
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != x && *i != y)
            .map(|(_, c)| *c)
            .collect();
        third.push(sum);
        Ok([Point::new(first), Point::new(second), Point::new(third)])
    }
}

fn overflow() -> OracleError {
    OracleError::OutOfBounds("exponent overflow".into())
}

fn small(x: &BigUint) -> Result<u64, OracleError> {
    x.to_u64().ok_or_else(|| OracleError::OutOfBounds(format!("exponent {x} too large")))
}

/// Flattens a presentation into columns.
pub fn uniform_point(p: &MonomialPresentation) -> Result<Point, OracleError> {
    let pairs = |u: &ExponentRow, v: &ExponentRow| -> Result<Vec<[u64; 2]>, OracleError> {
        u.iter().zip(v.iter()).map(|(a, b)| Ok([small(a)?, small(b)?])).collect()
    };
    let cols = match p.form() {
        LocalForm::F1 { u, v } => {
            let mut c = pairs(u, v)?;
            c.push([0, 1]);
            c
        }
        LocalForm::F2 { u, v } | LocalForm::F3 { u, v } | LocalForm::F5 { u, v } => pairs(u, v)?,
        LocalForm::F4 { g, m, t } => {
            let (m, t) = (small(m)?, small(t)?);
            g.iter()
                .map(|x| {
                    let x = small(x)?;
                    Ok([
                        x.checked_mul(m).ok_or_else(overflow)?,
                        x.checked_mul(t).ok_or_else(overflow)?,
                    ])
                })
                .collect::<Result<_, OracleError>>()?
        }
        LocalForm::F6 => vec![[1, 0], [0, 1]],
        LocalForm::F7 { alpha_nonzero: false } => vec![[1, 1], [0, 1]],
        LocalForm::F7 { alpha_nonzero: true } => vec![[1, 1]],
        LocalForm::F8 => vec![[1, 0], [1, 1]],
    };
    Ok(Point::new(cols))
}

/// One blowup on a path through the search tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    pub point: Point,
    pub center: [usize; 2],
    /// Which child the path continues into.
    pub child: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootResult {
    pub id: PresentationId,
    pub point: Point,
    pub min_steps: u64,
    pub max_steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub all_terminate: bool,
    /// Fewest blowups over all choices of centers, summed over presentations.
    pub min_depth: u64,
    /// Most blowups over all choices of centers.
    pub max_depth: u64,
    pub roots: Vec<RootResult>,
    pub states: usize,
}

type Memo = HashMap<Point, (u64, u64)>;
type Branch = Result<((u64, u64), Memo), OracleError>;

struct Search {
    max_depth: usize,
    memo: Memo,
}

impl Search {
    /// Min and max number of blowups to principalize everything over `p`.
    fn cost(&mut self, p: &Point, chain: &mut Vec<PathStep>) -> Result<(u64, u64), OracleError> {
        if p.principal() {
            return Ok((0, 0));
        }
        if let Some(&r) = self.memo.get(p) {
            return Ok(r);
        }
        let mut best: Option<(u64, u64)> = None;
        for c in p.centers() {
            let r = self.cost_via(p, c, chain)?;
            best = Some(match best {
                None => r,
                Some((lo, hi)) => (lo.min(r.0), hi.max(r.1)),
            });
        }
        let r = best.expect("non-principal point has a center");
        self.memo.insert(p.clone(), r);
        Ok(r)
    }

    fn cost_via(&mut self, p: &Point, c: [usize; 2], chain: &mut Vec<PathStep>) -> Result<(u64, u64), OracleError> {
        if chain.len() >= self.max_depth {
            let mut path = chain.clone();
            path.push(PathStep {
                point: p.clone(),
                center: c,
                child: 0,
            });
            return Err(OracleError::BoundExceeded {
                reason: format!("a chain of blowups is longer than {}", self.max_depth),
                path,
            });
        }
        let (mut lo, mut hi) = (1u64, 1u64);
        for (k, child) in p.children(c)?.iter().enumerate() {
            chain.push(PathStep {
                point: p.clone(),
                center: c,
                child: k,
            });
            let r = self.cost(child, chain);
            chain.pop();
            let (a, b) = r?;
            lo += a;
            hi += b;
        }
        Ok((lo, hi))
    }

    /// A path realizing the maximum from `p`, following the costliest child.
    fn max_path(&self, p: &Point) -> Vec<PathStep> {
        let mut out = Vec::new();
        let mut cur = p.clone();
        while !cur.principal() {
            let Some(&(_, want)) = self.memo.get(&cur) else { break };
            let mut next = None;
            for c in cur.centers() {
                let Ok(kids) = cur.children(c) else { continue };
                let total: u64 = 1 + kids.iter().map(|k| self.lookup(k).1).sum::<u64>();
                if total == want {
                    let (idx, kid) = kids
                        .iter()
                        .enumerate()
                        .max_by_key(|(i, k)| (self.lookup(k).1, std::cmp::Reverse(*i)))
                        .expect("three children");
                    out.push(PathStep {
                        point: cur.clone(),
                        center: c,
                        child: idx,
                    });
                    next = Some(kid.clone());
                    break;
                }
            }
            match next {
                Some(n) => cur = n,
                None => break,
            }
        }
        out
    }

    fn lookup(&self, p: &Point) -> (u64, u64) {
        if p.principal() {
            (0, 0)
        } else {
            self.memo.get(p).copied().unwrap_or((0, 0))
        }
    }
}

/// Explores every choice of centers below one point. Root choices run in
/// parallel; results are combined in center order.
pub fn search_point(p: &Point, max_depth: usize) -> Result<(u64, u64, Memo), OracleError> {
    if p.principal() {
        return Ok((0, 0, Memo::new()));
    }
    let results: Vec<Branch> = p
        .centers()
        .into_par_iter()
        .map(|c| {
            let mut s = Search {
                max_depth,
                memo: Memo::new(),
            };
            let r = s.cost_via(p, c, &mut Vec::new())?;
            Ok((r, s.memo))
        })
        .collect();
    let mut lo = u64::MAX;
    let mut hi = 0;
    let mut memo = Memo::new();
    for r in results {
        let ((a, b), m) = r?;
        lo = lo.min(a);
        hi = hi.max(b);
        memo.extend(m);
    }
    memo.insert(p.clone(), (lo, hi));
    Ok((lo, hi, memo))
}

/// Explores all permissible center choices for every presentation of `s`.
pub fn exhaustive_search(s: &Scenario, b: &SearchBound) -> Result<SearchResult, OracleError> {
    let mut roots = Vec::new();
    let mut states = 0;
    let (mut lo, mut hi) = (0u64, 0u64);
    for node in s.nodes().iter().filter(|n| n.parent.is_none()) {
        let p = &node.presentation;
        if p.k() > b.max_k {
            return Err(OracleError::OutOfBounds(format!("{}: k = {} > {}", node.id, p.k(), b.max_k)));
        }
        let point = uniform_point(p)?;
        if let Some(big) = point.0.iter().flatten().find(|&&x| x > b.max_entry) {
            return Err(OracleError::OutOfBounds(format!(
                "{}: entry {big} > {}",
                node.id, b.max_entry
            )));
        }
        let (min_steps, max_steps, memo) = search_point(&point, b.max_depth)?;
        states += memo.len();
        lo += min_steps;
        hi += max_steps;
        if hi > b.max_depth as u64 {
            let search = Search {
                max_depth: b.max_depth,
                memo,
            };
            return Err(OracleError::BoundExceeded {
                reason: format!("some choice of centers needs {hi} blowups, more than {}", b.max_depth),
                path: search.max_path(&point),
            });
        }
        roots.push(RootResult {
            id: node.id,
            point,
            min_steps,
            max_steps,
        });
    }
    Ok(SearchResult {
        all_terminate: true,
        min_depth: lo,
        max_depth: hi,
        roots,
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(x: &[u64]) -> ExponentRow {
        ExponentRow::from_u64s(x)
    }

    fn scenario(form: LocalForm, n: usize) -> Scenario {
        let p = MonomialPresentation::in_chart(form, n, 1).unwrap();
        let q = p.context().q_in_e;
        Scenario::new(n, vec![q], vec![p]).unwrap()
    }

    #[test]
    fn principal_examples() {
        let none = FreeVars::default();
        assert!(!oracle_principal(&row(&[2, 0]), &row(&[0, 3]), none));
        assert!(oracle_principal(&row(&[1, 1]), &row(&[2, 3]), none));
        assert!(!oracle_principal(&row(&[3]), &row(&[1]), FreeVars { u: false, v: true }));
        assert!(oracle_principal(&row(&[1]), &row(&[1]), FreeVars { u: false, v: true }));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(oracle_rank(&row(&[2, 0]), &row(&[0, 3])), 2);
        assert_eq!(oracle_rank(&row(&[2, 4]), &row(&[1, 2])), 1);
        assert_eq!(oracle_rank(&row(&[0, 0]), &row(&[0, 0])), 0);
    }

    #[test]
    fn smooth_terminates_in_one() {
        let r = exhaustive_search(&scenario(LocalForm::F6, 2), &SearchBound::depth(2)).unwrap();
        assert_eq!((r.min_depth, r.max_depth), (1, 1));
    }

    #[test]
    fn one_point_takes_exactly_k() {
        for k in 1..=6u64 {
            let s = scenario(LocalForm::f1(&[k], &[0]), 2);
            let r = exhaustive_search(&s, &SearchBound::depth(k as usize + 1)).unwrap();
            assert_eq!((r.min_depth, r.max_depth), (k, k));
        }
    }

    #[test]
    fn euclid_bounds() {
        let s = scenario(LocalForm::f5(&[2, 0], &[0, 3]), 2);
        let r = exhaustive_search(&s, &SearchBound::depth(32)).unwrap();
        assert!(r.all_terminate);
        assert!(r.min_depth >= 1 && r.min_depth <= r.max_depth);
        let err = exhaustive_search(&s, &SearchBound::depth(1)).unwrap_err();
        match err {
            OracleError::BoundExceeded { path, .. } => assert!(!path.is_empty()),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn bounds_are_checked() {
        let s = scenario(LocalForm::f5(&[9, 0], &[0, 3]), 2);
        let b = SearchBound::new(5, 4, 32).unwrap();
        assert!(matches!(exhaustive_search(&s, &b), Err(OracleError::OutOfBounds(_))));
        assert!(SearchBound::new(0, 1, 1).is_err());
    }
}
