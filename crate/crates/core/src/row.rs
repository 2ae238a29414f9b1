//! Exponent rows and the small amount of exact integer linear algebra the
//! engine needs (2×k ranks, gcd primitivization).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exponents of the toroidal variables `x_1 .. x_k` in one monomial.
///
/// Entries are arbitrary precision: blowups add columns, and nothing about
/// the combinatorics should depend on machine word size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentRow(Vec<BigUint>);

impl ExponentRow {
    pub fn new(entries: Vec<BigUint>) -> Self {
        ExponentRow(entries)
    }

    pub fn from_u64s(entries: &[u64]) -> Self {
        ExponentRow(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        ExponentRow(vec![BigUint::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigUint> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<BigUint> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|e| !e.is_zero())
    }

    /// Componentwise `self <= other`; rows of different length never compare.
    pub fn divides(&self, other: &ExponentRow) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference `self - other`, `None` if some entry would go
    /// negative.
    pub fn checked_sub(&self, other: &ExponentRow) -> Option<ExponentRow> {
        if !other.divides(self) {
            return None;
        }
        Some(ExponentRow(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scaled(&self, factor: &BigUint) -> ExponentRow {
        ExponentRow(self.0.iter().map(|e| e * factor).collect())
    }

    pub fn gcd(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigUint::zero(), |acc, e| acc.gcd(e))
    }

    /// Splits a nonzero row as `content · primitive`.
    pub fn primitive_part(&self) -> Option<(ExponentRow, BigUint)> {
        let content = self.gcd();
        if content.is_zero() {
            return None;
        }
        Some((
            ExponentRow(self.0.iter().map(|e| e / &content).collect()),
            content,
        ))
    }

    pub fn with_appended(&self, entry: BigUint) -> ExponentRow {
        let mut v = self.0.clone();
        v.push(entry);
        ExponentRow(v)
    }

    pub fn without(&self, index: usize) -> ExponentRow {
        let mut v = self.0.clone();
        v.remove(index);
        ExponentRow(v)
    }

    pub fn set(&mut self, index: usize, value: BigUint) {
        self.0[index] = value;
    }

    pub fn permuted(&self, perm: &[usize]) -> ExponentRow {
        ExponentRow(perm.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl std::ops::Index<usize> for ExponentRow {
    type Output = BigUint;
    fn index(&self, index: usize) -> &BigUint {
        &self.0[index]
    }
}

impl fmt::Debug for ExponentRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExponentRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Signed difference `a - b` of two exponents.
pub fn signed_diff(a: &BigUint, b: &BigUint) -> BigInt {
    BigInt::from(a.clone()) - BigInt::from(b.clone())
}

/// The 2×2 minor `a_i b_j - a_j b_i` of the stacked matrix `[u; v]`.
pub fn minor(u: &ExponentRow, v: &ExponentRow, i: usize, j: usize) -> BigInt {
    BigInt::from(&u[i] * &v[j]) - BigInt::from(&u[j] * &v[i])
}

/// Rank of the 2×k matrix with rows `u` and `v`, computed from its minors.
pub fn rank2(u: &ExponentRow, v: &ExponentRow) -> usize {
    debug_assert_eq!(u.len(), v.len());
    if u.is_zero() && v.is_zero() {
        return 0;
    }
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            if !minor(u, v, i, j).is_zero() {
                return 2;
            }
        }
    }
    1
}

impl Serialize for ExponentRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for e in &self.0 {
            serialize_exponent_elem(e, &mut seq)?;
        }
        seq.end()
    }
}

fn serialize_exponent_elem<S: SerializeSeq>(e: &BigUint, seq: &mut S) -> Result<(), S::Error> {
    match e.to_u64() {
        Some(small) => seq.serialize_element(&small),
        None => seq.serialize_element(&e.to_string()),
    }
}

/// Serde adapter for a single exponent: a JSON number when it fits in `u64`,
/// a decimal string otherwise.
pub mod exponent_serde {
    use super::*;

    pub fn serialize<S: Serializer>(e: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
        match e.to_u64() {
            Some(small) => serializer.serialize_u64(small),
            None => serializer.serialize_str(&e.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigUint, D::Error> {
        deserializer.deserialize_any(ExponentVisitor)
    }
}

struct ExponentVisitor;

impl<'de> Visitor<'de> for ExponentVisitor {
    type Value = BigUint;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a non-negative integer or a decimal string")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigUint, E> {
        Ok(BigUint::from(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigUint, E> {
        u64::try_from(v)
            .map(BigUint::from)
            .map_err(|_| E::custom(format!("negative exponent {v}")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigUint, E> {
        v.parse::<BigUint>()
            .map_err(|_| E::custom(format!("invalid exponent {v:?}")))
    }
}

struct ExponentElem(BigUint);

impl<'de> Deserialize<'de> for ExponentElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ExponentVisitor).map(ExponentElem)
    }
}

impl<'de> Deserialize<'de> for ExponentRow {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RowVisitor;
        impl<'de> Visitor<'de> for RowVisitor {
            type Value = ExponentRow;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of non-negative exponents")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<ExponentRow, A::Error> {
                let mut out = Vec::new();
                while let Some(ExponentElem(e)) = seq.next_element()? {
                    out.push(e);
                }
                Ok(ExponentRow(out))
            }
        }
        deserializer.deserialize_seq(RowVisitor)
    }
}
