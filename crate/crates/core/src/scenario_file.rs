//! The scenario file: the morphism's presentations at `q`, chart by chart,
//! and the list of further point blowups of the base.
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 2,
//!   "m_charts": 1,
//!   "q_in_e": [true],
//!   "presentations": [{ "chart": 1, "form": "F5", "u": [2, 0], "v": [0, 3] }],
//!   "y_blowups": [{ "point": "zero" }]
//! }
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::descent::{BasePoint, Slope};
use crate::forms::{ChartContext, LocalForm, MonomialPresentation};
use crate::principalize::Scenario;

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub n: usize,
    pub m_charts: usize,
    pub q_in_e: Vec<bool>,
    /// Where the strict transform of `E` meets the exceptional curve.
    /// Defaults to what the chart divisors force.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_prime: Option<BTreeSet<Slope>>,
    pub presentations: Vec<PresentationEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub y_blowups: Vec<YBlowup>,
}

/// One presentation: its chart and its form-tagged exponent data, in a
/// single flat object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationEntry {
    pub chart: usize,
    pub form: LocalForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YBlowup {
    pub point: Slope,
}

impl Serialize for PresentationEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut obj = match serde_json::to_value(&self.form).map_err(serde::ser::Error::custom)? {
            Value::Object(m) => m,
            _ => unreachable!("forms serialize as objects"),
        };
        obj.insert("chart".into(), Value::from(self.chart));
        obj.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PresentationEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let mut obj = Map::deserialize(deserializer)?;
        let chart = obj
            .remove("chart")
            .ok_or_else(|| D::Error::missing_field("chart"))?;
        let chart = chart
            .as_u64()
            .ok_or_else(|| D::Error::custom("chart: expected a positive integer"))? as usize;
        let tag = obj
            .get("form")
            .and_then(Value::as_str)
            .ok_or_else(|| D::Error::custom("form: expected one of \"F1\"..\"F8\""))?
            .to_string();
        let allowed: &[&str] = match tag.as_str() {
            "F1" | "F2" | "F3" | "F5" => &["form", "u", "v"],
            "F4" => &["form", "g", "m", "t"],
            "F7" => &["form", "alpha_nonzero"],
            "F6" | "F8" => &["form"],
            other => return Err(D::Error::custom(format!("form: unknown form {other:?}"))),
        };
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(D::Error::custom(format!("{k}: unknown field for form {tag}")));
        }
        for k in allowed {
            if !obj.contains_key(*k) {
                return Err(D::Error::custom(format!("{k}: missing field for form {tag}")));
            }
        }
        // report the offending field by name
        for (k, v) in obj.iter() {
            if k == "form" {
                continue;
            }
            let ok = match k.as_str() {
                "alpha_nonzero" => v.is_boolean(),
                "u" | "v" | "g" => v.is_array(),
                _ => true,
            };
            if !ok {
                return Err(D::Error::custom(format!("{k}: wrong type")));
            }
            if let Value::Array(items) = v {
                for (i, item) in items.iter().enumerate() {
                    let good = item.is_u64() || item.as_str().is_some_and(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()));
                    if !good {
                        return Err(D::Error::custom(format!(
                            "{k}[{i}]: expected a non-negative integer, got {item}"
                        )));
                    }
                }
            }
        }
        let form = LocalForm::deserialize(Value::Object(obj)).map_err(D::Error::custom)?;
        Ok(PresentationEntry { chart, form })
    }
}

/// A scenario file that could not be read or does not describe a valid
/// scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaError {
    /// Path of the offending field, e.g. `presentations[1].u[0]`.
    pub path: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl SchemaError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError {
            path: path.into(),
            message: message.into(),
            line: None,
            column: None,
        }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = if self.path.is_empty() { "." } else { &self.path };
        write!(f, "{path}: {}", self.message)?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " (line {l}, column {c})")?;
        }
        Ok(())
    }
}

impl std::error::Error for SchemaError {}

#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Schema(SchemaError),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "{e}"),
            LoadError::Schema(e) => write!(f, "{e}"),
        }
    }
}

impl ScenarioFile {
    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<ScenarioFile, SchemaError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            // serde_json appends " at line L column C" to its messages
            let msg = inner.to_string();
            let msg = match msg.rfind(" at line ") {
                Some(i) => msg[..i].to_string(),
                None => msg,
            };
            SchemaError {
                path: if path == "." { String::new() } else { path },
                message: msg,
                line: Some(inner.line()),
                column: Some(inner.column()),
            }
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<ScenarioFile, LoadError> {
        let text = std::fs::read_to_string(path).map_err(LoadError::Io)?;
        ScenarioFile::from_json(&text).map_err(LoadError::Schema)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<(), SchemaError> {
        if self.version != SCENARIO_VERSION {
            return Err(SchemaError::at(
                "version",
                format!("unsupported version {}, expected {SCENARIO_VERSION}", self.version),
            ));
        }
        if self.m_charts == 0 {
            return Err(SchemaError::at("m_charts", "at least one chart is required"));
        }
        if self.q_in_e.len() != self.m_charts {
            return Err(SchemaError::at(
                "q_in_e",
                format!("expected {} entries, one per chart, got {}", self.m_charts, self.q_in_e.len()),
            ));
        }
        self.presentations()?;
        let base = self.base_point()?;
        base.validate().map_err(|e| SchemaError::at("e_prime", e.to_string()))?;
        Scenario::new(self.n, self.q_in_e.clone(), self.presentations()?)
            .map_err(|e| SchemaError::at("presentations", e.to_string()))?;
        Ok(())
    }

    /// The validated presentations, in file order.
    pub fn presentations(&self) -> Result<Vec<MonomialPresentation>, SchemaError> {
        self.presentations
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let path = format!("presentations[{i}]");
                if e.chart == 0 || e.chart > self.m_charts {
                    return Err(SchemaError::at(
                        format!("{path}.chart"),
                        format!("chart {} outside 1..={}", e.chart, self.m_charts),
                    ));
                }
                let q = self.q_in_e[e.chart - 1];
                let has_branch = e.form.base_branches() > 0;
                if q != has_branch {
                    return Err(SchemaError::at(
                        format!("{path}.form"),
                        format!(
                            "{} is a form for charts with q {} E_i, but q_in_e[{}] = {q}",
                            e.form.tag().name(),
                            if has_branch { "in" } else { "not in" },
                            e.chart - 1
                        ),
                    ));
                }
                MonomialPresentation::new(e.form.clone(), self.n, ChartContext::new(e.chart, q))
                    .map_err(|err| SchemaError::at(path, err.to_string()))
            })
            .collect()
    }

    /// Branches of each chart divisor at `q`, read off the presentations.
    pub fn chart_branches(&self) -> Vec<u8> {
        (1..=self.m_charts)
            .map(|chart| {
                self.presentations
                    .iter()
                    .filter(|e| e.chart == chart)
                    .map(|e| e.form.base_branches())
                    .max()
                    .unwrap_or(u8::from(self.q_in_e.get(chart - 1).copied().unwrap_or(false)))
            })
            .collect()
    }

    pub fn base_point(&self) -> Result<BasePoint, SchemaError> {
        let branches = self.chart_branches();
        match &self.e_prime {
            None => Ok(BasePoint::from_charts(branches)),
            Some(e) => BasePoint::new(branches, e.clone()).map_err(|err| SchemaError::at("e_prime", err.to_string())),
        }
    }

    pub fn points(&self) -> Vec<Slope> {
        self.y_blowups.iter().map(|b| b.point).collect()
    }

    /// The first round's scenario.
    pub fn scenario(&self) -> Result<Scenario, SchemaError> {
        Scenario::new(self.n, self.q_in_e.clone(), self.presentations()?)
            .map_err(|e| SchemaError::at("presentations", e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EUCLID: &str = r#"{"version":1,"n":2,"m_charts":1,"q_in_e":[true],
        "presentations":[{"chart":1,"form":"F5","u":[2,0],"v":[0,3]}]}"#;

    #[test]
    fn parses_and_round_trips() {
        let f = ScenarioFile::from_json(EUCLID).unwrap();
        assert_eq!(f.presentations[0].form, LocalForm::f5(&[2, 0], &[0, 3]));
        let again = ScenarioFile::from_json(&f.to_json()).unwrap();
        assert_eq!(f, again);
    }

    fn err(text: &str) -> SchemaError {
        ScenarioFile::from_json(text).unwrap_err()
    }

    #[test]
    fn diagnostics_name_the_field() {
        let e = err(&EUCLID.replace("[2,0]", "[2,-1]"));
        assert!(e.path.starts_with("presentations[0]"), "{e}");
        assert!(e.message.contains("u[1]"), "{e}");
        let e = err(&EUCLID.replace("\"n\":2", "\"n\":\"two\""));
        assert_eq!(e.path, "n");
        assert!(e.line.is_some());
        let e = err(&EUCLID.replace("\"version\":1", "\"version\":1,\"extra\":0"));
        assert!(e.message.contains("extra"), "{e}");
        let e = err(&EUCLID.replace("\"chart\":1", "\"chart\":2"));
        assert_eq!(e.path, "presentations[0].chart");
        let e = err(&EUCLID.replace("[0,3]", "[0,0]"));
        assert_eq!(e.path, "presentations[0]");
        let e = err(&EUCLID.replace("[true]", "[false]"));
        assert_eq!(e.path, "presentations[0].form");
        let e = err(&EUCLID.replace("\"version\":1", "\"version\":7"));
        assert_eq!(e.path, "version");
    }

    #[test]
    fn e_prime_is_checked() {
        let t = EUCLID.replace("\"q_in_e\":[true],", "\"q_in_e\":[true],\"e_prime\":[\"zero\"],");
        assert_eq!(err(&t).path, "e_prime");
    }
}
