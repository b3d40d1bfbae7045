//! JSON documents for instances and solved schedules.
//!
//! ```json
//! {"version": 1, "T": 5, "resources": [
//!   {"lower": 1, "upper": 3, "cost": {"kind": "tabulated", "values": [2.0, 3.5, 5.5]}},
//!   {"lower": 0, "upper": 9, "cost": {"kind": "linear", "a": 1.5, "b": 0.0}}
//! ]}
//! ```
//!
//! Tabulated `values` start at the resource's lower limit. Other cost kinds
//! are `power_convex` (`a`, `p`) and `log_concave` (`a`).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost_model::{CostError, CostFunction, CostModel};
use crate::instance::{Instance, InstanceError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported format version {found}, expected {FORMAT_VERSION}")]
    Version { found: u32 },
    #[error("resource {resource}: {source}")]
    Resource { resource: usize, source: CostError },
    #[error("invalid instance: {0}")]
    Invariant(#[from] InstanceError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    version: u32,
    #[serde(rename = "T")]
    tasks: usize,
    resources: Vec<ResourceDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResourceDoc {
    lower: usize,
    upper: usize,
    cost: CostDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum CostDoc {
    Tabulated {
        values: Vec<f64>,
    },
    Linear {
        a: f64,
        #[serde(default)]
        b: f64,
    },
    PowerConvex {
        a: f64,
        p: f64,
    },
    LogConcave {
        a: f64,
    },
}

impl ResourceDoc {
    fn into_model(self) -> Result<(usize, usize, CostModel), CostError> {
        let (lower, upper) = (self.lower, self.upper);
        let model = match self.cost {
            CostDoc::Tabulated { values } => {
                let expected = upper.checked_sub(lower).map(|d| d + 1);
                if expected != Some(values.len()) {
                    return Err(CostError::TableLength {
                        len: values.len(),
                        lower,
                        upper,
                        expected: expected.unwrap_or(0),
                    });
                }
                CostModel::tabulated(lower, values)?
            }
            CostDoc::Linear { a, b } => CostModel::linear(lower, upper, a, b)?,
            CostDoc::PowerConvex { a, p } => CostModel::power_convex(lower, upper, a, p)?,
            CostDoc::LogConcave { a } => CostModel::log_concave(lower, upper, a)?,
        };
        Ok((lower, upper, model))
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    if doc.version != FORMAT_VERSION {
        return Err(FormatError::Version { found: doc.version });
    }
    let n = doc.resources.len();
    let (mut lower, mut upper, mut costs) =
        (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for (resource, res) in doc.resources.into_iter().enumerate() {
        let (l, u, model) = res
            .into_model()
            .map_err(|source| FormatError::Resource { resource, source })?;
        lower.push(l);
        upper.push(u);
        costs.push(model);
    }
    Ok(Instance::new(doc.tasks, lower, upper, costs)?)
}

pub fn instance_to_json(instance: &Instance) -> String {
    let resources = (0..instance.len())
        .map(|i| {
            let (lower, upper) = (instance.lower()[i], instance.upper()[i]);
            let model = &instance.costs()[i];
            let cost = match model.function() {
                CostFunction::Tabulated(values) => CostDoc::Tabulated {
                    values: values[lower - model.lower()..=upper - model.lower()].to_vec(),
                },
                &CostFunction::Linear { a, b } => CostDoc::Linear { a, b },
                &CostFunction::PowerConvex { a, p } => CostDoc::PowerConvex { a, p },
                &CostFunction::LogConcave { a } => CostDoc::LogConcave { a },
            };
            ResourceDoc { lower, upper, cost }
        })
        .collect();
    let doc = InstanceDoc {
        version: FORMAT_VERSION,
        tasks: instance.tasks(),
        resources,
    };
    serde_json::to_string_pretty(&doc).expect("instance documents always serialize")
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance, FormatError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_instance(&text)
}

pub fn write_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<(), FormatError> {
    let path = path.as_ref();
    let mut text = instance_to_json(instance);
    text.push('\n');
    fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Output document of a solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub assignment: Vec<usize>,
    pub total_cost: f64,
    pub algorithm: String,
    pub elapsed_ns: u64,
}

impl ScheduleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("schedule reports always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = r#"{
        "version": 1,
        "T": 5,
        "resources": [
            {"lower": 1, "upper": 6, "cost": {"kind": "tabulated", "values": [2, 3.5, 5.5, 8, 10, 12]}},
            {"lower": 0, "upper": 6, "cost": {"kind": "tabulated", "values": [0, 1.5, 2.5, 4, 7, 9, 11]}},
            {"lower": 0, "upper": 5, "cost": {"kind": "tabulated", "values": [0, 3, 4, 5, 6, 7]}}
        ]
    }"#;

    #[test]
    fn parses_worked_example() {
        let inst = parse_instance(WORKED).unwrap();
        assert_eq!(inst.len(), 3);
        assert_eq!(inst.tasks(), 5);
        assert_eq!(inst.upper(), &[6, 6, 5]);
        assert_eq!(inst.lower(), &[1, 0, 0]);
        assert_eq!(inst.cost(0, 2), 3.5);
    }

    #[test]
    fn empty_resources_is_an_invariant_error() {
        let err = parse_instance(r#"{"version":1,"T":0,"resources":[]}"#).unwrap_err();
        assert!(matches!(err, FormatError::Invariant(InstanceError::NoResources)));
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let err = parse_instance("{\"version\":1,\n\"T\":3,\n\"resources\":[{\"lower\":0}]}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("upper"), "{err}");
        assert!(err.contains("line 3"), "{err}");

        let err = parse_instance(
            r#"{"version":1,"T":3,"resources":[{"lower":0,"upper":3,"cost":{"kind":"tabulated","values":[0,1]}}]}"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            FormatError::Resource {
                resource: 0,
                source: CostError::TableLength { len: 2, expected: 4, .. }
            }
        ));

        let err = parse_instance(r#"{"version":2,"T":0,"resources":[]}"#).unwrap_err();
        assert!(matches!(err, FormatError::Version { found: 2 }));
    }

    #[test]
    fn tasks_outside_limits_rejected() {
        let text = WORKED.replace("\"T\": 5", "\"T\": 40");
        assert!(matches!(
            parse_instance(&text),
            Err(FormatError::Invariant(InstanceError::TasksOutOfRange { .. }))
        ));
    }

    #[test]
    fn parametric_kinds() {
        let text = r#"{"version":1,"T":4,"resources":[
            {"lower":0,"upper":4,"cost":{"kind":"linear","a":2}},
            {"lower":1,"upper":4,"cost":{"kind":"power_convex","a":1,"p":2}},
            {"lower":0,"upper":4,"cost":{"kind":"log_concave","a":3}}]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.cost(0, 3), 6.0);
        assert_eq!(inst.cost(1, 3), 9.0);
        let again = parse_instance(&instance_to_json(&inst)).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn file_round_trip() {
        let inst = parse_instance(WORKED).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inst.json");
        write_instance(&inst, &path).unwrap();
        assert_eq!(read_instance(&path).unwrap(), inst);
        assert!(matches!(
            read_instance(dir.path().join("missing.json")),
            Err(FormatError::Io { .. })
        ));
    }

    #[test]
    fn report_json_shape() {
        let report = ScheduleReport {
            assignment: vec![2, 3, 0],
            total_cost: 7.5,
            algorithm: "dp".into(),
            elapsed_ns: 12,
        };
        assert_eq!(
            report.to_json(),
            r#"{"assignment":[2,3,0],"total_cost":7.5,"algorithm":"dp","elapsed_ns":12}"#
        );
    }
}
