//! JSON report shape for enumeration results. Counts are decimal strings;
//! JSON numbers are not big-integer safe.

use crate::enumerate::EnumerationResult;
use crate::tri::GroundSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const ENUMERATION_SCHEMA: &str = "enumeration-result.v1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EnumerationReport {
    pub schema: String,
    pub input_sha: String,
    pub n: usize,
    pub v: usize,
    pub b: usize,
    pub count: String,
    #[serde(rename = "V")]
    pub degree_sums_interior: BTreeMap<u32, String>,
    #[serde(rename = "B")]
    pub degree_sums_boundary: BTreeMap<u32, String>,
    pub method: String,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub cached: bool,
}

impl EnumerationReport {
    pub fn new(input_sha: &str, ground: &GroundSet, result: &EnumerationResult) -> Self {
        EnumerationReport {
            schema: ENUMERATION_SCHEMA.to_string(),
            input_sha: input_sha.to_string(),
            n: ground.n(),
            v: ground.v(),
            b: ground.b(),
            count: result.count.to_string(),
            degree_sums_interior: result
                .degree_sums_interior
                .iter()
                .map(|(&d, c)| (d, c.to_string()))
                .collect(),
            degree_sums_boundary: result
                .degree_sums_boundary
                .iter()
                .map(|(&d, c)| (d, c.to_string()))
                .collect(),
            method: result.method.as_str().to_string(),
            elapsed_ms: result.elapsed.as_millis() as u64,
            cached: false,
        }
    }
}
