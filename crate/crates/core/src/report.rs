//! Versioned JSON report emitted by the command-line tool.
//!
//! Fields are plain structs and `BTreeMap`s, so serialization order is
//! fixed. Optional sections are omitted when absent; `timing_ms` is the only
//! field that varies between identical runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::ClassificationReport;
use crate::complex::SimplicialComplex;
use crate::hochster::{BigradedEntry, BigradedTable, CacheStats, DegreeTotal};

pub const REPORT_SCHEMA: u32 = 1;
pub const TOOL: &str = "mal";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub m: usize,
    pub dim: i32,
    pub f_vector: Vec<usize>,
    pub facets: usize,
}

impl ComplexSummary {
    pub fn of(k: &SimplicialComplex) -> Self {
        ComplexSummary { m: k.vertex_count(), dim: k.dim(), f_vector: k.f_vector(), facets: k.facets().len() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiSection {
    pub totals: Vec<DegreeTotal>,
    pub torsion: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bigraded: Option<Vec<BigradedEntry>>,
}

impl BettiSection {
    pub fn of(table: &BigradedTable, full: bool) -> Self {
        BettiSection {
            totals: table.aggregated(),
            torsion: table.has_torsion(),
            bigraded: full.then(|| table.bigraded()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_hash: String,
    pub complex: ComplexSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    /// Command-specific extras keyed by section name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sections: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<CacheStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportDocument {
    pub fn new(command: &str, k: &SimplicialComplex) -> Self {
        ReportDocument {
            schema: REPORT_SCHEMA,
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_hash: k.content_hash(),
            complex: ComplexSummary::of(k),
            betti: None,
            classification: None,
            sections: BTreeMap::new(),
            cache: None,
            timing_ms: None,
        }
    }

    pub fn section(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report section serializes");
        self.sections.insert(name.to_string(), v);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
