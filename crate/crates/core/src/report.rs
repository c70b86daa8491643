//! The JSON report written by the command-line tool.
//!
//! Key order and number formatting are fixed, so two runs with the same
//! inputs produce byte-identical files apart from the `timings` object. The
//! schema is checked in at `schema/report.schema.json`.

use serde::{Deserialize, Serialize};

use crate::engine::{Algorithm, Mode, ObjectiveKind, RunReport};
use crate::error::Result;
use crate::oracle::GroundSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub config: ConfigEcho,
    pub result: ResultSection,
    pub metrics: Metrics,
    pub timings: TimingSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub algorithm: Algorithm,
    pub objective: ObjectiveKind,
    pub k: usize,
    pub m: usize,
    pub b: usize,
    #[serde(rename = "L")]
    pub levels: usize,
    pub seed: u64,
    pub mode: Mode,
    pub kmedoid_extra: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultSection {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub global_value: Option<f64>,
    /// External ids, in selection order.
    pub members: Vec<u64>,
    /// Dense indices, in selection order.
    pub members_internal: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub total_function_calls: u64,
    pub critical_path_calls: u64,
    pub total_communication_elements: usize,
    pub total_communication_payload_units: usize,
    pub per_node: Vec<NodeMetrics>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeMetrics {
    pub level: usize,
    pub id: usize,
    pub function_calls: u64,
    pub input_elements: usize,
    pub elements_received: usize,
    pub payload_units_received: usize,
    pub solution_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingSection {
    pub ingest_s: f64,
    pub solve_s: f64,
    pub per_level_s: Vec<f64>,
}

impl ReportFile {
    pub fn new(run: &RunReport, ground: &GroundSet, ingest_s: f64) -> Self {
        let members = &run.solution.members;
        ReportFile {
            config: ConfigEcho {
                algorithm: run.algorithm,
                objective: run.objective,
                k: run.k,
                m: run.tree.machines(),
                b: run.tree.branching(),
                levels: run.tree.levels(),
                seed: run.seed,
                mode: run.mode,
                kmedoid_extra: run.kmedoid_extra,
            },
            result: ResultSection {
                value: run.solution.value,
                global_value: run.global_value,
                members: members.iter().map(|&e| ground.original_id(e)).collect(),
                members_internal: members.clone(),
            },
            metrics: Metrics {
                total_function_calls: run.total_function_calls,
                critical_path_calls: run.critical_path_calls,
                total_communication_elements: run.total_communication_elements,
                total_communication_payload_units: run.total_communication_payload_units,
                per_node: run
                    .nodes
                    .iter()
                    .map(|t| NodeMetrics {
                        level: t.label.level,
                        id: t.label.id,
                        function_calls: t.function_calls,
                        input_elements: t.input_elements,
                        elements_received: t.elements_received,
                        payload_units_received: t.payload_units_received,
                        solution_size: t.solution_size,
                    })
                    .collect(),
            },
            timings: TimingSection {
                ingest_s,
                solve_s: run.timings.solve_s,
                per_level_s: run.timings.per_level_s.clone(),
            },
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
