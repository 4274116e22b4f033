//! Schedule and report JSON.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::LayoutSpec;
use crate::scheduler::{Report, Schedule};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeJson {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpJson {
    pub source_index: usize,
    pub angle: String,
    pub pauli: String,
    pub tree: TreeJson,
    pub storage_vertex: Option<usize>,
    pub ancillary_vertex: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepJson {
    pub ops: Vec<OpJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsJson {
    #[serde(rename = "EN")]
    pub en: usize,
    #[serde(rename = "LB")]
    pub lb: usize,
    #[serde(rename = "UB")]
    pub ub: usize,
    #[serde(rename = "W_avg")]
    pub w_avg: f64,
    pub t_dep_s: Option<f64>,
    pub t_sch_s: Option<f64>,
    pub t_tot_s: Option<f64>,
    pub rule: String,
    pub layout: Option<LayoutSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleJson {
    pub time_steps: Vec<StepJson>,
    pub metrics: MetricsJson,
    pub qubit_map: Vec<usize>,
}

impl MetricsJson {
    /// `with_timing = false` writes nulls so output is byte-for-byte reproducible.
    pub fn from_report(r: &Report, with_timing: bool) -> Self {
        let t = |x: f64| with_timing.then_some(x);
        MetricsJson {
            en: r.en,
            lb: r.lb,
            ub: r.ub,
            w_avg: r.average_width,
            t_dep_s: t(r.t_dep_s),
            t_sch_s: t(r.t_sch_s),
            t_tot_s: t(r.t_tot_s),
            rule: r.rule.name().to_string(),
            layout: r.layout,
        }
    }
}

impl ScheduleJson {
    pub fn new(s: &Schedule, r: &Report, with_timing: bool) -> Self {
        let time_steps = s
            .steps
            .iter()
            .map(|step| StepJson {
                ops: step
                    .ops
                    .iter()
                    .map(|op| OpJson {
                        source_index: op.rotation.source_index,
                        angle: op.rotation.angle.token().to_string(),
                        pauli: op.rotation.pauli.to_string(),
                        tree: TreeJson {
                            vertices: op.tree.vertices.clone(),
                            edges: op.tree.edges.iter().map(|&(a, b)| [a, b]).collect(),
                        },
                        storage_vertex: op.tree.storage_vertex,
                        ancillary_vertex: op.tree.ancillary_vertex,
                    })
                    .collect(),
            })
            .collect();
        ScheduleJson {
            time_steps,
            metrics: MetricsJson::from_report(r, with_timing),
            qubit_map: s.qubit_map.clone(),
        }
    }
}

pub fn schedule_to_json(s: &Schedule, r: &Report, with_timing: bool) -> String {
    serde_json::to_string_pretty(&ScheduleJson::new(s, r, with_timing)).expect("schedule serializes")
}

pub fn parse_schedule_json(text: &str) -> Result<ScheduleJson> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

pub fn parse_layout_json(text: &str) -> Result<LayoutSpec> {
    let spec: LayoutSpec = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}
