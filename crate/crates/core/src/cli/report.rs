use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::grid::GridDiagram;
use crate::hpd::{Certificate, SODBlock};

/// What every subcommand prints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub blocks: Vec<SODBlock>,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDiagram>,
}

impl CliReport {
    pub fn new(command: &str, inputs: BTreeMap<String, Value>) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            blocks: Vec::new(),
            certificates: Vec::new(),
            data: None,
            grid: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }

    fn inputs_line(&self) -> String {
        self.inputs
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.inputs_line());
        if !self.blocks.is_empty() {
            out.push_str("blocks:\n");
            for b in &self.blocks {
                let _ = writeln!(out, "  {b}");
            }
        }
        if !self.certificates.is_empty() {
            out.push_str("certificates:\n");
            for c in &self.certificates {
                let _ = writeln!(out, "  {c}");
            }
        }
        if let Some(data) = &self.data {
            out.push_str("data:\n");
            let pretty = serde_json::to_string_pretty(data).expect("json values serialize");
            for line in pretty.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        if let Some(grid) = &self.grid {
            out.push_str(&grid.render_ascii());
        }
        out
    }

    pub fn tsv_rows(&self, out: &mut String) {
        let inputs = self.inputs_line().replace(' ', ";");
        let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
        for b in &self.blocks {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                self.command,
                inputs,
                b.label,
                opt(b.alpha),
                opt(b.beta),
                b.rank
            );
        }
    }
}

pub const TSV_HEADER: &str = "command\tinputs\tlabel\talpha\tbeta\trank\n";

pub(crate) fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}
