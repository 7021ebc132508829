//! JSON file format for SDS definitions.
//!
//! ```json
//! {
//!   "n": 4,
//!   "edges": [[1, 2], [1, 3], [1, 4], [3, 4]],
//!   "order": [2, 4, 1, 3],
//!   "functions": [{"vertex": 1, "table": "0101101001101001"}, ...]
//! }
//! ```
//!
//! Vertices are 1-based. Each `table` is a `0/1` string of length
//! `2^(d(v)+1)` indexed by the canonical tuple encoding (first argument most
//! significant).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sds::{BaseGraph, SdsDefinition, UpdateOrder, VertexFunction};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SdsFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub order: Vec<usize>,
    pub functions: Vec<FunctionEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionEntry {
    pub vertex: usize,
    pub table: String,
}

impl SdsFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_definition(&self) -> Result<SdsDefinition> {
        let graph = BaseGraph::new(self.n, &self.edges)?;
        let order = UpdateOrder::new(self.order.clone())?;
        let mut tables: Vec<Option<VertexFunction>> = vec![None; self.n];
        for entry in &self.functions {
            if entry.vertex < 1 || entry.vertex > self.n {
                return Err(Error::VertexOutOfRange {
                    index: entry.vertex,
                    n: self.n,
                });
            }
            if tables[entry.vertex - 1].is_some() {
                return Err(Error::Parse(format!(
                    "duplicate function entry for vertex {}",
                    entry.vertex
                )));
            }
            tables[entry.vertex - 1] = Some(VertexFunction::from_bitstring(&entry.table)?);
        }
        let functions = tables
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::Parse(format!("missing function for vertex {}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        SdsDefinition::new(graph, functions, order)
    }

    pub fn from_definition(sds: &SdsDefinition) -> Self {
        SdsFile {
            n: sds.n(),
            edges: sds.graph().edges().to_vec(),
            order: sds.order().as_slice().to_vec(),
            functions: sds
                .functions()
                .iter()
                .enumerate()
                .map(|(i, f)| FunctionEntry {
                    vertex: i + 1,
                    table: f.table_bitstring(),
                })
                .collect(),
        }
    }
}
