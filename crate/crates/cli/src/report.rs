use std::fmt::Write as _;

use phylopart::{Partition, RootedTree, TaxonId, Taxa, VertexId};
use serde::Serialize;

/// Process exit codes.
pub mod exit {
    pub const COMPATIBLE: i32 = 0;
    pub const R_COMPATIBLE_ONLY: i32 = 1;
    pub const NEGATIVE: i32 = 2;
    pub const INPUT_ERROR: i32 = 3;
    pub const BUDGET_EXCEEDED: i32 = 4;
    pub const ORACLE_DISAGREES: i32 = 5;
}

/// An edge named by its child vertex and the leaves below it.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EdgeRef {
    pub id: String,
    pub cluster: Vec<String>,
}

impl EdgeRef {
    pub fn rooted(t: &RootedTree, v: VertexId) -> Self {
        EdgeRef {
            id: format!("v{v}"),
            cluster: labels(t.taxa(), &t.cluster(v)),
        }
    }

    fn text(&self) -> String {
        format!("{} {{{}}}", self.id, self.cluster.join(","))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Conflict {
    pub vertex: EdgeRef,
    pub blocks: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub edge: EdgeRef,
    pub blocks: [Vec<String>; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeColors {
    pub edge: EdgeRef,
    pub colors: Vec<u32>,
}

/// Everything a command reports. Absent fields are omitted from JSON and text.
#[derive(Debug, Clone, Serialize, Default)]
pub struct Report {
    pub command: &'static str,
    pub verdict: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_set: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeRef>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict: Option<Conflict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refinement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_like: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splits: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_colors: Option<Vec<EdgeColors>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_space: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, verdict: &str, exit_code: i32) -> Self {
        Report {
            command,
            verdict: verdict.to_string(),
            exit_code,
            ..Report::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verdict: {}\n", self.verdict);
        let mut line = |key: &str, value: &str| {
            let _ = writeln!(out, "{key}: {value}");
        };
        if let Some(e) = &self.error {
            line("error", e);
        }
        if let Some(t) = &self.tree {
            line("tree", t);
        }
        if let Some(c) = &self.conflict {
            let blocks: Vec<String> = c.blocks.iter().map(|b| b.join(",")).collect();
            line("conflict", &format!("{} joins blocks {}", c.vertex.text(), blocks.join(" | ")));
        }
        if let Some(w) = &self.witness {
            line(
                "witness",
                &format!(
                    "edge {} is colored by blocks {} and {}",
                    w.edge.text(),
                    w.blocks[0].join(","),
                    w.blocks[1].join(",")
                ),
            );
        }
        if let Some(r) = &self.refinement {
            line("refinement", r);
        }
        if let Some(p) = &self.partition {
            line("partition", p);
        }
        if let Some(t) = self.tree_like {
            line("tree-like", if t { "yes" } else { "no" });
        }
        if let Some(c) = self.color {
            line("color", &c.to_string());
        }
        if let Some(s) = &self.search_space {
            line("search space", s);
        }
        if let Some(b) = self.budget {
            line("budget", &b.to_string());
        }
        if let Some(o) = &self.oracle {
            line("oracle", o);
        }
        if let Some(edges) = &self.edges {
            let kind = self.edge_set.unwrap_or("separating");
            let _ = writeln!(out, "edges ({kind}, {}):", edges.len());
            for e in edges {
                let _ = writeln!(out, "  {}", e.text());
            }
        }
        if let Some(splits) = &self.splits {
            let _ = writeln!(out, "splits ({}):", splits.len());
            for s in splits {
                let _ = writeln!(out, "  {s}");
            }
        }
        if let Some(colors) = &self.edge_colors {
            let _ = writeln!(out, "edge colors ({}):", colors.len());
            for c in colors {
                let list: Vec<String> = c.colors.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "  {}: {}", c.edge.text(), list.join(","));
            }
        }
        out
    }
}

pub fn labels(taxa: &Taxa, set: &[TaxonId]) -> Vec<String> {
    set.iter().map(|&x| taxa.label(x).to_string()).collect()
}

pub fn block_labels(p: &Partition, a: phylopart::BlockId) -> Vec<String> {
    labels(p.taxa(), p.block(a))
}
