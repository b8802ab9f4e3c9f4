//! Text and JSON graph formats.
//!
//! Text: first line `n`, then `n` rows of multiplicities (`inf` allowed),
//! then `S: ids`. A `/` may stand in for a line break, `#` starts a comment.

use serde::{Deserialize, Serialize};

use super::{GraphError, RelativeGraph};
use crate::ext_nat::Multiplicity;
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub adj: Vec<Vec<Multiplicity>>,
    #[serde(rename = "S", default)]
    pub s: Vec<Vertex>,
}

fn syntax(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Syntax { line, msg: msg.into() }
}

impl RelativeGraph {
    /// Parses either format; input starting with `{` is read as JSON.
    pub fn parse(input: &str) -> Result<Self, GraphError> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<Self, GraphError> {
        let mut lines = Vec::new();
        for (i, raw) in input.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            for part in body.split('/') {
                let t = part.trim();
                if !t.is_empty() {
                    lines.push((i + 1, t));
                }
            }
        }
        let mut it = lines.into_iter();
        let (l0, first) = it.next().ok_or_else(|| syntax(1, "empty input"))?;
        let n: usize = first
            .parse()
            .map_err(|_| syntax(l0, format!("expected vertex count, found `{first}`")))?;
        let mut rows = Vec::with_capacity(n);
        let mut last_line = l0;
        for r in 0..n {
            let (ln, text) = it
                .next()
                .ok_or_else(|| syntax(last_line + 1, format!("missing row {r}")))?;
            last_line = ln;
            if text.starts_with("S:") {
                return Err(syntax(ln, format!("missing row {r}")));
            }
            let row = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<Multiplicity>().map_err(|e| syntax(ln, e)))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(syntax(ln, format!("row {r} has {} entries, expected {n}", row.len())));
            }
            rows.push(row);
        }
        let (ln, text) = it
            .next()
            .ok_or_else(|| syntax(last_line + 1, "missing `S:` line"))?;
        let rest = text
            .strip_prefix("S:")
            .ok_or_else(|| syntax(ln, format!("expected `S:` line, found `{text}`")))?;
        let mut s = VertexSet::new();
        for t in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: Vertex = t
                .parse()
                .map_err(|_| syntax(ln, format!("bad vertex id `{t}`")))?;
            s.insert(v);
        }
        if let Some((ln, extra)) = it.next() {
            return Err(syntax(ln, format!("unexpected trailing input `{extra}`")));
        }
        RelativeGraph::new(rows, s)
    }

    pub fn parse_json(input: &str) -> Result<Self, GraphError> {
        let doc: GraphDoc = serde_json::from_str(input).map_err(|e| syntax(e.line(), e.to_string()))?;
        RelativeGraph::from_doc(doc)
    }

    pub fn from_doc(doc: GraphDoc) -> Result<Self, GraphError> {
        if doc.adj.len() != doc.n {
            return Err(GraphError::NotSquare { row: doc.adj.len(), len: 0, n: doc.n });
        }
        RelativeGraph::new(doc.adj, doc.s.into_iter().collect())
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            n: self.vertex_count(),
            adj: self.rows(),
            s: self.relations().iter().collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count());
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|m| m.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        let s: Vec<String> = self.relations().iter().map(|v| v.to_string()).collect();
        if s.is_empty() {
            out.push_str("S:\n");
        } else {
            out.push_str(&format!("S: {}\n", s.join(" ")));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph serializes")
    }
}
