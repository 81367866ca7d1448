//! Canonical JSON form and DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexLabel};
use crate::error::{Error, Result};

/// Serialized shape of a graph. Field order and compact formatting make the
/// JSON text canonical: `{"n":..,"edges":[[u,v],..],"loops":[..],"labels":[..]}`
/// with `u < v` and edges sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalGraph {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub loops: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<VertexLabel>>,
}

impl From<&Graph> for CanonicalGraph {
    fn from(g: &Graph) -> Self {
        CanonicalGraph {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            loops: g.loops().to_vec(),
            labels: g.labels().map(<[VertexLabel]>::to_vec),
        }
    }
}

impl TryFrom<CanonicalGraph> for Graph {
    type Error = Error;

    fn try_from(c: CanonicalGraph) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = c.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(c.n, &edges, c.loops, c.labels)
    }
}

impl Graph {
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&CanonicalGraph::from(self)).expect("graph serializes")
    }

    /// Parses the JSON graph format. Edge order and orientation in the input
    /// are free; the result re-serializes canonically.
    pub fn from_json(text: &str) -> Result<Graph> {
        let c: CanonicalGraph = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Graph::try_from(c)
    }

    /// DOT rendering; loops appear as self-edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n() {
            if let Some(l) = self.label(v) {
                let text = l.to_string().replace('"', "\\\"");
                let _ = writeln!(out, "  {v} [label=\"{text}\"];");
            } else {
                let _ = writeln!(out, "  {v};");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        for &v in self.loops() {
            let _ = writeln!(out, "  {v} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, exponential_graph, kneser};

    #[test]
    fn canonical_text_is_exact() {
        let g = complete(3);
        assert_eq!(
            g.to_canonical_json(),
            r#"{"n":3,"edges":[[0,1],[0,2],[1,2]],"loops":[],"labels":[0,1,2]}"#
        );
        let e = exponential_graph(2, &complete(2)).unwrap();
        assert_eq!(
            e.to_canonical_json(),
            concat!(
                r#"{"n":4,"edges":[[0,3]],"loops":[1,2],"#,
                r#""labels":[{"f":[1,1]},{"f":[1,2]},{"f":[2,1]},{"f":[2,2]}]}"#
            )
        );
    }

    #[test]
    fn parse_normalizes() {
        let g = Graph::from_json(r#"{"n":3,"edges":[[2,1],[1,0]]}"#).unwrap();
        assert_eq!(g.to_canonical_json(), r#"{"n":3,"edges":[[0,1],[1,2]],"loops":[]}"#);
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,5]]}"#).is_err());
        assert!(Graph::from_json("not json").is_err());
    }

    #[test]
    fn round_trip_kneser() {
        let k = kneser(5, 2).unwrap();
        let text = k.to_canonical_json();
        let back = Graph::from_json(&text).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.to_canonical_json(), text);
    }

    #[test]
    fn dot_has_loops() {
        let e = exponential_graph(2, &complete(2)).unwrap();
        let dot = e.to_dot();
        assert!(dot.contains("1 -- 1;"));
        assert!(dot.contains("0 [label=\"f[1,1]\"];"));
        assert!(dot.contains("0 -- 3;") && !dot.contains("1 -- 2;"));
    }
}
