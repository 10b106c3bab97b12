//! Graph documents.
//!
//! ```json
//! {
//!   "format": "gqtsp-graph",
//!   "version": 1,
//!   "cities": 4,
//!   "degree": 3,
//!   "coordinates": [[0.1, 0.2], ...],
//!   "edges": [[0, 1, 0.53], ...]
//! }
//! ```
//!
//! `edges` lists each undirected edge once as `[i, j, cost]` with `i < j`;
//! missing pairs have no edge. `coordinates` may be omitted. Costs are written
//! in shortest round-trip form, so a file reads back to the same graph.

use std::fs;
use std::path::Path;

use gqtsp_core::tsp::TspGraph;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const GRAPH_FORMAT: &str = "gqtsp-graph";
pub const GRAPH_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub format: String,
    pub version: u32,
    pub cities: usize,
    /// Degree bound the graph was generated for.
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<[f64; 2]>>,
    pub edges: Vec<(usize, usize, f64)>,
}

impl GraphFile {
    pub fn from_graph(graph: &TspGraph, degree: usize) -> GraphFile {
        GraphFile {
            format: GRAPH_FORMAT.to_string(),
            version: GRAPH_VERSION,
            cities: graph.cities(),
            degree: degree.max(graph.max_degree()),
            coordinates: graph.coordinates().map(<[_]>::to_vec),
            edges: graph.edges(),
        }
    }

    pub fn to_graph(&self) -> Result<TspGraph> {
        if self.format != GRAPH_FORMAT || self.version != GRAPH_VERSION {
            return Err(CliError::Usage(format!(
                "unsupported graph document {} v{}",
                self.format, self.version
            )));
        }
        let graph = TspGraph::from_edges(self.cities, &self.edges)?;
        if graph.max_degree() > self.degree {
            return Err(CliError::Usage(format!(
                "graph has degree {} above its declared bound {}",
                graph.max_degree(),
                self.degree
            )));
        }
        match &self.coordinates {
            Some(c) => Ok(graph.with_coordinates(c.clone())?),
            None => Ok(graph),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph documents always serialize");
        s.push('\n');
        s
    }
}

pub fn read_graph(path: &Path) -> Result<(TspGraph, GraphFile)> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let doc: GraphFile =
        serde_json::from_str(&text).map_err(|e| CliError::Json { path: path.to_path_buf(), source: e })?;
    Ok((doc.to_graph()?, doc))
}

pub fn write_graph(path: &Path, graph: &TspGraph, degree: usize) -> Result<()> {
    fs::write(path, GraphFile::from_graph(graph, degree).to_json()).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gqtsp_core::tsp::{random_euclidean_graph, Metric};

    #[test]
    fn round_trip_is_lossless() {
        let g = random_euclidean_graph(6, 4, 11, Metric::Euclidean).unwrap();
        let doc = GraphFile::from_graph(&g, 4);
        let back: GraphFile = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_graph().unwrap(), g);
    }

    #[test]
    fn coordinates_are_optional() {
        let text = r#"{"format":"gqtsp-graph","version":1,"cities":3,"degree":2,
            "edges":[[0,1,1.0],[1,2,2.0],[0,2,3.0]]}"#;
        let doc: GraphFile = serde_json::from_str(text).unwrap();
        let g = doc.to_graph().unwrap();
        assert_eq!(g.cost(0, 2), 3.0);
        assert!(g.coordinates().is_none());
    }

    #[test]
    fn declared_degree_is_checked() {
        let text = r#"{"format":"gqtsp-graph","version":1,"cities":4,"degree":2,
            "edges":[[0,1,1],[0,2,1],[0,3,1],[1,2,1],[2,3,1]]}"#;
        let doc: GraphFile = serde_json::from_str(text).unwrap();
        assert!(matches!(doc.to_graph(), Err(CliError::Usage(_))));
    }
}
