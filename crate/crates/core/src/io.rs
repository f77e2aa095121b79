//! JSON file formats.
//!
//! Graphs: `{"n": n, "edges": [[u, v], ...], "rotation": [[edge, ...], ...],
//! "signature": [±1, ...]}` with `rotation` and `signature` optional. Edge ids
//! are positions in `edges`.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<EdgeId>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<i8>>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile { n: g.vertex_count(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(), rotation: None, signature: None }
    }

    /// Signatures are written only when some edge is twisted.
    pub fn from_embedding(emb: &EmbeddedGraph) -> Self {
        GraphFile {
            rotation: Some(emb.rotations().to_vec()),
            signature: (!emb.is_all_positive()).then(|| emb.signatures().to_vec()),
            ..Self::from_graph(emb.graph())
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)).collect())
    }

    /// Fails with [`Error::MissingEmbedding`] when no rotation is present.
    pub fn to_embedding(&self) -> Result<EmbeddedGraph> {
        let rotation = self.rotation.clone().ok_or(Error::MissingEmbedding)?;
        let g = self.to_graph()?;
        match &self.signature {
            Some(sig) => EmbeddedGraph::with_signature(g, rotation, sig.clone()),
            None => EmbeddedGraph::new(g, rotation),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline; byte-identical for equal values.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents)?,
        None => std::io::stdout().write_all(contents.as_bytes())?,
    }
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    read_json::<GraphFile>(path)?.to_graph()
}

pub fn read_embedding(path: &Path) -> Result<EmbeddedGraph> {
    read_json::<GraphFile>(path)?.to_embedding()
}
