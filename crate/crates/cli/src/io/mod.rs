//! Graph file formats.
//!
//! * edge list: one `u v [w]` per line, `#` or `%` comments
//! * MatrixMarket coordinate: `pattern`/`real`/`integer`, `general`/`symmetric`
//! * csr-bin: little-endian binary dump of the CSR arrays, see [`csrbin`]

pub mod csrbin;
pub mod edgelist;
pub mod mtx;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use labelprop_core::{Graph, VertexId};

pub use csrbin::{read_csr_bin, write_csr_bin};
pub use edgelist::{load_edge_list, write_edge_list, EdgeListOptions};
pub use mtx::{load_matrix_market, write_matrix_market};

use crate::error::LoadError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Mtx,
    EdgeList,
    CsrBin,
}

impl Format {
    /// Guesses from the file extension; anything unrecognized is an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") => Format::Mtx,
            Some("csr") | Some("bin") => Format::CsrBin,
            _ => Format::EdgeList,
        }
    }
}

pub fn load_graph(
    path: &Path,
    format: Format,
    options: &EdgeListOptions,
) -> Result<Graph, LoadError> {
    let reader = BufReader::new(File::open(path)?);
    match format {
        Format::Mtx => load_matrix_market(reader),
        Format::EdgeList => load_edge_list(reader, options),
        Format::CsrBin => read_csr_bin(reader),
    }
}

pub fn save_csr_bin(path: &Path, g: &Graph) -> Result<(), LoadError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_csr_bin(&mut w, g)?;
    w.flush()?;
    Ok(())
}

/// Collects arcs while parsing, optionally adding reverse arcs.
pub(crate) struct ArcBuffer {
    arcs: Vec<(VertexId, VertexId, f64)>,
}

impl ArcBuffer {
    pub(crate) fn with_capacity(n: usize) -> Self {
        Self {
            arcs: Vec::with_capacity(n),
        }
    }

    /// Pushes `(u, v, w)`, and `(v, u, w)` too when `mirror` is set and the
    /// arc is not a self-loop.
    pub(crate) fn push(&mut self, u: VertexId, v: VertexId, w: f64, mirror: bool) {
        self.arcs.push((u, v, w));
        if mirror && u != v {
            self.arcs.push((v, u, w));
        }
    }

    pub(crate) fn finish(self, num_vertices: usize) -> Result<Graph, LoadError> {
        let g = Graph::from_arcs(num_vertices, &self.arcs)?;
        if let Some(v) = g.validate().first() {
            return Err(LoadError::Validation(format!(
                "{v} (input is not symmetric; load it with symmetrization enabled)"
            )));
        }
        Ok(g)
    }
}

pub(crate) fn parse_weight(line: usize, token: &str) -> Result<f64, LoadError> {
    let w: f64 = token
        .parse()
        .map_err(|_| LoadError::parse(line, format!("invalid weight {token:?}")))?;
    if !(w.is_finite() && w >= 0.0) {
        return Err(LoadError::Validation(format!(
            "line {line}: weight {w} must be finite and nonnegative"
        )));
    }
    Ok(w)
}
