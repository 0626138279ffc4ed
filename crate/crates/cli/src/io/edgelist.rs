use std::io::{BufRead, Write};

use labelprop_core::{Graph, VertexId};

use super::{parse_weight, ArcBuffer};
use crate::error::LoadError;

#[derive(Debug, Clone, Default)]
pub struct EdgeListOptions {
    /// Read a third column as the edge weight; otherwise every weight is 1.
    pub weighted: bool,
    /// Vertex ids in the file start at 1.
    pub one_indexed: bool,
    /// Add the reverse of every non-loop line. Without this the file itself
    /// must list both directions.
    pub symmetrize: bool,
    /// Declared vertex count; inferred as `1 + max id` when absent.
    pub num_vertices: Option<usize>,
}

pub fn load_edge_list<R: BufRead>(
    reader: R,
    options: &EdgeListOptions,
) -> Result<Graph, LoadError> {
    let mut arcs = ArcBuffer::with_capacity(0);
    let mut max_id: Option<VertexId> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') || text.starts_with('%') {
            continue;
        }
        let mut tokens = text.split_whitespace();
        let mut id = |name: &str| -> Result<VertexId, LoadError> {
            let tok = tokens
                .next()
                .ok_or_else(|| LoadError::parse(line_no, format!("missing {name} vertex")))?;
            let raw: i64 = tok
                .parse()
                .map_err(|_| LoadError::parse(line_no, format!("invalid vertex id {tok:?}")))?;
            let v = if options.one_indexed { raw - 1 } else { raw };
            let limit = options.num_vertices.unwrap_or(VertexId::MAX as usize);
            if v < 0 || v as u64 >= limit as u64 {
                return Err(LoadError::Bounds {
                    line: line_no,
                    vertex: raw,
                    num_vertices: limit,
                });
            }
            Ok(v as VertexId)
        };
        let u = id("source")?;
        let v = id("target")?;
        let w = if options.weighted {
            let tok = tokens
                .next()
                .ok_or_else(|| LoadError::parse(line_no, "missing weight"))?;
            parse_weight(line_no, tok)?
        } else {
            1.0
        };
        max_id = max_id.max(Some(u.max(v)));
        arcs.push(u, v, w, options.symmetrize);
    }
    let n = options
        .num_vertices
        .unwrap_or_else(|| max_id.map_or(0, |m| m as usize + 1));
    arcs.finish(n)
}

/// Writes every stored arc as `u v w`, preceded by a comment with the vertex
/// count. Reading it back with `weighted`, no symmetrization and the same
/// vertex count reproduces the graph exactly.
pub fn write_edge_list<W: Write>(mut w: W, g: &Graph) -> std::io::Result<()> {
    writeln!(w, "# vertices {} arcs {}", g.num_vertices(), g.num_arcs())?;
    for (u, v, wt) in g.arcs() {
        writeln!(w, "{u} {v} {wt}")?;
    }
    Ok(())
}
