use std::io::{BufRead, Write};

use labelprop_core::{Graph, VertexId};

use super::{parse_weight, ArcBuffer};
use crate::error::LoadError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Pattern,
    Real,
}

/// Reads a MatrixMarket coordinate file. Indices are 1-based. A `symmetric`
/// file lists one triangle and every off-diagonal entry becomes two arcs; a
/// `general` file is symmetrized the same way, so an entry present in both
/// triangles yields two copies of each arc.
pub fn load_matrix_market<R: BufRead>(reader: R) -> Result<Graph, LoadError> {
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| LoadError::Format("empty MatrixMarket file".into()))?;
    let header = header?;
    let field = parse_header(&header)?;

    let mut size: Option<(usize, usize, usize)> = None;
    let mut arcs = ArcBuffer::with_capacity(0);
    let mut seen = 0usize;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        let mut tokens = text.split_whitespace();
        let Some((rows, cols, nnz)) = size else {
            let mut num = || -> Result<usize, LoadError> {
                tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| LoadError::parse(line_no, "expected `rows cols entries`"))
            };
            let dims = (num()?, num()?, num()?);
            if dims.0.max(dims.1) > VertexId::MAX as usize {
                return Err(LoadError::Format(format!(
                    "{} vertices is too many",
                    dims.0.max(dims.1)
                )));
            }
            arcs = ArcBuffer::with_capacity(2 * dims.2);
            size = Some(dims);
            continue;
        };
        seen += 1;
        if seen > nnz {
            return Err(LoadError::Validation(format!(
                "line {line_no}: more entries than the {nnz} declared"
            )));
        }
        let mut index = |limit: usize| -> Result<VertexId, LoadError> {
            let tok = tokens
                .next()
                .ok_or_else(|| LoadError::parse(line_no, "missing index"))?;
            let raw: i64 = tok
                .parse()
                .map_err(|_| LoadError::parse(line_no, format!("invalid index {tok:?}")))?;
            if raw < 1 || raw as u64 > limit as u64 {
                return Err(LoadError::Bounds {
                    line: line_no,
                    vertex: raw,
                    num_vertices: limit,
                });
            }
            Ok((raw - 1) as VertexId)
        };
        let i = index(rows)?;
        let j = index(cols)?;
        let w = match field {
            Field::Pattern => 1.0,
            Field::Real => {
                let tok = tokens
                    .next()
                    .ok_or_else(|| LoadError::parse(line_no, "missing value"))?;
                parse_weight(line_no, tok)?
            }
        };
        arcs.push(i, j, w, true);
    }
    let Some((rows, cols, nnz)) = size else {
        return Err(LoadError::Format("missing size line".into()));
    };
    if seen != nnz {
        return Err(LoadError::Validation(format!(
            "header declares {nnz} entries but {seen} were found"
        )));
    }
    arcs.finish(rows.max(cols))
}

fn parse_header(line: &str) -> Result<Field, LoadError> {
    let lower = line.to_ascii_lowercase();
    let tokens: Vec<&str> = lower.split_whitespace().collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(LoadError::Format(format!(
            "not a MatrixMarket header: {line:?}"
        )));
    }
    if tokens[2] != "coordinate" {
        return Err(LoadError::Format(format!("{} storage", tokens[2])));
    }
    let field = match tokens[3] {
        "pattern" => Field::Pattern,
        "real" | "integer" => Field::Real,
        other => return Err(LoadError::Format(format!("{other} field"))),
    };
    match tokens[4] {
        "general" | "symmetric" => Ok(field),
        other => Err(LoadError::Format(format!("{other} symmetry"))),
    }
}

/// Writes undirected edges `(u, v)` (0-based) as a symmetric pattern matrix,
/// each entry in the lower triangle. `comment` lines are emitted after the
/// header, each prefixed with `%`.
pub fn write_matrix_market<W: Write>(
    mut w: W,
    num_vertices: usize,
    edges: &[(VertexId, VertexId)],
    comment: &[String],
) -> std::io::Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate pattern symmetric")?;
    for c in comment {
        writeln!(w, "% {c}")?;
    }
    writeln!(w, "{num_vertices} {num_vertices} {}", edges.len())?;
    for &(u, v) in edges {
        let (hi, lo) = if u >= v { (u, v) } else { (v, u) };
        writeln!(w, "{} {}", hi + 1, lo + 1)?;
    }
    Ok(())
}
