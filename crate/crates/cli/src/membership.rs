//! Membership files: one `vertex_id label` pair per line, 0-based, in vertex
//! order.

use std::io::{BufRead, Write};

use labelprop_core::VertexId;

use crate::error::LoadError;

pub fn write_membership<W: Write>(mut w: W, labels: &[VertexId]) -> std::io::Result<()> {
    for (v, c) in labels.iter().enumerate() {
        writeln!(w, "{v} {c}")?;
    }
    Ok(())
}

pub fn membership_bytes(labels: &[VertexId]) -> Vec<u8> {
    let mut out = Vec::with_capacity(labels.len() * 8);
    write_membership(&mut out, labels).expect("writing to memory");
    out
}

/// Reads labels back; vertex ids must appear as `0, 1, 2, ...`.
pub fn read_membership<R: BufRead>(r: R) -> Result<Vec<VertexId>, LoadError> {
    let mut labels = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut it = text.split_whitespace().map(str::parse::<VertexId>);
        match (it.next(), it.next()) {
            (Some(Ok(v)), Some(Ok(c))) if v as usize == labels.len() => labels.push(c),
            _ => {
                return Err(LoadError::parse(
                    line_no,
                    "expected `vertex label` in vertex order",
                ))
            }
        }
    }
    Ok(labels)
}
