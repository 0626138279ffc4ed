//! Binary CSR cache.
//!
//! All integers little-endian:
//!
//! | bytes | content                                  |
//! |-------|------------------------------------------|
//! | 8     | magic `LPCSRBIN`                         |
//! | 4     | format version, `u32` = 1                |
//! | 4     | reserved, `u32` = 0                      |
//! | 8     | vertex count `N`, `u64`                  |
//! | 8     | arc count `M`, `u64`                     |
//! | 8(N+1)| offsets, `u64` each                      |
//! | 4M    | targets, `u32` each                      |
//! | 8M    | weights, IEEE-754 `f64` bit patterns     |
//!
//! Weighted degrees and total weight are recomputed on load.

use std::io::{Read, Write};

use labelprop_core::Graph;

use crate::error::LoadError;

pub const MAGIC: [u8; 8] = *b"LPCSRBIN";
pub const VERSION: u32 = 1;

pub fn write_csr_bin<W: Write>(mut w: W, g: &Graph) -> std::io::Result<()> {
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?;
    w.write_all(&(g.num_vertices() as u64).to_le_bytes())?;
    w.write_all(&(g.num_arcs() as u64).to_le_bytes())?;
    for &o in g.offsets() {
        w.write_all(&(o as u64).to_le_bytes())?;
    }
    for &t in g.targets() {
        w.write_all(&t.to_le_bytes())?;
    }
    for &x in g.weights() {
        w.write_all(&x.to_bits().to_le_bytes())?;
    }
    Ok(())
}

fn read_array<R: Read, const W: usize, T>(
    r: &mut R,
    len: usize,
    decode: impl Fn([u8; W]) -> T,
) -> Result<Vec<T>, LoadError> {
    let mut raw = vec![0u8; len.checked_mul(W).ok_or_else(too_large)?];
    r.read_exact(&mut raw)?;
    Ok(raw
        .chunks_exact(W)
        .map(|c| decode(c.try_into().expect("chunk width")))
        .collect())
}

fn too_large() -> LoadError {
    LoadError::Format("csr-bin array length overflows".into())
}

pub fn read_csr_bin<R: Read>(mut r: R) -> Result<Graph, LoadError> {
    let mut head = [0u8; 32];
    r.read_exact(&mut head)?;
    if head[..8] != MAGIC {
        return Err(LoadError::Format("bad csr-bin magic".into()));
    }
    let version = u32::from_le_bytes(head[8..12].try_into().unwrap());
    if version != VERSION {
        return Err(LoadError::Format(format!("csr-bin version {version}")));
    }
    let n = u64::from_le_bytes(head[16..24].try_into().unwrap());
    let m = u64::from_le_bytes(head[24..32].try_into().unwrap());
    let n = usize::try_from(n).map_err(|_| too_large())?;
    let m = usize::try_from(m).map_err(|_| too_large())?;
    let offsets: Vec<usize> = read_array(&mut r, n.checked_add(1).ok_or_else(too_large)?, |b| {
        u64::from_le_bytes(b) as usize
    })?;
    let targets = read_array(&mut r, m, u32::from_le_bytes)?;
    let weights = read_array(&mut r, m, |b| f64::from_bits(u64::from_le_bytes(b)))?;
    let mut trailing = [0u8; 1];
    if r.read(&mut trailing)? != 0 {
        return Err(LoadError::Format(
            "trailing bytes after csr-bin payload".into(),
        ));
    }
    let g = Graph::from_csr(offsets, targets, weights)?;
    if let Some(v) = g.validate().first() {
        return Err(LoadError::Validation(v.to_string()));
    }
    Ok(g)
}
