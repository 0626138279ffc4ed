//! Graphs with a known community structure.
//!
//! * clique ring: `k` cliques of `s` vertices; the last vertex of each clique
//!   is its port and ports of consecutive cliques are joined in a ring
//! * barbell: two `s`-cliques whose last vertices are joined by one edge
//! * planted partition: `n` vertices split into contiguous blocks, each pair
//!   joined with probability `p_in` inside a block and `p_out` across blocks
//!
//! Vertex ids are contiguous per community, and the ground-truth label of a
//! vertex is the index of its clique or block.

use std::fmt;
use std::io::Write;

use labelprop_core::{Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::write_matrix_market;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq)]
pub enum SyntheticSpec {
    CliqueRing {
        cliques: usize,
        clique_size: usize,
    },
    Barbell {
        clique_size: usize,
    },
    PlantedPartition {
        vertices: usize,
        blocks: usize,
        p_in: f64,
        p_out: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamError(pub String);

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParamError {}

/// Undirected edge list plus ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedGraph {
    pub num_vertices: usize,
    /// Each undirected edge once, smaller endpoint first.
    pub edges: Vec<(VertexId, VertexId)>,
    pub truth: Vec<VertexId>,
    pub description: String,
}

impl PlantedGraph {
    /// Symmetric CSR graph with unit weights.
    pub fn to_graph(&self) -> Graph {
        let arcs: Vec<_> = self
            .edges
            .iter()
            .flat_map(|&(u, v)| [(u, v, 1.0), (v, u, 1.0)])
            .collect();
        Graph::from_arcs(self.num_vertices, &arcs).expect("generated ids are in range")
    }

    pub fn write_mtx<W: Write>(&self, w: W) -> std::io::Result<()> {
        write_matrix_market(
            w,
            self.num_vertices,
            &self.edges,
            std::slice::from_ref(&self.description),
        )
    }

    pub fn write_truth<W: Write>(&self, w: W) -> std::io::Result<()> {
        crate::membership::write_membership(w, &self.truth)
    }
}

impl SyntheticSpec {
    pub fn generate(&self) -> Result<PlantedGraph, ParamError> {
        match *self {
            SyntheticSpec::CliqueRing {
                cliques,
                clique_size,
            } => clique_ring(cliques, clique_size),
            SyntheticSpec::Barbell { clique_size } => barbell(clique_size),
            SyntheticSpec::PlantedPartition {
                vertices,
                blocks,
                p_in,
                p_out,
                seed,
            } => planted_partition(vertices, blocks, p_in, p_out, seed),
        }
    }
}

fn push_clique(edges: &mut Vec<(VertexId, VertexId)>, first: usize, size: usize) {
    for i in first..first + size {
        for j in i + 1..first + size {
            edges.push((i as VertexId, j as VertexId));
        }
    }
}

fn check_vertex_budget(n: usize) -> Result<(), ParamError> {
    if n > VertexId::MAX as usize {
        return Err(ParamError(format!("{n} vertices is too many")));
    }
    Ok(())
}

pub fn clique_ring(cliques: usize, clique_size: usize) -> Result<PlantedGraph, ParamError> {
    if cliques == 0 || clique_size == 0 {
        return Err(ParamError(
            "clique ring needs at least one clique of at least one vertex".into(),
        ));
    }
    let n = cliques
        .checked_mul(clique_size)
        .ok_or_else(|| ParamError("clique ring too large".into()))?;
    check_vertex_budget(n)?;
    let mut edges = Vec::new();
    for c in 0..cliques {
        push_clique(&mut edges, c * clique_size, clique_size);
    }
    let port = |c: usize| (c * clique_size + clique_size - 1) as VertexId;
    // two cliques share a single link; three or more close the ring
    let links = match cliques {
        1 => 0,
        2 => 1,
        k => k,
    };
    for c in 0..links {
        let (a, b) = (port(c), port((c + 1) % cliques));
        edges.push((a.min(b), a.max(b)));
    }
    Ok(PlantedGraph {
        num_vertices: n,
        edges,
        truth: (0..n).map(|v| (v / clique_size) as VertexId).collect(),
        description: format!("clique-ring cliques={cliques} clique_size={clique_size}"),
    })
}

pub fn barbell(clique_size: usize) -> Result<PlantedGraph, ParamError> {
    if clique_size == 0 {
        return Err(ParamError(
            "barbell needs cliques of at least one vertex".into(),
        ));
    }
    let mut g = clique_ring(2, clique_size)?;
    g.description = format!("barbell clique_size={clique_size}");
    Ok(g)
}

/// Samples each block pair's candidate edges by geometric skipping, so the
/// cost is proportional to the number of edges produced.
pub fn planted_partition(
    vertices: usize,
    blocks: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<PlantedGraph, ParamError> {
    if blocks == 0 || blocks > vertices {
        return Err(ParamError(format!(
            "need 1 <= blocks <= vertices, got {blocks} blocks for {vertices} vertices"
        )));
    }
    for (name, p) in [("p_in", p_in), ("p_out", p_out)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(ParamError(format!("{name} = {p} is not a probability")));
        }
    }
    check_vertex_budget(vertices)?;

    let base = vertices / blocks;
    let extra = vertices % blocks;
    let mut starts = Vec::with_capacity(blocks + 1);
    let mut at = 0;
    for b in 0..blocks {
        starts.push(at);
        at += base + usize::from(b < extra);
    }
    starts.push(at);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..blocks {
        for b in a..blocks {
            let (sa, sb) = (starts[a], starts[b]);
            let (na, nb) = (starts[a + 1] - sa, starts[b + 1] - sb);
            if a == b {
                let pairs = na * na.saturating_sub(1) / 2;
                let mut row = 0;
                let mut row_start = 0;
                sample_indices(&mut rng, pairs, p_in, |idx| {
                    // pairs enumerated row by row: (0,1..), (1,2..), ...
                    while idx >= row_start + (na - 1 - row) {
                        row_start += na - 1 - row;
                        row += 1;
                    }
                    let col = row + 1 + (idx - row_start);
                    edges.push(((sa + row) as VertexId, (sa + col) as VertexId));
                });
            } else {
                sample_indices(&mut rng, na * nb, p_out, |idx| {
                    edges.push(((sa + idx / nb) as VertexId, (sb + idx % nb) as VertexId));
                });
            }
        }
    }
    let truth = (0..blocks)
        .flat_map(|b| std::iter::repeat_n(b as VertexId, starts[b + 1] - starts[b]))
        .collect();
    Ok(PlantedGraph {
        num_vertices: vertices,
        edges,
        truth,
        description: format!(
            "planted-partition vertices={vertices} blocks={blocks} p_in={p_in} p_out={p_out} seed={seed}"
        ),
    })
}

/// Calls `emit` with an increasing sample of `[0, count)` where each index is
/// kept independently with probability `p`.
fn sample_indices(rng: &mut ChaCha8Rng, count: usize, p: f64, mut emit: impl FnMut(usize)) {
    if count == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        (0..count).for_each(emit);
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut idx: usize = 0;
    let mut first = true;
    loop {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        if !skip.is_finite() || skip >= count as f64 {
            return;
        }
        let step = skip as usize + usize::from(!first);
        first = false;
        idx = match idx.checked_add(step) {
            Some(i) if i < count => i,
            _ => return,
        };
        emit(idx);
    }
}
