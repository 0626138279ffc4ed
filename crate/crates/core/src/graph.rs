//! Immutable symmetric weighted graph in compressed sparse row form.
//!
//! Every undirected edge `{i, j}` is stored as the two arcs `(i, j, w)` and
//! `(j, i, w)`. A self-loop is a single arc `(i, i, w)`. Arcs of a vertex keep
//! the order in which they were supplied; duplicates are retained.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::GraphError;

/// Vertex and label identifier.
pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Vec<f64>,
    degrees: Vec<f64>,
    total_weight: f64,
}

impl Graph {
    /// A graph with `n` vertices and no arcs.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::from_csr(alloc::vec![0; n + 1], Vec::new(), Vec::new())
    }

    /// Builds CSR storage from an arc list, grouping arcs by source while
    /// keeping their relative input order.
    ///
    /// The arc list must already be symmetric; this is not checked here (use
    /// [`Graph::validate`]).
    pub fn from_arcs(
        num_vertices: usize,
        arcs: &[(VertexId, VertexId, f64)],
    ) -> Result<Self, GraphError> {
        check_vertex_count(num_vertices)?;
        let mut offsets = alloc::vec![0usize; num_vertices + 1];
        for (k, &(u, v, w)) in arcs.iter().enumerate() {
            for x in [u, v] {
                if x as usize >= num_vertices {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: x as u64,
                        num_vertices,
                    });
                }
            }
            check_weight(k, w)?;
            offsets[u as usize + 1] += 1;
        }
        for i in 0..num_vertices {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = alloc::vec![0; arcs.len()];
        let mut weights = alloc::vec![0.0; arcs.len()];
        for &(u, v, w) in arcs {
            let slot = &mut cursor[u as usize];
            targets[*slot] = v;
            weights[*slot] = normalize_zero(w);
            *slot += 1;
        }
        Ok(Self::assemble(offsets, targets, weights))
    }

    /// Wraps existing CSR arrays, checking their shape and computing weighted
    /// degrees and total weight.
    pub fn from_csr(
        offsets: Vec<usize>,
        targets: Vec<VertexId>,
        weights: Vec<f64>,
    ) -> Result<Self, GraphError> {
        if offsets.is_empty() {
            return Err(GraphError::Malformed(Violation::OffsetsLength {
                expected: 1,
                found: 0,
            }));
        }
        check_vertex_count(offsets.len() - 1)?;
        if let Some(v) = check_shape(&offsets, &targets, &weights).into_iter().next() {
            return Err(GraphError::Malformed(v));
        }
        for (k, &w) in weights.iter().enumerate() {
            check_weight(k, w)?;
        }
        Ok(Self::assemble(offsets, targets, weights))
    }

    /// Assembles a graph from raw parts without any checking, including
    /// caller-supplied degrees and total weight. Intended for deserializers
    /// and for constructing deliberately broken graphs; run
    /// [`Graph::validate`] before handing the result to an algorithm.
    pub fn from_raw_parts(
        offsets: Vec<usize>,
        targets: Vec<VertexId>,
        weights: Vec<f64>,
        weighted_degrees: Vec<f64>,
        total_weight: f64,
    ) -> Self {
        Self {
            offsets,
            targets,
            weights,
            degrees: weighted_degrees,
            total_weight,
        }
    }

    fn assemble(offsets: Vec<usize>, targets: Vec<VertexId>, weights: Vec<f64>) -> Self {
        let degrees = degrees_of(&offsets, &weights);
        let total_weight = degrees.iter().sum();
        Self {
            offsets,
            targets,
            weights,
            degrees,
            total_weight,
        }
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    /// Number of stored arcs (each undirected edge counts twice).
    #[inline]
    pub fn num_arcs(&self) -> usize {
        self.targets.len()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weighted_degrees(&self) -> &[f64] {
        &self.degrees
    }

    #[inline]
    pub fn weighted_degree(&self, v: VertexId) -> f64 {
        self.degrees[v as usize]
    }

    /// Sum of all arc weights, i.e. twice the undirected edge weight.
    #[inline]
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    #[inline]
    pub fn arc_range(&self, v: VertexId) -> Range<usize> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }

    /// `(target, weight)` pairs of the arcs leaving `v`, in storage order.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        let r = self.arc_range(v);
        self.targets[r.clone()]
            .iter()
            .copied()
            .zip(self.weights[r].iter().copied())
    }

    /// Every stored arc as `(source, target, weight)`, grouped by source.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        (0..self.num_vertices() as VertexId)
            .flat_map(move |u| self.neighbors(u).map(move |(v, w)| (u, v, w)))
    }

    /// Checks every structural invariant and returns the violations found.
    /// An empty list means the graph is safe to hand to any algorithm.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = check_shape(&self.offsets, &self.targets, &self.weights);
        if !out.is_empty() {
            // Remaining checks index through the offsets.
            return out;
        }
        for (k, &w) in self.weights.iter().enumerate() {
            if !(w.is_finite() && w >= 0.0) {
                out.push(Violation::InvalidWeight { arc: k });
            }
        }
        out.extend(check_symmetry(&self.offsets, &self.targets, &self.weights));

        let n = self.num_vertices();
        if self.degrees.len() != n {
            out.push(Violation::DegreesLength {
                expected: n,
                found: self.degrees.len(),
            });
        } else {
            let fresh = degrees_of(&self.offsets, &self.weights);
            for (v, (a, b)) in fresh.iter().zip(&self.degrees).enumerate() {
                if a.to_bits() != b.to_bits() {
                    out.push(Violation::DegreeMismatch { vertex: v });
                }
            }
            let total: f64 = self.degrees.iter().sum();
            if total.to_bits() != self.total_weight.to_bits() {
                out.push(Violation::TotalWeightMismatch);
            }
        }
        out
    }
}

/// A broken [`Graph`] invariant, with the offending index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OffsetsLength { expected: usize, found: usize },
    OffsetsStart,
    OffsetsDecreasing { vertex: usize },
    OffsetsEnd { expected: usize, found: usize },
    WeightsLength { expected: usize, found: usize },
    TargetOutOfRange { arc: usize },
    InvalidWeight { arc: usize },
    Asymmetric { arc: usize },
    DegreesLength { expected: usize, found: usize },
    DegreeMismatch { vertex: usize },
    TotalWeightMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OffsetsLength { expected, found } => {
                write!(f, "offsets length: expected {expected}, found {found}")
            }
            Violation::OffsetsStart => f.write_str("offsets start: offsets[0] != 0"),
            Violation::OffsetsDecreasing { vertex } => {
                write!(f, "offsets order: decrease at vertex {vertex}")
            }
            Violation::OffsetsEnd { expected, found } => {
                write!(f, "offsets end: offsets[N] = {found}, arc count {expected}")
            }
            Violation::WeightsLength { expected, found } => {
                write!(f, "weights length: expected {expected}, found {found}")
            }
            Violation::TargetOutOfRange { arc } => write!(f, "target range at arc {arc}"),
            Violation::InvalidWeight { arc } => write!(f, "weight sign at arc {arc}"),
            Violation::Asymmetric { arc } => write!(f, "symmetry at arc {arc}"),
            Violation::DegreesLength { expected, found } => {
                write!(f, "degree count: expected {expected}, found {found}")
            }
            Violation::DegreeMismatch { vertex } => write!(f, "degree mismatch at vertex {vertex}"),
            Violation::TotalWeightMismatch => f.write_str("total weight mismatch"),
        }
    }
}

fn check_vertex_count(n: usize) -> Result<(), GraphError> {
    if n > VertexId::MAX as usize {
        return Err(GraphError::TooManyVertices(n));
    }
    Ok(())
}

fn check_weight(arc: usize, w: f64) -> Result<(), GraphError> {
    if w.is_finite() && w >= 0.0 {
        Ok(())
    } else {
        Err(GraphError::InvalidWeight { arc, weight: w })
    }
}

#[inline]
fn normalize_zero(w: f64) -> f64 {
    // folds -0.0 into +0.0 so symmetric arcs compare bit-equal
    w + 0.0
}

fn degrees_of(offsets: &[usize], weights: &[f64]) -> Vec<f64> {
    offsets
        .windows(2)
        .map(|r| weights[r[0]..r[1]].iter().sum())
        .collect()
}

fn check_shape(offsets: &[usize], targets: &[VertexId], weights: &[f64]) -> Vec<Violation> {
    let mut out = Vec::new();
    let Some(&last) = offsets.last() else {
        out.push(Violation::OffsetsLength {
            expected: 1,
            found: 0,
        });
        return out;
    };
    let n = offsets.len() - 1;
    if offsets[0] != 0 {
        out.push(Violation::OffsetsStart);
    }
    if let Some(v) = offsets.windows(2).position(|r| r[0] > r[1]) {
        out.push(Violation::OffsetsDecreasing { vertex: v });
    }
    if last != targets.len() {
        out.push(Violation::OffsetsEnd {
            expected: targets.len(),
            found: last,
        });
    }
    if weights.len() != targets.len() {
        out.push(Violation::WeightsLength {
            expected: targets.len(),
            found: weights.len(),
        });
    }
    if let Some(k) = targets.iter().position(|&t| t as usize >= n) {
        out.push(Violation::TargetOutOfRange { arc: k });
    }
    out
}

/// Arc multiset symmetry: the number of copies of `(i, j, w)` must equal the
/// number of copies of `(j, i, w)`. Reports the lowest arc index of each
/// unmatched key.
fn check_symmetry(offsets: &[usize], targets: &[VertexId], weights: &[f64]) -> Vec<Violation> {
    let mut keyed: Vec<((VertexId, VertexId, u64), usize)> = Vec::with_capacity(targets.len());
    for (u, r) in offsets.windows(2).enumerate() {
        for k in r[0]..r[1] {
            keyed.push(((u as VertexId, targets[k], weights[k].to_bits()), k));
        }
    }
    keyed.sort_unstable();
    let count = |key: (VertexId, VertexId, u64)| {
        let lo = keyed.partition_point(|(x, _)| *x < key);
        let hi = keyed.partition_point(|(x, _)| *x <= key);
        hi - lo
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < keyed.len() {
        let (key, first_arc) = keyed[i];
        let mut j = i;
        while j < keyed.len() && keyed[j].0 == key {
            j += 1;
        }
        if key.0 != key.1 && count((key.1, key.0, key.2)) != j - i {
            out.push(Violation::Asymmetric { arc: first_arc });
        }
        i = j;
    }
    out.sort_unstable_by_key(|v| match v {
        Violation::Asymmetric { arc } => *arc,
        _ => usize::MAX,
    });
    out
}
