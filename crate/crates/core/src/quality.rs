//! Partition quality: modularity and community statistics.

use alloc::collections::BTreeMap;

use crate::error::QualityError;
use crate::graph::{Graph, VertexId};

fn check_labels(g: &Graph, labels: &[VertexId]) -> Result<(), QualityError> {
    let n = g.num_vertices();
    if labels.len() != n {
        return Err(QualityError::LengthMismatch {
            labels: labels.len(),
            num_vertices: n,
        });
    }
    if let Some(v) = labels.iter().position(|&c| c as usize >= n) {
        return Err(QualityError::LabelOutOfRange {
            vertex: v,
            label: labels[v],
        });
    }
    if g.total_weight() <= 0.0 {
        return Err(QualityError::UndefinedModularity);
    }
    Ok(())
}

/// Modularity `Q = Σ_c [σ_c / 2m − (Σ_c / 2m)²]`.
///
/// `σ_c` sums the weight of arcs with both ends in `c` and `Σ_c` the weight
/// of arcs leaving a vertex of `c`; both directions of every edge are counted
/// and a self-loop arc counts once. Community terms are added in order of
/// each community's first vertex, so renaming labels does not change the
/// result.
pub fn modularity(g: &Graph, labels: &[VertexId]) -> Result<f64, QualityError> {
    check_labels(g, labels)?;
    let n = g.num_vertices();
    let mut internal = alloc::vec![0.0f64; n];
    let mut total = alloc::vec![0.0f64; n];
    for (u, v, w) in g.arcs() {
        let c = labels[u as usize] as usize;
        total[c] += w;
        if labels[v as usize] as usize == c {
            internal[c] += w;
        }
    }
    let two_m = g.total_weight();
    let mut seen = alloc::vec![false; n];
    let mut q = 0.0;
    for &c in labels {
        let c = c as usize;
        if !core::mem::replace(&mut seen[c], true) {
            let share = total[c] / two_m;
            q += internal[c] / two_m - share * share;
        }
    }
    Ok(q)
}

/// Modularity by the literal pairwise sum
/// `Q = 1/2m Σ_{i,j} [A_ij − K_i K_j / 2m] δ(C_i, C_j)` over all ordered
/// vertex pairs, where `A_ij` is the total weight of stored arcs `i → j`.
///
/// Quadratic in `N`; meant for cross-checking [`modularity`] on small graphs.
pub fn modularity_oracle(g: &Graph, labels: &[VertexId]) -> Result<f64, QualityError> {
    check_labels(g, labels)?;
    let n = g.num_vertices();
    let two_m = g.total_weight();
    let degrees = g.weighted_degrees();
    let mut row = alloc::vec![0.0f64; n];
    let mut sum = 0.0;
    for i in 0..n {
        for (j, w) in g.neighbors(i as VertexId) {
            row[j as usize] += w;
        }
        for j in 0..n {
            if labels[i] == labels[j] {
                sum += row[j] - degrees[i] * degrees[j] / two_m;
            }
        }
        for (j, _) in g.neighbors(i as VertexId) {
            row[j as usize] = 0.0;
        }
    }
    Ok(sum / two_m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionStats {
    pub num_communities: usize,
    /// Community size → number of communities of that size.
    pub sizes: BTreeMap<usize, usize>,
    pub modularity: f64,
}

pub fn partition_stats(g: &Graph, labels: &[VertexId]) -> Result<PartitionStats, QualityError> {
    let modularity = modularity(g, labels)?;
    let mut members = alloc::vec![0usize; g.num_vertices()];
    for &c in labels {
        members[c as usize] += 1;
    }
    let mut sizes = BTreeMap::new();
    for &s in members.iter().filter(|&&s| s > 0) {
        *sizes.entry(s).or_insert(0) += 1;
    }
    Ok(PartitionStats {
        num_communities: sizes.values().sum(),
        sizes,
        modularity,
    })
}
