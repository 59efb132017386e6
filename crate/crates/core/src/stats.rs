//! Whole-graph statistics: density, average degree with dispersion, and
//! clustering.
//!
//! Two clustering statistics are exposed. [`clustering_coefficient`] is the
//! global triangle ratio (closed triads over all triads); this is the
//! quantity reported in the corpus summary tables. The per-node average of
//! local coefficients is available as [`average_local_clustering`].

use serde::Serialize;

use crate::error::MetricError;
use crate::graph::CharacterGraph;

/// Summary row for one graph.
#[derive(Debug, Clone, Serialize)]
pub struct GlobalStats {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub avg_degree: f64,
    pub degree_std: f64,
    pub density: f64,
    pub clustering: f64,
}

/// Density `2M / (N(N-1))`.
pub fn density(graph: &CharacterGraph) -> Result<f64, MetricError> {
    let n = graph.node_count();
    if n < 2 {
        return Err(MetricError::TooFewNodes { needed: 2, got: n });
    }
    let m = graph.edge_count() as f64;
    Ok(2.0 * m / (n as f64 * (n as f64 - 1.0)))
}

/// Mean degree and population standard deviation of the degree sequence.
pub fn average_degree(graph: &CharacterGraph) -> Result<(f64, f64), MetricError> {
    let n = graph.node_count();
    if n == 0 {
        return Err(MetricError::EmptyGraph);
    }
    let degrees = graph.degrees();
    let mean = degrees.iter().map(|&k| k as f64).sum::<f64>() / n as f64;
    let var = degrees
        .iter()
        .map(|&k| {
            let d = k as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / n as f64;
    Ok((mean, var.sqrt()))
}

/// Number of links among the neighbors of `v`.
fn links_among_neighbors(graph: &CharacterGraph, v: usize) -> u64 {
    let neighbors = graph.neighbors(v);
    let mut links = 0u64;
    for (i, &(a, _)) in neighbors.iter().enumerate() {
        for &(b, _) in &neighbors[i + 1..] {
            if graph.has_edge(a, b) {
                links += 1;
            }
        }
    }
    links
}

/// Global clustering: the fraction of connected triples that close into
/// triangles. 0 for graphs without any connected triple.
pub fn clustering_coefficient(graph: &CharacterGraph) -> Result<f64, MetricError> {
    let n = graph.node_count();
    if n == 0 {
        return Err(MetricError::EmptyGraph);
    }
    let mut closed = 0u64;
    let mut triads = 0u64;
    for v in 0..n {
        let k = graph.neighbors(v).len() as u64;
        if k < 2 {
            continue;
        }
        triads += k * (k - 1) / 2;
        closed += links_among_neighbors(graph, v);
    }
    if triads == 0 {
        return Ok(0.0);
    }
    Ok(closed as f64 / triads as f64)
}

/// Average of local clustering coefficients `c_i = 2 l_i / (K_i (K_i - 1))`,
/// with `c_i = 0` for nodes of degree at most 1 and the divisor kept at `N`.
pub fn average_local_clustering(graph: &CharacterGraph) -> Result<f64, MetricError> {
    let n = graph.node_count();
    if n == 0 {
        return Err(MetricError::EmptyGraph);
    }
    let mut sum = 0.0;
    for v in 0..n {
        let k = graph.neighbors(v).len();
        if k < 2 {
            continue;
        }
        let links = links_among_neighbors(graph, v) as f64;
        sum += 2.0 * links / (k as f64 * (k as f64 - 1.0));
    }
    Ok(sum / n as f64)
}

/// All summary statistics for one graph.
pub fn global_stats(graph: &CharacterGraph) -> Result<GlobalStats, MetricError> {
    let density = density(graph)?;
    let (avg_degree, degree_std) = average_degree(graph)?;
    let clustering = clustering_coefficient(graph)?;
    Ok(GlobalStats {
        n_nodes: graph.node_count(),
        n_edges: graph.edge_count(),
        avg_degree,
        degree_std,
        density,
        clustering,
    })
}
