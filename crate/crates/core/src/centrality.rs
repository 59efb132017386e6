//! Per-node centrality measures: normalized Degree, Betweenness, Closeness,
//! and the Lobby index.
//!
//! Shortest paths use hop distance; edge weights play no role here. The
//! betweenness accumulation runs one shortest-path pass per source node
//! (Brandes' scheme); passes execute in parallel when the `parallel` feature
//! is enabled, with a fixed-shape reduction so results are bitwise identical
//! to the sequential path in [`seq`].

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::MetricError;
use crate::graph::{CharacterGraph, NodeId};
use crate::numfmt::sig6;

/// Identifies one of the four centrality measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Lobby,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Lobby => "lobby",
        };
        f.write_str(name)
    }
}

/// Normalized per-node values for one measure, indexed by node id. All
/// values lie in [0, 1].
#[derive(Debug, Clone, Serialize)]
pub struct CentralityVector {
    pub measure: Measure,
    pub values: Vec<f64>,
}

/// Lobby index: raw integer `L_i` per node plus the `L_i / (N-1)` normalized
/// vector.
#[derive(Debug, Clone, Serialize)]
pub struct LobbyCentrality {
    pub raw: Vec<usize>,
    pub normalized: CentralityVector,
}

fn require_nodes(graph: &CharacterGraph, needed: usize) -> Result<(), MetricError> {
    let got = graph.node_count();
    if got < needed {
        return Err(MetricError::TooFewNodes { needed, got });
    }
    Ok(())
}

/// Degree centrality `K_i / (N-1)`.
pub fn degree_centrality(graph: &CharacterGraph) -> Result<CentralityVector, MetricError> {
    require_nodes(graph, 2)?;
    let norm = (graph.node_count() - 1) as f64;
    let values = graph.degrees().iter().map(|&k| k as f64 / norm).collect();
    Ok(CentralityVector {
        measure: Measure::Degree,
        values,
    })
}

/// Betweenness centrality: the share of shortest paths passing through each
/// node, normalized by `(N-1)(N-2)/2` pairs. Unreachable pairs contribute
/// zero.
pub fn betweenness_centrality(graph: &CharacterGraph) -> Result<CentralityVector, MetricError> {
    require_nodes(graph, 3)?;
    let acc = betweenness_accumulation(graph);
    Ok(CentralityVector {
        measure: Measure::Betweenness,
        values: normalize_betweenness(graph.node_count(), acc),
    })
}

/// Closeness centrality in the component-corrected form: with `r_i`
/// reachable nodes at total distance `S_i`, the value is
/// `(r_i/(N-1)) * (r_i/S_i)`, which equals `(N-1)/S_i` on connected graphs
/// and 0 for isolated nodes.
pub fn closeness_centrality(graph: &CharacterGraph) -> Result<CentralityVector, MetricError> {
    require_nodes(graph, 2)?;
    Ok(CentralityVector {
        measure: Measure::Closeness,
        values: closeness_values(graph),
    })
}

/// Raw Lobby index per node: the largest `L` such that the node has at least
/// `L` neighbors of degree at least `L` (0 for isolated nodes). Computed by
/// sorting neighbor degrees in non-increasing order and taking the largest
/// rank `j` with `d_j >= j`.
pub fn lobby_raw(graph: &CharacterGraph) -> Vec<usize> {
    (0..graph.node_count())
        .map(|v| {
            let mut degs: Vec<usize> = graph
                .neighbors(v)
                .iter()
                .map(|&(u, _)| graph.neighbors(u).len())
                .collect();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            degs.iter().enumerate().take_while(|&(j, &d)| d > j).count()
        })
        .collect()
}

/// Lobby index with the `L_i / (N-1)` normalization.
pub fn lobby_index(graph: &CharacterGraph) -> Result<LobbyCentrality, MetricError> {
    require_nodes(graph, 2)?;
    let raw = lobby_raw(graph);
    let norm = (graph.node_count() - 1) as f64;
    let values = raw.iter().map(|&l| l as f64 / norm).collect();
    Ok(LobbyCentrality {
        raw,
        normalized: CentralityVector {
            measure: Measure::Lobby,
            values,
        },
    })
}

/// One Brandes pass: dependency accumulation from a single source.
fn brandes_pass(graph: &CharacterGraph, source: NodeId) -> Vec<f64> {
    let n = graph.node_count();
    let mut stack: Vec<NodeId> = Vec::with_capacity(n);
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    sigma[source] = 1.0;
    dist[source] = 0;

    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        stack.push(v);
        for &(w, _) in graph.neighbors(v) {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }

    let mut delta = vec![0.0f64; n];
    while let Some(w) = stack.pop() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
    }
    delta[source] = 0.0;
    delta
}

/// Sources are processed in fixed blocks; the per-block accumulators and the
/// final in-order fold give the parallel path the exact summation shape of
/// the sequential one.
const SOURCE_BLOCK: usize = 32;

fn betweenness_block(graph: &CharacterGraph, start: NodeId) -> Vec<f64> {
    let n = graph.node_count();
    let end = (start + SOURCE_BLOCK).min(n);
    let mut acc = vec![0.0f64; n];
    for s in start..end {
        let delta = brandes_pass(graph, s);
        for (a, d) in acc.iter_mut().zip(delta) {
            *a += d;
        }
    }
    acc
}

fn fold_blocks(n: usize, blocks: Vec<Vec<f64>>) -> Vec<f64> {
    let mut acc = vec![0.0f64; n];
    for block in blocks {
        for (a, b) in acc.iter_mut().zip(block) {
            *a += b;
        }
    }
    acc
}

fn normalize_betweenness(n: usize, acc: Vec<f64>) -> Vec<f64> {
    // Each unordered pair is counted from both endpoints, hence the missing
    // factor 2 in the (N-1)(N-2)/2 pair normalization.
    let norm = ((n - 1) * (n - 2)) as f64;
    acc.into_iter().map(|x| x / norm).collect()
}

fn betweenness_accumulation(graph: &CharacterGraph) -> Vec<f64> {
    let n = graph.node_count();
    let starts: Vec<usize> = (0..n).step_by(SOURCE_BLOCK).collect();
    #[cfg(feature = "parallel")]
    let blocks: Vec<Vec<f64>> = starts
        .par_iter()
        .map(|&s| betweenness_block(graph, s))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let blocks: Vec<Vec<f64>> = starts
        .iter()
        .map(|&s| betweenness_block(graph, s))
        .collect();
    fold_blocks(n, blocks)
}

fn closeness_value(graph: &CharacterGraph, source: NodeId) -> f64 {
    let n = graph.node_count();
    let mut dist = vec![-1i64; n];
    dist[source] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    let mut reachable = 0u64;
    let mut total = 0u64;
    while let Some(v) = queue.pop_front() {
        for &(w, _) in graph.neighbors(v) {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                reachable += 1;
                total += dist[w] as u64;
                queue.push_back(w);
            }
        }
    }
    if reachable == 0 {
        return 0.0;
    }
    let r = reachable as f64;
    (r / (n - 1) as f64) * (r / total as f64)
}

fn closeness_values(graph: &CharacterGraph) -> Vec<f64> {
    let n = graph.node_count();
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(|v| closeness_value(graph, v))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(|v| closeness_value(graph, v)).collect()
    }
}

/// Single-threaded reference paths. They perform the same arithmetic in the
/// same order as the parallel dispatchers, so results are bitwise identical;
/// kept public for verification and benchmarks.
pub mod seq {
    use super::*;

    pub fn betweenness_centrality(graph: &CharacterGraph) -> Result<CentralityVector, MetricError> {
        require_nodes(graph, 3)?;
        let n = graph.node_count();
        let blocks: Vec<Vec<f64>> = (0..n)
            .step_by(SOURCE_BLOCK)
            .map(|s| betweenness_block(graph, s))
            .collect();
        Ok(CentralityVector {
            measure: Measure::Betweenness,
            values: normalize_betweenness(n, fold_blocks(n, blocks)),
        })
    }

    pub fn closeness_centrality(graph: &CharacterGraph) -> Result<CentralityVector, MetricError> {
        require_nodes(graph, 2)?;
        let values = (0..graph.node_count())
            .map(|v| closeness_value(graph, v))
            .collect();
        Ok(CentralityVector {
            measure: Measure::Closeness,
            values,
        })
    }
}

/// Per-node CSV: `node,degree,degree_norm,betweenness_norm,closeness_norm,
/// lobby_raw,lobby_norm`, rows in node-id order. Measures that need more
/// nodes than the graph has render as `NA`.
pub fn centrality_csv(graph: &CharacterGraph) -> String {
    let n = graph.node_count();
    let degree = degree_centrality(graph).ok();
    let betweenness = betweenness_centrality(graph).ok();
    let closeness = closeness_centrality(graph).ok();
    let lobby = lobby_index(graph).ok();
    let raw_lobby = lobby_raw(graph);

    let mut out = String::from(
        "node,degree,degree_norm,betweenness_norm,closeness_norm,lobby_raw,lobby_norm\n",
    );
    for (v, raw) in raw_lobby.iter().enumerate().take(n) {
        let cell = |vec: &Option<CentralityVector>| match vec {
            Some(c) => sig6(c.values[v]),
            None => "NA".to_string(),
        };
        let lobby_norm = match &lobby {
            Some(l) => sig6(l.normalized.values[v]),
            None => "NA".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            graph.label(v),
            graph.neighbors(v).len(),
            cell(&degree),
            cell(&betweenness),
            cell(&closeness),
            raw,
            lobby_norm,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ParsedBook;
    use crate::graph::build_graph;

    fn graph_of(cliques: &[Vec<&str>]) -> CharacterGraph {
        build_graph(&ParsedBook::from_cliques("test", cliques))
    }

    fn star5() -> CharacterGraph {
        graph_of(&[
            vec!["S", "A"],
            vec!["S", "B"],
            vec!["S", "C"],
            vec!["S", "D"],
        ])
    }

    fn path3() -> CharacterGraph {
        graph_of(&[vec!["A", "B"], vec!["B", "C"]])
    }

    fn complete(labels: &[&str]) -> CharacterGraph {
        graph_of(&[labels.to_vec()])
    }

    fn value_of(g: &CharacterGraph, c: &CentralityVector, label: &str) -> f64 {
        c.values[g.node_id(label).unwrap()]
    }

    #[test]
    fn degree_centrality_star_and_complete() {
        let g = star5();
        let c = degree_centrality(&g).unwrap();
        assert_eq!(value_of(&g, &c, "S"), 1.0);
        assert_eq!(value_of(&g, &c, "A"), 0.25);

        let k4 = complete(&["A", "B", "C", "D"]);
        let c = degree_centrality(&k4).unwrap();
        assert!(c.values.iter().all(|&x| x == 1.0));

        let p3 = path3();
        let c = degree_centrality(&p3).unwrap();
        assert_eq!(value_of(&p3, &c, "B"), 1.0);
        assert_eq!(value_of(&p3, &c, "A"), 0.5);
    }

    #[test]
    fn degree_centrality_needs_two_nodes() {
        let g = graph_of(&[vec!["A"]]);
        assert!(matches!(
            degree_centrality(&g),
            Err(MetricError::TooFewNodes { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn betweenness_path_and_complete() {
        let p3 = path3();
        let c = betweenness_centrality(&p3).unwrap();
        assert_eq!(value_of(&p3, &c, "B"), 1.0);
        assert_eq!(value_of(&p3, &c, "A"), 0.0);
        assert_eq!(value_of(&p3, &c, "C"), 0.0);

        let k4 = complete(&["A", "B", "C", "D"]);
        let c = betweenness_centrality(&k4).unwrap();
        assert!(c.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn betweenness_cycle_c4() {
        let g = graph_of(&[
            vec!["A", "B"],
            vec!["B", "C"],
            vec!["C", "D"],
            vec!["D", "A"],
        ]);
        let c = betweenness_centrality(&g).unwrap();
        for &x in &c.values {
            assert!((x - 1.0 / 6.0).abs() < 1e-15, "got {x}");
        }
    }

    #[test]
    fn betweenness_needs_three_nodes() {
        let g = graph_of(&[vec!["A", "B"]]);
        assert!(matches!(
            betweenness_centrality(&g),
            Err(MetricError::TooFewNodes { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn closeness_examples() {
        let k4 = complete(&["A", "B", "C", "D"]);
        let c = closeness_centrality(&k4).unwrap();
        assert!(c.values.iter().all(|&x| x == 1.0));

        let p3 = path3();
        let c = closeness_centrality(&p3).unwrap();
        assert_eq!(value_of(&p3, &c, "B"), 1.0);
        assert!((value_of(&p3, &c, "A") - 2.0 / 3.0).abs() < 1e-15);

        // A node isolated from everyone else scores 0.
        let g = graph_of(&[vec!["A", "B"], vec!["Z"]]);
        let c = closeness_centrality(&g).unwrap();
        assert_eq!(value_of(&g, &c, "Z"), 0.0);
    }

    #[test]
    fn lobby_examples() {
        let g = star5();
        assert_eq!(lobby_raw(&g)[g.node_id("S").unwrap()], 1);

        let k5 = complete(&["A", "B", "C", "D", "E"]);
        assert!(lobby_raw(&k5).iter().all(|&l| l == 4));

        // Edges {AB, AC, AD, BC, BD}: A's neighbor degrees are (3, 3, 2),
        // so the largest feasible rank is 2.
        let g = graph_of(&[
            vec!["A", "B"],
            vec!["A", "C"],
            vec!["A", "D"],
            vec!["B", "C"],
            vec!["B", "D"],
        ]);
        assert_eq!(lobby_raw(&g)[g.node_id("A").unwrap()], 2);
    }

    #[test]
    fn lobby_of_isolated_node_is_zero() {
        let g = graph_of(&[vec!["A", "B"], vec!["Z"]]);
        assert_eq!(lobby_raw(&g)[g.node_id("Z").unwrap()], 0);
    }

    #[test]
    fn lobby_normalization() {
        let k5 = complete(&["A", "B", "C", "D", "E"]);
        let l = lobby_index(&k5).unwrap();
        assert!(l.normalized.values.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn lobby_bounded_by_degree_and_max_neighbor_degree() {
        let g = graph_of(&[
            vec!["A", "B", "C"],
            vec!["C", "D"],
            vec!["D", "E", "F", "A"],
            vec!["F"],
        ]);
        let lobby = lobby_raw(&g);
        for (v, &l) in lobby.iter().enumerate() {
            let k = g.neighbors(v).len();
            assert!(l <= k);
            let max_nb = g
                .neighbors(v)
                .iter()
                .map(|&(u, _)| g.neighbors(u).len())
                .max()
                .unwrap_or(0);
            assert!(l <= max_nb);
        }
    }

    #[test]
    fn parallel_and_sequential_are_bitwise_identical() {
        let g = graph_of(&[
            vec!["A", "B", "C"],
            vec!["C", "D"],
            vec!["D", "E"],
            vec!["E", "F", "G", "A"],
            vec!["G", "H"],
            vec!["B", "H"],
        ]);
        let par_b = betweenness_centrality(&g).unwrap().values;
        let seq_b = seq::betweenness_centrality(&g).unwrap().values;
        assert_eq!(par_b, seq_b);
        let par_c = closeness_centrality(&g).unwrap().values;
        let seq_c = seq::closeness_centrality(&g).unwrap().values;
        assert_eq!(par_c, seq_c);
    }

    #[test]
    fn all_values_within_unit_interval() {
        let g = graph_of(&[
            vec!["A", "B", "C", "D"],
            vec!["D", "E"],
            vec!["F"],
            vec!["E", "A"],
        ]);
        for c in [
            degree_centrality(&g).unwrap(),
            betweenness_centrality(&g).unwrap(),
            closeness_centrality(&g).unwrap(),
            lobby_index(&g).unwrap().normalized,
        ] {
            for &x in &c.values {
                assert!(
                    (0.0..=1.0).contains(&x),
                    "{:?} out of range: {x}",
                    c.measure
                );
            }
        }
    }

    #[test]
    fn centrality_csv_shape() {
        let g = path3();
        let csv = centrality_csv(&g);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[0],
            "node,degree,degree_norm,betweenness_norm,closeness_norm,lobby_raw,lobby_norm"
        );
        assert_eq!(lines[1], "A,1,0.5,0,0.666667,1,0.5");
        assert_eq!(lines[2], "B,2,1,1,1,1,0.5");
    }

    #[test]
    fn centrality_csv_small_graph_uses_na() {
        let g = graph_of(&[vec!["A", "B"]]);
        let csv = centrality_csv(&g);
        assert!(csv.lines().nth(1).unwrap().contains("NA"));
    }
}
