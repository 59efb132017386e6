//! Undirected weighted simple character graph built from encounter cliques.
//!
//! Nodes are the characters that appear in at least one clique; every
//! unordered pair inside a clique gains +1 edge weight per clique, so the
//! weight of a link counts co-encounters. Declared characters that never
//! appear are kept aside (they still count toward the lexical character
//! total, but not toward the graph).

use std::collections::HashMap;

use serde::Serialize;

use crate::corpus::{CharacterLabel, ParsedBook};
use crate::error::MetricError;

pub type NodeId = usize;

/// An edge with its co-encounter count. Endpoints are distinct and stored in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedEdge {
    pub a: CharacterLabel,
    pub b: CharacterLabel,
    pub weight: u32,
}

/// Immutable character graph. All accessors are read-only and safe to use
/// from multiple threads.
#[derive(Debug, Clone)]
pub struct CharacterGraph {
    book_id: String,
    labels: Vec<CharacterLabel>,
    names: Vec<String>,
    index: HashMap<CharacterLabel, NodeId>,
    /// Per node: (neighbor, weight), sorted by neighbor id.
    adj: Vec<Vec<(NodeId, u32)>>,
    appearances: Vec<u32>,
    unused_declarations: Vec<CharacterLabel>,
    n_edges: usize,
}

/// Builds the graph from a parsed book.
///
/// For every clique of size `s`, all `s(s-1)/2` unordered pairs gain +1
/// weight, and every member's appearance count `f_i` gains +1. Node ids
/// follow first appearance in the source (declaration order, with
/// auto-declared labels after the header), restricted to labels that appear
/// in at least one clique.
pub fn build_graph(book: &ParsedBook) -> CharacterGraph {
    let mut appearance_of: HashMap<&CharacterLabel, u32> = HashMap::new();
    for clique in book.cliques() {
        for label in clique {
            *appearance_of.entry(label).or_insert(0) += 1;
        }
    }

    let mut labels = Vec::new();
    let mut names = Vec::new();
    let mut index: HashMap<CharacterLabel, NodeId> = HashMap::new();
    let mut unused = Vec::new();
    for decl in &book.declarations {
        if appearance_of.contains_key(&decl.code) {
            index.insert(decl.code.clone(), labels.len());
            labels.push(decl.code.clone());
            names.push(decl.name.clone());
        } else {
            unused.push(decl.code.clone());
        }
    }
    // Labels used in encounters without any declaration (possible for books
    // assembled programmatically), ordered by first appearance.
    for clique in book.cliques() {
        for label in clique {
            if !index.contains_key(label) {
                index.insert(label.clone(), labels.len());
                labels.push(label.clone());
                names.push(label.as_str().to_string());
            }
        }
    }

    let n = labels.len();
    let mut appearances = vec![0u32; n];
    for (label, count) in &appearance_of {
        appearances[index[*label]] = *count;
    }

    let mut weight_of: HashMap<(NodeId, NodeId), u32> = HashMap::new();
    for clique in book.cliques() {
        for (i, u) in clique.iter().enumerate() {
            for v in &clique[i + 1..] {
                let (u, v) = (index[u], index[v]);
                let key = (u.min(v), u.max(v));
                *weight_of.entry(key).or_insert(0) += 1;
            }
        }
    }

    let mut adj: Vec<Vec<(NodeId, u32)>> = vec![Vec::new(); n];
    for (&(u, v), &w) in &weight_of {
        adj[u].push((v, w));
        adj[v].push((u, w));
    }
    for list in &mut adj {
        list.sort_unstable_by_key(|&(v, _)| v);
    }

    CharacterGraph {
        book_id: book.book_id.clone(),
        labels,
        names,
        index,
        adj,
        appearances,
        unused_declarations: unused,
        n_edges: weight_of.len(),
    }
}

impl CharacterGraph {
    pub fn book_id(&self) -> &str {
        &self.book_id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    pub fn label(&self, node: NodeId) -> &CharacterLabel {
        &self.labels[node]
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node]
    }

    /// Looks up a node by its character code (case-insensitive).
    pub fn node_id(&self, code: &str) -> Option<NodeId> {
        let label = CharacterLabel::new(code).ok()?;
        self.index.get(&label).copied()
    }

    /// Number of neighbors of `node`.
    pub fn degree(&self, node: NodeId) -> Result<usize, MetricError> {
        self.adj
            .get(node)
            .map(Vec::len)
            .ok_or_else(|| MetricError::UnknownNode(node.to_string()))
    }

    /// Number of neighbors, looked up by character code.
    pub fn degree_of(&self, code: &str) -> Result<usize, MetricError> {
        let node = self
            .node_id(code)
            .ok_or_else(|| MetricError::UnknownNode(code.to_string()))?;
        Ok(self.adj[node].len())
    }

    /// Neighbors of `node` with edge weights, sorted by neighbor id.
    pub fn neighbors(&self, node: NodeId) -> &[(NodeId, u32)] {
        &self.adj[node]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].binary_search_by_key(&v, |&(w, _)| w).is_ok()
    }

    /// How many cliques the character appeared in (`f_i`).
    pub fn appearance_count(&self, node: NodeId) -> u32 {
        self.appearances[node]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Declared characters that never appear in any encounter. They are not
    /// part of the graph.
    pub fn unused_declarations(&self) -> &[CharacterLabel] {
        &self.unused_declarations
    }

    /// Iterates over every edge once, with `u < v` by node id.
    pub fn edges(&self) -> impl Iterator<Item = WeightedEdge> + '_ {
        self.adj.iter().enumerate().flat_map(move |(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| {
                    let (a, b) = if self.labels[u] <= self.labels[v] {
                        (self.labels[u].clone(), self.labels[v].clone())
                    } else {
                        (self.labels[v].clone(), self.labels[u].clone())
                    };
                    WeightedEdge { a, b, weight: w }
                })
        })
    }

    /// Sum of all edge weights (total number of pairwise co-encounters).
    pub fn total_edge_weight(&self) -> u64 {
        self.adj
            .iter()
            .flat_map(|list| list.iter().map(|&(_, w)| u64::from(w)))
            .sum::<u64>()
            / 2
    }

    /// The heaviest edge and its share of the total edge weight. Ties break
    /// toward the lexicographically smallest endpoint pair.
    pub fn top_weighted_edge(&self) -> Result<(WeightedEdge, f64), MetricError> {
        let best = self
            .edges()
            .min_by(|x, y| {
                y.weight
                    .cmp(&x.weight)
                    .then_with(|| x.a.cmp(&y.a))
                    .then_with(|| x.b.cmp(&y.b))
            })
            .ok_or(MetricError::EdgelessGraph)?;
        let fraction = f64::from(best.weight) / self.total_edge_weight() as f64;
        Ok((best, fraction))
    }

    /// Edge-list dump: `u,v,weight` lines sorted lexicographically.
    pub fn edge_list_text(&self) -> String {
        let mut rows: Vec<(String, String, u32)> = self
            .edges()
            .map(|e| (e.a.as_str().to_string(), e.b.as_str().to_string(), e.weight))
            .collect();
        rows.sort();
        let mut out = String::new();
        for (a, b, w) in rows {
            out.push_str(&format!("{a},{b},{w}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_book;

    fn graph_of(cliques: &[Vec<&str>]) -> CharacterGraph {
        build_graph(&ParsedBook::from_cliques("test", cliques))
    }

    #[test]
    fn one_clique_is_one_triangle() {
        let g = graph_of(&[vec!["A", "B", "C"]]);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges().all(|e| e.weight == 1));
    }

    #[test]
    fn repeated_pairs_accumulate_weight() {
        let g = graph_of(&[vec!["A", "B"], vec!["A", "B"], vec!["A", "C"]]);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        let a = g.node_id("A").unwrap();
        assert_eq!(g.appearance_count(a), 3);
        let (top, fraction) = g.top_weighted_edge().unwrap();
        assert_eq!((top.a.as_str(), top.b.as_str(), top.weight), ("A", "B", 2));
        assert!((fraction - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn star_center_degree() {
        let g = graph_of(&[
            vec!["S", "A"],
            vec!["S", "B"],
            vec!["S", "C"],
            vec!["S", "D"],
        ]);
        assert_eq!(g.degree_of("S").unwrap(), 4);
        assert_eq!(g.degree_of("A").unwrap(), 1);
    }

    #[test]
    fn solo_clique_node_has_degree_zero_but_appears() {
        let g = graph_of(&[vec!["A", "B"], vec!["Z"]]);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.degree_of("Z").unwrap(), 0);
        assert_eq!(g.appearance_count(g.node_id("Z").unwrap()), 1);
    }

    #[test]
    fn unknown_node_lookup_fails() {
        let g = graph_of(&[vec!["A", "B"]]);
        assert_eq!(
            g.degree_of("ZZ").unwrap_err(),
            MetricError::UnknownNode("ZZ".into())
        );
        assert!(g.degree(99).is_err());
    }

    #[test]
    fn empty_book_yields_empty_graph() {
        let g = graph_of(&[]);
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(
            g.top_weighted_edge().unwrap_err(),
            MetricError::EdgelessGraph
        );
    }

    #[test]
    fn handshake_lemma() {
        let g = graph_of(&[
            vec!["A", "B", "C", "D"],
            vec!["B", "E"],
            vec!["E", "F", "A"],
        ]);
        let sum: usize = g.degrees().iter().sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn cliques_become_complete_subgraphs() {
        let g = graph_of(&[vec!["A", "B", "C", "D", "E"]]);
        for u in 0..g.node_count() {
            for v in u + 1..g.node_count() {
                assert!(g.has_edge(u, v));
            }
        }
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn encounter_order_does_not_change_metrics() {
        let cliques = vec![
            vec!["A", "B"],
            vec!["C", "D", "E"],
            vec!["A", "E"],
            vec!["B"],
        ];
        let mut reversed = cliques.clone();
        reversed.reverse();
        let g1 = graph_of(&cliques);
        let g2 = graph_of(&reversed);
        assert_eq!(g1.node_count(), g2.node_count());
        assert_eq!(g1.edge_count(), g2.edge_count());
        assert_eq!(g1.edge_list_text(), g2.edge_list_text());
        for label in ["A", "B", "C", "D", "E"] {
            let (a, b) = (g1.node_id(label).unwrap(), g2.node_id(label).unwrap());
            assert_eq!(g1.appearance_count(a), g2.appearance_count(b));
            assert_eq!(g1.degree(a), g2.degree(b));
        }
    }

    #[test]
    fn node_order_follows_first_appearance() {
        let out = parse_book(
            "BB Bob\nAA Alice\nCC Carol\n\nAA,BB\nZZ,AA\n".as_bytes(),
            "t",
        )
        .unwrap();
        let g = build_graph(&out.book);
        // CC never appears; ZZ is auto-declared after the header entries.
        let order: Vec<&str> = (0..g.node_count()).map(|i| g.label(i).as_str()).collect();
        assert_eq!(order, vec!["BB", "AA", "ZZ"]);
        assert_eq!(
            g.unused_declarations()
                .iter()
                .map(|l| l.as_str())
                .collect::<Vec<_>>(),
            vec!["CC"]
        );
    }

    #[test]
    fn top_edge_tie_breaks_lexicographically() {
        let g = graph_of(&[vec!["B", "C"], vec!["A", "D"]]);
        let (top, _) = g.top_weighted_edge().unwrap();
        assert_eq!((top.a.as_str(), top.b.as_str()), ("A", "D"));
    }

    #[test]
    fn edge_list_is_sorted() {
        let g = graph_of(&[vec!["C", "B"], vec!["A", "C"], vec!["A", "B"]]);
        assert_eq!(g.edge_list_text(), "A,B,1\nA,C,1\nB,C,1\n");
    }
}
