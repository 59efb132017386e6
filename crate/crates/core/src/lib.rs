//! Character networks from book encounter data files.
//!
//! The crate ingests line-oriented data files listing a book's characters
//! and their "cliques of encounters", builds the undirected weighted
//! co-occurrence graph, and computes the metric suite used to compare books:
//! density, clustering, Degree/Betweenness/Closeness/Lobby centralities,
//! neighbor-degree (assortativity) curves, discrete power-law fits of the
//! degree distribution, and Hapax Legomena appearance statistics.
//!
//! Pipeline sketch:
//!
//! ```
//! use charnet_core::corpus::parse_book;
//! use charnet_core::graph::build_graph;
//! use charnet_core::stats::global_stats;
//!
//! let data = "GA Gandalf\nBI Bilbo\nTH Thorin\n\n0:GA,BI;BI,TH\n1:GA,BI,TH\n";
//! let outcome = parse_book(data.as_bytes(), "intro").unwrap();
//! let graph = build_graph(&outcome.book);
//! let stats = global_stats(&graph).unwrap();
//! assert_eq!((stats.n_nodes, stats.n_edges), (3, 3));
//! ```
//!
//! Heavy inner loops (per-source shortest-path passes, per-book reports,
//! per-`k_min` fit candidates) run on rayon when the default `parallel`
//! feature is enabled. The reductions are laid out so parallel and
//! sequential runs produce bitwise-identical numbers; `--no-default-features`
//! selects the sequential fallback.

pub mod centrality;
pub mod corpus;
pub mod distribution;
pub mod error;
pub mod graph;
pub mod lexical;
pub mod numfmt;
pub mod report;
pub mod stats;

pub use corpus::{parse_book, parse_genre_map, ParsedBook};
pub use graph::{build_graph, CharacterGraph};
pub use report::{book_report, corpus_reports, BookReport};
