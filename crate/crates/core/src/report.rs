//! Per-book and corpus-wide reporting: Pearson correlations between the
//! Lobby index and the classic centralities, summary tables, and the
//! deterministic CSV emissions behind the CLI.

use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::centrality::{
    betweenness_centrality, closeness_centrality, degree_centrality, lobby_index, CentralityVector,
    Measure,
};
use crate::corpus::{Genre, ParseOutcome, ParseWarning};
use crate::distribution::{fit_power_law, knn_curve, Mixing, PowerLawFit};
use crate::error::{CorrelationError, MetricError};
use crate::graph::build_graph;
use crate::lexical::{hapax_report, HapaxReport};
use crate::numfmt::{sig6, sig6_opt};
use crate::stats::{global_stats, GlobalStats};

/// Product-moment correlation of two equally long sequences.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, CorrelationError> {
    if xs.len() != ys.len() {
        return Err(CorrelationError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    let n = xs.len();
    if n < 2 {
        return Err(CorrelationError::TooShort);
    }
    let mean_x = xs.iter().sum::<f64>() / n as f64;
    let mean_y = ys.iter().sum::<f64>() / n as f64;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(CorrelationError::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Correlation between two centrality measures over the nodes of one graph.
/// `r` is `None` when the correlation is undefined (constant vector or too
/// few nodes); tables render that as `NA`.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationResult {
    pub x_measure: Measure,
    pub y_measure: Measure,
    pub r: Option<f64>,
    pub points: Vec<(f64, f64)>,
}

/// Power-law fit or the reason it was not produced.
#[derive(Debug, Clone, Serialize)]
pub enum FitOutcome {
    Fitted(PowerLawFit),
    Failed { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct AssortativitySummary {
    pub slope: Option<f64>,
    pub mixing: Mixing,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopEdgeSummary {
    pub a: String,
    pub b: String,
    pub weight: u32,
    /// Share of the total edge weight carried by this edge.
    pub fraction: f64,
}

/// Everything the corpus tables need for one book.
#[derive(Debug, Clone, Serialize)]
pub struct BookReport {
    pub book_id: String,
    pub genre: Option<Genre>,
    pub global: GlobalStats,
    pub hapax: HapaxReport,
    pub fit: FitOutcome,
    pub assortativity: Option<AssortativitySummary>,
    pub correlations: Vec<CorrelationResult>,
    pub top_edge: Option<TopEdgeSummary>,
    pub notes: Vec<String>,
}

fn correlation_against_lobby(
    lobby: &CentralityVector,
    other: Option<&CentralityVector>,
    measure: Measure,
) -> CorrelationResult {
    match other {
        Some(other) => {
            let points: Vec<(f64, f64)> = lobby
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| (x, y))
                .collect();
            let r = pearson(&lobby.values, &other.values).ok();
            CorrelationResult {
                x_measure: Measure::Lobby,
                y_measure: measure,
                r,
                points,
            }
        }
        None => CorrelationResult {
            x_measure: Measure::Lobby,
            y_measure: measure,
            r: None,
            points: Vec::new(),
        },
    }
}

/// Builds the full report for one parsed book. Metrics that need more graph
/// than the book offers are carried as markers, never aborting the report;
/// only a graph with fewer than two nodes is refused.
pub fn book_report(
    outcome: &ParseOutcome,
    genre: Option<Genre>,
    tail_min: usize,
) -> Result<BookReport, MetricError> {
    let book = &outcome.book;
    let graph = build_graph(book);
    let global = global_stats(&graph)?;
    let hapax = hapax_report(book)?;

    let positive_degrees: Vec<u64> = graph
        .degrees()
        .iter()
        .map(|&k| k as u64)
        .filter(|&k| k > 0)
        .collect();
    let fit = match fit_power_law(&positive_degrees, tail_min) {
        Ok(fit) => FitOutcome::Fitted(fit),
        Err(err) => FitOutcome::Failed {
            reason: err.to_string(),
        },
    };

    let assortativity = knn_curve(&graph).ok().map(|curve| AssortativitySummary {
        mixing: curve.mixing(),
        slope: curve.slope,
    });

    let lobby = lobby_index(&graph)?;
    let degree = degree_centrality(&graph).ok();
    let betweenness = betweenness_centrality(&graph).ok();
    let closeness = closeness_centrality(&graph).ok();
    let correlations = vec![
        correlation_against_lobby(&lobby.normalized, degree.as_ref(), Measure::Degree),
        correlation_against_lobby(
            &lobby.normalized,
            betweenness.as_ref(),
            Measure::Betweenness,
        ),
        correlation_against_lobby(&lobby.normalized, closeness.as_ref(), Measure::Closeness),
    ];

    let top_edge = graph
        .top_weighted_edge()
        .ok()
        .map(|(edge, fraction)| TopEdgeSummary {
            a: edge.a.as_str().to_string(),
            b: edge.b.as_str().to_string(),
            weight: edge.weight,
            fraction,
        });

    let mut notes = Vec::new();
    if !graph.unused_declarations().is_empty() {
        let codes: Vec<&str> = graph
            .unused_declarations()
            .iter()
            .map(|l| l.as_str())
            .collect();
        notes.push(format!(
            "{} declared character(s) never appear in any encounter and are excluded from the graph: {}",
            codes.len(),
            codes.join(" ")
        ));
    }
    let duplicate_collapses = outcome
        .warnings
        .iter()
        .filter(|w| matches!(w, ParseWarning::DuplicateLabelInClique { .. }))
        .count();
    if duplicate_collapses > 0 {
        notes.push(format!(
            "{duplicate_collapses} duplicate label occurrence(s) inside cliques were collapsed; no self-links are recorded"
        ));
    }
    let auto_declared = outcome
        .warnings
        .iter()
        .filter(|w| matches!(w, ParseWarning::UndeclaredLabel { .. }))
        .count();
    if auto_declared > 0 {
        notes.push(format!(
            "{auto_declared} encounter label(s) had no header declaration and were auto-declared"
        ));
    }

    Ok(BookReport {
        book_id: book.book_id.clone(),
        genre,
        global,
        hapax,
        fit,
        assortativity,
        correlations,
        top_edge,
        notes,
    })
}

/// Builds reports for a set of parsed books (in parallel when enabled) and
/// returns them in canonical order: genre (Biography, Legendary, Fiction,
/// then unmapped), then book id.
pub fn corpus_reports(
    outcomes: &[(ParseOutcome, Option<Genre>)],
    tail_min: usize,
) -> Result<Vec<BookReport>, MetricError> {
    #[cfg(feature = "parallel")]
    let collected: Result<Vec<BookReport>, MetricError> = outcomes
        .par_iter()
        .map(|(outcome, genre)| book_report(outcome, *genre, tail_min))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let collected: Result<Vec<BookReport>, MetricError> = outcomes
        .iter()
        .map(|(outcome, genre)| book_report(outcome, *genre, tail_min))
        .collect();
    let mut reports = collected?;
    sort_reports(&mut reports);
    Ok(reports)
}

fn genre_rank(genre: Option<Genre>) -> u8 {
    match genre {
        Some(Genre::Biography) => 0,
        Some(Genre::Legendary) => 1,
        Some(Genre::Fiction) => 2,
        None => 3,
    }
}

fn genre_cell(genre: Option<Genre>) -> String {
    match genre {
        Some(g) => g.letter().to_string(),
        None => "-".to_string(),
    }
}

/// Canonical report order: genre group, then book id.
pub fn sort_reports(reports: &mut [BookReport]) {
    reports.sort_by(|a, b| {
        genre_rank(a.genre)
            .cmp(&genre_rank(b.genre))
            .then_with(|| a.book_id.cmp(&b.book_id))
    });
}

/// Global summary table: `genre,book,N,M,avg_k,std_k,D,Cc`.
pub fn table1_csv(reports: &[BookReport]) -> String {
    let mut rows = reports.to_vec();
    sort_reports(&mut rows);
    let mut out = String::from("genre,book,N,M,avg_k,std_k,D,Cc\n");
    for r in &rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            genre_cell(r.genre),
            r.book_id,
            r.global.n_nodes,
            r.global.n_edges,
            sig6(r.global.avg_degree),
            sig6(r.global.degree_std),
            sig6(r.global.density),
            sig6(r.global.clustering),
        ));
    }
    out
}

/// Hapax table: `genre,book,HL,N,HL_ratio`, sorted within genre by
/// descending ratio (book id breaks ties).
pub fn table2_csv(reports: &[BookReport]) -> String {
    let mut rows = reports.to_vec();
    rows.sort_by(|a, b| {
        genre_rank(a.genre)
            .cmp(&genre_rank(b.genre))
            .then_with(|| {
                b.hapax
                    .hapax_ratio
                    .partial_cmp(&a.hapax.hapax_ratio)
                    .expect("finite ratios")
            })
            .then_with(|| a.book_id.cmp(&b.book_id))
    });
    let mut out = String::from("genre,book,HL,N,HL_ratio\n");
    for r in &rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            genre_cell(r.genre),
            r.book_id,
            r.hapax.hapax_count,
            r.hapax.n_characters,
            sig6(r.hapax.hapax_ratio),
        ));
    }
    out
}

/// Density/clustering scatter data: `book,genre,D,Cc`.
pub fn fig1_csv(reports: &[BookReport]) -> String {
    let mut rows = reports.to_vec();
    sort_reports(&mut rows);
    let mut out = String::from("book,genre,D,Cc\n");
    for r in &rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.book_id,
            genre_cell(r.genre),
            sig6(r.global.density),
            sig6(r.global.clustering),
        ));
    }
    out
}

/// Full corpus report as deterministic multi-section CSV text.
pub fn corpus_csv(reports: &[BookReport]) -> String {
    let mut rows = reports.to_vec();
    sort_reports(&mut rows);

    let mut out = String::new();
    out.push_str("# global\n");
    out.push_str(&table1_csv(&rows));
    out.push_str("# hapax\n");
    out.push_str(&table2_csv(&rows));
    out.push_str("# fig1\n");
    out.push_str(&fig1_csv(&rows));

    out.push_str("# correlations\n");
    out.push_str("book,x,y,r,n_points\n");
    for r in &rows {
        for c in &r.correlations {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.book_id,
                c.x_measure,
                c.y_measure,
                sig6_opt(c.r),
                c.points.len(),
            ));
        }
    }

    out.push_str("# fit\n");
    out.push_str("book,alpha,kmin,ks,tail_size,note\n");
    for r in &rows {
        match &r.fit {
            FitOutcome::Fitted(fit) => out.push_str(&format!(
                "{},{},{},{},{},\n",
                r.book_id,
                sig6(fit.alpha),
                fit.k_min,
                sig6(fit.ks_distance),
                fit.tail_size,
            )),
            FitOutcome::Failed { reason } => {
                out.push_str(&format!("{},NA,NA,NA,NA,{}\n", r.book_id, reason))
            }
        }
    }

    out.push_str("# assortativity\n");
    out.push_str("book,slope,verdict\n");
    for r in &rows {
        match &r.assortativity {
            Some(a) => out.push_str(&format!(
                "{},{},{}\n",
                r.book_id,
                sig6_opt(a.slope),
                a.mixing,
            )),
            None => out.push_str(&format!("{},NA,degenerate\n", r.book_id)),
        }
    }

    out.push_str("# top_edges\n");
    out.push_str("book,u,v,weight,fraction\n");
    for r in &rows {
        if let Some(edge) = &r.top_edge {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.book_id,
                edge.a,
                edge.b,
                edge.weight,
                sig6(edge.fraction),
            ));
        }
    }

    out.push_str("# notes\n");
    out.push_str("book,note\n");
    for r in &rows {
        for note in &r.notes {
            out.push_str(&format!("{},{}\n", r.book_id, note));
        }
    }
    out.push_str(",top edge fraction divides the edge weight by the sum of all edge weights\n");
    out
}
