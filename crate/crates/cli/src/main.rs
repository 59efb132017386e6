//! `charnet`: build character networks from book encounter data files and
//! report their metrics.

mod svg;

use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use charnet_core::centrality::{
    betweenness_centrality, centrality_csv, closeness_centrality, degree_centrality, lobby_index,
    CentralityVector, LobbyCentrality,
};
use charnet_core::corpus::{
    parse_book_with, parse_genre_map, Genre, GenreMap, ParseOptions, ParseOutcome,
};
use charnet_core::distribution::{
    assort_csv, fit_csv, fit_power_law, knn_curve, sample_power_law, DEFAULT_TAIL_MIN,
};
use charnet_core::graph::build_graph;
use charnet_core::numfmt::sig6_opt;
use charnet_core::report::{book_report, corpus_reports, table1_csv, table2_csv, BookReport};

#[derive(Parser)]
#[command(
    name = "charnet",
    version,
    about = "Character networks and metrics from book encounter data files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Directory of book data files; every *.dat file is read
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,
    /// A single book data file
    #[arg(long, value_name = "FILE")]
    book: Option<PathBuf>,
    /// Genre map CSV: one `book_id,letter` per line, letter in {B,L,F}
    #[arg(long, value_name = "CSV")]
    genres: Option<PathBuf>,
    /// Reject undeclared labels instead of auto-declaring them
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write output here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a book; csv emits the weighted edge list, json the parsed book
    Parse {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Global summary table: genre,book,N,M,avg_k,std_k,D,Cc
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per-node centrality table for one book
    Centrality {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Neighbor-degree (assortativity) curve for one book
    Assort {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Discrete power-law fit of the degree distribution
    Fit {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Minimum number of tail samples a k_min candidate must keep
        #[arg(long, value_name = "INT", default_value_t = DEFAULT_TAIL_MIN)]
        tail_min: usize,
        /// Fit a synthetic sample of this size instead of a book
        #[arg(long, value_name = "N")]
        synthetic: Option<usize>,
        /// Exponent for the synthetic sample
        #[arg(long, value_name = "ALPHA", default_value_t = 2.5)]
        alpha: f64,
        /// Lower cutoff for the synthetic sample
        #[arg(long, value_name = "KMIN", default_value_t = 1)]
        kmin: u64,
        /// Seed for sampling utilities
        #[arg(long, value_name = "INT", default_value_t = 42)]
        seed: u64,
    },
    /// Hapax Legomena table: genre,book,HL,N,HL_ratio
    Hapax {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full report: tables, correlations, fits, assortativity, notes
    Report {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_name = "INT", default_value_t = DEFAULT_TAIL_MIN)]
        tail_min: usize,
    },
    /// Self-contained SVG scatter plots (corpus: density vs clustering;
    /// book: Lobby against the other centralities)
    Plot {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_name = "INT", default_value_t = DEFAULT_TAIL_MIN)]
        tail_min: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Parse { input, output } => {
            let outcome = load_single_book(&input)?;
            print_warnings(&outcome);
            let text = match output.format {
                Format::Csv => build_graph(&outcome.book).edge_list_text(),
                Format::Json => to_json(&outcome.book)?,
            };
            emit(&output, &text)
        }
        Command::Stats { input, output } => {
            let reports = load_reports(&input, DEFAULT_TAIL_MIN)?;
            let text = match output.format {
                Format::Csv => table1_csv(&reports),
                Format::Json => {
                    let rows: Vec<_> = reports.iter().map(|r| &r.global).collect();
                    to_json(&rows)?
                }
            };
            emit(&output, &text)
        }
        Command::Centrality { input, output } => {
            let outcome = load_single_book(&input)?;
            print_warnings(&outcome);
            let graph = build_graph(&outcome.book);
            let text = match output.format {
                Format::Csv => centrality_csv(&graph),
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct CentralityDump {
                        nodes: Vec<String>,
                        degree: Option<CentralityVector>,
                        betweenness: Option<CentralityVector>,
                        closeness: Option<CentralityVector>,
                        lobby: Option<LobbyCentrality>,
                    }
                    let dump = CentralityDump {
                        nodes: (0..graph.node_count())
                            .map(|v| graph.label(v).as_str().to_string())
                            .collect(),
                        degree: degree_centrality(&graph).ok(),
                        betweenness: betweenness_centrality(&graph).ok(),
                        closeness: closeness_centrality(&graph).ok(),
                        lobby: lobby_index(&graph).ok(),
                    };
                    to_json(&dump)?
                }
            };
            emit(&output, &text)
        }
        Command::Assort { input, output } => {
            let outcome = load_single_book(&input)?;
            print_warnings(&outcome);
            let graph = build_graph(&outcome.book);
            let curve = knn_curve(&graph)?;
            let text = match output.format {
                Format::Csv => assort_csv(&curve),
                Format::Json => to_json(&curve)?,
            };
            emit(&output, &text)
        }
        Command::Fit {
            input,
            output,
            tail_min,
            synthetic,
            alpha,
            kmin,
            seed,
        } => {
            let degrees: Vec<u64> = match synthetic {
                Some(n) => {
                    if input.book.is_some() {
                        bail!("--synthetic and --book are mutually exclusive");
                    }
                    if alpha <= 1.0 {
                        bail!("--alpha must exceed 1");
                    }
                    if kmin == 0 {
                        bail!("--kmin must be positive");
                    }
                    sample_power_law(n, alpha, kmin, seed)
                }
                None => {
                    let outcome = load_single_book(&input)?;
                    print_warnings(&outcome);
                    let graph = build_graph(&outcome.book);
                    graph
                        .degrees()
                        .iter()
                        .map(|&k| k as u64)
                        .filter(|&k| k > 0)
                        .collect()
                }
            };
            let fit = fit_power_law(&degrees, tail_min)?;
            let text = match output.format {
                Format::Csv => fit_csv(&fit),
                Format::Json => to_json(&fit)?,
            };
            emit(&output, &text)
        }
        Command::Hapax { input, output } => {
            let reports = load_reports(&input, DEFAULT_TAIL_MIN)?;
            let text = match output.format {
                Format::Csv => table2_csv(&reports),
                Format::Json => {
                    let rows: Vec<_> = reports.iter().map(|r| &r.hapax).collect();
                    to_json(&rows)?
                }
            };
            emit(&output, &text)
        }
        Command::Report {
            input,
            output,
            tail_min,
        } => {
            let reports = load_reports(&input, tail_min)?;
            let text = match output.format {
                Format::Csv => charnet_core::report::corpus_csv(&reports),
                Format::Json => to_json(&reports)?,
            };
            emit(&output, &text)
        }
        Command::Plot {
            input,
            output,
            tail_min,
        } => {
            if output.format == Format::Json {
                bail!("plot only renders SVG; use --format csv on report/assort for data");
            }
            let text = if input.book.is_some() {
                let outcome = load_single_book(&input)?;
                print_warnings(&outcome);
                let report = book_report(&outcome, None, tail_min)?;
                book_panels_svg(&report)
            } else {
                let reports = load_reports(&input, tail_min)?;
                fig1_svg(&reports)
            };
            emit(&output, &text)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn print_warnings(outcome: &ParseOutcome) {
    for warning in &outcome.warnings {
        eprintln!("warning: {}: {warning}", outcome.book.book_id);
    }
}

fn book_id_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

fn load_book(path: &Path, strict: bool) -> Result<ParseOutcome> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let outcome = parse_book_with(
        BufReader::new(file),
        &book_id_of(path),
        ParseOptions { strict },
    )
    .with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(outcome)
}

fn load_single_book(input: &InputArgs) -> Result<ParseOutcome> {
    match (&input.book, &input.corpus) {
        (Some(path), None) => load_book(path, input.strict),
        (None, Some(_)) => bail!("this subcommand works on one book; pass --book <FILE>"),
        _ => bail!("pass --book <FILE>"),
    }
}

fn load_corpus_books(dir: &Path, strict: bool) -> Result<Vec<ParseOutcome>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "dat"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        bail!("no *.dat files in {}", dir.display());
    }
    paths.iter().map(|p| load_book(p, strict)).collect()
}

fn load_genres(path: Option<&Path>) -> Result<GenreMap> {
    match path {
        Some(path) => {
            let file =
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            Ok(parse_genre_map(BufReader::new(file))?)
        }
        None => Ok(GenreMap::default()),
    }
}

fn load_reports(input: &InputArgs, tail_min: usize) -> Result<Vec<BookReport>> {
    let genres = load_genres(input.genres.as_deref())?;
    let outcomes: Vec<ParseOutcome> = match (&input.corpus, &input.book) {
        (Some(dir), None) => load_corpus_books(dir, input.strict)?,
        (None, Some(path)) => vec![load_book(path, input.strict)?],
        _ => bail!("pass --corpus <DIR> or --book <FILE>"),
    };
    for outcome in &outcomes {
        print_warnings(outcome);
    }
    let tagged: Vec<(ParseOutcome, Option<Genre>)> = outcomes
        .into_iter()
        .map(|outcome| {
            let genre = genres.get(&outcome.book.book_id);
            (outcome, genre)
        })
        .collect();
    Ok(corpus_reports(&tagged, tail_min)?)
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn fig1_svg(reports: &[BookReport]) -> String {
    let points = reports
        .iter()
        .map(|r| {
            let label = match r.genre {
                Some(g) => format!("{} ({})", r.book_id, g.letter()),
                None => r.book_id.clone(),
            };
            (r.global.density, r.global.clustering, label)
        })
        .collect();
    svg::scatter(
        "Density vs clustering coefficient",
        "D",
        "Cc",
        &svg::Series { points },
    )
}

fn book_panels_svg(report: &BookReport) -> String {
    let panels: Vec<String> = report
        .correlations
        .iter()
        .map(|c| {
            let points = c
                .points
                .iter()
                .map(|&(x, y)| (x, y, String::new()))
                .collect();
            svg::scatter(
                &format!(
                    "{}: lobby vs {} (r = {})",
                    report.book_id,
                    c.y_measure,
                    sig6_opt(c.r)
                ),
                "lobby (normalized)",
                &format!("{} (normalized)", c.y_measure),
                &svg::Series { points },
            )
        })
        .collect();
    svg::stack(&panels)
}
