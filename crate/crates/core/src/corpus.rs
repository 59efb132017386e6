//! Parser and serializer for book encounter data files and the genre map.
//!
//! A book data file is UTF-8, line oriented (`\n` or `\r\n`). Lines starting
//! with `*` are comments. The file opens with a header of character
//! declarations, one per line:
//!
//! ```text
//! GA Gandalf
//! BT Betsey Trotwood, DC's paternal great-aunt
//! ```
//!
//! The first blank line switches to the encounter section. Each encounter
//! line carries an optional scene prefix (any text without `:`, terminated
//! by `:`) followed by cliques separated by `;`, with character codes inside
//! a clique separated by `,`:
//!
//! ```text
//! 3:JO,PE;LM,JO,PE
//! ```
//!
//! Every pair of codes inside one clique is one co-encounter. Codes are
//! normalized to uppercase; duplicate codes inside a clique are collapsed,
//! keeping first occurrence. A clique with a single code records an
//! appearance without creating any link. A scene prefix followed by nothing
//! (`1.4:`) is a valid record with zero cliques.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::BufRead;

use serde::Serialize;

use crate::error::{ConfigError, ParseError};

/// A short uppercase character code: 1 to 3 characters from `A-Z0-9`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharacterLabel(String);

impl CharacterLabel {
    /// Validates and normalizes a raw token into a label. Lowercase input is
    /// accepted and uppercased.
    pub fn new(token: &str) -> Result<Self, String> {
        let token = token.trim();
        if token.is_empty() {
            return Err("empty label".into());
        }
        if token.len() > 3 {
            return Err(format!("label `{token}` longer than 3 characters"));
        }
        if !token.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(format!("label `{token}` has characters outside A-Z0-9"));
        }
        Ok(CharacterLabel(token.to_ascii_uppercase()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One header record associating a code with a character name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterDecl {
    pub code: CharacterLabel,
    pub name: String,
    pub description: Option<String>,
}

/// One encounter line: an optional scene tag plus the cliques it lists.
///
/// A record is never completely empty: either `scene` is present or
/// `cliques` is non-empty (a blank line is a section separator, not a
/// record).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EncounterRecord {
    pub scene: Option<String>,
    pub cliques: Vec<Vec<CharacterLabel>>,
}

/// A fully parsed book: declarations plus encounter records in source order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParsedBook {
    pub book_id: String,
    pub declarations: Vec<CharacterDecl>,
    pub encounters: Vec<EncounterRecord>,
}

impl ParsedBook {
    /// Builds a book programmatically from raw clique lists. Labels used in
    /// cliques are declared automatically with `name = code`. Intended for
    /// synthetic fixtures and generators; invalid labels panic.
    pub fn from_cliques<S: AsRef<str>>(book_id: &str, cliques: &[Vec<S>]) -> Self {
        let mut declarations = Vec::new();
        let mut seen = BTreeSet::new();
        let mut encounters = Vec::new();
        for clique in cliques {
            let mut labels = Vec::new();
            for raw in clique {
                let label = CharacterLabel::new(raw.as_ref()).expect("valid label");
                if seen.insert(label.clone()) {
                    declarations.push(CharacterDecl {
                        code: label.clone(),
                        name: label.as_str().to_string(),
                        description: None,
                    });
                }
                if !labels.contains(&label) {
                    labels.push(label);
                }
            }
            encounters.push(EncounterRecord {
                scene: None,
                cliques: vec![labels],
            });
        }
        ParsedBook {
            book_id: book_id.to_string(),
            declarations,
            encounters,
        }
    }

    /// Iterates over every clique of every encounter record, in source order.
    pub fn cliques(&self) -> impl Iterator<Item = &[CharacterLabel]> {
        self.encounters
            .iter()
            .flat_map(|record| record.cliques.iter().map(|c| c.as_slice()))
    }
}

/// Non-fatal findings reported by the lenient parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A label appeared in an encounter without a header declaration; it was
    /// auto-declared with `name = code`.
    UndeclaredLabel { line: usize, label: CharacterLabel },
    /// The same label appeared more than once inside one clique; the
    /// duplicates were collapsed.
    DuplicateLabelInClique { line: usize, label: CharacterLabel },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::UndeclaredLabel { line, label } => {
                write!(f, "line {line}: undeclared label `{label}` auto-declared")
            }
            ParseWarning::DuplicateLabelInClique { line, label } => {
                write!(
                    f,
                    "line {line}: duplicate label `{label}` collapsed within a clique"
                )
            }
        }
    }
}

/// Result of a successful parse: the book plus any warnings.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub book: ParsedBook,
    pub warnings: Vec<ParseWarning>,
}

/// Parser configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Reject undeclared labels instead of auto-declaring them.
    pub strict: bool,
}

/// Parses a book data file with default (lenient) options.
pub fn parse_book<R: BufRead>(source: R, book_id: &str) -> Result<ParseOutcome, ParseError> {
    parse_book_with(source, book_id, ParseOptions::default())
}

/// Parses a book data file.
pub fn parse_book_with<R: BufRead>(
    source: R,
    book_id: &str,
    options: ParseOptions,
) -> Result<ParseOutcome, ParseError> {
    let mut declarations: Vec<CharacterDecl> = Vec::new();
    let mut declared: BTreeSet<CharacterLabel> = BTreeSet::new();
    let mut encounters: Vec<EncounterRecord> = Vec::new();
    let mut warnings: Vec<ParseWarning> = Vec::new();
    let mut in_encounters = false;

    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let mut line = line?;
        if line_no == 1 && line.starts_with('\u{feff}') {
            line = line.trim_start_matches('\u{feff}').to_string();
        }
        let line = line.trim_end().to_string();
        if line.starts_with('*') {
            continue;
        }
        if line.trim().is_empty() {
            in_encounters = true;
            continue;
        }
        if !in_encounters {
            let decl = parse_declaration(&line, line_no)?;
            if !declared.insert(decl.code.clone()) {
                return Err(ParseError::DuplicateDeclaration {
                    line: line_no,
                    code: decl.code.as_str().to_string(),
                });
            }
            declarations.push(decl);
        } else {
            let record = parse_encounter_line(&line, line_no, &mut warnings)?;
            for clique in &record.cliques {
                for label in clique {
                    if !declared.contains(label) {
                        if options.strict {
                            return Err(ParseError::UndeclaredLabel {
                                line: line_no,
                                label: label.as_str().to_string(),
                            });
                        }
                        warnings.push(ParseWarning::UndeclaredLabel {
                            line: line_no,
                            label: label.clone(),
                        });
                        declared.insert(label.clone());
                        declarations.push(CharacterDecl {
                            code: label.clone(),
                            name: label.as_str().to_string(),
                            description: None,
                        });
                    }
                }
            }
            encounters.push(record);
        }
    }

    Ok(ParseOutcome {
        book: ParsedBook {
            book_id: book_id.to_string(),
            declarations,
            encounters,
        },
        warnings,
    })
}

fn parse_declaration(line: &str, line_no: usize) -> Result<CharacterDecl, ParseError> {
    let (code, rest) = line
        .split_once(' ')
        .ok_or(ParseError::MalformedDeclaration { line: line_no })?;
    let code = CharacterLabel::new(code).map_err(|_| ParseError::InvalidLabel {
        line: line_no,
        token: code.to_string(),
    })?;
    let rest = rest.trim();
    if rest.is_empty() {
        return Err(ParseError::MalformedDeclaration { line: line_no });
    }
    let (name, description) = match rest.split_once(',') {
        Some((name, desc)) => (name.trim().to_string(), Some(desc.trim().to_string())),
        None => (rest.to_string(), None),
    };
    if name.is_empty() {
        return Err(ParseError::MalformedDeclaration { line: line_no });
    }
    Ok(CharacterDecl {
        code,
        name,
        description,
    })
}

fn parse_encounter_line(
    line: &str,
    line_no: usize,
    warnings: &mut Vec<ParseWarning>,
) -> Result<EncounterRecord, ParseError> {
    let (scene, body) = match line.split_once(':') {
        Some((scene, body)) => (Some(scene.to_string()), body),
        None => (None, line),
    };
    let mut cliques = Vec::new();
    if !body.trim().is_empty() {
        for raw_clique in body.split(';') {
            if raw_clique.trim().is_empty() {
                return Err(ParseError::EmptyClique { line: line_no });
            }
            let mut clique: Vec<CharacterLabel> = Vec::new();
            for token in raw_clique.split(',') {
                if token.trim().is_empty() {
                    return Err(ParseError::EmptyLabel { line: line_no });
                }
                let label = CharacterLabel::new(token).map_err(|_| ParseError::InvalidLabel {
                    line: line_no,
                    token: token.trim().to_string(),
                })?;
                if clique.contains(&label) {
                    warnings.push(ParseWarning::DuplicateLabelInClique {
                        line: line_no,
                        label,
                    });
                } else {
                    clique.push(label);
                }
            }
            cliques.push(clique);
        }
    }
    Ok(EncounterRecord { scene, cliques })
}

/// Renders a book back into the data file grammar. Re-parsing the output
/// yields a `ParsedBook` equal to the input.
pub fn serialize_book(book: &ParsedBook) -> String {
    let mut out = String::new();
    for decl in &book.declarations {
        out.push_str(decl.code.as_str());
        out.push(' ');
        out.push_str(&decl.name);
        if let Some(desc) = &decl.description {
            out.push(',');
            out.push_str(desc);
        }
        out.push('\n');
    }
    out.push('\n');
    for record in &book.encounters {
        if let Some(scene) = &record.scene {
            out.push_str(scene);
            out.push(':');
        }
        let cliques: Vec<String> = record
            .cliques
            .iter()
            .map(|clique| {
                clique
                    .iter()
                    .map(CharacterLabel::as_str)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        out.push_str(&cliques.join(";"));
        out.push('\n');
    }
    out
}

/// The three genre tags used to classify the corpus books.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Genre {
    Biography,
    Legendary,
    Fiction,
}

impl Genre {
    pub fn letter(self) -> char {
        match self {
            Genre::Biography => 'B',
            Genre::Legendary => 'L',
            Genre::Fiction => 'F',
        }
    }

    pub fn from_letter(letter: &str) -> Option<Self> {
        match letter {
            "B" => Some(Genre::Biography),
            "L" => Some(Genre::Legendary),
            "F" => Some(Genre::Fiction),
            _ => None,
        }
    }
}

impl fmt::Display for Genre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Genre::Biography => "Biography",
            Genre::Legendary => "Legendary",
            Genre::Fiction => "Fiction",
        };
        f.write_str(name)
    }
}

/// Mapping from book id to genre, read from a two-column CSV with no header.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenreMap {
    map: BTreeMap<String, Genre>,
}

impl GenreMap {
    pub fn get(&self, book_id: &str) -> Option<Genre> {
        self.map.get(book_id).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Genre)> {
        self.map.iter().map(|(id, genre)| (id.as_str(), *genre))
    }
}

/// Parses the genre map: one `book_id,genre_letter` pair per line, with the
/// letter in {B, L, F}. Blank lines are ignored.
pub fn parse_genre_map<R: BufRead>(source: R) -> Result<GenreMap, ConfigError> {
    let mut map = BTreeMap::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (book_id, letter) = line
            .split_once(',')
            .ok_or(ConfigError::Malformed { line: line_no })?;
        let book_id = book_id.trim();
        let letter = letter.trim();
        if book_id.is_empty() {
            return Err(ConfigError::Malformed { line: line_no });
        }
        let genre = Genre::from_letter(letter).ok_or_else(|| ConfigError::UnknownGenre {
            line: line_no,
            letter: letter.to_string(),
        })?;
        if map.insert(book_id.to_string(), genre).is_some() {
            return Err(ConfigError::DuplicateBook {
                line: line_no,
                book_id: book_id.to_string(),
            });
        }
    }
    Ok(GenreMap { map })
}
