//! Appearance-frequency statistics over the character roster: Hapax
//! Legomena (frequency one) and Dis Legomena (frequency two).
//!
//! The frequency `f_i` of a character is the number of encounter cliques it
//! belongs to; a label listed twice inside one clique still counts once. The
//! roster size `N` is the full declaration list of the book, so characters
//! declared in the header but absent from every encounter count toward `N`
//! with `f_i = 0`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::{CharacterLabel, ParsedBook};
use crate::error::MetricError;

/// Hapax/Dis Legomena counts and ratios for one book.
#[derive(Debug, Clone, Serialize)]
pub struct HapaxReport {
    pub n_characters: usize,
    pub hapax_count: usize,
    pub dis_count: usize,
    pub hapax_ratio: f64,
    pub dis_ratio: f64,
}

/// Number of cliques each appearing character belongs to.
pub fn appearance_frequencies(book: &ParsedBook) -> BTreeMap<CharacterLabel, u32> {
    let mut frequencies = BTreeMap::new();
    for clique in book.cliques() {
        for label in clique {
            *frequencies.entry(label.clone()).or_insert(0) += 1;
        }
    }
    frequencies
}

/// Counts characters with `f_i = 1` (Hapax) and `f_i = 2` (Dis), with ratios
/// over the roster size.
pub fn hapax_report(book: &ParsedBook) -> Result<HapaxReport, MetricError> {
    let n = book.declarations.len();
    if n == 0 {
        return Err(MetricError::NoData);
    }
    let frequencies = appearance_frequencies(book);
    let hapax_count = frequencies.values().filter(|&&f| f == 1).count();
    let dis_count = frequencies.values().filter(|&&f| f == 2).count();
    Ok(HapaxReport {
        n_characters: n,
        hapax_count,
        dis_count,
        hapax_ratio: hapax_count as f64 / n as f64,
        dis_ratio: dis_count as f64 / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn book(cliques: &[Vec<&str>]) -> ParsedBook {
        ParsedBook::from_cliques("test", cliques)
    }

    fn frequency(book: &ParsedBook, label: &str) -> u32 {
        appearance_frequencies(book)[&CharacterLabel::new(label).unwrap()]
    }

    #[test]
    fn frequencies_count_clique_membership() {
        let b = book(&[vec!["A", "B"], vec!["A", "C"]]);
        assert_eq!(frequency(&b, "A"), 2);
        assert_eq!(frequency(&b, "B"), 1);
        assert_eq!(frequency(&b, "C"), 1);
    }

    #[test]
    fn solo_clique_counts_as_one_appearance() {
        let b = book(&[vec!["A"]]);
        assert_eq!(frequency(&b, "A"), 1);
    }

    #[test]
    fn label_twice_in_one_clique_counts_once() {
        // from_cliques dedups; go through the record structure directly.
        let mut b = book(&[vec!["A", "B"]]);
        b.encounters[0].cliques[0].dedup();
        assert_eq!(frequency(&b, "A"), 1);
    }

    #[test]
    fn hapax_and_dis_counts() {
        let b = book(&[vec!["A", "B"], vec!["A", "C"], vec!["A", "B"]]);
        let report = hapax_report(&b).unwrap();
        // f(A)=3, f(B)=2, f(C)=1
        assert_eq!(report.n_characters, 3);
        assert_eq!(report.hapax_count, 1);
        assert_eq!(report.dis_count, 1);
        assert!((report.hapax_ratio - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn everyone_twice_means_no_hapax() {
        let b = book(&[vec!["A", "B"], vec!["A", "B"]]);
        let report = hapax_report(&b).unwrap();
        assert_eq!(report.hapax_count, 0);
        assert_eq!(report.dis_count, report.n_characters);
        assert_eq!(report.hapax_ratio, 0.0);
        assert_eq!(report.dis_ratio, 1.0);
    }

    #[test]
    fn empty_book_is_an_error() {
        let b = book(&[]);
        assert_eq!(hapax_report(&b).unwrap_err(), MetricError::NoData);
    }

    #[test]
    fn frequency_sum_equals_total_clique_size() {
        let b = book(&[vec!["A", "B", "C"], vec!["B"], vec!["C", "D"]]);
        let total: u32 = appearance_frequencies(&b).values().sum();
        let clique_sizes: usize = b.cliques().map(<[CharacterLabel]>::len).sum();
        assert_eq!(total as usize, clique_sizes);
    }

    #[test]
    fn dropping_a_second_appearance_moves_dis_to_hapax() {
        let twice = book(&[vec!["A", "B"], vec!["A", "B"]]);
        let once = book(&[vec!["A", "B"]]);
        let r2 = hapax_report(&twice).unwrap();
        let r1 = hapax_report(&once).unwrap();
        assert_eq!(r2.dis_count, 2);
        assert_eq!(r2.hapax_count, 0);
        assert_eq!(r1.dis_count, 0);
        assert_eq!(r1.hapax_count, 2);
    }

    #[test]
    fn hapax_ratio_is_invariant_under_relabeling() {
        let a = book(&[vec!["A", "B"], vec!["A", "C"]]);
        let b = book(&[vec!["X", "Y"], vec!["X", "Z"]]);
        assert_eq!(
            hapax_report(&a).unwrap().hapax_ratio,
            hapax_report(&b).unwrap().hapax_ratio
        );
    }

    #[test]
    fn unused_declarations_count_toward_n_only() {
        let mut b = book(&[vec!["A", "B"]]);
        b.declarations.push(crate::corpus::CharacterDecl {
            code: CharacterLabel::new("ZZ").unwrap(),
            name: "Unseen".to_string(),
            description: None,
        });
        let report = hapax_report(&b).unwrap();
        assert_eq!(report.n_characters, 3);
        assert_eq!(report.hapax_count, 2);
    }
}
