//! Pronunciation lexicon: explicit ARPAbet overrides for words the rule
//! engine cannot resolve (hiatus vs diphthong, open vs closed e/o, /ts/ vs
//! /dz/). File format: one `word<TAB>code code ...` entry per line, `#`
//! starts a comment line.

use std::collections::HashMap;

use thiserror::Error;

use crate::inventory::{parse_arpabet, InventoryError, Phoneme};

use super::normalize::normalize_key;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{source_name}:{line}: missing TAB separator")]
    MissingSeparator { source_name: String, line: usize },
    #[error("{source_name}:{line}: empty word")]
    EmptyWord { source_name: String, line: usize },
    #[error("{source_name}:{line}: empty transcription for `{word}`")]
    EmptyTranscription {
        source_name: String,
        line: usize,
        word: String,
    },
    #[error("{source_name}:{line}: `{word}`: {source}")]
    BadCode {
        source_name: String,
        line: usize,
        word: String,
        source: InventoryError,
    },
}

/// Case-insensitive map from normalized orthographic word to its
/// transcription. Accented vowels are distinct keys.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, Vec<(Phoneme, bool)>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Lexicon::default()
    }

    /// Parse lexicon text. `source_name` is used in error messages only.
    pub fn parse(source_name: &str, text: &str) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::new();
        lex.extend_from_str(source_name, text)?;
        Ok(lex)
    }

    /// Add entries from another lexicon file; later entries override
    /// earlier ones for the same word.
    pub fn extend_from_str(
        &mut self,
        source_name: &str,
        text: &str,
    ) -> Result<(), LexiconError> {
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let line = raw.trim_end_matches(['\r', '\n']);
            let (word, codes) = line.split_once('\t').ok_or_else(|| {
                LexiconError::MissingSeparator {
                    source_name: source_name.to_string(),
                    line: line_no,
                }
            })?;
            let word = word.trim();
            if word.is_empty() {
                return Err(LexiconError::EmptyWord {
                    source_name: source_name.to_string(),
                    line: line_no,
                });
            }
            let mut tokens = Vec::new();
            for code in codes.split_whitespace() {
                let pair = parse_arpabet(code).map_err(|source| LexiconError::BadCode {
                    source_name: source_name.to_string(),
                    line: line_no,
                    word: word.to_string(),
                    source,
                })?;
                tokens.push(pair);
            }
            if tokens.is_empty() {
                return Err(LexiconError::EmptyTranscription {
                    source_name: source_name.to_string(),
                    line: line_no,
                    word: word.to_string(),
                });
            }
            self.entries.insert(normalize_key(word), tokens);
        }
        Ok(())
    }

    /// The bundled starter lexicon: function words, hiatus pronouns, the
    /// irregular open-vowel and /dz/ cases that occur in the demo corpora.
    pub fn bundled() -> Self {
        Lexicon::parse("bundled", include_str!("../../data/lexicon_it.tsv"))
            .expect("bundled lexicon is well-formed")
    }

    /// Look up an already-normalized key.
    pub fn get(&self, normalized: &str) -> Option<&[(Phoneme, bool)]> {
        self.entries.get(normalized).map(|v| v.as_slice())
    }

    /// Look up a raw word (normalizing first).
    pub fn lookup(&self, word: &str) -> Option<&[(Phoneme, bool)]> {
        self.get(&normalize_key(word))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entries_and_comments() {
        let lex = Lexicon::parse(
            "test",
            "# comment\nmezzo\tM EH DZDZ OW\n\nanno\tAA NN OW\n",
        )
        .unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(
            lex.lookup("Mezzo").unwrap(),
            &[
                (Phoneme::M, false),
                (Phoneme::Eh, false),
                (Phoneme::Dz, true),
                (Phoneme::Ow, false)
            ]
        );
    }

    #[test]
    fn lookup_is_case_insensitive_but_accent_sensitive() {
        let lex = Lexicon::parse("test", "perché\tP EY R K EY\nperche\tP EY R K EY EH").unwrap();
        assert_eq!(lex.lookup("PERCHÉ").unwrap().len(), 5);
        assert_eq!(lex.lookup("perche").unwrap().len(), 6);
        // Decomposed input normalizes to the same key.
        assert_eq!(lex.lookup("perche\u{0301}").unwrap().len(), 5);
    }

    #[test]
    fn later_entries_override_earlier_ones() {
        let mut lex = Lexicon::parse("a", "zero\tTS EY R OW").unwrap();
        lex.extend_from_str("b", "zero\tDZ EH R OW").unwrap();
        assert_eq!(lex.lookup("zero").unwrap()[0], (Phoneme::Dz, false));
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            Lexicon::parse("t", "senza separatore"),
            Err(LexiconError::MissingSeparator { line: 1, .. })
        ));
        assert!(matches!(
            Lexicon::parse("t", "word\t"),
            Err(LexiconError::EmptyTranscription { .. })
        ));
        assert!(matches!(
            Lexicon::parse("t", "zanzara\tDZ AA ZZ AA R AA"),
            Err(LexiconError::BadCode { .. })
        ));
        assert!(matches!(
            Lexicon::parse("t", "x\tQQ"),
            Err(LexiconError::BadCode { .. })
        ));
    }

    #[test]
    fn bundled_lexicon_loads() {
        let lex = Lexicon::bundled();
        assert!(lex.len() >= 50);
        assert!(lex.lookup("uomo").is_some());
    }
}
