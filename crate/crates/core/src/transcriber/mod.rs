//! Orthographic text → phoneme token stream.
//!
//! A deterministic rule engine handles regular Italian spelling; a lexicon
//! supplies overrides for hiatus, open/closed vowel quality and /ts/ vs
//! /dz/. Two policies from the source methodology are enforced as
//! post-passes over each phonological word: intervocalic `s` is voiceless
//! by default, and /ʎ ɲ ʃ ts dz/ are geminated whenever a vowel precedes
//! and a vowel or glide follows.

mod lexicon;
mod normalize;
mod rules;
mod tokenize;

pub use lexicon::{Lexicon, LexiconError};
pub use normalize::normalize_key;
pub use rules::RuleToken;
pub use tokenize::{tokenize_words, Span, Word};

use thiserror::Error;

use crate::inventory::{arpabet_of, parse_arpabet, InventoryError, Phoneme};

/// One phoneme occurrence in the output stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhonemeToken {
    pub phoneme: Phoneme,
    pub geminate: bool,
    /// Char range of the source graphemes (relative to whatever text was
    /// transcribed).
    pub span: Span,
}

impl PhonemeToken {
    pub fn new(phoneme: Phoneme, geminate: bool, span: Span) -> Self {
        debug_assert!(!geminate || phoneme.can_geminate());
        PhonemeToken {
            phoneme,
            geminate,
            span,
        }
    }

    /// Occurrences counted under expanded counting: a geminate is two.
    pub fn expanded_units(&self) -> u64 {
        if self.geminate {
            2
        } else {
            1
        }
    }

    /// Wire code: the phoneme code, doubled when geminate.
    pub fn code(&self) -> &'static str {
        arpabet_of(self.phoneme, self.geminate).expect("token upholds gemination invariant")
    }
}

/// How to render `s` between vowels. The source methodology fixes it to
/// voiceless; `Voiced` is an escape hatch for experimentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntervocalicS {
    #[default]
    Voiceless,
    Voiced,
}

/// What to do with a word the lexicon does not know.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnknownWordPolicy {
    /// Fall back to the rule engine (default).
    #[default]
    RulesOnly,
    /// Reject: every word (or every elision segment) must be in the lexicon.
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TranscriptionPolicy {
    pub intervocalic_s: IntervocalicS,
    pub unknown_word: UnknownWordPolicy,
}

/// Phoneme budget for corpus transcription, in expanded units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    All,
    Units(u64),
}

#[derive(Debug, Error)]
pub enum TranscribeError {
    #[error("word `{word}` at {start}..{end}: no rule for grapheme `{grapheme}`")]
    UnknownGrapheme {
        word: String,
        grapheme: char,
        start: usize,
        end: usize,
    },
    #[error("word `{word}` at {start}..{end} is not in the lexicon")]
    UnknownWord {
        word: String,
        start: usize,
        end: usize,
    },
    #[error("empty word")]
    EmptyWord,
    #[error("transcription stream line {line}: {source}")]
    WireParse {
        line: usize,
        #[source]
        source: InventoryError,
    },
}

/// A transcribed word: its orthography, location, and phoneme tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscribedWord {
    pub text: String,
    pub span: Span,
    pub tokens: Vec<PhonemeToken>,
}

/// Transcription of a text, word by word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcription {
    pub words: Vec<TranscribedWord>,
}

impl Transcription {
    pub fn tokens(&self) -> Vec<PhonemeToken> {
        self.words.iter().flat_map(|w| w.tokens.iter().copied()).collect()
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn token_count(&self) -> u64 {
        self.words.iter().map(|w| w.tokens.len() as u64).sum()
    }

    pub fn expanded_count(&self) -> u64 {
        self.words
            .iter()
            .flat_map(|w| w.tokens.iter())
            .map(|t| t.expanded_units())
            .sum()
    }

    /// Wire format: one line per source word, space-separated codes,
    /// geminates doubled.
    pub fn to_wire(&self) -> String {
        let mut out = String::new();
        for word in &self.words {
            let codes: Vec<&str> = word.tokens.iter().map(|t| t.code()).collect();
            out.push_str(&codes.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse a wire-format stream. Token spans point into the stream text;
    /// word orthography is not recoverable and is left empty.
    pub fn parse_wire(stream: &str) -> Result<Transcription, TranscribeError> {
        let mut words = Vec::new();
        let mut offset = 0usize;
        for (idx, line) in stream.lines().enumerate() {
            let line_chars = line.chars().count();
            let mut tokens = Vec::new();
            let mut col = 0usize;
            for code in line.split_whitespace() {
                let code_chars = code.chars().count();
                // Locate the code within the line for its span.
                let rel = line
                    .char_indices()
                    .enumerate()
                    .skip(col)
                    .find(|(_, (b, _))| line[*b..].starts_with(code))
                    .map(|(ci, _)| ci)
                    .unwrap_or(col);
                let (phoneme, geminate) =
                    parse_arpabet(code).map_err(|source| TranscribeError::WireParse {
                        line: idx + 1,
                        source,
                    })?;
                tokens.push(PhonemeToken::new(
                    phoneme,
                    geminate,
                    Span::new(offset + rel, offset + rel + code_chars),
                ));
                col = rel + code_chars;
            }
            words.push(TranscribedWord {
                text: String::new(),
                span: Span::new(offset, offset + line_chars),
                tokens,
            });
            offset += line_chars + 1;
        }
        Ok(Transcription { words })
    }
}

/// Rule engine plus lexicon plus policy; immutable once built.
#[derive(Debug, Clone)]
pub struct Transcriber {
    lexicon: Lexicon,
    policy: TranscriptionPolicy,
}

impl Transcriber {
    pub fn new(lexicon: Lexicon, policy: TranscriptionPolicy) -> Self {
        Transcriber { lexicon, policy }
    }

    /// Default policy with the bundled starter lexicon.
    pub fn with_bundled_lexicon(policy: TranscriptionPolicy) -> Self {
        Transcriber::new(Lexicon::bundled(), policy)
    }

    pub fn policy(&self) -> TranscriptionPolicy {
        self.policy
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// Transcribe one phonological word. Token spans are char offsets into
    /// `word`.
    pub fn transcribe_word(&self, word: &str) -> Result<Vec<PhonemeToken>, TranscribeError> {
        let word_len = word.chars().count();
        let (norm, norm_map) = normalize::normalize_word(word);
        if norm.is_empty() {
            return Err(TranscribeError::EmptyWord);
        }
        let key: String = norm.iter().collect();
        let whole_span = Span::new(0, word_len);

        let mut tokens = if let Some(entry) = self.lexicon.get(&key) {
            entry
                .iter()
                .map(|&(p, g)| PhonemeToken::new(p, g, whole_span))
                .collect()
        } else {
            self.transcribe_unlisted(word, &norm, &norm_map, word_len)?
        };

        apply_forced_gemination(&mut tokens);
        apply_s_policy(&mut tokens, self.policy.intervocalic_s);
        Ok(tokens)
    }

    /// A word with no full-form lexicon entry: resolve elision segments
    /// against the lexicon where possible, rules otherwise.
    fn transcribe_unlisted(
        &self,
        word: &str,
        norm: &[char],
        norm_map: &[usize],
        word_len: usize,
    ) -> Result<Vec<PhonemeToken>, TranscribeError> {
        let segments = split_segments(norm);

        if self.policy.unknown_word == UnknownWordPolicy::Error {
            let all_listed = segments.len() > 1
                && segments.iter().all(|seg| {
                    let key: String = norm[seg.clone()].iter().collect();
                    self.lexicon.get(&key).is_some()
                });
            if !all_listed {
                return Err(TranscribeError::UnknownWord {
                    word: word.to_string(),
                    start: 0,
                    end: word_len,
                });
            }
            let mut tokens = Vec::new();
            for seg in segments {
                let key: String = norm[seg.clone()].iter().collect();
                let span = Span::new(norm_map[seg.start], norm_map[seg.end - 1] + 1);
                for &(p, g) in self.lexicon.get(&key).unwrap() {
                    tokens.push(PhonemeToken::new(p, g, span));
                }
            }
            return Ok(tokens);
        }

        // If the tail segment of an elision is in the lexicon, use it and
        // transcribe the elided prefix by rule, with the tail's first
        // letter as following context (`c'era`, `l'uomo`).
        if segments.len() > 1 {
            let tail = segments.last().unwrap().clone();
            let tail_key: String = norm[tail.clone()].iter().collect();
            if let Some(entry) = self.lexicon.get(&tail_key) {
                let prefix_end = tail.start; // norm index of the tail start
                let (letters, joined_map) = strip_apostrophes(&norm[..prefix_end]);
                let mut tokens = self.run_rules(word, &letters, norm.get(tail.start).copied(), |j| {
                    norm_map[joined_map[j]]
                })?;
                let tail_span =
                    Span::new(norm_map[tail.start], norm_map[tail.end - 1] + 1);
                for &(p, g) in entry {
                    tokens.push(PhonemeToken::new(p, g, tail_span));
                }
                return Ok(tokens);
            }
        }

        let (letters, joined_map) = strip_apostrophes(norm);
        self.run_rules(word, &letters, None, |j| norm_map[joined_map[j]])
    }

    fn run_rules(
        &self,
        word: &str,
        letters: &[char],
        following: Option<char>,
        to_word_offset: impl Fn(usize) -> usize,
    ) -> Result<Vec<PhonemeToken>, TranscribeError> {
        let rule_tokens = rules::apply_rules(letters, following).map_err(|e| {
            let at = to_word_offset(e.position);
            TranscribeError::UnknownGrapheme {
                word: word.to_string(),
                grapheme: e.grapheme,
                start: at,
                end: at + 1,
            }
        })?;
        Ok(rule_tokens
            .into_iter()
            .map(|t| {
                let start = to_word_offset(t.start);
                let end = to_word_offset(t.end - 1) + 1;
                PhonemeToken::new(t.phoneme, t.geminate, Span::new(start, end))
            })
            .collect())
    }

    /// Transcribe running text: tokenize into words, transcribe each, and
    /// truncate at the last whole word that keeps the expanded phoneme
    /// count within `budget`. Token spans are absolute char offsets into
    /// `text`.
    pub fn transcribe_corpus(
        &self,
        text: &str,
        budget: Budget,
    ) -> Result<Transcription, TranscribeError> {
        let mut out = Transcription::default();
        let mut used: u64 = 0;
        for word in tokenize_words(text) {
            let mut tokens = self.transcribe_word(&word.text).map_err(|e| {
                relocate_error(e, word.span.start)
            })?;
            for t in &mut tokens {
                t.span = Span::new(word.span.start + t.span.start, word.span.start + t.span.end);
            }
            let word_units: u64 = tokens.iter().map(|t| t.expanded_units()).sum();
            if let Budget::Units(limit) = budget {
                if used + word_units > limit {
                    break;
                }
            }
            used += word_units;
            out.words.push(TranscribedWord {
                text: word.text,
                span: word.span,
                tokens,
            });
        }
        Ok(out)
    }
}

fn relocate_error(e: TranscribeError, base: usize) -> TranscribeError {
    match e {
        TranscribeError::UnknownGrapheme {
            word,
            grapheme,
            start,
            end,
        } => TranscribeError::UnknownGrapheme {
            word,
            grapheme,
            start: base + start,
            end: base + end,
        },
        TranscribeError::UnknownWord { word, start, end } => TranscribeError::UnknownWord {
            word,
            start: base + start,
            end: base + end,
        },
        other => other,
    }
}

/// Ranges of the letter segments of a normalized word, split on
/// apostrophes.
fn split_segments(norm: &[char]) -> Vec<std::ops::Range<usize>> {
    let mut segments = Vec::new();
    let mut start = 0;
    for (i, &c) in norm.iter().enumerate() {
        if c == '\'' {
            if i > start {
                segments.push(start..i);
            }
            start = i + 1;
        }
    }
    if start < norm.len() {
        segments.push(start..norm.len());
    }
    segments
}

/// Letters of a normalized word with apostrophes removed, plus a map from
/// letter index back to the normalized index.
fn strip_apostrophes(norm: &[char]) -> (Vec<char>, Vec<usize>) {
    let mut letters = Vec::with_capacity(norm.len());
    let mut map = Vec::with_capacity(norm.len());
    for (i, &c) in norm.iter().enumerate() {
        if c != '\'' {
            letters.push(c);
            map.push(i);
        }
    }
    (letters, map)
}

/// /ʎ ɲ ʃ ts dz/ carry geminate=true between a vowel and a following vowel
/// or glide within the word; single word-initially or next to a consonant.
fn apply_forced_gemination(tokens: &mut [PhonemeToken]) {
    for i in 0..tokens.len() {
        if !tokens[i].phoneme.always_geminate_intervocalic() || tokens[i].geminate {
            continue;
        }
        let prev_is_vowel = i > 0 && tokens[i - 1].phoneme.is_vowel();
        let next_ok = tokens
            .get(i + 1)
            .map(|t| t.phoneme.is_vowel() || t.phoneme.is_glide())
            .unwrap_or(false);
        if prev_is_vowel && next_ok {
            tokens[i].geminate = true;
        }
    }
}

/// The intervocalic-s policy, applied on top of both rule output and
/// lexicon entries.
fn apply_s_policy(tokens: &mut [PhonemeToken], policy: IntervocalicS) {
    let (from, to) = match policy {
        IntervocalicS::Voiceless => (Phoneme::Z, Phoneme::S),
        IntervocalicS::Voiced => (Phoneme::S, Phoneme::Z),
    };
    for i in 0..tokens.len() {
        if tokens[i].phoneme != from || tokens[i].geminate {
            continue;
        }
        let prev_is_vowel = i > 0 && tokens[i - 1].phoneme.is_vowel();
        let next_is_vowel = tokens
            .get(i + 1)
            .map(|t| t.phoneme.is_vowel())
            .unwrap_or(false);
        if prev_is_vowel && next_is_vowel {
            tokens[i].phoneme = to;
        }
    }
}
