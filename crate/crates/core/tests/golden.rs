//! Byte-exact golden transcriptions for dictionary-cross-checked words,
//! run through the default policy with the bundled lexicon.

use fonema::{Transcriber, TranscriptionPolicy};

#[test]
fn golden_words_are_byte_exact() {
    let transcriber = Transcriber::with_bundled_lexicon(TranscriptionPolicy::default());
    let golden = include_str!("data/golden_words.tsv");
    let mut checked = 0;
    let mut failures = Vec::new();
    for line in golden.lines() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (word, expected) = line.split_once('\t').expect("golden line has a TAB");
        let tokens = transcriber
            .transcribe_word(word)
            .unwrap_or_else(|e| panic!("`{word}` failed: {e}"));
        let actual: Vec<&str> = tokens.iter().map(|t| t.code()).collect();
        let actual = actual.join(" ");
        if actual != expected {
            failures.push(format!("{word}: expected `{expected}`, got `{actual}`"));
        }
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} golden words");
    assert!(
        failures.is_empty(),
        "{} golden mismatches:\n{}",
        failures.len(),
        failures.join("\n")
    );
}
