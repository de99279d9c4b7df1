//! Word normalization: lowercase plus canonical composition of the accented
//! Latin vowels Italian orthography uses. Only the vowel + combining
//! grave/acute/circumflex/diaeresis pairs are composed; anything else
//! passes through and is judged by the rule engine.

const COMBINING_GRAVE: char = '\u{0300}';
const COMBINING_ACUTE: char = '\u{0301}';
const COMBINING_CIRCUMFLEX: char = '\u{0302}';
const COMBINING_DIAERESIS: char = '\u{0308}';

fn compose(base: char, mark: char) -> Option<char> {
    let composed = match (base, mark) {
        ('a', COMBINING_GRAVE) => 'à',
        ('a', COMBINING_ACUTE) => 'á',
        ('a', COMBINING_CIRCUMFLEX) => 'â',
        ('e', COMBINING_GRAVE) => 'è',
        ('e', COMBINING_ACUTE) => 'é',
        ('e', COMBINING_CIRCUMFLEX) => 'ê',
        ('e', COMBINING_DIAERESIS) => 'ë',
        ('i', COMBINING_GRAVE) => 'ì',
        ('i', COMBINING_ACUTE) => 'í',
        ('i', COMBINING_CIRCUMFLEX) => 'î',
        ('i', COMBINING_DIAERESIS) => 'ï',
        ('o', COMBINING_GRAVE) => 'ò',
        ('o', COMBINING_ACUTE) => 'ó',
        ('o', COMBINING_CIRCUMFLEX) => 'ô',
        ('u', COMBINING_GRAVE) => 'ù',
        ('u', COMBINING_ACUTE) => 'ú',
        ('u', COMBINING_CIRCUMFLEX) => 'û',
        ('u', COMBINING_DIAERESIS) => 'ü',
        _ => return None,
    };
    Some(composed)
}

/// Lowercase and compose a word. Returns the normalized characters and, for
/// each of them, the index of the original character they came from, so
/// spans can be reported against the source text.
pub fn normalize_word(word: &str) -> (Vec<char>, Vec<usize>) {
    let mut out: Vec<char> = Vec::with_capacity(word.chars().count());
    let mut map: Vec<usize> = Vec::with_capacity(out.capacity());
    for (orig_idx, c) in word.chars().enumerate() {
        for lower in c.to_lowercase() {
            if let Some(&last) = out.last() {
                if let Some(composed) = compose(last, lower) {
                    *out.last_mut().unwrap() = composed;
                    continue;
                }
            }
            out.push(lower);
            map.push(orig_idx);
        }
    }
    (out, map)
}

/// Normalized lookup key for lexicon entries.
pub fn normalize_key(word: &str) -> String {
    normalize_word(word).0.into_iter().collect()
}
