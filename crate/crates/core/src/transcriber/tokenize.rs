//! Word tokenization: maximal runs of letters, with an apostrophe joining
//! two letter runs into one phonological word (`l'esito`). Digits,
//! punctuation and symbols are dropped.

/// Character range into the source text, in Unicode scalar offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }
}

/// An orthographic word with its location in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub text: String,
    pub span: Span,
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Split text into phonological words. An apostrophe is part of a word only
/// when a letter sits on both sides of it, so quoting apostrophes and
/// truncations like `po'` do not glue words together.
pub fn tokenize_words(text: &str) -> Vec<Word> {
    let chars: Vec<char> = text.chars().collect();
    let mut words = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].is_alphabetic() {
            i += 1;
            continue;
        }
        let start = i;
        let mut current = String::new();
        while i < chars.len() {
            let c = chars[i];
            if c.is_alphabetic() {
                current.push(c);
                i += 1;
            } else if is_apostrophe(c)
                && i > start
                && chars[i - 1].is_alphabetic()
                && i + 1 < chars.len()
                && chars[i + 1].is_alphabetic()
            {
                current.push('\'');
                i += 1;
            } else {
                break;
            }
        }
        words.push(Word {
            text: current,
            span: Span::new(start, i),
        });
    }
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(input: &str) -> Vec<String> {
        tokenize_words(input).into_iter().map(|w| w.text).collect()
    }

    #[test]
    fn splits_on_whitespace() {
        assert_eq!(texts("cosa può significare"), ["cosa", "può", "significare"]);
    }

    #[test]
    fn apostrophe_joins_elision() {
        assert_eq!(
            texts("l'esito delle elezioni"),
            ["l'esito", "delle", "elezioni"]
        );
        // Typographic apostrophe behaves the same.
        assert_eq!(texts("l\u{2019}esito"), ["l'esito"]);
    }

    #[test]
    fn empty_input_yields_no_words() {
        assert_eq!(texts(""), Vec::<String>::new());
        assert_eq!(texts("   \n\t"), Vec::<String>::new());
    }

    #[test]
    fn drops_digits_punctuation_and_symbols() {
        assert_eq!(
            texts("il 7 novembre 1628, don Abbondio..."),
            ["il", "novembre", "don", "Abbondio"]
        );
        assert_eq!(texts("ciao! (ciao)"), ["ciao", "ciao"]);
    }

    #[test]
    fn boundary_apostrophes_do_not_join() {
        // Truncation: the apostrophe is not followed by a letter.
        assert_eq!(texts("un po' di pane"), ["un", "po", "di", "pane"]);
        // Quotes around a word.
        assert_eq!(texts("'ciao'"), ["ciao"]);
        assert_eq!(texts("de' medici"), ["de", "medici"]);
    }

    #[test]
    fn spans_are_char_offsets() {
        let words = tokenize_words("e più!");
        assert_eq!(words[0].span, Span::new(0, 1));
        assert_eq!(words[1].span, Span::new(2, 5));
    }

    #[test]
    fn multiple_elisions_in_one_word() {
        assert_eq!(texts("dell'un'altra"), ["dell'un'altra"]);
    }
}
