//! Deterministic grapheme-to-phoneme rules for Italian orthography.
//!
//! The engine resolves the regular spelling patterns: soft/hard `c` and `g`
//! (including the silent `i` of `cia`/`gia`/`scia` and the `ch`/`gh`
//! hardeners), `gn`, `gli`, `sc`, `qu`, silent `h`, orthographic double
//! consonants as geminates, `s`-voicing before voiced consonants, and the
//! glide defaults for prevocalic `i`/`u`. Irregular words (hiatus, open
//! vowels, /dz/) are the lexicon's job.
//!
//! Accented vowels are stress-bearing and never reduce to glides. A rising
//! `i`/`u` + vowel pair defaults to glide + vowel; a falling vowel + `i`/`u`
//! pair keeps both as full vowels, matching dictionary practice.

use crate::inventory::Phoneme;

/// A phoneme emitted by the rules, with the half-open char range of the
/// graphemes that produced it (indices into the letter sequence given to
/// [`apply_rules`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleToken {
    pub phoneme: Phoneme,
    pub geminate: bool,
    pub start: usize,
    pub end: usize,
}

/// A letter the engine has no rule for, at `position` in the letter
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownGrapheme {
    pub grapheme: char,
    pub position: usize,
}

fn is_vowel_letter(c: char) -> bool {
    matches!(
        c,
        'a' | 'à' | 'á' | 'â'
            | 'e' | 'è' | 'é' | 'ê' | 'ë'
            | 'i' | 'ì' | 'í' | 'î' | 'ï'
            | 'o' | 'ò' | 'ó' | 'ô'
            | 'u' | 'ù' | 'ú' | 'û' | 'ü'
            | 'y'
    )
}

fn is_i_family(c: char) -> bool {
    matches!(c, 'i' | 'ì' | 'í' | 'î' | 'ï' | 'y')
}

fn is_u_family(c: char) -> bool {
    matches!(c, 'u' | 'ù' | 'ú' | 'û' | 'ü')
}

fn is_accented(c: char) -> bool {
    matches!(
        c,
        'à' | 'á' | 'â'
            | 'è' | 'é' | 'ê' | 'ë'
            | 'ì' | 'í' | 'î' | 'ï'
            | 'ò' | 'ó' | 'ô'
            | 'ù' | 'ú' | 'û' | 'ü'
    )
}

/// Consonants that voice a preceding `s` (sbaglio, sdegno, slancio...).
fn voices_preceding_s(c: char) -> bool {
    matches!(c, 'b' | 'd' | 'g' | 'l' | 'm' | 'n' | 'r' | 'v')
}

/// Vowel quality of a single vowel letter. Unmarked `e`/`o` default to the
/// closed qualities; grave-accented `è`/`ò` are open.
fn vowel_quality(c: char) -> Option<Phoneme> {
    Some(match c {
        'a' | 'à' | 'á' | 'â' => Phoneme::Aa,
        'e' | 'é' | 'ê' | 'ë' => Phoneme::Ey,
        'è' => Phoneme::Eh,
        'i' | 'ì' | 'í' | 'î' | 'ï' | 'y' => Phoneme::Iy,
        'o' | 'ó' | 'ô' => Phoneme::Ow,
        'ò' => Phoneme::Ao,
        'u' | 'ù' | 'ú' | 'û' | 'ü' => Phoneme::Uw,
        _ => return None,
    })
}

struct Engine<'a> {
    chars: &'a [char],
    /// Letter context following the final char, used when transcribing the
    /// elided prefix of a word like `c'era` against a lexicon-resolved tail.
    following: Option<char>,
    i: usize,
    out: Vec<RuleToken>,
}

impl<'a> Engine<'a> {
    fn peek(&self, ahead: usize) -> Option<char> {
        match self.chars.get(self.i + ahead) {
            Some(&c) => Some(c),
            None if self.i + ahead == self.chars.len() => self.following,
            None => None,
        }
    }

    fn peek_is(&self, ahead: usize, pred: impl Fn(char) -> bool) -> bool {
        self.peek(ahead).is_some_and(pred)
    }

    fn prev_char(&self) -> Option<char> {
        self.i.checked_sub(1).map(|j| self.chars[j])
    }

    fn emit(&mut self, phoneme: Phoneme, geminate: bool, len: usize) {
        // A cluster decision may have matched the virtual `following`
        // context char; only in-slice letters can be consumed.
        let len = len.min(self.chars.len() - self.i);
        self.out.push(RuleToken {
            phoneme,
            geminate,
            start: self.i,
            end: self.i + len,
        });
        self.i += len;
    }

    fn skip(&mut self, len: usize) {
        self.i += len;
    }

    fn soft_vowel_follows(&self, ahead: usize) -> bool {
        self.peek_is(ahead, |c| {
            matches!(c, 'e' | 'è' | 'é' | 'ê' | 'ë') || is_i_family(c)
        })
    }

    fn run(&mut self) -> Result<(), UnknownGrapheme> {
        while let Some(&c) = self.chars.get(self.i) {
            match c {
                'a' | 'à' | 'á' | 'â' | 'e' | 'è' | 'é' | 'ê' | 'ë' | 'o' | 'ò' | 'ó'
                | 'ô' => {
                    let q = vowel_quality(c).unwrap();
                    self.emit(q, false, 1);
                }
                'i' | 'ì' | 'í' | 'î' | 'ï' | 'y' => self.vowel_i(c),
                'u' | 'ù' | 'ú' | 'û' | 'ü' => self.vowel_u(c),
                'c' => self.letter_c(),
                'g' => self.letter_g(),
                's' => self.letter_s(),
                'z' => {
                    if self.peek_is(1, |n| n == 'z') {
                        self.emit(Phoneme::Ts, true, 2);
                    } else {
                        self.emit(Phoneme::Ts, false, 1);
                    }
                }
                'q' => {
                    if self.peek_is(1, |n| n == 'q') {
                        self.emit(Phoneme::K, true, 2);
                    } else {
                        self.emit(Phoneme::K, false, 1);
                    }
                }
                'h' => self.skip(1),
                'j' => self.emit(Phoneme::Y, false, 1),
                'w' => self.emit(Phoneme::W, false, 1),
                'x' => {
                    self.out.push(RuleToken {
                        phoneme: Phoneme::K,
                        geminate: false,
                        start: self.i,
                        end: self.i + 1,
                    });
                    self.emit(Phoneme::S, false, 1);
                }
                'ç' => self.emit(Phoneme::S, false, 1),
                'b' | 'd' | 'f' | 'k' | 'l' | 'm' | 'n' | 'p' | 'r' | 't' | 'v' => {
                    self.plain_consonant(c)
                }
                other => {
                    return Err(UnknownGrapheme {
                        grapheme: other,
                        position: self.i,
                    })
                }
            }
        }
        Ok(())
    }

    fn plain_consonant(&mut self, c: char) {
        let phoneme = match c {
            'b' => Phoneme::B,
            'd' => Phoneme::D,
            'f' => Phoneme::F,
            'k' => Phoneme::K,
            'l' => Phoneme::L,
            'm' => Phoneme::M,
            'n' => Phoneme::N,
            'p' => Phoneme::P,
            'r' => Phoneme::R,
            't' => Phoneme::T,
            'v' => Phoneme::V,
            _ => unreachable!(),
        };
        if self.peek_is(1, |n| n == c) {
            self.emit(phoneme, true, 2);
        } else {
            self.emit(phoneme, false, 1);
        }
    }

    /// `i` (or `y`): glide before another vowel unless accented; the `i` of
    /// a falling pair (`mai`, `poi`) stays a full vowel.
    fn vowel_i(&mut self, c: char) {
        if !is_accented(c)
            && self.peek_is(1, |n| is_vowel_letter(n) && !is_i_family(n))
        {
            self.emit(Phoneme::Y, false, 1);
        } else {
            self.emit(Phoneme::Iy, false, 1);
        }
    }

    /// `u`: glide before a following vowel; before `i` only in the `qu`/`gu`
    /// clusters (`guida`, `qui`) — elsewhere `ui` keeps the full vowel
    /// (`lui`, `cui`, `buio`).
    fn vowel_u(&mut self, c: char) {
        if is_accented(c) {
            self.emit(Phoneme::Uw, false, 1);
            return;
        }
        let glide = match self.peek(1) {
            Some(n) if is_u_family(n) => false,
            Some(n) if is_i_family(n) => matches!(self.prev_char(), Some('g') | Some('q')),
            Some(n) => is_vowel_letter(n),
            None => false,
        };
        if glide {
            self.emit(Phoneme::W, false, 1);
        } else {
            self.emit(Phoneme::Uw, false, 1);
        }
    }

    fn letter_c(&mut self) {
        match self.peek(1) {
            // `cq` spells a geminate /k/ (acqua).
            Some('q') => self.emit(Phoneme::K, true, 2),
            Some('c') => {
                if self.peek_is(2, |n| n == 'h') {
                    self.emit(Phoneme::K, true, 3);
                } else if self.peek_is(2, is_i_family) && self.peek_is(3, is_vowel_letter) {
                    self.emit(Phoneme::Ch, true, 3);
                } else if self.soft_vowel_follows(2) {
                    self.emit(Phoneme::Ch, true, 2);
                } else {
                    self.emit(Phoneme::K, true, 2);
                }
            }
            Some('h') => self.emit(Phoneme::K, false, 2),
            Some(n) if is_i_family(n) && self.peek_is(2, is_vowel_letter) => {
                self.emit(Phoneme::Ch, false, 2);
            }
            _ if self.soft_vowel_follows(1) => self.emit(Phoneme::Ch, false, 1),
            _ => self.emit(Phoneme::K, false, 1),
        }
    }

    fn letter_g(&mut self) {
        match self.peek(1) {
            Some('g') => {
                if self.peek_is(2, |n| n == 'h') {
                    self.emit(Phoneme::G, true, 3);
                } else if self.peek_is(2, is_i_family) && self.peek_is(3, is_vowel_letter) {
                    self.emit(Phoneme::Jh, true, 3);
                } else if self.soft_vowel_follows(2) {
                    self.emit(Phoneme::Jh, true, 2);
                } else {
                    self.emit(Phoneme::G, true, 2);
                }
            }
            Some('n') => self.emit(Phoneme::Gn, false, 2),
            Some('l') => {
                if self.peek_is(2, is_i_family) && self.peek_is(3, is_vowel_letter) {
                    self.emit(Phoneme::Lh, false, 3);
                } else if self.peek_is(2, is_i_family) {
                    self.emit(Phoneme::Lh, false, 2);
                } else {
                    self.emit(Phoneme::G, false, 1);
                }
            }
            Some('h') => self.emit(Phoneme::G, false, 2),
            Some(n) if is_i_family(n) && self.peek_is(2, is_vowel_letter) => {
                self.emit(Phoneme::Jh, false, 2);
            }
            _ if self.soft_vowel_follows(1) => self.emit(Phoneme::Jh, false, 1),
            _ => self.emit(Phoneme::G, false, 1),
        }
    }

    fn letter_s(&mut self) {
        match self.peek(1) {
            Some('s') => self.emit(Phoneme::S, true, 2),
            Some('c') => {
                if self.peek_is(2, is_i_family) && self.peek_is(3, is_vowel_letter) {
                    self.emit(Phoneme::Sh, false, 3);
                } else if self.soft_vowel_follows(2) {
                    self.emit(Phoneme::Sh, false, 2);
                } else {
                    // `sca`, `sco`, `scu`, `sch`: plain s, the c is next.
                    self.emit(Phoneme::S, false, 1);
                }
            }
            Some(n) if voices_preceding_s(n) => self.emit(Phoneme::Z, false, 1),
            _ => self.emit(Phoneme::S, false, 1),
        }
    }
}

/// Apply the rules to a normalized letter sequence (no apostrophes).
/// `following`, when given, supplies the letter that follows the sequence
/// in the same phonological word.
pub fn apply_rules(
    chars: &[char],
    following: Option<char>,
) -> Result<Vec<RuleToken>, UnknownGrapheme> {
    let mut engine = Engine {
        chars,
        following,
        i: 0,
        out: Vec::with_capacity(chars.len()),
    };
    engine.run()?;
    Ok(engine.out)
}
