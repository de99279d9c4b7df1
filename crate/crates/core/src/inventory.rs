//! The closed 30-phoneme inventory of standard Italian.
//!
//! Seven vowels, twenty-one consonants and two glides, each with an IPA
//! display form and a canonical ASCII (ARPAbet-style) code. Geminated
//! consonants are written by doubling the code (`T` → `TT`); the consonant
//! /z/ and the glides /j/ and /w/ have no geminated form, and neither do
//! vowels. Five consonants (/ʎ/ /ɲ/ /ʃ/ /ts/ /dz/) are always geminated
//! between vowels and occur single only word-initially or next to a
//! consonant.

use thiserror::Error;

/// One of the 30 phonemes, identified by its ASCII code.
///
/// Variant order is the canonical inventory order used for all fixed-shape
/// vectors and machine-readable listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phoneme {
    Aa,
    Ey,
    Eh,
    Ow,
    Ao,
    Iy,
    Uw,
    L,
    Lh,
    R,
    Y,
    W,
    N,
    M,
    Gn,
    P,
    B,
    K,
    G,
    T,
    D,
    F,
    V,
    S,
    Z,
    Sh,
    Ch,
    Jh,
    Ts,
    Dz,
}

/// Vowel / glide / consonant partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoundClass {
    Vowel,
    Glide,
    Consonant,
}

impl SoundClass {
    pub fn name(self) -> &'static str {
        match self {
            SoundClass::Vowel => "Vowel",
            SoundClass::Glide => "Glide",
            SoundClass::Consonant => "Consonant",
        }
    }
}

/// Manner of articulation for consonants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Manner {
    Stop,
    Fricative,
    Affricate,
    Nasal,
    Liquid,
}

impl Manner {
    pub fn name(self) -> &'static str {
        match self {
            Manner::Stop => "Stop",
            Manner::Fricative => "Fricative",
            Manner::Affricate => "Affricate",
            Manner::Nasal => "Nasal",
            Manner::Liquid => "Liquid",
        }
    }
}

/// Class plus, for consonants, manner of articulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhonemeClass {
    pub class: SoundClass,
    pub manner: Option<Manner>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InventoryError {
    #[error("phoneme /{ipa}/ ({arpabet}) has no geminated form")]
    NotGeminable {
        ipa: &'static str,
        arpabet: &'static str,
    },
    #[error("unknown ARPAbet code `{0}`")]
    UnknownCode(String),
    #[error("`{code}` doubles {arpabet}, which has no geminated form")]
    NonGeminableDoubled {
        code: String,
        arpabet: &'static str,
    },
}

struct PhonemeInfo {
    ipa: &'static str,
    arpabet: &'static str,
    geminate_code: Option<&'static str>,
    class: SoundClass,
    manner: Option<Manner>,
    always_geminate_intervocalic: bool,
}

use Manner::*;
use SoundClass::*;

const fn vowel(ipa: &'static str, arpabet: &'static str) -> PhonemeInfo {
    PhonemeInfo {
        ipa,
        arpabet,
        geminate_code: None,
        class: Vowel,
        manner: None,
        always_geminate_intervocalic: false,
    }
}

const fn glide(ipa: &'static str, arpabet: &'static str) -> PhonemeInfo {
    PhonemeInfo {
        ipa,
        arpabet,
        geminate_code: None,
        class: Glide,
        manner: None,
        always_geminate_intervocalic: false,
    }
}

const fn consonant(
    ipa: &'static str,
    arpabet: &'static str,
    geminate_code: Option<&'static str>,
    manner: Manner,
    always: bool,
) -> PhonemeInfo {
    PhonemeInfo {
        ipa,
        arpabet,
        geminate_code,
        class: Consonant,
        manner: Some(manner),
        always_geminate_intervocalic: always,
    }
}

// Indexed by `Phoneme as usize`; must stay aligned with the enum.
const DATA: [PhonemeInfo; 30] = [
    vowel("a", "AA"),
    vowel("e", "EY"),
    vowel("\u{025b}", "EH"), // ɛ
    vowel("o", "OW"),
    vowel("\u{0254}", "AO"), // ɔ
    vowel("i", "IY"),
    vowel("u", "UW"),
    consonant("l", "L", Some("LL"), Liquid, false),
    consonant("\u{028e}", "LH", Some("LHLH"), Liquid, true), // ʎ
    consonant("r", "R", Some("RR"), Liquid, false),
    glide("j", "Y"),
    glide("w", "W"),
    consonant("n", "N", Some("NN"), Nasal, false),
    consonant("m", "M", Some("MM"), Nasal, false),
    consonant("\u{0272}", "GN", Some("GNGN"), Nasal, true), // ɲ
    consonant("p", "P", Some("PP"), Stop, false),
    consonant("b", "B", Some("BB"), Stop, false),
    consonant("k", "K", Some("KK"), Stop, false),
    consonant("g", "G", Some("GG"), Stop, false),
    consonant("t", "T", Some("TT"), Stop, false),
    consonant("d", "D", Some("DD"), Stop, false),
    consonant("f", "F", Some("FF"), Fricative, false),
    consonant("v", "V", Some("VV"), Fricative, false),
    consonant("s", "S", Some("SS"), Fricative, false),
    consonant("z", "Z", None, Fricative, false),
    consonant("\u{0283}", "SH", Some("SHSH"), Fricative, true), // ʃ
    consonant("t\u{0283}", "CH", Some("CHCH"), Affricate, false), // tʃ
    consonant("d\u{0292}", "JH", Some("JHJH"), Affricate, false), // dʒ
    consonant("ts", "TS", Some("TSTS"), Affricate, true),
    consonant("dz", "DZ", Some("DZDZ"), Affricate, true),
];

impl Phoneme {
    /// All 30 phonemes in canonical inventory order.
    pub const ALL: [Phoneme; 30] = [
        Phoneme::Aa,
        Phoneme::Ey,
        Phoneme::Eh,
        Phoneme::Ow,
        Phoneme::Ao,
        Phoneme::Iy,
        Phoneme::Uw,
        Phoneme::L,
        Phoneme::Lh,
        Phoneme::R,
        Phoneme::Y,
        Phoneme::W,
        Phoneme::N,
        Phoneme::M,
        Phoneme::Gn,
        Phoneme::P,
        Phoneme::B,
        Phoneme::K,
        Phoneme::G,
        Phoneme::T,
        Phoneme::D,
        Phoneme::F,
        Phoneme::V,
        Phoneme::S,
        Phoneme::Z,
        Phoneme::Sh,
        Phoneme::Ch,
        Phoneme::Jh,
        Phoneme::Ts,
        Phoneme::Dz,
    ];

    fn info(self) -> &'static PhonemeInfo {
        &DATA[self as usize]
    }

    /// IPA display form, e.g. `ɲ` for `GN`.
    pub fn ipa(self) -> &'static str {
        self.info().ipa
    }

    /// Canonical single-occurrence code, e.g. `GN`.
    pub fn arpabet(self) -> &'static str {
        self.info().arpabet
    }

    /// Whether a geminated (doubled) form exists. False exactly for /z/,
    /// the glides and all vowels.
    pub fn can_geminate(self) -> bool {
        self.info().geminate_code.is_some()
    }

    /// Whether the phoneme is always geminated between vowels
    /// (/ʎ/ /ɲ/ /ʃ/ /ts/ /dz/).
    pub fn always_geminate_intervocalic(self) -> bool {
        self.info().always_geminate_intervocalic
    }

    pub fn classify(self) -> PhonemeClass {
        let info = self.info();
        PhonemeClass {
            class: info.class,
            manner: info.manner,
        }
    }

    pub fn class(self) -> SoundClass {
        self.info().class
    }

    pub fn manner(self) -> Option<Manner> {
        self.info().manner
    }

    pub fn is_vowel(self) -> bool {
        self.class() == Vowel
    }

    pub fn is_glide(self) -> bool {
        self.class() == Glide
    }

    pub fn is_consonant(self) -> bool {
        self.class() == Consonant
    }

    /// Parse a single (non-doubled) code.
    pub fn from_arpabet(code: &str) -> Option<Phoneme> {
        Phoneme::ALL
            .iter()
            .copied()
            .find(|p| p.arpabet() == code)
    }
}

/// Code for a phoneme occurrence: the Table-style code, doubled when
/// `geminate` is set.
pub fn arpabet_of(p: Phoneme, geminate: bool) -> Result<&'static str, InventoryError> {
    if !geminate {
        return Ok(p.arpabet());
    }
    p.info().geminate_code.ok_or(InventoryError::NotGeminable {
        ipa: p.ipa(),
        arpabet: p.arpabet(),
    })
}

/// Inverse of [`arpabet_of`]: accepts single and doubled codes.
pub fn parse_arpabet(code: &str) -> Result<(Phoneme, bool), InventoryError> {
    if let Some(p) = Phoneme::from_arpabet(code) {
        return Ok((p, false));
    }
    let n = code.len();
    if n >= 2 && n.is_multiple_of(2) {
        let (head, tail) = code.split_at(n / 2);
        if head == tail {
            if let Some(p) = Phoneme::from_arpabet(head) {
                return if p.can_geminate() {
                    Ok((p, true))
                } else {
                    Err(InventoryError::NonGeminableDoubled {
                        code: code.to_string(),
                        arpabet: p.arpabet(),
                    })
                };
            }
        }
    }
    Err(InventoryError::UnknownCode(code.to_string()))
}
