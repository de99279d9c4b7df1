//! Frequency tables under the two counting conventions, gemination
//! statistics, and class/manner aggregates.
//!
//! Expanded counting treats a geminate token as two occurrences of its base
//! phoneme (30 categories); token-wise counting keeps single and geminated
//! occurrences as distinct unit-weight categories (50 categories).

use std::sync::OnceLock;

use thiserror::Error;

use crate::inventory::{arpabet_of, Manner, Phoneme, SoundClass};
use crate::transcriber::PhonemeToken;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountingMode {
    /// Geminate = two occurrences of the base phoneme; 30 categories.
    Expanded,
    /// Geminate = one occurrence of a separate category; 50 categories.
    TokenWise,
}

impl CountingMode {
    pub fn name(self) -> &'static str {
        match self {
            CountingMode::Expanded => "expanded",
            CountingMode::TokenWise => "tokenwise",
        }
    }
}

/// A counting category: a phoneme, optionally in geminated form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Category {
    pub phoneme: Phoneme,
    pub geminate: bool,
}

impl Category {
    pub fn single(phoneme: Phoneme) -> Self {
        Category {
            phoneme,
            geminate: false,
        }
    }

    /// Wire label: the code, doubled for the geminate category.
    pub fn label(&self) -> &'static str {
        arpabet_of(self.phoneme, self.geminate).expect("categories are valid")
    }
}

/// The fixed category list for a mode: all 30 singles in inventory order,
/// followed (token-wise) by the 20 geminate categories in inventory order.
pub fn categories(mode: CountingMode) -> &'static [Category] {
    static EXPANDED: OnceLock<Vec<Category>> = OnceLock::new();
    static TOKENWISE: OnceLock<Vec<Category>> = OnceLock::new();
    match mode {
        CountingMode::Expanded => EXPANDED.get_or_init(|| {
            Phoneme::ALL.iter().map(|&p| Category::single(p)).collect()
        }),
        CountingMode::TokenWise => TOKENWISE.get_or_init(|| {
            let mut cats: Vec<Category> =
                Phoneme::ALL.iter().map(|&p| Category::single(p)).collect();
            cats.extend(
                Phoneme::ALL
                    .iter()
                    .filter(|p| p.can_geminate())
                    .map(|&p| Category { phoneme: p, geminate: true }),
            );
            cats
        }),
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TabulatorError {
    #[error("cannot tabulate an empty token sequence")]
    EmptyTokens,
    #[error("operation requires a table in {expected} mode, got {got}")]
    WrongMode {
        expected: &'static str,
        got: &'static str,
    },
    #[error("cannot average an empty list of tables")]
    EmptyTableList,
    #[error("tables to average must share counting mode and key set")]
    MixedModes,
}

/// Per-category relative frequencies. `counts`/`total` are present for
/// tables tabulated from tokens and absent for derived (averaged) tables;
/// `frequencies` are fractions aligned with [`categories`] of the mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    pub mode: CountingMode,
    pub counts: Option<Vec<u64>>,
    pub total: Option<u64>,
    pub frequencies: Vec<f64>,
}

impl FrequencyTable {
    /// Tabulate a token sequence. Every category of the mode is present,
    /// zero counts included.
    pub fn from_tokens(
        tokens: &[PhonemeToken],
        mode: CountingMode,
    ) -> Result<FrequencyTable, TabulatorError> {
        if tokens.is_empty() {
            return Err(TabulatorError::EmptyTokens);
        }
        let cats = categories(mode);
        let mut counts = vec![0u64; cats.len()];
        let mut total = 0u64;
        for token in tokens {
            match mode {
                CountingMode::Expanded => {
                    counts[token.phoneme as usize] += token.expanded_units();
                    total += token.expanded_units();
                }
                CountingMode::TokenWise => {
                    let idx = tokenwise_index(token.phoneme, token.geminate);
                    counts[idx] += 1;
                    total += 1;
                }
            }
        }
        let frequencies = counts.iter().map(|&c| c as f64 / total as f64).collect();
        Ok(FrequencyTable {
            mode,
            counts: Some(counts),
            total: Some(total),
            frequencies,
        })
    }

    pub fn category_index(&self, phoneme: Phoneme, geminate: bool) -> Option<usize> {
        match self.mode {
            CountingMode::Expanded if !geminate => Some(phoneme as usize),
            CountingMode::Expanded => None,
            CountingMode::TokenWise => {
                if geminate && !phoneme.can_geminate() {
                    None
                } else {
                    Some(tokenwise_index(phoneme, geminate))
                }
            }
        }
    }

    /// Frequency (fraction) of a phoneme in an expanded table.
    pub fn frequency(&self, phoneme: Phoneme) -> f64 {
        match self.mode {
            CountingMode::Expanded => self.frequencies[phoneme as usize],
            CountingMode::TokenWise => panic!("frequency(phoneme) needs an expanded table"),
        }
    }

    /// Frequency (fraction) of a token-wise category.
    pub fn frequency_of(&self, phoneme: Phoneme, geminate: bool) -> f64 {
        let idx = self
            .category_index(phoneme, geminate)
            .expect("valid category for mode");
        self.frequencies[idx]
    }

    /// Expanded per-phoneme frequencies as percentages, inventory order.
    pub fn expanded_percents(&self) -> Result<PhonemePercents, TabulatorError> {
        if self.mode != CountingMode::Expanded {
            return Err(TabulatorError::WrongMode {
                expected: CountingMode::Expanded.name(),
                got: self.mode.name(),
            });
        }
        let mut out = [0.0f64; 30];
        for (i, f) in self.frequencies.iter().enumerate() {
            out[i] = f * 100.0;
        }
        Ok(PhonemePercents(out))
    }
}

fn tokenwise_index(phoneme: Phoneme, geminate: bool) -> usize {
    if !geminate {
        phoneme as usize
    } else {
        // Geminate categories follow the 30 singles, in inventory order.
        let offset = Phoneme::ALL
            .iter()
            .take(phoneme as usize)
            .filter(|p| p.can_geminate())
            .count();
        30 + offset
    }
}

/// Per-phoneme percentages in inventory order, the shape shared by
/// computed columns and the embedded reference columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhonemePercents(pub [f64; 30]);

impl PhonemePercents {
    pub fn get(&self, p: Phoneme) -> f64 {
        self.0[p as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Phoneme, f64)> + '_ {
        Phoneme::ALL.iter().map(move |&p| (p, self.get(p)))
    }

    pub fn values(&self) -> &[f64; 30] {
        &self.0
    }
}

/// Unweighted arithmetic mean per category over tables of the same mode.
pub fn average_tables(tables: &[FrequencyTable]) -> Result<FrequencyTable, TabulatorError> {
    let first = tables.first().ok_or(TabulatorError::EmptyTableList)?;
    if tables.iter().any(|t| t.mode != first.mode) {
        return Err(TabulatorError::MixedModes);
    }
    let n = tables.len() as f64;
    let len = first.frequencies.len();
    let mut frequencies = vec![0.0f64; len];
    for table in tables {
        for (i, f) in table.frequencies.iter().enumerate() {
            frequencies[i] += f / n;
        }
    }
    Ok(FrequencyTable {
        mode: first.mode,
        counts: None,
        total: None,
        frequencies,
    })
}

/// Token-wise gemination statistics for one geminable phoneme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeminationEntry {
    pub phoneme: Phoneme,
    /// Token-wise frequency of the single form (fraction).
    pub independent_freq: f64,
    /// Token-wise frequency of the geminated form (fraction).
    pub geminated_freq: f64,
    /// geminated / (independent + geminated); None when the phoneme never
    /// occurs.
    pub rate: Option<f64>,
}

/// Gemination statistics over the 20 geminable phonemes, inventory order.
#[derive(Debug, Clone, PartialEq)]
pub struct GeminationStats {
    pub entries: Vec<GeminationEntry>,
}

impl GeminationStats {
    pub fn get(&self, p: Phoneme) -> Option<&GeminationEntry> {
        self.entries.iter().find(|e| e.phoneme == p)
    }
}

pub fn gemination_stats(tokens: &[PhonemeToken]) -> Result<GeminationStats, TabulatorError> {
    let table = FrequencyTable::from_tokens(tokens, CountingMode::TokenWise)?;
    gemination_from_table(&table)
}

/// Gemination statistics from an existing token-wise table (works for
/// averaged tables too).
pub fn gemination_from_table(table: &FrequencyTable) -> Result<GeminationStats, TabulatorError> {
    if table.mode != CountingMode::TokenWise {
        return Err(TabulatorError::WrongMode {
            expected: CountingMode::TokenWise.name(),
            got: table.mode.name(),
        });
    }
    let entries = Phoneme::ALL
        .iter()
        .filter(|p| p.can_geminate())
        .map(|&p| {
            let independent = table.frequency_of(p, false);
            let geminated = table.frequency_of(p, true);
            let denom = independent + geminated;
            GeminationEntry {
                phoneme: p,
                independent_freq: independent,
                geminated_freq: geminated,
                rate: (denom > 0.0).then(|| geminated / denom),
            }
        })
        .collect();
    Ok(GeminationStats { entries })
}

/// Vowel / glide / consonant shares, in the same units as the input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassBreakdown {
    pub vowel: f64,
    pub glide: f64,
    pub consonant: f64,
}

/// Manner-of-articulation shares over consonants, same units as input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MannerBreakdown {
    pub stop: f64,
    pub fricative: f64,
    pub affricate: f64,
    pub nasal: f64,
    pub liquid: f64,
}

/// Where /z/ goes in manner aggregates. The published group totals include
/// it under Fricative even though the group caption omits it; `Excluded`
/// reproduces the caption's letter instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZMannerPolicy {
    #[default]
    IncludeInFricative,
    Excluded,
}

/// Sum per class over any per-phoneme weights (fractions or percents).
pub fn class_breakdown_of(weights: impl Fn(Phoneme) -> f64) -> ClassBreakdown {
    let mut out = ClassBreakdown {
        vowel: 0.0,
        glide: 0.0,
        consonant: 0.0,
    };
    for p in Phoneme::ALL {
        let w = weights(p);
        match p.class() {
            SoundClass::Vowel => out.vowel += w,
            SoundClass::Glide => out.glide += w,
            SoundClass::Consonant => out.consonant += w,
        }
    }
    out
}

/// Class shares of an expanded-mode table, as fractions.
pub fn class_breakdown(table: &FrequencyTable) -> Result<ClassBreakdown, TabulatorError> {
    if table.mode != CountingMode::Expanded {
        return Err(TabulatorError::WrongMode {
            expected: CountingMode::Expanded.name(),
            got: table.mode.name(),
        });
    }
    Ok(class_breakdown_of(|p| table.frequency(p)))
}

/// Sum per manner group over any per-phoneme weights.
pub fn manner_breakdown_of(
    weights: impl Fn(Phoneme) -> f64,
    z_policy: ZMannerPolicy,
) -> MannerBreakdown {
    let mut out = MannerBreakdown {
        stop: 0.0,
        fricative: 0.0,
        affricate: 0.0,
        nasal: 0.0,
        liquid: 0.0,
    };
    for p in Phoneme::ALL {
        if p == Phoneme::Z && z_policy == ZMannerPolicy::Excluded {
            continue;
        }
        let w = weights(p);
        match p.manner() {
            Some(Manner::Stop) => out.stop += w,
            Some(Manner::Fricative) => out.fricative += w,
            Some(Manner::Affricate) => out.affricate += w,
            Some(Manner::Nasal) => out.nasal += w,
            Some(Manner::Liquid) => out.liquid += w,
            None => {}
        }
    }
    out
}

/// Manner shares of an expanded-mode table, as fractions, with the default
/// /z/ placement.
pub fn manner_breakdown(table: &FrequencyTable) -> Result<MannerBreakdown, TabulatorError> {
    manner_breakdown_with(table, ZMannerPolicy::default())
}

pub fn manner_breakdown_with(
    table: &FrequencyTable,
    z_policy: ZMannerPolicy,
) -> Result<MannerBreakdown, TabulatorError> {
    if table.mode != CountingMode::Expanded {
        return Err(TabulatorError::WrongMode {
            expected: CountingMode::Expanded.name(),
            got: table.mode.name(),
        });
    }
    Ok(manner_breakdown_of(|p| table.frequency(p), z_policy))
}
