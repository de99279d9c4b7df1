//! Italian grapheme-to-phoneme transcription and phoneme frequency
//! statistics over a fixed 30-phoneme inventory with geminate marking.
//!
//! The crate covers the full pipeline: a rule-plus-lexicon transcriber, the
//! two counting conventions (expanded and token-wise), convergence
//! diagnostics with power-law fits, and harmonization of historical
//! frequency datasets onto the current classification.

pub mod convergence;
pub mod harmonizer;
pub mod inventory;
pub mod report;
pub mod tabulator;
pub mod transcriber;

pub use inventory::{arpabet_of, parse_arpabet, Manner, Phoneme, PhonemeClass, SoundClass};
pub use tabulator::{CountingMode, FrequencyTable, PhonemePercents};
pub use transcriber::{
    Budget, IntervocalicS, Lexicon, PhonemeToken, Transcriber, TranscriptionPolicy,
    UnknownWordPolicy,
};
