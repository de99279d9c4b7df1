//! Embedded reference data: the published per-source and average frequency
//! table, the two historical datasets (with documented typo corrections),
//! the published adjusted/harmonized table and the published correlation
//! matrix. Shipped inside the binary so comparisons need no network and no
//! copyrighted source texts.
//!
//! Corrections applied to the historical tables (each verified against the
//! corresponding adjusted value): in the 1939 table the duplicated
//! `/p/ 0.18` row is read as /ɲ/ and `/ʌ/ 0.30` as /ʎ/; in the 1962 table
//! `/p/ 0.18` is read as /ɲ/ and `/ʌ/ 0.21` as /ʎ/.

use std::sync::OnceLock;

use crate::inventory::Phoneme;
use crate::tabulator::PhonemePercents;

use super::{ExternalDataset, ExternalLabel, HarmonizerError};

/// Row order of the published frequency table (descending average).
pub const TABLE2_DISPLAY_ORDER: [Phoneme; 30] = [
    Phoneme::Aa,
    Phoneme::Ey,
    Phoneme::Iy,
    Phoneme::Ow,
    Phoneme::N,
    Phoneme::T,
    Phoneme::R,
    Phoneme::L,
    Phoneme::S,
    Phoneme::K,
    Phoneme::D,
    Phoneme::P,
    Phoneme::M,
    Phoneme::Uw,
    Phoneme::Eh,
    Phoneme::V,
    Phoneme::Y,
    Phoneme::Ts,
    Phoneme::B,
    Phoneme::W,
    Phoneme::Ao,
    Phoneme::Ch,
    Phoneme::F,
    Phoneme::Jh,
    Phoneme::G,
    Phoneme::Gn,
    Phoneme::Lh,
    Phoneme::Sh,
    Phoneme::Dz,
    Phoneme::Z,
];

/// (code, Eco, Manzoni, Labate, Lahiri, average) — percent appearance per
/// source plus the published cross-source average.
const TABLE2_ROWS: [(&str, [f64; 5]); 30] = [
    ("AA", [10.79, 11.64, 10.97, 12.04, 11.36]),
    ("EY", [10.06, 10.04, 10.08, 8.23, 9.60]),
    ("IY", [9.85, 7.85, 8.98, 8.31, 8.74]),
    ("OW", [8.25, 8.21, 7.65, 9.11, 8.31]),
    ("N", [7.13, 7.26, 7.20, 7.71, 7.32]),
    ("T", [7.13, 6.21, 6.73, 5.85, 6.48]),
    ("R", [6.36, 6.24, 6.59, 6.57, 6.44]),
    ("L", [5.43, 6.88, 6.51, 5.85, 6.17]),
    ("S", [6.07, 4.57, 4.67, 4.83, 5.03]),
    ("K", [4.47, 4.05, 3.52, 4.17, 4.05]),
    ("D", [4.07, 4.51, 4.06, 3.50, 4.03]),
    ("P", [2.63, 2.97, 2.97, 3.59, 3.04]),
    ("M", [2.11, 2.29, 2.40, 3.21, 2.50]),
    ("UW", [2.42, 2.70, 2.07, 2.44, 2.41]),
    ("EH", [2.47, 1.54, 2.22, 2.31, 2.13]),
    ("V", [1.62, 2.35, 1.60, 1.64, 1.80]),
    ("Y", [1.67, 1.41, 1.96, 1.83, 1.72]),
    ("TS", [0.86, 0.57, 1.43, 1.60, 1.12]),
    ("B", [0.58, 0.81, 2.17, 0.90, 1.11]),
    ("W", [1.23, 1.29, 0.75, 1.17, 1.11]),
    ("AO", [0.82, 1.22, 1.10, 0.98, 1.03]),
    ("CH", [1.02, 1.05, 0.90, 0.91, 0.97]),
    ("F", [0.77, 0.92, 1.02, 0.69, 0.85]),
    ("JH", [0.59, 0.98, 0.82, 0.88, 0.82]),
    ("G", [0.54, 0.98, 0.47, 0.93, 0.73]),
    ("GN", [0.45, 0.64, 0.22, 0.16, 0.37]),
    ("LH", [0.34, 0.38, 0.46, 0.14, 0.33]),
    ("SH", [0.19, 0.27, 0.33, 0.35, 0.29]),
    ("DZ", [0.10, 0.08, 0.11, 0.05, 0.08]),
    ("Z", [0.00, 0.08, 0.05, 0.06, 0.05]),
];

/// 1939 historical table, corrected. Labels use the dataset file notation.
const ZIPF_ROGERS_1939: [(&str, f64); 46] = [
    ("AA", 11.46),
    ("EY", 10.76),
    ("IY", 9.30),
    ("OW", 9.20),
    ("N", 7.60),
    ("R", 6.30),
    ("T", 4.62),
    ("L", 4.22),
    ("S", 3.74),
    ("D", 3.48),
    ("K", 3.32),
    ("M", 2.52),
    ("EH", 2.26),
    ("UW", 2.18),
    ("P", 2.08),
    ("Y", 1.98),
    ("V", 1.48),
    ("AO", 1.38),
    ("S:", 1.14),
    ("L:", 1.10),
    ("F", 1.06),
    ("TS", 1.00),
    ("CH", 0.80),
    ("T:", 0.70),
    ("K:", 0.56),
    ("D:", 0.54),
    ("B", 0.50),
    ("G", 0.48),
    ("KW", 0.46),
    ("N:", 0.40),
    ("P:", 0.38),
    ("JH", 0.38),
    ("LH", 0.30),
    ("W", 0.26),
    ("KW:", 0.26),
    ("M:", 0.24),
    ("R:", 0.22),
    ("SH", 0.22),
    ("F:", 0.20),
    ("GN", 0.18),
    ("GW", 0.18),
    ("B:", 0.18),
    ("JH:", 0.14),
    ("V:", 0.10),
    ("G:", 0.10),
    ("CH:", 0.04),
];

/// 1962 historical table, corrected. `'` marks stressed-vowel allophones.
const BUSA_1962: [(&str, f64); 50] = [
    ("EY", 8.21),
    ("OW", 8.00),
    ("N", 7.27),
    ("R", 6.83),
    ("IY", 6.50),
    ("AA", 6.43),
    ("T", 5.67),
    ("S", 4.42),
    ("K", 4.10),
    ("AA'", 3.96),
    ("D", 3.31),
    ("L", 3.19),
    ("M", 3.11),
    ("P", 2.98),
    ("EY'", 2.83),
    ("OW'", 2.27),
    ("EH", 2.23),
    ("V", 2.13),
    ("Y", 2.09),
    ("IY'", 1.93),
    ("AO", 1.38),
    ("UW'", 1.27),
    ("W", 1.18),
    ("UW", 0.85),
    ("F", 0.82),
    ("CH", 0.77),
    ("T:", 0.67),
    ("L:", 0.65),
    ("S:", 0.62),
    ("B", 0.52),
    ("TS", 0.48),
    ("Z", 0.39),
    ("G", 0.38),
    ("JH", 0.38),
    ("B:", 0.25),
    ("LH", 0.21),
    ("SH", 0.20),
    ("K:", 0.20),
    ("GN", 0.18),
    ("R:", 0.17),
    ("P:", 0.16),
    ("M:", 0.12),
    ("N:", 0.12),
    ("JH:", 0.10),
    ("CH:", 0.08),
    ("F:", 0.05),
    ("V:", 0.05),
    ("DZ", 0.02),
    ("D:", 0.006),
    ("G:", 0.004),
];

/// Published harmonized comparison: (code, current average, adjusted 1939,
/// adjusted 1962).
const TABLE8_ROWS: [(&str, [f64; 3]); 30] = [
    ("AA", [11.36, 10.72, 10.14]),
    ("EY", [9.60, 10.06, 10.77]),
    ("IY", [8.74, 8.70, 8.22]),
    ("OW", [8.31, 8.60, 10.02]),
    ("N", [7.32, 7.85, 7.33]),
    ("T", [6.48, 5.63, 6.84]),
    ("R", [6.44, 6.30, 6.99]),
    ("L", [6.17, 6.00, 4.38]),
    ("S", [5.03, 5.63, 5.52]),
    ("K", [4.05, 5.07, 4.39]),
    ("D", [4.03, 4.26, 3.24]),
    ("P", [3.04, 2.66, 3.22]),
    ("M", [2.50, 2.81, 3.27]),
    ("UW", [2.41, 2.04, 2.07]),
    ("EH", [2.13, 2.11, 2.18]),
    ("V", [1.80, 1.57, 2.18]),
    ("Y", [1.72, 1.85, 2.04]),
    ("TS", [1.12, 0.94, 0.48]),
    ("B", [1.11, 0.80, 1.00]),
    ("W", [1.11, 0.84, 1.15]),
    ("AO", [1.03, 1.29, 1.35]),
    ("CH", [0.97, 0.82, 0.91]),
    ("F", [0.85, 1.37, 0.90]),
    ("JH", [0.82, 0.62, 0.57]),
    ("G", [0.73, 0.80, 0.38]),
    ("GN", [0.37, 0.17, 0.18]),
    ("LH", [0.33, 0.28, 0.20]),
    ("SH", [0.29, 0.21, 0.20]),
    ("DZ", [0.08, 0.00, 0.02]),
    ("Z", [0.05, 0.00, 0.38]),
];

/// Published Pearson matrix over current / 1939-adjusted / 1962-adjusted.
const TABLE9: [[f64; 3]; 3] = [
    [1.0, 0.993, 0.981],
    [0.993, 1.0, 0.982],
    [0.981, 0.982, 1.0],
];

const SOURCE_NAMES: [&str; 4] = ["Eco", "Manzoni", "Labate", "Lahiri"];

/// FNV-1a guard against accidental edits of the embedded constants.
const EXPECTED_CHECKSUM: u64 = 0x37e2_c74c_4af5_dd90;

/// Per-source and average percent columns of the current study.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2 {
    pub sources: [&'static str; 4],
    /// Percent columns in inventory order, one per source.
    pub per_source: [PhonemePercents; 4],
    pub average: PhonemePercents,
}

impl Table2 {
    pub fn source_column(&self, name: &str) -> Option<&PhonemePercents> {
        self.sources
            .iter()
            .position(|s| s.eq_ignore_ascii_case(name))
            .map(|i| &self.per_source[i])
    }
}

/// The published harmonized comparison columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table8 {
    pub current: PhonemePercents,
    pub zipf: PhonemePercents,
    pub busa: PhonemePercents,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTables {
    pub table2: Table2,
    /// Corrected 1939 dataset (Zipf & Rogers).
    pub zipf_raw: ExternalDataset,
    /// Corrected 1962 dataset (Busa et al.).
    pub busa_raw: ExternalDataset,
    pub table8: Table8,
    /// Pearson matrix: rows/columns are current, zipf, busa.
    pub table9: [[f64; 3]; 3],
    pub notes: &'static str,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn checksum_input() -> String {
    let mut s = String::new();
    for (code, vals) in TABLE2_ROWS {
        s.push_str(code);
        for v in vals {
            s.push_str(&format!(",{v:.4}"));
        }
        s.push(';');
    }
    for (label, v) in ZIPF_ROGERS_1939 {
        s.push_str(&format!("{label},{v:.4};"));
    }
    for (label, v) in BUSA_1962 {
        s.push_str(&format!("{label},{v:.4};"));
    }
    for (code, vals) in TABLE8_ROWS {
        s.push_str(code);
        for v in vals {
            s.push_str(&format!(",{v:.4}"));
        }
        s.push(';');
    }
    for row in TABLE9 {
        for v in row {
            s.push_str(&format!("{v:.4},"));
        }
    }
    s
}

fn percent_column<const N: usize>(
    rows: &[(&str, [f64; N]); 30],
    col: usize,
) -> PhonemePercents {
    let mut out = [0.0f64; 30];
    for (code, vals) in rows {
        let p = Phoneme::from_arpabet(code).expect("embedded code is valid");
        out[p as usize] = vals[col];
    }
    PhonemePercents(out)
}

fn dataset_from(name: &str, rows: &[(&str, f64)]) -> ExternalDataset {
    let entries = rows
        .iter()
        .map(|&(label, v)| {
            let parsed = ExternalLabel::parse(label).expect("embedded label is valid");
            (parsed, v)
        })
        .collect();
    ExternalDataset::new(name, entries)
}

fn build() -> Result<ReferenceTables, HarmonizerError> {
    let actual = fnv1a(checksum_input().as_bytes());
    if actual != EXPECTED_CHECKSUM {
        return Err(HarmonizerError::ChecksumMismatch {
            expected: EXPECTED_CHECKSUM,
            actual,
        });
    }
    Ok(ReferenceTables {
        table2: Table2 {
            sources: SOURCE_NAMES,
            per_source: [
                percent_column(&TABLE2_ROWS, 0),
                percent_column(&TABLE2_ROWS, 1),
                percent_column(&TABLE2_ROWS, 2),
                percent_column(&TABLE2_ROWS, 3),
            ],
            average: percent_column(&TABLE2_ROWS, 4),
        },
        zipf_raw: dataset_from("zipf", &ZIPF_ROGERS_1939),
        busa_raw: dataset_from("busa", &BUSA_1962),
        table8: Table8 {
            current: percent_column(&TABLE8_ROWS, 0),
            zipf: percent_column(&TABLE8_ROWS, 1),
            busa: percent_column(&TABLE8_ROWS, 2),
        },
        table9: TABLE9,
        notes: "Historical tables carry documented corrections: in the 1939 \
                table the duplicated P 0.18 row is read as GN and the 0.30 \
                row with a garbled symbol as LH; in the 1962 table P 0.18 is \
                read as GN and 0.21 as LH. The adjusted-1962 column is known \
                to deviate from recomputation by up to ~0.06 percentage \
                points; the published renormalization denominator is not \
                recoverable.",
    })
}

/// The embedded reference tables, checksum-verified on first use.
pub fn load_reference_tables() -> Result<&'static ReferenceTables, HarmonizerError> {
    static CELL: OnceLock<Result<ReferenceTables, HarmonizerError>> = OnceLock::new();
    CELL.get_or_init(build).as_ref().map_err(|e| e.clone())
}
