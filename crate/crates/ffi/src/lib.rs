//! C ABI over the fonema toolkit: opaque transcriber handles, status codes,
//! and JSON/string results.
//!
//! Ownership rules: every `*mut c_char` returned by these functions is
//! allocated here and must be released with [`fonema_string_free`];
//! transcriber handles must be released with [`fonema_transcriber_free`].
//! On failure the functions return NULL (or a non-zero status) and store a
//! message retrievable via [`fonema_last_error_message`]. Handles are
//! immutable after construction and may be shared across threads; the
//! last-error slot is thread-local.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;
use serde::Serialize;

use fonema::convergence::{delta_series, fit_power, stability_point, StabilityScope};
use fonema::harmonizer::{adjust_dataset, ExternalDataset};
use fonema::tabulator::{
    class_breakdown, gemination_stats, manner_breakdown, FrequencyTable,
};
use fonema::transcriber::Transcription;
use fonema::{
    Budget, CountingMode, IntervocalicS, Lexicon, Phoneme, Transcriber, TranscriptionPolicy,
    UnknownWordPolicy,
};

/// Result codes for fonema_* functions that do not return a pointer.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FonemaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    TranscriptionFailed = 4,
    AnalysisFailed = 5,
}

/// Opaque transcriber handle.
pub struct FonemaTranscriber {
    inner: Transcriber,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn string_out(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            set_error("result contained an interior NUL byte".to_string());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `ptr` must be non-null and point to a NUL-terminated UTF-8 string valid
/// for the duration of the call.
unsafe fn utf8_in<'a>(ptr: *const c_char) -> Result<&'a str, FonemaStatus> {
    if ptr.is_null() {
        set_error("null string argument".to_string());
        return Err(FonemaStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".to_string());
        FonemaStatus::InvalidUtf8
    })
}

fn budget_from(raw: u64) -> Budget {
    if raw == u64::MAX {
        Budget::All
    } else {
        Budget::Units(raw)
    }
}

/// Last error message recorded on this thread, or NULL when none. Caller
/// frees with fonema_string_free().
#[no_mangle]
pub extern "C" fn fonema_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by a fonema_*
/// function, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fonema_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// New transcriber with the bundled lexicon and the default policy
/// (voiceless intervocalic s, rule fallback for unknown words).
#[no_mangle]
pub extern "C" fn fonema_transcriber_new() -> *mut FonemaTranscriber {
    let inner = Transcriber::with_bundled_lexicon(TranscriptionPolicy::default());
    Box::into_raw(Box::new(FonemaTranscriber { inner }))
}

/// New transcriber with policy switches and optional extra lexicon text
/// (the bundled lexicon is loaded first; entries in `lexicon_tsv`
/// override it). `lexicon_tsv` may be NULL. Returns NULL on parse failure.
///
/// # Safety
/// `lexicon_tsv`, when non-null, must be a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn fonema_transcriber_new_with(
    lexicon_tsv: *const c_char,
    voiced_intervocalic_s: bool,
    require_lexicon: bool,
) -> *mut FonemaTranscriber {
    let mut lexicon = Lexicon::bundled();
    if !lexicon_tsv.is_null() {
        let text = match utf8_in(lexicon_tsv) {
            Ok(t) => t,
            Err(_) => return ptr::null_mut(),
        };
        if let Err(e) = lexicon.extend_from_str("ffi", text) {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    }
    let policy = TranscriptionPolicy {
        intervocalic_s: if voiced_intervocalic_s {
            IntervocalicS::Voiced
        } else {
            IntervocalicS::Voiceless
        },
        unknown_word: if require_lexicon {
            UnknownWordPolicy::Error
        } else {
            UnknownWordPolicy::RulesOnly
        },
    };
    Box::into_raw(Box::new(FonemaTranscriber {
        inner: Transcriber::new(lexicon, policy),
    }))
}

/// Release a transcriber handle.
///
/// # Safety
/// `t` must be NULL or a pointer previously returned by a constructor,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fonema_transcriber_free(t: *mut FonemaTranscriber) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Transcribe text into the wire format (one line per word,
/// space-separated codes, geminates doubled). `budget` caps the expanded
/// phoneme count; pass UINT64_MAX for no cap. Returns NULL on error.
///
/// # Safety
/// `t` must be a live transcriber handle; `text` a NUL-terminated UTF-8
/// string.
#[no_mangle]
pub unsafe extern "C" fn fonema_transcribe(
    t: *const FonemaTranscriber,
    text: *const c_char,
    budget: u64,
) -> *mut c_char {
    let Some(handle) = t.as_ref() else {
        set_error("null transcriber handle".to_string());
        return ptr::null_mut();
    };
    let Ok(text) = utf8_in(text) else {
        return ptr::null_mut();
    };
    match handle.inner.transcribe_corpus(text, budget_from(budget)) {
        Ok(tr) => string_out(tr.to_wire()),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

#[derive(Serialize)]
struct AnalysisJson {
    words: usize,
    tokens: u64,
    expanded_phonemes: u64,
    frequencies_expanded_percent: BTreeMap<&'static str, f64>,
    gemination_rate_percent: BTreeMap<&'static str, f64>,
    class_percent: BTreeMap<&'static str, f64>,
    manner_percent: BTreeMap<&'static str, f64>,
}

/// Transcribe and analyze text; returns an analysis JSON document.
/// Returns NULL on error.
///
/// # Safety
/// Same contract as [`fonema_transcribe`].
#[no_mangle]
pub unsafe extern "C" fn fonema_analyze_json(
    t: *const FonemaTranscriber,
    text: *const c_char,
    budget: u64,
) -> *mut c_char {
    let Some(handle) = t.as_ref() else {
        set_error("null transcriber handle".to_string());
        return ptr::null_mut();
    };
    let Ok(text) = utf8_in(text) else {
        return ptr::null_mut();
    };
    let transcription = match handle.inner.transcribe_corpus(text, budget_from(budget)) {
        Ok(tr) => tr,
        Err(e) => {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    };
    match analyze(&transcription) {
        Ok(json) => string_out(json),
        Err(e) => {
            set_error(e);
            ptr::null_mut()
        }
    }
}

fn analyze(transcription: &Transcription) -> Result<String, String> {
    let tokens = transcription.tokens();
    let expanded = FrequencyTable::from_tokens(&tokens, CountingMode::Expanded)
        .map_err(|e| e.to_string())?;
    let stats = gemination_stats(&tokens).map_err(|e| e.to_string())?;
    let class = class_breakdown(&expanded).map_err(|e| e.to_string())?;
    let manner = manner_breakdown(&expanded).map_err(|e| e.to_string())?;

    let mut frequencies = BTreeMap::new();
    for p in Phoneme::ALL {
        frequencies.insert(p.arpabet(), expanded.frequency(p) * 100.0);
    }
    let mut rates = BTreeMap::new();
    for e in &stats.entries {
        if let Some(r) = e.rate {
            rates.insert(e.phoneme.arpabet(), r * 100.0);
        }
    }
    let doc = AnalysisJson {
        words: transcription.word_count(),
        tokens: transcription.token_count(),
        expanded_phonemes: transcription.expanded_count(),
        frequencies_expanded_percent: frequencies,
        gemination_rate_percent: rates,
        class_percent: BTreeMap::from([
            ("vowel", class.vowel * 100.0),
            ("glide", class.glide * 100.0),
            ("consonant", class.consonant * 100.0),
        ]),
        manner_percent: BTreeMap::from([
            ("stop", manner.stop * 100.0),
            ("fricative", manner.fricative * 100.0),
            ("affricate", manner.affricate * 100.0),
            ("nasal", manner.nasal * 100.0),
            ("liquid", manner.liquid * 100.0),
        ]),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ConvergenceJson {
    increment: u64,
    expanded_phonemes: u64,
    fit_a: f64,
    fit_b: f64,
    fit_r2: f64,
    fit_reliable: bool,
    stable_all_below_025pp: Option<u64>,
    stable_average_below_025pp: Option<u64>,
    average_points: Vec<(u64, f64)>,
}

/// Transcribe text and run the convergence analysis at the given increment
/// (expanded phoneme units per step). Returns NULL on error (including a
/// corpus shorter than two increments).
///
/// # Safety
/// Same contract as [`fonema_transcribe`].
#[no_mangle]
pub unsafe extern "C" fn fonema_converge_json(
    t: *const FonemaTranscriber,
    text: *const c_char,
    increment: u64,
) -> *mut c_char {
    let Some(handle) = t.as_ref() else {
        set_error("null transcriber handle".to_string());
        return ptr::null_mut();
    };
    let Ok(text) = utf8_in(text) else {
        return ptr::null_mut();
    };
    let transcription = match handle.inner.transcribe_corpus(text, Budget::All) {
        Ok(tr) => tr,
        Err(e) => {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    };
    let tokens = transcription.tokens();
    let series = match delta_series(&tokens, increment, CountingMode::TokenWise) {
        Ok(s) => s,
        Err(e) => {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    };
    let fit = match fit_power(&series.average_xy()) {
        Ok(f) => f,
        Err(e) => {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    };
    let doc = ConvergenceJson {
        increment,
        expanded_phonemes: transcription.expanded_count(),
        fit_a: fit.a,
        fit_b: fit.b,
        fit_r2: fit.r2,
        fit_reliable: fit.reliable,
        stable_all_below_025pp: stability_point(&series, 0.25, StabilityScope::AllCategories),
        stable_average_below_025pp: stability_point(&series, 0.25, StabilityScope::Average),
        average_points: series.average_points.iter().map(|p| (p.x, p.delta)).collect(),
    };
    match serde_json::to_string_pretty(&doc) {
        Ok(json) => string_out(json),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

#[derive(Serialize)]
struct HarmonizedJson {
    name: String,
    raw_total: f64,
    percents: BTreeMap<&'static str, f64>,
}

/// Harmonize a historical dataset (the `label<TAB>percent` file format)
/// onto the 30-phoneme inventory; returns a JSON document with the
/// renormalized percents. Returns NULL on error.
///
/// # Safety
/// `name` and `dataset_tsv` must be NUL-terminated UTF-8 strings.
#[no_mangle]
pub unsafe extern "C" fn fonema_harmonize_json(
    name: *const c_char,
    dataset_tsv: *const c_char,
) -> *mut c_char {
    let Ok(name) = utf8_in(name) else {
        return ptr::null_mut();
    };
    let Ok(text) = utf8_in(dataset_tsv) else {
        return ptr::null_mut();
    };
    let ds = match ExternalDataset::parse(name, text) {
        Ok(ds) => ds,
        Err(e) => {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    };
    let adjusted = match adjust_dataset(&ds) {
        Ok(a) => a,
        Err(e) => {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    };
    let mut percents = BTreeMap::new();
    for p in Phoneme::ALL {
        percents.insert(p.arpabet(), adjusted.percents.get(p));
    }
    let doc = HarmonizedJson {
        name: adjusted.name,
        raw_total: adjusted.raw_total,
        percents,
    };
    match serde_json::to_string_pretty(&doc) {
        Ok(json) => string_out(json),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Sample Pearson correlation between two equal-length vectors; writes the
/// coefficient to `out`.
///
/// # Safety
/// `x` and `y` must point to `len` readable f64 values; `out` to a
/// writable f64.
#[no_mangle]
pub unsafe extern "C" fn fonema_pearson(
    x: *const f64,
    y: *const f64,
    len: usize,
    out: *mut f64,
) -> FonemaStatus {
    if x.is_null() || y.is_null() || out.is_null() {
        set_error("null pointer argument".to_string());
        return FonemaStatus::NullPointer;
    }
    if len < 2 {
        set_error("need at least two observations".to_string());
        return FonemaStatus::InvalidArgument;
    }
    let xs = std::slice::from_raw_parts(x, len);
    let ys = std::slice::from_raw_parts(y, len);
    match fonema::harmonizer::pearson(xs, ys) {
        Ok(r) => {
            *out = r;
            FonemaStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            FonemaStatus::AnalysisFailed
        }
    }
}

/// The 30-phoneme inventory listing as JSON.
#[no_mangle]
pub extern "C" fn fonema_inventory_json() -> *mut c_char {
    string_out(fonema::report::inventory_json())
}
