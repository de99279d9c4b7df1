/* C interface to the fonema Italian phoneme toolkit.
* Strings returned by fonema_* functions are owned by the library
* and must be released with fonema_string_free(). */

#ifndef FONEMA_H
#define FONEMA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for fonema_* functions that do not return a pointer.
 */
typedef enum FonemaStatus {
  FonemaStatus_Ok = 0,
  FonemaStatus_NullPointer = 1,
  FonemaStatus_InvalidUtf8 = 2,
  FonemaStatus_InvalidArgument = 3,
  FonemaStatus_TranscriptionFailed = 4,
  FonemaStatus_AnalysisFailed = 5,
} FonemaStatus;

/**
 * Opaque transcriber handle.
 */
typedef struct FonemaTranscriber FonemaTranscriber;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message recorded on this thread, or NULL when none. Caller
 * frees with fonema_string_free().
 */
char *fonema_last_error_message(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned by a fonema_*
 * function, not yet freed.
 */
void fonema_string_free(char *s);

/**
 * New transcriber with the bundled lexicon and the default policy
 * (voiceless intervocalic s, rule fallback for unknown words).
 */
struct FonemaTranscriber *fonema_transcriber_new(void);

/**
 * New transcriber with policy switches and optional extra lexicon text
 * (the bundled lexicon is loaded first; entries in `lexicon_tsv`
 * override it). `lexicon_tsv` may be NULL. Returns NULL on parse failure.
 *
 * # Safety
 * `lexicon_tsv`, when non-null, must be a NUL-terminated UTF-8 string.
 */
struct FonemaTranscriber *fonema_transcriber_new_with(const char *lexicon_tsv,
                                                      bool voiced_intervocalic_s,
                                                      bool require_lexicon);

/**
 * Release a transcriber handle.
 *
 * # Safety
 * `t` must be NULL or a pointer previously returned by a constructor,
 * not yet freed.
 */
void fonema_transcriber_free(struct FonemaTranscriber *t);

/**
 * Transcribe text into the wire format (one line per word,
 * space-separated codes, geminates doubled). `budget` caps the expanded
 * phoneme count; pass UINT64_MAX for no cap. Returns NULL on error.
 *
 * # Safety
 * `t` must be a live transcriber handle; `text` a NUL-terminated UTF-8
 * string.
 */
char *fonema_transcribe(const struct FonemaTranscriber *t, const char *text, uint64_t budget);

/**
 * Transcribe and analyze text; returns an analysis JSON document.
 * Returns NULL on error.
 *
 * # Safety
 * Same contract as [`fonema_transcribe`].
 */
char *fonema_analyze_json(const struct FonemaTranscriber *t, const char *text, uint64_t budget);

/**
 * Transcribe text and run the convergence analysis at the given increment
 * (expanded phoneme units per step). Returns NULL on error (including a
 * corpus shorter than two increments).
 *
 * # Safety
 * Same contract as [`fonema_transcribe`].
 */
char *fonema_converge_json(const struct FonemaTranscriber *t, const char *text, uint64_t increment);

/**
 * Harmonize a historical dataset (the `label<TAB>percent` file format)
 * onto the 30-phoneme inventory; returns a JSON document with the
 * renormalized percents. Returns NULL on error.
 *
 * # Safety
 * `name` and `dataset_tsv` must be NUL-terminated UTF-8 strings.
 */
char *fonema_harmonize_json(const char *name, const char *dataset_tsv);

/**
 * Sample Pearson correlation between two equal-length vectors; writes the
 * coefficient to `out`.
 *
 * # Safety
 * `x` and `y` must point to `len` readable f64 values; `out` to a
 * writable f64.
 */
enum FonemaStatus fonema_pearson(const double *x, const double *y, uintptr_t len, double *out);

/**
 * The 30-phoneme inventory listing as JSON.
 */
char *fonema_inventory_json(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FONEMA_H */
