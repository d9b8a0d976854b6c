/*
 * hmec: hybrid message-embedded chaotic cipher, C interface.
 *
 * All objects are opaque handles owned by the caller and released with the matching
 * *_free function. Every fallible call returns an hmec_status; on failure a message for the
 * calling thread is available from hmec_last_error(). Buffers returned through hmec_buffer
 * are allocated by the library and released with hmec_buffer_free().
 */
#ifndef HMEC_H
#define HMEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HMEC_BUILDING_LIBRARY)
#    define HMEC_API __declspec(dllexport)
#  else
#    define HMEC_API __declspec(dllimport)
#  endif
#else
#  define HMEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Stable values; the command-line tool uses them as exit codes. */
typedef enum hmec_status {
  HMEC_OK = 0,
  HMEC_E_INVALID_ARGUMENT = 1,
  HMEC_E_KEY_PARSE = 2,
  HMEC_E_IO = 3,
  HMEC_E_NON_ASCII = 4,
  HMEC_E_MALFORMED = 5,
  HMEC_E_NON_INVERTIBLE_KEY = 6,
  HMEC_E_OUT_OF_REGION = 7,
  HMEC_E_UNKNOWN_TEST = 8,
  HMEC_E_EMPTY_CORPUS = 9,
  HMEC_E_INTERNAL = 10
} hmec_status;

typedef enum hmec_mode { HMEC_MODE_STRICT = 0, HMEC_MODE_LENIENT = 1 } hmec_mode;

typedef struct hmec_buffer {
  uint8_t* data;
  size_t size;
} hmec_buffer;

typedef struct hmec_key hmec_key;
typedef struct hmec_analysis hmec_analysis;

HMEC_API const char* hmec_version(void);
HMEC_API const char* hmec_status_name(hmec_status status);
/* Message of the last failed call on this thread; empty string if none. */
HMEC_API const char* hmec_last_error(void);
HMEC_API void hmec_buffer_free(hmec_buffer* buffer);

/* ---- keys ---- */

HMEC_API hmec_status hmec_key_parse(const char* text, size_t length, hmec_key** out);
HMEC_API hmec_status hmec_key_load(const char* path, hmec_key** out);
HMEC_API hmec_status hmec_key_generate(uint64_t seed, hmec_mode mode, hmec_key** out);
HMEC_API hmec_status hmec_key_serialize(const hmec_key* key, hmec_buffer* out);
HMEC_API hmec_status hmec_key_save(const hmec_key* key, const char* path);
/* Copy of key with r shifted by delta_r on the 1e-9 grid. */
HMEC_API hmec_status hmec_key_shift_r(const hmec_key* key, double delta_r, hmec_key** out);
HMEC_API hmec_status hmec_key_set_mode(hmec_key* key, hmec_mode mode);
HMEC_API hmec_mode hmec_key_mode(const hmec_key* key);
HMEC_API double hmec_key_r(const hmec_key* key);
HMEC_API void hmec_key_free(hmec_key* key);

/* ---- whole-message encryption into / out of the binary container ---- */

HMEC_API hmec_status hmec_encrypt(const hmec_key* key, const uint8_t* plaintext, size_t length,
                                  hmec_buffer* container);
/* The container's own mode is used; the key's mode is ignored. */
HMEC_API hmec_status hmec_decrypt(const hmec_key* key, const uint8_t* container, size_t length,
                                  hmec_buffer* plaintext);
HMEC_API hmec_status hmec_encrypt_file(const hmec_key* key, const char* in_path,
                                       const char* out_path);
HMEC_API hmec_status hmec_decrypt_file(const hmec_key* key, const char* in_path,
                                       const char* out_path);

/* ---- cryptanalysis ---- */

HMEC_API hmec_status hmec_analysis_create(const hmec_key* key, hmec_analysis** out);
HMEC_API hmec_status hmec_analysis_add_text(hmec_analysis* analysis, const char* name,
                                            const uint8_t* data, size_t length);
/* Twenty generated 256-octet ASCII texts. */
HMEC_API hmec_status hmec_analysis_add_default_corpus(hmec_analysis* analysis, uint64_t seed);
HMEC_API size_t hmec_analysis_text_count(const hmec_analysis* analysis);
/* Comma-separated subset of sensitivity,keysens,identifiability,kpa,keyspace or "all". */
HMEC_API hmec_status hmec_analysis_set_tests(hmec_analysis* analysis, const char* tests);
HMEC_API hmec_status hmec_analysis_set_grid(hmec_analysis* analysis, double r_min, double r_max,
                                            double step);
HMEC_API hmec_status hmec_analysis_set_seed(hmec_analysis* analysis, uint64_t seed);
/* Writes the `test,subject,metric,value` report. */
HMEC_API hmec_status hmec_analysis_run(hmec_analysis* analysis, hmec_buffer* report_csv);
/* `rank,r,matched_bytes` for corpus text `index` of the last run that included kpa. */
HMEC_API hmec_status hmec_analysis_attack_csv(const hmec_analysis* analysis, size_t index,
                                              hmec_buffer* out);
HMEC_API const char* hmec_analysis_text_name(const hmec_analysis* analysis, size_t index);
HMEC_API void hmec_analysis_free(hmec_analysis* analysis);

/* ---- logistic orbit export (`k,x` CSV) ---- */

/* r must lie in [3.57, 4] unless allow_any_region is nonzero, which admits (0, 4]. */
HMEC_API hmec_status hmec_orbit_csv(double r, double x0, uint64_t n, int allow_any_region,
                                    hmec_buffer* out);

#ifdef __cplusplus
}
#endif

#endif /* HMEC_H */
