#ifndef TRACKPOW_H_
#define TRACKPOW_H_

/*
 * C interface to libtrackpow. Objects are opaque handles released with the
 * matching *_free function. Every call returns a tp_status; on failure the
 * message is available from tp_last_error() on the calling thread until the
 * next failing call there.
 *
 * Reports carry a text rendering, a JSON rendering and an outcome:
 * 0 definite answer, 2 undecided or bound exceeded, 1 error.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TRACKPOW_BUILDING)
#    define TP_API __declspec(dllexport)
#  else
#    define TP_API __declspec(dllimport)
#  endif
#else
#  define TP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tp_status {
  TP_OK = 0,
  TP_ERR_PARSE = 1,
  TP_ERR_PRECONDITION = 2,
  TP_ERR_NOT_FOUND = 3,
  TP_ERR_LIMIT = 4,
  TP_ERR_CONVERGENCE = 5,
  TP_ERR_MISMATCH = 6,
  TP_ERR_NULL_ARGUMENT = 7,
  TP_ERR_INTERNAL = 8
} tp_status;

typedef struct tp_session tp_session;
typedef struct tp_report tp_report;

TP_API char const* tp_version(void);
TP_API char const* tp_status_string(tp_status status);
TP_API char const* tp_last_error(void);

/* Cap on the length of any word built by iteration; 0 restores the default. */
TP_API void tp_set_length_cap(size_t cap);
TP_API size_t tp_length_cap(void);

TP_API tp_status tp_session_load(char const* path, tp_session** out);
TP_API tp_status tp_session_parse(char const* text, char const* source_name, tp_session** out);
TP_API void tp_session_free(tp_session* session);
TP_API size_t tp_session_warning_count(tp_session const* session);
/* "source:line:column: message"; NULL when index is out of range. */
TP_API char const* tp_session_warning(tp_session const* session, size_t index);

TP_API char const* tp_report_text(tp_report const* report);
TP_API char const* tp_report_json(tp_report const* report);
TP_API char const* tp_report_trace(tp_report const* report);
TP_API int tp_report_outcome(tp_report const* report);
TP_API void tp_report_free(tp_report* report);

TP_API tp_status tp_dump(tp_session const* s, tp_report** out);
TP_API tp_status tp_classify(tp_session const* s, char const* name, tp_report** out);
TP_API tp_status tp_orbit(tp_session const* s, char const* name, char const* word, size_t depth,
                          tp_report** out);
TP_API tp_status tp_power_index(tp_session const* s, char const* name, char const* seed,
                                size_t depth, tp_report** out);
TP_API tp_status tp_pf(tp_session const* s, char const* name, tp_report** out);
TP_API tp_status tp_period(tp_session const* s, char const* name, char const* letter,
                           size_t bound, tp_report** out);
TP_API tp_status tp_red(tp_session const* s, char const* name, char const* word, size_t depth,
                        tp_report** out);
TP_API tp_status tp_audit_yellow(tp_session const* s, char const* name, char const* edge,
                                 size_t depth, tp_report** out);

/*
 * Elementary moves on a word over a, b, ... (rank letters). xi is "1",
 * "0.5" or "3/2". min_exponent 0 keeps the threshold derived from n and xi.
 * join NULL lists the moves; otherwise searches for a common descendant.
 */
TP_API tp_status tp_moves(char const* word, long n, char const* xi, size_t min_exponent,
                          char const* join, size_t budget, size_t rank, tp_report** out);

TP_API tp_status tp_burnside_order(tp_session const* s, char const* name, size_t rank,
                                   unsigned exponent, size_t max_k, tp_report** out);

/* Relators one per line over a, b, ...; csv nonzero renders the table. */
TP_API tp_status tp_todd_coxeter(char const* relators_text, size_t rank, int csv,
                                 size_t max_cosets, tp_report** out);

#ifdef __cplusplus
}
#endif

#endif /* TRACKPOW_H_ */
