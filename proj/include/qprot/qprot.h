#ifndef QPROT_QPROT_H
#define QPROT_QPROT_H

/* Static protection analysis for value-passing quality calculus processes.
 *
 * All functions returning qprot_status leave a message retrievable with
 * qprot_last_error() on failure (thread-local, valid until the next call on
 * the same thread).
 *
 * Functions producing text follow one buffer protocol: the result, including
 * the terminating NUL, is copied into buf when cap is large enough; *needed
 * always receives the required size. buf may be NULL when cap is 0, which
 * turns the call into a size query returning QPROT_ERR_INSUFFICIENT_BUFFER.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QPROT_API __declspec(dllexport)
#else
#define QPROT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qprot_status {
  QPROT_OK = 0,
  QPROT_ERR_NULL_POINTER = 1,
  QPROT_ERR_PARSE = 2,
  QPROT_ERR_VALIDATION = 3,
  QPROT_ERR_UNKNOWN_LABEL = 4,
  QPROT_ERR_UNSATISFIABLE = 5,
  QPROT_ERR_CONFIG = 6,
  QPROT_ERR_INSUFFICIENT_BUFFER = 7,
  QPROT_ERR_INVALID_ARGUMENT = 8,
  QPROT_ERR_EXCEPTION = 9
} qprot_status;

typedef enum qprot_format { QPROT_FORMAT_JSON = 0, QPROT_FORMAT_TEXT = 1 } qprot_format;

typedef struct qprot_process qprot_process;
typedef struct qprot_costs qprot_costs;
typedef struct qprot_levels qprot_levels;
typedef struct qprot_security qprot_security;

QPROT_API const char* qprot_version(void);
QPROT_API const char* qprot_status_name(qprot_status s);
QPROT_API const char* qprot_last_error(void);

/* Processes. Parsing validates; syntax errors report "line:column: msg". */
QPROT_API qprot_status qprot_process_parse(const char* text, qprot_process** out);
QPROT_API void qprot_process_free(qprot_process* p);
/* Canonical form, labels and names. */
QPROT_API qprot_status qprot_process_describe(const qprot_process* p, qprot_format fmt, char* buf, size_t cap,
                                              size_t* needed);

/* Cost maps. lattice_text selects a symbolic cost lattice; NULL means
 * non-negative rationals under addition. */
QPROT_API qprot_status qprot_costs_load(const char* cost_text, const char* lattice_text, qprot_costs** out);
QPROT_API void qprot_costs_free(qprot_costs* c);

/* Level maps over the cost structure of costs. security_lattice_text may be
 * NULL, in which case the levels form a chain in order of appearance. */
QPROT_API qprot_status qprot_levels_load(const char* level_text, const qprot_costs* costs,
                                         const char* security_lattice_text, qprot_levels** out);
QPROT_API void qprot_levels_free(qprot_levels* l);

/* Required security level per label, over the lattice of levels. */
QPROT_API qprot_status qprot_security_load(const char* text, const qprot_levels* levels, qprot_security** out);
QPROT_API void qprot_security_free(qprot_security* s);

/* Attacks reaching label. An unreachable label is reported in the result
 * ("reachable": false), not as an error. */
QPROT_API qprot_status qprot_discover(const qprot_process* p, uint32_t label, qprot_format fmt, char* buf,
                                      size_t cap, size_t* needed);

/* Cost-minimal attacks reaching label. */
QPROT_API qprot_status qprot_quantify(const qprot_process* p, uint32_t label, const qprot_costs* costs,
                                      qprot_format fmt, char* buf, size_t cap, size_t* needed);

/* Inversion-of-protection report for the given labels. */
QPROT_API qprot_status qprot_check(const qprot_process* p, const uint32_t* labels, size_t n_labels,
                                   const qprot_costs* costs, const qprot_levels* levels,
                                   const qprot_security* security, qprot_format fmt, char* buf, size_t cap,
                                   size_t* needed);

/* Attack-tree denotation of label. With via_constraints non-zero the minimal
 * models of the denotation are also computed under costs (unit costs when
 * costs is NULL). */
QPROT_API qprot_status qprot_tree(const qprot_process* p, uint32_t label, int via_constraints,
                                  const qprot_costs* costs, qprot_format fmt, char* buf, size_t cap,
                                  size_t* needed);

/* DOT rendering of the attack tree of label. */
QPROT_API qprot_status qprot_tree_dot(const qprot_process* p, uint32_t label, const char* title, char* buf,
                                      size_t cap, size_t* needed);

/* Bounded simulation against an attacker knowing the given channels, checked
 * against the analysed attacks. */
QPROT_API qprot_status qprot_simulate(const qprot_process* p, uint32_t label, const char* const* knowledge,
                                      size_t n_knowledge, uint32_t depth, uint32_t unfold, qprot_format fmt,
                                      char* buf, size_t cap, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif
