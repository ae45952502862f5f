/*
 * C API for the lipt library: linear-invariant property testing over F_2^n.
 *
 * Conventions:
 *   - Objects are opaque handles created/destroyed by this API.
 *   - Functions return lipt_status; 0 is success. On failure,
 *     lipt_last_error() describes the problem (thread-local).
 *   - Results are JSON strings allocated by the library; release them with
 *     lipt_string_free().
 *   - Rationals (eps, eta, ...) are passed as strings: "1/4", "0.25", "1".
 */

#ifndef LIPT_H
#define LIPT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lipt_status {
    LIPT_OK = 0,
    LIPT_ERR_USAGE = 1,  /* bad arguments / misuse of the API */
    LIPT_ERR_INPUT = 2,  /* malformed or degenerate input data */
    LIPT_ERR_BUDGET = 3, /* an enumeration or size budget was exceeded */
    LIPT_ERR_INTERNAL = 4
} lipt_status;

typedef struct lipt_function lipt_function; /* Boolean function on F_2^n */
typedef struct lipt_family lipt_family;     /* family of forbidden systems */

const char* lipt_version(void);
const char* lipt_last_error(void);
void lipt_string_free(char* s);
void lipt_set_threads(int n);

/* ---- construction ---- */

/* source: const0 | const1 | bent | hyperplane:<bits> | random:<seed>:<dens>
 *         | anf:<expr> | table:<path> */
lipt_function* lipt_function_create(const char* source, int n);
/* full truth-table text: "n=<int>\n<hex>\n" */
lipt_function* lipt_function_from_table_text(const char* text);
lipt_status lipt_function_table_text(const lipt_function* f, char** out);
int lipt_function_dim(const lipt_function* f);
void lipt_function_free(lipt_function* f);

/* text: {"rows":[...],"sigma":...} | {"systems":[...],"generators":[...]}
 *       | shorthand "rm:<d>" */
lipt_family* lipt_family_create(const char* text);
void lipt_family_free(lipt_family* fam);

/* Validates a single system; *out describes normalization, reductions and
 * degeneracies. Returns LIPT_ERR_INPUT when the system is degenerate. */
lipt_status lipt_validate_system(const char* system_json, char** out);

/* ---- operations (JSON results) ---- */

lipt_status lipt_analyze(const lipt_function* f, const char* eps, char** out);
lipt_status lipt_count(const lipt_function* f, const char* system_json, char** out);
lipt_status lipt_freeness(const lipt_function* f, const lipt_family* fam, char** out);
lipt_status lipt_distance(const lipt_function* f, const lipt_family* fam, char** out);

/* mode: 0 = uniform random subspace, 1 = span of d random points */
lipt_status lipt_test(const lipt_function* f, const lipt_family* fam, const char* eps,
                      int d, int trials, int cutoff, uint64_t seed, int mode, char** out);
lipt_status lipt_estimate(const lipt_function* f, const lipt_family* fam, int d,
                          int trials, uint64_t seed, char** out);

lipt_status lipt_regularize_green(const lipt_function* f, const char* eps, int max_order,
                                  char** out);
/* E(r) = eps0 / (r + 1); stops when the index gap drops below E(0)^4/2 */
lipt_status lipt_regularize_functional(const lipt_function* f, int m, const char* eps0,
                                       int max_order, int max_rounds, char** out);

lipt_status lipt_complexity(const char* system_json, char** out);

lipt_status lipt_turan(int n, int d, char** out);
/* set_source: any function source; its support is the colored set */
lipt_status lipt_ramsey_find(const char* set_source, int n, int d, char** out);
lipt_status lipt_ramsey_min_n(int d, char** out);
lipt_status lipt_affine_ramsey_bound(int d, char** out);

lipt_status lipt_rm_family(int d, char** out);
/* prop: "constant" | "rm1" | "rm2" */
lipt_status lipt_obstructions(const char* prop, int max_d, char** out);

#ifdef __cplusplus
}
#endif

#endif /* LIPT_H */
