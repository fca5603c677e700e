/* C interface to the miniomt optimizing SMT solver. All functions returning
 * miniomt_status set a thread-local message retrievable via
 * miniomt_last_error() on failure. Strings returned through char** are
 * heap-allocated; release them with miniomt_string_free(). */
#ifndef MINIOMT_H
#define MINIOMT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct miniomt_problem miniomt_problem;
typedef struct miniomt_result miniomt_result;

typedef enum {
    MINIOMT_OK = 0,
    MINIOMT_ERR_PARSE = 1,
    MINIOMT_ERR_INVALID_ARG = 2,
    MINIOMT_ERR_IO = 3,
    MINIOMT_ERR_UNSUPPORTED = 4,
    MINIOMT_ERR_INTERNAL = 5
} miniomt_status;

typedef enum {
    MINIOMT_OPTIMUM = 0,
    MINIOMT_UNSAT = 1,
    MINIOMT_TIMEOUT = 2,
    MINIOMT_UNBOUNDED = 3
} miniomt_outcome;

typedef struct {
    const char* reduction; /* "none" | "basic" | "guided"; NULL = "none" */
    const char* lia_mode;  /* NULL (problem default) | "full" | "truncated" */
    int block_lemma;       /* nonzero enables blocking-lemma learning */
    double timeout_s;      /* <= 0 means unlimited */
    uint64_t seed;
} miniomt_config;

/* Problems */
miniomt_status miniomt_parse(const char* text, const char* name, miniomt_problem** out);
miniomt_status miniomt_generate_sp(size_t n, uint64_t seed, int lira, miniomt_problem** out);
miniomt_status miniomt_problem_text(const miniomt_problem* p, char** out);
void miniomt_problem_free(miniomt_problem* p);

/* Solving */
miniomt_status miniomt_solve(const miniomt_problem* p, const miniomt_config* cfg,
                             miniomt_result** out);
miniomt_outcome miniomt_result_outcome(const miniomt_result* r);
/* Exact objective value ("p/q", an infinitesimal part is suffixed "d");
 * fails when the outcome carries no value. Maximization problems report the
 * maximized value. */
miniomt_status miniomt_result_value(const miniomt_result* r, char** out);
/* Best model as "name=p/q" lines; fails when no model exists. */
miniomt_status miniomt_result_model(const miniomt_result* r, char** out);
size_t miniomt_result_iterations(const miniomt_result* r);
miniomt_status miniomt_result_trace_csv(const miniomt_result* r, int include_time, char** out);
void miniomt_result_free(miniomt_result* r);

/* Brute-force reference optimum. box_spec: "lo:hi" for every variable or a
 * comma list "name=lo:hi,..."; NULL for no box (pure-rational problems only).
 * Bounds are exact rationals ("p/q" or decimals are not supported; integers
 * and fractions like -5 or 7/2 are). */
miniomt_status miniomt_oracle(const miniomt_problem* p, const char* box_spec, char** value_out,
                              miniomt_outcome* outcome_out);

/* Experiment harness: runs every instance x config of a suite file and
 * writes results.csv plus scatter pair files next to it. */
miniomt_status miniomt_run_suite(const char* suite_path, const char* out_csv);

const char* miniomt_last_error(void);
void miniomt_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* MINIOMT_H */
