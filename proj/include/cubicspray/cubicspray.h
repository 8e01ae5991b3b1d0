#ifndef CUBICSPRAY_H
#define CUBICSPRAY_H

/*
 * C interface to libcubicspray. Every call returns a status code equal to the
 * command-line exit code; JSON results are returned as heap strings released
 * with cs_string_free. The message for the last failure on the calling thread
 * is available from cs_last_error.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_VERIFICATION_FAILED = 1,
  CS_INPUT = 2,
  CS_INDETERMINATE = 3,
  CS_SOLVER = 4,
  CS_RESAMPLE_EXHAUSTED = 5,
  CS_RANK_DEFICIENT = 6,
  CS_INTERNAL = 7
} cs_status;

typedef enum cs_backend { CS_BACKEND_AUTO = 0, CS_BACKEND_RATIONAL = 1, CS_BACKEND_COMPLEX = 2 } cs_backend;

typedef struct cs_options {
  double tol_membership;
  double tol_rank;
  double cluster_radius;
  int retries;
  uint64_t seed;
  cs_backend backend;
  int trials;
  int spanning; /* lines: report n spanning lines instead of the full set (any n) */
  unsigned threads; /* suites: 0 uses every hardware thread */
} cs_options;

/* Opaque handle to a parsed cubic form. */
typedef struct cs_cubic cs_cubic;

void cs_options_init(cs_options* opts);
const char* cs_version(void);
const char* cs_last_error(void);
void cs_string_free(char* s);

/* Parses the cubic JSON document {"dim": n, "coeffs": [...]}. */
int cs_cubic_from_json(const char* text, cs_cubic** out);
int cs_cubic_fermat(int dim, cs_cubic** out);
void cs_cubic_free(cs_cubic* cubic);
int cs_cubic_dim(const cs_cubic* cubic);
/* Normalised JSON form of the cubic. */
int cs_cubic_to_json(const cs_cubic* cubic, char** out_json);

/* Points are JSON arrays or colon/comma separated rationals, e.g. "(1:-1:0:0:0)". */
int cs_tau(const cs_cubic* cubic, const char* u, const char* x, const cs_options* opts, char** out_json);
int cs_lines(const cs_cubic* cubic, const char* x, const cs_options* opts, char** out_json);

/* Writes the certificate even on CS_RANK_DEFICIENT (a counterexample candidate). */
int cs_certify(const cs_cubic* cubic, const char* y, const cs_options* opts, char** out_json);
/* Recomputes a certificate from scratch; CS_VERIFICATION_FAILED lists the reasons. */
int cs_verify(const char* certificate_json, const cs_options* opts, char** out_json);

/* Runs a suite on one cubic, or on a generated corpus when corpus_spec is
   non-null ({"count": k, "dim": n, "coeff_bound": b, "seed": s}). */
int cs_suite(const cs_cubic* cubic, const char* corpus_spec, const char* suite, const cs_options* opts,
             char** out_json);
/* The generated corpus as a JSON array of cubic documents with base points. */
int cs_corpus(const char* corpus_spec, const cs_options* opts, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
