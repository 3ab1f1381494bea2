/* C interface to the rinehart engine. Handles are opaque; every call that can
 * fail returns an rh_status and leaves a message for rh_last_error. */
#ifndef RINEHART_H
#define RINEHART_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rh_algebra rh_algebra;

typedef enum {
  RH_OK = 0,
  RH_ERR_ARGUMENT = 1, /* null pointer, unknown command, suite or flag value */
  RH_ERR_PARSE = 2,    /* malformed presentation or polynomial; axioms are left to "check" */
  RH_ERR_CAP = 3,      /* a cap was exhausted */
  RH_ERR_IO = 4,
  RH_ERR_INTERNAL = 5
} rh_status;

/* Verdict written by rh_run. */
enum { RH_PASS = 0, RH_FAIL = 1 };

rh_status rh_algebra_from_json(const char* text, rh_algebra** out);
rh_status rh_algebra_from_file(const char* path, rh_algebra** out);
/* weyl:N, lie:sl2, lie:abelian:N, semidirect:sl2, arrangement:3, arrangement:4,
 * arrangement:<form>;<form>;... */
rh_status rh_algebra_builtin(const char* name, rh_algebra** out);
rh_status rh_algebra_to_json(const rh_algebra* a, char** out);
void rh_algebra_free(rh_algebra* a);

/* command: check | poisson-cohomology | poisson-homology | cyclic | center | ce |
 * "verify <suite>" | "verify all". options_json may be NULL or "{}"; keys are
 * max_weight, max_degree, u_cap, filtration_cap, samples, seed, out, timing.
 * On RH_OK, *report holds the rendered report and *verdict RH_PASS or RH_FAIL. */
rh_status rh_run(const rh_algebra* a, const char* command, const char* options_json, char** report,
                 int* verdict);

void rh_string_free(char* s);

/* Message of the last failed call on this thread; empty after a success. */
const char* rh_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
