#ifndef ROUGHKIT_CAPI_H
#define ROUGHKIT_CAPI_H

/* C interface to the rough-path toolkit. All entry points trap exceptions
 * and report through return codes; the message for the most recent failure
 * on the calling thread is available via rk_last_error(). Handles are
 * opaque and must be released with their matching _free function. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rk_path rk_path;         /* sampled path on a time grid */
typedef struct rk_rough rk_rough;       /* path plus second-level increments */
typedef struct rk_field rk_field;       /* drift + diffusion pair */
typedef struct rk_solution rk_solution; /* solver output */

enum {
  RK_OK = 0,
  RK_ERR_INVALID_ARGUMENT = 1,
  RK_ERR_INDEX_OUT_OF_RANGE = 2,
  RK_ERR_DIMENSION_MISMATCH = 3,
  RK_ERR_IO = 4,
  RK_ERR_CHEN_VIOLATION = 5,
  RK_ERR_NUMERICAL = 6,
  RK_ERR_SINGULAR_JACOBIAN = 7,
  RK_ERR_RESOURCE_LIMIT = 8,
  RK_ERR_INTERNAL = 99
};

/* Message for the last failed call on this thread; never NULL. */
const char* rk_last_error(void);

/* ---- paths ---- */
rk_path* rk_path_load_csv(const char* file);
rk_path* rk_path_fbm(double hurst, double horizon, int n,
                     unsigned long long seed, int dim);
int rk_path_save_csv(const rk_path* p, const char* file);
int rk_path_points(const rk_path* p);
int rk_path_dim(const rk_path* p);
/* values laid out row-major, points x dim; out must hold points*dim. */
int rk_path_values(const rk_path* p, double* out);
void rk_path_free(rk_path* p);

/* ---- rough paths ---- */
rk_rough* rk_rough_lift(const rk_path* p, double alpha);
rk_rough* rk_rough_load(const char* stem);
int rk_rough_save(const rk_rough* r, const char* stem);
double rk_rough_pvar_norm(const rk_rough* r);
double rk_rough_holder_norm(const rk_rough* r);
/* greedy partition count at threshold gamma; overshoot (may be NULL) is set
 * to 1 when a single grid step already exceeded gamma. Negative on error. */
int rk_rough_greedy_count(const rk_rough* r, double gamma, int* overshoot);
double rk_rough_count_bound(const rk_rough* r, double gamma);
void rk_rough_free(rk_rough* r);

/* ---- fields ---- */
rk_field* rk_field_from_json(const char* json_text);
int rk_field_state_dim(const rk_field* f);
int rk_field_driver_dim(const rk_field* f);
void rk_field_free(rk_field* f);

/* ---- solving ---- */
/* scheme: "davie", "linear", "ds" or "backward". y0 has length d. */
rk_solution* rk_solve(const rk_rough* r, const rk_field* f, const double* y0,
                      int d, const char* scheme);
int rk_solution_points(const rk_solution* s);
int rk_solution_dim(const rk_solution* s);
int rk_solution_values(const rk_solution* s, double* out);
int rk_solution_save_csv(const rk_solution* s, const char* file);
void rk_solution_free(rk_solution* s);

/* ---- command runner ---- */
/* Executes one JSON-described command (same schema the CLI uses) and writes
 * its artifacts. Returns the process exit code (0 ok, 1 input error,
 * 2 bound-audit failure). When summary_out is non-NULL it receives a
 * malloc'd summary or error line; release it with rk_string_free. */
int rk_run_json(const char* config_json, char** summary_out);
void rk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ROUGHKIT_CAPI_H */
