#ifndef WEYLGEO_C_H
#define WEYLGEO_C_H

/*
 * C API of the weylgeo shared library.
 *
 * The C++ core stays behind opaque handles; every call returns a wg_status
 * and writes results through out-parameters. Functions never throw across
 * this boundary; on failure, wg_last_error() returns a message for the
 * calling thread. Strings returned as char* are heap-allocated and must be
 * released with wg_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wg_status {
    WG_OK = 0,
    WG_ERR_ARGUMENT = 1,
    WG_ERR_DOMAIN = 2,
    WG_ERR_SINGULAR_METRIC = 3,
    WG_ERR_IO = 4,
    WG_ERR_INTEGRATION = 5,
    WG_ERR_UNKNOWN_SUITE = 6,
    WG_ERR_INTERNAL = 7
} wg_status;

typedef struct wg_model wg_model;
typedef struct wg_report wg_report;

typedef struct wg_suite_config {
    double radius;      /* sphere radius */
    double h;           /* field derivative step */
    double dt;          /* geodesic integrator step */
    int steps;          /* geodesic steps */
    int grid;           /* residual sample grid (grid x grid) */
    uint64_t seed;      /* RNG seed (SplitMix64) */
    double tol;         /* projective-equivalence tolerance */
    int resolution;     /* quadrature mesh resolution */
    int n_psi;          /* SL(3) draws */
    int n_geodesics;    /* geodesics per draw */
    int n_alpha;        /* pure-trace shift draws */
} wg_suite_config;

const char* wg_version(void);

/* thread-local message describing the most recent failure */
const char* wg_last_error(void);

void wg_suite_config_defaults(wg_suite_config* config);

/* ---- models ---- */

/* name: "sphere", "torus" or "plane"; radius applies to the sphere */
wg_status wg_model_create(const char* name, double radius, wg_model** out);
void wg_model_destroy(wg_model* model);

int wg_model_euler_characteristic(const wg_model* model);

/* quadrature mesh dump, columns chart,u,v,weight */
wg_status wg_model_mesh_csv(const wg_model* model, int resolution, const char* path);

/* ---- verification suites ---- */

/* suite: structure | projective | beltrami | degree | uniqueness | jets | all.
 * model_name selects the sphere radius via config->radius; other models use
 * their fixed charts. config may be NULL for defaults. */
wg_status wg_run_suite(const char* suite, const wg_suite_config* config, wg_report** out);

int wg_report_passed(const wg_report* report);
int wg_report_check_count(const wg_report* report);
wg_status wg_report_check_name(const wg_report* report, int index, char* buffer,
                               size_t buffer_len);
wg_status wg_report_check_values(const wg_report* report, int index, double* residual,
                                 double* tolerance, int* passed);

/* format: "json" or "csv"; include_runtime = 0 gives byte-reproducible files */
wg_status wg_report_write(const wg_report* report, const char* path, const char* format,
                          int include_runtime);
char* wg_report_to_json(const wg_report* report, int include_runtime);
char* wg_report_to_csv(const wg_report* report, int include_runtime);
void wg_report_destroy(wg_report* report);

wg_status wg_report_load_json(const char* path, wg_report** out);

void wg_string_free(char* s);

/* ---- geodesic and field exports ---- */

/* ics: n quadruples (u, v, du, dv); metric_spec as documented in the README
 * ("round", "flat", "second", "beltrami:a,b,c", "beltrami:<9 entries>") */
wg_status wg_geodesics_csv(const char* model_name, double radius, const char* metric_spec,
                           const double* ics, int n, int steps, double dt, const char* path);

/* flatness coefficients W1/W2 of (metric, beta = 0) on an n x n grid */
wg_status wg_w_grid_csv(const char* model_name, double radius, const char* metric_spec, int n,
                        const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WEYLGEO_C_H */
