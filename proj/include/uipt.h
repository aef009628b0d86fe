#ifndef UIPT_H
#define UIPT_H

/* C interface to the UIPT peeling laboratory: exact peeling laws, the
 * boundary-size chain, triangulation growth (full mesh or skeleton), free
 * and marked free triangulation samplers, site percolation, and the
 * statistical helpers the experiments use.
 *
 * Conventions:
 *  - every function returns a status code (uipt_status); outputs go through
 *    pointers. uipt_last_error() describes the most recent failure in the
 *    calling thread.
 *  - randomness is named by a (seed, stream) pair; replica r of a run uses
 *    stream base_stream + r. Identical inputs give identical outputs.
 *  - strings returned through char** are heap-allocated; release them with
 *    uipt_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UIPT_API __declspec(dllexport)
#else
#define UIPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uipt_status {
    UIPT_OK = 0,
    UIPT_EINVAL = 1,   /* invalid argument / precondition violation */
    UIPT_EBUDGET = 2,  /* step budget exhausted before completion */
    UIPT_EIO = 3,      /* file I/O failure */
    UIPT_EINTERNAL = 4 /* internal invariant violation */
} uipt_status;

UIPT_API const char* uipt_strerror(int status);
UIPT_API const char* uipt_last_error(void);
UIPT_API void uipt_string_free(char* s);

/* ---- exact scalar laws (numerator/denominator as decimal strings) ---- */

UIPT_API int uipt_phi(long n, long m, char** num, char** den);
UIPT_API int uipt_partition_z(long m, char** num, char** den);
UIPT_API int uipt_partition_z_theta(long m, long theta_num, long theta_den, char** num, char** den);
UIPT_API int uipt_partition_ztilde(long m, char** num, char** den);
UIPT_API int uipt_expected_step(long m, char** num, char** den);
UIPT_API int uipt_hitting_prob(long n, long m, char** num, char** den);
UIPT_API int uipt_expected_visits(long n, char** num, char** den);
UIPT_API int uipt_free_size_mean(long m, char** num, char** den);
UIPT_API int uipt_stable_half_tail(double t, double* out);

/* ---- law tables -------------------------------------------------------
 * Row indexing:
 *   step law:        index +1 is the up step, -k the down steps, k = 1..m.
 *   marked step law: index 0 new unmarked, 1 new marked, -k splits.
 *   free peel law:   index 0 new vertex, i in 1..m the split at x_i,
 *                    -1 the terminal 2-gon gluing (m = 0 only).
 *   free size law:   index n is P(|T| = n), n = 0..n_max; one extra row
 *                    with index -1 holds the tail mass beyond n_max.
 */

typedef struct uipt_law uipt_law;

UIPT_API int uipt_step_law_new(long m, uipt_law** out);
UIPT_API int uipt_marked_step_law_new(long m, uipt_law** out);
UIPT_API int uipt_free_peel_law_new(long m, uipt_law** out);
UIPT_API int uipt_free_size_law_new(long m, long n_max, uipt_law** out);
UIPT_API long uipt_law_rows(const uipt_law* law);
UIPT_API int uipt_law_row(const uipt_law* law, long row, long* index, char** num, char** den, double* decimal);
UIPT_API void uipt_law_free(uipt_law* law);

/* ---- samplers --------------------------------------------------------- */

/* count boundary-chain steps at fixed m; out[i] is +1 or -k. */
UIPT_API int uipt_sample_steps(long m, long count, uint64_t seed, uint64_t stream, long* out);
/* internal-vertex counts of free triangulations of an (m+2)-gon. */
UIPT_API int uipt_sample_free_sizes(long m, long count, uint64_t seed, uint64_t stream, long n_star, int64_t* out);
/* internal-vertex counts under the vertex-marked law. */
UIPT_API int uipt_sample_marked_sizes(long m, long count, uint64_t seed, uint64_t stream, long n_star, int64_t* out);

/* ---- boundary chain --------------------------------------------------- */

typedef struct uipt_chain_result uipt_chain_result;

UIPT_API int uipt_chain_run(long m0, uint64_t horizon, const long* targets, long n_targets,
                            const uint64_t* checkpoints, long n_checkpoints, int track_vt, uint64_t seed,
                            uint64_t stream, uipt_chain_result** out);
UIPT_API int uipt_chain_checkpoint_m(const uipt_chain_result* r, long i, long* m);
UIPT_API int uipt_chain_vt(const uipt_chain_result* r, long i, double* vt2, double* vt3);
UIPT_API int uipt_chain_hit(const uipt_chain_result* r, long i, int* hit);
UIPT_API int uipt_chain_summary(const uipt_chain_result* r, uint64_t* absorbed_at, uint64_t* steps_run,
                                long* final_m, long* max_m);
UIPT_API void uipt_chain_free(uipt_chain_result* r);

/* Fitted slope of log M_t against log t, averaged over replicas. */
UIPT_API int uipt_growth_exponent_probe(uint64_t horizon, long replicas, uint64_t seed, uint64_t stream,
                                        int threads, double* slope, double* spread, long* degenerate);

/* Slopes of log V_T(2) and log V_T(3) against log T along chain runs. */
UIPT_API int uipt_heavy_tail_probe(uint64_t horizon, long replicas, uint64_t seed, uint64_t stream, int threads,
                                   double* slope_vt2, double* spread_vt2, double* slope_vt3, double* spread_vt3);

/* ---- growth ------------------------------------------------------------ */

typedef struct uipt_growth uipt_growth;

#define UIPT_MODE_SKELETON 0
#define UIPT_MODE_FULL 1

UIPT_API int uipt_grow(long r_max, int mode, uint64_t seed, uint64_t stream, int64_t budget, long n_star,
                       uipt_growth** out);
UIPT_API long uipt_growth_layers(const uipt_growth* g);
UIPT_API int uipt_growth_layer(const uipt_growth* g, long i, long* r, uint64_t* t_r, long* m, uint64_t* hull,
                               uint64_t* ball, double* vt2, double* vt3);
UIPT_API int uipt_growth_summary(const uipt_growth* g, uint64_t* total_steps, uint64_t* hull_volume,
                                 int* completed, int* budget_exceeded);
/* Full mode only. validate returns UIPT_EINTERNAL with the violation in
 * uipt_last_error() when the mesh audit fails. */
UIPT_API int uipt_growth_validate(const uipt_growth* g);
UIPT_API int uipt_growth_export_mesh(const uipt_growth* g, const char* edge_path, const char* vertex_csv_path);
UIPT_API void uipt_growth_free(uipt_growth* g);

/* ---- percolation ------------------------------------------------------- */

#define UIPT_ENGINE_REDUCED 0
#define UIPT_ENGINE_FULL 1

UIPT_API int uipt_perc_run(int engine, double p, uint64_t horizon, uint64_t seed, uint64_t stream, int* died,
                           uint64_t* death_step, uint64_t* max_b);
UIPT_API int uipt_perc_survival(int engine, double p, uint64_t horizon, uint64_t replicas, uint64_t seed,
                                uint64_t stream, int threads, double* fraction, double* ci_lo, double* ci_hi);

/* ---- statistics -------------------------------------------------------- */

UIPT_API int uipt_fit_loglog(const double* x, const double* y, long n, double* slope, double* intercept,
                             double* stderr_slope);
UIPT_API int uipt_chi_square_pvalue(double stat, long dof, double* p);
UIPT_API int uipt_ks_pvalue(double d, double n_effective, double* p);

/* Chi-square of `draws` boundary-chain steps at m against the exact law,
 * down steps of size >= tail_from bucketed together. */
UIPT_API int uipt_gof_step_law(long m, uint64_t draws, long tail_from, double significance, uint64_t seed,
                               uint64_t stream, double* stat, long* dof, double* p_value, int* pass);
/* Chi-square of free-triangulation sizes at m (full peeling sampler)
 * against the exact size law with cells 0..n_cells-1 plus a tail cell. */
UIPT_API int uipt_gof_free_size(long m, uint64_t draws, long n_cells, double significance, uint64_t seed,
                                uint64_t stream, double* stat, long* dof, double* p_value, int* pass);
/* One-sample KS distance of |T|/m^2 under the marked sampler against the
 * stable-1/2 limit tail. */
UIPT_API int uipt_gof_stable_limit(long m, uint64_t replicas, uint64_t seed, uint64_t stream, int threads,
                                   double* ks_distance);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* UIPT_H */
