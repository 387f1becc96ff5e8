/* wormlab C API.  All functions return a wl_status; on failure
 * wl_last_error() describes the problem (per thread).  Strings handed out
 * through char** parameters are released with wl_string_free. */
#ifndef WORMLAB_H
#define WORMLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(WORMLAB_BUILDING_LIBRARY)
#define WL_API __attribute__((visibility("default")))
#else
#define WL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  WL_OK = 0,
  WL_ERR_INVALID_ARGUMENT = 1,
  WL_ERR_OUT_OF_RANGE = 2,
  WL_ERR_NUMERIC = 3,
  WL_ERR_IO = 4,
  WL_ERR_INTERNAL = 5
} wl_status;

typedef enum { WL_NORM_PAULI = 0, WL_NORM_SYK = 1 } wl_majorana_norm;
typedef enum { WL_TFD_HALF = 0, WL_TFD_PAPER_LITERAL = 1 } wl_tfd_convention;
typedef enum { WL_NOISE_NONE = 0, WL_NOISE_DEPOLARIZING = 1, WL_NOISE_COHERENT = 2 } wl_noise_kind;

typedef struct wl_hamiltonian wl_hamiltonian;
typedef struct wl_table wl_table;

WL_API const char* wl_version(void);
WL_API const char* wl_last_error(void);
WL_API void wl_string_free(char* s);

/* ---- models ---- */

/* JSON array of {name, description, n_majorana, q, terms, fully_commuting}. */
WL_API wl_status wl_model_catalog(char** json_out);
/* Catalog name (learned_h0, learned_h6, learned_n10_8term, perturbation_h1, h0_plus_h1). */
WL_API wl_status wl_model_named(const char* name, wl_hamiltonian** out);
WL_API wl_status wl_model_dense_syk(int n, int q, double j, uint64_t seed, wl_hamiltonian** out);
WL_API wl_status wl_model_random_commuting_variant(const wl_hamiltonian* h, uint64_t seed, wl_hamiltonian** out);
WL_API wl_status wl_model_add(const wl_hamiltonian* a, const wl_hamiltonian* b, wl_hamiltonian** out);
WL_API wl_status wl_model_from_json(const char* json, wl_hamiltonian** out);
WL_API wl_status wl_model_to_json(const wl_hamiltonian* h, char** json_out);
WL_API wl_status wl_model_info(const wl_hamiltonian* h, int* n_majorana, int* q, size_t* n_terms);
/* JSON {fully_commuting, anticommuting_pairs: [[i,j],...]} with 0-based term indices. */
WL_API wl_status wl_model_commutativity(const wl_hamiltonian* h, char** json_out);
WL_API void wl_model_free(wl_hamiltonian* h);

/* ---- tables ---- */

WL_API size_t wl_table_rows(const wl_table* t);
WL_API size_t wl_table_cols(const wl_table* t);
WL_API const char* wl_table_column_name(const wl_table* t, size_t col);
/* Numeric cell; WL_ERR_INVALID_ARGUMENT for text cells. */
WL_API wl_status wl_table_get_double(const wl_table* t, size_t row, size_t col, double* out);
WL_API wl_status wl_table_to_csv(const wl_table* t, char** csv_out);
WL_API wl_status wl_table_write_csv(const wl_table* t, const char* path);
WL_API void wl_table_free(wl_table* t);

/* ---- teleportation ---- */

typedef struct {
  double mu;
  double t0;
  const double* t1;
  size_t n_t1;
  double beta;
  int inject_a;
  int inject_b;
  int trotter_steps; /* 0 = exact */
  int reuse_q_as_t;
  int majorana_norm; /* wl_majorana_norm */
  int tfd_convention; /* wl_tfd_convention */
  uint64_t seed;
  int threads;
} wl_protocol_config;

WL_API void wl_protocol_config_init(wl_protocol_config* c);

/* One curve per mu.  Table columns: t1, mu, I_PT_nats, I_PT_bits.  Summary
 * JSON holds per-curve peaks, the asymmetry between the most negative and
 * most positive mu, and the gate tally in trotter mode. */
WL_API wl_status wl_teleport(const wl_hamiltonian* h, const wl_protocol_config* c, const double* mus, size_t n_mu,
                             wl_table** table_out, char** summary_out);

/* Table: beta, fidelity.  Summary: {beta_star, fidelity_max, convention, mu}. */
WL_API wl_status wl_tfd_scan(const wl_hamiltonian* h, double mu, const double* betas, size_t n_beta,
                             int majorana_norm, int tfd_convention, wl_table** table_out, char** summary_out);

/* ---- diagnostics ---- */

/* Table: fermion, t, n, p_n, re_q_n, im_q_n, W, alpha. */
WL_API wl_status wl_winding(const wl_hamiltonian* h, const int* fermions, size_t n_fermions, const double* t,
                            size_t n_t, double beta, double mu_prime, int majorana_norm, int threads,
                            wl_table** table_out, char** summary_out);

/* Two-point function averaged over all fermions and over the given models.
 * fermion = 0 averages over fermions, otherwise only that fermion.
 * Table: t, re, im.  Summary: revival metric, thermalization time, per-model values. */
WL_API wl_status wl_correlators(const wl_hamiltonian* const* hs, size_t n_h, int fermion, double beta,
                                const double* t, size_t n_t, int majorana_norm, wl_table** table_out,
                                char** summary_out);

/* OTOC for pair (i, j) averaged over the given models.  Table: t, re, im (im = 0). */
WL_API wl_status wl_otoc(const wl_hamiltonian* const* hs, size_t n_h, int i, int j, double beta, const double* t,
                         size_t n_t, int majorana_norm, wl_table** table_out, char** summary_out);

/* ---- sparsifier ---- */

typedef struct {
  double lambda_l1;
  double step_size;
  int max_iters;
  double prune_threshold;
  double fd_epsilon;
  double beta;
  double grad_tol;
  int reactivation;
  uint64_t seed;
  double init_scale;
  int majorana_norm;
  int threads;
} wl_sparsify_config;

WL_API void wl_sparsify_config_init(wl_sparsify_config* c);

/* Trace table: iter, loss, l1, active_terms. */
WL_API wl_status wl_sparsify(const wl_hamiltonian* target, const wl_sparsify_config* c, wl_table** trace_out,
                             wl_hamiltonian** model_out, char** summary_out);

/* ---- noise ---- */

/* Density-matrix protocol; c->trotter_steps must be >= 1.  Table columns:
 * t1, mu, p_or_eps, kind, I_PT.  One curve for each (mu, strength). */
WL_API wl_status wl_noise_run(const wl_hamiltonian* h, const wl_protocol_config* c, int kind,
                              const double* strengths, size_t n_strengths, const double* mus, size_t n_mu,
                              wl_table** table_out, char** summary_out);

/* Baseline, depolarizing and coherent sweeps at mu = -|c->mu| and +|c->mu|.
 * Same table layout as wl_noise_run; summary holds the robustness report. */
WL_API wl_status wl_noise_report(const wl_hamiltonian* h, const wl_protocol_config* c, const double* p_grid,
                                 size_t n_p, const double* eps_grid, size_t n_eps, wl_table** table_out,
                                 char** summary_out);

#ifdef __cplusplus
}
#endif

#endif
