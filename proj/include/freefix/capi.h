#ifndef FREEFIX_CAPI_H
#define FREEFIX_CAPI_H

/* C interface to the freefix library.
 *
 * Every function returns an ffx_status; 0 is success. On failure the
 * thread-local message from ffx_last_error() describes the problem and no
 * out-parameter is written. Strings returned through out-parameters are
 * malloc'd; release them with ffx_string_free. Structured results are JSON
 * text in the formats documented in freefix/json_io.hpp.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ffx_status {
  FFX_OK = 0,
  FFX_ERR_INPUT = 1,
  FFX_ERR_DOMAIN = 2,
  FFX_ERR_RANK_MISMATCH = 3,
  FFX_ERR_NOT_AUTOMORPHISM = 4,
  FFX_ERR_NOT_INVARIANT = 5,
  FFX_ERR_PRECONDITION = 6,
  FFX_ERR_INTERNAL = 7
} ffx_status;

typedef struct ffx_word ffx_word;
typedef struct ffx_graph ffx_graph;
typedef struct ffx_endo ffx_endo;

/* Enumeration budget; zero or negative displacement_cap means the default
 * lossless cap. A null pointer anywhere a budget is expected means defaults. */
typedef struct ffx_budget {
  int max_len;
  int displacement_cap;
  int eigenvalue_len;
} ffx_budget;

const char* ffx_version(void);
const char* ffx_last_error(void);
void ffx_string_free(char* s);

/* Words -------------------------------------------------------------- */
ffx_status ffx_word_parse(int rank, const char* text, ffx_word** out);
void ffx_word_free(ffx_word* w);
char* ffx_word_str(const ffx_word* w);  /* reduced form, "1" when trivial */
int ffx_word_rank(const ffx_word* w);
size_t ffx_word_length(const ffx_word* w);
ffx_status ffx_word_concat(const ffx_word* u, const ffx_word* v,
                           ffx_word** out);
ffx_status ffx_word_invert(const ffx_word* w, ffx_word** out);
ffx_status ffx_word_cyclic_reduce(const ffx_word* w, ffx_word** core,
                                  ffx_word** conjugator);

/* Subgroup graphs ----------------------------------------------------- */
ffx_status ffx_graph_fold(int rank, const char* const* generators,
                          size_t count, ffx_graph** out);
ffx_status ffx_graph_from_json(const char* json_text, ffx_graph** out);
void ffx_graph_free(ffx_graph* g);
int ffx_graph_rank(const ffx_graph* g);
int ffx_graph_ambient_rank(const ffx_graph* g);
ffx_status ffx_graph_member(const ffx_graph* g, const char* word_text,
                            int* out);
char* ffx_graph_basis_json(const ffx_graph* g);
char* ffx_graph_json(const ffx_graph* g); /* {"rank","generators"} */

/* Full pullback: array of {"generators","rank","witness","based"}. */
ffx_status ffx_graph_pullback_json(const ffx_graph* h, const ffx_graph* k,
                                   char** out);

ffx_status ffx_check_pure_json(const ffx_graph* g, int bound, char** out);
ffx_status ffx_check_inert_json(const ffx_graph* g, int trials,
                                int gen_len_bound, uint64_t seed, char** out);
ffx_status ffx_check_coset_bound_json(const ffx_graph* g, const char* h,
                                      const char* const* conjugators,
                                      size_t count, char** out);

/* Endomorphisms -------------------------------------------------------- */
ffx_status ffx_endo_new(int rank, const char* const* images, size_t count,
                        ffx_endo** out);
ffx_status ffx_endo_from_json(const char* json_text, ffx_endo** out);
void ffx_endo_free(ffx_endo* f);
int ffx_endo_rank(const ffx_endo* f);
char* ffx_endo_json(const ffx_endo* f); /* {"rank","images"} */
ffx_status ffx_endo_apply(const ffx_endo* f, const char* word_text,
                          char** out);
ffx_status ffx_endo_is_automorphism(const ffx_endo* f, int* out);
ffx_status ffx_endo_inverse(const ffx_endo* f, ffx_endo** out);

/* Fixed subgroups ------------------------------------------------------ */
ffx_status ffx_fix_json(const ffx_endo* f, const ffx_budget* budget,
                        char** out);
ffx_status ffx_eigengroups_json(const ffx_endo* f, const ffx_budget* budget,
                                char** out);
ffx_status ffx_isogredience_json(const ffx_endo* f, const ffx_budget* budget,
                                 char** out);
ffx_status ffx_bh_check_json(const ffx_endo* f, const ffx_budget* budget,
                             char** out);

/* Free factor systems (JSON in, JSON out) ------------------------------ */
ffx_status ffx_ffs_cx_json(const char* system_json, char** out);
ffx_status ffx_ffs_leq_json(const char* system1_json, const char* system2_json,
                            char** out);
ffx_status ffx_ffs_wedge_json(const char* system1_json,
                              const char* system2_json, char** out);
ffx_status ffx_ffs_invariant_json(const char* system_json,
                                  const ffx_endo* f, char** out);
ffx_status ffx_ffs_is_free_factor_json(const ffx_graph* g, int depth,
                                       char** out);
ffx_status ffx_ffs_certify_json(const char* system_json, int conj_bound,
                                int depth, char** out);

/* Constructions --------------------------------------------------------- */
ffx_status ffx_construct_extend(const ffx_endo* f, int n,
                                const char* extra_images_json,
                                const ffx_budget* budget, ffx_endo** out);
ffx_status ffx_construct_product(const ffx_endo* f1, const ffx_endo* f2,
                                 const ffx_budget* budget, ffx_endo** out);
ffx_status ffx_construct_stable(const ffx_endo* f, const char* h,
                                const char* h_prime, int r, ffx_endo** out);
ffx_status ffx_construct_good_r_json(const ffx_endo* f, const char* h,
                                     const char* h_prime, int r_lo, int r_hi,
                                     const ffx_budget* budget, char** out);

/* Verifiers ------------------------------------------------------------- */
ffx_status ffx_verify_mainconnex_json(const ffx_endo* f, const char* case_json,
                                      const ffx_budget* budget, char** out);
ffx_status ffx_verify_cormain_json(const ffx_endo* f, const char* cert_json,
                                   const ffx_budget* budget, char** out);
ffx_status ffx_verify_collins_turner_json(const ffx_endo* f,
                                          const char* data_json,
                                          const ffx_budget* budget, char** out);
ffx_status ffx_verify_imagey_json(const ffx_endo* f, const ffx_graph* h_graph,
                                  const char* y, const char* h, char** out);

#ifdef __cplusplus
}
#endif

#endif /* FREEFIX_CAPI_H */
