/*
 * C interface to the spectral tetris toolkit.
 *
 * Every call returns an st_status. On failure the message of the most recent
 * error on the calling thread is available from st_last_error(). Objects are
 * opaque handles released with st_frame_free; strings returned through char**
 * out-parameters are released with st_string_free.
 *
 * Sequences of rationals are passed as comma separated text such as
 * "13/3,10/3,7/3". Decimal notation is rejected.
 */
#ifndef SPECTRAL_TETRIS_H
#define SPECTRAL_TETRIS_H

#include <stddef.h>

#if defined(_WIN32)
#define ST_API __declspec(dllexport)
#else
#define ST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum st_status {
  ST_OK = 0,
  ST_ERR_INVALID_ARGUMENT = 1,
  ST_ERR_PARSE = 2,
  ST_ERR_IO = 3,
  ST_ERR_DOMAIN = 4,
  ST_ERR_INVALID_PARTITION = 5,
  ST_ERR_SEARCH_BUDGET = 6,
  ST_ERR_UNDERDETERMINED = 7,
  ST_ERR_OUT_OF_RANGE = 8,
  ST_ERR_SUM_MISMATCH = 9,
  ST_ERR_BLOCK_DOMAIN = 10,
  ST_ERR_NO_SUCH_BLOCK = 11,
  ST_ERR_INFEASIBLE = 12,
  ST_ERR_DFT_PATH_STUCK = 13,
  ST_ERR_NOT_ST_READY = 14,
  ST_ERR_REORDER_FAILED = 15,
  ST_ERR_SPECTRUM_MISMATCH = 16,
  ST_ERR_NOT_PARSEVAL = 17,
  ST_ERR_NOT_APPLICABLE = 18,
  ST_ERR_NO_EXTENSION = 19,
  ST_ERR_INTERNAL = 20
} st_status;

/* A frame (exact or floating point), optionally carrying a fusion partition. */
typedef struct st_frame st_frame;

ST_API const char* st_last_error(void);
ST_API const char* st_status_name(st_status status);
/* Nonzero when the status reports that the requested object does not exist
 * (as opposed to malformed input or an internal fault). */
ST_API int st_status_is_infeasibility(st_status status);

ST_API void st_frame_free(st_frame* frame);
ST_API void st_string_free(char* text);

ST_API st_status st_frame_shape(const st_frame* frame, size_t* rows, size_t* cols);
ST_API int st_frame_is_fusion(const st_frame* frame);
ST_API int st_frame_is_exact(const st_frame* frame);

/* Feasibility queries. */
ST_API st_status st_untf_feasible(size_t m, size_t n, int* feasible);
ST_API st_status st_feasibility_grid(size_t max_dim, size_t max_count, char** csv);

/* Frame constructions. */
ST_API st_status st_untf(size_t m, size_t n, st_frame** out);
ST_API st_status st_untf_dft(size_t m, size_t n, st_frame** out);
ST_API st_status st_sfr(const char* spectrum, size_t n, st_frame** out);
ST_API st_status st_pnstc(const char* norms_sq, const char* spectrum, st_frame** out);
/* swaps_json (optional) receives [[i,j],...] with zero-based positions. */
ST_API st_status st_pnstc_str(const char* norms_sq, const char* spectrum, st_frame** out, char** swaps_json);
ST_API st_status st_equal_norm(const char* spectrum, size_t n, st_frame** out);
/* Tries n = n_min..n_max and returns the first count that works. */
ST_API st_status st_equal_norm_scan(const char* spectrum, size_t n_min, size_t n_max, st_frame** out, size_t* n_used);
/* Orthogonal completion. With normalize != 0 a tight exact input is first
 * rescaled to Parseval. Fusion inputs yield fusion outputs. */
ST_API st_status st_naimark(const st_frame* frame, int normalize, st_frame** out);

/* Fusion constructions. */
ST_API st_status st_sffr(const char* spectrum, size_t d, size_t k, st_frame** out);
ST_API st_status st_rff(const char* spectrum, size_t n, st_frame** out);
ST_API st_status st_uff(const char* spectrum, const char* dims, st_frame** out);
ST_API st_status st_weighted_fusion(const char* weights_sq, const char* dims, const char* spectrum, st_frame** out);
/* combined receives the tight union; info_json the bound, subspace count and
 * residual spectrum. */
ST_API st_status st_extend_tight(const st_frame* fusion, const char* spectrum, st_frame** combined, char** info_json);

/* Serialization and verification. */
ST_API st_status st_frame_from_json(const char* text, st_frame** out);
ST_API st_status st_frame_to_json(const st_frame* frame, char** json);
ST_API st_status st_frame_to_csv(const st_frame* frame, char** csv);
/* spectrum and norms_sq may be NULL. */
ST_API st_status st_frame_verify(const st_frame* frame, const char* spectrum, const char* norms_sq, char** report_json);

#ifdef __cplusplus
}
#endif

#endif
