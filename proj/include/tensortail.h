#ifndef TENSORTAIL_H
#define TENSORTAIL_H

/* C interface to the tensortail library. All functions return a tt_status;
 * outputs are written through pointers. Tensors are opaque handles freed with
 * tt_tensor_free; strings returned by the library are freed with
 * tt_string_free. On error, tt_last_error() returns a thread-local message
 * describing the most recent failure. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tt_status {
    TT_OK = 0,
    TT_ERR_DIMENSION = 1,
    TT_ERR_SINGULAR = 2,
    TT_ERR_DOMAIN = 3,
    TT_ERR_REGIME = 4,
    TT_ERR_CONTRACT = 5,
    TT_ERR_PARSE = 6,
    TT_ERR_IO = 7,
    TT_ERR_INFEASIBLE = 8,
    TT_ERR_UNSUPPORTED = 9,
    TT_ERR_INTERNAL = 10
} tt_status;

typedef struct tt_tensor tt_tensor;

/* Message for the most recent error on this thread; empty string if none. */
const char* tt_last_error(void);

void tt_string_free(char* s);
void tt_tensor_free(tt_tensor* t);

/* Construction. Shapes are arrays of positive extents; entries are row-major
 * with the row group varying slowest, interleaved (re, im) pairs of length
 * 2 * prod(row_shape) * prod(col_shape). */
tt_status tt_tensor_create(const int64_t* row_shape, size_t row_order,
                           const int64_t* col_shape, size_t col_order,
                           const double* entries_interleaved, tt_tensor** out);
tt_status tt_tensor_identity(const int64_t* shape, size_t order, tt_tensor** out);

/* Accessors. */
tt_status tt_tensor_row_order(const tt_tensor* t, size_t* out);
tt_status tt_tensor_col_order(const tt_tensor* t, size_t* out);
tt_status tt_tensor_row_shape(const tt_tensor* t, int64_t* out);
tt_status tt_tensor_col_shape(const tt_tensor* t, int64_t* out);
tt_status tt_tensor_entry_count(const tt_tensor* t, size_t* out);
/* Writes 2 * entry_count doubles (re, im interleaved). */
tt_status tt_tensor_entries(const tt_tensor* t, double* out);

/* Algebra. */
tt_status tt_tensor_add(const tt_tensor* a, const tt_tensor* b, tt_tensor** out);
tt_status tt_tensor_sub(const tt_tensor* a, const tt_tensor* b, tt_tensor** out);
tt_status tt_tensor_scale(const tt_tensor* a, double re, double im, tt_tensor** out);
tt_status tt_einstein_product(const tt_tensor* a, const tt_tensor* b, tt_tensor** out);
tt_status tt_conjugate_transpose(const tt_tensor* a, tt_tensor** out);
tt_status tt_tensor_inverse(const tt_tensor* a, tt_tensor** out);

tt_status tt_tensor_trace(const tt_tensor* a, double* re, double* im);
tt_status tt_tensor_inner(const tt_tensor* a, const tt_tensor* b, double* re, double* im);
tt_status tt_frobenius_norm(const tt_tensor* a, double* out);
tt_status tt_spectral_norm(const tt_tensor* a, double* out);
tt_status tt_tensor_is_hermitian(const tt_tensor* a, double tol, int* out);
tt_status tt_tensor_is_unitary(const tt_tensor* a, double tol, int* out);

/* Eigenvalues of a Hermitian tensor, descending; out must hold
 * prod(row_shape) doubles. */
tt_status tt_hermitian_eigenvalues(const tt_tensor* a, double* out);
tt_status tt_lambda_max(const tt_tensor* a, double* out);
tt_status tt_lambda_min(const tt_tensor* a, double* out);

/* JSON round trip. */
tt_status tt_tensor_to_json(const tt_tensor* t, char** out);
tt_status tt_tensor_from_json(const char* text, tt_tensor** out);

/* Bound evaluators; params_json carries
 * {dim_product, T_dg, sigma2_dg, T_cp, sigma2_cp, C4}. */
tt_status tt_bernstein_bound(int64_t dim_product, double cap, double sigma2, double theta,
                             double* out);
tt_status tt_pdg_bound(int64_t dim_product, double cap, double sigma2, double theta,
                       double* out);
tt_status tt_pcp_bound(const char* params_json, double theta, double* out);
tt_status tt_hw_bound(const char* params_json, double theta, double* out);
tt_status tt_scalar_hw_bound(double theta, double alpha, double hs_norm, double op_norm,
                             double c, double* out);

/* Runs one verification or evaluation command over a JSON config document.
 * command is one of: bound-eval, verify-bernstein, verify-symmetrization,
 * verify-decoupling, verify-hw, verify-algebra. overrides_json may be NULL or
 * a JSON object with optional "seed", "threads", "theta_grid". csv_out and
 * json_out receive malloc'd strings (tt_string_free); all_satisfied gets
 * 1 or 0. */
tt_status tt_run_command(const char* command, const char* config_json,
                         const char* overrides_json, char** csv_out, char** json_out,
                         int* all_satisfied);

#ifdef __cplusplus
}
#endif

#endif /* TENSORTAIL_H */
