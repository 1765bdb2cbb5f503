#include "tensortail.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "tensortail/runner.hpp"
#include "tensortail/spectral.hpp"

using namespace tensortail;

struct tt_tensor {
    EinsteinTensor value;
};

namespace {

thread_local std::string g_last_error;

tt_status map_kind(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Dimension: return TT_ERR_DIMENSION;
        case ErrorKind::Singular: return TT_ERR_SINGULAR;
        case ErrorKind::Domain: return TT_ERR_DOMAIN;
        case ErrorKind::Regime: return TT_ERR_REGIME;
        case ErrorKind::Contract: return TT_ERR_CONTRACT;
        case ErrorKind::Parse: return TT_ERR_PARSE;
        case ErrorKind::Io: return TT_ERR_IO;
        case ErrorKind::Infeasible: return TT_ERR_INFEASIBLE;
        case ErrorKind::Unsupported: return TT_ERR_UNSUPPORTED;
    }
    return TT_ERR_INTERNAL;
}

template <typename F>
tt_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return TT_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_kind(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TT_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Shape shape_from(const int64_t* dims, size_t order) {
    return Shape(std::vector<std::int64_t>(dims, dims + order));
}

const EinsteinTensor& deref(const tt_tensor* t) {
    if (!t) throw Error(ErrorKind::Contract, "null tensor handle");
    return t->value;
}

tt_tensor* wrap(EinsteinTensor t) { return new tt_tensor{std::move(t)}; }

}  // namespace

extern "C" {

const char* tt_last_error(void) { return g_last_error.c_str(); }

void tt_string_free(char* s) { std::free(s); }

void tt_tensor_free(tt_tensor* t) { delete t; }

tt_status tt_tensor_create(const int64_t* row_shape, size_t row_order,
                           const int64_t* col_shape, size_t col_order,
                           const double* entries_interleaved, tt_tensor** out) {
    return guarded([&] {
        auto rs = shape_from(row_shape, row_order);
        auto cs = shape_from(col_shape, col_order);
        std::vector<cplx> entries(static_cast<std::size_t>(rs.product() * cs.product()));
        for (std::size_t i = 0; i < entries.size(); ++i) {
            entries[i] = {entries_interleaved[2 * i], entries_interleaved[2 * i + 1]};
        }
        *out = wrap(EinsteinTensor(std::move(rs), std::move(cs), std::move(entries)));
    });
}

tt_status tt_tensor_identity(const int64_t* shape, size_t order, tt_tensor** out) {
    return guarded([&] { *out = wrap(EinsteinTensor::identity(shape_from(shape, order))); });
}

tt_status tt_tensor_row_order(const tt_tensor* t, size_t* out) {
    return guarded([&] { *out = deref(t).row_shape().dims().size(); });
}

tt_status tt_tensor_col_order(const tt_tensor* t, size_t* out) {
    return guarded([&] { *out = deref(t).col_shape().dims().size(); });
}

tt_status tt_tensor_row_shape(const tt_tensor* t, int64_t* out) {
    return guarded([&] {
        const auto& dims = deref(t).row_shape().dims();
        std::copy(dims.begin(), dims.end(), out);
    });
}

tt_status tt_tensor_col_shape(const tt_tensor* t, int64_t* out) {
    return guarded([&] {
        const auto& dims = deref(t).col_shape().dims();
        std::copy(dims.begin(), dims.end(), out);
    });
}

tt_status tt_tensor_entry_count(const tt_tensor* t, size_t* out) {
    return guarded([&] { *out = deref(t).entries().size(); });
}

tt_status tt_tensor_entries(const tt_tensor* t, double* out) {
    return guarded([&] {
        const auto& entries = deref(t).entries();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            out[2 * i] = entries[i].real();
            out[2 * i + 1] = entries[i].imag();
        }
    });
}

tt_status tt_tensor_add(const tt_tensor* a, const tt_tensor* b, tt_tensor** out) {
    return guarded([&] { *out = wrap(add(deref(a), deref(b))); });
}

tt_status tt_tensor_sub(const tt_tensor* a, const tt_tensor* b, tt_tensor** out) {
    return guarded([&] { *out = wrap(sub(deref(a), deref(b))); });
}

tt_status tt_tensor_scale(const tt_tensor* a, double re, double im, tt_tensor** out) {
    return guarded([&] { *out = wrap(scale(deref(a), cplx{re, im})); });
}

tt_status tt_einstein_product(const tt_tensor* a, const tt_tensor* b, tt_tensor** out) {
    return guarded([&] { *out = wrap(einstein_product(deref(a), deref(b))); });
}

tt_status tt_conjugate_transpose(const tt_tensor* a, tt_tensor** out) {
    return guarded([&] { *out = wrap(conjugate_transpose(deref(a))); });
}

tt_status tt_tensor_inverse(const tt_tensor* a, tt_tensor** out) {
    return guarded([&] { *out = wrap(inverse(deref(a))); });
}

tt_status tt_tensor_trace(const tt_tensor* a, double* re, double* im) {
    return guarded([&] {
        const cplx v = trace(deref(a));
        *re = v.real();
        *im = v.imag();
    });
}

tt_status tt_tensor_inner(const tt_tensor* a, const tt_tensor* b, double* re, double* im) {
    return guarded([&] {
        const cplx v = inner(deref(a), deref(b));
        *re = v.real();
        *im = v.imag();
    });
}

tt_status tt_frobenius_norm(const tt_tensor* a, double* out) {
    return guarded([&] { *out = frobenius_norm(deref(a)); });
}

tt_status tt_spectral_norm(const tt_tensor* a, double* out) {
    return guarded([&] { *out = spectral_norm(deref(a)); });
}

tt_status tt_tensor_is_hermitian(const tt_tensor* a, double tol, int* out) {
    return guarded([&] { *out = deref(a).is_hermitian(tol) ? 1 : 0; });
}

tt_status tt_tensor_is_unitary(const tt_tensor* a, double tol, int* out) {
    return guarded([&] { *out = is_unitary(deref(a), tol) ? 1 : 0; });
}

tt_status tt_hermitian_eigenvalues(const tt_tensor* a, double* out) {
    return guarded([&] {
        const auto eig = eigensystem(deref(a));
        std::copy(eig.values.begin(), eig.values.end(), out);
    });
}

tt_status tt_lambda_max(const tt_tensor* a, double* out) {
    return guarded([&] { *out = lambda_max(deref(a)); });
}

tt_status tt_lambda_min(const tt_tensor* a, double* out) {
    return guarded([&] { *out = lambda_min(deref(a)); });
}

tt_status tt_tensor_to_json(const tt_tensor* t, char** out) {
    return guarded([&] { *out = dup_string(tensor_to_json(deref(t)).dump()); });
}

tt_status tt_tensor_from_json(const char* text, tt_tensor** out) {
    return guarded([&] {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, std::string("malformed tensor JSON: ") + e.what());
        }
        *out = wrap(tensor_from_json(j));
    });
}

tt_status tt_bernstein_bound(int64_t dim_product, double cap, double sigma2, double theta,
                             double* out) {
    return guarded([&] { *out = bernstein_bound({dim_product, cap, sigma2}, theta); });
}

tt_status tt_pdg_bound(int64_t dim_product, double cap, double sigma2, double theta,
                       double* out) {
    return guarded([&] { *out = pdg_bound({dim_product, cap, sigma2}, theta); });
}

namespace {
HWParams parse_params(const char* params_json) {
    json j;
    try {
        j = json::parse(params_json ? params_json : "");
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("malformed params JSON: ") + e.what());
    }
    return hw_params_from_json(j);
}
}  // namespace

tt_status tt_pcp_bound(const char* params_json, double theta, double* out) {
    return guarded([&] { *out = pcp_bound(parse_params(params_json), theta); });
}

tt_status tt_hw_bound(const char* params_json, double theta, double* out) {
    return guarded([&] { *out = hw_bound(parse_params(params_json), theta); });
}

tt_status tt_scalar_hw_bound(double theta, double alpha, double hs_norm, double op_norm,
                             double c, double* out) {
    return guarded([&] { *out = scalar_hw_bound(theta, alpha, hs_norm, op_norm, c); });
}

tt_status tt_run_command(const char* command, const char* config_json,
                         const char* overrides_json, char** csv_out, char** json_out,
                         int* all_satisfied) {
    return guarded([&] {
        if (!command || !config_json) {
            throw Error(ErrorKind::Contract, "tt_run_command: null command or config");
        }
        json config;
        try {
            config = json::parse(config_json);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, std::string("malformed config JSON: ") + e.what());
        }
        RunOverrides overrides;
        if (overrides_json && *overrides_json) {
            json j;
            try {
                j = json::parse(overrides_json);
            } catch (const json::exception& e) {
                throw Error(ErrorKind::Parse,
                            std::string("malformed overrides JSON: ") + e.what());
            }
            if (j.contains("seed")) overrides.seed = j.at("seed").get<std::uint64_t>();
            if (j.contains("threads")) overrides.threads = j.at("threads").get<int>();
            if (j.contains("theta_grid")) {
                overrides.theta_grid = j.at("theta_grid").get<std::vector<double>>();
            }
        }
        const auto result = run_command(command, config, overrides);
        if (csv_out) *csv_out = dup_string(result.csv);
        if (json_out) *json_out = dup_string(result.summary_json);
        if (all_satisfied) *all_satisfied = result.all_satisfied ? 1 : 0;
    });
}

}  // extern "C"
