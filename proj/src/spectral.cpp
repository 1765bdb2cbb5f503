#include "tensortail/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "tensortail/linalg.hpp"

namespace tensortail {

namespace {

void require_hermitian(const EinsteinTensor& c, double tol, const char* op) {
    if (!c.square()) {
        throw Error(ErrorKind::Dimension, std::string(op) + ": tensor is not square");
    }
    if (!c.is_hermitian(tol)) {
        throw Error(ErrorKind::Contract, std::string(op) + ": tensor is not Hermitian within " +
                                             std::to_string(tol));
    }
}

}  // namespace

EigenSystem eigensystem(const EinsteinTensor& c, double hermitian_tol) {
    require_hermitian(c, hermitian_tol, "eigensystem");
    const auto eig = linalg::hermitian_eig(unfold(c));
    const std::int64_t d = c.row_dim();

    EigenSystem out;
    out.values.resize(static_cast<std::size_t>(d));
    out.vectors.reserve(static_cast<std::size_t>(d));
    // linalg returns ascending; the published order is descending.
    for (std::int64_t k = 0; k < d; ++k) {
        const std::int64_t src = d - 1 - k;
        out.values[static_cast<std::size_t>(k)] = eig.values[static_cast<std::size_t>(src)];
        EinsteinTensor v(c.row_shape(), Shape{});
        for (std::int64_t r = 0; r < d; ++r) v.entries()[static_cast<std::size_t>(r)] =
            eig.vectors.at(r, src);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

double lambda_max(const EinsteinTensor& c, double hermitian_tol) {
    return eigensystem(c, hermitian_tol).values.front();
}

double lambda_min(const EinsteinTensor& c, double hermitian_tol) {
    return eigensystem(c, hermitian_tol).values.back();
}

double rayleigh_quotient(const EinsteinTensor& c, const EinsteinTensor& x) {
    const double denom = std::real(inner(x, x));
    if (denom <= 0.0) throw Error(ErrorKind::Domain, "rayleigh_quotient: zero direction");
    if (c.col_shape() != x.row_shape()) {
        throw Error(ErrorKind::Dimension, "rayleigh_quotient: direction shape mismatch");
    }
    const auto cx = einstein_product(c, x);
    return std::real(inner(x, cx)) / denom;
}

WeylCheck weyl_check(const EinsteinTensor& a, const EinsteinTensor& b, std::size_t k) {
    if (!a.same_shape(b)) throw Error(ErrorKind::Dimension, "weyl_check: shape mismatch");
    const auto dim = static_cast<std::size_t>(a.row_dim());
    if (k < 1 || k > dim) throw Error(ErrorKind::Domain, "weyl_check: k out of range");

    const auto la = eigensystem(a).values;
    const auto eb = eigensystem(b).values;
    const auto mu = eigensystem(a + b).values;

    WeylCheck out;
    out.k = k;
    out.lower = la[k - 1] + eb.back();
    out.value = mu[k - 1];
    out.upper = la[k - 1] + eb.front();
    return out;
}

bool psd_order(const EinsteinTensor& a, const EinsteinTensor& b, double tol) {
    if (!a.same_shape(b)) throw Error(ErrorKind::Dimension, "psd_order: shape mismatch");
    return lambda_min(a - b) >= -tol;
}

}  // namespace tensortail
