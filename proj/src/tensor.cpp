#include "tensortail/tensor.hpp"

#include <cmath>
#include <sstream>

#include "tensortail/linalg.hpp"

namespace tensortail {

namespace {

void require_same_shape(const EinsteinTensor& a, const EinsteinTensor& b, const char* op) {
    if (!a.same_shape(b)) {
        throw Error(ErrorKind::Dimension,
                    std::string(op) + ": shape mismatch " + a.row_shape().to_string() + "x" +
                        a.col_shape().to_string() + " vs " + b.row_shape().to_string() + "x" +
                        b.col_shape().to_string());
    }
}

void require_square(const EinsteinTensor& a, const char* op) {
    if (!a.square()) {
        throw Error(ErrorKind::Dimension, std::string(op) + ": tensor is not square, groups " +
                                              a.row_shape().to_string() + " vs " +
                                              a.col_shape().to_string());
    }
}

}  // namespace

EinsteinTensor::EinsteinTensor(Shape row_shape, Shape col_shape, std::vector<cplx> entries)
    : row_(std::move(row_shape)), col_(std::move(col_shape)), entries_(std::move(entries)) {
    const auto expected = static_cast<std::size_t>(row_.product() * col_.product());
    if (entries_.size() != expected) {
        throw Error(ErrorKind::Dimension,
                    "entry count " + std::to_string(entries_.size()) + " does not match " +
                        row_.to_string() + "x" + col_.to_string());
    }
}

EinsteinTensor::EinsteinTensor(Shape row_shape, Shape col_shape,
                               const std::vector<double>& entries)
    : EinsteinTensor(std::move(row_shape), std::move(col_shape),
                     std::vector<cplx>(entries.begin(), entries.end())) {}

EinsteinTensor EinsteinTensor::identity(const Shape& shape) {
    EinsteinTensor t(shape, shape);
    const auto d = shape.product();
    for (std::int64_t i = 0; i < d; ++i) t.at(i, i) = 1.0;
    return t;
}

bool EinsteinTensor::is_hermitian(double tol) const {
    if (!square()) return false;
    const auto d = row_dim();
    for (std::int64_t r = 0; r < d; ++r) {
        for (std::int64_t c = r; c < d; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
        }
    }
    return true;
}

EinsteinTensor& EinsteinTensor::operator+=(const EinsteinTensor& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

EinsteinTensor& EinsteinTensor::operator-=(const EinsteinTensor& other) {
    require_same_shape(*this, other, "sub");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

EinsteinTensor& EinsteinTensor::operator*=(cplx factor) {
    for (auto& e : entries_) e *= factor;
    return *this;
}

EinsteinTensor add(const EinsteinTensor& a, const EinsteinTensor& b) {
    EinsteinTensor out = a;
    out += b;
    return out;
}

EinsteinTensor sub(const EinsteinTensor& a, const EinsteinTensor& b) {
    EinsteinTensor out = a;
    out -= b;
    return out;
}

EinsteinTensor scale(const EinsteinTensor& a, cplx factor) {
    EinsteinTensor out = a;
    out *= factor;
    return out;
}

EinsteinTensor einstein_product(const EinsteinTensor& a, const EinsteinTensor& b) {
    if (a.col_shape() != b.row_shape()) {
        throw Error(ErrorKind::Dimension, "einstein_product: contracted group mismatch " +
                                              a.col_shape().to_string() + " vs " +
                                              b.row_shape().to_string());
    }
    // Row-major linearization makes this exactly a matrix multiply.
    const std::int64_t m = a.row_dim(), k = a.col_dim(), n = b.col_dim();
    EinsteinTensor out(a.row_shape(), b.col_shape());
    for (std::int64_t i = 0; i < m; ++i) {
        for (std::int64_t j = 0; j < k; ++j) {
            const cplx aij = a.at(i, j);
            if (aij == cplx{}) continue;
            for (std::int64_t c = 0; c < n; ++c) out.at(i, c) += aij * b.at(j, c);
        }
    }
    return out;
}

EinsteinTensor conjugate_transpose(const EinsteinTensor& a) {
    EinsteinTensor out(a.col_shape(), a.row_shape());
    for (std::int64_t r = 0; r < a.row_dim(); ++r)
        for (std::int64_t c = 0; c < a.col_dim(); ++c) out.at(c, r) = std::conj(a.at(r, c));
    return out;
}

EinsteinTensor inverse(const EinsteinTensor& a) {
    require_square(a, "inverse");
    auto res = linalg::lu_inverse(unfold(a));
    return fold(res.inverse, a.row_shape(), a.col_shape());
}

cplx trace(const EinsteinTensor& a) {
    require_square(a, "trace");
    cplx t{};
    for (std::int64_t i = 0; i < a.row_dim(); ++i) t += a.at(i, i);
    return t;
}

cplx inner(const EinsteinTensor& a, const EinsteinTensor& b) {
    require_same_shape(a, b, "inner");
    cplx s{};
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        s += std::conj(a.entries()[i]) * b.entries()[i];
    return s;
}

double frobenius_norm(const EinsteinTensor& a) {
    double s = 0.0;
    for (const auto& e : a.entries()) s += std::norm(e);
    return std::sqrt(s);
}

double spectral_norm(const EinsteinTensor& a) {
    return linalg::largest_singular_value(unfold(a));
}

FlatMatrix unfold(const EinsteinTensor& a) {
    FlatMatrix m(a.row_dim(), a.col_dim());
    m.entries = a.entries();
    return m;
}

EinsteinTensor fold(const FlatMatrix& m, const Shape& row_shape, const Shape& col_shape) {
    if (m.rows != row_shape.product() || m.cols != col_shape.product()) {
        throw Error(ErrorKind::Dimension,
                    "fold: matrix " + std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                        " does not match " + row_shape.to_string() + "x" + col_shape.to_string());
    }
    return {row_shape, col_shape, m.entries};
}

bool is_unitary(const EinsteinTensor& a, double tol) {
    require_square(a, "is_unitary");
    const auto id = EinsteinTensor::identity(a.row_shape());
    const auto ah = conjugate_transpose(a);
    return frobenius_norm(einstein_product(ah, a) - id) <= tol &&
           frobenius_norm(einstein_product(a, ah) - id) <= tol;
}

double max_abs_diff(const EinsteinTensor& a, const EinsteinTensor& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

EinsteinTensor hermitize(const EinsteinTensor& t) {
    require_square(t, "hermitize");
    EinsteinTensor out = t;
    out += conjugate_transpose(t);
    out *= 0.5;
    return out;
}

}  // namespace tensortail
